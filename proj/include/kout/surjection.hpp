#pragma once

// Uniform random surjections [k m] -> [m], drawn by rejection on the size of
// the one-in-core of D(n, k) with n = ceil(m / nu_k).
//
// Conditioned on |Q| = m, the sub-digraph induced by the one-in-core is a
// uniformly random closed set with every in-degree at least one, i.e. a
// uniform k-out table on m vertices whose arcs hit every vertex.

#include <cmath>
#include <cstddef>
#include <vector>

#include "kout/constants.hpp"
#include "kout/decompose.hpp"
#include "kout/digraph.hpp"
#include "kout/error.hpp"
#include "kout/rng.hpp"

namespace kout {

struct SurjectionSample {
  std::size_t m = 0;
  std::size_t k = 0;
  KOutDigraph mapping;  // m rows, k columns, entries in [0, m)
  std::size_t retries = 0;  // digraphs generated, >= 1
};

inline bool is_surjective(const KOutDigraph& table) {
  std::vector<char> hit(table.n(), 0);
  for (Vertex e : table.endpoints()) hit[e] = 1;
  for (char h : hit)
    if (!h) return false;
  return true;
}

/// Relabels the (closed) vertex set `core` to [0, |core|) in increasing label
/// order and returns the induced arc table.
inline KOutDigraph restrict_to(const KOutDigraph& g, const std::vector<Vertex>& core) {
  std::vector<Vertex> relabel(g.n(), kNoIndex);
  for (std::size_t i = 0; i < core.size(); ++i) relabel[core[i]] = static_cast<Vertex>(i);
  std::vector<Vertex> ends;
  ends.reserve(core.size() * g.k());
  for (Vertex v : core)
    for (Vertex w : g.out(v)) {
      if (relabel[w] == kNoIndex) throw InvariantViolation("restrict_to: vertex set is not closed");
      ends.push_back(relabel[w]);
    }
  return KOutDigraph(core.size(), g.k(), std::move(ends));
}

inline std::size_t surjection_host_size(std::size_t m, const ModelConstants& c) {
  return static_cast<std::size_t>(std::ceil(static_cast<double>(m) / c.nu));
}

template <class URBG>
SurjectionSample sample_surjection(std::size_t m, std::size_t k, URBG& rng,
                                   std::size_t cap = kDefaultRejectionCap) {
  if (m < 1) throw InvalidArgument("sample_surjection: m must be >= 1");
  if (k < 2) throw InvalidArgument("sample_surjection: k must be >= 2");
  const auto c = derive_constants(static_cast<int>(k));
  const std::size_t n = surjection_host_size(m, c);
  for (std::size_t attempt = 1; attempt <= cap; ++attempt) {
    const auto g = kout::generate(n, k, rng);
    const auto core = one_in_core(g);
    if (core.size() != m) continue;
    return {m, k, restrict_to(g, core), attempt};
  }
  throw CapExceeded("sample_surjection: one-in-core never had the requested size", cap);
}

inline SurjectionSample sample_surjection(std::size_t m, std::size_t k, RngSpec spec,
                                          std::size_t cap = kDefaultRejectionCap) {
  auto rng = make_engine(spec);
  return sample_surjection(m, k, rng, cap);
}

}  // namespace kout
