#pragma once

// k-out digraphs: n vertices, each with k out-arcs labeled 0..k-1.
//
// Vertices are 0-based everywhere, including serialized files.

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kout/error.hpp"
#include "kout/rng.hpp"

namespace kout {

using Vertex = std::uint32_t;

class KOutDigraph {
 public:
  KOutDigraph() = default;

  /// `endpoints` is row-major: entry v*k + i is the head of arc i of vertex v.
  KOutDigraph(std::size_t n, std::size_t k, std::vector<Vertex> endpoints)
      : n_(n), k_(k), endpoints_(std::move(endpoints)) {
    if (n == 0) throw InvalidArgument("KOutDigraph: n must be >= 1");
    if (endpoints_.size() != n * k)
      throw ValidationError("KOutDigraph: expected " + std::to_string(n * k) + " endpoints, got " +
                            std::to_string(endpoints_.size()));
    for (std::size_t i = 0; i < endpoints_.size(); ++i)
      if (endpoints_[i] >= n)
        throw ValidationError("KOutDigraph: endpoint " + std::to_string(endpoints_[i]) + " of arc " +
                              std::to_string(i % k) + " at vertex " + std::to_string(i / k) +
                              " is not below n = " + std::to_string(n));
  }

  /// Builds from explicit rows, one per vertex.
  static KOutDigraph from_rows(const std::vector<std::vector<Vertex>>& rows) {
    if (rows.empty()) throw InvalidArgument("KOutDigraph: n must be >= 1");
    const std::size_t k = rows.front().size();
    std::vector<Vertex> flat;
    flat.reserve(rows.size() * k);
    for (const auto& r : rows) {
      if (r.size() != k) throw ValidationError("KOutDigraph: rows have differing out-degree");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return KOutDigraph(rows.size(), k, std::move(flat));
  }

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t arc_count() const { return endpoints_.size(); }

  Vertex head(Vertex v, std::size_t label) const { return endpoints_[v * k_ + label]; }

  std::span<const Vertex> out(Vertex v) const { return {endpoints_.data() + v * k_, k_}; }

  const std::vector<Vertex>& endpoints() const { return endpoints_; }

  friend bool operator==(const KOutDigraph&, const KOutDigraph&) = default;

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  std::vector<Vertex> endpoints_;
};

/// Every endpoint i.i.d. uniform on [0, n). Arcs are drawn label by label
/// (all arcs labeled 0, then all labeled 1, ...), so for a fixed engine state
/// the k-out digraph is the first k labels of the (k+1)-out digraph.
template <class URBG>
KOutDigraph generate(std::size_t n, std::size_t k, URBG& rng) {
  if (n == 0) throw InvalidArgument("generate: n must be >= 1");
  std::vector<Vertex> ends(n * k);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t v = 0; v < n; ++v) ends[v * k + i] = pick(rng);
  return KOutDigraph(n, k, std::move(ends));
}

inline KOutDigraph generate(std::size_t n, std::size_t k, RngSpec spec) {
  auto rng = make_engine(spec);
  return kout::generate(n, k, rng);
}

/// Number of arcs (v, i) whose head is v.
inline std::size_t count_self_loops(const KOutDigraph& g) {
  std::size_t s = 0;
  for (Vertex v = 0; v < g.n(); ++v)
    for (Vertex w : g.out(v)) s += (w == v);
  return s;
}

/// Number of label pairs i < j at the same vertex sharing a head.
inline std::size_t count_multi_pairs(const KOutDigraph& g) {
  std::size_t m = 0;
  for (Vertex v = 0; v < g.n(); ++v) {
    auto row = g.out(v);
    for (std::size_t i = 0; i < row.size(); ++i)
      for (std::size_t j = i + 1; j < row.size(); ++j) m += (row[i] == row[j]);
  }
  return m;
}

inline bool is_simple(const KOutDigraph& g) {
  return count_self_loops(g) == 0 && count_multi_pairs(g) == 0;
}

struct SimpleSample {
  KOutDigraph graph;
  std::size_t attempts = 0;
};

inline constexpr std::size_t kDefaultRejectionCap = 1'000'000;

/// Uniform simple k-out digraph by rejection: whole digraphs are drawn until
/// one has neither self-loops nor parallel arcs.
template <class URBG>
SimpleSample generate_simple(std::size_t n, std::size_t k, URBG& rng,
                             std::size_t cap = kDefaultRejectionCap) {
  if (n <= k)
    throw InvalidArgument("generate_simple: need n > k for a simple k-out digraph (n = " +
                          std::to_string(n) + ", k = " + std::to_string(k) + ")");
  for (std::size_t attempt = 1; attempt <= cap; ++attempt) {
    auto g = kout::generate(n, k, rng);
    if (is_simple(g)) return {std::move(g), attempt};
  }
  throw CapExceeded("generate_simple: no simple digraph found", cap);
}

inline SimpleSample generate_simple(std::size_t n, std::size_t k, RngSpec spec,
                                    std::size_t cap = kDefaultRejectionCap) {
  auto rng = make_engine(spec);
  return generate_simple(n, k, rng, cap);
}

}  // namespace kout
