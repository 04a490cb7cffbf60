#pragma once

// Typical distance between random vertex pairs, and the strong-connectivity
// phase transition around k = log n.

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "kout/decompose.hpp"
#include "kout/digraph.hpp"
#include "kout/error.hpp"
#include "kout/rng.hpp"

namespace kout {

struct DistanceSample {
  std::size_t pairs_drawn = 0;
  std::size_t finite_count = 0;
  std::vector<std::size_t> distances;  // finite ones only, in draw order
};

/// Draws `pairs` ordered pairs (v1, v2) uniformly with replacement and runs a
/// BFS from v1 that stops as soon as v2 is reached.
template <class URBG>
DistanceSample typical_distance(const KOutDigraph& g, std::size_t pairs, URBG& rng) {
  if (pairs == 0) throw InvalidArgument("typical_distance: pairs must be >= 1");
  const std::size_t n = g.n();
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(n - 1));
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<std::uint32_t> dist(n, 0);
  std::vector<Vertex> queue;
  queue.reserve(n);
  DistanceSample out;
  for (std::uint32_t round = 1; round <= pairs; ++round) {
    const Vertex from = pick(rng);
    const Vertex to = pick(rng);
    ++out.pairs_drawn;
    if (from == to) {
      ++out.finite_count;
      out.distances.push_back(0);
      continue;
    }
    queue.clear();
    queue.push_back(from);
    stamp[from] = round;
    dist[from] = 0;
    bool found = false;
    for (std::size_t head = 0; head < queue.size() && !found; ++head) {
      const Vertex u = queue[head];
      for (Vertex w : g.out(u)) {
        if (stamp[w] == round) continue;
        stamp[w] = round;
        dist[w] = dist[u] + 1;
        if (w == to) {
          found = true;
          break;
        }
        queue.push_back(w);
      }
    }
    if (found) {
      ++out.finite_count;
      out.distances.push_back(dist[to]);
    }
  }
  return out;
}

inline DistanceSample typical_distance(const KOutDigraph& g, std::size_t pairs, RngSpec spec) {
  auto rng = make_engine(spec);
  return typical_distance(g, pairs, rng);
}

inline bool is_strongly_connected(const KOutDigraph& g) { return scc(g).scc_members.size() == 1; }

inline bool has_in_degree_zero_vertex(const KOutDigraph& g) {
  std::vector<char> hit(g.n(), 0);
  for (Vertex e : g.endpoints()) hit[e] = 1;
  for (char h : hit)
    if (!h) return true;
  return false;
}

struct PhasePoint {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t reps = 0;
  double fraction_strongly_connected = 0;
  double fraction_with_indeg_zero_vertex = 0;
};

/// For each k in [k_min, k_max], `reps` digraphs. Replicate r uses stream r
/// for every k; because arcs are drawn label by label, the k-out digraph of
/// replicate r is a sub-digraph of its (k+1)-out digraph, which makes the
/// strongly connected fraction monotone in k.
inline std::vector<PhasePoint> phase_sweep(std::size_t n, std::size_t k_min, std::size_t k_max, std::size_t reps,
                                           std::uint64_t seed) {
  if (k_min < 1 || k_min > k_max) throw InvalidArgument("phase_sweep: need 1 <= k_min <= k_max");
  if (reps == 0) throw InvalidArgument("phase_sweep: reps must be >= 1");
  std::vector<PhasePoint> points;
  for (std::size_t k = k_min; k <= k_max; ++k) {
    std::size_t sc = 0;
    std::size_t indeg0 = 0;
    for (std::size_t r = 0; r < reps; ++r) {
      const auto g = kout::generate(n, k, RngSpec{seed, r});
      sc += is_strongly_connected(g);
      indeg0 += has_in_degree_zero_vertex(g);
    }
    points.push_back({n, k, reps, double(sc) / reps, double(indeg0) / reps});
  }
  return points;
}

}  // namespace kout
