#pragma once

// Structural decomposition of a k-out digraph: strongly connected
// components, the condensation DAG, closed components, the giant (largest
// closed SCC) and the one-in-core (largest induced sub-digraph with minimum
// in-degree one).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "kout/digraph.hpp"

namespace kout {

inline constexpr std::uint32_t kNoIndex = std::numeric_limits<std::uint32_t>::max();

/// Compressed reverse adjacency: the tails of arcs into v are
/// sources[offsets[v] .. offsets[v+1]), one entry per arc.
struct ReverseArcs {
  std::vector<std::size_t> offsets;
  std::vector<Vertex> sources;

  explicit ReverseArcs(const KOutDigraph& g) : offsets(g.n() + 1, 0), sources(g.arc_count()) {
    for (Vertex e : g.endpoints()) ++offsets[e + 1];
    for (std::size_t v = 0; v < g.n(); ++v) offsets[v + 1] += offsets[v];
    std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
    for (Vertex v = 0; v < g.n(); ++v)
      for (Vertex w : g.out(v)) sources[fill[w]++] = v;
  }

  std::size_t in_degree(Vertex v) const { return offsets[v + 1] - offsets[v]; }
  std::span<const Vertex> in(Vertex v) const {
    return {sources.data() + offsets[v], offsets[v + 1] - offsets[v]};
  }
};

/// Strongly connected components of a digraph on [0, n) given as a successor
/// enumerator `for_each_succ(v, f)` that calls `f(w)` for each arc v -> w.
/// Iterative Tarjan; component ids come out in reverse topological order of
/// the condensation (every arc between components goes from a larger id to a
/// smaller one). Vertices rejected by `active` are skipped and get kNoIndex.
template <class ForEachSucc, class Active>
std::vector<std::uint32_t> strong_components(std::size_t n, ForEachSucc&& for_each_succ, Active&& active,
                                             std::uint32_t* count_out = nullptr) {
  std::vector<std::uint32_t> comp(n, kNoIndex);
  std::vector<std::uint32_t> index(n, kNoIndex);
  std::vector<std::uint32_t> low(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<Vertex> stack;
  // Successor lists of the frames on the call stack, stacked LIFO.
  std::vector<Vertex> succ;
  struct Frame {
    Vertex v;
    std::size_t begin;
    std::size_t next;
    std::size_t end;
  };
  std::vector<Frame> call;
  std::uint32_t counter = 0;
  std::uint32_t ncomp = 0;

  auto push = [&](Vertex v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = 1;
    const std::size_t begin = succ.size();
    for_each_succ(v, [&](Vertex w) {
      if (active(w)) succ.push_back(w);
    });
    call.push_back({v, begin, begin, succ.size()});
  };

  for (Vertex root = 0; root < n; ++root) {
    if (!active(root) || index[root] != kNoIndex) continue;
    push(root);
    while (!call.empty()) {
      Frame& top = call.back();
      if (top.next < top.end) {
        const Vertex w = succ[top.next++];
        if (index[w] == kNoIndex) {
          push(w);
        } else if (on_stack[w]) {
          low[top.v] = std::min(low[top.v], index[w]);
        }
        continue;
      }
      const Vertex v = top.v;
      succ.resize(top.begin);
      call.pop_back();
      if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
      if (low[v] == index[v]) {
        Vertex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = ncomp;
        } while (w != v);
        ++ncomp;
      }
    }
  }
  if (count_out) *count_out = ncomp;
  return comp;
}

struct Decomposition {
  std::vector<std::uint32_t> scc_id;               // per vertex
  std::vector<std::vector<Vertex>> scc_members;    // ascending labels
  std::vector<std::vector<std::uint32_t>> condensation;  // deduplicated, no self-arcs
  std::vector<char> closed;                        // per SCC
  std::uint32_t giant_scc = 0;
  std::vector<Vertex> giant;                       // ascending
  std::vector<char> in_giant;                      // per vertex
  std::vector<Vertex> one_in_core;                 // ascending
  std::vector<char> in_core;                       // per vertex
  std::vector<std::int64_t> giant_distance;        // arcs to the giant, -1 if unreachable
  bool all_reach_giant = false;

  std::size_t n() const { return scc_id.size(); }
  std::size_t scc_count() const { return scc_members.size(); }
};

struct SccResult {
  std::vector<std::uint32_t> scc_id;
  std::vector<std::vector<Vertex>> scc_members;
};

inline SccResult scc(const KOutDigraph& g) {
  std::uint32_t count = 0;
  auto id = strong_components(
      g.n(),
      [&](Vertex v, auto&& f) {
        for (Vertex w : g.out(v)) f(w);
      },
      [](Vertex) { return true; }, &count);
  std::vector<std::vector<Vertex>> members(count);
  for (Vertex v = 0; v < g.n(); ++v) members[id[v]].push_back(v);
  return {std::move(id), std::move(members)};
}

struct Condensation {
  std::vector<std::vector<std::uint32_t>> arcs;
  std::vector<char> closed;
};

inline Condensation condense(const KOutDigraph& g, const SccResult& s) {
  Condensation c;
  c.arcs.resize(s.scc_members.size());
  c.closed.assign(s.scc_members.size(), 1);
  for (std::uint32_t cid = 0; cid < s.scc_members.size(); ++cid) {
    auto& out = c.arcs[cid];
    for (Vertex v : s.scc_members[cid])
      for (Vertex w : g.out(v))
        if (s.scc_id[w] != cid) out.push_back(s.scc_id[w]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    c.closed[cid] = out.empty();
  }
  return c;
}

/// Index of the largest closed SCC; ties go to the one holding the smallest
/// vertex label.
inline std::uint32_t giant_component(const SccResult& s, const Condensation& c) {
  std::uint32_t best = kNoIndex;
  for (std::uint32_t cid = 0; cid < s.scc_members.size(); ++cid) {
    if (!c.closed[cid]) continue;
    if (best == kNoIndex) {
      best = cid;
      continue;
    }
    const auto& a = s.scc_members[cid];
    const auto& b = s.scc_members[best];
    if (a.size() > b.size() || (a.size() == b.size() && a.front() < b.front())) best = cid;
  }
  return best;
}

inline std::vector<Vertex> giant(const KOutDigraph& g) {
  const auto s = scc(g);
  const auto c = condense(g, s);
  return s.scc_members[giant_component(s, c)];
}

/// Peels vertices of in-degree zero (counting arcs from surviving vertices,
/// with multiplicity) until none remain. `order` optionally permutes the
/// initial work queue; the survivor set does not depend on it.
inline std::vector<Vertex> one_in_core(const KOutDigraph& g, const std::vector<Vertex>* order = nullptr) {
  const std::size_t n = g.n();
  std::vector<std::size_t> indeg(n, 0);
  for (Vertex e : g.endpoints()) ++indeg[e];
  std::vector<char> alive(n, 1);
  std::vector<Vertex> queue;
  auto seed = [&](Vertex v) {
    if (indeg[v] == 0) queue.push_back(v);
  };
  if (order) {
    for (Vertex v : *order) seed(v);
  } else {
    for (Vertex v = 0; v < n; ++v) seed(v);
  }
  while (!queue.empty()) {
    const Vertex v = queue.back();
    queue.pop_back();
    alive[v] = 0;
    for (Vertex w : g.out(v))
      if (alive[w] && --indeg[w] == 0) queue.push_back(w);
  }
  std::vector<Vertex> core;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v]) core.push_back(v);
  return core;
}

/// Multi-source BFS from `targets` along reversed arcs. Entry v is the length
/// in arcs of a shortest path from v into the target set, or -1.
inline std::vector<std::int64_t> distance_to_set(const KOutDigraph& g, const ReverseArcs& rev,
                                                 const std::vector<Vertex>& targets) {
  std::vector<std::int64_t> dist(g.n(), -1);
  std::vector<Vertex> frontier;
  for (Vertex v : targets) {
    dist[v] = 0;
    frontier.push_back(v);
  }
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    const Vertex u = frontier[head];
    for (Vertex p : rev.in(u))
      if (dist[p] < 0) {
        dist[p] = dist[u] + 1;
        frontier.push_back(p);
      }
  }
  return dist;
}

inline Decomposition decompose(const KOutDigraph& g) {
  Decomposition d;
  auto s = scc(g);
  auto c = condense(g, s);
  d.giant_scc = giant_component(s, c);
  d.giant = s.scc_members[d.giant_scc];
  d.in_giant.assign(g.n(), 0);
  for (Vertex v : d.giant) d.in_giant[v] = 1;
  d.scc_id = std::move(s.scc_id);
  d.scc_members = std::move(s.scc_members);
  d.condensation = std::move(c.arcs);
  d.closed = std::move(c.closed);
  d.one_in_core = one_in_core(g);
  d.in_core.assign(g.n(), 0);
  for (Vertex v : d.one_in_core) d.in_core[v] = 1;
  d.giant_distance = distance_to_set(g, ReverseArcs(g), d.giant);
  d.all_reach_giant =
      std::all_of(d.giant_distance.begin(), d.giant_distance.end(), [](std::int64_t x) { return x >= 0; });
  return d;
}

struct Layers {
  std::size_t giant_size = 0;
  std::size_t core_size = 0;
  std::size_t middle_size = 0;  // |Q| - |G|
  std::size_t outer_size = 0;   // n - |Q|
  bool all_reach_giant = false;

  friend bool operator==(const Layers&, const Layers&) = default;
};

inline Layers layers(const Decomposition& d) {
  return {d.giant.size(), d.one_in_core.size(), d.one_in_core.size() - d.giant.size(),
          d.n() - d.one_in_core.size(), d.all_reach_giant};
}

inline Layers layers(const KOutDigraph& g) { return layers(decompose(g)); }

}  // namespace kout
