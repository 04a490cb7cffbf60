#pragma once

// Statistics of the sub-digraph induced by the vertices outside the giant:
// its cycles, the spectra (forward-reachable sets) of its vertices, the
// distance to the giant, eccentricities and the longest simple path.
//
// Lengths and distances count arcs. Cycles are counted as sequences of
// labeled arcs, so two parallel arcs u -> w, w -> u, w -> u yield two
// distinct 2-cycles and every self-loop arc is its own 1-cycle.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "kout/decompose.hpp"
#include "kout/digraph.hpp"
#include "kout/error.hpp"

namespace kout {

/// The sub-digraph of `graph` induced by the vertices flagged in `member`.
struct InducedView {
  const KOutDigraph* graph = nullptr;
  std::vector<char> member;

  bool contains(Vertex v) const { return member[v] != 0; }
  std::size_t n() const { return member.size(); }
  std::size_t size() const { return static_cast<std::size_t>(std::count(member.begin(), member.end(), 1)); }
};

inline InducedView induced_view(const KOutDigraph& g, std::vector<char> member) {
  if (member.size() != g.n()) throw InvalidArgument("induced_view: membership flags must cover every vertex");
  return {&g, std::move(member)};
}

inline InducedView induced_view(const KOutDigraph& g, const std::vector<Vertex>& vertices) {
  std::vector<char> member(g.n(), 0);
  for (Vertex v : vertices) member.at(v) = 1;
  return {&g, std::move(member)};
}

/// V_out: every vertex not in the giant.
inline InducedView outside_view(const KOutDigraph& g, const Decomposition& d) {
  std::vector<char> member(g.n());
  for (std::size_t v = 0; v < g.n(); ++v) member[v] = !d.in_giant[v];
  return {&g, std::move(member)};
}

// ---------------------------------------------------------------------------
// Cycles

struct Cycle {
  std::vector<Vertex> vertices;        // starts at its smallest vertex
  std::vector<std::uint32_t> labels;   // labels[i]: arc from vertices[i] to the next
  std::size_t length() const { return vertices.size(); }
  friend auto operator<=>(const Cycle&, const Cycle&) = default;
};

struct CycleEnumeration {
  std::vector<Cycle> cycles;  // sorted
  bool vertex_disjoint = true;
};

inline constexpr std::size_t kDefaultCycleCap = 10'000;

namespace detail {

// Johnson's circuit search on one strongly connected block, vertices given
// in ascending label order, arcs restricted to the block (no self-loops).
class JohnsonSearch {
 public:
  JohnsonSearch(const KOutDigraph& g, const std::vector<Vertex>& block, std::size_t cap,
                std::vector<Cycle>& out)
      : g_(g), block_(block), cap_(cap), out_(out) {
    const std::size_t s = block.size();
    adj_.resize(s);
    for (std::size_t i = 0; i < s; ++i) {
      for (Vertex w : g.out(block[i])) {
        auto it = std::lower_bound(block.begin(), block.end(), w);
        if (it == block.end() || *it != w || w == block[i]) continue;
        adj_[i].push_back(static_cast<std::uint32_t>(it - block.begin()));
      }
      std::sort(adj_[i].begin(), adj_[i].end());
      adj_[i].erase(std::unique(adj_[i].begin(), adj_[i].end()), adj_[i].end());
    }
  }

  void run() {
    const std::size_t s = block_.size();
    std::size_t arc_total = 0;
    for (const auto& a : adj_) arc_total += a.size();
    if (arc_total == s) {
      // A strongly connected block with as many arcs as vertices is one cycle.
      std::uint32_t v = 0;
      do {
        path_.push_back(v);
        v = adj_[v].front();
      } while (v != 0);
      emit();
      path_.clear();
      return;
    }
    blocked_.assign(s, 0);
    bset_.assign(s, {});
    for (std::uint32_t start = 0; start < s; ++start) {
      // SCC of `start` in the block restricted to indices >= start.
      std::uint32_t ncomp = 0;
      auto comp = strong_components(
          s,
          [&](Vertex v, auto&& f) {
            for (auto w : adj_[v]) f(w);
          },
          [&](Vertex v) { return v >= start; }, &ncomp);
      in_scc_.assign(s, 0);
      std::size_t members = 0;
      for (std::uint32_t v = start; v < s; ++v)
        if (comp[v] == comp[start]) {
          in_scc_[v] = 1;
          ++members;
        }
      if (members < 2) continue;
      for (std::uint32_t v = start; v < s; ++v) {
        blocked_[v] = 0;
        bset_[v].clear();
      }
      start_ = start;
      circuit(start);
    }
  }

 private:
  bool circuit(std::uint32_t v) {
    bool found = false;
    path_.push_back(v);
    blocked_[v] = 1;
    for (auto w : adj_[v]) {
      if (!in_scc_[w]) continue;
      if (w == start_) {
        emit();
        found = true;
      } else if (!blocked_[w] && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (auto w : adj_[v]) {
        if (!in_scc_[w]) continue;
        auto& b = bset_[w];
        if (std::find(b.begin(), b.end(), v) == b.end()) b.push_back(v);
      }
    }
    path_.pop_back();
    return found;
  }

  void unblock(std::uint32_t u) {
    blocked_[u] = 0;
    auto pending = std::move(bset_[u]);
    bset_[u].clear();
    for (auto w : pending)
      if (blocked_[w]) unblock(w);
  }

  // One cycle per choice of parallel arcs along the vertex cycle in path_.
  void emit() {
    const std::size_t len = path_.size();
    std::vector<std::vector<std::uint32_t>> choices(len);
    for (std::size_t i = 0; i < len; ++i) {
      const Vertex from = block_[path_[i]];
      const Vertex to = block_[path_[(i + 1) % len]];
      for (std::uint32_t lab = 0; lab < g_.k(); ++lab)
        if (g_.head(from, lab) == to) choices[i].push_back(lab);
    }
    std::vector<std::size_t> pick(len, 0);
    while (true) {
      if (out_.size() >= cap_) throw CapExceeded("enumerate_cycles: too many cycles", cap_);
      Cycle c;
      for (std::size_t i = 0; i < len; ++i) {
        c.vertices.push_back(block_[path_[i]]);
        c.labels.push_back(choices[i][pick[i]]);
      }
      out_.push_back(std::move(c));
      std::size_t i = 0;
      while (i < len && ++pick[i] == choices[i].size()) pick[i++] = 0;
      if (i == len) break;
    }
  }

  const KOutDigraph& g_;
  const std::vector<Vertex>& block_;
  std::size_t cap_;
  std::vector<Cycle>& out_;
  std::vector<std::vector<std::uint32_t>> adj_;
  std::vector<char> blocked_;
  std::vector<char> in_scc_;
  std::vector<std::vector<std::uint32_t>> bset_;
  std::vector<std::uint32_t> path_;
  std::uint32_t start_ = 0;
};

}  // namespace detail

/// All elementary directed cycles of the induced sub-digraph. Throws
/// CapExceeded once more than `cap` cycles would be reported.
inline CycleEnumeration enumerate_cycles(const InducedView& view, std::size_t cap = kDefaultCycleCap) {
  const KOutDigraph& g = *view.graph;
  CycleEnumeration result;
  auto& cycles = result.cycles;

  for (Vertex v = 0; v < g.n(); ++v) {
    if (!view.contains(v)) continue;
    for (std::uint32_t lab = 0; lab < g.k(); ++lab)
      if (g.head(v, lab) == v) {
        if (cycles.size() >= cap) throw CapExceeded("enumerate_cycles: too many cycles", cap);
        cycles.push_back({{v}, {lab}});
      }
  }

  std::uint32_t ncomp = 0;
  auto comp = strong_components(
      g.n(),
      [&](Vertex v, auto&& f) {
        for (Vertex w : g.out(v)) f(w);
      },
      [&](Vertex v) { return view.contains(v); }, &ncomp);
  std::vector<std::vector<Vertex>> blocks(ncomp);
  for (Vertex v = 0; v < g.n(); ++v)
    if (comp[v] != kNoIndex) blocks[comp[v]].push_back(v);

  for (const auto& block : blocks) {
    if (block.size() < 2) continue;
    detail::JohnsonSearch(g, block, cap, cycles).run();
  }

  std::sort(cycles.begin(), cycles.end());
  std::vector<std::uint32_t> hits(g.n(), 0);
  for (const auto& c : cycles)
    for (Vertex v : c.vertices)
      if (++hits[v] > 1) result.vertex_disjoint = false;
  return result;
}

// ---------------------------------------------------------------------------
// Spectra and eccentricities

struct SpectrumStats {
  std::vector<std::uint32_t> size;          // |Spec_view(v)|, 0 outside the view
  std::vector<std::uint32_t> arcs;          // arcs with both ends in Spec_view(v)
  std::vector<std::uint32_t> eccentricity;  // max BFS distance from v inside the view
  std::size_t max_size = 0;
  std::size_t violations = 0;  // vertices whose spectrum has arcs - size >= 1
  std::size_t max_eccentricity = 0;

  long long excess(Vertex v) const { return static_cast<long long>(arcs[v]) - size[v]; }
};

/// One BFS per vertex of the view, restricted to the view.
inline SpectrumStats spectra(const InducedView& view) {
  const KOutDigraph& g = *view.graph;
  const std::size_t n = g.n();
  SpectrumStats st;
  st.size.assign(n, 0);
  st.arcs.assign(n, 0);
  st.eccentricity.assign(n, 0);
  std::vector<std::uint32_t> stamp(n, 0);
  std::vector<std::uint32_t> dist(n, 0);
  std::vector<Vertex> queue;
  std::uint32_t round = 0;
  for (Vertex root = 0; root < n; ++root) {
    if (!view.contains(root)) continue;
    ++round;
    queue.clear();
    queue.push_back(root);
    stamp[root] = round;
    dist[root] = 0;
    std::uint32_t arcs = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex u = queue[head];
      for (Vertex w : g.out(u)) {
        if (!view.contains(w)) continue;
        ++arcs;
        if (stamp[w] != round) {
          stamp[w] = round;
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
      }
    }
    st.size[root] = static_cast<std::uint32_t>(queue.size());
    st.arcs[root] = arcs;
    st.eccentricity[root] = dist[queue.back()];
    st.max_size = std::max<std::size_t>(st.max_size, queue.size());
    st.max_eccentricity = std::max<std::size_t>(st.max_eccentricity, st.eccentricity[root]);
    if (arcs >= queue.size() + 1) ++st.violations;
  }
  return st;
}

/// D: the largest finite distance between a view vertex and a vertex of its
/// spectrum inside the view.
inline std::size_t eccentricity_max(const InducedView& view) { return spectra(view).max_eccentricity; }

struct GiantDistance {
  std::size_t max_distance = 0;  // W over view vertices that reach the giant
  std::size_t unreachable = 0;   // view vertices that cannot reach it
};

inline GiantDistance distance_to_giant(const InducedView& view, const std::vector<std::int64_t>& giant_distance) {
  GiantDistance r;
  for (Vertex v = 0; v < view.n(); ++v) {
    if (!view.contains(v)) continue;
    if (giant_distance[v] < 0)
      ++r.unreachable;
    else
      r.max_distance = std::max<std::size_t>(r.max_distance, static_cast<std::size_t>(giant_distance[v]));
  }
  return r;
}

inline GiantDistance distance_to_giant(const KOutDigraph& g, const std::vector<Vertex>& giant_set) {
  std::vector<char> member(g.n(), 1);
  for (Vertex v : giant_set) member[v] = 0;
  return distance_to_giant(InducedView{&g, std::move(member)}, distance_to_set(g, ReverseArcs(g), giant_set));
}

// ---------------------------------------------------------------------------
// Longest simple path

inline constexpr std::size_t kDefaultSccCap = 64;

/// Length in arcs of the longest simple directed path inside the view.
/// Strongly connected blocks of the view are crossed by exhaustive search
/// over their internal simple paths; between blocks the condensation is a
/// DAG and a longest-path DP finishes the job. Blocks larger than `scc_cap`
/// throw CapExceeded.
inline std::size_t longest_path(const InducedView& view, std::size_t scc_cap = kDefaultSccCap) {
  const KOutDigraph& g = *view.graph;
  const std::size_t n = g.n();
  std::uint32_t ncomp = 0;
  auto comp = strong_components(
      n,
      [&](Vertex v, auto&& f) {
        for (Vertex w : g.out(v)) f(w);
      },
      [&](Vertex v) { return view.contains(v); }, &ncomp);
  std::vector<std::vector<Vertex>> blocks(ncomp);
  for (Vertex v = 0; v < n; ++v)
    if (comp[v] != kNoIndex) blocks[comp[v]].push_back(v);

  // best[v]: longest simple path starting at v. Blocks reachable from a
  // block have smaller ids, so increasing id order is a valid DP order.
  std::vector<std::size_t> best(n, 0);
  std::vector<std::size_t> exit_gain(n, 0);
  std::vector<char> on_path(n, 0);
  std::size_t overall = 0;
  for (std::uint32_t c = 0; c < ncomp; ++c) {
    const auto& block = blocks[c];
    if (block.size() > scc_cap)
      throw CapExceeded("longest_path: strongly connected block of size " + std::to_string(block.size()),
                        scc_cap);
    for (Vertex v : block) {
      std::size_t gain = 0;
      for (Vertex w : g.out(v))
        if (view.contains(w) && comp[w] != c) gain = std::max(gain, best[w] + 1);
      exit_gain[v] = gain;
    }
    if (block.size() == 1) {
      best[block[0]] = exit_gain[block[0]];
    } else {
      std::function<std::size_t(Vertex, std::size_t)> walk = [&](Vertex u, std::size_t len) {
        std::size_t top = len + exit_gain[u];
        on_path[u] = 1;
        for (Vertex w : g.out(u))
          if (comp[w] == c && !on_path[w]) top = std::max(top, walk(w, len + 1));
        on_path[u] = 0;
        return top;
      };
      for (Vertex v : block) best[v] = walk(v, 0);
    }
    for (Vertex v : block) overall = std::max(overall, best[v]);
  }
  return overall;
}

// ---------------------------------------------------------------------------
// Full spectra

struct FullSpectrum {
  std::size_t max_size = 0;    // max_v |Spec(v)| over the whole digraph
  std::size_t of_vertex0 = 0;  // |Spec(0)|
};

/// The giant is closed, so a path from v in V_out to any vertex of V_out
/// never enters it, and |Spec(v)| = |Spec_out(v)| + |G| when v reaches the
/// giant, |Spec_out(v)| otherwise. `spec_out_size` comes from spectra() on
/// outside_view().
inline FullSpectrum max_full_spectrum(const Decomposition& d, const std::vector<std::uint32_t>& spec_out_size) {
  FullSpectrum r;
  for (Vertex v = 0; v < d.n(); ++v) {
    const std::size_t s = spec_out_size[v] + (d.giant_distance[v] >= 0 ? d.giant.size() : 0);
    r.max_size = std::max(r.max_size, s);
    if (v == 0) r.of_vertex0 = s;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Everything at once

struct OutsideOptions {
  bool cycles = true;
  bool spectra = true;
  bool paths = true;
  std::size_t cycle_cap = kDefaultCycleCap;
  std::size_t scc_cap = kDefaultSccCap;
};

struct OutsideReport {
  std::vector<Cycle> cycles;
  std::map<std::size_t, std::size_t> cycles_by_length;
  std::size_t total_cycles = 0;
  bool vertex_disjoint = true;
  std::size_t longest_cycle = 0;

  std::vector<std::uint32_t> spectra_sizes;
  std::size_t max_spectrum = 0;
  std::size_t arc_excess_violations = 0;

  std::size_t W = 0;
  std::size_t unreachable = 0;
  std::size_t D = 0;
  std::size_t M = 0;

  std::size_t max_full_spectrum = 0;
  std::size_t spectrum_of_zero = 0;
};

inline OutsideReport analyze_outside(const KOutDigraph& g, const Decomposition& d, const OutsideOptions& opt = {}) {
  OutsideReport r;
  const auto view = outside_view(g, d);
  if (opt.cycles) {
    auto ce = enumerate_cycles(view, opt.cycle_cap);
    r.cycles = std::move(ce.cycles);
    r.vertex_disjoint = ce.vertex_disjoint;
    r.total_cycles = r.cycles.size();
    for (const auto& c : r.cycles) {
      ++r.cycles_by_length[c.length()];
      r.longest_cycle = std::max(r.longest_cycle, c.length());
    }
  }
  if (opt.spectra) {
    auto st = spectra(view);
    r.max_spectrum = st.max_size;
    r.arc_excess_violations = st.violations;
    r.D = st.max_eccentricity;
    const auto full = max_full_spectrum(d, st.size);
    r.max_full_spectrum = full.max_size;
    r.spectrum_of_zero = full.of_vertex0;
    r.spectra_sizes = std::move(st.size);
  }
  if (opt.paths) {
    const auto gd = distance_to_giant(view, d.giant_distance);
    r.W = gd.max_distance;
    r.unreachable = gd.unreachable;
    r.M = longest_path(view, opt.scc_cap);
  }
  return r;
}

}  // namespace kout
