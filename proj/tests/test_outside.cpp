#include <gtest/gtest.h>

#include <algorithm>
#include <bit>
#include <queue>

#include "kout/decompose.hpp"
#include "kout/harness.hpp"
#include "kout/oracle.hpp"
#include "kout/outside.hpp"

using namespace kout;

namespace {

std::vector<char> all_but(std::size_t n, std::vector<Vertex> excluded) {
  std::vector<char> m(n, 1);
  for (Vertex v : excluded) m[v] = 0;
  return m;
}

// G[Spec(v)] restricted to the view is a single cycle with in-trees: exactly
// one cycle among the spectrum's vertices and arcs == size.
void expect_eye(const KOutDigraph& g, const InducedView& view, Vertex root) {
  std::vector<char> in_spec(g.n(), 0);
  std::queue<Vertex> q;
  q.push(root);
  in_spec[root] = 1;
  while (!q.empty()) {
    const Vertex u = q.front();
    q.pop();
    for (Vertex w : g.out(u))
      if (view.contains(w) && !in_spec[w]) in_spec[w] = 1, q.push(w);
  }
  const auto cycles = enumerate_cycles(induced_view(g, in_spec)).cycles;
  EXPECT_EQ(cycles.size(), 1u) << "root " << root;
}

}  // namespace

TEST(EnumerateCycles, AcyclicView) {
  const auto g = KOutDigraph::from_rows({{1, 2}, {2, 2}, {2, 2}});
  const auto r = enumerate_cycles(induced_view(g, all_but(3, {2})));
  EXPECT_TRUE(r.cycles.empty());
  EXPECT_TRUE(r.vertex_disjoint);
}

TEST(EnumerateCycles, TwoCycleAndDisjointLoop) {
  // giant {4}; outside: 0 <-> 1 and a loop at 2; vertex 3 feeds in.
  const auto g = KOutDigraph::from_rows({{1, 4}, {0, 4}, {2, 4}, {0, 2}, {4, 4}});
  const auto r = enumerate_cycles(induced_view(g, all_but(5, {4})));
  ASSERT_EQ(r.cycles.size(), 2u);
  EXPECT_TRUE(r.vertex_disjoint);
  std::vector<std::size_t> lens;
  for (const auto& c : r.cycles) lens.push_back(c.length());
  std::sort(lens.begin(), lens.end());
  EXPECT_EQ(lens, (std::vector<std::size_t>{1, 2}));
}

TEST(EnumerateCycles, ParallelArcsGiveDistinctCycles) {
  // both arcs of 0 go to 1 and 1 returns: two labelled 2-cycles sharing vertices
  const auto g = KOutDigraph::from_rows({{1, 1}, {0, 2}, {2, 2}});
  const auto r = enumerate_cycles(induced_view(g, all_but(3, {2})));
  EXPECT_EQ(r.cycles.size(), 2u);
  EXPECT_FALSE(r.vertex_disjoint);
  // two self-loops on one vertex are two 1-cycles
  const auto h = KOutDigraph::from_rows({{0, 0}, {1, 1}});
  EXPECT_EQ(enumerate_cycles(induced_view(h, all_but(2, {1}))).cycles.size(), 2u);
}

TEST(EnumerateCycles, CapIsEnforced) {
  // complete 3-out digraph on 4 vertices has many cycles
  const auto g = KOutDigraph::from_rows({{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}});
  EXPECT_THROW(enumerate_cycles(induced_view(g, std::vector<char>(4, 1)), 5), CapExceeded);
  EXPECT_EQ(enumerate_cycles(induced_view(g, std::vector<char>(4, 1))).cycles.size(), 20u);
}

TEST(Spectra, IsolatedAndLoopExamples) {
  const auto g = KOutDigraph::from_rows({{2, 2}, {1, 2}, {2, 2}});
  const auto st = spectra(induced_view(g, all_but(3, {2})));
  EXPECT_EQ(st.size[0], 1u);
  EXPECT_EQ(st.arcs[0], 0u);
  EXPECT_EQ(st.excess(0), -1);
  EXPECT_EQ(st.size[1], 1u);
  EXPECT_EQ(st.arcs[1], 1u);
  EXPECT_EQ(st.excess(1), 0);
  EXPECT_EQ(st.violations, 0u);
  EXPECT_EQ(st.max_eccentricity, 0u);
}

TEST(Spectra, ViolationWhenTwoCyclesShareASpectrum) {
  // vertex 0 has a loop and an arc into the 2-cycle 1 <-> 2: spectrum {0,1,2}, 4 arcs
  const auto g = KOutDigraph::from_rows({{0, 1}, {2, 3}, {1, 3}, {3, 3}});
  const auto st = spectra(induced_view(g, all_but(4, {3})));
  EXPECT_EQ(st.size[0], 3u);
  EXPECT_EQ(st.arcs[0], 4u);
  EXPECT_EQ(st.violations, 1u);
}

TEST(DistanceToGiant, DirectAndChain) {
  const auto direct = KOutDigraph::from_rows({{2, 2}, {2, 0}, {2, 2}});
  EXPECT_EQ(distance_to_giant(direct, {2}).max_distance, 1u);
  const auto chain = KOutDigraph::from_rows({{1, 1}, {2, 2}, {2, 2}});
  const auto r = distance_to_giant(chain, {2});
  EXPECT_EQ(r.max_distance, 2u);
  EXPECT_EQ(r.unreachable, 0u);
  const auto split = KOutDigraph::from_rows({{0}, {1}});
  EXPECT_EQ(distance_to_giant(split, {0}).unreachable, 1u);
}

TEST(Eccentricity, SingletonsAndPath) {
  const auto g = KOutDigraph::from_rows({{3, 3}, {3, 3}, {3, 3}, {3, 3}});
  EXPECT_EQ(eccentricity_max(induced_view(g, all_but(4, {3}))), 0u);
  const auto p = KOutDigraph::from_rows({{1}, {2}, {3}, {4}, {4}});
  EXPECT_EQ(eccentricity_max(induced_view(p, all_but(5, {4}))), 3u);
}

TEST(LongestPath, PathAndCycleWithExit) {
  const auto p = KOutDigraph::from_rows({{1}, {2}, {3}, {4}, {5}, {6}, {6}});
  EXPECT_EQ(longest_path(induced_view(p, all_but(7, {6}))), 5u);
  // 3-cycle 0 -> 1 -> 2 -> 0 with exit 2 -> 3; vertex 4 is the giant
  const auto c = KOutDigraph::from_rows({{1, 4}, {2, 4}, {0, 3}, {4, 4}, {4, 4}});
  EXPECT_EQ(longest_path(induced_view(c, all_but(5, {4}))), 3u);
}

TEST(LongestPath, BlockCapIsEnforced) {
  const auto g = KOutDigraph::from_rows({{1}, {2}, {3}, {0}, {4}});
  EXPECT_THROW(longest_path(induced_view(g, all_but(5, {4})), 3), CapExceeded);
  EXPECT_EQ(longest_path(induced_view(g, all_but(5, {4})), 4), 3u);
}

TEST(FullSpectrum, StronglyConnectedAndChain) {
  const auto sc = KOutDigraph::from_rows({{1, 2}, {2, 0}, {0, 1}});
  const auto d = decompose(sc);
  const auto r = analyze_outside(sc, d);
  EXPECT_EQ(r.max_full_spectrum, 3u);
  EXPECT_EQ(r.spectrum_of_zero, 3u);
  const auto chain = KOutDigraph::from_rows({{1}, {2}, {3}, {1}});
  const auto dc = decompose(chain);
  const auto rc = analyze_outside(chain, dc);
  EXPECT_EQ(rc.spectrum_of_zero, 4u);
  EXPECT_EQ(rc.max_full_spectrum, 4u);
}

TEST(FullSpectrum, MatchesDirectReachability) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto g = kout::generate(300, 1 + s % 2, RngSpec{s, 4});
    const auto d = decompose(g);
    const auto r = analyze_outside(g, d);
    std::size_t best = 0, zero = 0;
    for (Vertex v = 0; v < g.n(); ++v) {
      std::vector<char> seen(g.n(), 0);
      std::vector<Vertex> stack{v};
      seen[v] = 1;
      std::size_t count = 1;
      while (!stack.empty()) {
        const Vertex u = stack.back();
        stack.pop_back();
        for (Vertex w : g.out(u))
          if (!seen[w]) seen[w] = 1, ++count, stack.push_back(w);
      }
      best = std::max(best, count);
      if (v == 0) zero = count;
    }
    EXPECT_EQ(r.max_full_spectrum, best);
    EXPECT_EQ(r.spectrum_of_zero, zero);
  }
}

TEST(Outside, MatchesBruteForceOnAll729) {
  oracle::enumerate_all(3, 2, [](const KOutDigraph& g, const oracle::BruteStats& b) {
    const auto d = decompose(g);
    const auto r = analyze_outside(g, d);
    EXPECT_EQ(r.cycles_by_length, b.cycles_by_length);
    EXPECT_EQ(r.total_cycles, b.total_cycles);
    EXPECT_EQ(r.vertex_disjoint, b.vertex_disjoint);
    EXPECT_EQ(r.max_spectrum, b.max_spec_out);
    EXPECT_EQ(r.W, b.W);
    EXPECT_EQ(r.D, b.D);
    EXPECT_EQ(r.M, b.M);
    EXPECT_EQ(r.max_full_spectrum, b.max_full_spectrum);
    EXPECT_EQ(r.spectrum_of_zero, b.spectrum_of_zero);
    for (Vertex v = 0; v < g.n(); ++v) EXPECT_EQ(r.spectra_sizes[v], b.spec_out_size[v]);
  });
}

TEST(Outside, MatchesBruteForceOnLargerSparseInstances) {
  // Random 2-out digraphs on up to 16 vertices; compare whenever V_out is small
  // enough for the exhaustive reference (<= 12 vertices, cycles when <= 8).
  int compared = 0, cycle_compared = 0;
  for (std::uint64_t s = 0; s < 3000 && compared < 400; ++s) {
    const std::size_t n = 6 + s % 11;
    const std::size_t k = 1 + (s / 11) % 2;
    const auto g = kout::generate(n, k, RngSpec{s, 9});
    const auto d = decompose(g);
    const std::size_t outside = n - d.giant.size();
    if (outside == 0 || outside > 12) continue;
    const auto b = oracle::brute_force(g);
    const auto r = analyze_outside(g, d);
    EXPECT_EQ(r.D, b.D) << "seed " << s;
    EXPECT_EQ(r.M, b.M) << "seed " << s;
    EXPECT_EQ(r.W, b.W) << "seed " << s;
    EXPECT_EQ(r.max_spectrum, b.max_spec_out) << "seed " << s;
    EXPECT_GE(r.M, r.D);
    ++compared;
    if (outside <= 8) {
      EXPECT_EQ(r.cycles_by_length, b.cycles_by_length) << "seed " << s;
      EXPECT_EQ(r.vertex_disjoint, b.vertex_disjoint) << "seed " << s;
      ++cycle_compared;
    }
  }
  EXPECT_GE(compared, 100);
  EXPECT_GE(cycle_compared, 50);
}

TEST(Outside, ReportInvariantsAndEyes) {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto g = kout::generate(3000, 2, RngSpec{s, 5});
    const auto d = decompose(g);
    const auto r = analyze_outside(g, d);
    const auto view = outside_view(g, d);
    std::size_t sum = 0, longest = 0;
    for (auto [len, c] : r.cycles_by_length) sum += c, longest = std::max(longest, len);
    EXPECT_EQ(sum, r.total_cycles);
    EXPECT_EQ(longest, r.longest_cycle);
    EXPECT_LE(r.D, r.M);
    for (const auto& c : r.cycles)
      for (Vertex v : c.vertices) {
        EXPECT_TRUE(d.in_core[v]);
        EXPECT_FALSE(d.in_giant[v]);
      }
    const auto st = spectra(view);
    for (Vertex v = 0; v < g.n(); ++v) {
      if (!view.contains(v)) continue;
      EXPECT_GE(st.size[v], 1u);
      if (st.excess(v) <= 0) EXPECT_LE(st.arcs[v], st.size[v]);
    }
    // every cycle vertex whose spectrum has arc excess 0 sees an eye
    for (const auto& c : r.cycles)
      for (Vertex v : c.vertices)
        if (st.excess(v) == 0) expect_eye(g, view, v);
    EXPECT_NO_THROW(check_decomposition(g, d, &r));
  }
}
