#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "kout/constants.hpp"
#include "kout/decompose.hpp"
#include "kout/distance.hpp"
#include "kout/outside.hpp"
#include "kout/oracle.hpp"
#include "kout/stats.hpp"

using namespace kout;

namespace {

KOutDigraph three_cycle() { return KOutDigraph::from_rows({{1, 1}, {2, 2}, {0, 0}}); }
KOutDigraph chain() { return KOutDigraph::from_rows({{1, 1}, {2, 2}, {2, 2}}); }

// Condensation arcs must go from larger to smaller ids.
void expect_reverse_topological(const Decomposition& d) {
  for (std::uint32_t c = 0; c < d.condensation.size(); ++c)
    for (auto t : d.condensation[c]) EXPECT_LT(t, c);
}

}  // namespace

TEST(Scc, SingleVertex) {
  const auto s = scc(kout::generate(1, 2, RngSpec{1, 0}));
  ASSERT_EQ(s.scc_members.size(), 1u);
  EXPECT_EQ(s.scc_members[0], std::vector<Vertex>{0});
}

TEST(Scc, ThreeCycle) {
  const auto s = scc(three_cycle());
  ASSERT_EQ(s.scc_members.size(), 1u);
  EXPECT_EQ(s.scc_members[0].size(), 3u);
  const auto c = condense(three_cycle(), s);
  EXPECT_TRUE(c.closed[0]);
  EXPECT_TRUE(c.arcs[0].empty());
}

TEST(Scc, ChainIntoDoubleLoop) {
  const auto g = chain();
  const auto s = scc(g);
  ASSERT_EQ(s.scc_members.size(), 3u);
  EXPECT_EQ(count_self_loops(g), 2u);  // both arcs of vertex 2
  const auto c = condense(g, s);
  // {2} is the sink, {1} -> {2}, {0} -> {1}
  EXPECT_EQ(s.scc_members[s.scc_id[2]], std::vector<Vertex>{2});
  EXPECT_TRUE(c.closed[s.scc_id[2]]);
  EXPECT_FALSE(c.closed[s.scc_id[1]]);
  EXPECT_FALSE(c.closed[s.scc_id[0]]);
  EXPECT_EQ(c.arcs[s.scc_id[0]], std::vector<std::uint32_t>{s.scc_id[1]});
  EXPECT_EQ(c.arcs[s.scc_id[1]], std::vector<std::uint32_t>{s.scc_id[2]});
}

TEST(Giant, TieBreakSmallestLabel) {
  const auto g = KOutDigraph::from_rows({{0}, {1}});
  EXPECT_EQ(giant(g), std::vector<Vertex>{0});
  const auto h = KOutDigraph::from_rows({{1}, {1}, {0}});
  EXPECT_EQ(giant(h), std::vector<Vertex>{1});
  // two closed 2-cycles {1,3} and {0,2}: the one holding vertex 0 wins
  const auto t = KOutDigraph::from_rows({{2}, {3}, {0}, {1}});
  EXPECT_EQ(giant(t), (std::vector<Vertex>{0, 2}));
  EXPECT_EQ(giant(three_cycle()), (std::vector<Vertex>{0, 1, 2}));
}

TEST(OneInCore, HandExamples) {
  EXPECT_EQ(one_in_core(KOutDigraph::from_rows({{0, 0}, {1, 1}})), (std::vector<Vertex>{0, 1}));
  EXPECT_EQ(one_in_core(chain()), std::vector<Vertex>{2});
  EXPECT_EQ(one_in_core(three_cycle()), (std::vector<Vertex>{0, 1, 2}));
}

TEST(OneInCore, PeelOrderIndependent) {
  std::mt19937_64 shuffle_rng(17);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = kout::generate(400, 2, RngSpec{s, 0});
    const auto base = one_in_core(g);
    for (int t = 0; t < 5; ++t) {
      std::vector<Vertex> order(g.n());
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), shuffle_rng);
      EXPECT_EQ(one_in_core(g, &order), base);
    }
  }
}

TEST(OneInCore, IsMaximalMinInDegreeOne) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto g = kout::generate(300, 2, RngSpec{s, 1});
    const auto core = one_in_core(g);
    std::vector<char> in(g.n(), 0);
    for (Vertex v : core) in[v] = 1;
    std::vector<int> indeg(g.n(), 0);
    for (Vertex v : core)
      for (Vertex w : g.out(v)) {
        EXPECT_TRUE(in[w]) << "arc leaves the core";
        ++indeg[w];
      }
    for (Vertex v : core) EXPECT_GE(indeg[v], 1);
    // Maximality: the core is exactly the set of vertices reachable from a
    // cycle; any vertex outside it has no cycle upstream.
    const auto d = decompose(g);
    for (Vertex v = 0; v < g.n(); ++v)
      if (!in[v]) EXPECT_EQ(d.scc_members[d.scc_id[v]].size(), 1u);
  }
}

TEST(Layers, HandExamples) {
  EXPECT_EQ(layers(three_cycle()), (Layers{3, 3, 0, 0, true}));
  EXPECT_EQ(layers(chain()), (Layers{1, 1, 0, 2, true}));
  // two closed components: vertex 1 cannot reach the giant {0}
  EXPECT_EQ(layers(KOutDigraph::from_rows({{0}, {1}})), (Layers{1, 2, 1, 0, false}));
}

TEST(Decompose, StructuralInvariantsOnRandomInstances) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const std::size_t k = 1 + s % 3;
    const auto g = kout::generate(200 + 37 * s, k, RngSpec{s, 2});
    const auto d = decompose(g);
    expect_reverse_topological(d);
    std::vector<int> seen(g.n(), 0);
    for (const auto& m : d.scc_members)
      for (Vertex v : m) ++seen[v];
    EXPECT_TRUE(std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; }));
    EXPECT_TRUE(d.closed[d.giant_scc]);
    EXPECT_TRUE(std::includes(d.one_in_core.begin(), d.one_in_core.end(), d.giant.begin(), d.giant.end()));
    EXPECT_GE(std::count(d.closed.begin(), d.closed.end(), 1), 1);
    if (std::count(d.closed.begin(), d.closed.end(), 1) == 1) EXPECT_TRUE(d.all_reach_giant);
    // no directed cycle outside the core
    std::vector<char> out(g.n());
    for (Vertex v = 0; v < g.n(); ++v) out[v] = !d.in_core[v];
    EXPECT_TRUE(enumerate_cycles(induced_view(g, out)).cycles.empty());
    if (is_strongly_connected(g)) {
      EXPECT_EQ(d.giant.size(), g.n());
      EXPECT_EQ(d.one_in_core.size(), g.n());
    }
  }
}

TEST(Decompose, DeepChainDoesNotOverflow) {
  // 10^6-vertex path ending in a loop: recursion depth would be 10^6.
  const std::size_t n = 1'000'000;
  std::vector<Vertex> ends(n);
  for (std::size_t v = 0; v < n; ++v) ends[v] = static_cast<Vertex>(v + 1 < n ? v + 1 : v);
  const KOutDigraph g(n, 1, std::move(ends));
  const auto d = decompose(g);
  EXPECT_EQ(d.scc_count(), n);
  EXPECT_EQ(d.giant, std::vector<Vertex>{n - 1});
  EXPECT_EQ(d.giant_distance[0], static_cast<std::int64_t>(n - 1));
}

TEST(Decompose, MatchesBruteForceOnAll729) {
  oracle::enumerate_all(3, 2, [](const KOutDigraph& g, const oracle::BruteStats& b) {
    const auto d = decompose(g);
    oracle::Mask giant = 0, core = 0;
    for (Vertex v : d.giant) giant |= 1u << v;
    for (Vertex v : d.one_in_core) core |= 1u << v;
    EXPECT_EQ(giant, b.giant);
    EXPECT_EQ(core, b.core);
    EXPECT_EQ(d.scc_count(), b.scc_count);
    EXPECT_EQ(d.all_reach_giant, b.all_reach_giant);
  });
}

TEST(Decompose, MonteCarloGiantFraction) {
  const auto c = derive_constants(2);
  double total = 0;
  const int reps = 20;
  for (int r = 0; r < reps; ++r) total += decompose(kout::generate(20000, 2, RngSpec{31, std::uint64_t(r)})).giant.size();
  EXPECT_NEAR(total / reps / 20000, c.nu, 0.01);
}

TEST(Decompose, MiddleLayerIsBounded) {
  auto p95 = [](std::size_t n) {
    std::vector<double> mid;
    int reach = 0;
    for (std::uint64_t r = 0; r < 500; ++r) {
      const auto l = layers(kout::generate(n, 2, RngSpec{77, r}));
      mid.push_back(double(l.middle_size));
      reach += l.all_reach_giant;
    }
    EXPECT_GE(reach, 495);
    return stats::percentile(mid, 0.95);
  };
  const double small = p95(5000), large = p95(20000);
  EXPECT_LE(large, small + 5);
  EXPECT_LE(large, 10);
}
