#include <gtest/gtest.h>

#include <map>

#include "kout/oracle.hpp"
#include "kout/stats.hpp"
#include "kout/surjection.hpp"

using namespace kout;

TEST(Surjection, SingleTarget) {
  const auto s = sample_surjection(1, 2, RngSpec{1, 0});
  EXPECT_EQ(s.mapping, KOutDigraph::from_rows({{0, 0}}));
  EXPECT_GE(s.retries, 1u);
}

TEST(Surjection, HostSize) {
  const auto c = derive_constants(2);
  EXPECT_EQ(surjection_host_size(2, c), 3u);
  EXPECT_EQ(surjection_host_size(100, c), 126u);
}

TEST(Surjection, OutputsAreSurjective) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto r = sample_surjection(20 + s, 2 + s % 3, RngSpec{s, 0});
    EXPECT_EQ(r.mapping.n(), 20 + s);
    EXPECT_TRUE(is_surjective(r.mapping));
  }
}

TEST(Surjection, Errors) {
  EXPECT_THROW(sample_surjection(0, 2, RngSpec{1, 0}), InvalidArgument);
  EXPECT_THROW(sample_surjection(3, 1, RngSpec{1, 0}), InvalidArgument);
  EXPECT_THROW(sample_surjection(400, 2, RngSpec{1, 0}, 1), CapExceeded);
  EXPECT_THROW(restrict_to(KOutDigraph::from_rows({{1}, {0}}), {0}), InvariantViolation);
}

TEST(Surjection, ExactConditionalUniformity) {
  // Among the 729 digraphs on 3 vertices, those with a 2-vertex core map onto
  // each of the 14 surjective 2x2 tables equally often.
  std::map<std::vector<Vertex>, int> tally;
  oracle::enumerate_all(3, 2, [&](const KOutDigraph& g, const oracle::BruteStats&) {
    const auto core = one_in_core(g);
    if (core.size() != 2) return;
    const auto t = restrict_to(g, core);
    ++tally[std::vector<Vertex>(t.endpoints().begin(), t.endpoints().end())];
  });
  ASSERT_EQ(tally.size(), 14u);
  for (auto& [table, count] : tally) EXPECT_EQ(count, tally.begin()->second);
}

TEST(Surjection, ChiSquareUniformity) {
  std::map<std::vector<Vertex>, std::uint64_t> tally;
  auto rng = make_engine(RngSpec{12, 0});
  for (int t = 0; t < 14000; ++t) {
    const auto s = sample_surjection(2, 2, rng);
    ++tally[std::vector<Vertex>(s.mapping.endpoints().begin(), s.mapping.endpoints().end())];
  }
  ASSERT_EQ(tally.size(), 14u);
  std::vector<std::uint64_t> obs;
  for (auto& [_, c] : tally) obs.push_back(c);
  EXPECT_LT(stats::chi_square_uniform(obs), stats::chi_square_critical(13, 1e-3));
}
