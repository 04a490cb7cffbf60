#include <gtest/gtest.h>

#include <bit>
#include <cmath>

#include "kout/constants.hpp"
#include "kout/oracle.hpp"

using namespace kout;
using namespace kout::oracle;

TEST(Stirling, SmallValues) {
  EXPECT_EQ(stirling2(4, 2), 7);
  EXPECT_EQ(stirling2(6, 3), 90);
  EXPECT_EQ(stirling2(0, 0), 1);
  for (std::size_t x = 1; x < 30; ++x) {
    EXPECT_EQ(stirling2(x, x), 1);
    EXPECT_EQ(stirling2(x, 0), 0);
    EXPECT_EQ(stirling2(x, 1), 1);
    if (x >= 2) EXPECT_EQ(stirling2(x, 2), (BigInt(1) << (x - 1)) - 1);
  }
  EXPECT_THROW(stirling2(3, 5), InvalidArgument);
  EXPECT_THROW(stirling2(601, 2), InvalidArgument);
}

TEST(Stirling, SurjectionCounts) {
  EXPECT_EQ(surjection_count(2, 2), 14);
  EXPECT_EQ(surjection_count(1, 7), 1);
  EXPECT_EQ(surjection_count(3, 2), 540);
  // inclusion-exclusion cross-check
  for (std::size_t m = 1; m <= 6; ++m)
    for (std::size_t k = 1; k <= 4; ++k) {
      BigInt ie = 0;
      for (std::size_t j = 0; j <= m; ++j) {
        BigInt term = binomial(m, j) * boost::multiprecision::pow(BigInt(m - j), unsigned(k * m));
        ie += (j % 2 ? -term : term);
      }
      EXPECT_EQ(surjection_count(m, k), ie) << m << "," << k;
    }
}

TEST(ExpectedKSurjections, Examples) {
  EXPECT_EQ(expected_k_surjections(3, 3, 2), BigRational(540, 729));
  EXPECT_EQ(expected_k_surjections(3, 2, 2), BigRational(42, 81));
  for (std::size_t n = 1; n < 8; ++n)
    for (std::size_t k = 1; k < 4; ++k)
      EXPECT_EQ(expected_k_surjections(n, 1, k), BigRational(n, boost::multiprecision::pow(BigInt(n), unsigned(k))));
  EXPECT_THROW(expected_k_surjections(3, 4, 2), InvalidArgument);
}

TEST(Good, ApproximationConverges) {
  const double tau = solve_tau(2);
  auto ratio = [&](std::size_t s) { return std::exp(good_log_stirling(s, 2, tau) - log_big(stirling2(2 * s, s))); };
  EXPECT_NEAR(ratio(200), 1.0, 0.01);
  EXPECT_NEAR(ratio(20), 1.0, 0.10);
  EXPECT_LT(std::abs(ratio(200) - 1), std::abs(ratio(20) - 1));
}

TEST(LogBig, MatchesDouble) {
  EXPECT_NEAR(log_big(BigInt(1000)), std::log(1000.0), 1e-14);
  const BigInt big = boost::multiprecision::pow(BigInt(3), 2000u);
  EXPECT_NEAR(log_big(big), 2000 * std::log(3.0), 1e-9);
}

TEST(GaltonWatson, FirstGeneration) {
  EXPECT_NEAR(gw_extinction(0.1, 2, 1), 0.81, 1e-15);
  EXPECT_NEAR(gw_survival(0.1, 2, 1), 0.19, 1e-15);
}

TEST(GaltonWatson, BoundHoldsStrictly) {
  for (double mu : {0.05, 0.1, 0.2}) {
    double prev = 0;
    for (int m = 1; m <= 25; ++m) {
      const double phi = gw_extinction(mu, 2, m);
      EXPECT_GE(phi, prev);
      prev = phi;
      // Both sides round to 1 for large m; compare the complements there.
      if (gw_bound_survival(mu, 2, m) > 1e-10) EXPECT_LT(phi, gw_bound(mu, 2, m));
      EXPECT_GT(gw_survival(mu, 2, m), gw_bound_survival(mu, 2, m)) << mu << " " << m;
      EXPECT_NEAR(gw_survival(mu, 2, m), 1 - phi, 1e-15);
    }
  }
  EXPECT_THROW(gw_bound(0.25, 2, 3), InvalidArgument);
  EXPECT_THROW(gw_bound(0.0, 2, 3), InvalidArgument);
}

TEST(Enumerate, Sizes) {
  EXPECT_EQ(enumerate_all(2, 1).total, 4u);
  EXPECT_THROW(enumerate_all(5, 3), InvalidArgument);
  std::vector<std::vector<Vertex>> order;
  enumerate_all(2, 1, [&](const KOutDigraph& g, const BruteStats&) {
    order.emplace_back(g.endpoints().begin(), g.endpoints().end());
  });
  EXPECT_EQ(order, (std::vector<std::vector<Vertex>>{{0, 0}, {0, 1}, {1, 0}, {1, 1}}));
}

TEST(Enumerate, TalliesMatchClosedForms) {
  for (auto [n, k] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {2, 3}, {4, 2}}) {
    const auto t = enumerate_all(n, k);
    const BigInt total = boost::multiprecision::pow(BigInt(n), unsigned(n * k));
    EXPECT_EQ(t.total, total);
    // simple digraphs: (n-1)(n-2)...(n-k) choices per vertex
    BigInt per = 1;
    for (std::size_t i = 1; i <= k; ++i) per *= (n >= i ? n - i : 0);
    EXPECT_EQ(t.simple_count, boost::multiprecision::pow(per, unsigned(n)));
    for (std::size_t s = 1; s <= n; ++s) {
      const BigRational expect = expected_k_surjections(n, s, k) * BigRational(total);
      EXPECT_EQ(BigRational(t.k_surjections_by_size[s]), expect) << n << "," << k << " s=" << s;
    }
    std::uint64_t mass = 0;
    for (auto c : t.core_size_hist) mass += c;
    EXPECT_EQ(mass, t.total);
    EXPECT_EQ(t.giant_outside_core, 0u);
  }
  const auto t3 = enumerate_all(3, 2);
  EXPECT_EQ(t3.simple_count, 8u);
  EXPECT_EQ(t3.core_size_hist[3], 540u);
}

TEST(BruteForce, HandExample) {
  const auto b = brute_force(KOutDigraph::from_rows({{1, 1}, {2, 2}, {2, 2}}));
  EXPECT_EQ(b.loops, 2u);
  EXPECT_EQ(b.multis, 3u);
  EXPECT_EQ(b.giant, 0b100u);
  EXPECT_EQ(b.core, 0b100u);
  EXPECT_EQ(b.W, 2u);
  EXPECT_EQ(b.M, 1u);
  EXPECT_EQ(b.scc_count, 3u);
  EXPECT_THROW(brute_force(kout::generate(17, 1, RngSpec{1, 0})), InvalidArgument);
}
