#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numbers>
#include <span>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "kout/error.hpp"

namespace kout::stats {

inline double mean(std::span<const double> xs) {
  if (xs.empty()) return 0;
  double s = 0;
  for (double x : xs) s += x;
  return s / xs.size();
}

/// Unbiased sample variance.
inline double variance(std::span<const double> xs) {
  if (xs.size() < 2) return 0;
  const double m = mean(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / (xs.size() - 1);
}

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

/// Exact sup-distance between the empirical CDF of `xs` and Phi.
inline double ks_normal(std::vector<double> xs) {
  if (xs.empty()) throw InvalidArgument("ks_normal: empty sample");
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = normal_cdf(xs[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

/// Empirical p-quantile with the nearest-rank rule.
inline double percentile(std::vector<double> xs, double p) {
  if (xs.empty()) throw InvalidArgument("percentile: empty sample");
  std::sort(xs.begin(), xs.end());
  const auto rank = static_cast<std::size_t>(std::ceil(p * xs.size()));
  return xs[std::clamp<std::size_t>(rank, 1, xs.size()) - 1];
}

inline double median(std::vector<double> xs) {
  if (xs.empty()) throw InvalidArgument("median: empty sample");
  std::sort(xs.begin(), xs.end());
  const std::size_t h = xs.size() / 2;
  return xs.size() % 2 ? xs[h] : 0.5 * (xs[h - 1] + xs[h]);
}

inline double poisson_pmf(double lambda, std::size_t x) {
  return std::exp(x * std::log(lambda) - lambda - std::lgamma(x + 1.0));
}

/// Total variation between the empirical law of `counts` and Poi(lambda).
/// The pmf is evaluated on [0, max observed + 10] and the remaining tail mass
/// is added to the last bucket.
inline double tv_poisson(std::span<const std::size_t> counts, double lambda) {
  if (counts.empty()) throw InvalidArgument("tv_poisson: empty sample");
  const std::size_t top = *std::max_element(counts.begin(), counts.end()) + 10;
  std::vector<double> emp(top + 1, 0);
  for (auto c : counts) emp[c] += 1.0 / counts.size();
  double pmf_sum = 0;
  double tv = 0;
  for (std::size_t x = 0; x <= top; ++x) {
    double p = poisson_pmf(lambda, x);
    pmf_sum += p;
    if (x == top) p += std::max(0.0, 1.0 - pmf_sum);
    tv += std::abs(emp[x] - p);
  }
  return 0.5 * tv;
}

/// Total variation between the empirical joint law of pairs and
/// Poi(l1) x Poi(l2), with the mass outside the evaluated grid counted once.
inline double tv_poisson2(std::span<const std::size_t> a, std::span<const std::size_t> b, double l1, double l2) {
  if (a.empty() || a.size() != b.size()) throw InvalidArgument("tv_poisson2: need equal, non-empty samples");
  const std::size_t ta = *std::max_element(a.begin(), a.end()) + 10;
  const std::size_t tb = *std::max_element(b.begin(), b.end()) + 10;
  std::map<std::pair<std::size_t, std::size_t>, double> emp;
  for (std::size_t i = 0; i < a.size(); ++i) emp[{a[i], b[i]}] += 1.0 / a.size();
  double grid = 0;
  double tv = 0;
  for (std::size_t x = 0; x <= ta; ++x)
    for (std::size_t y = 0; y <= tb; ++y) {
      const double p = poisson_pmf(l1, x) * poisson_pmf(l2, y);
      grid += p;
      auto it = emp.find({x, y});
      tv += std::abs((it == emp.end() ? 0.0 : it->second) - p);
    }
  tv += std::max(0.0, 1.0 - grid);
  return 0.5 * tv;
}

/// Pearson statistic of observed counts against equal expected counts.
inline double chi_square_uniform(std::span<const std::uint64_t> observed) {
  if (observed.empty()) throw InvalidArgument("chi_square_uniform: no cells");
  double total = 0;
  for (auto o : observed) total += static_cast<double>(o);
  const double expect = total / observed.size();
  double chi = 0;
  for (auto o : observed) chi += (o - expect) * (o - expect) / expect;
  return chi;
}

/// Upper-tail critical value of the chi-square distribution.
inline double chi_square_critical(double dof, double alpha) {
  return boost::math::quantile(boost::math::complement(boost::math::chi_squared(dof), alpha));
}

}  // namespace kout::stats
