#pragma once

// Model constants of the uniform random k-out digraph.
//
// Everything derives from tau_k, the unique positive root of
//     eta(x) = 1 - x/k - exp(-x),
// which lies in (k - 1/2, k). The gap k - tau_k underflows relative to k once
// k is moderately large, so it is always formed as k * exp(-tau_k), which is
// the same quantity by the defining equation.

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "kout/error.hpp"

namespace kout {

struct ModelConstants {
  int k = 0;
  double tau = 0;               // root of 1 - tau/k = exp(-tau)
  double gap = 0;               // k - tau, solved for directly
  double nu = 0;                // tau / k, limiting |giant| / n
  double mu = 0;                // 1 - nu = exp(-tau)
  double sigma2 = 0;            // CLT variance per vertex
  double lambda = 0;            // (k - tau) (tau / (k-1))^(k-1)
  double lambda_prime = 0;      // (k - tau) exp(1 - k + tau)
  double gamma = 0;             // (k / (e tau))^k (exp(tau) - 1)
  double log_gamma = 0;         // log gamma, accurate where gamma rounds to 1
  double rho = 0;               // k exp(1 - tau) (tau / k)^(k-1)
  double cycle_mean_total = 0;  // log(1 / (1 - k mu))
  double spectrum_coeff = 0;    // 1 / log(1 / lambda)
  double path_coeff = 0;        // 1 / log(exp(tau) / k)

  /// Mean of the number of length-`len` cycles outside the giant.
  double cycle_mean(int len) const { return std::pow(k * mu, len) / len; }
};

inline double tau_residual(int k, double tau) { return 1.0 - tau / k - std::exp(-tau); }

/// The gap eps = k - tau solves eps = k exp(eps - k), which is the defining
/// equation multiplied by k. Working with eps keeps full relative precision
/// for large k, where tau agrees with k to more digits than a double holds.
/// Bisection on (0, 1/2), then Newton polishing until the residual of the
/// defining equation drops below `tol`.
inline double solve_gap(int k, double tol = 1e-12) {
  if (k < 2) throw InvalidArgument("solve_tau: k must be >= 2, got " + std::to_string(k));
  if (!std::isfinite(tol) || tol <= 0 || tol > 1e-6)
    throw InvalidArgument("solve_tau: tol must be finite and in (0, 1e-6]");
  const double kd = k;
  auto psi = [&](double e) { return e - kd * std::exp(e - kd); };  // increasing on (0, 1/2)
  double lo = 0.0, hi = 0.5;
  for (int it = 0; it < 60 && hi - lo > 1e-9; ++it) {
    const double mid = 0.5 * (lo + hi);
    (psi(mid) < 0 ? lo : hi) = mid;
  }
  double e = 0.5 * (lo + hi);
  // psi' >= 1/2 on the bracket, so Newton converges quadratically; iterate
  // to a relative fixed point, which also drives the residual below tol.
  for (int it = 0; it < 100; ++it) {
    const double next = e - psi(e) / (1.0 - kd * std::exp(e - kd));
    if (!(next > lo && next < hi)) break;
    const bool settled = std::abs(next - e) <= 4 * std::numeric_limits<double>::epsilon() * next;
    e = next;
    if (settled) break;
  }
  if (!(std::abs(psi(e)) / kd < tol)) throw InvariantViolation("solve_tau: residual above tolerance");
  return e;
}

inline double solve_tau(int k, double tol = 1e-12) { return k - solve_gap(k, tol); }

inline ModelConstants derive_constants(int k, double tol = 1e-12) {
  ModelConstants c;
  c.k = k;
  const double kd = k;
  c.gap = solve_gap(k, tol);
  c.tau = kd - c.gap;
  c.mu = c.gap / kd;
  c.nu = c.tau / kd;
  c.sigma2 = c.tau / (kd * std::exp(c.tau) * (1.0 - c.gap));
  c.lambda = c.gap * std::pow(c.tau / (kd - 1.0), kd - 1.0);
  c.lambda_prime = c.gap * std::exp(1.0 - c.gap);
  // log gamma = -(k-1) log(1 - mu) - k mu, free of the cancellation in the
  // direct form, which rounds to 1 once e^{-k} drops below machine epsilon.
  c.log_gamma = -(kd - 1.0) * std::log1p(-c.mu) - c.gap;
  c.gamma = std::exp(c.log_gamma);
  c.rho = kd * std::exp(1.0 - c.tau) * std::pow(c.nu, kd - 1.0);
  c.cycle_mean_total = -std::log1p(-c.gap);
  c.spectrum_coeff = 1.0 / -std::log(c.lambda);
  c.path_coeff = 1.0 / (c.tau - std::log(kd));
  return c;
}

/// Alternative variance formula written in terms of nu only.
inline double sigma2_from_nu(const ModelConstants& c) {
  return c.nu * c.mu / (1.0 - c.gap);
}

/// Returns a description of every violated inequality among the proven
/// bounds on the constants; empty when all hold.
inline std::vector<std::string> constant_violations(const ModelConstants& c) {
  std::vector<std::string> bad;
  auto need = [&](bool ok, const char* what) {
    if (!ok) bad.emplace_back(what);
  };
  need(c.gap > 0 && c.gap < 0.5, "0 < k - tau < 1/2");
  // nu = 1 - mu; the bounds are checked on mu, which is exact where nu rounds to 1
  need(0 < c.mu && c.mu < 0.5 / c.k, "1 - 1/(2k) < nu < 1");
  need(c.lambda < c.lambda_prime && c.lambda_prime < 1, "lambda < lambda' < 1");
  need(c.log_gamma < 0, "gamma < 1");
  need(c.rho < 1, "rho < 1");
  need(c.gap < 0.5, "k mu < 1/2");
  need(c.cycle_mean_total > 0 && std::isfinite(c.cycle_mean_total), "cycle mean finite and positive");
  return bad;
}

// ---------------------------------------------------------------------------
// Functions describing the expected number of k-surjections of size x n:
//     E[K_{xn}] ~ g(x) f(x)^n / sqrt(2 pi (1 - k e^{-tau}) n).

namespace detail {
inline void require_open_unit(double x, const char* fn) {
  if (!(x > 0.0 && x < 1.0))
    throw InvalidArgument(std::string(fn) + ": x must lie in (0, 1), got " + std::to_string(x));
}
}  // namespace detail

/// log f(x) = x (k-1) log x + x log gamma_k - (1-x) log(1-x).
inline double h_func(double x, const ModelConstants& c) {
  detail::require_open_unit(x, "h_func");
  return x * (c.k - 1) * std::log(x) + x * c.log_gamma - (1.0 - x) * std::log1p(-x);
}

inline double h_func(double x, int k) { return h_func(x, derive_constants(k)); }

inline double f_func(double x, const ModelConstants& c) { return std::exp(h_func(x, c)); }
inline double f_func(double x, int k) { return f_func(x, derive_constants(k)); }

inline double g_func(double x) {
  detail::require_open_unit(x, "g_func");
  return 1.0 / std::sqrt(x * (1.0 - x));
}

}  // namespace kout
