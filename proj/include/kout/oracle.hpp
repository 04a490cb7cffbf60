#pragma once

// Ground truth that shares no code path with the decomposition and outside
// modules: exact combinatorics in arbitrary precision, exhaustive
// enumeration of tiny digraph spaces, and bitmask brute force for every
// per-digraph statistic.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kout/digraph.hpp"
#include "kout/error.hpp"

namespace kout::oracle {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Stirling numbers and surjections

inline constexpr std::size_t kMaxStirlingArg = 600;

/// S{x, y} via S{x,y} = y S{x-1,y} + S{x-1,y-1}, exact.
inline BigInt stirling2(std::size_t x, std::size_t y) {
  if (y > x) throw InvalidArgument("stirling2: need y <= x");
  if (x > kMaxStirlingArg) throw InvalidArgument("stirling2: exact values only up to x = 600");
  std::vector<BigInt> row(y + 1, 0);
  row[0] = 1;
  for (std::size_t i = 1; i <= x; ++i) {
    for (std::size_t j = std::min(i, y); j >= 1; --j) row[j] = row[j] * j + row[j - 1];
    row[0] = 0;
  }
  return row[y];
}

inline BigInt factorial(std::size_t x) {
  BigInt f = 1;
  for (std::size_t i = 2; i <= x; ++i) f *= i;
  return f;
}

inline BigInt binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  BigInt b = 1;
  for (std::size_t i = 1; i <= r; ++i) b = b * (n - r + i) / i;
  return b;
}

/// m! S{km, m}: the number of surjections [km] -> [m].
inline BigInt surjection_count(std::size_t m, std::size_t k) {
  if (m < 1 || k < 1) throw InvalidArgument("surjection_count: need m, k >= 1");
  return factorial(m) * stirling2(k * m, m);
}

/// Expected number of k-surjections of size s in D(n, k):
///     C(n, s) S{ks, s} s! / n^{ks}.
inline BigRational expected_k_surjections(std::size_t n, std::size_t s, std::size_t k) {
  if (s < 1 || s > n) throw InvalidArgument("expected_k_surjections: need 1 <= s <= n");
  const BigInt num = binomial(n, s) * stirling2(k * s, s) * factorial(s);
  const BigInt den = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k * s));
  return BigRational(num, den);
}

/// Log of Good's asymptotic for S{ks, s}:
///     (ks)!/s! (e^tau - 1)^s / (tau^{ks} sqrt(2 pi k s (1 - k e^{-tau}))).
inline double good_log_stirling(std::size_t s, int k, double tau) {
  if (s < 1 || k < 2) throw InvalidArgument("good_log_stirling: need s >= 1, k >= 2");
  const double sd = static_cast<double>(s);
  const double ks = k * sd;
  return std::lgamma(ks + 1) - std::lgamma(sd + 1) + sd * std::log(std::expm1(tau)) - ks * std::log(tau) -
         0.5 * std::log(2 * std::numbers::pi * ks * (1.0 - k * std::exp(-tau)));
}

/// log of a positive big integer, exact to double precision.
inline double log_big(const BigInt& x) {
  if (x <= 0) throw InvalidArgument("log_big: argument must be positive");
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 1000) return std::log(x.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits - 900);
  const BigInt top = x >> shift;
  return std::log(top.convert_to<double>()) + shift * std::numbers::ln2;
}

// ---------------------------------------------------------------------------
// Galton-Watson process with Bin(k, mu) offspring

/// P(Z_m = 0) by m-fold composition of phi(y) = (1 - mu (1 - y))^k.
inline double gw_extinction(double mu, int k, int m) {
  if (!(mu > 0 && mu < 1)) throw InvalidArgument("gw_extinction: mu must lie in (0, 1)");
  if (k < 1 || m < 1) throw InvalidArgument("gw_extinction: need k >= 1 and m >= 1");
  double y = 0;
  for (int i = 0; i < m; ++i) y = std::pow(1.0 - mu * (1.0 - y), k);
  return y;
}

/// 1 - (k mu)^m + (1 - 2^{-m}) (k mu)^{m+1}, valid for mu in (0, 1/(2k)).
inline double gw_bound(double mu, int k, int m) {
  if (k < 2 || m < 1) throw InvalidArgument("gw_bound: need k >= 2 and m >= 1");
  if (!(mu > 0 && mu < 1.0 / (2.0 * k))) throw InvalidArgument("gw_bound: mu must lie in (0, 1/(2k))");
  const double km = k * mu;
  return 1.0 - std::pow(km, m) + (1.0 - std::ldexp(1.0, -m)) * std::pow(km, m + 1);
}

/// 1 - P(Z_m = 0), iterated directly so it keeps full relative precision
/// when the extinction probability rounds to 1.
inline double gw_survival(double mu, int k, int m) {
  if (!(mu > 0 && mu < 1)) throw InvalidArgument("gw_survival: mu must lie in (0, 1)");
  if (k < 1 || m < 1) throw InvalidArgument("gw_survival: need k >= 1 and m >= 1");
  double q = 1;
  for (int i = 0; i < m; ++i) q = -std::expm1(k * std::log1p(-mu * q));
  return q;
}

/// 1 - gw_bound(mu, k, m) = (k mu)^m (1 - (1 - 2^{-m}) k mu).
inline double gw_bound_survival(double mu, int k, int m) {
  gw_bound(mu, k, m);  // argument checks
  const double km = k * mu;
  return std::pow(km, m) * (1.0 - (1.0 - std::ldexp(1.0, -m)) * km);
}

// ---------------------------------------------------------------------------
// Brute force on tiny digraphs (n <= 16)

inline constexpr std::size_t kMaxBruteVertices = 16;

using Mask = std::uint32_t;

struct BruteStats {
  std::size_t loops = 0;
  std::size_t multis = 0;
  bool simple = false;
  bool strongly_connected = false;
  std::size_t scc_count = 0;
  std::size_t closed_scc_count = 0;
  Mask giant = 0;
  Mask core = 0;
  std::vector<std::size_t> k_surjections_by_size;  // index s in [0, n]
  bool all_reach_giant = false;

  std::map<std::size_t, std::size_t> cycles_by_length;  // labeled-arc cycles in V_out
  std::size_t total_cycles = 0;
  bool vertex_disjoint = true;
  std::vector<std::size_t> spec_out_size;
  std::vector<std::size_t> spec_out_arcs;
  std::size_t max_spec_out = 0;
  std::size_t W = 0;
  std::size_t D = 0;
  std::size_t M = 0;
  std::size_t max_full_spectrum = 0;
  std::size_t spectrum_of_zero = 0;
};

namespace detail {

inline bool has(Mask m, std::size_t v) { return (m >> v) & 1u; }

// Transitive-reflexive closure of the arcs that stay inside `within`.
inline std::vector<Mask> closure(const KOutDigraph& g, Mask within) {
  const std::size_t n = g.n();
  std::vector<Mask> r(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!has(within, v)) continue;
    r[v] = Mask(1) << v;
    for (Vertex w : g.out(static_cast<Vertex>(v)))
      if (has(within, w)) r[v] |= Mask(1) << w;
  }
  for (std::size_t mid = 0; mid < n; ++mid)
    for (std::size_t v = 0; v < n; ++v)
      if (has(r[v], mid)) r[v] |= r[mid];
  return r;
}

// All-pairs arc distances inside `within`; unreachable = max.
inline std::vector<std::vector<std::size_t>> all_pairs(const KOutDigraph& g, Mask within) {
  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.n();
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t v = 0; v < n; ++v) {
    if (!has(within, v)) continue;
    d[v][v] = 0;
    for (Vertex w : g.out(static_cast<Vertex>(v)))
      if (has(within, w) && w != v) d[v][w] = 1;
  }
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (d[a][m] != inf && d[m][b] != inf) d[a][b] = std::min(d[a][b], d[a][m] + d[m][b]);
  return d;
}

}  // namespace detail

inline BruteStats brute_force(const KOutDigraph& g) {
  using detail::has;
  const std::size_t n = g.n();
  const std::size_t k = g.k();
  if (n > kMaxBruteVertices) throw InvalidArgument("brute_force: at most 16 vertices");
  const Mask all = (Mask(1) << n) - 1;
  BruteStats b;

  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t i = 0; i < k; ++i) {
      b.loops += g.head(static_cast<Vertex>(v), i) == v;
      for (std::size_t j = i + 1; j < k; ++j)
        b.multis += g.head(static_cast<Vertex>(v), i) == g.head(static_cast<Vertex>(v), j);
    }
  b.simple = b.loops == 0 && b.multis == 0;

  // Components from mutual reachability; closed iff nothing escapes.
  const auto reach = detail::closure(g, all);
  std::vector<Mask> comp(n, 0);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < n; ++u)
      if (has(reach[v], u) && has(reach[u], v)) comp[v] |= Mask(1) << u;
  Mask seen = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (has(seen, v)) continue;
    seen |= comp[v];
    ++b.scc_count;
    if (reach[v] != comp[v]) continue;
    ++b.closed_scc_count;
    // Scanning v upward means the first closed SCC of a given size holds the
    // smallest label.
    if (std::popcount(comp[v]) > std::popcount(b.giant)) b.giant = comp[v];
  }
  b.strongly_connected = b.scc_count == 1;

  // One-in-core: union of all vertex sets whose induced in-degrees are >= 1.
  // k-surjections: such sets that are also closed.
  b.k_surjections_by_size.assign(n + 1, 0);
  for (Mask s = 1; s <= all && s != 0; ++s) {
    Mask hit = 0;
    bool closed = true;
    for (std::size_t v = 0; v < n; ++v) {
      if (!has(s, v)) continue;
      for (Vertex w : g.out(static_cast<Vertex>(v))) {
        if (has(s, w))
          hit |= Mask(1) << w;
        else
          closed = false;
      }
    }
    if (hit != s) continue;
    b.core |= s;
    if (closed) ++b.k_surjections_by_size[std::popcount(s)];
    if (s == all) break;
  }

  const Mask out = all & ~b.giant;

  // Labeled-arc cycles in V_out, each rooted at its smallest vertex.
  std::vector<Mask> cycle_sets;
  std::function<void(std::size_t, std::size_t, Mask, std::size_t)> extend = [&](std::size_t root, std::size_t v,
                                                                              Mask used, std::size_t len) {
    for (std::size_t i = 0; i < k; ++i) {
      const Vertex w = g.head(static_cast<Vertex>(v), i);
      if (!has(out, w) || w < root) continue;
      if (w == root) {
        ++b.cycles_by_length[len + 1];
        cycle_sets.push_back(used);
      } else if (!has(used, w)) {
        extend(root, w, used | (Mask(1) << w), len + 1);
      }
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (has(out, v)) extend(v, v, Mask(1) << v, 0);
  b.total_cycles = cycle_sets.size();
  for (std::size_t i = 0; i < cycle_sets.size(); ++i)
    for (std::size_t j = i + 1; j < cycle_sets.size(); ++j)
      if (cycle_sets[i] & cycle_sets[j]) b.vertex_disjoint = false;

  // Spectra inside V_out.
  const auto reach_out = detail::closure(g, out);
  b.spec_out_size.assign(n, 0);
  b.spec_out_arcs.assign(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (!has(out, v)) continue;
    const Mask spec = reach_out[v];
    b.spec_out_size[v] = static_cast<std::size_t>(std::popcount(spec));
    for (std::size_t u = 0; u < n; ++u)
      if (has(spec, u))
        for (Vertex w : g.out(static_cast<Vertex>(u))) b.spec_out_arcs[v] += has(spec, w);
    b.max_spec_out = std::max(b.max_spec_out, b.spec_out_size[v]);
  }

  constexpr auto inf = std::numeric_limits<std::size_t>::max();
  const auto d_out = detail::all_pairs(g, out);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t u = 0; u < n; ++u)
      if (has(out, v) && d_out[v][u] != inf) b.D = std::max(b.D, d_out[v][u]);

  const auto d_all = detail::all_pairs(g, all);
  b.all_reach_giant = true;
  for (std::size_t v = 0; v < n; ++v) {
    std::size_t best = inf;
    for (std::size_t u = 0; u < n; ++u)
      if (has(b.giant, u)) best = std::min(best, d_all[v][u]);
    if (best == inf)
      b.all_reach_giant = false;
    else if (has(out, v))
      b.W = std::max(b.W, best);
  }

  std::function<void(std::size_t, Mask, std::size_t)> walk = [&](std::size_t v, Mask used, std::size_t len) {
    b.M = std::max(b.M, len);
    for (Vertex w : g.out(static_cast<Vertex>(v)))
      if (has(out, w) && !has(used, w)) walk(w, used | (Mask(1) << w), len + 1);
  };
  for (std::size_t v = 0; v < n; ++v)
    if (has(out, v)) walk(v, Mask(1) << v, 0);

  for (std::size_t v = 0; v < n; ++v)
    b.max_full_spectrum = std::max<std::size_t>(b.max_full_spectrum, std::popcount(reach[v]));
  b.spectrum_of_zero = static_cast<std::size_t>(std::popcount(reach[0]));
  return b;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration

inline constexpr std::uint64_t kMaxEnumeration = 10'000'000;

struct EnumerationTally {
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t total = 0;
  std::uint64_t simple_count = 0;
  std::vector<std::uint64_t> core_size_hist;      // |Q|
  std::vector<std::uint64_t> giant_size_hist;     // |G|
  std::vector<std::uint64_t> k_surjections_by_size;  // summed over digraphs
  std::map<std::size_t, std::uint64_t> cycle_count_hist;  // cycles in V_out
  std::uint64_t giant_outside_core = 0;  // digraphs with G not a subset of Q
};

using EnumerationVisitor = std::function<void(const KOutDigraph&, const BruteStats&)>;

/// Visits every n-vertex k-out endpoint table once, in lexicographic order of
/// the row-major table, and tallies brute-force statistics.
inline EnumerationTally enumerate_all(std::size_t n, std::size_t k, const EnumerationVisitor& visit = {}) {
  if (n < 1) throw InvalidArgument("enumerate_all: n must be >= 1");
  long double space = std::pow(static_cast<long double>(n), static_cast<long double>(n * k));
  if (space > kMaxEnumeration)
    throw InvalidArgument("enumerate_all: n^(kn) exceeds the 10^7 enumeration guard");
  EnumerationTally t;
  t.n = n;
  t.k = k;
  t.core_size_hist.assign(n + 1, 0);
  t.giant_size_hist.assign(n + 1, 0);
  t.k_surjections_by_size.assign(n + 1, 0);
  std::vector<Vertex> ends(n * k, 0);
  while (true) {
    KOutDigraph g(n, k, ends);
    const auto b = brute_force(g);
    ++t.total;
    t.simple_count += b.simple;
    ++t.core_size_hist[std::popcount(b.core)];
    ++t.giant_size_hist[std::popcount(b.giant)];
    for (std::size_t s = 0; s <= n; ++s) t.k_surjections_by_size[s] += b.k_surjections_by_size[s];
    ++t.cycle_count_hist[b.total_cycles];
    t.giant_outside_core += (b.giant & ~b.core) != 0;
    if (visit) visit(g, b);
    std::size_t i = ends.size();
    while (i > 0 && ++ends[i - 1] == n) ends[--i] = 0;
    if (i == 0) break;
  }
  return t;
}

}  // namespace kout::oracle
