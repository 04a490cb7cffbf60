#pragma once

// Monte Carlo driver: one replicate = one D(n, k) drawn from stream
// (seed, replicate index), decomposed and measured. Replicates run on a
// worker pool and are collected by index, so the output does not depend on
// the number of threads.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "kout/constants.hpp"
#include "kout/decompose.hpp"
#include "kout/digraph.hpp"
#include "kout/error.hpp"
#include "kout/io.hpp"
#include "kout/outside.hpp"
#include "kout/stats.hpp"

namespace kout {

/// Which statistics a replicate computes. `core` is always included.
enum class Collect { all, core, cycles, distances };

inline Collect parse_collect(const std::string& s) {
  if (s == "all") return Collect::all;
  if (s == "core") return Collect::core;
  if (s == "cycles") return Collect::cycles;
  if (s == "distances") return Collect::distances;
  throw InvalidArgument("unknown --collect value '" + s + "' (all|core|cycles|distances)");
}

inline const char* to_string(Collect c) {
  switch (c) {
    case Collect::all: return "all";
    case Collect::core: return "core";
    case Collect::cycles: return "cycles";
    case Collect::distances: return "distances";
  }
  return "?";
}

struct ExperimentConfig {
  std::size_t n = 1000;
  std::size_t k = 2;
  std::size_t reps = 100;
  std::uint64_t seed = 1;
  Collect collect = Collect::all;
  std::size_t threads = 0;  // 0: KOUT_THREADS, else hardware concurrency
  std::size_t cycle_cap = kDefaultCycleCap;
  std::size_t scc_cap = kDefaultSccCap;
  bool deep_checks = false;  // verify decomposition invariants on every replicate

  void validate() const {
    if (n < 1) throw InvalidArgument("ExperimentConfig: n must be >= 1");
    if (k < 1) throw InvalidArgument("ExperimentConfig: k must be >= 1");
    if (reps < 1) throw InvalidArgument("ExperimentConfig: reps must be >= 1");
  }
};

/// Fields not collected under the chosen Collect mode hold -1.
struct ReplicateRecord {
  std::int64_t replicate = 0;
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t q_size = -1;
  std::int64_t g_size = -1;
  std::int64_t mid_size = -1;
  std::int64_t all_reach = -1;
  std::int64_t cycles_total = -1;
  std::int64_t cycles_len1 = -1;
  std::int64_t cycles_len2 = -1;
  std::int64_t cycles_len3plus = -1;
  std::int64_t disjoint = -1;
  std::int64_t longest_cycle = -1;
  std::int64_t max_spec_out = -1;
  std::int64_t w = -1;
  std::int64_t d = -1;
  std::int64_t m = -1;
  std::int64_t max_full_spec = -1;
  std::int64_t spec0 = -1;
  std::int64_t loops = -1;
  std::int64_t multis = -1;
  std::int64_t simple = -1;
  std::int64_t ms_elapsed = 0;
  // Not part of the CSV layout; carried in JSON output.
  std::int64_t excess_violations = -1;
  std::int64_t scc_count = -1;
};

inline constexpr const char* kCsvColumns[] = {
    "replicate",     "n",      "k",     "q_size",       "g_size",      "mid_size",     "all_reach",
    "cycles_total",  "cycles_len1",     "cycles_len2",  "cycles_len3plus", "disjoint", "longest_cycle",
    "max_spec_out",  "w",      "d",     "m",            "max_full_spec", "spec0",      "loops",
    "multis",        "simple", "ms_elapsed"};

namespace detail {

template <class F>
void for_each_csv_field(ReplicateRecord& r, F&& f) {
  std::int64_t* fields[] = {&r.replicate,    &r.n,           &r.k,           &r.q_size,      &r.g_size,
                            &r.mid_size,     &r.all_reach,   &r.cycles_total, &r.cycles_len1, &r.cycles_len2,
                            &r.cycles_len3plus, &r.disjoint, &r.longest_cycle, &r.max_spec_out, &r.w,
                            &r.d,            &r.m,           &r.max_full_spec, &r.spec0,      &r.loops,
                            &r.multis,       &r.simple,      &r.ms_elapsed};
  for (std::size_t i = 0; i < std::size(fields); ++i) f(kCsvColumns[i], *fields[i]);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvariantViolation(what);
}

}  // namespace detail

/// Cross-field consistency of one record.
inline void check_record(const ReplicateRecord& r) {
  using detail::require;
  require(0 <= r.g_size && r.g_size <= r.q_size && r.q_size <= r.n, "|G| <= |Q| <= n");
  require(r.mid_size == r.q_size - r.g_size, "mid = |Q| - |G|");
  if (r.scc_count == 1) require(r.g_size == r.n, "strongly connected implies |G| = n");
  if (r.cycles_total >= 0) {
    require(r.cycles_len1 + r.cycles_len2 + r.cycles_len3plus == r.cycles_total, "cycle histogram sums to total");
    require((r.cycles_total == 0) == (r.longest_cycle == 0), "longest cycle is 0 iff there are none");
  }
  if (r.d >= 0 && r.m >= 0) require(r.m >= r.d, "M >= D");
  if (r.max_full_spec >= 0) require(r.max_full_spec >= r.g_size, "max |Spec(v)| >= |G|");
  if (r.loops >= 0) require(r.simple == (r.loops == 0 && r.multis == 0), "simple iff no loops and no multi-arcs");
}

/// Structural invariants of a decomposition and its outside report.
inline void check_decomposition(const KOutDigraph& g, const Decomposition& d, const OutsideReport* out) {
  using detail::require;
  for (Vertex v : d.giant) require(d.in_core[v], "giant is inside the one-in-core");
  require(d.closed[d.giant_scc], "giant is a closed SCC");
  std::vector<std::size_t> indeg(g.n(), 0);
  for (Vertex v : d.one_in_core)
    for (Vertex w : g.out(v)) {
      require(d.in_core[w], "no arc leaves the one-in-core");
      ++indeg[w];
    }
  for (Vertex v : d.one_in_core) require(indeg[v] >= 1, "one-in-core has minimum in-degree one");
  for (std::uint32_t c = 0; c < d.condensation.size(); ++c)
    for (auto t : d.condensation[c]) require(t < c, "condensation arcs point to smaller ids");
  if (d.scc_count() == 1) require(d.all_reach_giant, "a single SCC is reached by every vertex");
  if (std::count(d.closed.begin(), d.closed.end(), 1) == 1)
    require(d.all_reach_giant, "a unique closed SCC is reached by every vertex");
  if (out)
    for (const auto& c : out->cycles)
      for (Vertex v : c.vertices) require(d.in_core[v] && !d.in_giant[v], "cycles outside G lie in Q");
}

inline ReplicateRecord run_replicate(const ExperimentConfig& cfg, std::size_t index) {
  const auto t0 = std::chrono::steady_clock::now();
  ReplicateRecord r;
  r.replicate = static_cast<std::int64_t>(index);
  r.n = static_cast<std::int64_t>(cfg.n);
  r.k = static_cast<std::int64_t>(cfg.k);
  const std::string tag = "replicate " + std::to_string(index) + ": ";
  try {
    const auto g = kout::generate(cfg.n, cfg.k, RngSpec{cfg.seed, index});
    const auto d = decompose(g);
    r.scc_count = static_cast<std::int64_t>(d.scc_count());
    r.g_size = static_cast<std::int64_t>(d.giant.size());
    r.q_size = static_cast<std::int64_t>(d.one_in_core.size());
    r.mid_size = r.q_size - r.g_size;
    r.all_reach = d.all_reach_giant;
    r.loops = static_cast<std::int64_t>(count_self_loops(g));
    r.multis = static_cast<std::int64_t>(count_multi_pairs(g));
    r.simple = r.loops == 0 && r.multis == 0;

    OutsideOptions opt;
    opt.cycles = cfg.collect == Collect::all || cfg.collect == Collect::cycles;
    opt.spectra = opt.paths = cfg.collect == Collect::all || cfg.collect == Collect::distances;
    opt.cycle_cap = cfg.cycle_cap;
    opt.scc_cap = cfg.scc_cap;
    if (opt.cycles || opt.spectra) {
      const auto out = analyze_outside(g, d, opt);
      if (opt.cycles) {
        r.cycles_total = static_cast<std::int64_t>(out.total_cycles);
        r.cycles_len1 = r.cycles_len2 = r.cycles_len3plus = 0;
        for (auto [len, count] : out.cycles_by_length)
          (len == 1 ? r.cycles_len1 : len == 2 ? r.cycles_len2 : r.cycles_len3plus) += count;
        r.disjoint = out.vertex_disjoint;
        r.longest_cycle = static_cast<std::int64_t>(out.longest_cycle);
      }
      if (opt.spectra) {
        r.max_spec_out = static_cast<std::int64_t>(out.max_spectrum);
        r.excess_violations = static_cast<std::int64_t>(out.arc_excess_violations);
        r.w = static_cast<std::int64_t>(out.W);
        r.d = static_cast<std::int64_t>(out.D);
        r.m = static_cast<std::int64_t>(out.M);
        r.max_full_spec = static_cast<std::int64_t>(out.max_full_spectrum);
        r.spec0 = static_cast<std::int64_t>(out.spectrum_of_zero);
      }
      if (cfg.deep_checks) check_decomposition(g, d, &out);
    } else if (cfg.deep_checks) {
      check_decomposition(g, d, nullptr);
    }
    check_record(r);
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(tag + e.what());
  } catch (const CapExceeded& e) {
    throw CapExceeded(tag + e.what(), e.cap);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(tag + e.what());
  } catch (const Error& e) {
    throw Error(tag + e.what());
  }
  r.ms_elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Worker count: explicit request, else KOUT_THREADS, else hardware
/// concurrency; never more than the number of jobs.
inline std::size_t worker_count(std::size_t requested, std::size_t jobs) {
  std::size_t t = requested;
  if (t == 0) {
    if (const char* env = std::getenv("KOUT_THREADS")) {
      try {
        t = static_cast<std::size_t>(std::stoul(env));
      } catch (const std::exception&) {
        throw InvalidArgument(std::string("KOUT_THREADS is not a number: ") + env);
      }
    }
  }
  if (t == 0) t = std::max(1u, std::thread::hardware_concurrency());
  return std::max<std::size_t>(1, std::min(t, jobs));
}

/// Runs `job(i)` for i in [0, count) on a pool and returns results by index.
/// The error of the lowest failing index is rethrown.
template <class Result, class Job>
std::vector<Result> parallel_indexed(std::size_t count, std::size_t threads, Job&& job) {
  std::vector<std::optional<Result>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;) {
      try {
        slots[i].emplace(job(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t workers = worker_count(threads, count);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

inline std::vector<ReplicateRecord> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  return parallel_indexed<ReplicateRecord>(cfg.reps, cfg.threads,
                                           [&](std::size_t i) { return run_replicate(cfg, i); });
}

// ---------------------------------------------------------------------------
// Summary

struct Moments {
  double mean = 0;
  double variance = 0;
};

struct StandardizedStat {
  double mean = 0;      // of z = (x - nu n) / (sigma sqrt n)
  double variance = 0;
  double ks = 0;        // sup |F_z - Phi|
};

struct RatioStat {
  double mean = 0;
  double median = 0;
  double theory = 0;  // limiting coefficient
};

struct SummaryReport {
  std::size_t reps = 0;
  std::size_t n = 0;
  int k = 0;
  std::map<std::string, Moments> moments;
  std::optional<StandardizedStat> core, giant, full_spectrum;
  std::optional<double> tv_cycles_total, tv_cycles_len1, tv_cycles_len2;
  double cycle_mean_total = 0;
  std::optional<RatioStat> spectrum_ratio, d_ratio, m_ratio, w_ratio;
  std::optional<double> fraction_disjoint, fraction_excess_violation;
  double fraction_all_reach = 0;
  double fraction_simple = 0;
  std::optional<double> tv_loops_multis;
};

namespace detail {

template <class Get>
std::optional<std::vector<double>> column(const std::vector<ReplicateRecord>& rs, Get get) {
  std::vector<double> xs;
  xs.reserve(rs.size());
  for (const auto& r : rs) {
    const std::int64_t x = get(r);
    if (x < 0) return std::nullopt;
    xs.push_back(static_cast<double>(x));
  }
  return xs;
}

inline StandardizedStat standardize(const std::vector<double>& xs, double n, const ModelConstants& c) {
  std::vector<double> z;
  z.reserve(xs.size());
  for (double x : xs) z.push_back((x - c.nu * n) / std::sqrt(c.sigma2 * n));
  return {stats::mean(z), stats::variance(z), stats::ks_normal(z)};
}

inline RatioStat ratio(const std::vector<double>& xs, double scale, double theory) {
  std::vector<double> r;
  for (double x : xs) r.push_back(x / scale);
  return {stats::mean(r), stats::median(r), theory};
}

inline std::vector<std::size_t> counts(const std::vector<double>& xs) {
  std::vector<std::size_t> c;
  for (double x : xs) c.push_back(static_cast<std::size_t>(x));
  return c;
}

}  // namespace detail

inline SummaryReport summarize(const std::vector<ReplicateRecord>& rs, const ModelConstants& c) {
  if (rs.size() < 2) throw InvalidArgument("summarize: need at least 2 records");
  SummaryReport s;
  s.reps = rs.size();
  s.n = static_cast<std::size_t>(rs.front().n);
  s.k = c.k;
  const double n = static_cast<double>(s.n);
  const double log_n = std::log(n);

  ReplicateRecord probe;
  detail::for_each_csv_field(probe, [&](const char* name, std::int64_t&) {
    const std::string key = name;
    if (key == "replicate" || key == "n" || key == "k") return;
    std::vector<double> xs;
    for (auto r : rs) {
      detail::for_each_csv_field(r, [&](const char* nm, std::int64_t& v) {
        if (key == nm && v >= 0) xs.push_back(static_cast<double>(v));
      });
    }
    if (xs.size() == rs.size()) s.moments[key] = {stats::mean(xs), stats::variance(xs)};
  });

  using detail::column;
  if (auto q = column(rs, [](auto& r) { return r.q_size; })) s.core = detail::standardize(*q, n, c);
  if (auto g = column(rs, [](auto& r) { return r.g_size; })) s.giant = detail::standardize(*g, n, c);
  if (auto f = column(rs, [](auto& r) { return r.max_full_spec; })) s.full_spectrum = detail::standardize(*f, n, c);

  s.cycle_mean_total = c.cycle_mean_total;
  if (auto t = column(rs, [](auto& r) { return r.cycles_total; })) {
    s.tv_cycles_total = stats::tv_poisson(detail::counts(*t), c.cycle_mean_total);
    s.tv_cycles_len1 = stats::tv_poisson(detail::counts(*column(rs, [](auto& r) { return r.cycles_len1; })),
                                         c.cycle_mean(1));
    s.tv_cycles_len2 = stats::tv_poisson(detail::counts(*column(rs, [](auto& r) { return r.cycles_len2; })),
                                         c.cycle_mean(2));
    s.fraction_disjoint = stats::mean(*column(rs, [](auto& r) { return r.disjoint; }));
  }
  if (auto sp = column(rs, [](auto& r) { return r.max_spec_out; })) {
    s.spectrum_ratio = detail::ratio(*sp, log_n, c.spectrum_coeff);
    s.d_ratio = detail::ratio(*column(rs, [](auto& r) { return r.d; }), log_n, c.path_coeff);
    s.m_ratio = detail::ratio(*column(rs, [](auto& r) { return r.m; }), log_n, c.path_coeff);
    s.w_ratio = detail::ratio(*column(rs, [](auto& r) { return r.w; }), std::log(log_n) / std::log(double(c.k)), 1.0);
    if (auto ex = column(rs, [](auto& r) { return r.excess_violations; })) {
      double hit = 0;
      for (double x : *ex) hit += x > 0;
      s.fraction_excess_violation = hit / ex->size();
    }
  }
  s.fraction_all_reach = stats::mean(*column(rs, [](auto& r) { return r.all_reach; }));
  s.fraction_simple = stats::mean(*column(rs, [](auto& r) { return r.simple; }));
  s.tv_loops_multis = stats::tv_poisson2(detail::counts(*column(rs, [](auto& r) { return r.loops; })),
                                         detail::counts(*column(rs, [](auto& r) { return r.multis; })), double(c.k),
                                         c.k * (c.k - 1) / 2.0);
  return s;
}

// ---------------------------------------------------------------------------
// Persistence

/// Header plus one line per record, columns in kCsvColumns order.
inline std::string to_csv(const std::vector<ReplicateRecord>& rs, bool with_timing = true) {
  std::ostringstream out;
  bool first = true;
  for (const char* col : kCsvColumns) {
    if (!with_timing && std::string(col) == "ms_elapsed") continue;
    out << (first ? "" : ",") << col;
    first = false;
  }
  out << '\n';
  for (auto r : rs) {
    first = true;
    detail::for_each_csv_field(r, [&](const char* col, std::int64_t& v) {
      if (!with_timing && std::string(col) == "ms_elapsed") return;
      out << (first ? "" : ",") << v;
      first = false;
    });
    out << '\n';
  }
  return out.str();
}

inline std::vector<ReplicateRecord> from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty CSV", 0);
  std::vector<std::string> header;
  {
    std::istringstream hs(line);
    for (std::string col; std::getline(hs, col, ',');) header.push_back(col);
  }
  std::size_t offset = line.size() + 1;
  std::vector<ReplicateRecord> rs;
  while (std::getline(in, line)) {
    if (line.empty()) {
      offset += 1;
      continue;
    }
    std::vector<std::int64_t> values;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoll(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError("CSV cell '" + cell + "' is not an integer", offset);
      }
    }
    if (values.size() != header.size()) throw ParseError("CSV row has the wrong number of cells", offset);
    ReplicateRecord r;
    detail::for_each_csv_field(r, [&](const char* col, std::int64_t& v) {
      for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == col) v = values[i];
    });
    rs.push_back(r);
    offset += line.size() + 1;
  }
  return rs;
}

inline nlohmann::json to_json(const ReplicateRecord& r0) {
  ReplicateRecord r = r0;
  nlohmann::json j;
  detail::for_each_csv_field(r, [&](const char* col, std::int64_t& v) { j[col] = v; });
  j["excess_violations"] = r.excess_violations;
  j["scc_count"] = r.scc_count;
  return j;
}

inline nlohmann::json to_json(const SummaryReport& s) {
  nlohmann::json j;
  j["reps"] = s.reps;
  j["n"] = s.n;
  j["k"] = s.k;
  for (const auto& [name, m] : s.moments) j["moments"][name] = {{"mean", m.mean}, {"variance", m.variance}};
  auto put_std = [&](const char* key, const std::optional<StandardizedStat>& x) {
    if (x) j["standardized"][key] = {{"mean", x->mean}, {"variance", x->variance}, {"ks", x->ks}};
  };
  put_std("q_size", s.core);
  put_std("g_size", s.giant);
  put_std("max_full_spec", s.full_spectrum);
  j["cycle_mean_total"] = s.cycle_mean_total;
  if (s.tv_cycles_total) j["tv"]["cycles_total"] = *s.tv_cycles_total;
  if (s.tv_cycles_len1) j["tv"]["cycles_len1"] = *s.tv_cycles_len1;
  if (s.tv_cycles_len2) j["tv"]["cycles_len2"] = *s.tv_cycles_len2;
  if (s.tv_loops_multis) j["tv"]["loops_multis"] = *s.tv_loops_multis;
  auto put_ratio = [&](const char* key, const std::optional<RatioStat>& x) {
    if (x) j["ratios"][key] = {{"mean", x->mean}, {"median", x->median}, {"theory", x->theory}};
  };
  put_ratio("max_spec_out_over_log_n", s.spectrum_ratio);
  put_ratio("d_over_log_n", s.d_ratio);
  put_ratio("m_over_log_n", s.m_ratio);
  put_ratio("w_over_logk_log_n", s.w_ratio);
  if (s.fraction_disjoint) j["fractions"]["disjoint"] = *s.fraction_disjoint;
  if (s.fraction_excess_violation) j["fractions"]["excess_violation"] = *s.fraction_excess_violation;
  j["fractions"]["all_reach"] = s.fraction_all_reach;
  j["fractions"]["simple"] = s.fraction_simple;
  return j;
}

inline void write_csv(const std::vector<ReplicateRecord>& rs, const std::string& path) {
  write_file(path, to_csv(rs));
}

inline void write_json(const std::vector<ReplicateRecord>& rs, const std::optional<SummaryReport>& summary,
                       const std::string& path) {
  nlohmann::json j;
  j["records"] = nlohmann::json::array();
  for (const auto& r : rs) j["records"].push_back(to_json(r));
  if (summary) j["summary"] = to_json(*summary);
  write_file(path, j.dump(2) + "\n");
}

}  // namespace kout
