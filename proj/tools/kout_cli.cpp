// Command-line front end. Exit codes: 0 success, 1 usage or argument error,
// 2 invariant violation, 3 I/O error.

#include <cstdio>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "kout/kout.hpp"

using nlohmann::json;

namespace {

json constants_json(const kout::ModelConstants& c) {
  return {{"k", c.k},
          {"tau", c.tau},
          {"nu", c.nu},
          {"mu", c.mu},
          {"sigma2", c.sigma2},
          {"lambda", c.lambda},
          {"gamma", c.gamma},
          {"rho", c.rho},
          {"cycle_mean_total", c.cycle_mean_total},
          {"spectrum_coeff", c.spectrum_coeff},
          {"path_coeff", c.path_coeff}};
}

json analyze_json(const kout::KOutDigraph& g) {
  const auto d = kout::decompose(g);
  const auto lay = kout::layers(d);
  const auto out = kout::analyze_outside(g, d);
  json cycles = json::array();
  for (const auto& c : out.cycles) cycles.push_back(c.vertices);
  json by_len = json::object();
  for (auto [len, count] : out.cycles_by_length) by_len[std::to_string(len)] = count;
  return {
      {"n", g.n()},
      {"k", g.k()},
      {"layers",
       {{"giant_size", lay.giant_size},
        {"core_size", lay.core_size},
        {"middle_size", lay.middle_size},
        {"outer_size", lay.outer_size},
        {"all_reach_giant", lay.all_reach_giant}}},
      {"scc_count", d.scc_count()},
      {"closed_scc_count", std::count(d.closed.begin(), d.closed.end(), 1)},
      {"strongly_connected", d.scc_count() == 1},
      {"self_loops", kout::count_self_loops(g)},
      {"multi_pairs", kout::count_multi_pairs(g)},
      {"simple", kout::is_simple(g)},
      {"outside",
       {{"cycles", cycles},
        {"cycles_by_length", by_len},
        {"total_cycles", out.total_cycles},
        {"vertex_disjoint", out.vertex_disjoint},
        {"longest_cycle", out.longest_cycle},
        {"spectra_sizes", out.spectra_sizes},
        {"max_spectrum", out.max_spectrum},
        {"arc_excess_violations", out.arc_excess_violations},
        {"W", out.W},
        {"unreachable", out.unreachable},
        {"D", out.D},
        {"M", out.M},
        {"max_full_spectrum", out.max_full_spectrum},
        {"spectrum_of_zero", out.spectrum_of_zero}}}};
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty())
    std::cout << text;
  else
    kout::write_file(path, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random k-out digraphs: generation, decomposition and Monte Carlo limit-law checks"};
  app.require_subcommand(1);

  // constants
  int c_k = 2;
  double c_tol = 1e-12;
  bool c_json = false;
  auto* cmd_constants = app.add_subcommand("constants", "Print the model constants for alphabet size k");
  cmd_constants->add_option("--k", c_k, "out-degree k >= 2")->required();
  cmd_constants->add_option("--tol", c_tol, "root-finder tolerance");
  cmd_constants->add_flag("--json", c_json, "emit JSON");

  // generate
  std::size_t g_n = 0, g_k = 2;
  std::uint64_t g_seed = 1;
  bool g_simple = false;
  std::string g_out, g_format = "json";
  auto* cmd_generate = app.add_subcommand("generate", "Draw a uniform k-out digraph");
  cmd_generate->add_option("--n", g_n)->required();
  cmd_generate->add_option("--k", g_k)->required();
  cmd_generate->add_option("--seed", g_seed)->required();
  cmd_generate->add_flag("--simple", g_simple, "condition on no self-loops or parallel arcs");
  cmd_generate->add_option("--out", g_out, "output file (default stdout)");
  cmd_generate->add_option("--format", g_format)->check(CLI::IsMember({"json", "bin"}));

  // analyze
  std::size_t a_n = 0, a_k = 2;
  std::uint64_t a_seed = 1;
  std::string a_in;
  bool a_json = false;
  auto* cmd_analyze = app.add_subcommand("analyze", "Decompose a digraph and report layer and outside statistics");
  cmd_analyze->add_option("--n", a_n);
  cmd_analyze->add_option("--k", a_k);
  cmd_analyze->add_option("--seed", a_seed);
  cmd_analyze->add_option("--in", a_in, "read the digraph from a JSON or binary file");
  cmd_analyze->add_flag("--json", a_json, "emit the full JSON report (default prints a short summary)");

  // distance
  std::size_t d_n = 0, d_k = 2, d_pairs = 1000;
  std::uint64_t d_seed = 1;
  bool d_json = false;
  auto* cmd_distance = app.add_subcommand("distance", "Sample typical distances between random vertex pairs");
  cmd_distance->add_option("--n", d_n)->required();
  cmd_distance->add_option("--k", d_k)->required();
  cmd_distance->add_option("--pairs", d_pairs);
  cmd_distance->add_option("--seed", d_seed);
  cmd_distance->add_flag("--json", d_json);

  // phase
  std::size_t p_n = 0, p_kmin = 1, p_kmax = 1, p_reps = 100;
  std::uint64_t p_seed = 1;
  bool p_csv = false;
  auto* cmd_phase = app.add_subcommand("phase", "Strong-connectivity fraction as a function of k");
  cmd_phase->add_option("--n", p_n)->required();
  cmd_phase->add_option("--kmin", p_kmin)->required();
  cmd_phase->add_option("--kmax", p_kmax)->required();
  cmd_phase->add_option("--reps", p_reps);
  cmd_phase->add_option("--seed", p_seed);
  cmd_phase->add_flag("--csv", p_csv);

  // surjection
  std::size_t s_m = 1, s_k = 2, s_count = 1;
  std::uint64_t s_seed = 1;
  bool s_json = false;
  auto* cmd_surj = app.add_subcommand("surjection", "Sample uniform surjections [km] -> [m]");
  cmd_surj->add_option("--m", s_m)->required();
  cmd_surj->add_option("--k", s_k)->required();
  cmd_surj->add_option("--count", s_count);
  cmd_surj->add_option("--seed", s_seed);
  cmd_surj->add_flag("--json", s_json);

  // oracle
  auto* cmd_oracle = app.add_subcommand("oracle", "Exact reference computations");
  cmd_oracle->require_subcommand(1);
  std::size_t o_n = 2, o_k = 2, o_x = 0, o_y = 0;
  bool o_json = false;
  double o_mu = 0.1;
  int o_gk = 2, o_m = 1;
  auto* cmd_enum = cmd_oracle->add_subcommand("enumerate", "Tally statistics over every n-vertex k-out digraph");
  cmd_enum->add_option("--n", o_n)->required();
  cmd_enum->add_option("--k", o_k)->required();
  cmd_enum->add_flag("--json", o_json);
  auto* cmd_stirling = cmd_oracle->add_subcommand("stirling", "Stirling number of the second kind S{x,y}");
  cmd_stirling->add_option("--x", o_x)->required();
  cmd_stirling->add_option("--y", o_y)->required();
  auto* cmd_gw = cmd_oracle->add_subcommand("gw", "Galton-Watson extinction by generation m and its upper bound");
  cmd_gw->add_option("--mu", o_mu)->required();
  cmd_gw->add_option("--k", o_gk)->required();
  cmd_gw->add_option("--m", o_m)->required();

  // montecarlo
  kout::ExperimentConfig mc;
  std::string mc_out, mc_format = "csv", mc_collect = "all";
  bool mc_deep = false;
  auto* cmd_mc = app.add_subcommand("montecarlo", "Run replicates and write per-replicate records");
  cmd_mc->add_option("--n", mc.n)->required();
  cmd_mc->add_option("--k", mc.k)->required();
  cmd_mc->add_option("--reps", mc.reps)->required();
  cmd_mc->add_option("--seed", mc.seed)->required();
  cmd_mc->add_option("--out", mc_out, "output file (default stdout)");
  cmd_mc->add_option("--format", mc_format)->check(CLI::IsMember({"csv", "json"}));
  cmd_mc->add_option("--collect", mc_collect)->check(CLI::IsMember({"all", "core", "cycles", "distances"}));
  cmd_mc->add_option("--threads", mc.threads, "worker threads (default KOUT_THREADS or all cores)");
  cmd_mc->add_flag("--deep-checks", mc_deep, "verify decomposition invariants on every replicate");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*cmd_constants) {
      const auto c = kout::derive_constants(c_k, c_tol);
      const auto j = constants_json(c);
      if (c_json) {
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << std::setprecision(12);
        for (auto& [key, value] : j.items()) std::cout << std::left << std::setw(18) << key << value << "\n";
      }
    } else if (*cmd_generate) {
      std::size_t attempts = 1;
      kout::KOutDigraph g;
      if (g_simple) {
        auto s = kout::generate_simple(g_n, g_k, kout::RngSpec{g_seed, 0});
        g = std::move(s.graph);
        attempts = s.attempts;
      } else {
        g = kout::generate(g_n, g_k, kout::RngSpec{g_seed, 0});
      }
      const auto fmt = g_format == "bin" ? kout::Format::binary : kout::Format::json;
      std::string bytes = kout::serialize(g, fmt);
      if (fmt == kout::Format::json) bytes += "\n";
      emit(bytes, g_out);
      if (g_simple) std::cerr << "attempts: " << attempts << "\n";
    } else if (*cmd_analyze) {
      kout::KOutDigraph g;
      if (!a_in.empty())
        g = kout::deserialize(kout::read_file(a_in));
      else if (a_n > 0)
        g = kout::generate(a_n, a_k, kout::RngSpec{a_seed, 0});
      else
        throw kout::InvalidArgument("analyze: give --in FILE or --n/--k/--seed");
      auto report = analyze_json(g);
      if (a_json) {
        std::cout << report.dump() << "\n";
      } else {
        const auto& l = report["layers"];
        const auto& o = report["outside"];
        std::cout << "n=" << g.n() << " k=" << g.k() << "\n"
                  << "|G|=" << l["giant_size"] << " |Q|=" << l["core_size"] << " |Q|-|G|=" << l["middle_size"]
                  << " n-|Q|=" << l["outer_size"] << " all_reach_giant=" << l["all_reach_giant"] << "\n"
                  << "cycles outside G=" << o["total_cycles"] << " longest=" << o["longest_cycle"]
                  << " disjoint=" << o["vertex_disjoint"] << "\n"
                  << "S=" << o["max_spectrum"] << " W=" << o["W"] << " D=" << o["D"] << " M=" << o["M"]
                  << " max|Spec|=" << o["max_full_spectrum"] << "\n";
      }
    } else if (*cmd_distance) {
      const auto g = kout::generate(d_n, d_k, kout::RngSpec{d_seed, 0});
      const auto s = kout::typical_distance(g, d_pairs, kout::RngSpec{d_seed, 1});
      double mean = 0;
      for (auto x : s.distances) mean += double(x);
      if (!s.distances.empty()) mean /= double(s.distances.size());
      const double log_k_n = std::log(double(d_n)) / std::log(double(d_k));
      if (d_json) {
        std::cout << json{{"n", d_n},
                          {"k", d_k},
                          {"pairs_drawn", s.pairs_drawn},
                          {"finite_count", s.finite_count},
                          {"finite_fraction", double(s.finite_count) / double(s.pairs_drawn)},
                          {"mean_distance", mean},
                          {"mean_over_log_k_n", mean / log_k_n},
                          {"distances", s.distances}}
                         .dump()
                  << "\n";
      } else {
        std::cout << "pairs=" << s.pairs_drawn << " finite=" << s.finite_count << " mean=" << mean
                  << " mean/log_k(n)=" << mean / log_k_n << "\n";
      }
    } else if (*cmd_phase) {
      const auto pts = kout::phase_sweep(p_n, p_kmin, p_kmax, p_reps, p_seed);
      if (p_csv) {
        std::cout << "n,k,reps,frac_sc,frac_indeg0\n";
        for (const auto& p : pts)
          std::cout << p.n << "," << p.k << "," << p.reps << "," << p.fraction_strongly_connected << ","
                    << p.fraction_with_indeg_zero_vertex << "\n";
      } else {
        for (const auto& p : pts)
          std::cout << "k=" << p.k << " strongly_connected=" << p.fraction_strongly_connected
                    << " has_indeg0=" << p.fraction_with_indeg_zero_vertex << "\n";
      }
    } else if (*cmd_surj) {
      json maps = json::array();
      std::size_t total = 0;
      for (std::size_t i = 0; i < s_count; ++i) {
        const auto s = kout::sample_surjection(s_m, s_k, kout::RngSpec{s_seed, i});
        total += s.retries;
        json rows = json::array();
        for (kout::Vertex v = 0; v < s.mapping.n(); ++v)
          rows.push_back(std::vector<kout::Vertex>(s.mapping.out(v).begin(), s.mapping.out(v).end()));
        maps.push_back({{"mapping", rows}, {"retries", s.retries}});
      }
      const double mean_retries = double(total) / double(s_count);
      if (s_json) {
        std::cout << json{{"m", s_m}, {"k", s_k}, {"samples", maps}, {"mean_retries", mean_retries}}.dump() << "\n";
      } else {
        for (const auto& s : maps) std::cout << s["mapping"].dump() << "\n";
        std::cout << "mean retries: " << mean_retries << "\n";
      }
    } else if (*cmd_oracle) {
      if (*cmd_enum) {
        const auto t = kout::oracle::enumerate_all(o_n, o_k);
        json cyc = json::object();
        for (auto [c, count] : t.cycle_count_hist) cyc[std::to_string(c)] = count;
        json j{{"n", t.n},
               {"k", t.k},
               {"total", t.total},
               {"simple", t.simple_count},
               {"core_size_hist", t.core_size_hist},
               {"giant_size_hist", t.giant_size_hist},
               {"k_surjections_by_size", t.k_surjections_by_size},
               {"cycle_count_hist", cyc}};
        std::cout << (o_json ? j.dump() : j.dump(2)) << "\n";
      } else if (*cmd_stirling) {
        std::cout << kout::oracle::stirling2(o_x, o_y) << "\n";
      } else if (*cmd_gw) {
        std::cout << std::setprecision(17) << "extinction " << kout::oracle::gw_extinction(o_mu, o_gk, o_m) << "\n";
        if (o_mu > 0 && o_mu < 1.0 / (2.0 * o_gk))
          std::cout << "bound " << kout::oracle::gw_bound(o_mu, o_gk, o_m) << "\n";
      }
    } else if (*cmd_mc) {
      mc.collect = kout::parse_collect(mc_collect);
      mc.deep_checks = mc_deep;
      const auto records = kout::run_experiment(mc);
      if (mc_format == "csv") {
        emit(kout::to_csv(records), mc_out);
      } else {
        std::optional<kout::SummaryReport> summary;
        if (records.size() >= 2 && mc.k >= 2)
          summary = kout::summarize(records, kout::derive_constants(static_cast<int>(mc.k)));
        if (mc_out.empty()) {
          json j;
          j["records"] = json::array();
          for (const auto& r : records) j["records"].push_back(kout::to_json(r));
          if (summary) j["summary"] = kout::to_json(*summary);
          std::cout << j.dump(2) << "\n";
        } else {
          kout::write_json(records, summary, mc_out);
        }
      }
    }
  } catch (const kout::InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 2;
  } catch (const kout::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
