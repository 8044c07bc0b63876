#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cgirth/calibrate.hpp"
#include "cgirth/generators.hpp"
#include "cgirth/harness.hpp"
#include "cgirth/lower_bound.hpp"
#include "cgirth/oracle.hpp"

using namespace cgirth;

namespace {

int girth_exact(const std::string& path) {
  const Graph g = read_graph_file(path);
  const GirthEstimate e = exact_girth(g);
  std::cout << "n " << g.n() << " m " << g.m() << (g.directed() ? " directed" : " undirected")
            << (g.weighted() ? " weighted" : "") << "\n";
  std::cout << "girth " << e.value << "\n";
  if (e.witness) {
    std::cout << "cycle";
    for (NodeId v : e.witness->vertices) std::cout << " " << v;
    std::cout << "\n";
  }
  return 0;
}

int run(const ExperimentConfig& base, const std::string& config, const std::string& out_path, bool print,
        bool fit) {
  const std::vector<ExperimentConfig> runs =
      config.empty() ? std::vector<ExperimentConfig>{base} : parse_config_file(config, base);
  for (const auto& r : runs) r.validate();
  if (print) {
    print_config(std::cout, runs);
    return 0;
  }
  std::vector<ResultRow> all;
  for (const auto& r : runs) {
    const auto rows = run_experiment(r);
    std::cout << "[" << r.name << "] ";
    print_summary(std::cout, summarize(rows));
    if (fit) {
      std::vector<double> ns, rounds;
      for (const auto& row : rows) {
        if (row.status == RowStatus::kOk && row.rounds > 0) {
          ns.push_back(row.n);
          rounds.push_back(static_cast<double>(row.rounds));
        }
      }
      try {
        const SlopeFit f = fit_loglog(ns, rounds, 1000, r.seed);
        std::printf("rounds ~ n^%.3f  (95%% bootstrap %.3f .. %.3f, %zu points)\n", f.slope, f.lo, f.hi,
                    f.points);
      } catch (const std::invalid_argument& e) {
        std::cout << "no slope fit: " << e.what() << "\n";
      }
    }
    all.insert(all.end(), rows.begin(), rows.end());
  }
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot write " + out_path);
  write_csv(out, all);
  const ExperimentSummary total = summarize(all);
  if (runs.size() > 1) {
    std::cout << "[total] ";
    print_summary(std::cout, total);
  }
  std::cout << "rows written to " << out_path << "\n";
  return total.ok() ? 0 : 1;
}

int lb_gen(int k, int a, std::int64_t q, const std::string& mode, double eps, const std::string& inputs,
           std::uint64_t host_seed, const std::string& out) {
  const HostBipartite host = host_bipartite(a, k, host_seed);
  const auto [ea, eb] = lower_bound_inputs(inputs, host);
  const LowerBoundInstance inst = build_instance(host, q, ea, eb, parse_lower_bound_mode(mode), eps);
  write_instance(out, inst);
  std::cout << "host " << to_string(host.kind) << " a=" << host.a << " k=" << host.k << " m=" << host.m()
            << "\n";
  std::cout << "instance n=" << inst.graph.n() << " m=" << inst.graph.m() << " q=" << q
            << (inst.intersecting() ? " intersecting" : " disjoint") << "\n";
  std::cout << "wrote " << out << " and " << out << ".json\n";
  return 0;
}

int lb_verify(const std::string& path) {
  const LowerBoundInstance inst = read_instance(path);
  try {
    const GapReport r = verify_gap(inst);
    std::cout << (r.intersecting ? "intersecting" : "disjoint") << " girth " << r.girth
              << (r.intersecting ? " expected " : " at least ") << r.expected << "\n";
    if (inst.mode == LowerBoundMode::kWeighted && r.intersecting) {
      std::cout << "formula (2q/eps)(1+eps) = " << r.paper_weighted << ", formula 2(q-1) + 2q/eps = "
                << r.pipe_weighted << "\n";
    }
    std::cout << "hop diameter " << r.hop_diameter << " (limit " << r.hop_limit << ")\n";
    std::cout << "gap verified\n";
    return 0;
  } catch (const GapViolation& v) {
    std::cout << "GAP VIOLATION: " << v.what() << "\n";
    if (v.witness) {
      std::cout << "cycle";
      for (NodeId x : v.witness->vertices) std::cout << " " << x;
      std::cout << "\n";
    }
    return 1;
  }
}

int calibrate_cmd(const std::vector<NodeId>& ns, std::uint64_t seed) {
  const Calibration cal = calibrate(ns, seed);
  std::printf("%-18s %6s %12s %10s %8s\n", "primitive", "n", "bound", "rounds", "ratio");
  for (const auto& p : cal.points) {
    std::printf("%-18s %6d %12.1f %10lld %8.3f\n", p.primitive.c_str(), p.n, p.bound,
                static_cast<long long>(p.rounds), static_cast<double>(p.rounds) / p.bound);
  }
  for (const auto& [name, f] : cal.fits) {
    std::printf("fit %-18s A = %.3f (max ratio %.3f over %zu runs)\n", name.c_str(), f.constant, f.max_ratio,
                f.points);
  }
  std::printf("spanner size ratio max %.4f over %zu overlays\n", cal.spanner_max_ratio, cal.spanner.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed girth approximation simulator"};
  app.require_subcommand(1);

  std::string graph_path;
  auto* exact = app.add_subcommand("girth-exact", "Exact girth of a graph file");
  exact->add_option("graph", graph_path, "Graph file")->required();

  ExperimentConfig base;
  std::string algo = "unweighted", mode = "strict", config, out_path = "results.csv";
  bool print = false, fit = false;
  auto* runcmd = app.add_subcommand("run", "Run an approximation algorithm over trials");
  runcmd->add_option("--algo", algo, "unweighted | weighted | directed | directed-weighted");
  runcmd->add_option("--f", base.f, "Approximation level of the unweighted algorithm");
  runcmd->add_option("--k", base.k, "Spanner parameter of the weighted algorithm");
  runcmd->add_option("--eps", base.eps, "Accuracy parameter");
  runcmd->add_option("--c", base.c, "Success constant (algorithm default when omitted)");
  runcmd->add_option("--sample-const", base.sample_const, "Sampling constant");
  runcmd->add_option("--trials", base.trials, "Number of trials");
  runcmd->add_option("--seed", base.seed, "First seed; trial t uses seed + t");
  runcmd->add_option("--gen", base.gen, "Generator spec, e.g. planted:n=100,len=20");
  runcmd->add_option("--input", base.input, "Graph file");
  runcmd->add_option("--cb", base.engine.c_bandwidth, "Bandwidth constant c_B");
  runcmd->add_option("--mode", mode, "strict | accounting");
  runcmd->add_option("--round-cap", base.engine.round_cap, "Round cap per program");
  runcmd->add_option("--oracle-budget", base.oracle_budget, "Largest n for the exact oracle");
  runcmd->add_option("--jobs", base.jobs, "Concurrent trials");
  runcmd->add_option("--config", config, "Config file with [run] sections");
  runcmd->add_option("--out", out_path, "CSV output path");
  runcmd->add_flag("--print-config", print, "Print the resolved configuration and exit");
  runcmd->add_flag("--fit", fit, "Fit log(rounds) against log(n)");

  int k = 3, a = 7, host_seed = 1;
  std::int64_t q = 5;
  std::string lb_mode = "directed", inputs = "shared-single", lb_out = "instance.txt";
  double lb_eps = 1.0;
  auto* gen = app.add_subcommand("lb-gen", "Generate a lower-bound instance");
  gen->add_option("--k", k, "Host girth is at least 2k");
  gen->add_option("--a", a, "Host side size");
  gen->add_option("--q", q, "Pipe parameter");
  gen->add_option("--mode", lb_mode, "directed | weighted");
  gen->add_option("--eps", lb_eps, "Weighted mode: q/eps must be an integer");
  gen->add_option("--inputs", inputs, "shared-single | disjoint-full | empty | random:<seed> | <file>");
  gen->add_option("--host-seed", host_seed, "Seed of the host search fallback");
  gen->add_option("--out", lb_out, "Graph path; metadata goes to <out>.json");

  std::string instance;
  auto* verify = app.add_subcommand("lb-verify", "Check the girth gap of a lower-bound instance");
  verify->add_option("instance", instance, "Instance graph path")->required();

  std::vector<NodeId> cal_ns{100, 200, 400, 800};
  std::uint64_t cal_seed = 1;
  auto* cal = app.add_subcommand("calibrate", "Fit round constants and the spanner size constant");
  cal->add_option("--n", cal_ns, "Network sizes")->delimiter(',');
  cal->add_option("--seed", cal_seed, "Seed");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*exact) return girth_exact(graph_path);
    if (*runcmd) {
      base.algo = parse_algorithm(algo);
      apply_setting(base, "mode", mode);
      return run(base, config, out_path, print, fit);
    }
    if (*gen) return lb_gen(k, a, q, lb_mode, lb_eps, inputs, static_cast<std::uint64_t>(host_seed), lb_out);
    if (*verify) return lb_verify(instance);
    if (*cal) return calibrate_cmd(cal_ns, cal_seed);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
