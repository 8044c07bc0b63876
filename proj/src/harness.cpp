#include "cgirth/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "cgirth/generators.hpp"
#include "cgirth/girth_directed.hpp"
#include "cgirth/girth_unweighted.hpp"
#include "cgirth/girth_weighted.hpp"
#include "cgirth/oracle.hpp"
#include "cgirth/random.hpp"

namespace cgirth {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T x{};
  in >> x;
  if (!in || !in.eof()) throw ConfigError("bad value '" + value + "' for " + key);
  return x;
}

std::string format_double(double x) {
  std::ostringstream out;
  out << std::setprecision(6) << std::fixed << x;
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q.push_back('"');
    q.push_back(c);
  }
  q.push_back('"');
  return q;
}

std::string distance_field(Distance d) { return d.is_finite() ? std::to_string(d.value()) : "inf"; }

// Certified girth from a lower-bound sidecar, when it states an exact value.
std::optional<Distance> certified_girth(const std::string& input) {
  std::ifstream in(input + ".json");
  if (!in) return std::nullopt;
  const auto meta = nlohmann::json::parse(in, nullptr, false);
  if (meta.is_discarded() || !meta.contains("expected_kind")) return std::nullopt;
  if (meta["expected_kind"] != "exact" || !meta["expected_girth"].is_number_integer()) return std::nullopt;
  return Distance(meta["expected_girth"].get<std::int64_t>());
}

GirthEstimate run_algorithm(const ExperimentConfig& cfg, const Graph& g, std::uint64_t seed) {
  switch (cfg.algo) {
    case Algorithm::kUnweighted: {
      UnweightedParams p;
      p.f = cfg.f;
      if (cfg.c > 0) p.c = cfg.c;
      return approx_girth_unweighted(g, p, cfg.engine, seed);
    }
    case Algorithm::kWeighted: {
      WeightedParams p;
      p.k = cfg.k;
      p.eps = cfg.eps;
      if (cfg.c > 0) p.c = cfg.c;
      p.sample_const = cfg.sample_const;
      return approx_girth_weighted(g, p, cfg.engine, seed);
    }
    case Algorithm::kDirected: {
      DirectedParams p;
      if (cfg.c > 0) p.c = cfg.c;
      if (cfg.sample_const > 0) p.sample_const = cfg.sample_const;
      return approx_girth_directed(g, p, cfg.engine, seed);
    }
    case Algorithm::kDirectedWeighted: {
      DirectedWeightedParams p;
      p.eps = cfg.eps;
      if (cfg.c > 0) p.base.c = cfg.c;
      if (cfg.sample_const > 0) p.base.sample_const = cfg.sample_const;
      return approx_girth_directed_weighted(g, p, cfg.engine, seed);
    }
  }
  throw ConfigError("unknown algorithm");
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::kUnweighted: return "unweighted";
    case Algorithm::kWeighted: return "weighted";
    case Algorithm::kDirected: return "directed";
    case Algorithm::kDirectedWeighted: return "directed-weighted";
  }
  return "unweighted";
}

Algorithm parse_algorithm(const std::string& text) {
  for (Algorithm a : {Algorithm::kUnweighted, Algorithm::kWeighted, Algorithm::kDirected,
                      Algorithm::kDirectedWeighted}) {
    if (to_string(a) == text) return a;
  }
  throw ConfigError("unknown algorithm '" + text + "'");
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError(name + ": trials must be at least 1");
  if (jobs < 1) throw ConfigError(name + ": jobs must be at least 1");
  if (gen.empty() == input.empty()) throw ConfigError(name + ": give exactly one of gen and input");
  if (!input.empty() && !std::filesystem::exists(input)) {
    throw ConfigError(name + ": input file '" + input + "' does not exist");
  }
  if (!gen.empty()) {
    try {
      parse_gen_spec(gen);
    } catch (const GeneratorError& e) {
      throw ConfigError(name + ": " + e.what());
    }
  }
  if (algo == Algorithm::kUnweighted && f < 1) throw ConfigError(name + ": f must be at least 1");
  if (algo == Algorithm::kWeighted && k < 1) throw ConfigError(name + ": k must be at least 1");
  if ((algo == Algorithm::kWeighted || algo == Algorithm::kDirectedWeighted) && !(eps > 0)) {
    throw ConfigError(name + ": eps must be positive");
  }
  if (engine.c_bandwidth <= 0) throw ConfigError(name + ": c_bandwidth must be positive");
  if (engine.round_cap < 1) throw ConfigError(name + ": round_cap must be positive");
  if (oracle_budget < 0) throw ConfigError(name + ": oracle_budget must be nonnegative");
}

std::string ExperimentConfig::params() const {
  std::ostringstream out;
  switch (algo) {
    case Algorithm::kUnweighted: out << "f=" << f; break;
    case Algorithm::kWeighted: out << "k=" << k << ";eps=" << eps; break;
    case Algorithm::kDirected: break;
    case Algorithm::kDirectedWeighted: out << "eps=" << eps; break;
  }
  if (c > 0) out << (out.tellp() > 0 ? ";" : "") << "c=" << c;
  if (sample_const > 0) out << (out.tellp() > 0 ? ";" : "") << "sample_const=" << sample_const;
  return out.str();
}

void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "name") cfg.name = value;
  else if (key == "algo") cfg.algo = parse_algorithm(value);
  else if (key == "f") cfg.f = parse_number<int>(key, value);
  else if (key == "k") cfg.k = parse_number<int>(key, value);
  else if (key == "eps") cfg.eps = parse_number<double>(key, value);
  else if (key == "c") cfg.c = parse_number<double>(key, value);
  else if (key == "sample_const") cfg.sample_const = parse_number<double>(key, value);
  else if (key == "gen") cfg.gen = value;
  else if (key == "input") cfg.input = value;
  else if (key == "trials") cfg.trials = parse_number<int>(key, value);
  else if (key == "seed") cfg.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "c_bandwidth") cfg.engine.c_bandwidth = parse_number<double>(key, value);
  else if (key == "round_cap") cfg.engine.round_cap = parse_number<std::int64_t>(key, value);
  else if (key == "oracle_budget") cfg.oracle_budget = parse_number<NodeId>(key, value);
  else if (key == "jobs") cfg.jobs = parse_number<int>(key, value);
  else if (key == "mode") {
    if (value == "strict") cfg.engine.mode = EngineMode::kStrict;
    else if (value == "accounting") cfg.engine.mode = EngineMode::kAccounting;
    else throw ConfigError("mode must be strict or accounting, not '" + value + "'");
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

std::vector<ExperimentConfig> parse_config(std::istream& in, const ExperimentConfig& base) {
  ExperimentConfig defaults = base;
  std::vector<ExperimentConfig> runs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    try {
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError("unterminated section");
        runs.push_back(defaults);
        runs.back().name = trim(line.substr(1, line.size() - 2));
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw ConfigError("expected key = value");
      apply_setting(runs.empty() ? defaults : runs.back(), trim(line.substr(0, eq)),
                    trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (runs.empty()) runs.push_back(defaults);
  for (const auto& r : runs) r.validate();
  return runs;
}

std::vector<ExperimentConfig> parse_config_file(const std::string& path, const ExperimentConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  return parse_config(in, base);
}

void print_config(std::ostream& out, const std::vector<ExperimentConfig>& runs) {
  for (const auto& r : runs) {
    out << "[" << r.name << "]\n";
    out << "algo = " << to_string(r.algo) << "\n";
    out << "f = " << r.f << "\n";
    out << "k = " << r.k << "\n";
    out << "eps = " << r.eps << "\n";
    out << "c = " << r.c << "\n";
    out << "sample_const = " << r.sample_const << "\n";
    if (!r.gen.empty()) out << "gen = " << r.gen << "\n";
    if (!r.input.empty()) out << "input = " << r.input << "\n";
    out << "trials = " << r.trials << "\n";
    out << "seed = " << r.seed << "\n";
    out << "c_bandwidth = " << r.engine.c_bandwidth << "\n";
    out << "mode = " << (r.engine.mode == EngineMode::kStrict ? "strict" : "accounting") << "\n";
    out << "round_cap = " << r.engine.round_cap << "\n";
    out << "oracle_budget = " << r.oracle_budget << "\n";
    out << "jobs = " << r.jobs << "\n\n";
  }
}

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::kOk: return "ok";
    case RowStatus::kBandwidthAbort: return "bandwidth_abort";
    case RowStatus::kRoundCap: return "round_cap";
  }
  return "ok";
}

std::optional<double> ResultRow::ratio() const {
  if (!girth || girth->is_infinite() || status != RowStatus::kOk) return std::nullopt;
  if (estimate.is_infinite()) return std::numeric_limits<double>::infinity();
  return static_cast<double>(estimate.value()) / static_cast<double>(girth->value());
}

bool ResultRow::safety_violation() const {
  return status == RowStatus::kOk && girth.has_value() && estimate < *girth;
}

std::string csv_header() {
  return "schema,run,instance,n,m,D,algorithm,params,seed,M,g,g_source,ratio,rounds,max_bits,status,wall_ms";
}

std::string csv_line(const ResultRow& r) {
  std::ostringstream out;
  const auto ratio = r.ratio();
  out << kResultSchemaVersion << ',' << csv_field(r.run) << ',' << csv_field(r.instance) << ',' << r.n << ','
      << r.m << ',' << distance_field(r.diameter) << ',' << to_string(r.algo) << ',' << csv_field(r.params)
      << ',' << r.seed << ',' << distance_field(r.estimate) << ','
      << (r.girth ? distance_field(*r.girth) : "") << ',' << r.girth_source << ','
      << (ratio ? (std::isinf(*ratio) ? "inf" : format_double(*ratio)) : "") << ',' << r.rounds << ','
      << r.max_bits << ',' << to_string(r.status) << ',' << format_double(r.wall_ms);
  return out.str();
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << csv_header() << "\n";
  for (const auto& r : rows) out << csv_line(r) << "\n";
}

std::string strip_wall_time(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!header) line = line.substr(0, line.rfind(',') + 1);
    header = false;
    out << line << "\n";
  }
  return out.str();
}

Quantiles quantiles(std::vector<double> xs) {
  Quantiles q;
  if (xs.empty()) return q;
  std::sort(xs.begin(), xs.end());
  auto at = [&](double p) {
    const auto i = static_cast<std::size_t>(std::ceil(p * static_cast<double>(xs.size()))) ;
    return xs[std::min(xs.size() - 1, i == 0 ? 0 : i - 1)];
  };
  q.min = xs.front();
  q.p50 = at(0.5);
  q.p90 = at(0.9);
  q.p95 = at(0.95);
  q.max = xs.back();
  return q;
}

ExperimentSummary summarize(const std::vector<ResultRow>& rows) {
  ExperimentSummary s;
  s.rows = rows.size();
  std::vector<double> ratios, rounds;
  for (const auto& r : rows) {
    if (r.girth) ++s.with_oracle;
    if (r.safety_violation()) ++s.safety_violations;
    if (r.status != RowStatus::kOk) {
      ++s.aborts;
      continue;
    }
    rounds.push_back(static_cast<double>(r.rounds));
    if (const auto x = r.ratio()) ratios.push_back(*x);
  }
  if (!ratios.empty()) s.ratio = quantiles(ratios);
  if (!rounds.empty()) s.rounds = quantiles(rounds);
  return s;
}

void print_summary(std::ostream& out, const ExperimentSummary& s) {
  auto line = [&](const char* name, const Quantiles& q) {
    out << name << ": min " << q.min << "  p50 " << q.p50 << "  p90 " << q.p90 << "  p95 " << q.p95
        << "  max " << q.max << "\n";
  };
  out << "rows " << s.rows << ", with girth " << s.with_oracle << ", safety violations "
      << s.safety_violations << ", aborts " << s.aborts << "\n";
  if (s.ratio) line("ratio", *s.ratio);
  if (s.rounds) line("rounds", *s.rounds);
}

ResultRow run_trial(const ExperimentConfig& cfg, const Graph& g, const std::string& instance,
                    std::uint64_t seed, std::optional<Distance> certified) {
  const auto start = std::chrono::steady_clock::now();
  ResultRow row;
  row.run = cfg.name;
  row.instance = instance;
  row.n = g.n();
  row.m = static_cast<std::int64_t>(g.m());
  row.diameter = hop_diameter(g);
  row.algo = cfg.algo;
  row.params = cfg.params();
  row.seed = seed;
  if (certified) {
    row.girth = certified;
    row.girth_source = "certified";
  } else if (g.n() <= cfg.oracle_budget) {
    row.girth = exact_girth(g).value;
    row.girth_source = "oracle";
  }
  try {
    const GirthEstimate est = run_algorithm(cfg, g, seed);
    row.estimate = est.value;
    row.rounds = est.report.rounds;
    row.max_bits = est.report.max_bits;
  } catch (const BandwidthExceeded& e) {
    row.status = RowStatus::kBandwidthAbort;
    row.max_bits = e.bits;
  } catch (const RoundCapExceeded&) {
    row.status = RowStatus::kRoundCap;
  }
  row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return row;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  Graph fixed;
  std::optional<Distance> certified;
  if (!cfg.input.empty()) {
    fixed = read_graph_file(cfg.input);
    certified = certified_girth(cfg.input);
  }
  const std::optional<GenSpec> spec =
      cfg.gen.empty() ? std::nullopt : std::optional<GenSpec>(parse_gen_spec(cfg.gen));

  auto trial = [&](int t) {
    const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(t);
    if (spec) {
      const Graph g = generate(*spec, seed).graph;
      return run_trial(cfg, g, spec->to_string() + "#" + std::to_string(seed), seed);
    }
    return run_trial(cfg, fixed, cfg.input, seed, certified);
  };

  std::vector<ResultRow> rows(cfg.trials);
  if (cfg.jobs == 1) {
    for (int t = 0; t < cfg.trials; ++t) rows[t] = trial(t);
    return rows;
  }
  // Each worker takes every jobs-th trial; rows land in trial order.
  std::vector<std::future<void>> workers;
  for (int w = 0; w < cfg.jobs; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (int t = w; t < cfg.trials; t += cfg.jobs) rows[t] = trial(t);
    }));
  }
  for (auto& f : workers) f.get();
  return rows;
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, int resamples,
                    std::uint64_t seed) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("need at least two points");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("log fit needs positive values");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  auto ols = [&](const std::vector<std::size_t>& idx, double& slope, double& intercept) {
    double mx = 0, my = 0;
    for (auto i : idx) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= static_cast<double>(idx.size());
    my /= static_cast<double>(idx.size());
    double sxy = 0, sxx = 0;
    for (auto i : idx) {
      sxy += (lx[i] - mx) * (ly[i] - my);
      sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx <= 0) return false;
    slope = sxy / sxx;
    intercept = my - slope * mx;
    return true;
  };
  SlopeFit fit;
  fit.points = x.size();
  std::vector<std::size_t> all(x.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  if (!ols(all, fit.slope, fit.intercept)) throw std::invalid_argument("log fit needs two distinct x values");

  Rng rng(derive_seed(seed, 0, phase_tag("bootstrap")));
  std::uniform_int_distribution<std::size_t> pick(0, x.size() - 1);
  std::vector<double> slopes;
  std::vector<std::size_t> idx(x.size());
  for (int b = 0; b < resamples; ++b) {
    for (auto& i : idx) i = pick(rng);
    double s = 0, c = 0;
    if (ols(idx, s, c)) slopes.push_back(s);
  }
  if (slopes.empty()) {
    fit.lo = fit.hi = fit.slope;
  } else {
    std::sort(slopes.begin(), slopes.end());
    auto q = [&](double p) {
      return slopes[std::min(slopes.size() - 1, static_cast<std::size_t>(p * static_cast<double>(slopes.size())))];
    };
    fit.lo = q(0.025);
    fit.hi = q(0.975);
  }
  return fit;
}

}  // namespace cgirth
