#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cgirth/harness.hpp"
#include "cgirth/lower_bound.hpp"
#include "cgirth/random.hpp"
#include "test_oracles.hpp"

namespace cgirth {
namespace {

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("cgirth_harness_" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::vector<ExperimentConfig> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

TEST(Config, SectionsInheritDefaults) {
  const auto runs = parse(
      "# shared settings\n"
      "trials = 3\n"
      "gen = planted:n=60,len=10\n"
      "\n"
      "[first]\n"
      "algo = unweighted\n"
      "f = 3   # inline comment\n"
      "[second]\n"
      "algo = weighted\n"
      "k = 3\n"
      "eps = 0.25\n"
      "mode = accounting\n");
  ASSERT_EQ(runs.size(), 2u);
  EXPECT_EQ(runs[0].name, "first");
  EXPECT_EQ(runs[0].f, 3);
  EXPECT_EQ(runs[0].trials, 3);
  EXPECT_EQ(runs[1].algo, Algorithm::kWeighted);
  EXPECT_EQ(runs[1].k, 3);
  EXPECT_DOUBLE_EQ(runs[1].eps, 0.25);
  EXPECT_EQ(runs[1].engine.mode, EngineMode::kAccounting);
  EXPECT_EQ(runs[1].gen, "planted:n=60,len=10");
  EXPECT_EQ(runs[0].params(), "f=3");
  EXPECT_EQ(runs[1].params(), "k=3;eps=0.25");
}

TEST(Config, PrintedConfigParsesBack) {
  const auto runs = parse("gen = uniform:n=50,p=0.1\n[a]\nalgo = directed\nseed = 9\n[b]\nf = 4\nround_cap = 1000\n");
  std::ostringstream out;
  print_config(out, runs);
  const auto again = parse(out.str());
  ASSERT_EQ(again.size(), runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    EXPECT_EQ(again[i].name, runs[i].name);
    EXPECT_EQ(again[i].algo, runs[i].algo);
    EXPECT_EQ(again[i].seed, runs[i].seed);
    EXPECT_EQ(again[i].f, runs[i].f);
    EXPECT_EQ(again[i].engine.round_cap, runs[i].engine.round_cap);
    EXPECT_EQ(again[i].gen, runs[i].gen);
  }
}

TEST(Config, Errors) {
  EXPECT_THROW(parse("gen = planted:n=60,len=10\nbogus = 1\n"), ConfigError);
  EXPECT_THROW(parse("gen = planted:n=60,len=10\ntrials = 0\n"), ConfigError);
  EXPECT_THROW(parse("gen = planted:n=60,len=10\ninput = x.txt\n"), ConfigError);
  EXPECT_THROW(parse("input = /no/such/file.txt\n"), ConfigError);
  EXPECT_THROW(parse("gen = nosuchkind:n=5\n"), ConfigError);
  EXPECT_THROW(parse("gen = planted:n=60,len=10\ntrials = three\n"), ConfigError);
  EXPECT_THROW(parse("gen = planted:n=60,len=10\nalgo = weighted\neps = 0\n"), ConfigError);
  try {
    parse("gen = planted:n=60,len=10\n\nf = x\n");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Experiment, CycleFixture) {
  TempDir dir;
  const std::string path = dir.file("c20.txt");
  write_graph_file(path, testing::cycle_graph(20));
  ExperimentConfig cfg;
  cfg.algo = Algorithm::kUnweighted;
  cfg.f = 2;
  cfg.input = path;
  const auto rows = run_experiment(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(*rows[0].girth, Distance(20));
  EXPECT_EQ(rows[0].girth_source, "oracle");
  EXPECT_GE(rows[0].estimate, Distance(20));
  EXPECT_LE(rows[0].estimate, Distance(40));
  ASSERT_TRUE(rows[0].ratio().has_value());
  EXPECT_GE(*rows[0].ratio(), 1.0);
  EXPECT_LE(*rows[0].ratio(), 2.0);
  EXPECT_GT(rows[0].rounds, 0);
  EXPECT_EQ(rows[0].diameter, Distance(10));
}

TEST(Experiment, DagHasNoRatio) {
  TempDir dir;
  const std::string path = dir.file("dag.txt");
  Graph g(30, true, false);
  for (NodeId v = 0; v < 30; ++v) {
    for (NodeId w : {v + 1, v + 3}) {
      if (w < 30) g.add_edge(v, w);
    }
  }
  write_graph_file(path, g);
  ExperimentConfig cfg;
  cfg.algo = Algorithm::kDirected;
  cfg.input = path;
  const auto rows = run_experiment(cfg);
  EXPECT_TRUE(rows[0].estimate.is_infinite());
  EXPECT_FALSE(rows[0].ratio().has_value());
  const std::string line = csv_line(rows[0]);
  EXPECT_NE(line.find(",inf,inf,oracle,,"), std::string::npos) << line;
}

TEST(Experiment, LowerBoundInstanceUsesCertifiedGirth) {
  TempDir dir;
  const std::string path = dir.file("lb.txt");
  const HostBipartite h = host_bipartite(7, 3);
  const auto [ea, eb] = lower_bound_inputs("shared-single", h);
  write_instance(path, build_instance(h, 5, ea, eb, LowerBoundMode::kDirected));
  ExperimentConfig cfg;
  cfg.algo = Algorithm::kDirected;
  cfg.input = path;
  cfg.trials = 2;
  for (const auto& row : run_experiment(cfg)) {
    EXPECT_EQ(row.girth_source, "certified");
    EXPECT_EQ(*row.girth, Distance(10));
    EXPECT_GE(row.estimate, Distance(10));
    EXPECT_LE(row.estimate, Distance(20));
  }
}

TEST(Experiment, OracleBudget) {
  ExperimentConfig cfg;
  cfg.gen = "planted:n=120,len=12";
  cfg.oracle_budget = 100;
  const auto rows = run_experiment(cfg);
  EXPECT_FALSE(rows[0].girth.has_value());
  EXPECT_FALSE(rows[0].ratio().has_value());
  EXPECT_EQ(summarize(rows).with_oracle, 0u);
}

TEST(Experiment, BandwidthAbortIsReported) {
  ExperimentConfig cfg;
  cfg.gen = "planted:n=80,len=10";
  cfg.engine.c_bandwidth = 0.01;  // below one id plus one distance per message
  const auto rows = run_experiment(cfg);
  EXPECT_EQ(rows[0].status, RowStatus::kBandwidthAbort);
  const auto s = summarize(rows);
  EXPECT_EQ(s.aborts, 1u);
  EXPECT_FALSE(s.ok());

  cfg.engine.mode = EngineMode::kAccounting;
  const auto counted = run_experiment(cfg);
  EXPECT_EQ(counted[0].status, RowStatus::kOk);
  EXPECT_GT(counted[0].max_bits, cfg.engine.bandwidth(80));
}

TEST(Experiment, SafetyViolationDetected) {
  ResultRow r;
  r.girth = Distance(10);
  r.estimate = Distance(9);
  EXPECT_TRUE(r.safety_violation());
  EXPECT_FALSE(summarize({r}).ok());
  r.estimate = Distance();
  EXPECT_FALSE(r.safety_violation());
  EXPECT_TRUE(std::isinf(*r.ratio()));
}

TEST(Experiment, ReproducibleAcrossRunsAndJobs) {
  ExperimentConfig cfg;
  cfg.algo = Algorithm::kWeighted;
  cfg.gen = "planted:n=60,len=8,W=20";
  cfg.trials = 4;
  std::ostringstream a, b, c;
  write_csv(a, run_experiment(cfg));
  write_csv(b, run_experiment(cfg));
  cfg.jobs = 3;
  write_csv(c, run_experiment(cfg));
  EXPECT_EQ(strip_wall_time(a.str()), strip_wall_time(b.str()));
  EXPECT_EQ(strip_wall_time(a.str()), strip_wall_time(c.str()));
}

TEST(Csv, HeaderAndQuoting) {
  const std::string header = csv_header();
  EXPECT_EQ(header.rfind("schema,", 0), 0u);
  EXPECT_EQ(header.substr(header.rfind(',') + 1), "wall_ms");
  ResultRow r;
  r.instance = "uniform:n=5,p=0.1#3";
  r.wall_ms = 12.5;
  const std::string line = csv_line(r);
  EXPECT_NE(line.find("\"uniform:n=5,p=0.1#3\""), std::string::npos);
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 16);
  const std::string stripped = strip_wall_time(header + "\n" + line + "\n");
  EXPECT_EQ(stripped.find("12.5"), std::string::npos);
  EXPECT_NE(stripped.find("wall_ms"), std::string::npos);
}

TEST(Stats, Quantiles) {
  std::vector<double> xs;
  for (int i = 1; i <= 100; ++i) xs.push_back(i);
  const Quantiles q = quantiles(xs);
  EXPECT_EQ(q.min, 1);
  EXPECT_EQ(q.p50, 50);
  EXPECT_EQ(q.p90, 90);
  EXPECT_EQ(q.p95, 95);
  EXPECT_EQ(q.max, 100);
}

TEST(Stats, LogLogFit) {
  std::vector<double> x, y;
  for (double n : {100.0, 200.0, 400.0, 800.0}) {
    x.push_back(n);
    y.push_back(3.0 * std::sqrt(n));
  }
  const SlopeFit exact = fit_loglog(x, y);
  EXPECT_NEAR(exact.slope, 0.5, 1e-12);
  EXPECT_NEAR(exact.intercept, std::log(3.0), 1e-9);
  EXPECT_NEAR(exact.lo, 0.5, 1e-9);
  EXPECT_NEAR(exact.hi, 0.5, 1e-9);

  Rng rng(5);
  std::normal_distribution<double> noise(0.0, 0.1);
  x.clear();
  y.clear();
  for (int rep = 0; rep < 10; ++rep) {
    for (double n : {100.0, 200.0, 400.0, 800.0, 1600.0}) {
      x.push_back(n);
      y.push_back(std::pow(n, 0.7) * std::exp(noise(rng)));
    }
  }
  const SlopeFit noisy = fit_loglog(x, y, 500, 3);
  EXPECT_LT(noisy.lo, noisy.hi);
  EXPECT_LE(noisy.lo, 0.7);
  EXPECT_GE(noisy.hi, 0.7);
  EXPECT_EQ(fit_loglog(x, y, 500, 3).lo, noisy.lo);
  EXPECT_THROW(fit_loglog({5.0, 5.0}, {1.0, 2.0}), std::invalid_argument);
}

}  // namespace
}  // namespace cgirth
