#ifndef CGIRTH_HARNESS_HPP_
#define CGIRTH_HARNESS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgirth/engine.hpp"
#include "cgirth/graph.hpp"

namespace cgirth {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Algorithm { kUnweighted, kWeighted, kDirected, kDirectedWeighted };

std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& text);

struct ExperimentConfig {
  std::string name = "run";
  Algorithm algo = Algorithm::kUnweighted;
  int f = 2;
  int k = 2;
  double eps = 0.5;
  double c = -1.0;             // negative: the algorithm's default
  double sample_const = -1.0;
  std::string gen;             // generator spec, or
  std::string input;           // graph file (with an optional lower-bound sidecar)
  int trials = 1;
  std::uint64_t seed = 1;
  EngineConfig engine;
  NodeId oracle_budget = 5000;  // largest n handed to the exact oracle
  int jobs = 1;

  // Throws ConfigError on out-of-range values or a missing input.
  void validate() const;
  std::string params() const;  // the algorithm's parameters as "key=value;..."
};

// Line-oriented "key = value" text; "[name]" starts a run section. Keys before
// the first section are defaults for every run. '#' starts a comment.
std::vector<ExperimentConfig> parse_config(std::istream& in, const ExperimentConfig& base = {});
std::vector<ExperimentConfig> parse_config_file(const std::string& path, const ExperimentConfig& base = {});
void print_config(std::ostream& out, const std::vector<ExperimentConfig>& runs);
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

enum class RowStatus { kOk, kBandwidthAbort, kRoundCap };

std::string to_string(RowStatus s);

struct ResultRow {
  std::string run;
  std::string instance;
  NodeId n = 0;
  std::int64_t m = 0;
  Distance diameter;
  Algorithm algo = Algorithm::kUnweighted;
  std::string params;
  std::uint64_t seed = 0;
  Distance estimate;
  std::optional<Distance> girth;  // empty when beyond the oracle budget
  std::string girth_source;       // "oracle" or "certified"
  std::int64_t rounds = 0;
  std::int64_t max_bits = 0;
  RowStatus status = RowStatus::kOk;
  double wall_ms = 0;

  std::optional<double> ratio() const;
  bool safety_violation() const;
};

inline constexpr int kResultSchemaVersion = 1;

std::string csv_header();
std::string csv_line(const ResultRow& r);
void write_csv(std::ostream& out, const std::vector<ResultRow>& rows);
// The CSV with the wall-time column blanked, for reproducibility checks.
std::string strip_wall_time(const std::string& csv);

struct Quantiles {
  double min = 0, p50 = 0, p90 = 0, p95 = 0, max = 0;
};
Quantiles quantiles(std::vector<double> xs);

struct ExperimentSummary {
  std::size_t rows = 0;
  std::size_t with_oracle = 0;
  std::size_t safety_violations = 0;
  std::size_t aborts = 0;
  std::optional<Quantiles> ratio;
  std::optional<Quantiles> rounds;

  bool ok() const { return safety_violations == 0 && aborts == 0; }
};

ExperimentSummary summarize(const std::vector<ResultRow>& rows);
void print_summary(std::ostream& out, const ExperimentSummary& s);

// Runs every trial of one configuration; rows come back in seed order.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg);
ResultRow run_trial(const ExperimentConfig& cfg, const Graph& g, const std::string& instance,
                    std::uint64_t seed, std::optional<Distance> certified = std::nullopt);

struct SlopeFit {
  double slope = 0;
  double intercept = 0;
  double lo = 0;  // bootstrap 2.5% quantile of the slope
  double hi = 0;  // bootstrap 97.5% quantile
  std::size_t points = 0;
};

// Least squares of log(y) against log(x) with a pairs bootstrap.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y, int resamples = 1000,
                    std::uint64_t seed = 1);

}  // namespace cgirth

#endif  // CGIRTH_HARNESS_HPP_
