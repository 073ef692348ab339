#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "zomd/diagnostics.hpp"
#include "zomd/problems.hpp"
#include "zomd/prox.hpp"
#include "zomd/solver.hpp"

namespace zomd::bench {

struct ProblemSpec {
  std::string name;
  std::size_t n = 0;
  double M = 1.0;
  std::optional<double> gamma;
  std::optional<double> xi_scale;
  std::optional<Vec> x_star;
  std::optional<double> domain_margin;

  bool operator==(const ProblemSpec&) const = default;
};

struct ProxSpec {
  std::string kind = "auto";  // auto | euclidean | entropy
  std::string set = "auto";   // auto | ball | box | simplex
  double radius = 1.0;
  std::optional<Vec> center;
  std::optional<Vec> lower;
  std::optional<Vec> upper;
  std::optional<Vec> x0;

  bool operator==(const ProxSpec&) const = default;
};

struct NoiseSpec {
  std::string kind = "none";
  double delta = 0.0;
  bool delta_in_delta0 = false;  // interpret delta as a multiple of delta0

  bool operator==(const NoiseSpec&) const = default;
};

struct StepSpec {
  std::string rule = "auto";  // auto | constant | strongly_convex
  double h = 0.0;
  std::optional<double> gamma;  // defaults to the problem's gamma

  bool operator==(const StepSpec&) const = default;
};

struct VerifySpec {
  std::uint64_t samples = 1000000;
  double bound_scale = 1.0;
  std::uint64_t seed = 90001;

  bool operator==(const VerifySpec&) const = default;
};

/// Declarative experiment description. Every field has a default except the
/// problem name and dimension. Serializes to/from JSON; the resolved form is
/// a fixpoint of (to_json . from_json).
struct ExperimentConfig {
  ProblemSpec problem;
  ProxSpec prox;
  double epsilon = 0.25;
  NoiseSpec noise;
  StepSpec step;
  std::uint64_t iterations = 0;  // 0 = use the prescribed count
  std::vector<std::uint64_t> seeds = {1};
  std::string report_points = "center";
  std::string gradient = "two_point";
  bool record_iterates = false;
  int workers = 1;
  std::string out_dir = "out";
  std::string label = "run";
  VerifySpec verify;

  bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);

/// Apply a "dotted.path=value" override onto raw config JSON; the value is
/// parsed as JSON when possible and as a string otherwise.
void apply_override(nlohmann::json& j, const std::string& key_eq_value);

/// Fully resolved runnable experiment.
struct BuiltExperiment {
  StochasticProblem problem;
  NoiseModel noise;
  ProxSetup prox;
  SmoothingParams params;
  StepRule step;
  double r_squared = 0.0;
  double delta0 = 0.0;
  double m_tilde_sq = 0.0;
  std::uint64_t prescribed_iterations = 0;  // from the accuracy target
  std::uint64_t iterations = 0;             // actually used
};

BuiltExperiment build_experiment(const ExperimentConfig& cfg);

/// Run one experiment for a given seed.
Trace run_seed(const BuiltExperiment& built, const ExperimentConfig& cfg,
               std::uint64_t seed);

nlohmann::json report_to_json(const VerificationReport& r);

/// Execute every seed and write one trace CSV per seed plus a metadata JSON.
/// Returns 0 on success.
int cmd_run(const ExperimentConfig& cfg, std::ostream& log);

/// Sweep one axis ("N", "delta" or "n") over the given values; writes a
/// summary CSV (one row per value per seed) plus a metadata JSON.
int cmd_sweep(const ExperimentConfig& cfg, const std::string& axis,
              const std::vector<double>& values, std::ostream& log);

/// Run the Monte-Carlo verification suite; prints one line per report and
/// writes a JSON report. Returns 0 iff every report passes.
int cmd_verify(const ExperimentConfig& cfg, std::ostream& log);

std::vector<VerificationReport> default_verify_suite(const VerifySpec& spec);

}  // namespace zomd::bench
