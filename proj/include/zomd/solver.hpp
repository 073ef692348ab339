#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zomd/problems.hpp"
#include "zomd/prox.hpp"
#include "zomd/smoothing.hpp"

namespace zomd {

/// Step-size schedules: a fixed h, the accuracy-optimal constant
/// h = (R/M_tilde) sqrt(2/N), or h_k = 1/(gamma k) for strongly convex means.
struct StepRule {
  enum class Kind { constant, auto_constant, strongly_convex };
  Kind kind = Kind::auto_constant;
  double h = 0.0;      // constant rule
  double gamma = 0.0;  // strongly_convex rule
};

enum class ReportPoints { center, perturbed };
enum class GradientKind { two_point, exact_mean };

// stream roles within one run
inline constexpr std::uint64_t kStreamXi = 1;
inline constexpr std::uint64_t kStreamE1 = 2;
inline constexpr std::uint64_t kStreamE2 = 3;

struct RunConfig {
  StepRule step;
  std::uint64_t iterations = 0;  // N >= 1
  double epsilon = 0.0;          // target accuracy, echoed in metadata
  std::uint64_t seed = 1;
  bool record_iterates = false;
  ReportPoints report_points = ReportPoints::center;
  GradientKind gradient = GradientKind::two_point;
};

struct TraceMeta {
  std::string problem_name;
  std::size_t dim = 0;
  double lipschitz = 0.0;
  std::optional<double> gamma;
  double epsilon = 0.0, tau = 0.0, mu = 0.0;
  std::string noise_kind;
  double delta = 0.0;
  std::string prox_kind, set_kind;
  std::string step_rule;
  double h = 0.0;          // constant/auto value; unused for strongly_convex
  double step_gamma = 0.0;  // strongly_convex schedule only
  std::string gradient_kind, report_points;
  std::uint64_t iterations = 0;
  std::uint64_t seed = 0;
  double f_star = std::numeric_limits<double>::quiet_NaN();
  double r_squared = std::numeric_limits<double>::quiet_NaN();
  double m_tilde_sq = std::numeric_limits<double>::quiet_NaN();

  /// All metadata except the seed; traces with equal fingerprints are
  /// replicates of the same experiment.
  std::string fingerprint() const;
};

/// Per-iteration record of one run. Objective values use the problem's exact
/// mean; running regrets are prefix means of F - F*.
struct Trace {
  TraceMeta meta;
  std::vector<double> f_center;             // F(x^k)
  std::vector<double> f_perturbed;          // F(x^k + tau e1^k + mu e2^k)
  std::vector<double> running_regret_center;
  std::vector<double> running_regret_perturbed;
  std::vector<double> dual_norm_g;          // ||g^k||_q
  std::vector<double> v_to_xstar;           // V(x*, x^k), NaN if x* unknown
  std::vector<Vec> iterates;                // filled when requested

  std::size_t size() const { return f_center.size(); }
  double final_running_regret() const;
};

/// h = (R / M_tilde) * sqrt(2 / N).
double step_size_constant(double R, double M_tilde, std::uint64_t N);

/// h_k = 1 / (gamma * k), k >= 1.
double step_size_strongly_convex(double gamma, std::uint64_t k);

/// Abstract per-iteration gradient source, so an exact-gradient oracle can
/// replace the two-point estimator in sanity runs.
class GradientSource {
 public:
  virtual ~GradientSource() = default;
  struct Sample {
    Vec g;
    Vec probe;  // point whose objective value is reported as "perturbed"
  };
  virtual Sample at(const Vec& x, std::uint64_t k) = 0;
};

/// Mirror-descent run x^{k+1} = Mirr_{x^k}(h_k g^k), k = 0..N-1, with a fresh
/// estimator draw each iteration. Deterministic given the seed.
Trace run(const StochasticProblem& problem, const NoiseModel& noise,
          const ProxSetup& prox, const SmoothingParams& params,
          const RunConfig& config);

/// Same loop with a caller-supplied gradient source.
Trace run_with_source(const StochasticProblem& problem, const ProxSetup& prox,
                      const SmoothingParams& params, const RunConfig& config,
                      GradientSource& source, const NoiseModel& noise);

/// (1/N) sum_k F(x^k) - F_star over the recorded centers.
double regret_of_trace(const Trace& trace, double f_star);

/// CSV serialization, header "k,F_xk,running_regret,dual_norm_g,V_to_xstar".
/// The F/regret columns follow the configured report points.
std::string trace_csv(const Trace& trace);

}  // namespace zomd
