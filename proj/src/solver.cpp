#include "zomd/solver.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace zomd {

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class TwoPointSource final : public GradientSource {
 public:
  TwoPointSource(const StochasticProblem& problem, const NoiseModel& noise,
                 const SmoothingParams& params, std::uint64_t seed)
      : problem_(problem),
        noise_(noise),
        params_(params),
        xi_rs_(seed, kStreamXi),
        e1_rs_(seed, kStreamE1),
        e2_rs_(seed, kStreamE2) {}

  Sample at(const Vec& x, std::uint64_t) override {
    EstimatorDraw draw = make_draw(problem_, xi_rs_, e1_rs_, e2_rs_);
    Vec probe = x;
    axpy(params_.tau, draw.e1, probe);
    axpy(params_.mu, draw.e2, probe);
    Vec g = two_point_gradient(problem_, noise_, x, params_, draw);
    return {std::move(g), std::move(probe)};
  }

 private:
  const StochasticProblem& problem_;
  const NoiseModel& noise_;
  SmoothingParams params_;
  RandomStream xi_rs_, e1_rs_, e2_rs_;
};

class ExactMeanSource final : public GradientSource {
 public:
  explicit ExactMeanSource(const StochasticProblem& problem)
      : problem_(problem) {
    if (!problem.exact_mean_grad)
      throw std::invalid_argument(
          "exact_mean gradient source: problem has no closed-form gradient");
  }

  Sample at(const Vec& x, std::uint64_t) override {
    return {problem_.exact_mean_grad(x), x};
  }

 private:
  const StochasticProblem& problem_;
};

const char* to_string(NoiseModel::Kind k) {
  switch (k) {
    case NoiseModel::Kind::none: return "none";
    case NoiseModel::Kind::constant_plus: return "constant_plus";
    case NoiseModel::Kind::uniform: return "uniform";
    case NoiseModel::Kind::adversarial_align: return "adversarial_align";
  }
  return "?";
}

const char* to_string(StepRule::Kind k) {
  switch (k) {
    case StepRule::Kind::constant: return "constant";
    case StepRule::Kind::auto_constant: return "auto_constant";
    case StepRule::Kind::strongly_convex: return "strongly_convex";
  }
  return "?";
}

const char* to_string(FeasibleSet::Kind k) {
  switch (k) {
    case FeasibleSet::Kind::euclidean_ball: return "euclidean_ball";
    case FeasibleSet::Kind::box: return "box";
    case FeasibleSet::Kind::simplex: return "simplex";
  }
  return "?";
}

}  // namespace

std::string TraceMeta::fingerprint() const {
  std::ostringstream os;
  os << problem_name << '|' << dim << '|' << fmt_double(lipschitz) << '|'
     << (gamma ? fmt_double(*gamma) : "-") << '|' << fmt_double(epsilon) << '|'
     << fmt_double(tau) << '|' << fmt_double(mu) << '|' << noise_kind << '|'
     << fmt_double(delta) << '|' << prox_kind << '|' << set_kind << '|'
     << step_rule << '|' << fmt_double(h) << '|' << fmt_double(step_gamma)
     << '|' << gradient_kind << '|'
     << report_points << '|' << iterations << '|' << fmt_double(f_star) << '|'
     << fmt_double(r_squared) << '|' << fmt_double(m_tilde_sq);
  return os.str();
}

double Trace::final_running_regret() const {
  if (running_regret_center.empty())
    throw std::invalid_argument("trace is empty");
  return running_regret_center.back();
}

double step_size_constant(double R, double M_tilde, std::uint64_t N) {
  if (!(R > 0.0) || !(M_tilde > 0.0) || N == 0)
    throw std::invalid_argument("step_size_constant: inputs must be positive");
  return R / M_tilde * std::sqrt(2.0 / static_cast<double>(N));
}

double step_size_strongly_convex(double gamma, std::uint64_t k) {
  if (!(gamma > 0.0) || k == 0)
    throw std::invalid_argument(
        "step_size_strongly_convex: gamma > 0 and k >= 1 required");
  return 1.0 / (gamma * static_cast<double>(k));
}

Trace run_with_source(const StochasticProblem& problem, const ProxSetup& prox,
                      const SmoothingParams& params, const RunConfig& config,
                      GradientSource& source, const NoiseModel& noise) {
  if (config.iterations == 0)
    throw std::invalid_argument("run: iterations must be >= 1");
  if (config.step.kind == StepRule::Kind::strongly_convex &&
      prox.prox_kind() != ProxKind::euclidean)
    throw std::invalid_argument(
        "run: the strongly convex schedule requires the euclidean prox");

  const std::uint64_t N = config.iterations;
  const bool has_opt = problem.optimum.has_value();
  const double f_star =
      has_opt ? problem.optimum->f_star : std::numeric_limits<double>::quiet_NaN();

  double h_const = config.step.h;
  double r2 = std::numeric_limits<double>::quiet_NaN();
  const double m_tilde_sq =
      second_moment_bound(prox.q(), problem.n, problem.lipschitz);
  if (has_opt) r2 = initial_radius_sq(prox, problem.optimum->x_star);
  if (config.step.kind == StepRule::Kind::auto_constant) {
    if (!has_opt || !(r2 > 0.0))
      throw std::invalid_argument(
          "run: auto_constant step needs a known minimizer with R > 0");
    h_const = step_size_constant(std::sqrt(r2), std::sqrt(m_tilde_sq), N);
  } else if (config.step.kind == StepRule::Kind::constant) {
    if (!(h_const > 0.0))
      throw std::invalid_argument("run: constant step needs h > 0");
  } else if (!(config.step.gamma > 0.0)) {
    throw std::invalid_argument("run: strongly_convex step needs gamma > 0");
  }

  Trace t;
  t.meta.problem_name = problem.name;
  t.meta.dim = problem.n;
  t.meta.lipschitz = problem.lipschitz;
  t.meta.gamma = problem.strong_convexity;
  t.meta.epsilon = params.epsilon;
  t.meta.tau = params.tau;
  t.meta.mu = params.mu;
  t.meta.noise_kind = to_string(noise.kind);
  t.meta.delta = noise.delta_bound;
  t.meta.prox_kind =
      prox.prox_kind() == ProxKind::euclidean ? "euclidean" : "entropy";
  t.meta.set_kind = to_string(prox.feasible_set().kind());
  t.meta.step_rule = to_string(config.step.kind);
  t.meta.h = config.step.kind == StepRule::Kind::strongly_convex ? 0.0 : h_const;
  t.meta.step_gamma =
      config.step.kind == StepRule::Kind::strongly_convex ? config.step.gamma
                                                          : 0.0;
  t.meta.gradient_kind =
      config.gradient == GradientKind::two_point ? "two_point" : "exact_mean";
  t.meta.report_points =
      config.report_points == ReportPoints::center ? "center" : "perturbed";
  t.meta.iterations = N;
  t.meta.seed = config.seed;
  t.meta.f_star = f_star;
  t.meta.r_squared = r2;
  t.meta.m_tilde_sq = m_tilde_sq;

  t.f_center.reserve(N);
  t.f_perturbed.reserve(N);
  t.running_regret_center.reserve(N);
  t.running_regret_perturbed.reserve(N);
  t.dual_norm_g.reserve(N);
  t.v_to_xstar.reserve(N);
  if (config.record_iterates) t.iterates.reserve(N);

  Vec x = prox.prox_center();
  const double q = prox.q();
  double sum_center = 0.0, sum_perturbed = 0.0;

  for (std::uint64_t k = 0; k < N; ++k) {
    GradientSource::Sample s = source.at(x, k);

    t.f_center.push_back(problem.exact_mean(x));
    t.f_perturbed.push_back(problem.exact_mean(s.probe));
    sum_center += t.f_center.back() - f_star;
    sum_perturbed += t.f_perturbed.back() - f_star;
    const double inv_k1 = 1.0 / static_cast<double>(k + 1);
    t.running_regret_center.push_back(sum_center * inv_k1);
    t.running_regret_perturbed.push_back(sum_perturbed * inv_k1);
    t.dual_norm_g.push_back(dual_norm(s.g, q));
    t.v_to_xstar.push_back(
        has_opt ? bregman(prox, problem.optimum->x_star, x)
                : std::numeric_limits<double>::quiet_NaN());
    if (config.record_iterates) t.iterates.push_back(x);

    const double h =
        config.step.kind == StepRule::Kind::strongly_convex
            ? step_size_strongly_convex(config.step.gamma, k + 1)
            : h_const;
    x = mirror_step(prox, x, s.g, h);
  }
  return t;
}

Trace run(const StochasticProblem& problem, const NoiseModel& noise,
          const ProxSetup& prox, const SmoothingParams& params,
          const RunConfig& config) {
  if (config.gradient == GradientKind::two_point) {
    TwoPointSource source(problem, noise, params, config.seed);
    return run_with_source(problem, prox, params, config, source, noise);
  }
  ExactMeanSource source(problem);
  return run_with_source(problem, prox, params, config, source, noise);
}

double regret_of_trace(const Trace& trace, double f_star) {
  if (trace.f_center.empty()) throw std::invalid_argument("trace is empty");
  double s = 0.0;
  for (double v : trace.f_center) s += v - f_star;
  return s / static_cast<double>(trace.f_center.size());
}

std::string trace_csv(const Trace& trace) {
  const bool center = trace.meta.report_points != "perturbed";
  const auto& f = center ? trace.f_center : trace.f_perturbed;
  const auto& rr =
      center ? trace.running_regret_center : trace.running_regret_perturbed;
  std::ostringstream os;
  os << "k,F_xk,running_regret,dual_norm_g,V_to_xstar\n";
  for (std::size_t k = 0; k < trace.size(); ++k) {
    os << k << ',' << fmt_double(f[k]) << ',' << fmt_double(rr[k]) << ','
       << fmt_double(trace.dual_norm_g[k]) << ','
       << fmt_double(trace.v_to_xstar[k]) << '\n';
  }
  return os.str();
}

}  // namespace zomd
