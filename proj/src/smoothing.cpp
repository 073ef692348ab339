#include "zomd/smoothing.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace zomd {

SmoothingParams choose_params(double epsilon, double M, std::size_t n) {
  if (!(epsilon > 0.0) || !(M > 0.0) || n == 0)
    throw std::invalid_argument("choose_params: epsilon, M, n must be positive");
  SmoothingParams p;
  p.epsilon = epsilon;
  p.lipschitz = M;
  p.dim = n;
  p.tau = epsilon / (4.0 * M);
  p.mu = epsilon / (4.0 * M * static_cast<double>(n));
  return p;
}

double noise_threshold(double epsilon, double M, double R, std::size_t n,
                       double first_branch_constant) {
  if (!(epsilon > 0.0) || !(M > 0.0) || !(R > 0.0) || n == 0)
    throw std::invalid_argument("noise_threshold: inputs must be positive");
  const double n32 = std::pow(static_cast<double>(n), 1.5);
  return std::min(epsilon * epsilon / (first_branch_constant * M * R * n32),
                  epsilon / (7.0 * n32));
}

double c_q_constant(double q, std::size_t n) {
  if (!(q >= 2.0))
    throw std::invalid_argument("c_q_constant: q must be in [2, inf]");
  if (n == 0) throw std::invalid_argument("c_q_constant: n must be >= 1");
  if (n == 1) {
    if (std::isinf(q))
      throw std::invalid_argument("c_q_constant: q = inf needs n >= 2");
    return q - 1.0;
  }
  double log_branch = 4.0 * std::log(static_cast<double>(n));
  if (std::isinf(q)) return log_branch;
  return std::min(q - 1.0, log_branch);
}

double second_moment_bound(double q, std::size_t n, double M) {
  const double n_pow =
      std::isinf(q) ? 1.0 : std::pow(static_cast<double>(n), 2.0 / q);
  return 12.0 * c_q_constant(q, n) * n_pow * M * M;
}

std::uint64_t iteration_count(double epsilon, double M, double R,
                              std::size_t n, double q) {
  if (!(epsilon > 0.0) || !(M > 0.0) || !(R > 0.0))
    throw std::invalid_argument("iteration_count: inputs must be positive");
  const double m2 = second_moment_bound(q, n, M);
  const double value = 32.0 * m2 * R * R / (epsilon * epsilon);
  return static_cast<std::uint64_t>(std::ceil(value));
}

EstimatorDraw make_draw(const StochasticProblem& problem, RandomStream& xi_rs,
                        RandomStream& e1_rs, RandomStream& e2_rs) {
  EstimatorDraw d;
  d.xi = sample_xi(problem.xi_law, xi_rs);
  d.e1 = sample_ball(problem.n, e1_rs);
  d.e2 = sample_sphere(problem.n, e2_rs);
  return d;
}

EstimatorDraw make_draw(const StochasticProblem& problem, RandomStream& rs) {
  return make_draw(problem, rs, rs, rs);
}

namespace {

[[noreturn]] void rethrow_with_probe(const std::domain_error& e,
                                     const SmoothingParams& params,
                                     const Vec& probe) {
  std::ostringstream msg;
  msg << e.what() << "; probe point with tau=" << params.tau
      << ", mu=" << params.mu << " was (";
  for (std::size_t i = 0; i < probe.size(); ++i)
    msg << (i ? "," : "") << probe[i];
  msg << ")";
  throw std::domain_error(msg.str());
}

}  // namespace

Vec two_point_gradient(const StochasticProblem& problem,
                       const NoiseModel& noise, const Vec& x,
                       const SmoothingParams& params,
                       const EstimatorDraw& draw) {
  Vec base = x;
  axpy(params.tau, draw.e1, base);
  Vec shifted = base;
  axpy(params.mu, draw.e2, shifted);
  double f_shifted = 0.0, f_base = 0.0;
  try {
    f_shifted =
        observe(problem, noise, shifted, draw.xi, ProbeContext::pair_shifted);
    f_base = observe(problem, noise, base, draw.xi, ProbeContext::pair_base);
  } catch (const std::domain_error& e) {
    rethrow_with_probe(e, params, shifted);
  }
  const double c =
      static_cast<double>(params.dim) / params.mu * (f_shifted - f_base);
  return scaled(draw.e2, c);
}

MeanWithError smoothed_value_mc(const StochasticProblem& problem, const Vec& x,
                                double tau, double mu, std::uint64_t samples,
                                RandomStream& rs) {
  if (samples == 0)
    throw std::invalid_argument("smoothed_value_mc: samples must be >= 1");
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    Vec xi = sample_xi(problem.xi_law, rs);
    Vec p = x;
    if (tau != 0.0) axpy(tau, sample_ball(problem.n, rs), p);
    if (mu != 0.0) axpy(mu, sample_ball(problem.n, rs), p);
    double v = problem.realize(p, xi);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / static_cast<double>(samples);
  double var = 0.0;
  if (samples > 1)
    var = std::max(0.0, (sum_sq - sum * mean) / static_cast<double>(samples - 1));
  return {mean, std::sqrt(var / static_cast<double>(samples)), samples};
}

}  // namespace zomd
