#pragma once

#include <cstdint>

#include "zomd/problems.hpp"
#include "zomd/random.hpp"
#include "zomd/vec.hpp"

namespace zomd {

/// Double-smoothing configuration: outer ball radius tau, inner sphere radius
/// mu, with tau = epsilon/(4M) and mu = tau/n.
struct SmoothingParams {
  double epsilon = 0.0;
  double lipschitz = 0.0;  // M
  std::size_t dim = 0;     // n
  double tau = 0.0;
  double mu = 0.0;
};

/// tau = epsilon/(4M), mu = epsilon/(4Mn). Throws on nonpositive inputs.
SmoothingParams choose_params(double epsilon, double M, std::size_t n);

/// Largest admissible bound on the non-random noise:
///   delta0 = min{ epsilon^2 / (first_branch_constant * M * R * n^(3/2)),
///                 epsilon / (7 * n^(3/2)) }.
/// The first-branch constant defaults to 56 and is exposed so the variant 64
/// can be probed as well.
double noise_threshold(double epsilon, double M, double R, std::size_t n,
                       double first_branch_constant = 56.0);

/// c_q = min{q - 1, 4 ln n}; for q = inf this is 4 ln n. For n = 1 the
/// logarithmic branch does not apply and c_q = q - 1 (q must be finite).
double c_q_constant(double q, std::size_t n);

/// Second-moment bound on the estimator in the dual norm:
/// M_tilde^2 = 12 * c_q * n^(2/q) * M^2 (n^(2/q) = 1 for q = inf).
double second_moment_bound(double q, std::size_t n, double M);

/// Iterations sufficient for accuracy epsilon:
/// N = ceil(384 * c_q * n^(2/q) * M^2 R^2 / epsilon^2), computed as
/// ceil(32 * M_tilde^2 * R^2 / epsilon^2) so the two routes agree exactly.
std::uint64_t iteration_count(double epsilon, double M, double R,
                              std::size_t n, double q);

/// Composite randomness of one estimator evaluation: xi plus a ball direction
/// e1 and a sphere direction e2. The same xi and e1 enter both oracle calls.
struct EstimatorDraw {
  Vec xi;
  Vec e1;  // uniform in the unit ball
  Vec e2;  // uniform on the unit sphere
};

EstimatorDraw make_draw(const StochasticProblem& problem, RandomStream& xi_rs,
                        RandomStream& e1_rs, RandomStream& e2_rs);
EstimatorDraw make_draw(const StochasticProblem& problem, RandomStream& rs);

/// Two-point stochastic gradient
///   g = (n/mu) * (f~(x + tau e1 + mu e2, xi) - f~(x + tau e1, xi)) * e2.
/// Always satisfies ||g||_2 <= n (M + 2 delta/mu).
Vec two_point_gradient(const StochasticProblem& problem,
                       const NoiseModel& noise, const Vec& x,
                       const SmoothingParams& params,
                       const EstimatorDraw& draw);

struct MeanWithError {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Monte-Carlo estimate of the double-smoothed mean
/// E f(x + tau e1 + mu e2, xi) over independent ball directions e1, e2 and
/// xi draws; mu = 0 gives the single-smoothed value.
MeanWithError smoothed_value_mc(const StochasticProblem& problem, const Vec& x,
                                double tau, double mu, std::uint64_t samples,
                                RandomStream& rs);

}  // namespace zomd
