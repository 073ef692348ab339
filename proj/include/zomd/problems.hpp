#pragma once

#include <functional>
#include <optional>
#include <string>

#include "zomd/prox.hpp"
#include "zomd/random.hpp"
#include "zomd/vec.hpp"

namespace zomd {

/// Which of the two paired oracle calls of one estimator evaluation is being
/// made. Lets a direction-dependent noise rule pick its sign.
enum class ProbeContext { generic, pair_base, pair_shifted };

struct Optimum {
  Vec x_star;
  double f_star = 0.0;
};

struct DomainGuard {
  FeasibleSet set;
  double margin = 0.0;  // max allowed Euclidean distance outside the set
};

/// Stochastic test problem: one realization f(x, xi), its exact mean F(x),
/// the Lipschitz constant of Eq-style condition |f(y,xi)-f(x,xi)| <= M*||y-x||_2,
/// and (when known) the minimizer over the feasible set. Realizations are
/// defined on all of R^n unless a domain guard is installed.
struct StochasticProblem {
  std::string name;
  std::size_t n = 0;
  double lipschitz = 0.0;                 // M
  std::optional<double> strong_convexity;  // gamma, l2 sense
  XiLaw xi_law;

  std::function<double(const Vec&, const Vec&)> realize;   // f(x, xi)
  std::function<double(const Vec&)> exact_mean;            // F(x)
  std::function<Vec(const Vec&)> exact_mean_grad;          // subgradient of F, may be empty
  // closed-form gradient of the double-smoothed mean, when one exists
  // (affine and quadratic problems); may be empty
  std::function<Vec(const Vec&, double, double)> smoothed_grad;

  std::optional<Optimum> optimum;
  std::optional<DomainGuard> domain;

  bool in_domain(const Vec& x) const {
    return !domain || domain->set.distance(x) <= domain->margin;
  }
};

/// Bounded non-random observation noise delta(x, xi), |delta| <= delta_bound.
///   none:             delta = 0
///   constant_plus:    delta = +delta_bound always
///   uniform:          delta = delta_bound * (2 u(x, xi) - 1) with u a hash of
///                     the arguments; deterministic in (x, xi), looks random
///   adversarial_align: +delta_bound at the shifted point of an estimator
///                     pair, -delta_bound at the base point, maximizing the
///                     corruption of the two-point difference
struct NoiseModel {
  enum class Kind { none, constant_plus, uniform, adversarial_align };
  Kind kind = Kind::none;
  double delta_bound = 0.0;

  double value(const Vec& x, const Vec& xi, ProbeContext ctx) const;
};

/// f~(x, xi) = f(x, xi) + delta(x, xi), clamped to |delta| <= delta_bound.
/// Throws std::domain_error when a domain guard is installed and x is farther
/// than the allowed margin from the feasible set.
double observe(const StochasticProblem& problem, const NoiseModel& noise,
               const Vec& x, const Vec& xi,
               ProbeContext ctx = ProbeContext::generic);

struct BuiltinOptions {
  std::optional<double> xi_scale;  // spread of the xi law
  std::optional<Vec> x_star;      // minimizer override
};

/// Built-in problems with documented closed-form means:
///   l2_distance: f = M ||x - x* - xi*u||_2, xi uniform on {-s, +s}, u = e1
///   l1_weighted: f = (M/n) sum |x_i - x*_i| + xi, xi ~ N(0, s^2)
///   max_affine:  f = M ||x - x*||_inf + xi (pieces +-M e_i), xi ~ N(0, s^2)
///   strongly_convex_quadratic: f = (gamma/2) ||x - x*||_2^2 + <xi, x>,
///                xi uniform on the ball of radius s (default M/2)
/// Unknown name -> std::invalid_argument.
StochasticProblem builtin_problem(const std::string& name, std::size_t n,
                                  double M,
                                  std::optional<double> gamma = std::nullopt,
                                  const BuiltinOptions& opts = {});

/// Explicit max-of-affine problem f = max_j <a_j, x> + b_j + xi. A single
/// piece gives an affine objective (used as the "linear" diagnostic case).
StochasticProblem make_max_affine(std::vector<Vec> pieces, Vec offsets,
                                  XiLaw xi_law,
                                  std::optional<Optimum> opt = std::nullopt);

/// Constant objective f = c (plus the xi law's additive value if scalar).
StochasticProblem make_constant(std::size_t n, double c, XiLaw xi_law = {});

}  // namespace zomd
