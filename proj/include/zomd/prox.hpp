#pragma once

#include <cstddef>
#include <limits>

#include "zomd/random.hpp"
#include "zomd/vec.hpp"

namespace zomd {

/// Convex feasible set Q. Three variants: Euclidean ball, axis-aligned box
/// (bounds may be infinite, so a box doubles as the whole space) and the
/// probability simplex.
class FeasibleSet {
 public:
  enum class Kind { euclidean_ball, box, simplex };

  static FeasibleSet euclidean_ball(Vec center, double radius);
  static FeasibleSet box(Vec lower, Vec upper);
  static FeasibleSet simplex(std::size_t n);

  Kind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  bool contains(const Vec& x, double tol = 1e-12) const;

  /// Euclidean projection onto the set.
  Vec project(const Vec& x) const;

  /// Euclidean distance to the set, zero inside.
  double distance(const Vec& x) const;

  /// A random feasible point (uniform for ball/box, Dirichlet(1) for the
  /// simplex). Throws for boxes with infinite bounds.
  Vec sample(RandomStream& rs) const;

  const Vec& center() const { return a_; }
  double radius() const { return radius_; }
  const Vec& lower() const { return a_; }
  const Vec& upper() const { return b_; }

 private:
  FeasibleSet(Kind k, std::size_t n) : kind_(k), dim_(n) {}

  Kind kind_;
  std::size_t dim_;
  Vec a_;  // ball center / box lower
  Vec b_;  // box upper
  double radius_ = 0.0;
};

enum class ProxKind { euclidean, entropy };

constexpr double kInfiniteExponent = std::numeric_limits<double>::infinity();

/// Norm pair (p, q) plus the distance-generating function d and its center.
/// Two supported geometries:
///   euclidean: p = 2, d(x) = 0.5*||x - x0||_2^2, ball or box sets;
///   entropy:   p = 1, d(x) = sum_i x_i ln x_i + ln n on the simplex,
///              x0 = barycenter (so d(x0) = 0).
class ProxSetup {
 public:
  static ProxSetup euclidean(FeasibleSet set, Vec prox_center);
  static ProxSetup entropy(std::size_t n);

  double p() const { return p_; }
  double q() const { return p_ == 2.0 ? 2.0 : kInfiniteExponent; }
  ProxKind prox_kind() const { return prox_kind_; }
  const FeasibleSet& feasible_set() const { return set_; }
  const Vec& prox_center() const { return center_; }

  /// d(x); nonnegative on the feasible set, zero at the prox center.
  double prox_function(const Vec& x) const;

 private:
  ProxSetup(double p, ProxKind k, FeasibleSet set, Vec center);

  double p_;
  ProxKind prox_kind_;
  FeasibleSet set_;
  Vec center_;
};

/// Bregman divergence V(x, z) = d(x) - d(z) - <grad d(z), x - z>.
/// Entropy setup requires z strictly positive (throws std::domain_error on a
/// zero coordinate, which signals an iterate left the relative interior).
double bregman(const ProxSetup& setup, const Vec& x, const Vec& z);

/// One mirror-descent step: argmin_u { <h*v, u - x> + V(u, x) } over the
/// feasible set. Closed form in both geometries. The entropy step rescales
/// by the max exponent before exponentiating, so ||h*v||_inf up to 700 is
/// safe.
Vec mirror_step(const ProxSetup& setup, const Vec& x, const Vec& v, double h);

/// l_q norm for q in [2, inf]; q = inf gives max |v_i|.
double dual_norm(const Vec& v, double q);

/// R^2 = V(x_star, prox_center).
double initial_radius_sq(const ProxSetup& setup, const Vec& x_star);

}  // namespace zomd
