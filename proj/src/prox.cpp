#include "zomd/prox.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace zomd {

namespace {

// x ln x with the 0 ln 0 = 0 convention
inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void check_dim(const Vec& x, std::size_t n, const char* what) {
  if (x.size() != n)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

}  // namespace

FeasibleSet FeasibleSet::euclidean_ball(Vec center, double radius) {
  if (radius <= 0.0)
    throw std::invalid_argument("euclidean_ball: radius must be positive");
  FeasibleSet s(Kind::euclidean_ball, center.size());
  s.a_ = std::move(center);
  s.radius_ = radius;
  return s;
}

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size())
    throw std::invalid_argument("box: bound dimensions differ");
  for (std::size_t i = 0; i < lower.size(); ++i)
    if (!(lower[i] <= upper[i]))
      throw std::invalid_argument("box: lower bound exceeds upper bound");
  FeasibleSet s(Kind::box, lower.size());
  s.a_ = std::move(lower);
  s.b_ = std::move(upper);
  return s;
}

FeasibleSet FeasibleSet::simplex(std::size_t n) {
  if (n == 0) throw std::invalid_argument("simplex: dimension must be >= 1");
  return FeasibleSet(Kind::simplex, n);
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
  if (x.size() != dim_) return false;
  switch (kind_) {
    case Kind::euclidean_ball:
      return norm2(sub(x, a_)) <= radius_ + tol;
    case Kind::box:
      for (std::size_t i = 0; i < dim_; ++i)
        if (x[i] < a_[i] - tol || x[i] > b_[i] + tol) return false;
      return true;
    case Kind::simplex: {
      double s = 0.0;
      for (double v : x) {
        if (v < -tol) return false;
        s += v;
      }
      return std::fabs(s - 1.0) <= tol;
    }
  }
  return false;
}

Vec FeasibleSet::project(const Vec& x) const {
  check_dim(x, dim_, "project");
  switch (kind_) {
    case Kind::euclidean_ball: {
      Vec d = sub(x, a_);
      double nrm = norm2(d);
      if (nrm <= radius_) return x;
      Vec r = a_;
      axpy(radius_ / nrm, d, r);
      return r;
    }
    case Kind::box: {
      Vec r(dim_);
      for (std::size_t i = 0; i < dim_; ++i)
        r[i] = std::min(std::max(x[i], a_[i]), b_[i]);
      return r;
    }
    case Kind::simplex: {
      // sort-based projection onto {u >= 0, sum u = 1}
      Vec u = x;
      std::sort(u.begin(), u.end(), std::greater<double>());
      double cum = 0.0, theta = 0.0;
      std::size_t rho = 0;
      for (std::size_t j = 0; j < dim_; ++j) {
        cum += u[j];
        double t = (cum - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) {
          rho = j + 1;
          theta = t;
        }
      }
      (void)rho;
      Vec r(dim_);
      for (std::size_t i = 0; i < dim_; ++i) r[i] = std::max(x[i] - theta, 0.0);
      return r;
    }
  }
  return x;
}

double FeasibleSet::distance(const Vec& x) const {
  check_dim(x, dim_, "distance");
  if (kind_ == Kind::euclidean_ball)
    return std::max(0.0, norm2(sub(x, a_)) - radius_);
  return norm2(sub(x, project(x)));
}

Vec FeasibleSet::sample(RandomStream& rs) const {
  switch (kind_) {
    case Kind::euclidean_ball: {
      Vec e = sample_ball(dim_, rs);
      Vec r = a_;
      axpy(radius_, e, r);
      return r;
    }
    case Kind::box: {
      Vec r(dim_);
      for (std::size_t i = 0; i < dim_; ++i) {
        if (!std::isfinite(a_[i]) || !std::isfinite(b_[i]))
          throw std::domain_error("sample: box has infinite bounds");
        r[i] = a_[i] + (b_[i] - a_[i]) * rs.uniform01();
      }
      return r;
    }
    case Kind::simplex: {
      // normalized standard exponentials = Dirichlet(1,...,1)
      Vec r(dim_);
      double s = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) {
        r[i] = -std::log(rs.uniform_open01());
        s += r[i];
      }
      for (double& v : r) v /= s;
      return r;
    }
  }
  return {};
}

ProxSetup::ProxSetup(double p, ProxKind k, FeasibleSet set, Vec center)
    : p_(p), prox_kind_(k), set_(std::move(set)), center_(std::move(center)) {
  check_dim(center_, set_.dim(), "prox_center");
  if (!set_.contains(center_, 1e-9))
    throw std::invalid_argument("prox_center must be feasible");
  if (prox_kind_ == ProxKind::euclidean) {
    if (p_ != 2.0)
      throw std::invalid_argument("euclidean prox requires p = 2");
    if (set_.kind() == FeasibleSet::Kind::simplex)
      throw std::invalid_argument(
          "euclidean prox supports ball/box sets; use entropy on the simplex");
  } else {
    if (p_ != 1.0) throw std::invalid_argument("entropy prox requires p = 1");
    if (set_.kind() != FeasibleSet::Kind::simplex)
      throw std::invalid_argument("entropy prox requires the simplex");
  }
}

ProxSetup ProxSetup::euclidean(FeasibleSet set, Vec prox_center) {
  return ProxSetup(2.0, ProxKind::euclidean, std::move(set),
                   std::move(prox_center));
}

ProxSetup ProxSetup::entropy(std::size_t n) {
  Vec center(n, 1.0 / static_cast<double>(n));
  return ProxSetup(1.0, ProxKind::entropy, FeasibleSet::simplex(n),
                   std::move(center));
}

double ProxSetup::prox_function(const Vec& x) const {
  check_dim(x, set_.dim(), "prox_function");
  if (prox_kind_ == ProxKind::euclidean) return 0.5 * norm2_sq(sub(x, center_));
  double s = 0.0;
  for (double v : x) s += xlogx(v);
  return s + std::log(static_cast<double>(set_.dim()));
}

double bregman(const ProxSetup& setup, const Vec& x, const Vec& z) {
  check_dim(x, setup.feasible_set().dim(), "bregman");
  check_dim(z, setup.feasible_set().dim(), "bregman");
  if (setup.prox_kind() == ProxKind::euclidean) return 0.5 * norm2_sq(sub(x, z));
  // generalized KL; the linear tail vanishes on the simplex
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (z[i] <= 0.0)
      throw std::domain_error(
          "bregman: entropy prox needs z strictly positive (iterate left the "
          "relative interior)");
    if (x[i] > 0.0) s += x[i] * std::log(x[i] / z[i]);
    s += z[i] - x[i];
  }
  return std::max(s, 0.0);
}

Vec mirror_step(const ProxSetup& setup, const Vec& x, const Vec& v, double h) {
  check_dim(x, setup.feasible_set().dim(), "mirror_step");
  check_dim(v, setup.feasible_set().dim(), "mirror_step");
  if (!(h > 0.0)) throw std::invalid_argument("mirror_step: h must be positive");
  if (setup.prox_kind() == ProxKind::euclidean) {
    Vec z = x;
    axpy(-h, v, z);
    return setup.feasible_set().project(z);
  }
  // multiplicative-weights update, rescaled to avoid exp overflow
  const std::size_t n = x.size();
  Vec w(n);
  double wmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = std::log(std::max(x[i], 1e-300)) - h * v[i];
    wmax = std::max(wmax, w[i]);
  }
  Vec u(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    u[i] = std::exp(w[i] - wmax);
    s += u[i];
  }
  for (double& c : u) c /= s;
  return u;
}

double dual_norm(const Vec& v, double q) {
  if (!(q >= 2.0)) throw std::invalid_argument("dual_norm: q must be in [2, inf]");
  if (std::isinf(q)) return norm_inf(v);
  if (q == 2.0) return norm2(v);
  double m = norm_inf(v);
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (double c : v) s += std::pow(std::fabs(c) / m, q);
  return m * std::pow(s, 1.0 / q);
}

double initial_radius_sq(const ProxSetup& setup, const Vec& x_star) {
  return bregman(setup, x_star, setup.prox_center());
}

}  // namespace zomd
