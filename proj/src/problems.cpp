#include "zomd/problems.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace zomd {

namespace {

std::uint64_t hash_doubles(std::uint64_t h, const Vec& v) {
  for (double d : v) {
    std::uint64_t bits;
    std::memcpy(&bits, &d, sizeof(bits));
    h = detail::mix64(h ^ bits) + 0x9e3779b97f4a7c15ULL;
  }
  return h;
}

Vec unit_or_zero(const Vec& v) {
  double nrm = norm2(v);
  if (nrm == 0.0) return Vec(v.size(), 0.0);
  return scaled(v, 1.0 / nrm);
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

double NoiseModel::value(const Vec& x, const Vec& xi, ProbeContext ctx) const {
  switch (kind) {
    case Kind::none:
      return 0.0;
    case Kind::constant_plus:
      return delta_bound;
    case Kind::uniform: {
      std::uint64_t h = hash_doubles(0x243f6a8885a308d3ULL, x);
      h = hash_doubles(h, xi);
      double u = static_cast<double>(h >> 11) * 0x1.0p-53;
      return delta_bound * (2.0 * u - 1.0);
    }
    case Kind::adversarial_align:
      return ctx == ProbeContext::pair_base ? -delta_bound : delta_bound;
  }
  return 0.0;
}

double observe(const StochasticProblem& problem, const NoiseModel& noise,
               const Vec& x, const Vec& xi, ProbeContext ctx) {
  if (!problem.in_domain(x)) {
    std::ostringstream msg;
    msg << "observe: point left the oracle domain of '" << problem.name
        << "' (distance to feasible set "
        << problem.domain->set.distance(x) << " > margin "
        << problem.domain->margin << ")";
    throw std::domain_error(msg.str());
  }
  double d = noise.value(x, xi, ctx);
  d = std::clamp(d, -noise.delta_bound, noise.delta_bound);
  return problem.realize(x, xi) + d;
}

StochasticProblem make_max_affine(std::vector<Vec> pieces, Vec offsets,
                                  XiLaw xi_law, std::optional<Optimum> opt) {
  if (pieces.empty()) throw std::invalid_argument("max_affine: no pieces");
  if (offsets.size() != pieces.size())
    throw std::invalid_argument("max_affine: offsets size mismatch");
  const std::size_t n = pieces.front().size();
  double M = 0.0;
  for (const Vec& a : pieces) {
    if (a.size() != n)
      throw std::invalid_argument("max_affine: piece dimension mismatch");
    M = std::max(M, norm2(a));
  }

  StochasticProblem p;
  p.name = "max_affine";
  p.n = n;
  p.lipschitz = M;
  p.xi_law = xi_law;
  auto value = [pieces, offsets](const Vec& x) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pieces.size(); ++j)
      best = std::max(best, dot(pieces[j], x) + offsets[j]);
    return best;
  };
  p.realize = [value](const Vec& x, const Vec& xi) {
    return value(x) + (xi.empty() ? 0.0 : xi[0]);
  };
  p.exact_mean = value;
  p.exact_mean_grad = [pieces, offsets](const Vec& x) {
    std::size_t arg = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pieces.size(); ++j) {
      double v = dot(pieces[j], x) + offsets[j];
      if (v > best) {
        best = v;
        arg = j;
      }
    }
    return pieces[arg];
  };
  if (pieces.size() == 1) {
    Vec a = pieces.front();
    p.smoothed_grad = [a](const Vec&, double, double) { return a; };
  }
  p.optimum = std::move(opt);
  return p;
}

StochasticProblem make_constant(std::size_t n, double c, XiLaw xi_law) {
  StochasticProblem p;
  p.name = "constant";
  p.n = n;
  p.lipschitz = 0.0;
  p.xi_law = xi_law;
  p.realize = [c](const Vec&, const Vec& xi) {
    return c + (xi.empty() ? 0.0 : xi[0]);
  };
  p.exact_mean = [c](const Vec&) { return c; };
  p.exact_mean_grad = [n](const Vec&) { return Vec(n, 0.0); };
  p.smoothed_grad = [n](const Vec&, double, double) { return Vec(n, 0.0); };
  return p;
}

namespace {

StochasticProblem make_l2_distance(std::size_t n, double M, double s,
                                   Vec x_star) {
  StochasticProblem p;
  p.name = "l2_distance";
  p.n = n;
  p.lipschitz = M;
  p.xi_law = {XiLaw::Kind::rademacher_scalar, 0, s};
  Vec u(n, 0.0);
  u[0] = 1.0;
  p.realize = [M, u, x_star](const Vec& x, const Vec& xi) {
    Vec z = sub(x, x_star);
    if (!xi.empty()) axpy(-xi[0], u, z);
    return M * norm2(z);
  };
  p.exact_mean = [M, s, u, x_star](const Vec& x) {
    Vec z = sub(x, x_star);
    Vec zm = z, zp = z;
    axpy(-s, u, zm);
    axpy(s, u, zp);
    return 0.5 * M * (norm2(zm) + norm2(zp));
  };
  p.exact_mean_grad = [M, s, u, x_star](const Vec& x) {
    Vec z = sub(x, x_star);
    Vec zm = z, zp = z;
    axpy(-s, u, zm);
    axpy(s, u, zp);
    Vec g = unit_or_zero(zm);
    axpy(1.0, unit_or_zero(zp), g);
    return scaled(g, 0.5 * M);
  };
  p.optimum = Optimum{x_star, M * s};
  return p;
}

StochasticProblem make_l1_weighted(std::size_t n, double M, double s,
                                   Vec x_star) {
  StochasticProblem p;
  p.name = "l1_weighted";
  p.n = n;
  p.lipschitz = M;
  p.xi_law = {XiLaw::Kind::gaussian_scalar, 0, s};
  const double w = M / static_cast<double>(n);
  p.realize = [w, x_star](const Vec& x, const Vec& xi) {
    return w * norm1(sub(x, x_star)) + (xi.empty() ? 0.0 : xi[0]);
  };
  p.exact_mean = [w, x_star](const Vec& x) { return w * norm1(sub(x, x_star)); };
  p.exact_mean_grad = [w, x_star](const Vec& x) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = w * sign(x[i] - x_star[i]);
    return g;
  };
  p.optimum = Optimum{x_star, 0.0};
  return p;
}

StochasticProblem make_quadratic(std::size_t n, double M, double gamma,
                                 double rho, Vec x_star) {
  StochasticProblem p;
  p.name = "strongly_convex_quadratic";
  p.n = n;
  p.lipschitz = M;
  p.strong_convexity = gamma;
  p.xi_law = {XiLaw::Kind::ball_vector, n, rho};
  p.realize = [gamma, x_star](const Vec& x, const Vec& xi) {
    double v = 0.5 * gamma * norm2_sq(sub(x, x_star));
    if (!xi.empty()) v += dot(xi, x);
    return v;
  };
  p.exact_mean = [gamma, x_star](const Vec& x) {
    return 0.5 * gamma * norm2_sq(sub(x, x_star));
  };
  p.exact_mean_grad = [gamma, x_star](const Vec& x) {
    return scaled(sub(x, x_star), gamma);
  };
  // centered smoothing of a quadratic only shifts it by a constant
  p.smoothed_grad = [gamma, x_star](const Vec& x, double, double) {
    return scaled(sub(x, x_star), gamma);
  };
  p.optimum = Optimum{x_star, 0.0};
  return p;
}

}  // namespace

StochasticProblem builtin_problem(const std::string& name, std::size_t n,
                                  double M, std::optional<double> gamma,
                                  const BuiltinOptions& opts) {
  if (n == 0) throw std::invalid_argument("builtin_problem: n must be >= 1");
  if (!(M > 0.0)) throw std::invalid_argument("builtin_problem: M must be > 0");

  if (name == "l2_distance") {
    Vec x_star = opts.x_star.value_or([n] {
      Vec v(n, 0.0);
      v[0] = 0.5;
      return v;
    }());
    return make_l2_distance(n, M, opts.xi_scale.value_or(0.1), x_star);
  }
  if (name == "l1_weighted") {
    Vec x_star = opts.x_star.value_or([n] {
      if (n == 1) return Vec{1.0};
      Vec v(n, 0.3 / static_cast<double>(n - 1));
      v[0] = 0.7;
      return v;
    }());
    return make_l1_weighted(n, M, opts.xi_scale.value_or(0.1), x_star);
  }
  if (name == "max_affine") {
    Vec x_star = opts.x_star.value_or(Vec(n, 0.0));
    std::vector<Vec> pieces;
    Vec offsets;
    for (std::size_t i = 0; i < n; ++i) {
      for (double sgn : {1.0, -1.0}) {
        Vec a(n, 0.0);
        a[i] = sgn * M;
        offsets.push_back(-dot(a, x_star));
        pieces.push_back(std::move(a));
      }
    }
    XiLaw law{XiLaw::Kind::gaussian_scalar, 0, opts.xi_scale.value_or(0.1)};
    auto p = make_max_affine(std::move(pieces), std::move(offsets), law,
                             Optimum{x_star, 0.0});
    return p;
  }
  if (name == "strongly_convex_quadratic") {
    if (!gamma || !(*gamma > 0.0))
      throw std::invalid_argument(
          "strongly_convex_quadratic needs gamma > 0");
    Vec x_star = opts.x_star.value_or(Vec(n, 0.25));
    return make_quadratic(n, M, *gamma, opts.xi_scale.value_or(0.5 * M),
                          x_star);
  }
  throw std::invalid_argument("builtin_problem: unknown problem '" + name +
                              "'");
}

}  // namespace zomd
