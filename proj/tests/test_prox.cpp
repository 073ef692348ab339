#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "zomd/prox.hpp"
#include "zomd/random.hpp"

using namespace zomd;

namespace {

ProxSetup ball_setup(std::size_t n, double radius = 1.0) {
  return ProxSetup::euclidean(FeasibleSet::euclidean_ball(Vec(n, 0.0), radius),
                              Vec(n, 0.0));
}

// prox objective of one mirror step
double step_objective(const ProxSetup& setup, const Vec& x, const Vec& v,
                      double h, const Vec& u) {
  return h * dot(v, sub(u, x)) + bregman(setup, u, x);
}

}  // namespace

TEST_CASE("bregman: euclidean closed forms") {
  auto setup = ball_setup(2);
  CHECK(bregman(setup, {0.3, 0.4}, {0.3, 0.4}) == 0.0);
  CHECK(bregman(setup, {1.0, 0.0}, {0.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("bregman: entropy equals KL on the simplex") {
  auto setup = ProxSetup::entropy(3);
  Vec x(3, 1.0 / 3.0);
  Vec z{0.5, 0.3, 0.2};
  // independent route: d(x) - d(z) - <grad d(z), x - z> with
  // d(u) = sum u_i ln u_i + ln 3 and grad d(z)_i = 1 + ln z_i
  auto d = [](const Vec& u) {
    double s = 0.0;
    for (double c : u) s += c > 0 ? c * std::log(c) : 0.0;
    return s + std::log(3.0);
  };
  double expected = d(x) - d(z);
  for (std::size_t i = 0; i < 3; ++i)
    expected -= (1.0 + std::log(z[i])) * (x[i] - z[i]);
  CHECK(expected == doctest::Approx(0.0702403437718841).epsilon(1e-12));
  CHECK(bregman(setup, x, z) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(bregman(setup, x, x) == 0.0);

  CHECK_THROWS_AS(bregman(setup, x, Vec{1.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("mirror_step: zero gradient keeps the point") {
  auto setup = ball_setup(3);
  Vec x{0.1, -0.2, 0.3};
  CHECK(mirror_step(setup, x, Vec(3, 0.0), 0.7) == x);

  auto ent = ProxSetup::entropy(3);
  Vec p{0.2, 0.5, 0.3};
  Vec stepped = mirror_step(ent, p, Vec(3, 0.0), 1.0);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(stepped[i] == doctest::Approx(p[i]).epsilon(1e-14));
}

TEST_CASE("mirror_step: euclidean ball projection") {
  auto setup = ball_setup(2);
  Vec out = mirror_step(setup, {0.0, 0.0}, {-3.0, 0.0}, 1.0);
  CHECK(out[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(out[1] == 0.0);
}

TEST_CASE("mirror_step: whole space equals the plain gradient step") {
  const double inf = std::numeric_limits<double>::infinity();
  auto setup = ProxSetup::euclidean(
      FeasibleSet::box(Vec(3, -inf), Vec(3, inf)), Vec(3, 0.0));
  Vec x{0.4, -1.0, 2.0};
  Vec v{1.5, 0.25, -3.0};
  double h = 0.3;
  Vec out = mirror_step(setup, x, v, h);
  for (std::size_t i = 0; i < 3; ++i) CHECK(out[i] == x[i] - h * v[i]);
}

TEST_CASE("mirror_step: entropy closed form on the 2-simplex") {
  auto setup = ProxSetup::entropy(2);
  Vec x{0.5, 0.5};
  Vec v{std::log(2.0), 0.0};
  Vec out = mirror_step(setup, x, v, 1.0);
  CHECK(out[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(out[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // independent check: golden-section on u = (t, 1-t)
  auto objective = [&](double t) {
    return step_objective(setup, x, v, 1.0, {t, 1.0 - t});
  };
  double lo = 1e-9, hi = 1.0 - 1e-9;
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 200; ++it) {
    double m1 = hi - phi * (hi - lo);
    double m2 = lo + phi * (hi - lo);
    if (objective(m1) < objective(m2)) hi = m2;
    else lo = m1;
  }
  double t_star = 0.5 * (lo + hi);
  CHECK(std::fabs(t_star - out[0]) <= 1e-6);
  CHECK(objective(out[0]) <= objective(t_star) + 1e-10);
}

TEST_CASE("mirror_step: survives huge exponents without overflow") {
  auto setup = ProxSetup::entropy(4);
  Vec x(4, 0.25);
  Vec v{700.0, -700.0, 350.0, 0.0};
  Vec out = mirror_step(setup, x, v, 1.0);
  double sum = 0.0;
  for (double c : out) {
    CHECK(std::isfinite(c));
    sum += c;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(setup.feasible_set().contains(out));
}

TEST_CASE("mirror_step optimality against random feasible candidates") {
  RandomStream rs(101, 1);
  auto ball = ball_setup(4);
  auto box = ProxSetup::euclidean(
      FeasibleSet::box(Vec(4, -0.5), Vec(4, 1.5)), Vec(4, 0.0));
  auto ent = ProxSetup::entropy(4);
  for (const ProxSetup& setup : {ball, box, ent}) {
    for (int inst = 0; inst < 350; ++inst) {
      Vec x = setup.feasible_set().sample(rs);
      if (setup.prox_kind() == ProxKind::entropy)
        for (double& c : x) c = std::max(c, 1e-9);
      Vec v(4);
      for (double& c : v) c = 4.0 * rs.gaussian();
      double h = 0.01 + rs.uniform01();
      Vec u = mirror_step(setup, x, v, h);
      CHECK(setup.feasible_set().contains(u, 1e-9));
      double best = step_objective(setup, x, v, h, u);
      for (int cand = 0; cand < 100; ++cand) {
        Vec w = setup.feasible_set().sample(rs);
        CHECK(best <= step_objective(setup, x, v, h, w) + 1e-9);
      }
    }
  }
}

TEST_CASE("entropy mirror_step stays in the relative interior") {
  RandomStream rs(103, 1);
  auto setup = ProxSetup::entropy(6);
  Vec x(6, 1.0 / 6.0);
  for (int k = 0; k < 1000; ++k) {
    Vec v(6);
    for (double& c : v) c = 10.0 * rs.gaussian();
    x = mirror_step(setup, x, v, 0.1);
    double sum = 0.0;
    for (double c : x) {
      CHECK(c > 0.0);
      sum += c;
    }
    CHECK(std::fabs(sum - 1.0) <= 1e-12);
  }
}

TEST_CASE("strong convexity of the prox: V >= 0.5 ||x-z||_p^2") {
  RandomStream rs(107, 1);
  auto eucl = ball_setup(5);
  for (int i = 0; i < 10000; ++i) {
    Vec x = eucl.feasible_set().sample(rs);
    Vec z = eucl.feasible_set().sample(rs);
    CHECK(bregman(eucl, x, z) >= 0.5 * norm2_sq(sub(x, z)) - 1e-12);
  }
  auto ent = ProxSetup::entropy(5);
  for (int i = 0; i < 10000; ++i) {
    Vec x = ent.feasible_set().sample(rs);
    Vec z = ent.feasible_set().sample(rs);
    for (double& c : z) c = std::max(c, 1e-12);
    double l1 = norm1(sub(x, z));
    CHECK(bregman(ent, x, z) >= 0.5 * l1 * l1 - 1e-12);
  }
}

TEST_CASE("dual_norm") {
  CHECK(dual_norm({3.0, 4.0}, 2.0) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(dual_norm({3.0, -4.0}, kInfiniteExponent) == 4.0);
  CHECK(dual_norm({1.0, 1.0, 1.0, 1.0}, 4.0) ==
        doctest::Approx(std::pow(4.0, 0.25)).epsilon(1e-12));
  CHECK(dual_norm({0.0, 0.0}, 3.0) == 0.0);
  CHECK_THROWS_AS(dual_norm({1.0}, 1.5), std::invalid_argument);
}

TEST_CASE("initial_radius_sq") {
  auto setup = ball_setup(2);
  CHECK(initial_radius_sq(setup, {0.0, 0.0}) == 0.0);
  CHECK(initial_radius_sq(setup, {0.6, 0.8}) ==
        doctest::Approx(0.5).epsilon(1e-12));

  auto ent = ProxSetup::entropy(2);
  CHECK(initial_radius_sq(ent, {1.0, 0.0}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("prox function is centered and nonnegative") {
  RandomStream rs(109, 1);
  auto eucl = ball_setup(3);
  CHECK(eucl.prox_function(eucl.prox_center()) == 0.0);
  auto ent = ProxSetup::entropy(3);
  CHECK(ent.prox_function(ent.prox_center()) ==
        doctest::Approx(0.0).epsilon(1e-15));
  for (int i = 0; i < 1000; ++i) {
    CHECK(eucl.prox_function(eucl.feasible_set().sample(rs)) >= 0.0);
    CHECK(ent.prox_function(ent.feasible_set().sample(rs)) >= -1e-12);
  }
}

TEST_CASE("unsupported geometry pairings are rejected") {
  CHECK_THROWS_AS(
      ProxSetup::euclidean(FeasibleSet::simplex(3), Vec(3, 1.0 / 3.0)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      ProxSetup::euclidean(FeasibleSet::euclidean_ball(Vec(2, 0.0), 1.0),
                           Vec{5.0, 5.0}),
      std::invalid_argument);
}

TEST_CASE("feasible set membership tolerances") {
  auto ball = FeasibleSet::euclidean_ball({0.0, 0.0}, 1.0);
  CHECK(ball.contains({1.0, 0.0}));
  CHECK(ball.contains({1.0 + 5e-13, 0.0}));
  CHECK_FALSE(ball.contains({1.001, 0.0}));

  auto simplex = FeasibleSet::simplex(3);
  CHECK(simplex.contains({0.2, 0.3, 0.5}));
  CHECK_FALSE(simplex.contains({0.2, 0.3, 0.6}));
  CHECK_FALSE(simplex.contains({-0.1, 0.6, 0.5}));

  auto box = FeasibleSet::box({0.0, 0.0}, {1.0, 2.0});
  CHECK(box.contains({0.5, 1.5}));
  CHECK_FALSE(box.contains({0.5, 2.5}));
  CHECK(box.distance({0.5, 3.0}) == doctest::Approx(1.0));
}
