#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "zomd/solver.hpp"

using namespace zomd;

namespace {

ProxSetup unit_ball_setup(std::size_t n) {
  return ProxSetup::euclidean(FeasibleSet::euclidean_ball(Vec(n, 0.0), 1.0),
                              Vec(n, 0.0));
}

}  // namespace

TEST_CASE("step sizes") {
  CHECK(step_size_constant(1.0, 1.0, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(step_size_constant(1.0, std::sqrt(48.0), 200) ==
        doctest::Approx(0.014433756729740645).epsilon(1e-12));

  // the constant step minimizes h M^2/2 + R^2/(h N)
  double R = 0.7, M = 3.0;
  std::uint64_t N = 500;
  double h = step_size_constant(R, M, N);
  auto bound = [&](double hh) {
    return hh * M * M / 2.0 + R * R / (hh * static_cast<double>(N));
  };
  CHECK(bound(h) <= bound(h * 1.01));
  CHECK(bound(h) <= bound(h * 0.99));

  CHECK(step_size_strongly_convex(1.0, 1) == 1.0);
  CHECK(step_size_strongly_convex(2.0, 10) == doctest::Approx(0.05));
  double prev = step_size_strongly_convex(0.5, 1);
  for (std::uint64_t k = 2; k < 50; ++k) {
    double hk = step_size_strongly_convex(0.5, k);
    CHECK(hk < prev);
    prev = hk;
  }
  CHECK_THROWS_AS(step_size_strongly_convex(1.0, 0), std::invalid_argument);
}

TEST_CASE("constant problem: single step goes nowhere") {
  auto problem = make_constant(2, 5.0);
  problem.optimum = Optimum{Vec(2, 0.0), 4.0};  // F* below F for a regret of 1
  auto prox = unit_ball_setup(2);
  auto params = choose_params(0.2, 1.0, 2);
  RunConfig rc;
  rc.step = {StepRule::Kind::constant, 0.5, 0.0};
  rc.iterations = 1;
  rc.record_iterates = true;
  Trace t = run(problem, NoiseModel{}, prox, params, rc);
  REQUIRE(t.size() == 1);
  CHECK(t.iterates[0] == prox.prox_center());
  CHECK(t.dual_norm_g[0] == 0.0);
  CHECK(t.final_running_regret() == doctest::Approx(1.0));
  CHECK(regret_of_trace(t, 4.0) == doctest::Approx(1.0));
}

TEST_CASE("exact-gradient sanity path converges on the quadratic") {
  auto problem = builtin_problem("strongly_convex_quadratic", 2, 2.0, 1.0,
                                 {0.0, Vec{0.3, -0.2}});  // no stochastic term
  auto prox = unit_ball_setup(2);
  auto params = choose_params(0.1, 2.0, 2);
  RunConfig rc;
  rc.step = {StepRule::Kind::strongly_convex, 0.0, 1.0};
  rc.iterations = 400;
  rc.gradient = GradientKind::exact_mean;
  rc.record_iterates = true;
  Trace t = run(problem, NoiseModel{}, prox, params, rc);
  CHECK(t.v_to_xstar.back() < t.v_to_xstar.front());
  CHECK(t.v_to_xstar.back() < 1e-4);
  CHECK(norm2(sub(t.iterates.back(), problem.optimum->x_star)) < 0.05);
  // with the exact source the probe point is the center
  CHECK(t.f_perturbed.back() == t.f_center.back());
}

TEST_CASE("runs are deterministic and feasible; per-seed regret nonnegative") {
  auto problem = builtin_problem("l2_distance", 4, 1.0);
  auto prox = unit_ball_setup(4);
  auto params = choose_params(0.25, 1.0, 4);
  RunConfig rc;
  rc.step.kind = StepRule::Kind::auto_constant;
  rc.iterations = 300;
  rc.seed = 9;
  rc.record_iterates = true;
  Trace a = run(problem, NoiseModel{}, prox, params, rc);
  Trace b = run(problem, NoiseModel{}, prox, params, rc);
  REQUIRE(a.size() == 300);
  CHECK(trace_csv(a) == trace_csv(b));
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(prox.feasible_set().contains(a.iterates[k], 1e-9));
    CHECK(a.running_regret_center[k] >= 0.0);
    CHECK(a.f_center[k] == b.f_center[k]);
  }
  rc.seed = 10;
  Trace c = run(problem, NoiseModel{}, prox, params, rc);
  CHECK(trace_csv(a) != trace_csv(c));
  CHECK(a.meta.fingerprint() == c.meta.fingerprint());
}

TEST_CASE("entropy geometry run stays on the simplex") {
  auto problem = builtin_problem("l1_weighted", 6, 1.0);
  auto prox = ProxSetup::entropy(6);
  auto params = choose_params(0.25, 1.0, 6);
  RunConfig rc;
  rc.step.kind = StepRule::Kind::auto_constant;
  rc.iterations = 2000;
  rc.record_iterates = true;
  Trace t = run(problem, NoiseModel{}, prox, params, rc);
  for (const Vec& x : t.iterates) CHECK(prox.feasible_set().contains(x, 1e-9));
  CHECK(t.running_regret_center.back() >= 0.0);
  CHECK(t.running_regret_center.back() < t.running_regret_center.front());
}

TEST_CASE("strongly convex schedule rejects the entropy prox") {
  auto problem = builtin_problem("l1_weighted", 4, 1.0);
  auto prox = ProxSetup::entropy(4);
  auto params = choose_params(0.25, 1.0, 4);
  RunConfig rc;
  rc.step = {StepRule::Kind::strongly_convex, 0.0, 1.0};
  rc.iterations = 10;
  CHECK_THROWS_AS(run(problem, NoiseModel{}, prox, params, rc),
                  std::invalid_argument);
}

TEST_CASE("regret_of_trace arithmetic") {
  Trace t;
  t.f_center = {1.0, 0.0};
  CHECK(regret_of_trace(t, 0.0) == doctest::Approx(0.5));
  t.f_center = {2.0, 2.0, 2.0};
  CHECK(regret_of_trace(t, 2.0) == 0.0);
}

TEST_CASE("perturbed-point regret stays within eps/2 of the center regret") {
  auto problem = builtin_problem("l2_distance", 8, 1.0);
  auto prox = unit_ball_setup(8);
  const double eps = 0.4;
  auto params = choose_params(eps, 1.0, 8);
  RunConfig rc;
  rc.step.kind = StepRule::Kind::auto_constant;
  rc.iterations = 400;
  for (std::uint64_t seed : {1, 2, 3}) {
    rc.seed = seed;
    Trace t = run(problem, NoiseModel{}, prox, params, rc);
    CHECK(std::fabs(t.running_regret_perturbed.back() -
                    t.running_regret_center.back()) <= eps / 2.0);
  }
}

TEST_CASE("trace CSV schema") {
  auto problem = builtin_problem("l2_distance", 2, 1.0);
  auto prox = unit_ball_setup(2);
  auto params = choose_params(0.25, 1.0, 2);
  RunConfig rc;
  rc.step.kind = StepRule::Kind::auto_constant;
  rc.iterations = 3;
  Trace t = run(problem, NoiseModel{}, prox, params, rc);
  std::string csv = trace_csv(t);
  CHECK(csv.rfind("k,F_xk,running_regret,dual_norm_g,V_to_xstar\n", 0) == 0);
  int newlines = 0;
  for (char c : csv) newlines += c == '\n';
  CHECK(newlines == 4);  // header + 3 rows
}

TEST_CASE("oracle domain errors abort the run with a diagnostic") {
  auto problem = builtin_problem("l2_distance", 2, 1.0);
  problem.domain =
      DomainGuard{FeasibleSet::euclidean_ball(Vec(2, 0.0), 1.0), 1e-9};
  // start close to the boundary so the wide probes must leave the set
  auto prox = ProxSetup::euclidean(
      FeasibleSet::euclidean_ball(Vec(2, 0.0), 1.0), Vec{0.9, 0.0});
  auto params = choose_params(2.0, 1.0, 2);  // tau = 0.5: probes must leave
  RunConfig rc;
  rc.step.kind = StepRule::Kind::auto_constant;
  rc.iterations = 50;
  try {
    run(problem, NoiseModel{}, prox, params, rc);
    FAIL("expected a domain error");
  } catch (const std::domain_error& e) {
    std::string msg = e.what();
    CHECK(msg.find("tau=") != std::string::npos);
    CHECK(msg.find("mu=") != std::string::npos);
  }
}
