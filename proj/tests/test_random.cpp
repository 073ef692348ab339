#include <cmath>
#include <vector>

#include "doctest.h"
#include "zomd/random.hpp"

using namespace zomd;

TEST_CASE("streams replay exactly and jump ahead") {
  RandomStream a(42, 1), b(42, 1);
  std::vector<std::uint64_t> seq;
  for (int i = 0; i < 100; ++i) seq.push_back(a.next_u64());
  for (int i = 0; i < 100; ++i) CHECK(b.next_u64() == seq[i]);

  RandomStream c(42, 1);
  c.jump_to(50);
  CHECK(c.next_u64() == seq[50]);

  RandomStream other_seed(43, 1), other_stream(42, 2);
  CHECK(other_seed.next_u64() != seq[0]);
  CHECK(other_stream.next_u64() != seq[0]);
}

TEST_CASE("uniform01 stays in [0,1) and open variant in (0,1]") {
  RandomStream rs(7, 1);
  for (int i = 0; i < 10000; ++i) {
    double u = rs.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    double v = rs.uniform_open01();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("sphere sample in dimension one is a fair sign") {
  RandomStream rs(11, 1);
  int plus = 0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    Vec e = sample_sphere(1, rs);
    CHECK(std::fabs(std::fabs(e[0]) - 1.0) < 1e-15);
    if (e[0] > 0.0) ++plus;
  }
  // 3 sigma around draws/2 with sigma = sqrt(draws)/2
  double sigma = 0.5 * std::sqrt(static_cast<double>(draws));
  CHECK(std::fabs(plus - draws / 2.0) <= 3.0 * sigma);
}

TEST_CASE("sphere samples are unit and nearly centered") {
  RandomStream rs(13, 2);
  const std::size_t n = 10;
  Vec mean(n, 0.0);
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) {
    Vec e = sample_sphere(n, rs);
    CHECK(std::fabs(norm2(e) - 1.0) <= 1e-12);
    axpy(1.0 / draws, e, mean);
  }
  CHECK(norm2(mean) < 0.004);
}

TEST_CASE("sphere isotropy: E<c,e>^2 = 1/n") {
  RandomStream rs(17, 3);
  const std::size_t n = 10;
  Vec c(n, 0.0);
  c[3] = 1.0;
  double sum = 0.0, sum_sq = 0.0;
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) {
    double ip = dot(c, sample_sphere(n, rs));
    sum += ip * ip;
    sum_sq += ip * ip * ip * ip;
  }
  double mean = sum / draws;
  double se = std::sqrt((sum_sq / draws - mean * mean) / draws);
  CHECK(std::fabs(mean - 1.0 / n) <= 3.0 * se);
}

TEST_CASE("ball samples: norm bound and second moment n/(n+2)") {
  for (std::size_t n : {std::size_t{2}, std::size_t{8}}) {
    RandomStream rs(19, n);
    double sum = 0.0, sum_sq = 0.0;
    const int draws = 1000000;
    for (int i = 0; i < draws; ++i) {
      Vec e = sample_ball(n, rs);
      double r2 = norm2_sq(e);
      CHECK(r2 <= 1.0 + 1e-12);
      sum += r2;
      sum_sq += r2 * r2;
    }
    double mean = sum / draws;
    double se = std::sqrt((sum_sq / draws - mean * mean) / draws);
    double expected = static_cast<double>(n) / (n + 2.0);
    CHECK(std::fabs(mean - expected) <= 3.0 * se);
  }
}

TEST_CASE("xi tokens: determinism, laws, degenerate case") {
  XiLaw gauss{XiLaw::Kind::gaussian_scalar, 0, 1.0};
  RandomStream a(5, 9), b(5, 9);
  for (int i = 0; i < 100; ++i) {
    Vec xa = sample_xi(gauss, a);
    Vec xb = sample_xi(gauss, b);
    REQUIRE(xa.size() == 1);
    CHECK(xa[0] == xb[0]);
  }

  RandomStream rs(23, 4);
  double sum = 0.0, sum_sq = 0.0;
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) {
    double v = sample_xi(gauss, rs)[0];
    sum += v;
    sum_sq += v * v;
  }
  double mean = sum / draws;
  double se = std::sqrt((sum_sq / draws - mean * mean) / draws);
  CHECK(std::fabs(mean) <= 3.0 * se);

  XiLaw none{};
  CHECK(sample_xi(none, rs).empty());

  XiLaw rad{XiLaw::Kind::rademacher_scalar, 0, 0.25};
  for (int i = 0; i < 100; ++i) {
    double v = sample_xi(rad, rs)[0];
    CHECK(std::fabs(v) == 0.25);
  }

  XiLaw ball{XiLaw::Kind::ball_vector, 6, 2.0};
  for (int i = 0; i < 100; ++i) {
    Vec v = sample_xi(ball, rs);
    REQUIRE(v.size() == 6);
    CHECK(norm2(v) <= 2.0 + 1e-12);
  }
}
