#include "zomd/random.hpp"

#include <cmath>
#include <numbers>

namespace zomd {

namespace detail {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

namespace {
constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
  base_ = detail::mix64(seed + kGamma) ^
          detail::mix64(stream_id * 0xda942042e4dd58b5ULL + kGamma);
}

std::uint64_t RandomStream::next_u64() {
  ++counter_;
  return detail::mix64(base_ + counter_ * kGamma);
}

double RandomStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform_open01() {
  return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  double u = uniform_open01();
  double v = uniform01();
  return std::sqrt(-2.0 * std::log(u)) *
         std::cos(2.0 * std::numbers::pi * v);
}

Vec sample_sphere(std::size_t n, RandomStream& rs) {
  Vec e(n);
  double nrm = 0.0;
  do {
    for (double& c : e) c = rs.gaussian();
    nrm = norm2(e);
  } while (nrm < 1e-12);
  for (double& c : e) c /= nrm;
  return e;
}

Vec sample_ball(std::size_t n, RandomStream& rs) {
  Vec e = sample_sphere(n, rs);
  double r = std::pow(rs.uniform01(), 1.0 / static_cast<double>(n));
  for (double& c : e) c *= r;
  return e;
}

Vec sample_xi(const XiLaw& law, RandomStream& rs) {
  switch (law.kind) {
    case XiLaw::Kind::none:
      return {};
    case XiLaw::Kind::rademacher_scalar:
      return {rs.uniform01() < 0.5 ? -law.scale : law.scale};
    case XiLaw::Kind::gaussian_scalar:
      return {law.scale * rs.gaussian()};
    case XiLaw::Kind::ball_vector: {
      Vec v = sample_ball(law.dim, rs);
      for (double& c : v) c *= law.scale;
      return v;
    }
  }
  return {};
}

}  // namespace zomd
