#pragma once

#include <cstdint>

#include "zomd/vec.hpp"

namespace zomd {

namespace detail {
// splitmix64 finalizer; also used for hashing
std::uint64_t mix64(std::uint64_t z);
}  // namespace detail

/// Counter-based pseudo-random stream. Output i is a pure function of
/// (seed, stream_id, i), so replay and jump-ahead are exact and parallel
/// replicates with distinct (seed, stream_id) never share state.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t next_u64();
  double uniform01();       // [0, 1)
  double uniform_open01();  // (0, 1]
  double gaussian();        // standard normal, consumes two uniforms

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  std::uint64_t position() const { return counter_; }
  void jump_to(std::uint64_t position) { counter_ = position; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

/// Uniform point on the unit Euclidean sphere in R^n.
Vec sample_sphere(std::size_t n, RandomStream& rs);

/// Uniform point in the closed unit Euclidean ball in R^n.
Vec sample_ball(std::size_t n, RandomStream& rs);

/// Law of the stochastic realization token xi. The token is an opaque value;
/// the problem decides how to interpret it.
struct XiLaw {
  enum class Kind { none, rademacher_scalar, gaussian_scalar, ball_vector };
  Kind kind = Kind::none;
  std::size_t dim = 0;  // ball_vector only
  double scale = 0.0;

  bool operator==(const XiLaw&) const = default;
};

Vec sample_xi(const XiLaw& law, RandomStream& rs);

}  // namespace zomd
