#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace gpdtail {

// xoshiro256** (Blackman & Vigna) seeded through splitmix64.
//
// A stream is identified by (seed, stream_id): the generator is seeded from
// `seed` and then advanced by stream_id jumps of 2^128 steps, so streams never
// overlap for any practical sample count. The same (seed, stream_id) pair
// reproduces the same sequence bit for bit.
//
// Satisfies UniformRandomBitGenerator, so <random> distributions accept it.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform();
  // Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

  // Advance by 2^128 draws.
  void jump();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  // Streams (seed, 0), ..., (seed, count - 1) built with count - 1 jumps in
  // total instead of count * (count - 1) / 2.
  static std::vector<RngStream> sequence(std::uint64_t seed, std::size_t count);

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_ = 0;
  std::uint64_t stream_id_ = 0;
};

}  // namespace gpdtail
