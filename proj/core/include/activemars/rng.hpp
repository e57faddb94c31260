#pragma once

#include <cstdint>
#include <limits>

namespace activemars {

/// Counter-based generator: the k-th output of stream s under seed is a
/// SplitMix64 hash of (seed, s, k). Streams are independent and cheap to
/// create, so parallel chunks get their own stream.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1).
  double uniform();

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace activemars
