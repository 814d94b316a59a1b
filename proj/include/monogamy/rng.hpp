#pragma once

#include <complex>
#include <cstdint>
#include <string_view>

namespace monogamy {

/// Counter-based 64-bit generator: output n of stream `key` is a SplitMix64
/// finalizer applied to a key-dependent offset plus n Weyl increments. The
/// stream for sample i of a run seeded with s is `CounterRng(s + i)`.
///
/// Normal variates use Box-Muller on top of the raw stream so that sampled
/// states are bit-reproducible independent of the standard library.
class CounterRng {
 public:
  static constexpr std::string_view kAlgorithm = "ctr-splitmix64-v1";

  explicit CounterRng(std::uint64_t key) noexcept : base_(mix(key ^ 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t next_u64() noexcept { return mix(base_ + (++counter_) * kWeyl); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_low() noexcept { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

  /// Standard complex Gaussian: real and imaginary parts independent N(0, 1/2).
  std::complex<double> complex_normal() noexcept;

  /// Standard real normal N(0, 1).
  double normal() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kWeyl = 0x9e3779b97f4a7c15ULL;
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace monogamy
