#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Core>

namespace qtensor {

/// splitmix64 finalizer; used to derive independent per-task streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t ordinal) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (ordinal + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t ordinal)
      : engine_(mix_seed(seed, ordinal)) {}

  /// Uniform on [lo, hi), built from 53 random bits so the stream is the same
  /// across standard libraries.
  double uniform(double lo = 0.0, double hi = 1.0) {
    const double u =
        static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }

  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<int>(engine_() % span);
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Uniform point on the open probability simplex of dimension k.
  Eigen::VectorXd simplex(int k) {
    Eigen::VectorXd v(k);
    for (int i = 0; i < k; ++i) v[i] = -std::log(1.0 - uniform());
    return v / v.sum();
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qtensor
