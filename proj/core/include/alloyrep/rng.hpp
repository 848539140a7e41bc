#pragma once

#include "alloyrep/numkernel.hpp"

#include <cstdint>
#include <random>

namespace alloyrep {

/// Seeded generator used for every random draw in the library. The uniform
/// mapping goes through the raw 64-bit stream so the values do not depend on
/// the standard library's distribution implementation.
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Deterministic per-task sub-seed from (seed, index).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t raw() { return engine_(); }

  /// Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Real and imaginary parts drawn independently from [lo, hi).
  Complex cuniform(double lo = -1.0, double hi = 1.0) {
    const double re = uniform(lo, hi);
    const double im = uniform(lo, hi);
    return {re, im};
  }

  /// Row-major fill with cuniform entries.
  CMatrix matrix(Index rows, Index cols, double lo = -1.0, double hi = 1.0) {
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      for (Index j = 0; j < cols; ++j) {
        m(i, j) = cuniform(lo, hi);
      }
    }
    return m;
  }

  CVector vector(Index n, double lo = -1.0, double hi = 1.0) {
    CVector v(n);
    for (Index i = 0; i < n; ++i) v(i) = cuniform(lo, hi);
    return v;
  }

  /// Random square matrix redrawn until its smallest singular value is at
  /// least min_sv_ratio times the largest.
  CMatrix invertible(Index n, double min_sv_ratio = 0.05) {
    while (true) {
      CMatrix m = matrix(n, n);
      if (n == 0) return m;
      Eigen::JacobiSVD<CMatrix> svd(m);
      const auto& sv = svd.singularValues();
      if (sv(sv.size() - 1) > min_sv_ratio * sv(0)) return m;
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace alloyrep
