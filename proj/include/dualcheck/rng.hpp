#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "dualcheck/sym_matrix.hpp"

namespace dualcheck {

// Seeded generator whose derived draws are bit-identical across standard
// libraries: only the raw mt19937_64 stream is used, never std::*_distribution.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Vector unit_vector(Eigen::Index n) {
    Vector v(n);
    double norm = 0.0;
    while (norm < 1e-12) {
      for (Eigen::Index i = 0; i < n; ++i) v(i) = normal();
      norm = v.norm();
    }
    return v / norm;
  }

  // Uniform in the Euclidean ball of the given radius.
  Vector in_ball(Eigen::Index n, double radius) {
    const double r = radius * std::pow(uniform(), 1.0 / static_cast<double>(n));
    return r * unit_vector(n);
  }

  Vector in_box(const Vector& lo, const Vector& hi) {
    Vector v(lo.size());
    for (Eigen::Index i = 0; i < lo.size(); ++i) v(i) = uniform(lo(i), hi(i));
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dualcheck
