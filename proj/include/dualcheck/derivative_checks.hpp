#pragma once

#include <cstdint>
#include <cstddef>

#include "dualcheck/box_family.hpp"
#include "dualcheck/binary_family.hpp"
#include "dualcheck/qc_family.hpp"

namespace dualcheck {

// Analytic derivatives against finite differences at seeded, well-conditioned
// random points. max_rel_err uses relative_error(analytic, fd).
struct DerivativeCheck {
  std::size_t points = 0;
  double max_rel_err = 0.0;
  Vector worst_point;
};

// Minimum relative distance to a pole (or minimum |eigenvalue| of the dual
// matrix) accepted when drawing sample points.
inline constexpr double kPoleClearance = 0.05;
inline constexpr double kEigenClearance = 0.5;

// sigma uniform in [0, qc_default_search_upper(p)], rejecting points within
// kPoleClearance * max(1, |pole|) of a pole.
DerivativeCheck check_qc_derivative(const QcProblem& p, std::size_t points, std::uint64_t seed,
                                    const FdConfig& fd = FdConfig::gradient_defaults());

// (s, sigma) with s in [-alpha, 10 - alpha], sigma_i in [0, 5], |eig(G)| >= kEigenClearance.
DerivativeCheck check_box_gradient(const BoxProblem& p, std::size_t points, std::uint64_t seed,
                                   const FdConfig& fd = FdConfig::gradient_defaults());

// sigma_i in [-5, 5] with |eig(Q_d)| >= kEigenClearance.
DerivativeCheck check_binary_gradient(const BinaryProblem& p, std::size_t points, std::uint64_t seed,
                                      const FdConfig& fd = FdConfig::gradient_defaults());
DerivativeCheck check_binary_hessian(const BinaryProblem& p, std::size_t points, std::uint64_t seed,
                                     const FdConfig& fd = FdConfig::hessian_defaults());

}  // namespace dualcheck
