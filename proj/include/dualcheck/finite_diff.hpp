#pragma once

#include <functional>

#include "dualcheck/sym_matrix.hpp"

namespace dualcheck {

using ScalarField = std::function<double(const Vector&)>;

struct FdConfig {
  double step = 1e-5;     // relative central-difference step
  double rel_tol = 1e-5;  // acceptance threshold for comparisons

  static FdConfig gradient_defaults() { return {1e-5, 1e-5}; }
  static FdConfig hessian_defaults() { return {1e-4, 1e-4}; }
};

void validate(const FdConfig& cfg);

// Central differences with per-coordinate step cfg.step * max(1, |x_i|).
// A stencil value that is non-finite, or a library Error thrown by `fun`
// (a dual pole), raises Error(kNonFiniteSample).
Vector fd_gradient(const ScalarField& fun, const Vector& point,
                   const FdConfig& cfg = FdConfig::gradient_defaults());

SymMatrix fd_hessian(const ScalarField& fun, const Vector& point,
                     const FdConfig& cfg = FdConfig::hessian_defaults());

// One-dimensional convenience wrapper over fd_gradient.
double fd_derivative(const std::function<double(double)>& fun, double at,
                     const FdConfig& cfg = FdConfig::gradient_defaults());

}  // namespace dualcheck
