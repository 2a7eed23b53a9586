#pragma once

#include <cstdint>
#include <exception>
#include <span>
#include <vector>

#include "dualcheck/finite_diff.hpp"
#include "dualcheck/sym_matrix.hpp"

namespace dualcheck {

enum class Exec { kSerial, kParallel };

namespace kernels {

// Minimum and maximum of a batch, ties broken towards the lowest index so the
// result does not depend on how the batch was split across threads.
struct BatchExtrema {
  std::ptrdiff_t argmin = -1;
  std::ptrdiff_t argmax = -1;
  double min = 0.0;
  double max = 0.0;
  std::size_t evaluated = 0;  // finite evaluations
};

struct BinaryScan {
  double value = 0.0;
  std::vector<std::uint64_t> argmins;  // ascending codes
};

struct GridScan {
  std::uint64_t index = 0;  // mixed-radix index, first coordinate most significant
  double value = 0.0;
  std::uint64_t evaluated = 0;
};

// Objective value of the binary point encoded by `code` (bit n-1-i holds x_i).
double binary_objective(const SymMatrix& Q, const Vector& f, std::uint64_t code);

// Relative tie window used by binary_min: 1e-12 * max(1, |min|).
double binary_tie_window(double min_value);

namespace serial {

template <class T, class Fn>
std::vector<T> map_indices(std::uint64_t count, Fn&& fn) {
  std::vector<T> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(fn(i));
  return out;
}

std::vector<double> evaluate(const ScalarField& fun, std::span<const Vector> points);
BatchExtrema extrema(const ScalarField& fun, std::span<const Vector> points);
BinaryScan binary_min(const SymMatrix& Q, const Vector& f);
GridScan grid_argmin(const ScalarField& fun, const Vector& lo, const Vector& hi, int resolution);

}  // namespace serial

namespace parallel {

template <class T, class Fn>
std::vector<T> map_indices(std::uint64_t count, Fn&& fn) {
  std::vector<T> out(count);
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::uint64_t>(i));
    } catch (...) {
#pragma omp critical(dualcheck_map_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<double> evaluate(const ScalarField& fun, std::span<const Vector> points);
BatchExtrema extrema(const ScalarField& fun, std::span<const Vector> points);
BinaryScan binary_min(const SymMatrix& Q, const Vector& f);
GridScan grid_argmin(const ScalarField& fun, const Vector& lo, const Vector& hi, int resolution);

}  // namespace parallel

template <class T, class Fn>
std::vector<T> map_indices(Exec exec, std::uint64_t count, Fn&& fn) {
  return exec == Exec::kSerial ? serial::map_indices<T>(count, fn)
                               : parallel::map_indices<T>(count, fn);
}

std::vector<double> evaluate(Exec exec, const ScalarField& fun, std::span<const Vector> points);
BatchExtrema extrema(Exec exec, const ScalarField& fun, std::span<const Vector> points);

// Grid point for a mixed-radix index over [lo, hi] with `resolution` nodes per axis.
Vector grid_point(std::uint64_t index, const Vector& lo, const Vector& hi, int resolution);

}  // namespace kernels
}  // namespace dualcheck
