#include "dualcheck/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dualcheck/error.hpp"

namespace dualcheck::kernels {

namespace {

double safe_eval(const ScalarField& fun, const Vector& x) {
  try {
    const double v = fun(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN();
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

struct Best {
  double value = 0.0;
  std::int64_t index = -1;
};

// (value, index) lexicographic order; index -1 means empty.
bool better_low(const Best& a, const Best& b) {
  if (b.index < 0) return a.index >= 0;
  if (a.index < 0) return false;
  return a.value < b.value || (a.value == b.value && a.index < b.index);
}

bool better_high(const Best& a, const Best& b) {
  if (b.index < 0) return a.index >= 0;
  if (a.index < 0) return false;
  return a.value > b.value || (a.value == b.value && a.index < b.index);
}

BatchExtrema to_extrema(const Best& lo, const Best& hi, std::size_t evaluated) {
  BatchExtrema e;
  e.argmin = lo.index;
  e.argmax = hi.index;
  e.min = lo.value;
  e.max = hi.value;
  e.evaluated = evaluated;
  return e;
}

std::uint64_t grid_size(const Vector& lo, int resolution) {
  if (resolution < 2) throw Error(ErrorCode::kInvalidArgument, "grid resolution must be >= 2");
  if (lo.size() > 6) throw Error(ErrorCode::kInstanceTooLarge, "grid dimension above 6");
  std::uint64_t total = 1;
  for (Eigen::Index i = 0; i < lo.size(); ++i) total *= static_cast<std::uint64_t>(resolution);
  return total;
}

void check_binary_size(const SymMatrix& Q) {
  if (Q.dim() > 24) throw Error(ErrorCode::kInstanceTooLarge, "binary enumeration limited to n <= 24");
}

}  // namespace

double binary_objective(const SymMatrix& Q, const Vector& f, std::uint64_t code) {
  const auto n = Q.dim();
  double value = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (((code >> (n - 1 - i)) & 1U) == 0) continue;
    value += 0.5 * Q(i, i) - f(i);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if ((code >> (n - 1 - j)) & 1U) value += Q(i, j);
    }
  }
  return value;
}

double binary_tie_window(double min_value) { return 1e-12 * std::max(1.0, std::abs(min_value)); }

Vector grid_point(std::uint64_t index, const Vector& lo, const Vector& hi, int resolution) {
  Vector x(lo.size());
  for (Eigen::Index i = lo.size() - 1; i >= 0; --i) {
    const auto k = static_cast<double>(index % static_cast<std::uint64_t>(resolution));
    index /= static_cast<std::uint64_t>(resolution);
    x(i) = lo(i) + (hi(i) - lo(i)) * k / static_cast<double>(resolution - 1);
  }
  return x;
}

namespace serial {

std::vector<double> evaluate(const ScalarField& fun, std::span<const Vector> points) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = safe_eval(fun, points[i]);
  return out;
}

BatchExtrema extrema(const ScalarField& fun, std::span<const Vector> points) {
  Best lo, hi;
  std::size_t evaluated = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double v = safe_eval(fun, points[i]);
    if (std::isnan(v)) continue;
    ++evaluated;
    const Best cand{v, static_cast<std::int64_t>(i)};
    if (better_low(cand, lo)) lo = cand;
    if (better_high(cand, hi)) hi = cand;
  }
  return to_extrema(lo, hi, evaluated);
}

BinaryScan binary_min(const SymMatrix& Q, const Vector& f) {
  check_binary_size(Q);
  const std::uint64_t count = std::uint64_t{1} << Q.dim();
  BinaryScan scan;
  scan.value = std::numeric_limits<double>::infinity();
  for (std::uint64_t code = 0; code < count; ++code) {
    scan.value = std::min(scan.value, binary_objective(Q, f, code));
  }
  const double window = binary_tie_window(scan.value);
  for (std::uint64_t code = 0; code < count; ++code) {
    if (binary_objective(Q, f, code) <= scan.value + window) scan.argmins.push_back(code);
  }
  return scan;
}

GridScan grid_argmin(const ScalarField& fun, const Vector& lo, const Vector& hi, int resolution) {
  const std::uint64_t total = grid_size(lo, resolution);
  Best best;
  std::uint64_t evaluated = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const double v = safe_eval(fun, grid_point(idx, lo, hi, resolution));
    if (std::isnan(v)) continue;
    ++evaluated;
    const Best cand{v, static_cast<std::int64_t>(idx)};
    if (better_low(cand, best)) best = cand;
  }
  if (best.index < 0) throw Error(ErrorCode::kEmptySampler, "no finite grid value");
  return {static_cast<std::uint64_t>(best.index), best.value, evaluated};
}

}  // namespace serial

namespace parallel {

std::vector<double> evaluate(const ScalarField& fun, std::span<const Vector> points) {
  std::vector<double> out(points.size());
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) out[i] = safe_eval(fun, points[i]);
  return out;
}

BatchExtrema extrema(const ScalarField& fun, std::span<const Vector> points) {
  const std::vector<double> values = evaluate(fun, points);
  Best lo, hi;
  std::size_t evaluated = 0;
#pragma omp parallel
  {
    Best local_lo, local_hi;
    std::size_t local_count = 0;
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(values.size()); ++i) {
      if (std::isnan(values[i])) continue;
      ++local_count;
      const Best cand{values[i], i};
      if (better_low(cand, local_lo)) local_lo = cand;
      if (better_high(cand, local_hi)) local_hi = cand;
    }
#pragma omp critical(dualcheck_extrema_merge)
    {
      if (better_low(local_lo, lo)) lo = local_lo;
      if (better_high(local_hi, hi)) hi = local_hi;
      evaluated += local_count;
    }
  }
  return to_extrema(lo, hi, evaluated);
}

BinaryScan binary_min(const SymMatrix& Q, const Vector& f) {
  check_binary_size(Q);
  const auto count = static_cast<std::int64_t>(std::uint64_t{1} << Q.dim());
  double best = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(min : best)
  for (std::int64_t code = 0; code < count; ++code) {
    best = std::min(best, binary_objective(Q, f, static_cast<std::uint64_t>(code)));
  }
  BinaryScan scan;
  scan.value = best;
  const double window = binary_tie_window(best);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local;
#pragma omp for schedule(static) nowait
    for (std::int64_t code = 0; code < count; ++code) {
      if (binary_objective(Q, f, static_cast<std::uint64_t>(code)) <= best + window) {
        local.push_back(static_cast<std::uint64_t>(code));
      }
    }
#pragma omp critical(dualcheck_binary_merge)
    scan.argmins.insert(scan.argmins.end(), local.begin(), local.end());
  }
  std::sort(scan.argmins.begin(), scan.argmins.end());
  return scan;
}

GridScan grid_argmin(const ScalarField& fun, const Vector& lo, const Vector& hi, int resolution) {
  const auto total = static_cast<std::int64_t>(grid_size(lo, resolution));
  Best best;
  std::uint64_t evaluated = 0;
#pragma omp parallel
  {
    Best local;
    std::uint64_t local_count = 0;
#pragma omp for schedule(static) nowait
    for (std::int64_t idx = 0; idx < total; ++idx) {
      const double v = safe_eval(fun, grid_point(static_cast<std::uint64_t>(idx), lo, hi, resolution));
      if (std::isnan(v)) continue;
      ++local_count;
      const Best cand{v, idx};
      if (better_low(cand, local)) local = cand;
    }
#pragma omp critical(dualcheck_grid_merge)
    {
      if (better_low(local, best)) best = local;
      evaluated += local_count;
    }
  }
  if (best.index < 0) throw Error(ErrorCode::kEmptySampler, "no finite grid value");
  return {static_cast<std::uint64_t>(best.index), best.value, evaluated};
}

}  // namespace parallel

std::vector<double> evaluate(Exec exec, const ScalarField& fun, std::span<const Vector> points) {
  return exec == Exec::kSerial ? serial::evaluate(fun, points) : parallel::evaluate(fun, points);
}

BatchExtrema extrema(Exec exec, const ScalarField& fun, std::span<const Vector> points) {
  return exec == Exec::kSerial ? serial::extrema(fun, points) : parallel::extrema(fun, points);
}

}  // namespace dualcheck::kernels
