#include "dualcheck/finite_diff.hpp"

#include <algorithm>
#include <cmath>

#include "dualcheck/error.hpp"

namespace dualcheck {

void validate(const FdConfig& cfg) {
  if (!(cfg.step > 0.0 && cfg.step < 1.0) || !(cfg.rel_tol > 0.0 && cfg.rel_tol < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "FdConfig step and rel_tol must lie in (0, 1)");
  }
}

namespace {

double sample(const ScalarField& fun, const Vector& at) {
  double v;
  try {
    v = fun(at);
  } catch (const Error& e) {
    throw Error(ErrorCode::kNonFiniteSample, std::string("stencil evaluation failed: ") + e.what());
  }
  if (!std::isfinite(v)) throw Error(ErrorCode::kNonFiniteSample, "non-finite stencil value");
  return v;
}

Vector steps_for(const Vector& point, double step) {
  Vector h(point.size());
  for (Eigen::Index i = 0; i < point.size(); ++i) h(i) = step * std::max(1.0, std::abs(point(i)));
  return h;
}

}  // namespace

Vector fd_gradient(const ScalarField& fun, const Vector& point, const FdConfig& cfg) {
  validate(cfg);
  const Vector h = steps_for(point, cfg.step);
  Vector grad(point.size());
  Vector probe = point;
  for (Eigen::Index i = 0; i < point.size(); ++i) {
    probe(i) = point(i) + h(i);
    const double up = sample(fun, probe);
    probe(i) = point(i) - h(i);
    const double down = sample(fun, probe);
    probe(i) = point(i);
    grad(i) = (up - down) / (2.0 * h(i));
  }
  return grad;
}

SymMatrix fd_hessian(const ScalarField& fun, const Vector& point, const FdConfig& cfg) {
  validate(cfg);
  const Eigen::Index n = point.size();
  const Vector h = steps_for(point, cfg.step);
  const double center = sample(fun, point);
  Matrix hess(n, n);
  Vector probe = point;
  for (Eigen::Index i = 0; i < n; ++i) {
    probe(i) = point(i) + h(i);
    const double up = sample(fun, probe);
    probe(i) = point(i) - h(i);
    const double down = sample(fun, probe);
    probe(i) = point(i);
    hess(i, i) = (up - 2.0 * center + down) / (h(i) * h(i));
    for (Eigen::Index j = i + 1; j < n; ++j) {
      auto corner = [&](double si, double sj) {
        probe(i) = point(i) + si * h(i);
        probe(j) = point(j) + sj * h(j);
        const double v = sample(fun, probe);
        probe(i) = point(i);
        probe(j) = point(j);
        return v;
      };
      const double mixed =
          (corner(1, 1) - corner(1, -1) - corner(-1, 1) + corner(-1, -1)) / (4.0 * h(i) * h(j));
      hess(i, j) = mixed;
      hess(j, i) = mixed;
    }
  }
  return SymMatrix(hess);
}

double fd_derivative(const std::function<double(double)>& fun, double at, const FdConfig& cfg) {
  const ScalarField wrapped = [&](const Vector& v) { return fun(v(0)); };
  return fd_gradient(wrapped, Vector::Constant(1, at), cfg)(0);
}

}  // namespace dualcheck
