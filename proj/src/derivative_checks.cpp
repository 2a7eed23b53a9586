#include "dualcheck/derivative_checks.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "dualcheck/error.hpp"
#include "dualcheck/rng.hpp"

namespace dualcheck {

namespace {

constexpr int kMaxRejections = 1000;

template <class Draw, class Accept>
Vector draw_accepted(Rng& rng, Draw&& draw, Accept&& accept) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    Vector v = draw(rng);
    if (accept(v)) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, "no well-conditioned sample point after repeated draws");
}

double min_abs_eig(const SymMatrix& m) {
  const Eigen::SelfAdjointEigenSolver<Matrix> es(m.matrix(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().minCoeff();
}

void record(DerivativeCheck& out, double err, const Vector& at) {
  ++out.points;
  if (err > out.max_rel_err || out.worst_point.size() == 0) {
    out.max_rel_err = std::max(out.max_rel_err, err);
    out.worst_point = at;
  }
}

}  // namespace

DerivativeCheck check_qc_derivative(const QcProblem& p, std::size_t points, std::uint64_t seed,
                                    const FdConfig& fd) {
  Rng rng(seed);
  const auto poles = qc_poles(p);
  const double hi = qc_default_search_upper(p);
  DerivativeCheck out;
  for (std::size_t k = 0; k < points; ++k) {
    const Vector s = draw_accepted(
        rng, [&](Rng& r) { return Vector::Constant(1, r.uniform(0.0, hi)); },
        [&](const Vector& v) {
          return std::none_of(poles.begin(), poles.end(), [&](double pole) {
            return std::abs(v(0) - pole) < kPoleClearance * std::max(1.0, std::abs(pole));
          });
        });
    const double analytic = qc_dual_derivative(p, s(0));
    const double numeric = fd_derivative([&](double t) { return qc_dual_value(p, t); }, s(0), fd);
    record(out, relative_error(Vector(Vector::Constant(1, analytic)), Vector(Vector::Constant(1, numeric))), s);
  }
  return out;
}

DerivativeCheck check_box_gradient(const BoxProblem& p, std::size_t points, std::uint64_t seed,
                                   const FdConfig& fd) {
  Rng rng(seed);
  const Eigen::Index n = p.A.dim();
  DerivativeCheck out;
  for (std::size_t k = 0; k < points; ++k) {
    const Vector y = draw_accepted(
        rng,
        [&](Rng& r) {
          Vector v(n + 1);
          v(0) = r.uniform(-p.alpha, 10.0 - p.alpha);
          for (Eigen::Index i = 1; i <= n; ++i) v(i) = r.uniform(0.0, 5.0);
          return v;
        },
        [&](const Vector& v) { return min_abs_eig(box_G(p, BoxDualPoint::from_combined(v))) >= kEigenClearance; });
    const Vector analytic = box_dual_gradient(p, BoxDualPoint::from_combined(y));
    const Vector numeric =
        fd_gradient([&](const Vector& v) { return box_dual_value(p, BoxDualPoint::from_combined(v)); }, y, fd);
    record(out, relative_error(analytic, numeric), y);
  }
  return out;
}

namespace {

Vector draw_binary_sigma(const BinaryProblem& p, Rng& rng) {
  const Eigen::Index n = p.Q.dim();
  return draw_accepted(
      rng,
      [&](Rng& r) {
        Vector v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = r.uniform(-5.0, 5.0);
        return v;
      },
      [&](const Vector& v) { return min_abs_eig(bin_qd(p, v)) >= kEigenClearance; });
}

}  // namespace

DerivativeCheck check_binary_gradient(const BinaryProblem& p, std::size_t points, std::uint64_t seed,
                                      const FdConfig& fd) {
  Rng rng(seed);
  DerivativeCheck out;
  for (std::size_t k = 0; k < points; ++k) {
    const Vector s = draw_binary_sigma(p, rng);
    const Vector numeric = fd_gradient([&](const Vector& v) { return bin_dual_value(p, v); }, s, fd);
    record(out, relative_error(bin_dual_gradient(p, s), numeric), s);
  }
  return out;
}

DerivativeCheck check_binary_hessian(const BinaryProblem& p, std::size_t points, std::uint64_t seed,
                                     const FdConfig& fd) {
  Rng rng(seed);
  DerivativeCheck out;
  for (std::size_t k = 0; k < points; ++k) {
    const Vector s = draw_binary_sigma(p, rng);
    const SymMatrix numeric = fd_hessian([&](const Vector& v) { return bin_dual_value(p, v); }, s, fd);
    record(out, relative_error(bin_dual_hessian(p, s).matrix(), numeric.matrix()), s);
  }
  return out;
}

}  // namespace dualcheck
