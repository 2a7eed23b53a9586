#include "dualcheck/qc_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dualcheck/error.hpp"

namespace dualcheck {

namespace {

SymMatrix shifted(const QcProblem& p, double sigma) { return p.A + sigma * p.C; }

Vector solve_shifted(const QcProblem& p, double sigma, const Vector& rhs) {
  try {
    return solve_sym(shifted(p, sigma), rhs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularMatrix) throw;
    throw Error(ErrorCode::kPoleAtSigma, "A + sigma C singular at sigma = " + std::to_string(sigma));
  }
}

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

double derivative_or_nan(const QcProblem& p, double sigma) {
  try {
    return qc_dual_derivative(p, sigma);
  } catch (const Error&) {
    return nan();
  }
}

double curvature_or_nan(const QcProblem& p, double sigma) {
  try {
    return qc_dual_curvature(p, sigma);
  } catch (const Error&) {
    return nan();
  }
}

double bisect(const QcProblem& p, double a, double da, double b) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double dm = derivative_or_nan(p, mid);
    if (std::isnan(dm)) break;
    if (dm == 0.0) return mid;
    if ((dm < 0.0) == (da < 0.0)) {
      a = mid;
      da = dm;
    } else {
      b = mid;
    }
  }
  const double db = derivative_or_nan(p, b);
  return std::abs(da) <= std::abs(db) || std::isnan(db) ? a : b;
}

// Newton iteration on the curvature (extremum of the derivative) inside
// [lo, hi], with the curvature slope taken by central differences.
double polish_extremum(const QcProblem& p, double start, double lo, double hi) {
  double s = start;
  for (int it = 0; it < 60; ++it) {
    const double phi = curvature_or_nan(p, s);
    if (std::isnan(phi)) break;
    const double h = 1e-5 * std::max(1.0, std::abs(s));
    const double slope = (curvature_or_nan(p, s + h) - curvature_or_nan(p, s - h)) / (2.0 * h);
    if (!std::isfinite(slope) || slope == 0.0) break;
    const double next = std::clamp(s - phi / slope, lo, hi);
    const bool done = std::abs(next - s) <= 1e-15 * std::max(1.0, std::abs(s));
    s = next;
    if (done) break;
  }
  return s;
}

}  // namespace

double qc_primal_value(const QcProblem& p, const Vector& x) {
  return 0.5 * p.A.quadratic_form(x) - p.f.dot(x);
}

bool qc_is_feasible(const QcProblem& p, const Vector& x) {
  return 0.5 * p.C.quadratic_form(x) <= p.lambda + 1e-12;
}

double qc_dual_value(const QcProblem& p, double sigma) {
  const Vector g = solve_shifted(p, sigma, p.f);
  return -0.5 * p.f.dot(g) - p.lambda * sigma;
}

double qc_dual_derivative(const QcProblem& p, double sigma) {
  const Vector g = solve_shifted(p, sigma, p.f);
  return 0.5 * p.C.quadratic_form(g) - p.lambda;
}

double qc_dual_curvature(const QcProblem& p, double sigma) {
  const Vector g = solve_shifted(p, sigma, p.f);
  const Vector cg = p.C * g;
  return -cg.dot(solve_shifted(p, sigma, cg));
}

Vector qc_recover_primal(const QcProblem& p, double sigma) { return solve_shifted(p, sigma, p.f); }

std::vector<double> qc_poles(const QcProblem& p) {
  // det(A + sC) = 0  <=>  A v = -s C v.
  Eigen::GeneralizedSelfAdjointEigenSolver<Matrix> ges(p.A.matrix(), p.C.matrix(),
                                                       Eigen::EigenvaluesOnly);
  std::vector<double> poles;
  for (Eigen::Index i = 0; i < ges.eigenvalues().size(); ++i) poles.push_back(-ges.eigenvalues()(i));
  std::sort(poles.begin(), poles.end());
  return poles;
}

double qc_default_search_upper(const QcProblem& p) {
  const auto poles = qc_poles(p);
  return 10.0 * (1.0 + std::max(0.0, poles.back()));
}

std::vector<double> qc_find_critical_points(const QcProblem& p, double lo, double hi,
                                            const CriticalSearch& search) {
  if (!(lo >= 0.0) || !(hi > lo)) {
    throw Error(ErrorCode::kInvalidArgument, "critical search needs 0 <= lo < hi");
  }
  if (search.scan_points < 3 || !(search.tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "critical search needs scan_points >= 3 and tol > 0");
  }

  auto offset = [](double pole) { return 1e-7 * std::max(1.0, std::abs(pole)); };
  struct Segment {
    double a, b;
  };
  std::vector<Segment> segments;
  double start = lo;
  for (double pole : qc_poles(p)) {
    if (pole < lo - offset(pole) || pole > hi + offset(pole)) continue;
    if (pole - offset(pole) > start) segments.push_back({start, pole - offset(pole)});
    start = std::max(start, pole + offset(pole));
  }
  if (hi > start) segments.push_back({start, hi});

  std::vector<double> roots;
  for (const auto& seg : segments) {
    const int n = search.scan_points;
    const double width = seg.b - seg.a;
    auto node = [&](int k) { return k == n - 1 ? seg.b : seg.a + width * k / (n - 1); };
    const auto d = kernels::map_indices<double>(search.exec, static_cast<std::uint64_t>(n),
                                                [&](std::uint64_t k) {
                                                  return derivative_or_nan(p, node(static_cast<int>(k)));
                                                });
    auto crosses = [&](int k) {  // sign change (or exact zero) on [node(k), node(k+1)]
      return k >= 0 && k + 1 < n && !std::isnan(d[k]) && !std::isnan(d[k + 1]) && d[k] * d[k + 1] <= 0.0;
    };
    for (int k = 0; k < n; ++k) {
      if (std::isnan(d[k])) continue;
      if (d[k] == 0.0) {
        roots.push_back(node(k));
        continue;
      }
      if (crosses(k) && d[k + 1] != 0.0) {
        roots.push_back(bisect(p, node(k), d[k], node(k + 1)));
        continue;
      }
      const bool left_ok = k == 0 || std::isnan(d[k - 1]) || std::abs(d[k]) <= std::abs(d[k - 1]);
      const bool right_ok = k == n - 1 || std::isnan(d[k + 1]) || std::abs(d[k]) <= std::abs(d[k + 1]);
      if (!left_ok || !right_ok || crosses(k - 1) || crosses(k)) continue;
      const double s = polish_extremum(p, node(k), node(std::max(0, k - 1)), node(std::min(n - 1, k + 1)));
      roots.push_back(s);
    }
  }

  std::vector<double> accepted;
  for (double s : roots) {
    const double r = derivative_or_nan(p, s);
    if (!std::isnan(r) && std::abs(r) <= search.tol) accepted.push_back(s);
  }
  std::sort(accepted.begin(), accepted.end());
  std::vector<double> out;
  for (double s : accepted) {
    if (!out.empty() && s - out.back() <= 10.0 * search.tol) {
      if (std::abs(derivative_or_nan(p, s)) < std::abs(derivative_or_nan(p, out.back()))) out.back() = s;
      continue;
    }
    out.push_back(s);
  }
  return out;
}

QcCritical qc_describe_critical(const QcProblem& p, double sigma) {
  QcCritical c{sigma,
               qc_dual_value(p, sigma),
               qc_dual_derivative(p, sigma),
               classify_definiteness(shifted(p, sigma)),
               qc_recover_primal(p, sigma),
               0.0,
               0.0};
  c.primal_value = qc_primal_value(p, c.x_bar);
  c.constraint_slack = p.lambda - 0.5 * p.C.quadratic_form(c.x_bar);
  return c;
}

RefutationReport qc_verify_theorem16(const QcProblem& p, double sigma, const OracleConfig& cfg) {
  validate(cfg);
  if (!(sigma >= 0.0)) throw Error(ErrorCode::kNotCritical, "dual feasibility requires sigma >= 0");
  const double residual = qc_dual_derivative(p, sigma);
  if (!(std::abs(residual) <= kQcCriticalTol)) {
    throw Error(ErrorCode::kNotCritical, "|dual derivative| = " + std::to_string(std::abs(residual)));
  }
  const QcCritical crit = qc_describe_critical(p, sigma);

  RefutationReport report;
  report.family = "qc";
  report.classification = std::string(to_string(crit.matrix_class.tag));
  report.x_bar = crit.x_bar;
  report.primal_value = crit.primal_value;
  report.dual_value = crit.dual_value;

  const ScalarField objective = [&p](const Vector& x) { return qc_primal_value(p, x); };
  report.local = classify_local_extremum(objective, ellipsoid_neighbors(p.C, p.lambda, crit.x_bar),
                                         crit.x_bar, cfg);

  const double identity_tol = 1e-8 * std::max(1.0, std::abs(crit.dual_value));
  const bool identity_ok = crit.constraint_slack >= -1e-10 &&
                           std::abs(crit.primal_value - crit.dual_value) <= identity_tol;
  report.claims.push_back({kQcIdentityClaim, identity_ok ? Status::kPass : Status::kFail, std::nullopt,
                           crit.dual_value, identity_tol, 0,
                           "P(x_bar) = P^d(sigma) with x_bar feasible"});

  if (crit.matrix_class.negative_definite()) {
    const auto& local = *report.local;
    ClaimVerdict v{kQcNegDefClaim, Status::kConfirmed, std::nullopt, crit.primal_value, local.margin,
                   local.samples_used, "x_bar claimed to be a local minimizer on the feasible set"};
    if (local.witness_low) {
      v.status = Status::kRefuted;
      v.witness = local.witness_low;
    }
    report.claims.push_back(std::move(v));
  } else if (crit.matrix_class.positive_definite()) {
    const auto cover = ellipsoid_cover(p.C, p.lambda, cfg);
    const auto ext = kernels::extrema(cfg.exec, objective, cover);
    constexpr double kGlobalTol = 1e-9;
    ClaimVerdict v{kQcPosDefClaim, Status::kConfirmed, std::nullopt, crit.primal_value, kGlobalTol,
                   ext.evaluated, "x_bar claimed to be a global minimizer on the feasible set"};
    if (ext.argmin >= 0 && ext.min < crit.primal_value - kGlobalTol) {
      v.status = Status::kRefuted;
      v.witness = Witness{cover[static_cast<std::size_t>(ext.argmin)], ext.min};
    }
    report.claims.push_back(std::move(v));
  }
  return report;
}

std::vector<std::pair<double, double>> qc_boundary_profile(const QcProblem& p, int samples) {
  if (p.dim() != 2 || (p.C.matrix() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorCode::kUnsupportedShape, "boundary profile needs n = 2 and C = I");
  }
  if (samples < 2) throw Error(ErrorCode::kInvalidArgument, "boundary profile needs >= 2 samples");
  if (p.lambda < 0.0) throw Error(ErrorCode::kInvalidArgument, "empty feasible set (lambda < 0)");
  const double r = std::sqrt(2.0 * p.lambda);
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const double t = -std::numbers::pi + 2.0 * std::numbers::pi * (k + 1) / samples;
    Vector x(2);
    x << r * std::cos(t), r * std::sin(t);
    out.emplace_back(t, qc_primal_value(p, x));
  }
  return out;
}

QcProblem example1_problem(double lambda) {
  Vector f(2);
  f << -1.0, -1.0;
  return QcProblem(SymMatrix{{-2.0, -1.0}, {-1.0, -3.0}}, SymMatrix::identity(2), f, lambda);
}

}  // namespace dualcheck
