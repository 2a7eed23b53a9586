#include "dualcheck/box_family.hpp"

#include <cmath>
#include <limits>

#include "dualcheck/error.hpp"
#include "dualcheck/rng.hpp"

namespace dualcheck {

Vector BoxDualPoint::combined() const {
  Vector y(1 + sigma.size());
  y(0) = sigma0;
  y.tail(sigma.size()) = sigma;
  return y;
}

BoxDualPoint BoxDualPoint::from_combined(const Vector& y) {
  if (y.size() < 2) throw Error(ErrorCode::kInvalidArgument, "box dual point needs 1 + n >= 2 entries");
  return {y(0), y.tail(y.size() - 1)};
}

namespace {

void check_dims(const BoxProblem& p, const BoxDualPoint& d) {
  if (d.sigma.size() != p.dim()) throw Error(ErrorCode::kInvalidArgument, "dual point dimension mismatch");
}

Vector solve_G(const BoxProblem& p, const BoxDualPoint& d) {
  try {
    return solve_sym(box_G(p, d), p.c);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularMatrix) throw;
    throw Error(ErrorCode::kSingularG, "G(s, sigma) is singular");
  }
}

}  // namespace

double box_primal_value(const BoxProblem& p, const Vector& x) {
  if (!box_is_feasible(p, x)) return std::numeric_limits<double>::infinity();
  const double xi = 0.5 * (p.B * x).squaredNorm() - p.alpha;
  return 0.5 * xi * xi + 0.5 * p.A.quadratic_form(x) - p.c.dot(x);
}

bool box_is_feasible(const BoxProblem& p, const Vector& x) {
  if (x.size() != p.dim()) throw Error(ErrorCode::kInvalidArgument, "primal point dimension mismatch");
  return ((x.array().square() - p.ell.array()) <= 1e-12).all();
}

SymMatrix box_G(const BoxProblem& p, const BoxDualPoint& d) {
  check_dims(p, d);
  return SymMatrix(Matrix(p.A.matrix() + d.sigma0 * p.B.transpose() * p.B +
                          Matrix(2.0 * d.sigma.asDiagonal())));
}

double box_dual_value(const BoxProblem& p, const BoxDualPoint& d) {
  const Vector x = solve_G(p, d);
  return -0.5 * p.c.dot(x) - 0.5 * d.sigma0 * d.sigma0 - p.alpha * d.sigma0 - p.ell.dot(d.sigma);
}

Vector box_dual_gradient(const BoxProblem& p, const BoxDualPoint& d) {
  const Vector x = solve_G(p, d);
  Vector grad(1 + x.size());
  grad(0) = 0.5 * (p.B * x).squaredNorm() - d.sigma0 - p.alpha;
  grad.tail(x.size()) = x.array().square() - p.ell.array();
  return grad;
}

Vector box_recover_primal(const BoxProblem& p, const BoxDualPoint& d) { return solve_G(p, d); }

std::string_view to_string(BoxMembership m) {
  switch (m) {
    case BoxMembership::kNotInSa: return "NotInSa";
    case BoxMembership::kSaOnly: return "SaOnly";
    case BoxMembership::kSaPlus: return "SaPlus";
    case BoxMembership::kSaMinus: return "SaMinus";
  }
  return "Unknown";
}

BoxMembership box_set_membership(const BoxProblem& p, const BoxDualPoint& d) {
  check_dims(p, d);
  if (d.sigma0 < -p.alpha || (d.sigma.array() < 0.0).any()) return BoxMembership::kNotInSa;
  const SymMatrix g = box_G(p, d);
  if (!numerically_invertible(g)) return BoxMembership::kNotInSa;
  const auto cls = classify_definiteness(g);
  if (cls.positive_definite()) return BoxMembership::kSaPlus;
  if (cls.negative_definite()) return BoxMembership::kSaMinus;
  return BoxMembership::kSaOnly;
}

namespace {
void check_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw Error(ErrorCode::kOutOfRange, "gamma must lie in (0, 1), got " + std::to_string(gamma));
  }
}
}  // namespace

double box_perturbation_primal(double gamma) {
  check_gamma(gamma);
  const double g2 = gamma * gamma;
  return -15.0 / 2.0 + 0.5 * g2 * g2 - 4.0 * g2 * gamma + 5.0 * g2 + 8.0 * gamma;
}

double box_perturbation_dual(double gamma) {
  check_gamma(gamma);
  return -15.0 / 2.0 - 16.0 * (gamma * gamma / (2.0 * gamma + 1.0)) * (16.0 * gamma + 7.0);
}

BoxProblem example2_problem() {
  Vector c(2), ell(2);
  c << -2.0, -2.0;
  ell << 4.0, 4.0;
  return BoxProblem(-4.0 * SymMatrix::identity(2), Matrix::Identity(2, 2), c, 3.0, ell);
}

BoxDualPoint example2_critical_point() { return {1.0, Vector::Ones(2)}; }

ProbePaths example2_probe_paths() {
  Vector primal(2), dual(3);
  primal << -1.0, -1.0;
  dual << -16.0, 7.0, 7.0;
  return {{primal}, {dual}};
}

namespace {

struct SearchOutcome {
  std::optional<Witness> witness;
  int path_hits = 0;
  int path_probes = 0;
  std::size_t random_evaluated = 0;
  std::string detail() const {
    return "path probes refuting " + std::to_string(path_hits) + "/" + std::to_string(path_probes) +
           ", random points evaluated " + std::to_string(random_evaluated);
  }
};

// Searches near `center` for a point where `value` beats `reference` by more
// than `margin` in the direction given by `ascend`. Paths first, then rays.
SearchOutcome search_neighbourhood(const ScalarField& value, const Vector& center, double reference,
                                   double margin, bool ascend, const std::vector<Vector>& paths,
                                   const std::vector<Vector>& random_points, const BoxRefuter& cfg) {
  SearchOutcome out;
  auto beats = [&](double v) {
    return std::isfinite(v) && (ascend ? v > reference + margin : v < reference - margin);
  };
  for (const auto& dir : paths) {
    for (int k = 1; k <= cfg.path_levels; ++k) {
      const Vector y = center + std::ldexp(1.0, -k) * dir;
      if ((y - center).norm() > cfg.oracle.radius) continue;
      ++out.path_probes;
      double v;
      try {
        v = value(y);
      } catch (const Error&) {
        continue;
      }
      if (!beats(v)) continue;
      ++out.path_hits;
      if (!out.witness) out.witness = Witness{y, v};
    }
  }
  const auto ext = kernels::extrema(cfg.oracle.exec, value, random_points);
  out.random_evaluated = ext.evaluated;
  if (!out.witness && ext.evaluated > 0) {
    const auto idx = static_cast<std::size_t>(ascend ? ext.argmax : ext.argmin);
    const double v = ascend ? ext.max : ext.min;
    if (beats(v)) out.witness = Witness{random_points[idx], v};
  }
  return out;
}

}  // namespace

RefutationReport box_verify_theorem2(const BoxProblem& p, const BoxDualPoint& d, const BoxRefuter& cfg) {
  validate(cfg.oracle);
  check_dims(p, d);
  const BoxMembership membership = box_set_membership(p, d);
  if (!(d.sigma0 > -p.alpha) || !(d.sigma.array() > 0.0).all() || membership == BoxMembership::kNotInSa) {
    throw Error(ErrorCode::kNotCritical, "dual point is not interior to S_a");
  }
  const Vector grad = box_dual_gradient(p, d);
  if (!(grad.norm() <= kBoxCriticalTol)) {
    throw Error(ErrorCode::kNotCritical, "|grad P^d| = " + std::to_string(grad.norm()));
  }

  RefutationReport report;
  report.family = "box";
  report.classification = std::string(to_string(membership));
  report.x_bar = box_recover_primal(p, d);
  report.primal_value = box_primal_value(p, report.x_bar);
  report.dual_value = box_dual_value(p, d);

  const double identity_tol = 1e-8 * std::max(1.0, std::abs(report.dual_value));
  const bool identity_ok = std::isfinite(report.primal_value) &&
                           std::abs(report.primal_value - report.dual_value) <= identity_tol;
  report.claims.push_back({kBoxIdentityClaim, identity_ok ? Status::kPass : Status::kFail, std::nullopt,
                           report.dual_value, identity_tol, 0, "P(x_bar) = P^d(y_bar)"});

  const Vector upper = p.upper_bounds();
  const ScalarField primal = [&p](const Vector& x) { return box_primal_value(p, x); };

  if (membership == BoxMembership::kSaMinus) {
    const double primal_margin = effective_margin(cfg.oracle, report.primal_value);
    const auto ascent = search_neighbourhood(primal, report.x_bar, report.primal_value, primal_margin,
                                             /*ascend=*/true, cfg.paths.primal,
                                             box_neighbors(-upper, upper, report.x_bar)(cfg.oracle), cfg);
    report.claims.push_back({kBoxMaxClaim, ascent.witness ? Status::kRefuted : Status::kConfirmed,
                             ascent.witness, report.primal_value, primal_margin,
                             static_cast<std::size_t>(ascent.path_probes) + ascent.random_evaluated,
                             "x_bar claimed to be a local maximizer of P; " + ascent.detail()});

    const Vector y_bar = d.combined();
    const ScalarField dual = [&p](const Vector& y) {
      const auto point = BoxDualPoint::from_combined(y);
      if (box_set_membership(p, point) == BoxMembership::kNotInSa) {
        return std::numeric_limits<double>::quiet_NaN();
      }
      return box_dual_value(p, point);
    };
    Rng rng(cfg.oracle.seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<Vector> dual_points;
    dual_points.reserve(cfg.oracle.samples);
    for (std::size_t k = 0; k < cfg.oracle.samples; ++k) {
      dual_points.push_back(y_bar + rng.in_ball(y_bar.size(), cfg.oracle.radius));
    }
    const double dual_margin = effective_margin(cfg.oracle, report.dual_value);
    const auto descent = search_neighbourhood(dual, y_bar, report.dual_value, dual_margin,
                                              /*ascend=*/false, cfg.paths.dual, dual_points, cfg);
    report.claims.push_back({kBoxMinClaim, descent.witness ? Status::kRefuted : Status::kConfirmed,
                             descent.witness, report.dual_value, dual_margin,
                             static_cast<std::size_t>(descent.path_probes) + descent.random_evaluated,
                             "y_bar claimed to be a local minimizer of P^d on S_a; " + descent.detail()});
  } else if (membership == BoxMembership::kSaPlus) {
    constexpr double kGlobalTol = 1e-9;
    Vector best_point;
    double best = std::numeric_limits<double>::infinity();
    std::size_t used = 0;
    if (p.dim() <= 6) {
      const auto grid = grid_min(primal, -upper, upper, cfg.oracle.grid_resolution, cfg.oracle.exec);
      best_point = grid.point;
      best = grid.value;
      used = grid.evaluated;
    } else {
      const auto pts = uniform_box_samples(-upper, upper, cfg.oracle.samples, cfg.oracle.seed);
      const auto ext = kernels::extrema(cfg.oracle.exec, primal, pts);
      best_point = pts[static_cast<std::size_t>(ext.argmin)];
      best = ext.min;
      used = ext.evaluated;
    }
    ClaimVerdict v{kBoxGlobalClaim, Status::kConfirmed, std::nullopt, report.primal_value, kGlobalTol, used,
                   "x_bar claimed to be a global minimizer of P on the box"};
    if (best < report.primal_value - kGlobalTol) {
      v.status = Status::kRefuted;
      v.witness = Witness{best_point, best};
    }
    report.claims.push_back(std::move(v));
  }
  return report;
}

}  // namespace dualcheck
