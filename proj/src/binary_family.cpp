#include "dualcheck/binary_family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dualcheck/error.hpp"
#include "dualcheck/rng.hpp"

namespace dualcheck {

namespace {

void check_dim(const BinaryProblem& p, const Vector& v, const char* what) {
  if (v.size() != p.dim()) throw Error(ErrorCode::kInvalidArgument, std::string(what) + " dimension mismatch");
}

Vector solve_qd(const BinaryProblem& p, const Vector& sigma, const Vector& rhs) {
  try {
    return solve_sym(bin_qd(p, sigma), rhs);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularMatrix) throw;
    throw Error(ErrorCode::kSingularQd, "Q_d(sigma) is singular");
  }
}

Matrix inverse_qd(const BinaryProblem& p, const Vector& sigma) {
  const Eigen::Index n = p.dim();
  Matrix inv(n, n);
  for (Eigen::Index j = 0; j < n; ++j) inv.col(j) = solve_qd(p, sigma, Vector::Unit(n, j));
  return SymMatrix(inv).matrix();
}

}  // namespace

SymMatrix bin_qd(const BinaryProblem& p, const Vector& sigma) {
  check_dim(p, sigma, "sigma");
  return SymMatrix(Matrix(p.Q.matrix() + Matrix(2.0 * sigma.asDiagonal())));
}

double bin_primal_value(const BinaryProblem& p, const Vector& x) {
  check_dim(p, x, "x");
  return 0.5 * p.Q.quadratic_form(x) - p.f.dot(x);
}

double bin_xi_value(const BinaryProblem& p, const Vector& x, const Vector& sigma) {
  check_dim(p, x, "x");
  return 0.5 * bin_qd(p, sigma).quadratic_form(x) - x.dot(p.f + sigma);
}

double bin_dual_value(const BinaryProblem& p, const Vector& sigma) {
  const Vector rhs = p.f + sigma;
  return -0.5 * rhs.dot(solve_qd(p, sigma, rhs));
}

Vector bin_recover_primal(const BinaryProblem& p, const Vector& sigma) {
  return solve_qd(p, sigma, p.f + sigma);
}

Vector bin_dual_gradient(const BinaryProblem& p, const Vector& sigma) {
  const Vector x = bin_recover_primal(p, sigma);
  return x.array().square() - x.array();
}

double bin_dual_differential(const BinaryProblem& p, const Vector& sigma, const Vector& v) {
  check_dim(p, v, "v");
  const Vector rhs = p.f + sigma;
  const Vector a_rhs = solve_qd(p, sigma, rhs);
  return -v.dot(a_rhs) + a_rhs.dot(v.asDiagonal() * a_rhs);
}

SymMatrix bin_dual_hessian(const BinaryProblem& p, const Vector& sigma) {
  const Matrix a = inverse_qd(p, sigma);
  const Vector x = a * (p.f + sigma);
  const Eigen::Index n = p.dim();
  Matrix h(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    // -A e_j + 2 (A X e_j + X A e_j) - 4 X A X e_j
    const Vector a_col = a.col(j);
    h.col(j) = -a_col + 2.0 * (x(j) * a_col + x.cwiseProduct(a_col)) - 4.0 * x(j) * x.cwiseProduct(a_col);
  }
  return SymMatrix(h);
}

double bin_dual_second_differential(const BinaryProblem& p, const Vector& sigma, const Vector& v) {
  check_dim(p, v, "v");
  const Vector rhs = p.f + sigma;
  const Vector a_rhs = solve_qd(p, sigma, rhs);
  const Vector a_v = solve_qd(p, sigma, v);
  const Vector dv_a_rhs = v.asDiagonal() * a_rhs;
  const Vector a_dv_a_rhs = solve_qd(p, sigma, dv_a_rhs);
  return -v.dot(a_v) + 4.0 * a_v.dot(dv_a_rhs) - 4.0 * a_rhs.dot(v.asDiagonal() * a_dv_a_rhs);
}

double bin_hessian_square_form(const BinaryProblem& p, const Vector& sigma, const Vector& v) {
  check_dim(p, v, "v");
  const Vector w = v.asDiagonal() * solve_qd(p, sigma, p.f + sigma);
  const Vector u = v - 2.0 * w;
  return -u.dot(solve_qd(p, sigma, u));
}

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::kSharpPlus: return "SharpPlus";
    case Branch::kSharpMinus: return "SharpMinus";
    case Branch::kRejected: return "Rejected";
  }
  return "Unknown";
}

Branch bin_branch(const BinaryProblem& p, const Vector& sigma) {
  check_dim(p, sigma, "sigma");
  if (!(sigma.array() > kSigmaStrictness).all()) return Branch::kRejected;
  const auto cls = classify_definiteness(bin_qd(p, sigma));
  if (cls.positive_definite()) return Branch::kSharpPlus;
  if (cls.negative_definite()) return Branch::kSharpMinus;
  return Branch::kRejected;
}

std::string CriticalPair::bits() const { return bitstring(code, x_star.size()); }

std::vector<CriticalPair> bin_enumerate_criticals(const BinaryProblem& p, Exec exec) {
  const Eigen::Index n = p.dim();
  if (n > 24) throw Error(ErrorCode::kInstanceTooLarge, "critical enumeration limited to n <= 24");
  const std::uint64_t count = std::uint64_t{1} << n;
  return kernels::map_indices<CriticalPair>(exec, count, [&](std::uint64_t code) {
    CriticalPair pair;
    pair.code = code;
    pair.x_star = binary_point(code, n);
    const Vector qx = p.Q * pair.x_star;
    pair.sigma = (2.0 * pair.x_star.array() - 1.0) * (p.f - qx).array();
    const SymMatrix qd = bin_qd(p, pair.sigma);
    pair.residual = (qd * pair.x_star - (p.f + pair.sigma)).cwiseAbs().maxCoeff();
    pair.degenerate_sigma = (pair.sigma.array().abs() <= kSigmaStrictness).any();
    pair.branch = bin_branch(p, pair.sigma);
    pair.primal_value = bin_primal_value(p, pair.x_star);
    pair.dual_value = numerically_invertible(qd) ? bin_dual_value(p, pair.sigma)
                                                 : std::numeric_limits<double>::quiet_NaN();
    return pair;
  });
}

EpsilonBall bin_epsilon_ball(const BinaryProblem& p, const CriticalPair& pair) {
  const double q_max = p.Q.max_abs();
  const double eps = q_max > 0.0
                         ? 2.0 * pair.sigma.minCoeff() / (static_cast<double>(p.dim()) * q_max)
                         : 1.0;
  return {eps, pair.x_star};
}

namespace {

void require_branch(const CriticalPair& pair, Branch expected) {
  if (pair.branch != expected) {
    throw Error(ErrorCode::kWrongBranch, "pair " + pair.bits() + " is " + std::string(to_string(pair.branch)) +
                                             ", expected " + std::string(to_string(expected)));
  }
}

// Draws sigma around the center at each radius, keeps those on `branch`,
// and returns the extreme dual value in the requested direction.
struct DualSweep {
  std::optional<Witness> extreme;
  std::size_t accepted = 0;
};

DualSweep sweep_dual(const BinaryProblem& p, const CriticalPair& pair, const Certifier& cfg, bool want_max) {
  Rng rng(cfg.oracle.seed ^ (pair.code * 0x9e3779b97f4a7c15ULL));
  std::vector<Vector> candidates;
  for (double r : cfg.dual_radii) {
    for (std::size_t k = 0; k < cfg.dual_candidates; ++k) {
      candidates.push_back(pair.sigma + rng.in_ball(p.dim(), r));
    }
  }
  const Branch branch = pair.branch;
  const ScalarField value = [&p, branch](const Vector& s) {
    if (bin_branch(p, s) != branch) return std::numeric_limits<double>::quiet_NaN();
    return bin_dual_value(p, s);
  };
  const auto ext = kernels::extrema(cfg.oracle.exec, value, candidates);
  DualSweep out;
  out.accepted = ext.evaluated;
  if (ext.evaluated > 0) {
    const auto idx = static_cast<std::size_t>(want_max ? ext.argmax : ext.argmin);
    out.extreme = Witness{candidates[idx], want_max ? ext.max : ext.min};
  }
  return out;
}

}  // namespace

Certificate bin_certify_part_a(const BinaryProblem& p, const CriticalPair& pair, const Certifier& cfg) {
  require_branch(pair, Branch::kSharpPlus);
  validate(cfg.oracle);
  Certificate cert;
  cert.part = "a";
  const double ref = pair.primal_value;

  constexpr double kBinaryTol = 1e-9;
  const auto brute = brute_force_binary_min(p, cfg.oracle.exec);
  ClaimVerdict binary{kPartABinaryMin, Status::kPass, std::nullopt, ref, kBinaryTol,
                      std::size_t{1} << p.dim(), "exhaustive minimum over {0,1}^n equals P(x_bar)"};
  if (std::abs(brute.value - ref) > kBinaryTol) {
    binary.status = Status::kFail;
    binary.witness = Witness{binary_point(brute.argmins.front(), p.dim()), brute.value};
  }
  cert.clauses.push_back(std::move(binary));

  constexpr double kBoxTol = 1e-9;
  const Vector lo = Vector::Zero(p.dim()), hi = Vector::Ones(p.dim());
  const auto pts = uniform_box_samples(lo, hi, cfg.oracle.samples, cfg.oracle.seed ^ pair.code);
  const ScalarField primal = [&p](const Vector& x) { return bin_primal_value(p, x); };
  const auto ext = kernels::extrema(cfg.oracle.exec, primal, pts);
  ClaimVerdict box{kPartABoxMin, Status::kPass, std::nullopt, ref, kBoxTol, ext.evaluated,
                   "no sample of [0,1]^n goes below P(x_bar)"};
  if (ext.min < ref - kBoxTol) {
    box.status = Status::kFail;
    box.witness = Witness{pts[static_cast<std::size_t>(ext.argmin)], ext.min};
  }
  cert.clauses.push_back(std::move(box));

  constexpr double kDualTol = 1e-9;
  const auto sweep = sweep_dual(p, pair, cfg, /*want_max=*/true);
  ClaimVerdict dual{kPartADualMax, Status::kPass, std::nullopt, pair.dual_value, kDualTol, sweep.accepted,
                    "no sampled sigma in S#+ exceeds P^d(sigma_bar)"};
  if (sweep.extreme && sweep.extreme->value > pair.dual_value + kDualTol) {
    dual.status = Status::kFail;
    dual.witness = sweep.extreme;
  }
  cert.clauses.push_back(std::move(dual));
  return cert;
}

Certificate bin_certify_part_b(const BinaryProblem& p, const CriticalPair& pair, const Certifier& cfg) {
  require_branch(pair, Branch::kSharpMinus);
  validate(cfg.oracle);
  Certificate cert;
  cert.part = "b";
  const EpsilonBall ball = bin_epsilon_ball(p, pair);
  cert.epsilon = ball.epsilon;
  const Eigen::Index n = p.dim();
  const double ref = pair.primal_value;

  // U intersected with [0,1]^n is the box between x_bar and x_bar +- eps, pointing inward.
  Vector lo(n), hi(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (ball.center(i) == 0.0) {
      lo(i) = 0.0;
      hi(i) = std::min(1.0, ball.epsilon);
    } else {
      lo(i) = std::max(0.0, 1.0 - ball.epsilon);
      hi(i) = 1.0;
    }
  }
  std::vector<Vector> pts = uniform_box_samples(lo, hi, cfg.oracle.samples, cfg.oracle.seed ^ pair.code);
  if (n <= cfg.corner_probe_max_n) {
    for (std::uint64_t corner = 0; corner < (std::uint64_t{1} << n); ++corner) {
      Vector x(n);
      for (Eigen::Index i = 0; i < n; ++i) x(i) = ((corner >> i) & 1U) ? hi(i) : lo(i);
      pts.push_back(std::move(x));
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) {
      Vector x = ball.center;
      x(i) = ball.center(i) == 0.0 ? hi(i) : lo(i);
      pts.push_back(std::move(x));
    }
    Vector diag(n);
    for (Eigen::Index i = 0; i < n; ++i) diag(i) = ball.center(i) == 0.0 ? hi(i) : lo(i);
    pts.push_back(std::move(diag));
  }
  constexpr double kBallTol = 1e-12;
  const ScalarField primal = [&p](const Vector& x) { return bin_primal_value(p, x); };
  const auto ext = kernels::extrema(cfg.oracle.exec, primal, pts);
  ClaimVerdict local{kPartBEpsilonBall, Status::kPass, std::nullopt, ref, kBallTol, ext.evaluated,
                     "P(x) >= P(x_bar) on the epsilon box, epsilon = " + std::to_string(ball.epsilon)};
  if (ext.min < ref - kBallTol) {
    local.status = Status::kFail;
    local.witness = Witness{pts[static_cast<std::size_t>(ext.argmin)], ext.min};
  }
  cert.clauses.push_back(std::move(local));

  constexpr double kDualTol = 1e-9;
  const auto sweep = sweep_dual(p, pair, cfg, /*want_max=*/false);
  ClaimVerdict dual{kPartBDualMin, Status::kPass, std::nullopt, pair.dual_value, kDualTol, sweep.accepted,
                    "no sampled sigma in S#- goes below P^d(sigma_bar)"};
  if (sweep.extreme && sweep.extreme->value < pair.dual_value - kDualTol) {
    dual.status = Status::kFail;
    dual.witness = sweep.extreme;
  }
  cert.clauses.push_back(std::move(dual));

  constexpr double kCurvatureTol = 1e-8;
  const auto curvature = classify_definiteness(bin_dual_hessian(p, pair.sigma));
  ClaimVerdict convex{kPartBConvexity, Status::kPass, std::nullopt, curvature.min_eig, kCurvatureTol, 1,
                      "min eigenvalue of the dual Hessian at sigma_bar"};
  if (curvature.min_eig < -kCurvatureTol) {
    convex.status = Status::kFail;
    convex.witness = Witness{pair.sigma, curvature.min_eig};
  }
  cert.clauses.push_back(std::move(convex));
  return cert;
}

}  // namespace dualcheck
