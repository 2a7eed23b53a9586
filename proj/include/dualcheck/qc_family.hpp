#pragma once

#include <utility>
#include <vector>

#include "dualcheck/oracles.hpp"
#include "dualcheck/problems.hpp"
#include "dualcheck/report.hpp"

namespace dualcheck {

/// Quadratically constrained family: primal, one-dimensional canonical dual
///   P^d(s) = -1/2 f'(A + sC)^{-1} f - lambda s,
/// its critical points, and the check of the two-branch extremality claim
/// at a critical point.

double qc_primal_value(const QcProblem& p, const Vector& x);
bool qc_is_feasible(const QcProblem& p, const Vector& x);

double qc_dual_value(const QcProblem& p, double sigma);

// 1/2 g'Cg - lambda with g = (A + sigma C)^{-1} f.
double qc_dual_derivative(const QcProblem& p, double sigma);

// d/dsigma of qc_dual_derivative: -(Cg)'(A + sigma C)^{-1}(Cg).
double qc_dual_curvature(const QcProblem& p, double sigma);

Vector qc_recover_primal(const QcProblem& p, double sigma);

// Values of sigma where A + sigma C is singular, ascending.
std::vector<double> qc_poles(const QcProblem& p);

// Default search interval upper end: 10 (1 + max(0, largest pole)).
double qc_default_search_upper(const QcProblem& p);

struct CriticalSearch {
  double tol = 1e-8;
  int scan_points = 10000;  // per pole-free sub-interval
  Exec exec = Exec::kParallel;
};

/// All critical points of the dual in [lo, hi], ascending. Sign changes of
/// the derivative are bisected; grid minima of |derivative| without a sign
/// change are polished as extrema of the derivative so tangential roots are
/// not lost.
std::vector<double> qc_find_critical_points(const QcProblem& p, double lo, double hi,
                                            const CriticalSearch& search = {});

struct QcCritical {
  double sigma;
  double dual_value;
  double derivative_residual;
  Definiteness matrix_class;
  Vector x_bar;
  double primal_value;
  double constraint_slack;  // lambda - 1/2 x'Cx
};

QcCritical qc_describe_critical(const QcProblem& p, double sigma);

inline constexpr double kQcCriticalTol = 1e-8;

// Claim ids used in the report.
inline constexpr const char* kQcNegDefClaim = "theorem16-negdef-local-min";
inline constexpr const char* kQcPosDefClaim = "theorem16-posdef-global-min";
inline constexpr const char* kQcIdentityClaim = "duality-identity";

RefutationReport qc_verify_theorem16(const QcProblem& p, double sigma, const OracleConfig& cfg);

// Primal on the circle sqrt(2 lambda)(cos t, sin t), t uniform over (-pi, pi].
// Requires n == 2 and C == I.
std::vector<std::pair<double, double>> qc_boundary_profile(const QcProblem& p, int samples);

QcProblem example1_problem(double lambda = 0.5);

}  // namespace dualcheck
