#pragma once

#include <string_view>
#include <vector>

#include "dualcheck/oracles.hpp"
#include "dualcheck/problems.hpp"
#include "dualcheck/report.hpp"

namespace dualcheck {

// Dual variable (s, sigma) in R^{1+n}.
struct BoxDualPoint {
  double sigma0;
  Vector sigma;

  Vector combined() const;
  static BoxDualPoint from_combined(const Vector& y);
};

// +infinity outside the box x_i^2 <= ell_i (1e-12 slack).
double box_primal_value(const BoxProblem& p, const Vector& x);
bool box_is_feasible(const BoxProblem& p, const Vector& x);

// A + s B'B + 2 Diag(sigma)
SymMatrix box_G(const BoxProblem& p, const BoxDualPoint& d);

double box_dual_value(const BoxProblem& p, const BoxDualPoint& d);

// With x = G^{-1} c: (1/2 x'B'Bx - s - alpha, x_i^2 - ell_i).
Vector box_dual_gradient(const BoxProblem& p, const BoxDualPoint& d);

Vector box_recover_primal(const BoxProblem& p, const BoxDualPoint& d);

enum class BoxMembership { kNotInSa, kSaOnly, kSaPlus, kSaMinus };

std::string_view to_string(BoxMembership m);

BoxMembership box_set_membership(const BoxProblem& p, const BoxDualPoint& d);

// Closed forms along the two perturbation paths through the Example-2
// critical point; gamma must lie in (0, 1).
double box_perturbation_primal(double gamma);
double box_perturbation_dual(double gamma);

BoxProblem example2_problem();
BoxDualPoint example2_critical_point();

// Directions probed (at gamma = 2^-1 ... 2^-levels) before random rays.
struct ProbePaths {
  std::vector<Vector> primal;  // in R^n, from x_bar
  std::vector<Vector> dual;    // in R^{1+n}, from the dual point
};

// x_bar + gamma (-1, -1) and y_bar + gamma (-16, 7, 7).
ProbePaths example2_probe_paths();

struct BoxRefuter {
  OracleConfig oracle{.seed = 1, .samples = 10000, .radius = 0.5, .margin = 1e-6,
                      .grid_resolution = 81, .exec = Exec::kParallel};
  ProbePaths paths;
  int path_levels = 10;
};

inline constexpr double kBoxCriticalTol = 1e-8;
inline constexpr const char* kBoxMinClaim = "(19)";
inline constexpr const char* kBoxMaxClaim = "(20)";
inline constexpr const char* kBoxGlobalClaim = "(18)";
inline constexpr const char* kBoxIdentityClaim = "duality-identity";

/// Checks the triality claims at an interior critical point of the dual.
/// For the negative-definite branch two independent searches run: a primal
/// ascent (refutes the local-max alternative) and a dual descent inside S_a
/// (refutes the local-min alternative).
RefutationReport box_verify_theorem2(const BoxProblem& p, const BoxDualPoint& d,
                                     const BoxRefuter& cfg = {});

}  // namespace dualcheck
