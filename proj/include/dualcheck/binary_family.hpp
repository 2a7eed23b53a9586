#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dualcheck/oracles.hpp"
#include "dualcheck/problems.hpp"
#include "dualcheck/report.hpp"

namespace dualcheck {

/// 0-1 quadratic programs min 1/2 x'Qx - f'x over {0,1}^n and their
/// canonical dual P^d(sigma) = -1/2 (f+sigma)' Q_d(sigma)^{-1} (f+sigma),
/// Q_d(sigma) = Q + 2 Diag(sigma).

SymMatrix bin_qd(const BinaryProblem& p, const Vector& sigma);

double bin_primal_value(const BinaryProblem& p, const Vector& x);

// 1/2 x'Q_d(sigma)x - x'(f + sigma); affine in sigma for fixed x.
double bin_xi_value(const BinaryProblem& p, const Vector& x, const Vector& sigma);

double bin_dual_value(const BinaryProblem& p, const Vector& sigma);

// Component i is x_i^2 - x_i with x = Q_d(sigma)^{-1}(f + sigma).
Vector bin_dual_gradient(const BinaryProblem& p, const Vector& sigma);

// First differential applied to v, evaluated term by term:
//   -v'Q_d^{-1}(f+sigma) + (f+sigma)'Q_d^{-1} Diag(v) Q_d^{-1}(f+sigma).
double bin_dual_differential(const BinaryProblem& p, const Vector& sigma, const Vector& v);

// H = -A + 2(A X + X A) - 4 X A X with A = Q_d^{-1}, X = Diag(x).
SymMatrix bin_dual_hessian(const BinaryProblem& p, const Vector& sigma);

// Second differential d^2 P^d(sigma)(v, v), evaluated term by term.
double bin_dual_second_differential(const BinaryProblem& p, const Vector& sigma, const Vector& v);

// -(v - 2w)'A(v - 2w) with A = Q_d^{-1}, w = Diag(v) A (f + sigma).
double bin_hessian_square_form(const BinaryProblem& p, const Vector& sigma, const Vector& v);

Vector bin_recover_primal(const BinaryProblem& p, const Vector& sigma);

enum class Branch { kSharpPlus, kSharpMinus, kRejected };

std::string_view to_string(Branch b);

inline constexpr double kSigmaStrictness = 1e-12;

// S#+ / S#- membership: sigma > 1e-12 componentwise and Q_d definite.
Branch bin_branch(const BinaryProblem& p, const Vector& sigma);

struct CriticalPair {
  std::uint64_t code;  // bit n-1-i holds x_i
  Vector x_star;
  Vector sigma;
  Branch branch;
  bool degenerate_sigma;  // some |sigma_i| <= 1e-12
  double dual_value;      // NaN when Q_d(sigma) is singular
  double primal_value;
  double residual;        // ||Q_d(sigma) x* - (f + sigma)||_inf

  std::string bits() const;
};

/// One dual critical point per binary target x*, with
/// sigma_i = (2 x*_i - 1)(f_i - (Q x*)_i), in lexicographic order of x*.
std::vector<CriticalPair> bin_enumerate_criticals(const BinaryProblem& p, Exec exec = Exec::kParallel);

struct EpsilonBall {
  double epsilon;
  Vector center;
};

// epsilon = 2 min_k sigma_k / (n max |q_ij|), or 1 when Q == 0.
EpsilonBall bin_epsilon_ball(const BinaryProblem& p, const CriticalPair& pair);

struct Certifier {
  OracleConfig oracle{};
  std::size_t dual_candidates = 1000;  // per radius, before membership filtering
  std::vector<double> dual_radii{0.1, 1.0, 10.0};
  Eigen::Index corner_probe_max_n = 12;  // all sub-box corners up to this n
};

inline constexpr const char* kPartABinaryMin = "a.binary-min";
inline constexpr const char* kPartABoxMin = "a.box-min";
inline constexpr const char* kPartADualMax = "a.dual-max";
inline constexpr const char* kPartBEpsilonBall = "b.epsilon-ball";
inline constexpr const char* kPartBDualMin = "b.dual-min";
inline constexpr const char* kPartBConvexity = "b.dual-convexity";

// Part (a): a SharpPlus pair gives the global minimum over [0,1]^n and the
// dual maximum over S#+.
Certificate bin_certify_part_a(const BinaryProblem& p, const CriticalPair& pair, const Certifier& cfg = {});

// Part (b): a SharpMinus pair gives a local minimum on [0,1]^n inside the
// epsilon box and the dual minimum over S#-.
Certificate bin_certify_part_b(const BinaryProblem& p, const CriticalPair& pair, const Certifier& cfg = {});

}  // namespace dualcheck
