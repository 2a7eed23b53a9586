#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "dualcheck/box_family.hpp"
#include "dualcheck/derivative_checks.hpp"
#include "dualcheck/error.hpp"
#include "dualcheck/rng.hpp"
#include "test_support.hpp"

namespace dualcheck {
namespace {

using testing::vec;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected dualcheck::Error";
  return ErrorCode::kInvalidArgument;
}

// Independent evaluation of the box primal from its definition.
double primal_reference(const BoxProblem& p, const Vector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) * x(i) > p.ell(i) + 1e-12) return std::numeric_limits<double>::infinity();
  }
  const double xi = 0.5 * (p.B * x).squaredNorm() - p.alpha;
  return 0.5 * xi * xi + 0.5 * x.dot(p.A.matrix() * x) - p.c.dot(x);
}

// Dual value from the definition with a dense inverse.
double dual_reference(const BoxProblem& p, const BoxDualPoint& d) {
  const Matrix G = p.A.matrix() + d.sigma0 * p.B.transpose() * p.B + 2.0 * Matrix(d.sigma.asDiagonal());
  return -0.5 * p.c.dot(G.inverse() * p.c) - 0.5 * d.sigma0 * d.sigma0 - p.alpha * d.sigma0 - p.ell.dot(d.sigma);
}

TEST(BoxProblem, Validation) {
  EXPECT_EQ(code_of([] { BoxProblem(SymMatrix::identity(2), Matrix::Identity(2, 2), vec({1, 1}), 0.0, vec({1, 1})); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { BoxProblem(SymMatrix::identity(2), Matrix::Identity(2, 2), vec({1, 1}), 1.0, vec({-1, 1})); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { BoxProblem(SymMatrix::identity(2), Matrix::Identity(3, 3), vec({1, 1}), 1.0, vec({1, 1})); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(example2_problem().upper_bounds(), vec({2, 2}));
}

TEST(BoxPrimal, Example2Values) {
  const BoxProblem p = example2_problem();
  EXPECT_DOUBLE_EQ(box_primal_value(p, vec({2, 2})), -7.5);
  EXPECT_DOUBLE_EQ(box_primal_value(p, vec({0, 0})), 4.5);
  EXPECT_EQ(box_primal_value(p, vec({3, 0})), std::numeric_limits<double>::infinity());
  EXPECT_FALSE(box_is_feasible(p, vec({3, 0})));
  EXPECT_TRUE(box_is_feasible(p, vec({2, -2})));
}

TEST(BoxPrimal, MatchesReferenceOnRandomPoints) {
  const BoxProblem p = example2_problem();
  Rng rng(2);
  for (int k = 0; k < 200; ++k) {
    const Vector x = rng.in_box(vec({-2.5, -2.5}), vec({2.5, 2.5}));
    const double a = box_primal_value(p, x), b = primal_reference(p, x);
    if (std::isinf(b)) {
      EXPECT_TRUE(std::isinf(a));
    } else {
      EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(b)));
    }
  }
}

TEST(BoxG, Examples) {
  const BoxProblem p = example2_problem();
  EXPECT_EQ(box_G(p, example2_critical_point()).matrix(), -Matrix::Identity(2, 2));
  EXPECT_EQ(box_G(p, {0.0, Vector::Zero(2)}).matrix(), p.A.matrix());
  EXPECT_EQ(box_G(p, {4.0, Vector::Zero(2)}).matrix(), Matrix::Zero(2, 2));
}

TEST(BoxDual, Example2Values) {
  const BoxProblem p = example2_problem();
  EXPECT_DOUBLE_EQ(box_dual_value(p, example2_critical_point()), -7.5);
  EXPECT_NEAR(box_dual_value(p, {-7.0, vec({4.5, 4.5})}), -37.5, 1e-12);
  EXPECT_EQ(code_of([&] { box_dual_value(p, {4.0, Vector::Zero(2)}); }), ErrorCode::kSingularG);
  EXPECT_EQ(code_of([&] { box_dual_gradient(p, {4.0, Vector::Zero(2)}); }), ErrorCode::kSingularG);
}

TEST(BoxDual, ZeroLinearTerm) {
  const BoxProblem p(SymMatrix{{1, 0.2}, {0.2, 2}}, Matrix::Identity(2, 2), Vector::Zero(2), 3.0, vec({1, 2}));
  const BoxDualPoint d{0.5, vec({0.3, 0.7})};
  EXPECT_DOUBLE_EQ(box_dual_value(p, d), -0.125 - 1.5 - (0.3 + 1.4));
  const Vector g = box_dual_gradient(p, d);
  EXPECT_DOUBLE_EQ(g(0), -0.5 - 3.0);
  EXPECT_DOUBLE_EQ(g(1), -1.0);
  EXPECT_DOUBLE_EQ(g(2), -2.0);
}

TEST(BoxDual, MatchesReferenceOnRandomPoints) {
  const BoxProblem p(SymMatrix{{-1, 0.5, 0}, {0.5, 2, 1}, {0, 1, -3}}, Matrix{{1, 2, 0}, {0, 1, -1}},
                     vec({1, -2, 0.5}), 2.0, vec({1, 4, 2}));
  Rng rng(8);
  for (int k = 0; k < 200; ++k) {
    const BoxDualPoint d{rng.uniform(-2.0, 5.0), rng.in_box(Vector::Zero(3), Vector::Constant(3, 4.0))};
    if (!numerically_invertible(box_G(p, d))) continue;
    const double ref = dual_reference(p, d);
    EXPECT_NEAR(box_dual_value(p, d), ref, 1e-9 * std::max(1.0, std::abs(ref)));
  }
}

TEST(BoxDual, GradientAtExample2CriticalPoint) {
  const BoxProblem p = example2_problem();
  EXPECT_LE(box_dual_gradient(p, example2_critical_point()).norm(), 1e-12);
  const Vector fd = fd_gradient([&](const Vector& y) { return box_dual_value(p, BoxDualPoint::from_combined(y)); },
                                example2_critical_point().combined());
  EXPECT_LE(fd.norm(), 1e-6);
}

TEST(BoxDual, GradientMatchesFd) {
  EXPECT_LE(check_box_gradient(example2_problem(), 100, 3).max_rel_err, 1e-6);
  const BoxProblem p(SymMatrix{{-1, 0.5, 0}, {0.5, 2, 1}, {0, 1, -3}}, Matrix{{1, 2, 0}, {0, 1, -1}},
                     vec({1, -2, 0.5}), 2.0, vec({1, 4, 2}));
  EXPECT_LE(check_box_gradient(p, 100, 4).max_rel_err, 1e-6);
}

TEST(BoxDualPoint, CombinedRoundTrip) {
  const BoxDualPoint d{1.5, vec({2, 3})};
  EXPECT_EQ(d.combined(), vec({1.5, 2, 3}));
  const BoxDualPoint e = BoxDualPoint::from_combined(vec({1.5, 2, 3}));
  EXPECT_EQ(e.sigma0, 1.5);
  EXPECT_EQ(e.sigma, vec({2, 3}));
}

TEST(BoxMembership, Examples) {
  const BoxProblem p = example2_problem();
  EXPECT_EQ(box_set_membership(p, example2_critical_point()), BoxMembership::kSaMinus);
  EXPECT_EQ(box_set_membership(p, {10.0, vec({1, 1})}), BoxMembership::kSaPlus);
  EXPECT_EQ(box_set_membership(p, {-4.0, Vector::Zero(2)}), BoxMembership::kNotInSa);
  EXPECT_EQ(box_set_membership(p, {1.0, vec({-0.1, 1})}), BoxMembership::kNotInSa);
  EXPECT_EQ(box_set_membership(p, {4.0, Vector::Zero(2)}), BoxMembership::kNotInSa);  // singular G
  EXPECT_EQ(box_set_membership(p, {1.0, vec({0.5, 2.0})}), BoxMembership::kSaOnly);  // G = diag(-2, 1)
}

TEST(BoxPerturbation, ClosedFormsAtGammaQuarter) {
  EXPECT_NEAR(box_perturbation_primal(0.25), -7.5 + 2.251953125, 1e-15);
  EXPECT_NEAR(box_perturbation_dual(0.25), -7.5 - 22.0 / 3.0, 1e-13);
  EXPECT_NEAR(box_perturbation_primal(1e-9), -7.5, 1e-7);
  EXPECT_NEAR(box_perturbation_dual(1e-9), -7.5, 1e-7);
}

TEST(BoxPerturbation, OutOfRange) {
  for (double g : {0.0, 1.0, -0.5, 2.0}) {
    EXPECT_EQ(code_of([&] { box_perturbation_primal(g); }), ErrorCode::kOutOfRange);
    EXPECT_EQ(code_of([&] { box_perturbation_dual(g); }), ErrorCode::kOutOfRange);
  }
}

TEST(BoxPerturbation, AgreesWithDirectEvaluationAtRandomGamma) {
  const BoxProblem p = example2_problem();
  Rng rng(31);
  for (int k = 0; k < 100; ++k) {
    const double g = rng.uniform(1e-6, 1.0 - 1e-6);
    EXPECT_NEAR(box_perturbation_primal(g), primal_reference(p, vec({2 - g, 2 - g})), 1e-10);
    EXPECT_NEAR(box_perturbation_dual(g), dual_reference(p, {1 - 16 * g, vec({1 + 7 * g, 1 + 7 * g})}), 1e-10);
  }
}

TEST(BoxPerturbation, StrictInequalitiesOnGrid) {
  for (int k = 1; k <= 1000; ++k) {
    const double g = k / 1001.0;
    EXPECT_GT(box_perturbation_primal(g), -7.5);
    EXPECT_LT(box_perturbation_dual(g), -7.5);
  }
}

TEST(BoxTheorem2, Example2BothClaimsRefuted) {
  const BoxProblem p = example2_problem();
  BoxRefuter cfg;
  cfg.paths = example2_probe_paths();
  const RefutationReport r = box_verify_theorem2(p, example2_critical_point(), cfg);
  EXPECT_EQ(r.classification, "SaMinus");
  EXPECT_EQ(r.x_bar, vec({2, 2}));
  EXPECT_NEAR(r.primal_value, -7.5, 1e-12);
  EXPECT_NEAR(r.dual_value, -7.5, 1e-12);
  EXPECT_EQ(r.claim(kBoxIdentityClaim).status, Status::kPass);

  const ClaimVerdict& c20 = r.claim(kBoxMaxClaim);
  ASSERT_EQ(c20.status, Status::kRefuted);
  EXPECT_TRUE(box_is_feasible(p, c20.witness->point));
  EXPECT_LE((c20.witness->point - r.x_bar).norm(), 0.5);
  EXPECT_GT(c20.witness->value, -7.5);
  EXPECT_EQ(c20.witness->point, vec({1.75, 1.75}));

  const ClaimVerdict& c19 = r.claim(kBoxMinClaim);
  ASSERT_EQ(c19.status, Status::kRefuted);
  const BoxDualPoint w = BoxDualPoint::from_combined(c19.witness->point);
  EXPECT_NE(box_set_membership(p, w), BoxMembership::kNotInSa);
  EXPECT_LE((c19.witness->point - example2_critical_point().combined()).norm(), 0.5);
  EXPECT_LT(c19.witness->value, -7.5);
  EXPECT_FALSE(r.has_claim(kBoxGlobalClaim));
}

TEST(BoxTheorem2, RandomSearchAloneAlsoRefutes) {
  BoxRefuter cfg;  // no probe paths
  const RefutationReport r = box_verify_theorem2(example2_problem(), example2_critical_point(), cfg);
  EXPECT_EQ(r.claim(kBoxMinClaim).status, Status::kRefuted);
  EXPECT_EQ(r.claim(kBoxMaxClaim).status, Status::kRefuted);
}

TEST(BoxTheorem2, PositiveDefiniteBranchConfirmed) {
  const BoxProblem p = example2_problem();
  const BoxDualPoint plus{1.0, vec({2, 2})};
  EXPECT_EQ(box_set_membership(p, plus), BoxMembership::kSaPlus);
  EXPECT_LE(box_dual_gradient(p, plus).norm(), 1e-12);
  const RefutationReport r = box_verify_theorem2(p, plus);
  EXPECT_EQ(r.x_bar, vec({-2, -2}));
  EXPECT_EQ(r.claim(kBoxGlobalClaim).status, Status::kConfirmed);
  EXPECT_NEAR(r.primal_value, r.dual_value, 1e-12);
}

TEST(BoxTheorem2, NotCritical) {
  const BoxProblem zero_c(-4.0 * SymMatrix::identity(2), Matrix::Identity(2, 2), Vector::Zero(2), 3.0, vec({4, 4}));
  EXPECT_EQ(code_of([&] { box_verify_theorem2(zero_c, {1.0, Vector::Zero(2)}); }), ErrorCode::kNotCritical);
  const BoxProblem p = example2_problem();
  EXPECT_EQ(code_of([&] { box_verify_theorem2(p, {1.0, vec({1.0, 1.5})}); }), ErrorCode::kNotCritical);
  EXPECT_EQ(code_of([&] { box_verify_theorem2(p, {-3.0, vec({1, 1})}); }), ErrorCode::kNotCritical);
}

TEST(BoxTheorem2, DeterministicForSeed) {
  BoxRefuter cfg;
  const auto a = box_verify_theorem2(example2_problem(), example2_critical_point(), cfg);
  cfg.oracle.exec = Exec::kSerial;
  const auto b = box_verify_theorem2(example2_problem(), example2_critical_point(), cfg);
  EXPECT_EQ(a.claim(kBoxMinClaim).witness->point, b.claim(kBoxMinClaim).witness->point);
  EXPECT_EQ(a.claim(kBoxMaxClaim).witness->point, b.claim(kBoxMaxClaim).witness->point);
}

}  // namespace
}  // namespace dualcheck
