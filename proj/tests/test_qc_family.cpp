#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dualcheck/derivative_checks.hpp"
#include "dualcheck/error.hpp"
#include "dualcheck/qc_family.hpp"
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

QcProblem unit_identity_problem() { return QcProblem(SymMatrix::identity(2), SymMatrix::identity(2), Vector::Zero(2), 1.0); }

TEST(QcProblem, RequiresPositiveDefiniteC) {
  EXPECT_EQ(code_of([] { QcProblem(SymMatrix::identity(2), SymMatrix::diagonal(vec({1, 0})), vec({1, 1}), 1.0); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { QcProblem(SymMatrix::identity(2), SymMatrix::identity(2), vec({1}), 1.0); }),
            ErrorCode::kInvalidArgument);
}

TEST(QcPrimal, Values) {
  const QcProblem p = example1_problem();
  EXPECT_EQ(qc_primal_value(p, vec({1, 0})), 0.0);
  EXPECT_EQ(qc_primal_value(p, vec({0, 0})), 0.0);
  EXPECT_DOUBLE_EQ(qc_primal_value(p, vec({0, 1})), -0.5);
}

TEST(QcPrimal, Feasibility) {
  const QcProblem p = example1_problem();
  EXPECT_TRUE(qc_is_feasible(p, vec({1, 0})));
  EXPECT_TRUE(qc_is_feasible(p, vec({0, 0})));
  EXPECT_FALSE(qc_is_feasible(p, vec({2, 0})));
}

TEST(QcDual, Values) {
  const QcProblem p = example1_problem();
  EXPECT_NEAR(qc_dual_value(p, 1.0), 0.0, 1e-15);
  EXPECT_NEAR(qc_dual_value(p, 2.0), -0.5, 1e-15);
  EXPECT_NEAR(qc_dual_value(p, 5.0), -16.0 / 5.0, 1e-14);
}

TEST(QcDual, MatchesExample1ClosedForm) {
  const QcProblem p = example1_problem();
  const auto poles = qc_poles(p);
  Rng rng(17);
  for (int k = 0; k < 500; ++k) {
    const double y = rng.uniform(0.0, 10.0);
    if (std::abs(y - poles[0]) < 1e-3 || std::abs(y - poles[1]) < 1e-3) continue;
    EXPECT_NEAR(qc_dual_value(p, y), testing::example1_dual_closed(y),
                1e-10 * std::max(1.0, std::abs(testing::example1_dual_closed(y))));
    EXPECT_NEAR(qc_dual_derivative(p, y), testing::example1_derivative_closed(y),
                1e-9 * std::max(1.0, std::abs(testing::example1_derivative_closed(y))));
  }
}

TEST(QcDual, Derivative) {
  const QcProblem p = example1_problem();
  for (double s : {1.0, 2.0, 5.0}) EXPECT_NEAR(qc_dual_derivative(p, s), 0.0, 1e-12);
  EXPECT_NEAR(qc_dual_derivative(p, 3.0), 2.0, 1e-12);
  const QcProblem zero_f(SymMatrix{{-2, 1}, {1, 3}}, SymMatrix::identity(2), Vector::Zero(2), 0.7);
  EXPECT_DOUBLE_EQ(qc_dual_derivative(zero_f, 0.5), -0.7);
}

TEST(QcDual, CurvatureMatchesFiniteDifference) {
  const QcProblem p = example1_problem();
  for (double s : {0.3, 2.0, 2.7, 4.2, 7.0}) {
    const double fd = fd_derivative([&](double t) { return qc_dual_derivative(p, t); }, s);
    EXPECT_NEAR(qc_dual_curvature(p, s), fd, 1e-6 * std::max(1.0, std::abs(fd)));
  }
}

TEST(QcDual, PolesRaise) {
  const QcProblem p = example1_problem();
  const auto poles = qc_poles(p);
  ASSERT_EQ(poles.size(), 2U);
  EXPECT_NEAR(poles[0], (5.0 - std::sqrt(5.0)) / 2.0, 1e-12);
  EXPECT_NEAR(poles[1], (5.0 + std::sqrt(5.0)) / 2.0, 1e-12);
  EXPECT_EQ(code_of([&] { qc_dual_value(p, poles[0]); }), ErrorCode::kPoleAtSigma);
  EXPECT_EQ(code_of([&] { qc_dual_derivative(p, poles[1]); }), ErrorCode::kPoleAtSigma);
  EXPECT_EQ(code_of([&] { qc_recover_primal(p, poles[1]); }), ErrorCode::kPoleAtSigma);
  EXPECT_NEAR(qc_default_search_upper(p), 10.0 * (1.0 + poles[1]), 1e-12);
}

TEST(QcDual, DerivativeMatchesFdOffPole) {
  const DerivativeCheck c = check_qc_derivative(example1_problem(), 100, 1);
  EXPECT_EQ(c.points, 100U);
  EXPECT_LE(c.max_rel_err, 1e-6);
}

TEST(QcCriticalPoints, Example1) {
  const auto crit = qc_find_critical_points(example1_problem(), 0.0, 10.0);
  ASSERT_EQ(crit.size(), 3U);
  EXPECT_NEAR(crit[0], 1.0, 1e-8);
  EXPECT_NEAR(crit[1], 2.0, 1e-8);
  EXPECT_NEAR(crit[2], 5.0, 1e-8);
}

TEST(QcCriticalPoints, NoneWhenDerivativeConstant) {
  EXPECT_TRUE(qc_find_critical_points(unit_identity_problem(), 0.0, 10.0).empty());
}

TEST(QcCriticalPoints, OneDimensionalWithLowerEndpointRoot) {
  const QcProblem p(SymMatrix{{-1}}, SymMatrix{{1}}, vec({1}), 0.5);
  const auto crit = qc_find_critical_points(p, 0.0, 10.0);
  ASSERT_EQ(crit.size(), 2U);
  EXPECT_NEAR(crit[0], 0.0, 1e-8);
  EXPECT_NEAR(crit[1], 2.0, 1e-8);
}

TEST(QcCriticalPoints, SerialEqualsParallel) {
  const QcProblem p = example1_problem();
  EXPECT_EQ(qc_find_critical_points(p, 0.0, 10.0, {.exec = Exec::kSerial}),
            qc_find_critical_points(p, 0.0, 10.0, {.exec = Exec::kParallel}));
}

TEST(QcCriticalPoints, ResidualPropertyOnRandomInstances) {
  Rng rng(23);
  int found = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index n = 1 + trial % 4;
    Matrix a(n, n), c(n, n);
    Vector f(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      f(i) = rng.uniform(-2.0, 2.0);
      for (Eigen::Index j = 0; j < n; ++j) {
        a(i, j) = rng.uniform(-3.0, 3.0);
        c(i, j) = rng.uniform(-1.0, 1.0);
      }
    }
    c = c * c.transpose() + Matrix::Identity(n, n);
    const QcProblem p{SymMatrix(a), SymMatrix(c), f, rng.uniform(0.1, 2.0)};
    const auto crit = qc_find_critical_points(p, 0.0, qc_default_search_upper(p));
    for (std::size_t i = 0; i < crit.size(); ++i) {
      ++found;
      EXPECT_LE(std::abs(qc_dual_derivative(p, crit[i])), 1e-8);
      if (i > 0) {
        EXPECT_GT(crit[i] - crit[i - 1], 1e-7);
      }
      const QcCritical q = qc_describe_critical(p, crit[i]);
      if (q.constraint_slack >= -1e-10) {
        EXPECT_LE(std::abs(q.dual_value - q.primal_value), 1e-8 * std::max(1.0, std::abs(q.dual_value)));
      }
    }
  }
  EXPECT_GT(found, 10);
}

TEST(QcCriticalPoints, InvalidInterval) {
  const QcProblem p = example1_problem();
  EXPECT_EQ(code_of([&] { qc_find_critical_points(p, -1.0, 1.0); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { qc_find_critical_points(p, 2.0, 1.0); }), ErrorCode::kInvalidArgument);
}

TEST(QcRecover, Examples) {
  const QcProblem p = example1_problem();
  const Vector x1 = qc_recover_primal(p, 1.0);
  EXPECT_NEAR(x1(0), 1.0, 1e-12);
  EXPECT_NEAR(x1(1), 0.0, 1e-12);
  const Vector x5 = qc_recover_primal(p, 5.0);
  EXPECT_NEAR(x5(0), -0.6, 1e-12);
  EXPECT_NEAR(x5(1), -0.8, 1e-12);
  EXPECT_EQ(qc_recover_primal(unit_identity_problem(), 0.5), Vector::Zero(2));
}

TEST(QcTheorem16, Example1NegativeDefiniteBranchRefuted) {
  const QcProblem p = example1_problem();
  const OracleConfig cfg{.samples = 10000, .radius = 0.15};
  const RefutationReport r = qc_verify_theorem16(p, 1.0, cfg);
  EXPECT_EQ(r.classification, "NegativeDefinite");
  EXPECT_EQ(r.claim(kQcIdentityClaim).status, Status::kPass);
  const ClaimVerdict& v = r.claim(kQcNegDefClaim);
  EXPECT_EQ(v.status, Status::kRefuted);
  ASSERT_TRUE(v.witness.has_value());
  EXPECT_TRUE(qc_is_feasible(p, v.witness->point));
  EXPECT_LE((v.witness->point - r.x_bar).norm(), 0.15);
  EXPECT_LE(v.witness->value, r.primal_value - 1e-3);
  EXPECT_FALSE(r.has_claim(kQcPosDefClaim));
}

TEST(QcTheorem16, Example1PositiveDefiniteBranchConfirmed) {
  const RefutationReport r = qc_verify_theorem16(example1_problem(), 5.0, OracleConfig{});
  EXPECT_EQ(r.classification, "PositiveDefinite");
  EXPECT_NEAR(r.primal_value, -3.2, 1e-12);
  EXPECT_EQ(r.claim(kQcPosDefClaim).status, Status::kConfirmed);
  EXPECT_FALSE(r.has_claim(kQcNegDefClaim));
}

TEST(QcTheorem16, IndefiniteCriticalPointHasNoBranchClaim) {
  const RefutationReport r = qc_verify_theorem16(example1_problem(), 2.0, OracleConfig{});
  EXPECT_EQ(r.classification, "Indefinite");
  EXPECT_FALSE(r.has_claim(kQcNegDefClaim));
  EXPECT_FALSE(r.has_claim(kQcPosDefClaim));
}

TEST(QcTheorem16, NotCritical) {
  for (double s : {0.0, 0.5, 3.0, 7.0}) {
    EXPECT_EQ(code_of([&] { qc_verify_theorem16(unit_identity_problem(), s, OracleConfig{}); }),
              ErrorCode::kNotCritical);
  }
  EXPECT_EQ(code_of([] { qc_verify_theorem16(example1_problem(), 3.0, OracleConfig{}); }), ErrorCode::kNotCritical);
  EXPECT_EQ(code_of([] { qc_verify_theorem16(example1_problem(), -1.0, OracleConfig{}); }), ErrorCode::kNotCritical);
}

TEST(QcBoundaryProfile, Example1Values) {
  const QcProblem p = example1_problem();
  // 4 samples: t = -pi/2, 0, pi/2, pi.
  const auto prof = qc_boundary_profile(p, 4);
  ASSERT_EQ(prof.size(), 4U);
  EXPECT_NEAR(prof[1].first, 0.0, 1e-15);
  EXPECT_NEAR(prof[1].second, 0.0, 1e-15);
  EXPECT_NEAR(prof[2].second, -0.5, 1e-15);
  EXPECT_DOUBLE_EQ(prof[3].first, std::numbers::pi);
  EXPECT_NEAR(prof[3].second, -2.0, 1e-15);
}

TEST(QcBoundaryProfile, MatchesClosedFormEverywhere) {
  const auto prof = qc_boundary_profile(example1_problem(), 629);
  ASSERT_EQ(prof.size(), 629U);
  EXPECT_GT(prof.front().first, -std::numbers::pi);
  EXPECT_DOUBLE_EQ(prof.back().first, std::numbers::pi);
  for (const auto& [t, value] : prof) {
    const double s = std::sin(0.5 * t);
    EXPECT_NEAR(value, -(3.0 + std::cos(t) - 2.0 * std::sin(t)) * s * s, 1e-12);
  }
}

TEST(QcBoundaryProfile, UnsupportedShapes) {
  const QcProblem three(SymMatrix::identity(3), SymMatrix::identity(3), Vector::Ones(3), 1.0);
  EXPECT_EQ(code_of([&] { qc_boundary_profile(three, 10); }), ErrorCode::kUnsupportedShape);
  const QcProblem scaled(SymMatrix::identity(2), 2.0 * SymMatrix::identity(2), Vector::Ones(2), 1.0);
  EXPECT_EQ(code_of([&] { qc_boundary_profile(scaled, 10); }), ErrorCode::kUnsupportedShape);
}

}  // namespace
}  // namespace dualcheck
