#include "dualcheck/problems.hpp"

#include <cmath>

#include "dualcheck/error.hpp"

namespace dualcheck {

namespace {
void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}
}  // namespace

QcProblem::QcProblem(SymMatrix a, SymMatrix c, Vector lin, double level)
    : A(std::move(a)), C(std::move(c)), f(std::move(lin)), lambda(level) {
  require(C.dim() == A.dim() && f.size() == A.dim(), "qc problem: inconsistent dimensions");
  require(std::isfinite(lambda), "qc problem: lambda must be finite");
  require(classify_definiteness(C).positive_definite(), "qc problem: C must be positive definite");
}

BoxProblem::BoxProblem(SymMatrix a, Matrix b, Vector lin, double level, Vector bounds)
    : A(std::move(a)), B(std::move(b)), c(std::move(lin)), alpha(level), ell(std::move(bounds)) {
  require(B.cols() == A.dim() && B.rows() >= 1, "box problem: B must be m x n");
  require(c.size() == A.dim() && ell.size() == A.dim(), "box problem: inconsistent dimensions");
  require(alpha > 0.0, "box problem: alpha must be positive");
  require((ell.array() >= 0.0).all(), "box problem: ell must be nonnegative");
}

BinaryProblem::BinaryProblem(SymMatrix q, Vector lin) : Q(std::move(q)), f(std::move(lin)) {
  require(f.size() == Q.dim(), "binary problem: inconsistent dimensions");
}

}  // namespace dualcheck
