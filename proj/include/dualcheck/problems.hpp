#pragma once

#include "dualcheck/sym_matrix.hpp"

namespace dualcheck {

// min 1/2 x'Ax - f'x  subject to  1/2 x'Cx <= lambda, with C positive definite.
struct QcProblem {
  QcProblem(SymMatrix A, SymMatrix C, Vector f, double lambda);

  Eigen::Index dim() const noexcept { return A.dim(); }

  SymMatrix A;
  SymMatrix C;
  Vector f;
  double lambda;
};

// min 1/2 (1/2 |Bx|^2 - alpha)^2 + 1/2 x'Ax - c'x  over the box x_i^2 <= ell_i.
struct BoxProblem {
  BoxProblem(SymMatrix A, Matrix B, Vector c, double alpha, Vector ell);

  Eigen::Index dim() const noexcept { return A.dim(); }
  Vector upper_bounds() const { return ell.cwiseSqrt(); }

  SymMatrix A;
  Matrix B;
  Vector c;
  double alpha;
  Vector ell;
};

// min 1/2 x'Qx - f'x  over x in {0,1}^n (and its relaxation [0,1]^n).
struct BinaryProblem {
  BinaryProblem(SymMatrix Q, Vector f);

  Eigen::Index dim() const noexcept { return Q.dim(); }

  SymMatrix Q;
  Vector f;
};

}  // namespace dualcheck
