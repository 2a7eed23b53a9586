#include "dualcheck/sym_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "dualcheck/error.hpp"

namespace dualcheck {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kNonFiniteSample: return "NonFiniteSample";
    case ErrorCode::kPoleAtSigma: return "PoleAtSigma";
    case ErrorCode::kSingularG: return "SingularG";
    case ErrorCode::kSingularQd: return "SingularQd";
    case ErrorCode::kNotCritical: return "NotCritical";
    case ErrorCode::kUnsupportedShape: return "UnsupportedShape";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kWrongBranch: return "WrongBranch";
    case ErrorCode::kInstanceTooLarge: return "InstanceTooLarge";
    case ErrorCode::kEmptySampler: return "EmptySampler";
    case ErrorCode::kSchema: return "Schema";
  }
  return "Unknown";
}

SymMatrix::SymMatrix(const Matrix& m) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    throw Error(ErrorCode::kInvalidArgument, "symmetric matrix must be square with dim >= 1");
  }
  m_ = Matrix(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    m_(i, i) = m(i, i);
    for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      m_(i, j) = avg;
      m_(j, i) = avg;
    }
  }
}

namespace {
Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const auto n = static_cast<Eigen::Index>(rows.size());
  Matrix m(n, n);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != n) {
      throw Error(ErrorCode::kInvalidArgument, "ragged matrix literal");
    }
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}
}  // namespace

SymMatrix::SymMatrix(std::initializer_list<std::initializer_list<double>> rows)
    : SymMatrix(from_rows(rows)) {}

SymMatrix SymMatrix::identity(Eigen::Index n) { return SymMatrix(Matrix::Identity(n, n)); }
SymMatrix SymMatrix::zero(Eigen::Index n) { return SymMatrix(Matrix::Zero(n, n)); }
SymMatrix SymMatrix::diagonal(const Vector& d) { return SymMatrix(Matrix(d.asDiagonal())); }

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::kInvalidArgument, "dimension mismatch in sum");
  return SymMatrix(Matrix(a.m_ + b.m_));
}

SymMatrix operator*(double s, const SymMatrix& a) { return SymMatrix(Matrix(s * a.m_)); }

std::string_view to_string(DefinitenessTag tag) {
  switch (tag) {
    case DefinitenessTag::kPositiveDefinite: return "PositiveDefinite";
    case DefinitenessTag::kNegativeDefinite: return "NegativeDefinite";
    case DefinitenessTag::kIndefinite: return "Indefinite";
    case DefinitenessTag::kSingularOrSemidefinite: return "SingularOrSemidefinite";
  }
  return "Unknown";
}

double default_definiteness_tol(const SymMatrix& m) { return 1e-9 * std::max(1.0, m.max_abs()); }

Definiteness classify_definiteness(const SymMatrix& m, double tol) {
  if (tol < 0.0) throw Error(ErrorCode::kInvalidArgument, "negative definiteness tolerance");
  if (tol == 0.0) tol = default_definiteness_tol(m);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.matrix(), Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();  // ascending
  Definiteness d{DefinitenessTag::kSingularOrSemidefinite, ev(0), ev(ev.size() - 1), tol};
  if (d.min_eig > tol) {
    d.tag = DefinitenessTag::kPositiveDefinite;
  } else if (d.max_eig < -tol) {
    d.tag = DefinitenessTag::kNegativeDefinite;
  } else if (d.min_eig < -tol && d.max_eig > tol) {
    d.tag = DefinitenessTag::kIndefinite;
  }
  return d;
}

bool numerically_invertible(const SymMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m.matrix(), Eigen::EigenvaluesOnly);
  const Vector abs_ev = eig.eigenvalues().cwiseAbs();
  return abs_ev.minCoeff() > 1e-12 * std::max(1.0, abs_ev.maxCoeff());
}

Vector solve_sym(const SymMatrix& m, const Vector& b) {
  if (b.size() != m.dim()) throw Error(ErrorCode::kInvalidArgument, "rhs dimension mismatch");
  if (!numerically_invertible(m)) {
    throw Error(ErrorCode::kSingularMatrix, "matrix is numerically singular");
  }
  Eigen::PartialPivLU<Matrix> lu(m.matrix());
  Vector x = lu.solve(b);
  x += lu.solve(b - m.matrix() * x);
  const double bound = 1e-10 * std::max(1.0, b.cwiseAbs().maxCoeff());
  const double residual = (m.matrix() * x - b).cwiseAbs().maxCoeff();
  if (!(residual <= bound)) {
    throw Error(ErrorCode::kSingularMatrix, "residual " + std::to_string(residual) + " exceeds bound");
  }
  return x;
}

double relative_error(const Vector& approx, const Vector& reference) {
  return (approx - reference).cwiseAbs().maxCoeff() /
         std::max(1.0, reference.cwiseAbs().maxCoeff());
}

double relative_error(const Matrix& approx, const Matrix& reference) {
  return (approx - reference).cwiseAbs().maxCoeff() /
         std::max(1.0, reference.cwiseAbs().maxCoeff());
}

}  // namespace dualcheck
