#pragma once

#include <initializer_list>
#include <string_view>

#include <Eigen/Dense>

namespace dualcheck {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense real symmetric matrix. Construction symmetrizes its input by
/// averaging with the transpose, so entry (i,j) and (j,i) are bit-identical.
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& m);
  SymMatrix(std::initializer_list<std::initializer_list<double>> rows);

  static SymMatrix identity(Eigen::Index n);
  static SymMatrix zero(Eigen::Index n);
  static SymMatrix diagonal(const Vector& d);

  Eigen::Index dim() const noexcept { return m_.rows(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }
  const Matrix& matrix() const noexcept { return m_; }

  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }
  double quadratic_form(const Vector& x) const { return x.dot(m_ * x); }

  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double s, const SymMatrix& a);
  friend Vector operator*(const SymMatrix& a, const Vector& x) { return a.m_ * x; }

 private:
  Matrix m_;
};

enum class DefinitenessTag {
  kPositiveDefinite,
  kNegativeDefinite,
  kIndefinite,
  kSingularOrSemidefinite,
};

std::string_view to_string(DefinitenessTag tag);

struct Definiteness {
  DefinitenessTag tag;
  double min_eig;
  double max_eig;
  double tolerance_used;

  bool positive_definite() const { return tag == DefinitenessTag::kPositiveDefinite; }
  bool negative_definite() const { return tag == DefinitenessTag::kNegativeDefinite; }
};

// Default classification tolerance: 1e-9 * max(1, largest |entry|).
double default_definiteness_tol(const SymMatrix& m);

/// Classifies from the full eigenvalue spectrum. `tol == 0` selects
/// default_definiteness_tol(m).
Definiteness classify_definiteness(const SymMatrix& m, double tol = 0.0);

// Smallest |eigenvalue| above 1e-12 * max(1, largest |eigenvalue|).
bool numerically_invertible(const SymMatrix& m);

/// Solves m x = b. Throws Error(kSingularMatrix) when the smallest
/// |eigenvalue| is not above 1e-12 * max(1, largest |eigenvalue|), or when the
/// residual bound ||m x - b||_inf <= 1e-10 max(1, ||b||_inf) cannot be met.
Vector solve_sym(const SymMatrix& m, const Vector& b);

// Relative error used by every derivative check: ||a - b||_inf / max(1, ||b||_inf).
double relative_error(const Vector& approx, const Vector& reference);
double relative_error(const Matrix& approx, const Matrix& reference);

}  // namespace dualcheck
