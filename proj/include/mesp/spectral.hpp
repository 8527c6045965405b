#pragma once

#include <utility>

#include "mesp/types.hpp"

namespace mesp {

// Absolute slack allowed when a shift is set to a computed lambda_min(C).
inline constexpr double kShiftSlack = 1e-10;

// Relative asymmetry below which a matrix is symmetrized by averaging.
inline constexpr double kIngestSymmetryTol = 1e-8;

// Relative asymmetry accepted by eigh().
inline constexpr double kEighSymmetryTol = 1e-12;

// Eigenpairs of a symmetric matrix. eigenvalues are nonincreasing and column i
// of eigenvectors pairs with eigenvalues[i].
struct SpectralDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;
};

// Largest |X_ij - X_ji| / max(1, |X_ij|) over all entries.
double relative_asymmetry(const Matrix& X);

// Dense symmetric eigendecomposition. Throws SymmetryError when X is not
// symmetric within kEighSymmetryTol and SolverError if the eigensolver fails.
SpectralDecomposition eigh(const Matrix& X);

// A symmetric positive definite covariance matrix with its cached spectrum.
class CovarianceModel {
 public:
  // Validates squareness, symmetry (averaging away asymmetry below
  // kIngestSymmetryTol) and positive definiteness.
  explicit CovarianceModel(Matrix entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }
  double lambda_min() const { return spectrum_.eigenvalues(dim() - 1); }
  double lambda_max() const { return spectrum_.eigenvalues(0); }
  double condition_number() const { return lambda_max() / lambda_min(); }
  const SpectralDecomposition& spectrum() const { return spectrum_; }

 private:
  Matrix entries_;
  SpectralDecomposition spectrum_;
};

// A factor A(t) with A(t)^T A(t) = C - tI. Column i is a_i(t).
class ShiftedFactor {
 public:
  // Wraps an arbitrary factor. The product is not re-validated here; use
  // shifted_factor() to build one from a model.
  ShiftedFactor(double shift, Matrix factor)
      : shift_(shift), factor_(std::move(factor)) {}

  double shift() const { return shift_; }
  const Matrix& factor() const { return factor_; }
  int dim() const { return static_cast<int>(factor_.cols()); }
  auto column(int i) const { return factor_.col(i); }

 private:
  double shift_;
  Matrix factor_;
};

// Square-root factor of C - tI built from the eigendecomposition of C:
// A(t) = diag(sqrt(max(lambda_i - t, 0))) Q^T, always n x n.
ShiftedFactor shifted_factor(const CovarianceModel& model, double t);

// Number of eigenvalues of C - tI above 1e-8 * lambda_max(C).
int shifted_rank(const CovarianceModel& model, double t);

// log det C_{S,S}. Returns -infinity (and warns on stderr) if the principal
// submatrix is numerically singular.
double logdet_submatrix(const CovarianceModel& model, const IndexSet& subset);

// Principal submatrix C_{S,S}.
Matrix principal_submatrix(const Matrix& C, const IndexSet& subset);

}  // namespace mesp
