#include "mesp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>

#include "mesp/errors.hpp"

namespace mesp {

double relative_asymmetry(const Matrix& X) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < X.rows(); ++i) {
      const double scale = std::max({1.0, std::abs(X(i, j)), std::abs(X(j, i))});
      worst = std::max(worst, std::abs(X(i, j) - X(j, i)) / scale);
    }
  }
  return worst;
}

SpectralDecomposition eigh(const Matrix& X) {
  if (X.rows() != X.cols()) {
    throw DomainError("eigh: matrix is not square");
  }
  const double asym = relative_asymmetry(X);
  if (asym > kEighSymmetryTol) {
    std::ostringstream msg;
    msg << "eigh: matrix is not symmetric (relative asymmetry " << asym << ")";
    throw SymmetryError(msg.str());
  }
  const Matrix sym = 0.5 * (X + X.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eigh: eigensolver did not converge for a " << X.rows() << "x"
        << X.cols() << " matrix (max |entry| " << sym.cwiseAbs().maxCoeff()
        << ")";
    throw SolverError(msg.str());
  }
  // Eigen sorts ascending.
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

CovarianceModel::CovarianceModel(Matrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
    throw DomainError("covariance matrix must be square and nonempty");
  }
  if (!entries_.allFinite()) {
    throw DomainError("covariance matrix has non-finite entries");
  }
  const double asym = relative_asymmetry(entries_);
  if (asym > kIngestSymmetryTol) {
    std::ostringstream msg;
    msg << "covariance matrix is not symmetric (relative asymmetry " << asym
        << ")";
    throw SymmetryError(msg.str());
  }
  entries_ = (0.5 * (entries_ + entries_.transpose())).eval();
  spectrum_ = eigh(entries_);
  if (!(lambda_min() > 0.0)) {
    std::ostringstream msg;
    msg << "covariance matrix is not positive definite (smallest eigenvalue "
        << lambda_min() << ")";
    throw NotPositiveDefiniteError(msg.str(), lambda_min());
  }
}

ShiftedFactor shifted_factor(const CovarianceModel& model, double t) {
  if (!(t >= 0.0)) {
    throw DomainError("shift must be nonnegative");
  }
  if (t > model.lambda_min() + kShiftSlack) {
    std::ostringstream msg;
    msg << "shift " << t << " exceeds lambda_min(C) = " << model.lambda_min();
    throw ShiftTooLargeError(msg.str());
  }
  const auto& spec = model.spectrum();
  Vector root(model.dim());
  for (int i = 0; i < model.dim(); ++i) {
    const double v = spec.eigenvalues(i) - t;
    if (v < -kShiftSlack) {
      throw NotPositiveDefiniteError("C - tI has a negative eigenvalue", v);
    }
    root(i) = std::sqrt(std::max(v, 0.0));
  }
  return ShiftedFactor(t, root.asDiagonal() * spec.eigenvectors.transpose());
}

int shifted_rank(const CovarianceModel& model, double t) {
  const double threshold = 1e-8 * model.lambda_max();
  const Vector& eig = model.spectrum().eigenvalues;
  return static_cast<int>((eig.array() - t > threshold).count());
}

Matrix principal_submatrix(const Matrix& C, const IndexSet& subset) {
  const auto m = static_cast<Eigen::Index>(subset.size());
  Matrix sub(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      sub(a, b) = C(subset[a], subset[b]);
    }
  }
  return sub;
}

double logdet_submatrix(const CovarianceModel& model, const IndexSet& subset) {
  if (subset.empty()) {
    throw DomainError("logdet_submatrix: subset is empty");
  }
  for (int i : subset) {
    if (i < 0 || i >= model.dim()) {
      throw DomainError("logdet_submatrix: index out of range");
    }
  }
  const Matrix sub = principal_submatrix(model.entries(), subset);
  Eigen::LLT<Matrix> llt(sub);
  if (llt.info() != Eigen::Success) {
    std::cerr << "warning: principal submatrix of size " << subset.size()
              << " is numerically singular\n";
    return -std::numeric_limits<double>::infinity();
  }
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

}  // namespace mesp
