#pragma once

#include <vector>

#include "mesp/types.hpp"

namespace mesp {

// Entries of y in [-kPsiClamp, 0) are treated as zero.
inline constexpr double kPsiClamp = 1e-12;

// Eigenvalues in [-kEigenClamp, 0) are treated as zero by envelope_value().
inline constexpr double kEigenClamp = 1e-10;

// Evaluation of the concave envelope function psi_s at a nonnegative vector y.
//
// With y sorted nonincreasingly (y_1 >= ... >= y_n, y_0 = +inf), k is the unique
// integer in [0, s-1] with
//     y_k > (1/(s-k)) * sum_{i>k} y_i >= y_{k+1},
// and
//     psi_s(y) = sum_{i<=k} log y_i + (s-k) log(sum_{i>k} y_i / (s-k)).
struct EnvelopeEval {
  double value = 0.0;
  int k = 0;
  int s = 0;
  // True when the averaged tail is empty of mass, so value is -infinity and no
  // subgradient exists.
  bool rank_deficient = false;
  // y after clamping, sorted nonincreasingly.
  Vector sorted;
  // order[j] is the input position of sorted[j]. Ties keep input order.
  std::vector<int> order;
  // Subgradient aligned with `sorted`: 1/y_i on the head, (s-k)/tail on the
  // rest. Empty when rank_deficient.
  Vector subgradient;

  bool finite() const { return !rank_deficient; }
};

// psi_s(y). Throws DomainError for entries below -kPsiClamp, NaN, or s outside
// [1, len(y)].
EnvelopeEval psi(const Vector& y, int s);

// The subgradient of psi_s in the input order of y. Throws DomainError when the
// evaluation is not finite.
Vector psi_subgradient(const EnvelopeEval& eval);

// psi_s(eigs + t * 1_s), where 1_s adds t to the first s entries of the
// nonincreasing eigenvalue vector. This is the envelope of
// sum_{i<=s} log(lambda_i(X) + t).
EnvelopeEval envelope_value(const Vector& eigs, double t, int s);

}  // namespace mesp
