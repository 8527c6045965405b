#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mesp/spectral.hpp"
#include "mesp/types.hpp"

namespace mesp {

enum class BoundKind { kAugFact, kFact, kDdfR };

std::string_view to_string(BoundKind kind);
// Accepts "augfact", "fact", "ddfr" (case-insensitive, '-' ignored).
BoundKind parse_bound_kind(std::string_view name);

// A point of the capped simplex {x in [0,1]^n : sum x = s}.
struct DesignPoint {
  Vector x;
  int s = 0;
};

// Throws DomainError unless 0 <= x_i <= 1 + 1e-12 and |sum x - s| <= 1e-9.
void validate_design_point(const Vector& x, int s);

// M_t(x) = sum_i x_i a_i(t) a_i(t)^T = A(t) diag(x) A(t)^T, symmetrized.
Matrix build_M(const ShiftedFactor& factor, const Vector& x);

// Value and (super)gradient of a relaxation objective at x.
struct ObjectiveEval {
  double value = 0.0;
  Vector gradient;  // empty when !finite
  bool finite = true;
  // Nonincreasing eigenvalues of M_t(x), kept for certificates.
  Vector eigenvalues;
};

// Envelope objective psi_s(lambda(M_t(x)) + t 1_s) with the supergradient
//   d/dx_i = a_i^T Q diag(g) Q^T a_i,
// where Q diagonalizes M_t(x) and g is the psi_s subgradient.
ObjectiveEval augfact_objective(const ShiftedFactor& factor, const Vector& x,
                                int s);

// log det(M_t(x) + tI) - (n - s) log t with gradient a_i^T (M_t(x)+tI)^{-1} a_i.
// Requires t > 0.
ObjectiveEval ddf_objective(const ShiftedFactor& factor, const Vector& x,
                            int s);

// Indices of the s largest entries of g, smallest index first on ties; the
// result is sorted ascending.
IndexSet top_s(const Vector& g, int s);

// Maximizer of g^T v over the capped simplex: the indicator of top_s(g, s).
Vector lmo(const Vector& g, int s);

enum class StepRule {
  // Pairwise steps toward the LMO vertex and away from the worst vertex of
  // the current face, with an exact line search on the concave objective.
  kLineSearch,
  // Classic Frank-Wolfe step 2 / (k + 2) toward the LMO vertex.
  kOpenLoop,
};

struct SolverOptions {
  int max_iters = 2000;
  double tol = 1e-6;  // absolute, on fw_gap, in nats
  StepRule step_rule = StepRule::kLineSearch;
  bool record_history = false;
};

struct RelaxationSolution {
  DesignPoint point;
  double objective = 0.0;
  // min over iterates of f(x_k) + g_k^T (v_k - x_k); an upper bound on the
  // relaxation optimum and hence on the MESP optimum.
  double certified_ub = 0.0;
  // certified_ub - objective.
  double fw_gap = 0.0;
  int iterations = 0;
  bool converged = false;
  BoundKind bound_kind = BoundKind::kAugFact;
  double shift = 0.0;
  // Per-iteration fw_gap, filled when SolverOptions::record_history is set.
  std::vector<double> gap_history;
};

// Objective of the given bound at x.
ObjectiveEval bound_objective(BoundKind kind, const ShiftedFactor& factor,
                              const Vector& x, int s);

// Maximizes the relaxation of `kind` at shift t (forced to 0 for Fact, must be
// positive for DDF-R) from x0 = (s/n) 1 by Frank-Wolfe.
RelaxationSolution solve_bound(const CovarianceModel& model, BoundKind kind,
                               double t, int s, const SolverOptions& opts = {});

}  // namespace mesp
