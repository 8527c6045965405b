#pragma once

#include "mesp/relaxation.hpp"
#include "mesp/spectral.hpp"
#include "mesp/types.hpp"

namespace mesp {

enum class SubsetMethod { kGreedy, kLocalSearch, kBruteForce };

const char* to_string(SubsetMethod method);

// A feasible MESP subset and its log-determinant.
struct SubsetSolution {
  IndexSet subset;  // sorted, |subset| = s
  double objective = 0.0;
  SubsetMethod method = SubsetMethod::kGreedy;
};

// Forward greedy: s rounds, each adding the index with the largest log-det
// increment (smallest index on ties).
SubsetSolution greedy(const CovarianceModel& model, int s);

// Best-improvement single swaps from `init` until no swap gains more than
// 1e-10.
SubsetSolution local_search(const CovarianceModel& model, int s,
                            const SubsetSolution& init);

inline constexpr double kBruteForceBudget = 1e6;

// Exact optimum by enumeration in lexicographic order; the first optimal
// subset wins ties. Throws BudgetExceededError if C(n, s) > budget.
SubsetSolution brute_force(const CovarianceModel& model, int s,
                           double budget = kBruteForceBudget);

// Variables provably fixed in every optimal subset.
struct FixingCertificate {
  Vector g_tilde;
  double ub = 0.0;
  double lb = 0.0;
  IndexSet fixed_one;
  IndexSet fixed_zero;
};

// Applies the fixing rule to a supergradient g of a concave relaxation whose
// linearization bound is ub:
//   fix to 1 when g_i - g_(s+1) > ub - lb,  fix to 0 when g_(s) - g_i > ub - lb,
// where g_(j) is the j-th largest entry. Throws InconsistentBoundsError when
// lb > ub + 1e-6.
FixingCertificate fix_from_supergradient(const Vector& g, double ub, double lb,
                                         int s);

// Evaluates the solution's objective and supergradient at its point, forms
//   UB = f(x) - g^T x + sum of the s largest g_i
// and applies fix_from_supergradient with the given MESP lower bound.
FixingCertificate fix_variables(const CovarianceModel& model,
                                const RelaxationSolution& solution, double lb);

}  // namespace mesp
