#include "mesp/primal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include "mesp/certificates.hpp"
#include "mesp/errors.hpp"

namespace mesp {

namespace {

void check_s(const CovarianceModel& model, int s) {
  if (s < 1 || s > model.dim()) {
    std::ostringstream msg;
    msg << "s = " << s << " outside [1, " << model.dim() << "]";
    throw DomainError(msg.str());
  }
}

IndexSet sorted_copy(IndexSet set) {
  std::sort(set.begin(), set.end());
  return set;
}

}  // namespace

const char* to_string(SubsetMethod method) {
  switch (method) {
    case SubsetMethod::kGreedy:
      return "greedy";
    case SubsetMethod::kLocalSearch:
      return "local_search";
    case SubsetMethod::kBruteForce:
      return "brute_force";
  }
  return "unknown";
}

SubsetSolution greedy(const CovarianceModel& model, int s) {
  check_s(model, s);
  const int n = model.dim();
  std::vector<bool> taken(n, false);
  IndexSet chosen;
  double current = 0.0;
  for (int round = 0; round < s; ++round) {
    int best = -1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (taken[j]) continue;
      IndexSet trial = chosen;
      trial.push_back(j);
      const double val = logdet_submatrix(model, sorted_copy(trial));
      if (best < 0 || val > best_val) {
        best = j;
        best_val = val;
      }
    }
    taken[best] = true;
    chosen.push_back(best);
    current = best_val;
  }
  return {sorted_copy(chosen), current, SubsetMethod::kGreedy};
}

SubsetSolution local_search(const CovarianceModel& model, int s,
                            const SubsetSolution& init) {
  check_s(model, s);
  const int n = model.dim();
  IndexSet current = sorted_copy(init.subset);
  if (static_cast<int>(current.size()) != s ||
      std::adjacent_find(current.begin(), current.end()) != current.end() ||
      current.front() < 0 || current.back() >= n) {
    throw DomainError("local_search: initial subset is not feasible");
  }
  double value = logdet_submatrix(model, current);

  for (;;) {
    std::vector<bool> in(n, false);
    for (int i : current) in[i] = true;
    double best_val = value;
    int best_out = -1, best_in = -1;
    for (int pos = 0; pos < s; ++pos) {
      for (int j = 0; j < n; ++j) {
        if (in[j]) continue;
        IndexSet trial = current;
        trial[pos] = j;
        const double val = logdet_submatrix(model, sorted_copy(trial));
        if (val > best_val) {
          best_val = val;
          best_out = pos;
          best_in = j;
        }
      }
    }
    if (best_out < 0 || best_val - value <= 1e-10) break;
    current[best_out] = best_in;
    current = sorted_copy(current);
    value = best_val;
  }
  return {current, value, SubsetMethod::kLocalSearch};
}

SubsetSolution brute_force(const CovarianceModel& model, int s, double budget) {
  check_s(model, s);
  const int n = model.dim();
  const double count = std::exp(log_binomial(n, s));
  if (count > budget * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "brute force would enumerate " << count << " subsets (budget "
        << budget << ")";
    throw BudgetExceededError(msg.str(), count);
  }
  IndexSet comb(s);
  std::iota(comb.begin(), comb.end(), 0);
  SubsetSolution best{comb, -std::numeric_limits<double>::infinity(),
                      SubsetMethod::kBruteForce};
  for (;;) {
    const double val = logdet_submatrix(model, comb);
    if (val > best.objective) {
      best.objective = val;
      best.subset = comb;
    }
    // Next combination in lexicographic order.
    int i = s - 1;
    while (i >= 0 && comb[i] == n - s + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
  }
  return best;
}

FixingCertificate fix_from_supergradient(const Vector& g, double ub, double lb,
                                         int s) {
  const int n = static_cast<int>(g.size());
  if (s < 1 || s > n) throw DomainError("fix_from_supergradient: bad s");
  if (lb > ub + 1e-6) {
    std::ostringstream msg;
    msg << "lower bound " << lb << " exceeds upper bound " << ub;
    throw InconsistentBoundsError(msg.str());
  }
  FixingCertificate out;
  out.g_tilde = g;
  out.ub = ub;
  out.lb = lb;

  std::vector<double> sorted(g.data(), g.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const double gap = std::max(ub - lb, 0.0);
  const double g_s = sorted[s - 1];
  const double g_s1 =
      s < n ? sorted[s] : -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (g(i) - g_s1 > gap) out.fixed_one.push_back(i);
    if (g_s - g(i) > gap) out.fixed_zero.push_back(i);
  }
  return out;
}

FixingCertificate fix_variables(const CovarianceModel& model,
                                const RelaxationSolution& solution, double lb) {
  const int s = solution.point.s;
  const Vector& x = solution.point.x;
  if (x.size() != model.dim()) {
    throw DomainError("fix_variables: solution has wrong dimension");
  }
  const ShiftedFactor factor = shifted_factor(model, solution.shift);
  const ObjectiveEval eval =
      bound_objective(solution.bound_kind, factor, x, s);
  if (!eval.finite) {
    throw SolverError("fix_variables: objective is not finite at the point");
  }
  const Vector& g = eval.gradient;
  double top = 0.0;
  for (int i : top_s(g, s)) top += g(i);
  const double ub = eval.value - g.dot(x) + top;
  return fix_from_supergradient(g, ub, lb, s);
}

}  // namespace mesp
