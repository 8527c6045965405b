#include "mesp/relaxation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mesp/envelope.hpp"
#include "mesp/errors.hpp"

namespace mesp {

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::kAugFact:
      return "augfact";
    case BoundKind::kFact:
      return "fact";
    case BoundKind::kDdfR:
      return "ddfr";
  }
  return "unknown";
}

BoundKind parse_bound_kind(std::string_view name) {
  std::string key;
  for (char c : name) {
    if (c == '-' || c == '_') continue;
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (key == "augfact") return BoundKind::kAugFact;
  if (key == "fact") return BoundKind::kFact;
  if (key == "ddfr" || key == "ddf") return BoundKind::kDdfR;
  throw DomainError("unknown bound kind '" + std::string(name) + "'");
}

void validate_design_point(const Vector& x, int s) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x(i) >= 0.0 && x(i) <= 1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "design point entry " << i << " = " << x(i) << " outside [0,1]";
      throw DomainError(msg.str());
    }
  }
  if (std::abs(x.sum() - s) > 1e-9) {
    std::ostringstream msg;
    msg << "design point sums to " << x.sum() << ", expected " << s;
    throw DomainError(msg.str());
  }
}

Matrix build_M(const ShiftedFactor& factor, const Vector& x) {
  if (x.size() != factor.dim()) {
    throw DomainError("build_M: dimension mismatch");
  }
  const Matrix& A = factor.factor();
  Matrix M = (A * x.asDiagonal()) * A.transpose();
  return 0.5 * (M + M.transpose());
}

ObjectiveEval augfact_objective(const ShiftedFactor& factor, const Vector& x,
                                int s) {
  const Matrix M = build_M(factor, x);
  const SpectralDecomposition spec = eigh(M);
  const EnvelopeEval env = envelope_value(spec.eigenvalues, factor.shift(), s);

  ObjectiveEval out;
  out.eigenvalues = spec.eigenvalues;
  out.value = env.value;
  if (!env.finite()) {
    out.finite = false;
    return out;
  }
  // Positions of the envelope input are eigenvector columns.
  const Vector g = psi_subgradient(env);
  const Matrix W = spec.eigenvectors.transpose() * factor.factor();
  out.gradient = (W.array().square().colwise() * g.array()).colwise().sum();
  return out;
}

ObjectiveEval ddf_objective(const ShiftedFactor& factor, const Vector& x,
                            int s) {
  const double t = factor.shift();
  if (!(t > 0.0)) {
    throw DomainError("DDF-R objective requires a strictly positive shift");
  }
  const int n = factor.dim();
  Matrix K = build_M(factor, x);
  K.diagonal().array() += t;
  Eigen::LLT<Matrix> llt(K);
  if (llt.info() != Eigen::Success) {
    throw SolverError("DDF-R objective: M_t(x) + tI is not positive definite");
  }
  ObjectiveEval out;
  out.value = 2.0 * llt.matrixLLT().diagonal().array().log().sum() -
              (n - s) * std::log(t);
  const Matrix Z = llt.matrixL().solve(factor.factor());
  out.gradient = Z.colwise().squaredNorm().transpose();
  return out;
}

IndexSet top_s(const Vector& g, int s) {
  const int n = static_cast<int>(g.size());
  if (s < 1 || s > n) throw DomainError("top_s: s out of range");
  IndexSet idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return g(a) > g(b); });
  idx.resize(s);
  std::sort(idx.begin(), idx.end());
  return idx;
}

Vector lmo(const Vector& g, int s) {
  Vector v = Vector::Zero(g.size());
  for (int i : top_s(g, s)) v(i) = 1.0;
  return v;
}

ObjectiveEval bound_objective(BoundKind kind, const ShiftedFactor& factor,
                              const Vector& x, int s) {
  return kind == BoundKind::kDdfR ? ddf_objective(factor, x, s)
                                  : augfact_objective(factor, x, s);
}

namespace {

constexpr double kFaceTol = 1e-13;

// Vertex of the smallest face containing x that minimizes g^T a: coordinates
// at 1 stay 1, coordinates at 0 stay 0, and the s - |ones| free coordinates
// with the smallest gradient are set to 1.
Vector away_vertex(const Vector& x, const Vector& g, int s) {
  const int n = static_cast<int>(x.size());
  Vector a = Vector::Zero(n);
  std::vector<int> free;
  int ones = 0;
  for (int i = 0; i < n; ++i) {
    if (x(i) >= 1.0 - kFaceTol) {
      a(i) = 1.0;
      ++ones;
    } else if (x(i) > kFaceTol) {
      free.push_back(i);
    }
  }
  const int m = std::clamp(s - ones, 0, static_cast<int>(free.size()));
  std::stable_sort(free.begin(), free.end(),
                   [&](int p, int q) { return g(p) < g(q); });
  for (int j = 0; j < m; ++j) a(free[j]) = 1.0;
  return a;
}

double max_step(const Vector& x, const Vector& d) {
  double gamma = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (d(i) > 0.0) gamma = std::min(gamma, (1.0 - x(i)) / d(i));
    if (d(i) < 0.0) gamma = std::min(gamma, -x(i) / d(i));
  }
  return std::max(gamma, 0.0);
}

void snap_to_box(Vector& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x(i) < kFaceTol) x(i) = 0.0;
    if (x(i) > 1.0 - kFaceTol) x(i) = 1.0;
  }
}

struct Trial {
  double gamma = 0.0;
  Vector x;
  ObjectiveEval eval;
  double slope = 0.0;
};

class Solver {
 public:
  Solver(BoundKind kind, ShiftedFactor factor, int s, const SolverOptions& opts)
      : kind_(kind), factor_(std::move(factor)), s_(s), opts_(opts) {}

  RelaxationSolution run() {
    const int n = factor_.dim();
    RelaxationSolution sol;
    sol.bound_kind = kind_;
    sol.shift = factor_.shift();
    sol.point.s = s_;

    Vector x = Vector::Constant(n, static_cast<double>(s_) / n);
    ObjectiveEval cur = evaluate(x);
    if (!cur.finite || !std::isfinite(cur.value)) {
      throw SolverError(
          "relaxation objective is not finite at the uniform start point; "
          "use a larger shift or another start");
    }

    Vector best_x = x;
    double best_f = cur.value;
    double best_ub = std::numeric_limits<double>::infinity();
    int iter = 0;
    for (;; ++iter) {
      const Vector v = lmo(cur.gradient, s_);
      const double lin_ub = cur.value + cur.gradient.dot(v - x);
      best_ub = std::min(best_ub, lin_ub);
      if (cur.value > best_f) {
        best_f = cur.value;
        best_x = x;
      }
      const double gap = std::max(best_ub - best_f, 0.0);
      if (opts_.record_history) sol.gap_history.push_back(gap);
      if (gap <= opts_.tol) {
        sol.converged = true;
        break;
      }
      if (iter >= opts_.max_iters) break;

      bool moved = false;
      if (opts_.step_rule == StepRule::kLineSearch) {
        const Vector a = away_vertex(x, cur.gradient, s_);
        moved = line_search_step(x, cur, v - a) ||
                line_search_step(x, cur, v - x);
      }
      if (!moved) {
        // Open-loop step, also the fallback when both line searches stall.
        const double gamma = 2.0 / (iter + 2.0);
        Vector nx = x + gamma * (v - x);
        snap_to_box(nx);
        ObjectiveEval ne = evaluate(nx);
        if (!ne.finite) break;
        if (opts_.step_rule == StepRule::kLineSearch && ne.value < cur.value) {
          break;  // stalled at machine precision
        }
        x = std::move(nx);
        cur = std::move(ne);
      }
    }

    sol.point.x = best_x;
    sol.objective = best_f;
    sol.certified_ub = best_ub;
    sol.fw_gap = std::max(best_ub - best_f, 0.0);
    sol.iterations = iter;
    return sol;
  }

 private:
  ObjectiveEval evaluate(const Vector& x) {
    return bound_objective(kind_, factor_, x, s_);
  }

  Trial trial(const Vector& x, const Vector& d, double gamma) {
    Trial tr;
    tr.gamma = gamma;
    tr.x = x + gamma * d;
    snap_to_box(tr.x);
    tr.eval = evaluate(tr.x);
    tr.slope = tr.eval.finite ? tr.eval.gradient.dot(d)
                              : std::numeric_limits<double>::infinity();
    return tr;
  }

  // Concave line search on phi(gamma) = f(x + gamma d) over the feasible
  // segment. Returns false when no ascent was found.
  bool line_search_step(Vector& x, ObjectiveEval& cur, const Vector& d) {
    const double slope0 = cur.gradient.dot(d);
    const double gmax = max_step(x, d);
    if (!(slope0 > 0.0) || !(gmax > 0.0) || !std::isfinite(gmax)) return false;

    Trial hi = trial(x, d, gmax);
    if (hi.eval.finite && hi.slope >= 0.0) {
      x = std::move(hi.x);
      cur = std::move(hi.eval);
      return true;
    }

    // Bracket [lo, hi] with slope(lo) > 0 > slope(hi); Illinois regula falsi.
    double lo_g = 0.0, lo_s = slope0;
    double hi_g = gmax, hi_s = hi.eval.finite ? hi.slope : -1.0;
    Trial lo;
    int side = 0;
    for (int it = 0; it < 40; ++it) {
      double g = lo_g + lo_s * (hi_g - lo_g) / (lo_s - hi_s);
      if (!(g > lo_g && g < hi_g)) g = 0.5 * (lo_g + hi_g);
      Trial tr = trial(x, d, g);
      if (!tr.eval.finite) {
        hi_g = g;
        hi_s = -1.0;
        continue;
      }
      if (tr.slope > 0.0) {
        lo_g = g;
        lo_s = tr.slope;
        lo = std::move(tr);
        if (side == -1) hi_s *= 0.5;
        side = -1;
      } else {
        hi_g = g;
        hi_s = tr.slope;
        if (side == 1) lo_s *= 0.5;
        side = 1;
      }
      // Concavity bounds the remaining ascent inside the bracket.
      const double room = std::abs(lo_s) * (hi_g - lo_g);
      if (room <= 1e-15 * std::max(1.0, std::abs(cur.value)) ||
          hi_g - lo_g <= 1e-15 * gmax) {
        break;
      }
    }
    if (lo_g <= 0.0) return false;
    x = std::move(lo.x);
    cur = std::move(lo.eval);
    return true;
  }

  BoundKind kind_;
  ShiftedFactor factor_;
  int s_;
  SolverOptions opts_;
};

}  // namespace

RelaxationSolution solve_bound(const CovarianceModel& model, BoundKind kind,
                               double t, int s, const SolverOptions& opts) {
  const int n = model.dim();
  if (s < 1 || s > n) {
    std::ostringstream msg;
    msg << "s = " << s << " outside [1, " << n << "]";
    throw DomainError(msg.str());
  }
  if (opts.max_iters < 0 || !(opts.tol >= 0.0)) {
    throw DomainError("invalid solver options");
  }
  if (kind == BoundKind::kFact) t = 0.0;
  if (kind == BoundKind::kDdfR && !(t > 0.0)) {
    throw DomainError("DDF-R requires a shift t > 0");
  }
  Solver solver(kind, shifted_factor(model, t), s, opts);
  return solver.run();
}

}  // namespace mesp
