#include "mesp/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mesp/errors.hpp"

namespace mesp {

EnvelopeEval psi(const Vector& y, int s) {
  const int n = static_cast<int>(y.size());
  if (s < 1 || s > n) {
    std::ostringstream msg;
    msg << "psi: s = " << s << " outside [1, " << n << "]";
    throw DomainError(msg.str());
  }

  EnvelopeEval out;
  out.s = s;
  Vector clamped(n);
  for (int i = 0; i < n; ++i) {
    const double v = y(i);
    if (std::isnan(v) || v < -kPsiClamp) {
      std::ostringstream msg;
      msg << "psi: entry " << i << " = " << v << " is negative";
      throw DomainError(msg.str());
    }
    clamped(i) = std::max(v, 0.0);
  }

  out.order.resize(n);
  std::iota(out.order.begin(), out.order.end(), 0);
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](int a, int b) { return clamped(a) > clamped(b); });
  out.sorted.resize(n);
  for (int j = 0; j < n; ++j) out.sorted(j) = clamped(out.order[j]);
  const Vector& d = out.sorted;

  // tail[j] = sum of d[j..n-1]
  std::vector<double> tail(n + 1, 0.0);
  for (int j = n - 1; j >= 0; --j) tail[j] = tail[j + 1] + d(j);

  // The first k whose tail average reaches the next entry also satisfies the
  // strict side: failing at k-1 means d[k-1] exceeds the average at k.
  int k = s - 1;
  for (int j = 0; j < s; ++j) {
    const double avg = tail[j] / (s - j);
    if (avg - d(j) >= -kPsiClamp * std::max(1.0, d(j))) {
      k = j;
      break;
    }
  }
  out.k = k;

  const double tail_mass = tail[k];
  if (!(tail_mass > 0.0)) {
    out.rank_deficient = true;
    out.value = -std::numeric_limits<double>::infinity();
    return out;
  }
  double value = 0.0;
  for (int j = 0; j < k; ++j) value += std::log(d(j));
  value += (s - k) * std::log(tail_mass / (s - k));
  out.value = value;

  out.subgradient.resize(n);
  for (int j = 0; j < k; ++j) out.subgradient(j) = 1.0 / d(j);
  out.subgradient.tail(n - k).setConstant((s - k) / tail_mass);
  return out;
}

Vector psi_subgradient(const EnvelopeEval& eval) {
  if (!eval.finite()) {
    throw DomainError("psi_subgradient: psi is -infinity, no subgradient");
  }
  Vector g(eval.subgradient.size());
  for (Eigen::Index j = 0; j < g.size(); ++j) {
    g(eval.order[j]) = eval.subgradient(j);
  }
  return g;
}

EnvelopeEval envelope_value(const Vector& eigs, double t, int s) {
  if (!(t >= 0.0)) throw DomainError("envelope_value: shift must be >= 0");
  const int n = static_cast<int>(eigs.size());
  if (s < 1 || s > n) throw DomainError("envelope_value: s out of range");
  Vector y(n);
  for (int i = 0; i < n; ++i) {
    const double v = eigs(i);
    if (std::isnan(v) || v < -kEigenClamp) {
      std::ostringstream msg;
      msg << "envelope_value: eigenvalue " << v << " is negative";
      throw DomainError(msg.str());
    }
    y(i) = std::max(v, 0.0) + (i < s ? t : 0.0);
  }
  return psi(y, s);
}

}  // namespace mesp
