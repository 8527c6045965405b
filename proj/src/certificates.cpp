#include "mesp/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "mesp/envelope.hpp"
#include "mesp/errors.hpp"

namespace mesp {

namespace {

Vector clamped_eigenvalues(const ShiftedFactor& factor, const Vector& x) {
  Vector eig = eigh(build_M(factor, x)).eigenvalues;
  return eig.cwiseMax(0.0);
}

void check_point(const CovarianceModel& model, const Vector& x, int s) {
  if (x.size() != model.dim()) {
    throw DomainError("certificate: design point has wrong dimension");
  }
  if (s < 1 || s > model.dim()) {
    throw DomainError("certificate: s out of range");
  }
  validate_design_point(x, s);
}

}  // namespace

DeltaCertificate delta_lb(const CovarianceModel& model, const Vector& x_star,
                          int s) {
  check_point(model, x_star, s);
  DeltaCertificate out;
  out.beta = clamped_eigenvalues(shifted_factor(model, 0.0), x_star);
  const EnvelopeEval env = psi(out.beta, s);
  const int k = env.k;
  out.k = k;

  std::vector<double> xs(x_star.data(), x_star.data() + x_star.size());
  std::sort(xs.begin(), xs.end(), std::greater<>());
  out.strict = k >= 1 && xs[k - 1] < 1.0;
  if (k == 0) return out;

  double head_mass = 0.0;
  for (int i = 0; i < k; ++i) head_mass += xs[i];
  const double tail = out.beta.tail(out.beta.size() - k).sum();
  const double reciprocal_gap = (s - k) / tail - 1.0 / out.beta(k - 1);
  out.delta_lb = std::max(
      model.lambda_min() * (k - head_mass) * reciprocal_gap, 0.0);
  return out;
}

ThetaCertificate theta_lb(const CovarianceModel& model, const Vector& x_star,
                          int s) {
  check_point(model, x_star, s);
  const double lmin = model.lambda_min();
  ThetaCertificate out;
  out.lambda = clamped_eigenvalues(shifted_factor(model, lmin), x_star);
  const int n = model.dim();
  if (s == n) return out;
  const double tail = out.lambda.tail(n - s).sum();
  const double diff =
      1.0 / (out.lambda(s) + lmin) - 1.0 / (out.lambda(s - 1) + lmin);
  out.theta_lb = std::max(diff * tail, 0.0);
  return out;
}

ImprovementCertificate improvement_certificate(
    const CovarianceModel& model, const RelaxationSolution& sol) {
  if (sol.bound_kind != BoundKind::kAugFact) {
    throw DomainError("improvement certificates need an AugFact solution");
  }
  const DeltaCertificate d = delta_lb(model, sol.point.x, sol.point.s);
  const ThetaCertificate th = theta_lb(model, sol.point.x, sol.point.s);
  ImprovementCertificate out;
  out.delta_lb = d.delta_lb;
  out.k = d.k;
  out.strict_over_fact = d.strict;
  out.beta_star = d.beta;
  out.theta_lb = th.theta_lb;
  out.lambda_star = th.lambda;
  out.fw_gap = sol.fw_gap;
  return out;
}

double log_binomial(int n, int s) {
  if (s < 0 || s > n) throw DomainError("log_binomial: s outside [0, n]");
  return std::lgamma(n + 1.0) - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0);
}

ApproxBounds adjusted_approx_bounds(double delta, int n, int s) {
  if (s < 1 || s > n) throw DomainError("adjusted_approx_bounds: bad s");
  if (delta < 0.0) throw DomainError("adjusted_approx_bounds: delta < 0");
  ApproxBounds out;
  out.sampling_bound =
      s * std::log(static_cast<double>(s) / n) + log_binomial(n, s) - delta;
  const double arg = n - s - static_cast<double>(n) / s + 2.0;
  out.local_search_bound =
      s * std::min(std::log(static_cast<double>(s)), std::log(arg)) - delta;
  return out;
}

const char* to_string(DdfStrictness value) {
  switch (value) {
    case DdfStrictness::kStrict:
      return "strict";
    case DdfStrictness::kEqualRegime:
      return "equal-regime";
    case DdfStrictness::kUnknown:
      return "unknown";
  }
  return "unknown";
}

DdfStrictness strict_over_ddf(const CovarianceModel& model, double t, int s,
                              const RelaxationSolution& sol, double z_value,
                              bool z_is_exact) {
  if (sol.bound_kind != BoundKind::kAugFact) {
    throw DomainError("strict_over_ddf: expected an AugFact solution");
  }
  if (s >= shifted_rank(model, t)) return DdfStrictness::kEqualRegime;
  // sol.objective is attained by a feasible point, so it is a lower estimate
  // of z_hat(t).
  if (z_is_exact && sol.objective > z_value + 1e-6) {
    return DdfStrictness::kStrict;
  }
  return DdfStrictness::kUnknown;
}

}  // namespace mesp
