#pragma once

#include "mesp/relaxation.hpp"
#include "mesp/spectral.hpp"
#include "mesp/types.hpp"

namespace mesp {

// Lower bound on z_hat(0) - z_hat(lambda_min) computed from a solution x* of
// the augmented bound at t = lambda_min:
//   delta = lambda_min * (k - sum_{i<=k} x*_(i)) * ((s-k)/sum_{i>k} beta_i - 1/beta_k)
// where beta = lambda(M_0(x*)) and k is the psi_s breakpoint of beta.
struct DeltaCertificate {
  double delta_lb = 0.0;
  int k = 0;
  // k >= 1 and the k-th largest entry of x* is below 1: the augmented bound is
  // strictly below the factorization bound.
  bool strict = false;
  Vector beta;
};

DeltaCertificate delta_lb(const CovarianceModel& model, const Vector& x_star,
                          int s);

// Lower bound on z_hat^D(lambda_min) - z_hat(lambda_min):
//   (1/(mu_{s+1}+lambda_min) - 1/(mu_s+lambda_min)) * sum_{i>s} mu_i
// with mu = lambda(M_{lambda_min}(x*)). Zero when s = n.
struct ThetaCertificate {
  double theta_lb = 0.0;
  Vector lambda;
};

ThetaCertificate theta_lb(const CovarianceModel& model, const Vector& x_star,
                          int s);

// Both certificates for one augmented-bound solution. fw_gap is carried over
// from the solve: the certificates hold at an exact optimum, so comparisons
// against solved bounds should allow that much slack.
struct ImprovementCertificate {
  double delta_lb = 0.0;
  double theta_lb = 0.0;
  int k = 0;
  bool strict_over_fact = false;
  Vector beta_star;
  Vector lambda_star;
  double fw_gap = 0.0;
};

// Requires an AugFact solution; the certificates are stated for
// shift = lambda_min(C).
ImprovementCertificate improvement_certificate(
    const CovarianceModel& model, const RelaxationSolution& augfact_solution);

// log C(n, s) via lgamma.
double log_binomial(int n, int s);

struct ApproxBounds {
  // s log(s/n) + log C(n,s) - delta
  double sampling_bound = 0.0;
  // s * min(log s, log(n - s - n/s + 2)) - delta
  double local_search_bound = 0.0;
};

ApproxBounds adjusted_approx_bounds(double delta_lb, int n, int s);

enum class DdfStrictness {
  // s < rank(C - tI) and z_hat(t) > z*: DDF-R is strictly weaker.
  kStrict,
  // s >= rank(C - tI): the two bounds coincide.
  kEqualRegime,
  // Neither condition could be certified.
  kUnknown,
};

const char* to_string(DdfStrictness value);

// Classifies the augmented bound at shift t against DDF-R. `z_value` is the
// exact optimum when `z_is_exact`, otherwise only a lower bound, in which case
// strictness cannot be certified.
DdfStrictness strict_over_ddf(const CovarianceModel& model, double t, int s,
                              const RelaxationSolution& augfact_solution,
                              double z_value, bool z_is_exact);

}  // namespace mesp
