#include <doctest.h>

#include <cmath>
#include <random>

#include "mesp/certificates.hpp"
#include "mesp/errors.hpp"
#include "mesp/instance.hpp"
#include "mesp/relaxation.hpp"
#include "oracles.hpp"

using namespace mesp;

TEST_CASE("delta_lb degenerate cases") {
  std::mt19937_64 rng(21);
  const CovarianceModel model(oracle::random_spd(rng, 6));

  SUBCASE("binary point") {
    const Vector x = oracle::random_vertex(rng, 6, 3);
    const auto cert = delta_lb(model, x, 3);
    CHECK(cert.delta_lb == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_FALSE(cert.strict);
  }
  SUBCASE("k = 0 at the uniform point of the identity") {
    const CovarianceModel identity(Matrix::Identity(5, 5));
    const auto cert = delta_lb(identity, Vector::Constant(5, 0.4), 2);
    CHECK(cert.k == 0);
    CHECK(cert.delta_lb == 0.0);
    CHECK_FALSE(cert.strict);
  }
  SUBCASE("beta is the spectrum of M_0(x)") {
    const Vector x = oracle::random_interior_point(rng, 6, 3);
    const auto cert = delta_lb(model, x, 3);
    const Vector want =
        eigh(build_M(shifted_factor(model, 0.0), x)).eigenvalues;
    CHECK((cert.beta - want).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(cert.delta_lb >= 0.0);
  }
}

TEST_CASE("theta_lb degenerate cases") {
  std::mt19937_64 rng(22);
  const CovarianceModel model(oracle::random_spd(rng, 5));
  CHECK(theta_lb(model, Vector::Ones(5), 5).theta_lb == 0.0);

  // Rank of M_{lambda_min}(x) at most s: binary x with s ones.
  const Vector x = oracle::random_vertex(rng, 5, 2);
  CHECK(theta_lb(model, x, 2).theta_lb == doctest::Approx(0.0).epsilon(1e-12));

  // Equal s-th and (s+1)-th eigenvalues: identity plus multiples.
  const CovarianceModel flat(2.0 * Matrix::Identity(4, 4));
  CHECK(theta_lb(flat, Vector::Constant(4, 0.5), 2).theta_lb ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("certificates lower-bound the realized improvements") {
  std::mt19937_64 rng(23);
  int strict_seen = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const CovarianceModel model(oracle::random_spd(rng, 8, 0.3));
    const int s = 3;
    const double lmin = model.lambda_min();
    const auto fact = solve_bound(model, BoundKind::kFact, 0.0, s);
    const auto aug = solve_bound(model, BoundKind::kAugFact, lmin, s);
    const auto ddf = solve_bound(model, BoundKind::kDdfR, lmin, s);
    const auto cert = improvement_certificate(model, aug);
    const double slack = 1e-5 + aug.fw_gap;
    CHECK(cert.delta_lb >= 0.0);
    CHECK(cert.theta_lb >= 0.0);
    CHECK(fact.objective - aug.objective >= cert.delta_lb - slack);
    CHECK(ddf.objective - aug.objective >= cert.theta_lb - slack);
    if (cert.strict_over_fact) {
      ++strict_seen;
      CHECK(fact.objective > aug.objective);
    }
  }
  CHECK(strict_seen > 0);
}

TEST_CASE("improvement_certificate requires an augmented solution") {
  std::mt19937_64 rng(24);
  const CovarianceModel model(oracle::random_spd(rng, 5));
  const auto fact = solve_bound(model, BoundKind::kFact, 0.0, 2);
  CHECK_THROWS_AS(improvement_certificate(model, fact), DomainError);
}

TEST_CASE("adjusted approximation bounds") {
  const auto a = adjusted_approx_bounds(0.0, 4, 2);
  CHECK(a.sampling_bound == doctest::Approx(std::log(1.5)).epsilon(1e-12));
  CHECK(a.sampling_bound == doctest::Approx(0.405465).epsilon(1e-6));
  // min(log 2, log(4 - 2 - 2 + 2)) = log 2.
  CHECK(a.local_search_bound == doctest::Approx(2 * std::log(2.0)));

  const auto full = adjusted_approx_bounds(0.0, 7, 7);
  CHECK(full.sampling_bound == doctest::Approx(0.0).epsilon(1e-12));

  const auto shifted = adjusted_approx_bounds(0.3, 10, 4);
  const auto base = adjusted_approx_bounds(0.0, 10, 4);
  CHECK(base.sampling_bound - shifted.sampling_bound == doctest::Approx(0.3));
  CHECK(base.local_search_bound - shifted.local_search_bound == doctest::Approx(0.3));

  CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)));
  CHECK(std::isfinite(log_binomial(1000, 500)));
}

TEST_CASE("strict_over_ddf") {
  SUBCASE("equal regime when s reaches the shifted rank") {
    const Vector eigs = (Vector(6) << 5.0, 3.0, 1.0, 1.0, 1.0, 1.0).finished();
    const CovarianceModel model = instance_with_spectrum(eigs, 3);
    const auto aug = solve_bound(model, BoundKind::kAugFact, model.lambda_min(), 2);
    CHECK(strict_over_ddf(model, model.lambda_min(), 2, aug, 0.0, true) ==
          DdfStrictness::kEqualRegime);
  }
  SUBCASE("strict and unknown on brute-forced instances") {
    std::mt19937_64 rng(25);
    int strict = 0;
    for (int trial = 0; trial < 5; ++trial) {
      const CovarianceModel model(oracle::random_spd(rng, 8));
      const double t = model.lambda_min();
      const int s = 3;
      const double zstar = oracle::enumerate_optimum(model.entries(), s).value;
      const auto aug = solve_bound(model, BoundKind::kAugFact, t, s);
      const auto verdict = strict_over_ddf(model, t, s, aug, zstar, true);
      if (verdict == DdfStrictness::kStrict) {
        ++strict;
        const auto ddf = solve_bound(model, BoundKind::kDdfR, t, s);
        CHECK(ddf.objective > aug.objective + 1e-8);
      }
      // A lower bound alone never certifies strictness.
      CHECK(strict_over_ddf(model, t, s, aug, zstar, false) != DdfStrictness::kStrict);
      // An exact optimum equal to the bound leaves the question open.
      CHECK(strict_over_ddf(model, t, s, aug, aug.objective, true) ==
            DdfStrictness::kUnknown);
    }
    CHECK(strict > 0);
  }
  CHECK(std::string(to_string(DdfStrictness::kStrict)) == "strict");
}
