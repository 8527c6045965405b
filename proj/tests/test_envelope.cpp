#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "mesp/envelope.hpp"
#include "mesp/errors.hpp"
#include "oracles.hpp"

using namespace mesp;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

std::vector<double> to_std(const Vector& v) {
  return {v.data(), v.data() + v.size()};
}

// Random nonnegative vector, sometimes with exact zeros and repeated entries.
Vector random_y(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  Vector y(n);
  const bool sparse = unit(rng) < 0.3;
  for (int i = 0; i < n; ++i) {
    y(i) = (sparse && unit(rng) < 0.5) ? 0.0 : std::exp(3.0 * expo(rng)) - 1.0;
  }
  return y;
}

}  // namespace

TEST_CASE("psi: worked examples") {
  auto a = psi(vec({3, 2, 0, 0}), 2);
  CHECK(a.k == 1);
  CHECK(a.value == doctest::Approx(std::log(6.0)).epsilon(1e-12));

  auto b = psi(vec({1, 1, 1, 1}), 2);
  CHECK(b.k == 0);
  CHECK(b.value == doctest::Approx(2 * std::log(2.0)).epsilon(1e-12));

  auto c = psi(vec({4, 1, 1}), 2);
  CHECK(c.k == 1);
  CHECK(c.value == doctest::Approx(std::log(8.0)).epsilon(1e-12));

  // The same k values from the enumeration oracle.
  CHECK(oracle::breakpoints_by_enumeration({3, 2, 0, 0}, 2) == std::vector{1});
  CHECK(oracle::breakpoints_by_enumeration({1, 1, 1, 1}, 2) == std::vector{0});
  CHECK(oracle::breakpoints_by_enumeration({4, 1, 1}, 2) == std::vector{1});
}

TEST_CASE("psi_subgradient: worked examples in input order") {
  auto approx_eq = [](const Vector& g, const Vector& want) {
    return (g - want).cwiseAbs().maxCoeff() < 1e-14;
  };
  CHECK(approx_eq(psi_subgradient(psi(vec({4, 1, 1}), 2)), vec({0.25, 0.5, 0.5})));
  CHECK(approx_eq(psi_subgradient(psi(vec({1, 1, 1, 1}), 2)),
                  vec({0.5, 0.5, 0.5, 0.5})));
  CHECK(approx_eq(psi_subgradient(psi(vec({3, 2, 0, 0}), 2)),
                  vec({1.0 / 3, 0.5, 0.5, 0.5})));
  // Unsorted input maps back through the permutation.
  CHECK(approx_eq(psi_subgradient(psi(vec({1, 4, 1}), 2)), vec({0.5, 0.25, 0.5})));
}

TEST_CASE("psi: errors and rank deficiency") {
  CHECK_THROWS_AS(psi(vec({1, -0.1}), 1), DomainError);
  CHECK_THROWS_AS(psi(vec({1, 2}), 0), DomainError);
  CHECK_THROWS_AS(psi(vec({1, 2}), 3), DomainError);
  // Noise just below zero is clamped.
  CHECK(psi(vec({2, -1e-13}), 1).value == doctest::Approx(std::log(2.0)));

  const auto deficient = psi(vec({3, 0, 0}), 2);
  CHECK(deficient.rank_deficient);
  CHECK(std::isinf(deficient.value));
  CHECK(deficient.value < 0);
  CHECK_THROWS_AS(psi_subgradient(deficient), DomainError);
}

TEST_CASE("envelope_value") {
  SUBCASE("zero spectrum, shift only") {
    const auto e = envelope_value(Vector::Zero(4), 1.0, 2);
    CHECK(e.value == doctest::Approx(0.0));
  }
  SUBCASE("s-sparse spectrum reduces to the sum of logs") {
    const Vector eigs = vec({5.0, 2.0, 0.5, 0.0, 0.0});
    const double t = 0.7;
    const auto e = envelope_value(eigs, t, 3);
    CHECK(e.value == doctest::Approx(std::log(5.7) + std::log(2.7) + std::log(1.2))
                         .epsilon(1e-13));
  }
  SUBCASE("rank-deficient random spectra against the k-enumeration oracle") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> unit(0.0, 4.0);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> eig(6, 0.0);
      for (int i = 0; i < 4; ++i) eig[i] = unit(rng);
      std::sort(eig.begin(), eig.end(), std::greater<>());
      const int s = 3;
      const double t = 0.5;
      std::vector<double> shifted = eig;
      for (int i = 0; i < s; ++i) shifted[i] += t;
      const auto ks = oracle::breakpoints_by_enumeration(shifted, s);
      REQUIRE(ks.size() == 1);
      Vector ev(6);
      for (int i = 0; i < 6; ++i) ev(i) = eig[i];
      const auto e = envelope_value(ev, t, s);
      CHECK(e.k == ks[0]);
      CHECK(std::abs(e.value - oracle::psi_at(shifted, s, ks[0])) < 1e-12);
    }
  }
  CHECK_THROWS_AS(envelope_value(vec({1.0, -1e-6}), 0.0, 1), DomainError);
  CHECK_NOTHROW(envelope_value(vec({1.0, -1e-11}), 0.0, 1));
}

TEST_CASE("psi properties on random vectors") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> dim(1, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  for (int trial = 0; trial < 2000; ++trial) {
    const int n = dim(rng);
    const int s = 1 + static_cast<int>(unit(rng) * n) % n;
    const Vector y1 = random_y(rng, n);
    const Vector y2 = random_y(rng, n);
    const auto e1 = psi(y1, s);
    const auto e2 = psi(y2, s);

    // Uniqueness of k.
    const auto ks = oracle::breakpoints_by_enumeration(to_std(y1), s);
    REQUIRE(ks.size() == 1);
    CHECK(e1.k == ks[0]);

    // Permutation invariance.
    std::vector<double> perm = to_std(y1);
    std::shuffle(perm.begin(), perm.end(), rng);
    const auto ep = psi(Eigen::Map<Vector>(perm.data(), n), s);
    if (e1.finite()) {
      CHECK(std::abs(ep.value - e1.value) <= 1e-12 * std::max(1.0, std::abs(e1.value)));
    } else {
      CHECK_FALSE(ep.finite());
    }

    if (!e1.finite() || !e2.finite()) continue;

    // Concavity along a random chord.
    const double theta = unit(rng);
    const auto mid = psi(theta * y1 + (1 - theta) * y2, s);
    CHECK(mid.value >= theta * e1.value + (1 - theta) * e2.value - 1e-9);

    // Supergradient inequality.
    const Vector g = psi_subgradient(e1);
    CHECK(e2.value <= e1.value + g.dot(y2 - y1) + 1e-9);
    CHECK(g.minCoeff() >= 0.0);
  }
}

TEST_CASE("psi is Schur-concave and exact on s-sparse vectors") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unit(0.1, 5.0);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 3 + trial % 8;
    const int s = 1 + trial % n;
    std::vector<double> mu(n);
    for (double& v : mu) v = unit(rng);
    const std::vector<double> nu = oracle::robin_hood(rng, mu, 5);
    const double f_mu = psi(Eigen::Map<Vector>(mu.data(), n), s).value;
    const double f_nu =
        psi(Eigen::Map<const Vector>(nu.data(), n), s).value;
    CHECK(f_mu <= f_nu + 1e-9);

    // At most s positive entries.
    Vector sparse = Vector::Zero(n);
    double expected = 0.0;
    for (int i = 0; i < s; ++i) {
      sparse(i) = mu[i];
      expected += std::log(mu[i]);
    }
    CHECK(std::abs(psi(sparse, s).value - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
  }
}
