#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minktens/crofton.hpp"
#include "minktens/rng.hpp"

#include <cmath>

using namespace minktens;

TEST_CASE("unit ball constants") {
  CHECK(omegaN(1) == doctest::Approx(2.0));
  CHECK(omegaN(2) == doctest::Approx(2.0 * M_PI));
  CHECK(omegaN(3) == doctest::Approx(4.0 * M_PI));
  CHECK(omegaN(4) == doctest::Approx(2.0 * M_PI * M_PI));
  CHECK(omegaN(5) == doctest::Approx(8.0 * M_PI * M_PI / 3.0));
  CHECK(kappaN(0) == doctest::Approx(1.0));
  CHECK(kappaN(1) == doctest::Approx(2.0));
  CHECK(kappaN(2) == doctest::Approx(M_PI));
  CHECK(kappaN(3) == doctest::Approx(4.0 * M_PI / 3.0));
  for (int n = 1; n <= 12; ++n) CHECK(omegaN(n) == doctest::Approx(n * kappaN(n)));
}

TEST_CASE("c coefficients") {
  CHECK(cCoeff(0, 0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(cCoeff(1, 1) == doctest::Approx(8.0 * M_PI).epsilon(1e-14));
  CHECK(cCoeff(2, 2) == doctest::Approx(-64.0 * M_PI * M_PI / 3.0).epsilon(1e-14));
  // nonvanishing diagonal; signs alternate from k = 1 on (c_0, c_1 > 0)
  for (int m = 0; m <= 10; ++m) {
    CHECK(cCoeff(m, m) != 0.0);
    for (int k = 0; k <= m; ++k) {
      const Real v = cCoeff(m, k);
      CHECK((k <= 1 ? v > 0 : (k % 2 == 0 ? v < 0 : v > 0)));
    }
  }
  CHECK_THROWS_AS(cCoeff(1, 2), std::invalid_argument);
}

TEST_CASE("C normalizers") {
  for (int n : {2, 3, 5}) {
    CHECK(cNormalizer(0, n) == doctest::Approx(2.0 * M_PI * omegaN(n) / omegaN(n + 1)));
    CHECK(cNormalizer(2, n) ==
          doctest::Approx(16.0 * std::pow(M_PI, 3) * omegaN(n) / omegaN(n + 3)));
    CHECK(cNormalizer(4, n) ==
          doctest::Approx(256.0 * std::pow(M_PI, 5) * omegaN(n) / (3.0 * omegaN(n + 5))));
  }
  CHECK_THROWS_AS(cNormalizer(3, 2), std::invalid_argument);
}

TEST_CASE("inverse-system entries") {
  const CroftonTable t = CroftonTable::build(2, 4);
  CHECK(t.d[0][0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(t.d[1][0] == doctest::Approx(-1.0 / (8.0 * M_PI)).epsilon(1e-15));
  CHECK(t.d[1][1] == doctest::Approx(1.0 / (8.0 * M_PI)).epsilon(1e-15));
  CHECK(t.d[2][0] == doctest::Approx(-3.0 / (64.0 * M_PI * M_PI)).epsilon(1e-14));
  CHECK(t.d[2][1] == doctest::Approx(3.0 / (32.0 * M_PI * M_PI)).epsilon(1e-14));
  CHECK(t.d[2][2] == doctest::Approx(-3.0 / (64.0 * M_PI * M_PI)).epsilon(1e-14));
  // diagonal is exactly the reciprocal
  for (int i = 0; i <= 2; ++i) CHECK(t.d[i][i] == 1.0 / t.c[i][i]);
}

TEST_CASE("D C = I up to rank 20") {
  for (int n : {2, 3}) {
    for (int s = 0; s <= 20; s += 2) {
      CHECK(CroftonTable::build(n, s).dcIdentityError() <= 1e-10);
    }
  }
}

TEST_CASE("measurement function, rank 0") {
  for (int n : {2, 3}) {
    const MeasurementFunction g(n, 0);
    Vec e1 = Vec::Zero(n);
    e1[0] = 1;
    const SymmetricTensor v = g(LinearDirection(e1));
    CHECK(v[0] == doctest::Approx(M_PI * omegaN(n) / omegaN(n + 1)).epsilon(1e-13));
  }
}

TEST_CASE("measurement function, rank 2") {
  {
    const MeasurementFunction g(2, 2);
    const SymmetricTensor v = g(LinearDirection(makeVec({1, 0})));
    CHECK(v.coeff({0, 0}) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(v.coeff({0, 1}) == doctest::Approx(0.0));
    CHECK(v.coeff({1, 1}) == doctest::Approx(-0.125).epsilon(1e-14));
  }
  RngStream rng(3, 0);
  for (int n : {2, 3}) {
    const MeasurementFunction g(n, 2);
    const Real front = omegaN(n) / (4.0 * omegaN(n + 1));
    for (int rep = 0; rep < 10; ++rep) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = rng.normal();
      const LinearDirection u(v);
      const SymmetricTensor expected =
          front * (static_cast<Real>(n + 1) * lineMetric(u) - metricTensor(n));
      CHECK(maxAbsDiff(g(u), expected) < 1e-14);
      // trace identity: trace G_2(L) = omega_n / (4 omega_{n+1})
      Real trace = 0;
      for (int i = 0; i < n; ++i) trace += g(u).coeff({i, i});
      CHECK(trace == doctest::Approx(front).epsilon(1e-12));
    }
  }
}

TEST_CASE("measurement function, rank 4 matches the inverted system") {
  // G_4(L) = -(omega_n/(32 pi omega_{n+1})) (3Q^2 - 6(n+1) Q Q(L) + (n+1)(n+3) Q(L)^2)
  RngStream rng(9, 0);
  for (int n : {2, 3}) {
    const MeasurementFunction g(n, 4);
    const Real front = -omegaN(n) / (32.0 * M_PI * omegaN(n + 1));
    const SymmetricTensor q = metricTensor(n);
    for (int rep = 0; rep < 6; ++rep) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = rng.normal();
      const LinearDirection u(v);
      const SymmetricTensor ql = lineMetric(u);
      const SymmetricTensor expected =
          front * (3.0 * symProduct(q, q) - (6.0 * (n + 1)) * symProduct(q, ql) +
                   static_cast<Real>((n + 1) * (n + 3)) * symProduct(ql, ql));
      CHECK(maxAbsDiff(g(u), expected) < 1e-13);
    }
  }
  CHECK_THROWS_AS(MeasurementFunction(2, 3), std::invalid_argument);
}

TEST_CASE("binomial identity holds exactly") {
  CHECK(binomialHalfIntegerIdentityResidual(0, 0) == 0);
  CHECK(binomialHalfIntegerIdentityResidual(2, 1) == 0);
  CHECK(binomialHalfIntegerIdentityResidual(15, 7) == 0);
  for (int n = 0; n <= 12; ++n)
    for (int m = 0; m <= n; ++m) CHECK(binomialHalfIntegerIdentityResidual(n, m) == 0);
}

TEST_CASE("alternating binomial sum") {
  CHECK(alternatingBinomialSumResidual(0) == 0.0);
  CHECK(alternatingBinomialSumResidual(1) == 0.0);
  CHECK(alternatingBinomialSumResidual(10) <= 1e-10);
  // the rational right-hand side 4^m / binom(2m, m) equals the Gamma form
  for (int m = 0; m <= 30; ++m) {
    Real logBinom = std::lgamma(2.0 * m + 1.0) - 2.0 * std::lgamma(m + 1.0);
    const Real gammaForm =
        std::sqrt(M_PI) * std::exp(std::lgamma(m + 1.0) - std::lgamma(m + 0.5));
    const Real rationalForm = std::exp(m * std::log(4.0) - logBinom);
    CHECK(std::abs(gammaForm - rationalForm) <= 1e-10 * gammaForm);
    CHECK(alternatingBinomialSumResidual(m) <= 1e-10);
  }
}
