#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minktens/rng.hpp"
#include "minktens/symtensor.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

using namespace minktens;

namespace {

Vec basisVec(int n, int i) {
  Vec v = Vec::Zero(n);
  v[i] = 1;
  return v;
}

Vec randomVec(int n, RngStream& rng) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-2.0, 2.0);
  return v;
}

SymmetricTensor randomTensor(int n, int p, RngStream& rng) {
  SymmetricTensor t(n, p);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(-1.0, 1.0);
  return t;
}

// independent oracle: evaluate the symmetrized product of a and b by summing
// a(x_sigma(1..p1)) b(x_sigma(p1+1..p)) over all argument permutations
Real symProductOracle(const SymmetricTensor& a, const SymmetricTensor& b,
                      const std::vector<Vec>& args) {
  const int p = static_cast<int>(args.size());
  std::vector<int> perm(static_cast<std::size_t>(p));
  std::iota(perm.begin(), perm.end(), 0);
  Real total = 0;
  long count = 0;
  do {
    std::vector<Vec> xa, xb;
    for (int i = 0; i < a.rank(); ++i) xa.push_back(args[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
    for (int i = a.rank(); i < p; ++i) xb.push_back(args[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]);
    total += a.evaluate(xa) * b.evaluate(xb);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / static_cast<Real>(count);
}

}  // namespace

TEST_CASE("metric tensor") {
  const SymmetricTensor q2 = metricTensor(2);
  CHECK(q2.evaluate({basisVec(2, 0), basisVec(2, 0)}) == doctest::Approx(1.0));
  const SymmetricTensor q3 = metricTensor(3);
  CHECK(q3.evaluate({basisVec(3, 0), basisVec(3, 1)}) == doctest::Approx(0.0));
  CHECK(q3.evaluate({makeVec({1, 2, 3}), makeVec({4, 5, 6})}) == doctest::Approx(32.0));
}

TEST_CASE("symmetric product examples") {
  const SymmetricTensor q = metricTensor(2);
  const SymmetricTensor qq = symProduct(q, q);
  const Vec e1 = basisVec(2, 0), e2 = basisVec(2, 1);
  CHECK(qq.evaluate({e1, e1, e1, e1}) == doctest::Approx(1.0));
  CHECK(qq.evaluate({e1, e1, e2, e2}) == doctest::Approx(1.0 / 3.0));

  const SymmetricTensor x = vectorPower(e1, 1);
  const SymmetricTensor y = vectorPower(e2, 1);
  CHECK(symProduct(x, y).evaluate({e1, e2}) == doctest::Approx(0.5));

  const Vec u = makeVec({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  CHECK(vectorPower(u, 2).evaluate({e1, e2}) == doctest::Approx(0.5));
}

TEST_CASE("tensor power") {
  const SymmetricTensor q = metricTensor(2);
  const SymmetricTensor one = tensorPower(q, 0);
  CHECK(one.rank() == 0);
  CHECK(one[0] == doctest::Approx(1.0));
  CHECK(maxAbsDiff(tensorPower(q, 1), q) == 0.0);
  CHECK(tensorPower(q, 2).coeff({0, 0, 1, 1}) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("line metric") {
  const LinearDirection e1(basisVec(2, 0));
  const SymmetricTensor qe1 = lineMetric(e1);
  CHECK(qe1.coeff({0, 0}) == doctest::Approx(1.0));
  CHECK(qe1.coeff({1, 1}) == doctest::Approx(0.0));

  const LinearDirection diag(makeVec({1, 1}));
  CHECK(lineMetric(diag).coeff({0, 1}) == doctest::Approx(0.5));

  RngStream rng(11, 0);
  for (int rep = 0; rep < 20; ++rep) {
    Vec v = randomVec(3, rng);
    while (v.norm() < 1e-3) v = randomVec(3, rng);
    const SymmetricTensor t = lineMetric(LinearDirection(v));
    Real trace = 0;
    for (int i = 0; i < 3; ++i) trace += t.coeff({i, i});
    CHECK(trace == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("sign canonicalization: u and -u give identical lines") {
  RngStream rng(5, 0);
  for (int rep = 0; rep < 50; ++rep) {
    for (int n : {2, 3}) {
      Vec v = randomVec(n, rng);
      while (v.norm() < 1e-3) v = randomVec(n, rng);
      const LinearDirection a(v);
      const LinearDirection b((-v).eval());
      CHECK(a.unit() == b.unit());
      CHECK(maxAbsDiff(lineMetric(a), lineMetric(b)) == 0.0);
    }
  }
}

TEST_CASE("rank-2 spectrum") {
  CHECK(rank2Spectrum(metricTensor(2))[0] == doctest::Approx(1.0));
  CHECK(rank2Spectrum(metricTensor(2))[1] == doctest::Approx(1.0));

  const Vec ev = rank2Spectrum(lineMetric(LinearDirection(basisVec(2, 0))));
  CHECK(ev[0] == doctest::Approx(0.0));
  CHECK(ev[1] == doctest::Approx(1.0));

  RngStream rng(17, 0);
  for (int n : {2, 3}) {
    for (int rep = 0; rep < 25; ++rep) {
      Vec v = randomVec(n, rng);
      while (v.norm() < 1e-3) v = randomVec(n, rng);
      const SymmetricTensor t =
          static_cast<Real>(n + 1) * lineMetric(LinearDirection(v)) - metricTensor(n);
      const Vec spec = rank2Spectrum(t);
      for (int i = 0; i < n - 1; ++i) CHECK(spec[i] == doctest::Approx(-1.0).epsilon(1e-12));
      CHECK(spec[n - 1] == doctest::Approx(static_cast<Real>(n)).epsilon(1e-12));
      CHECK_FALSE(isPositiveDefinite(t));
    }
  }
}

TEST_CASE("coefficient count is C(n+p-1, p)") {
  auto binom = [](int n, int k) {
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  };
  for (int n : {1, 2, 3}) {
    for (int p : {0, 1, 2, 3, 4, 6}) {
      CHECK(SymmetricTensor(n, p).size() == static_cast<std::size_t>(binom(n + p - 1, p)));
    }
  }
}

TEST_CASE("evaluation: permutation invariance and multilinearity") {
  RngStream rng(23, 0);
  for (int n : {2, 3}) {
    for (int p : {2, 3, 4}) {
      const SymmetricTensor t = randomTensor(n, p, rng);
      std::vector<Vec> args;
      for (int i = 0; i < p; ++i) args.push_back(randomVec(n, rng));
      const Real base = t.evaluate(args);

      auto perm = args;
      std::vector<std::size_t> order(static_cast<std::size_t>(p));
      std::iota(order.begin(), order.end(), 0);
      for (int shuffle = 0; shuffle < 5; ++shuffle) {
        for (std::size_t i = order.size(); i > 1; --i)
          std::swap(order[i - 1], order[rng.nextU64() % i]);
        for (std::size_t i = 0; i < order.size(); ++i) perm[i] = args[order[i]];
        CHECK(t.evaluate(perm) == doctest::Approx(base).epsilon(1e-12));
      }

      // linearity in the first slot
      const Vec y = randomVec(n, rng);
      const Real alpha = rng.uniform(-2.0, 2.0);
      auto scaled = args;
      scaled[0] = (alpha * args[0] + y).eval();
      auto shifted = args;
      shifted[0] = y;
      CHECK(t.evaluate(scaled) == doctest::Approx(alpha * base + t.evaluate(shifted)).epsilon(1e-11));
    }
  }
}

TEST_CASE("symmetric product against the permutation oracle") {
  RngStream rng(31, 0);
  for (int n : {2, 3}) {
    for (const auto& [p1, p2] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {1, 3}}) {
      const SymmetricTensor a = randomTensor(n, p1, rng);
      const SymmetricTensor b = randomTensor(n, p2, rng);
      const SymmetricTensor ab = symProduct(a, b);
      CHECK(maxAbsDiff(ab, symProduct(b, a)) == 0.0);  // commutative, exactly
      for (int rep = 0; rep < 4; ++rep) {
        std::vector<Vec> args;
        for (int i = 0; i < p1 + p2; ++i) args.push_back(randomVec(n, rng));
        CHECK(ab.evaluate(args) == doctest::Approx(symProductOracle(a, b, args)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("associativity on vector powers") {
  RngStream rng(41, 0);
  const Vec u = randomVec(3, rng);
  const SymmetricTensor u1 = vectorPower(u, 1);
  const SymmetricTensor left = symProduct(symProduct(u1, u1), u1);
  const SymmetricTensor right = symProduct(u1, symProduct(u1, u1));
  CHECK(maxAbsDiff(left, right) < 1e-15);
  CHECK(maxAbsDiff(left, vectorPower(u, 3)) < 1e-13);
}

TEST_CASE("rotation pushforward matches evaluation") {
  RngStream rng(43, 0);
  const Real a = rng.uniform(0.0, M_PI);
  Mat rho(2, 2);
  rho << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  const SymmetricTensor t = randomTensor(2, 3, rng);
  const SymmetricTensor rt = rotated(t, rho);
  for (int rep = 0; rep < 5; ++rep) {
    std::vector<Vec> args, back;
    for (int i = 0; i < 3; ++i) {
      args.push_back(randomVec(2, rng));
      back.push_back((rho.transpose() * args.back()).eval());
    }
    CHECK(rt.evaluate(args) == doctest::Approx(t.evaluate(back)).epsilon(1e-12));
  }
}

TEST_CASE("csv serialization uses dash-joined 1-based indices") {
  SymmetricTensor t(2, 2);
  t.coeffRef({0, 1}) = 0.25;
  const auto rows = tensorCsvRows(t);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].first == "1-1");
  CHECK(rows[1].first == "1-2");
  CHECK(rows[1].second == "0.25");
  CHECK(rows[2].first == "2-2");
}

TEST_CASE("invalid inputs throw") {
  CHECK_THROWS_AS(SymmetricTensor(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(LinearDirection(Vec::Zero(2)), std::invalid_argument);
  const SymmetricTensor a(2, 2), b(3, 2);
  CHECK_THROWS_AS(symProduct(a, b), std::invalid_argument);
  CHECK_THROWS_AS(rank2Spectrum(SymmetricTensor(2, 3)), std::invalid_argument);
}
