#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minktens/crofton.hpp"
#include "minktens/ground_truth.hpp"
#include "minktens/rng.hpp"

using namespace minktens;

namespace {

ConvexBody unitDisk() { return ConvexBody(Ball{Vec::Zero(2), 1.0}); }
ConvexBody unitBall3() { return ConvexBody(Ball{Vec::Zero(3), 1.0}); }
ConvexBody unitSquare() {
  return ConvexBody(Polygon{{makeVec({0, 0}), makeVec({1, 0}), makeVec({1, 1}), makeVec({0, 1})}});
}
ConvexBody triangle() {
  return ConvexBody(Polygon{{makeVec({0, 0}), makeVec({1, 0}), makeVec({0, 1})}});
}
ConvexBody ellipse21(Real angle = 0) {
  return ConvexBody(Ellipsoid{Vec::Zero(2), makeVec({2, 1}), rotation2(angle)});
}

SymmetricTensor qTensor(int n, Real scale) { return scale * metricTensor(n); }

}  // namespace

TEST_CASE("polytope surface tensors") {
  CHECK(surfaceTensorPolytope(unitSquare(), 0)[0] == doctest::Approx(2.0));  // V_1
  CHECK(maxAbsDiff(surfaceTensorPolytope(unitSquare(), 2), qTensor(2, 1.0 / (4.0 * M_PI))) < 1e-15);
  const ConvexBody cube = makeBox3(Vec::Zero(3), makeVec({1, 1, 1}));
  CHECK(maxAbsDiff(surfaceTensorPolytope(cube, 2), qTensor(3, 1.0 / (4.0 * M_PI))) < 1e-15);
  // odd ranks vanish for origin-symmetric polytopes
  const ConvexBody rect = ConvexBody(
      Polygon{{makeVec({1, 0.25}), makeVec({-1, 0.25}), makeVec({-1, -0.25}), makeVec({1, -0.25})}});
  for (int s : {1, 3, 5}) CHECK(maxAbs(surfaceTensorPolytope(rect, s)) < 1e-15);
}

TEST_CASE("smooth surface tensors") {
  const QuadratureSpec q(512, 64);
  CHECK(maxAbsDiff(surfaceTensorSmooth(unitDisk(), 2, q), qTensor(2, 1.0 / 8.0)) < 1e-12);
  CHECK(maxAbsDiff(surfaceTensorSmooth(unitBall3(), 2, q), qTensor(3, 1.0 / 6.0)) < 1e-12);
  for (int s : {1, 3}) {
    CHECK(maxAbs(surfaceTensorSmooth(ellipse21(0.3), s, q)) < 1e-12);
  }
  // node-count robustness on an ellipse
  const SymmetricTensor coarse = surfaceTensorSmooth(ellipse21(), 4, QuadratureSpec(128, 16));
  const SymmetricTensor fine = surfaceTensorSmooth(ellipse21(), 4, QuadratureSpec(1024, 16));
  CHECK(maxAbsDiff(coarse, fine) < 1e-10 * maxAbs(fine));
}

TEST_CASE("intrinsic top volume") {
  CHECK(intrinsicTopVolume(unitDisk()) == doctest::Approx(M_PI));
  CHECK(intrinsicTopVolume(unitBall3()) == doctest::Approx(2.0 * M_PI));
  CHECK(intrinsicTopVolume(unitSquare()) == doctest::Approx(2.0));
  CHECK(intrinsicTopVolume(ConvexBody(Ball{Vec::Zero(3), 2.5})) ==
        doctest::Approx(2.0 * M_PI * 2.5 * 2.5));
}

TEST_CASE("trace of the rank-2 tensor is V_{n-1}/(4 pi)") {
  for (const auto& k : {unitDisk(), unitSquare(), unitBall3(), ellipse21(0.4)}) {
    const SymmetricTensor t = surfaceTensor(k, 2);
    Real trace = 0;
    for (int i = 0; i < k.dim(); ++i) trace += t.coeff({i, i});
    CHECK(trace == doctest::Approx(intrinsicTopVolume(k) / (4.0 * M_PI)).epsilon(1e-9));
  }
}

TEST_CASE("scaling covariance") {
  for (Real lambda : {0.5, 2.0}) {
    for (const auto& k : {unitDisk(), unitSquare()}) {
      const SymmetricTensor base = surfaceTensor(k, 2);
      const SymmetricTensor scaledT = surfaceTensor(scaled(k, lambda), 2);
      CHECK(maxAbsDiff(scaledT, std::pow(lambda, k.dim() - 1) * base) < 1e-12);
    }
    const SymmetricTensor b3 = surfaceTensor(scaled(unitBall3(), lambda), 2);
    CHECK(maxAbsDiff(b3, std::pow(lambda, 2) * surfaceTensor(unitBall3(), 2)) < 1e-12);
  }
}

TEST_CASE("rotation covariance") {
  // quarter turn of the square: exact
  const Mat quarter = rotation2(M_PI / 2);
  const SymmetricTensor sq = surfaceTensor(unitSquare(), 2);
  CHECK(maxAbsDiff(surfaceTensor(rotatedBody(unitSquare(), quarter), 2), rotated(sq, quarter)) <
        1e-14);
  // random rotations of an ellipse
  RngStream rng(77, 0);
  for (int rep = 0; rep < 4; ++rep) {
    const Mat rho = rotation2(rng.uniform(0, M_PI));
    const SymmetricTensor direct = surfaceTensor(rotatedBody(ellipse21(), rho), 4);
    const SymmetricTensor pushed = rotated(surfaceTensor(ellipse21(), 4), rho);
    CHECK(maxAbsDiff(direct, pushed) < 1e-6 * maxAbs(pushed));
  }
}

TEST_CASE("linear Crofton identity on planar bodies") {
  const QuadratureSpec q(1024, 256);
  for (const auto& k : {unitDisk(), unitSquare(), triangle(), ellipse21(0.0)}) {
    for (int s : {0, 2, 4}) {
      const SymmetricTensor lhs = croftonIntegralOracle(k, s, q);
      const SymmetricTensor rhs = croftonCombination(k, s);
      CHECK(maxAbsDiff(lhs, rhs) <= 1.5e-3 * maxAbs(rhs));
    }
    for (int s : {1, 3, 5}) {
      CHECK(maxAbs(croftonIntegralOracle(k, s, QuadratureSpec(64, 32))) <= 1e-10);
    }
  }
}

TEST_CASE("disk hitting measure anchor") {
  // mu({lines hitting B^2}) = kappa_1 = 2, so the rank-0 integral is (2/omega_1) * 2 = 2
  const SymmetricTensor lhs = croftonIntegralOracle(unitDisk(), 0, QuadratureSpec(512, 512));
  CHECK(lhs[0] == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("inverse Crofton identity recovers surface tensors") {
  const QuadratureSpec q(1024, 256);
  CHECK(maxAbsDiff(inverseCroftonOracle(unitDisk(), 2, q), qTensor(2, 1.0 / 8.0)) < 1.5e-3 / 8.0);
  CHECK(maxAbsDiff(inverseCroftonOracle(unitSquare(), 2, q), qTensor(2, 1.0 / (4.0 * M_PI))) <
        1.5e-3);
  const SymmetricTensor e4 = inverseCroftonOracle(ellipse21(0), 4, q);
  const SymmetricTensor truth = surfaceTensorSmooth(ellipse21(0), 4, QuadratureSpec(512, 64));
  CHECK(maxAbsDiff(e4, truth) <= 1.5e-3 * maxAbs(truth));
}

TEST_CASE("three-dimensional Crofton identities") {
  const QuadratureSpec q(24, 48);
  const ConvexBody spheroid(Ellipsoid{Vec::Zero(3), makeVec({1, 1, 2}), Mat::Identity(3, 3)});
  for (const auto& k : {unitBall3(), spheroid}) {
    for (int s : {0, 2}) {
      const SymmetricTensor lhs = croftonIntegralOracle(k, s, q);
      const SymmetricTensor rhs = croftonCombination(k, s);
      CHECK(maxAbsDiff(lhs, rhs) <= 2e-3 * maxAbs(rhs));
      const SymmetricTensor inv = inverseCroftonOracle(k, s, q);
      const SymmetricTensor truth = surfaceTensor(k, s);
      CHECK(maxAbsDiff(inv, truth) <= 2e-3 * std::max<Real>(maxAbs(truth), 0.1));
    }
  }
}

TEST_CASE("reconstruction through the inverted system") {
  // Phi_{n-1,0,s} = sum_j d_{s/2 j} Q^{s/2-j} C_{2j} * (integral of the rank-2j
  // measurement); assembled from the brute-force integrals
  const int s = 4;
  const ConvexBody k = unitSquare();
  const CroftonTable t = CroftonTable::build(2, s);
  const QuadratureSpec q(1024, 256);
  SymmetricTensor acc(2, s);
  const SymmetricTensor qt = metricTensor(2);
  for (int j = 0; j <= s / 2; ++j) {
    const SymmetricTensor integral = croftonIntegralOracle(k, 2 * j, q);
    acc += t.d[s / 2][j] * t.C[j] * symProduct(tensorPower(qt, s / 2 - j), integral);
  }
  const SymmetricTensor truth = surfaceTensorPolytope(k, s);
  CHECK(maxAbsDiff(acc, truth) <= 2e-3 * maxAbs(truth));
}

TEST_CASE("quadrature spec validation") {
  CHECK_THROWS_AS(QuadratureSpec(8, 64), std::invalid_argument);
  CHECK_THROWS_AS(QuadratureSpec(64, 8), std::invalid_argument);
}
