#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minktens/bodies.hpp"
#include "minktens/config.hpp"
#include "minktens/ground_truth.hpp"
#include "minktens/rng.hpp"

#include <cstdio>
#include <fstream>

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
ConvexBody ellipse(Real a, Real b, Real angle = 0) {
  return ConvexBody(Ellipsoid{Vec::Zero(2), makeVec({a, b}), rotation2(angle)});
}
ConvexBody spheroid(Real a, Real c) {
  return ConvexBody(Ellipsoid{Vec::Zero(3), makeVec({a, a, c}), Mat::Identity(3, 3)});
}

std::string writeTemp(const std::string& name, const std::string& content) {
  const std::string path = std::string("/tmp/minktens_test_") + name;
  std::ofstream f(path);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("support function") {
  RngStream rng(1, 0);
  for (int rep = 0; rep < 10; ++rep) {
    Vec u(2);
    const Real phi = rng.uniform(0, 2 * M_PI);
    u << std::cos(phi), std::sin(phi);
    CHECK(support(unitDisk(), u) == doctest::Approx(1.0));
  }
  // centered axis-aligned ellipse (alpha, k alpha): h(u_phi) = alpha sqrt(cos^2 + k^2 sin^2)
  const Real alpha = 1.3, k = 0.4;
  const ConvexBody e = ellipse(alpha, k * alpha);
  for (int rep = 0; rep < 10; ++rep) {
    const Real phi = rng.uniform(0, 2 * M_PI);
    const Vec u = makeVec({std::cos(phi), std::sin(phi)});
    const Real expect = alpha * std::sqrt(std::cos(phi) * std::cos(phi) +
                                          k * k * std::sin(phi) * std::sin(phi));
    CHECK(support(e, u) == doctest::Approx(expect).epsilon(1e-12));
  }
  CHECK(support(unitSquare(), makeVec({1, 0})) == doctest::Approx(1.0));
  CHECK(support(ConvexBody(Segment{Vec::Zero(2), makeVec({1, 0})}), makeVec({0, 1})) ==
        doctest::Approx(0.0));
}

TEST_CASE("width") {
  CHECK(width(unitDisk(), makeVec({1, 0})) == doctest::Approx(2.0));
  CHECK(width(ConvexBody(Segment{Vec::Zero(2), makeVec({1, 0})}), makeVec({0, 1})) ==
        doctest::Approx(0.0));
  const Vec diag = makeVec({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)});
  CHECK(width(unitSquare(), diag) == doctest::Approx(std::sqrt(2.0)));
  // even in u
  RngStream rng(2, 0);
  for (int rep = 0; rep < 10; ++rep) {
    const Real phi = rng.uniform(0, 2 * M_PI);
    const Vec u = makeVec({std::cos(phi), std::sin(phi)});
    CHECK(width(triangle(), u) == doctest::Approx(width(triangle(), (-u).eval())));
  }
}

TEST_CASE("brightness closed forms") {
  RngStream rng(3, 0);
  CHECK(brightness(unitBall3(), LinearDirection(makeVec({0, 0, 1}))) == doctest::Approx(M_PI));
  CHECK(brightness(unitSquare(), LinearDirection(makeVec({1, 0}))) == doctest::Approx(1.0));
  // prolate spheroid viewed along its long axis: circular silhouette
  CHECK(brightness(spheroid(1, 4), LinearDirection(makeVec({0, 0, 1}))) == doctest::Approx(M_PI));
  // n=2: brightness along v equals width perpendicular to v
  for (int rep = 0; rep < 12; ++rep) {
    const Real phi = rng.uniform(0, M_PI);
    const LinearDirection v = LinearDirection::fromAngle(phi);
    CHECK(brightness(triangle(), v) == doctest::Approx(width(triangle(), perp2(v.unit()))));
    CHECK(brightness(ellipse(2, 1), v) == doctest::Approx(width(ellipse(2, 1), perp2(v.unit()))));
  }
}

TEST_CASE("Cauchy consistency: brightness vs area-measure quadrature") {
  RngStream rng(4, 0);
  const QuadratureSpec q(1024, 64);
  const ConvexBody bodies2[] = {unitSquare(), triangle(), ellipse(2, 1, 0.7)};
  for (const auto& k : bodies2) {
    for (int rep = 0; rep < 6; ++rep) {
      const LinearDirection v = LinearDirection::fromAngle(rng.uniform(0, M_PI));
      const Real closed = brightness(k, v);
      CHECK(brightnessOracle(k, v, q) == doctest::Approx(closed).epsilon(1e-6));
    }
  }
  const ConvexBody bodies3[] = {makeBox3(Vec::Zero(3), makeVec({1, 1, 1})), spheroid(1, 2)};
  for (const auto& k : bodies3) {
    for (int rep = 0; rep < 4; ++rep) {
      Vec g(3);
      for (int i = 0; i < 3; ++i) g[i] = rng.normal();
      const LinearDirection v(g);
      CHECK(brightnessOracle(k, v, QuadratureSpec(256, 64)) ==
            doctest::Approx(brightness(k, v)).epsilon(1e-6));
    }
  }
}

TEST_CASE("line hits: examples") {
  const AffineLine through(LinearDirection(makeVec({1, 0})), Vec::Zero(2));
  CHECK(lineHits(unitDisk(), through) == 1);
  const AffineLine far(LinearDirection(makeVec({0, 1})), makeVec({2, 0}));
  CHECK(lineHits(unitDisk(), far) == 0);
  const AffineLine vertical(LinearDirection(makeVec({0, 1})), makeVec({0.5, 0}));
  CHECK(lineHits(unitSquare(), vertical) == 1);
}

TEST_CASE("line hits: translation covariance") {
  RngStream rng(5, 0);
  const ConvexBody bodies[] = {unitSquare(), ellipse(2, 1, 0.3), triangle()};
  for (const auto& k : bodies) {
    for (int rep = 0; rep < 200; ++rep) {
      const LinearDirection dir = LinearDirection::fromAngle(rng.uniform(0, M_PI));
      const Vec x = makeVec({rng.uniform(-2, 2), rng.uniform(-2, 2)});
      const Vec t = makeVec({rng.uniform(-3, 3), rng.uniform(-3, 3)});
      const AffineLine e(dir, x);
      const AffineLine shifted(dir, (x + t).eval());
      CHECK(lineHits(k, e) == lineHits(translated(k, t), shifted));
    }
  }
}

TEST_CASE("line hits: hit set along a ray through the shadow is an interval") {
  RngStream rng(6, 0);
  const ConvexBody bodies[] = {unitSquare(), ellipse(2, 1, 1.1)};
  for (const auto& k : bodies) {
    for (int rep = 0; rep < 50; ++rep) {
      const LinearDirection dir = LinearDirection::fromAngle(rng.uniform(0, M_PI));
      const Vec w = perp2(dir.unit());
      int transitions = 0;
      int prev = -1;
      for (int i = 0; i <= 400; ++i) {
        const Real t = -4.0 + 8.0 * i / 400.0;
        const int hit = lineHits(k, AffineLine(dir, (t * w).eval()));
        if (prev >= 0 && hit != prev) ++transitions;
        prev = hit;
      }
      CHECK(transitions <= 2);
    }
  }
}

TEST_CASE("chord interval agrees with hits and is correct for the disk") {
  const AffineLine e(LinearDirection(makeVec({1, 0})), makeVec({0, 0.6}));
  const auto chord = lineChord(unitDisk(), e);
  REQUIRE(chord.has_value());
  CHECK(chord->second - chord->first == doctest::Approx(2.0 * std::sqrt(1.0 - 0.36)));
}

TEST_CASE("flat sections") {
  const LinearDirection e1(makeVec({1, 0, 0}));
  const LinearDirection e3(makeVec({0, 0, 1}));
  const VerticalFlat2 center(e3, e1, Vec::Zero(3));

  const auto disk = flatSection(unitBall3(), center);
  REQUIRE(disk.has_value());
  REQUIRE(disk->is<Ball>());
  CHECK(disk->get<Ball>().radius == doctest::Approx(1.0));

  const VerticalFlat2 off(e3, e1, makeVec({0, 2, 0}));
  CHECK_FALSE(flatSection(unitBall3(), off).has_value());

  // spheroid (1,1,2) cut by the e1-e3 plane: ellipse with semi-axes (1,2)
  const auto cut = flatSection(spheroid(1, 2), center);
  REQUIRE(cut.has_value());
  REQUIRE(cut->is<Ellipsoid>());
  Vec axes = cut->get<Ellipsoid>().semiAxes;
  CHECK(std::min(axes[0], axes[1]) == doctest::Approx(1.0));
  CHECK(std::max(axes[0], axes[1]) == doctest::Approx(2.0));

  // box section through the middle is the full cross-section square
  const auto boxCut = flatSection(makeBox3(makeVec({-1, -1, -1}), makeVec({1, 1, 1})), center);
  REQUIRE(boxCut.has_value());
  REQUIRE(boxCut->is<Polygon>());
  CHECK(intrinsicTopVolume(*boxCut) == doctest::Approx(4.0));  // half-perimeter of a 2x2 square
}

TEST_CASE("area measure atoms") {
  const auto squareAtoms = areaMeasureAtoms(unitSquare());
  REQUIRE(squareAtoms.size() == 4);
  Vec closure = Vec::Zero(2);
  for (const auto& [n, a] : squareAtoms) {
    CHECK(a == doctest::Approx(1.0));
    closure += a * n;
  }
  CHECK(closure.norm() < 1e-12);

  const auto cubeAtoms = areaMeasureAtoms(makeBox3(Vec::Zero(3), makeVec({1, 1, 1})));
  REQUIRE(cubeAtoms.size() == 6);
  for (const auto& [n, a] : cubeAtoms) CHECK(a == doctest::Approx(1.0));

  const auto triAtoms = areaMeasureAtoms(triangle());
  REQUIRE(triAtoms.size() == 3);
  CHECK(triAtoms[0].first[1] == doctest::Approx(-1.0));  // edge (0,0)-(1,0): outward -e2
  CHECK(triAtoms[1].second == doctest::Approx(std::sqrt(2.0)));
  CHECK(triAtoms[1].first[0] == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(triAtoms[2].first[0] == doctest::Approx(-1.0));
}

TEST_CASE("inradius and circumradius") {
  {
    const auto [r, R] = inradiusCircumradius(unitDisk());
    CHECK(r == doctest::Approx(1.0));
    CHECK(R == doctest::Approx(1.0));
  }
  {
    const auto [r, R] = inradiusCircumradius(ellipse(1.0, 0.4));
    CHECK(r == doctest::Approx(0.4));
    CHECK(R == doctest::Approx(1.0));
  }
  {
    const auto [r, R] = inradiusCircumradius(unitSquare());
    CHECK(r == doctest::Approx(0.5).epsilon(1e-5));
    CHECK(R == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(inradiusCircumradius(ConvexBody(Segment{Vec::Zero(2), makeVec({1, 0})})),
                  std::invalid_argument);
}

TEST_CASE("validation rejects malformed bodies") {
  // clockwise square
  CHECK_THROWS_AS(ConvexBody(Polygon{{makeVec({0, 0}), makeVec({0, 1}), makeVec({1, 1}),
                                      makeVec({1, 0})}}),
                  std::invalid_argument);
  // non-convex vertex order
  CHECK_THROWS_AS(ConvexBody(Polygon{{makeVec({0, 0}), makeVec({1, 0}), makeVec({0.2, 0.2}),
                                      makeVec({0, 1})}}),
                  std::invalid_argument);
  // non-orthogonal rotation
  Mat bad(2, 2);
  bad << 1, 1, 0, 1;
  CHECK_THROWS_AS(ConvexBody(Ellipsoid{Vec::Zero(2), makeVec({1, 1}), bad}), std::invalid_argument);
  // broken facet closure
  Polytope3 broken = makeBox3(Vec::Zero(3), makeVec({1, 1, 1})).get<Polytope3>();
  broken.facets.pop_back();
  CHECK_THROWS_AS(ConvexBody{broken}, std::invalid_argument);
}

TEST_CASE("body config files") {
  const std::string ellPath = writeTemp("ell.cfg",
                                        "kind = ellipsoid\n"
                                        "center = 0 0 0\n"
                                        "semi_axes = 1 1 2\n"
                                        "rotation = e1 3pi/16 e2 5pi/16\n");
  const ConvexBody k = loadBody(ellPath);
  REQUIRE(k.is<Ellipsoid>());
  const Mat expected =
      rotationAboutAxis3(1, 5 * M_PI / 16) * rotationAboutAxis3(0, 3 * M_PI / 16);
  CHECK((k.get<Ellipsoid>().rotation - expected).cwiseAbs().maxCoeff() < 1e-14);

  const std::string rectPath = writeTemp("rect.cfg",
                                         "kind = polygon\n"
                                         "vertices = 1 0.1 ; -1 0.1 ; -1 -0.1 ; 1 -0.1\n");
  const ConvexBody rect = loadBody(rectPath);
  CHECK(support(rect, makeVec({0, 1})) == doctest::Approx(0.1));

  const std::string badPath = writeTemp("bad.cfg", "kind = ball\nradius = 1\ncentre = 0 0\n");
  CHECK_THROWS_AS(loadBody(badPath), ConfigError);

  CHECK(parseNumber("3pi/16") == doctest::Approx(3 * M_PI / 16));
  CHECK(parseNumber("-pi") == doctest::Approx(-M_PI));
  CHECK(parseNumber("0.25") == doctest::Approx(0.25));
  CHECK_THROWS_AS(parseNumber("pie"), std::exception);
}
