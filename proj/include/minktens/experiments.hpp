#pragma once

#include "minktens/bodies.hpp"
#include "minktens/common.hpp"
#include "minktens/estimators.hpp"
#include "minktens/ground_truth.hpp"
#include "minktens/mc.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace minktens {

// ---- study bodies -------------------------------------------------------------

// origin-symmetric eccentric test bodies in the plane
inline ConvexBody makeThinRectangle(Real eps) {
  return ConvexBody(Polygon{{makeVec({1, eps}), makeVec({-1, eps}), makeVec({-1, -eps}),
                             makeVec({1, -eps})}});
}

inline ConvexBody makeThinDiamond(Real eps) {
  return ConvexBody(Polygon{{makeVec({1, 0}), makeVec({0, eps}), makeVec({-1, 0}),
                             makeVec({0, -eps})}});
}

// {x : x1^2 + x2^2/sqrt(eps) <= 1}: semi-axes (1, eps^(1/4))
inline ConvexBody makeThinEllipse(Real eps) {
  return ConvexBody(
      Ellipsoid{Vec::Zero(2), makeVec({1.0, std::pow(eps, 0.25)}), Mat::Identity(2, 2)});
}

// prolate spheroid with semi-axes (1, 1, l), rotated about e1 by 3pi/16 and
// then about e2 by 5pi/16
inline ConvexBody studySpheroid(int l) {
  const Mat rot = rotationAboutAxis3(1, 5.0 * M_PI / 16.0) * rotationAboutAxis3(0, 3.0 * M_PI / 16.0);
  return ConvexBody(Ellipsoid{Vec::Zero(3), makeVec({1.0, 1.0, static_cast<Real>(l)}), rot});
}

// ---- systematic-design positive definiteness ------------------------------------

struct PosdefStudyPoint {
  int body = 0;  // 1..3
  int nLines = 0;
  Real probability = 0;
};

// probability over a phi0 grid (equidistant midpoints of [0, pi/N]) that the
// N-line systematic estimator of the rank-2 tensor is positive definite
inline std::vector<PosdefStudyPoint> systematicPosdefStudy(Real eps, int gridSize, int maxLines) {
  const std::vector<ConvexBody> bodies = {makeThinRectangle(eps), makeThinDiamond(eps),
                                          makeThinEllipse(eps)};
  const MeasurementFunction g(2, 2);
  std::vector<PosdefStudyPoint> out;
  for (int b = 0; b < 3; ++b) {
    for (int n = 1; n <= maxLines; ++n) {
      long hits = 0;
      for (int j = 0; j < gridSize; ++j) {
        const Real phi0 = (j + 0.5) * (M_PI / n) / gridSize;
        if (isPositiveDefinite(systematicEstimator2d(bodies[static_cast<std::size_t>(b)], n, phi0, g)))
          ++hits;
      }
      out.push_back({b + 1, n, static_cast<Real>(hits) / gridSize});
    }
  }
  return out;
}

// smallest N at which the posdef probability reaches 1 for a given body
inline int firstFullyPosdefN(const std::vector<PosdefStudyPoint>& study, int body) {
  for (const auto& p : study)
    if (p.body == body && p.probability >= 1.0) return p.nLines;
  return -1;
}

// ---- spheroid coefficient-of-variation study -------------------------------------

// offset uniform on the shadow A|L^perp for a fixed direction (exact for ball
// references, which is what this study ships with)
inline AffineLine lineWithDirection(const ReferenceSet& a, const LinearDirection& dir,
                                    RngStream& rng) {
  const auto basis = complementBasis(dir.unit());
  const Real r = a.boundRadius();
  for (;;) {
    Vec x = Vec::Zero(a.dim());
    if (a.dim() == 2) {
      x = rng.uniform(-r, r) * basis[0];
    } else {
      const Real rho = r * std::sqrt(rng.uniform01());
      const Real th = rng.uniform(0.0, 2.0 * M_PI);
      x = rho * std::cos(th) * basis[0] + rho * std::sin(th) * basis[1];
    }
    AffineLine e(dir, x);
    if (lineHits(a.body(), e)) return e;
  }
}

// mean of single-line hit-miss estimators over an isotropic orthogonal frame
inline SymmetricTensor estHitMissFrame(const ConvexBody& k, const ReferenceSet& a,
                                       const MeasurementFunction& g, RngStream& rng) {
  const auto frame = orthogonalFrame(k.dim(), rng);
  SymmetricTensor acc(k.dim(), g.rank());
  for (const auto& d : frame) acc += estHitMiss(k, a, lineWithDirection(a, d, rng), g);
  return acc * (1.0 / static_cast<Real>(frame.size()));
}

struct SpheroidStudyRow {
  int l = 0;
  int i = 0, j = 0;  // component (1-based in output)
  Real truth = 0;
  Real cvHit1 = 0, cvHit3 = 0, cvProj1 = 0, cvProj3 = 0;  // sd / |truth|
  Real varProj3 = 0;
  Real hitProbability = 0;  // V2(K)/V2(A), tuned to 1/7
};

// Reproduces the spheroid comparison: four rank-2 estimators on rotated
// prolate spheroids with the reference ball sized so an IUR line hits the
// body with probability 1/7.
inline std::vector<SpheroidStudyRow> spheroidStudy(std::size_t reps, std::uint64_t seed,
                                                   int threads = 0, int lMax = 5) {
  const MeasurementFunction g(3, 2);
  const QuadratureSpec truthQ(256, 64);
  std::vector<SpheroidStudyRow> rows;
  for (int l = 1; l <= lMax; ++l) {
    const ConvexBody k = studySpheroid(l);
    const SymmetricTensor truth = surfaceTensorSmooth(k, 2, truthQ);
    const Real v2 = intrinsicTopVolume(k, truthQ);
    const Real radius = std::sqrt(7.0 * v2 / (2.0 * M_PI));
    const ReferenceSet a{ConvexBody(Ball{Vec::Zero(3), radius})};
    a.requireContains(k);

    const auto hit1 = mcRunTensor(
        [&](RngStream& rng) { return estHitMiss(k, a, sampleIurLine(a, rng), g); }, 3, 2, reps,
        seed ^ (0x100ULL + static_cast<std::uint64_t>(l)), threads);
    const auto hit3 = mcRunTensor([&](RngStream& rng) { return estHitMissFrame(k, a, g, rng); }, 3,
                                  2, reps, seed ^ (0x200ULL + static_cast<std::uint64_t>(l)), threads);
    const auto proj1 = mcRunTensor(
        [&](RngStream& rng) {
          return estProjection(k, {isotropicDirection(3, rng)}, g);
        },
        3, 2, reps, seed ^ (0x300ULL + static_cast<std::uint64_t>(l)), threads);
    const auto proj3 = mcRunTensor(
        [&](RngStream& rng) { return estProjection(k, orthogonalFrame(3, rng), g); }, 3, 2, reps,
        seed ^ (0x400ULL + static_cast<std::uint64_t>(l)), threads);

    const auto& idx = truth.multiIndices();
    for (std::size_t f = 0; f < truth.size(); ++f) {
      SpheroidStudyRow row;
      row.l = l;
      row.i = idx[f][0] + 1;
      row.j = idx[f][1] + 1;
      row.truth = truth[f];
      row.hitProbability = v2 / (2.0 * M_PI * radius * radius);
      const Real denom = std::abs(truth[f]);
      const bool defined = denom > 1e-10 * maxAbs(truth);
      const auto cv = [&](const McSummary& s) {
        return defined ? s.sd(f) / denom : std::numeric_limits<Real>::quiet_NaN();
      };
      row.cvHit1 = cv(hit1);
      row.cvHit3 = cv(hit3);
      row.cvProj1 = cv(proj1);
      row.cvProj3 = cv(proj3);
      row.varProj3 = proj3.variance[static_cast<Eigen::Index>(f)];
      rows.push_back(row);
    }
  }
  return rows;
}

inline Real medianOf(std::vector<Real> xs) {
  if (xs.empty()) return std::numeric_limits<Real>::quiet_NaN();
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

// ---- variance-curve grid -----------------------------------------------------------

struct CurveRow {
  Real gamma;
  Real pIur, pFstar, pOpt;
  Real qIur, qFstar, qOpt;
};

inline std::vector<CurveRow> varianceCurveGrid(int count) {
  std::vector<CurveRow> rows;
  rows.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const Real gamma = (i + 0.5) * M_PI / count;
    rows.push_back({gamma, varianceCurve(CurveKind::PIur, gamma),
                    varianceCurve(CurveKind::PFstar, gamma), varianceCurve(CurveKind::POpt, gamma),
                    varianceCurve(CurveKind::QIur, gamma), varianceCurve(CurveKind::QFstar, gamma),
                    varianceCurve(CurveKind::QOpt, gamma)});
  }
  return rows;
}

}  // namespace minktens
