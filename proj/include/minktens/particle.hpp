#pragma once

#include "minktens/bodies.hpp"
#include "minktens/common.hpp"
#include "minktens/crofton.hpp"
#include "minktens/estimators.hpp"
#include "minktens/ground_truth.hpp"
#include "minktens/rng.hpp"
#include "minktens/symtensor.hpp"

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

namespace minktens {

// Grain distribution on bodies with circumcenter at the origin; a hard
// circumradius bound keeps the dilation margin finite.
class GrainSampler {
 public:
  static GrainSampler fixedBody(ConvexBody k) {
    GrainSampler g;
    g.dim_ = k.dim();
    g.bound_ = boundRadiusFromOrigin(k);
    g.fn_ = [body = std::move(k)](RngStream&) { return body; };
    return g;
  }

  static GrainSampler randomRadiusDisk(Real rLo, Real rHi) {
    if (!(0 < rLo && rLo <= rHi)) throw std::invalid_argument("randomRadiusDisk: bad radius range");
    GrainSampler g;
    g.dim_ = 2;
    g.bound_ = rHi;
    g.fn_ = [=](RngStream& rng) {
      return ConvexBody(Ball{Vec::Zero(2), rng.uniform(rLo, rHi)});
    };
    return g;
  }

  static GrainSampler rotatedEllipse(Real a1, Real a2) {
    if (!(a1 > 0 && a2 > 0)) throw std::invalid_argument("rotatedEllipse: bad semi-axes");
    GrainSampler g;
    g.dim_ = 2;
    g.bound_ = std::max(a1, a2);
    g.fn_ = [=](RngStream& rng) {
      return ConvexBody(Ellipsoid{Vec::Zero(2), makeVec({a1, a2}), rotation2(rng.uniform(0.0, M_PI))});
    };
    return g;
  }

  static GrainSampler rotatedSpheroid(Real equatorial, Real polar) {
    if (!(equatorial > 0 && polar > 0)) throw std::invalid_argument("rotatedSpheroid: bad semi-axes");
    GrainSampler g;
    g.dim_ = 3;
    g.bound_ = std::max(equatorial, polar);
    g.fn_ = [=](RngStream& rng) {
      // Haar-rotated axis-aligned spheroid via a random orthogonal frame
      const auto frame = orthogonalFrame(3, rng);
      Mat rot(3, 3);
      for (int i = 0; i < 3; ++i) rot.col(i) = frame[static_cast<std::size_t>(i)].unit();
      return ConvexBody(Ellipsoid{Vec::Zero(3), makeVec({equatorial, equatorial, polar}), rot});
    };
    return g;
  }

  ConvexBody sample(RngStream& rng) const { return fn_(rng); }
  Real circumradiusBound() const { return bound_; }
  int dim() const { return dim_; }

 private:
  GrainSampler() = default;
  int dim_ = 0;
  Real bound_ = 0;
  std::function<ConvexBody(RngStream&)> fn_;
};

// Stationary Poisson particle process observed through an axis-aligned window,
// simulated in the window dilated by the grain circumradius bound.
struct ParticleProcessModel {
  Real intensity;  // particles per unit n-volume
  GrainSampler grain;
  Vec windowLo;
  Vec windowHi;

  ParticleProcessModel(Real gamma, GrainSampler g, Vec lo, Vec hi)
      : intensity(gamma), grain(std::move(g)), windowLo(std::move(lo)), windowHi(std::move(hi)) {
    if (!(intensity > 0)) throw std::invalid_argument("ParticleProcessModel: intensity must be positive");
    if (windowLo.size() != grain.dim() || windowHi.size() != grain.dim())
      throw std::invalid_argument("ParticleProcessModel: window dimension mismatch");
    for (Eigen::Index i = 0; i < windowLo.size(); ++i)
      if (!(windowHi[i] > windowLo[i]))
        throw std::invalid_argument("ParticleProcessModel: empty window");
  }

  int dim() const { return grain.dim(); }
  Real margin() const { return grain.circumradiusBound(); }

  Real dilatedVolume() const {
    Real v = 1;
    for (Eigen::Index i = 0; i < windowLo.size(); ++i)
      v *= (windowHi[i] - windowLo[i]) + 2.0 * margin();
    return v;
  }

  Vec windowCenter() const { return 0.5 * (windowLo + windowHi); }

  bool insideWindow(const Vec& x) const {
    for (Eigen::Index i = 0; i < x.size(); ++i)
      if (x[i] < windowLo[i] - 1e-12 || x[i] > windowHi[i] + 1e-12) return false;
    return true;
  }
};

// Poisson germ count in the dilated window, i.i.d. grains translated to germs.
inline std::vector<ConvexBody> simulateParticles(const ParticleProcessModel& model, RngStream& rng) {
  const long count = rng.poisson(model.intensity * model.dilatedVolume());
  std::vector<ConvexBody> particles;
  particles.reserve(static_cast<std::size_t>(count));
  const Real m = model.margin();
  for (long i = 0; i < count; ++i) {
    Vec germ(model.dim());
    for (Eigen::Index d = 0; d < germ.size(); ++d)
      germ[d] = rng.uniform(model.windowLo[d] - m, model.windowHi[d] + m);
    particles.push_back(translated(model.grain.sample(rng), germ));
  }
  return particles;
}

// Estimates the section intensity gamma_L from a test segment of length T on
// the line through the window center with direction L. A sectioned particle
// counts when its chord midpoint (the associated point of the section
// process) falls in the segment; this keeps the estimator free of edge
// effects along the line.
inline Real sectionIntensity(const std::vector<ConvexBody>& particles,
                             const ParticleProcessModel& model, const LinearDirection& dir,
                             Real segmentLength) {
  if (!(segmentLength > 0)) throw std::invalid_argument("sectionIntensity: segment length must be positive");
  const Vec center = model.windowCenter();
  if (!model.insideWindow(center + 0.5 * segmentLength * dir.unit()) ||
      !model.insideWindow(center - 0.5 * segmentLength * dir.unit()))
    throw std::invalid_argument("sectionIntensity: test segment leaves the observation window");
  const AffineLine line(dir, center);
  const Real tCenter = center.dot(dir.unit());
  long hits = 0;
  for (const auto& p : particles) {
    const auto chord = lineChord(p, line);
    if (!chord) continue;
    const Real mid = 0.5 * (chord->first + chord->second) - tCenter;
    if (mid >= -0.5 * segmentLength && mid <= 0.5 * segmentLength) ++hits;
  }
  return static_cast<Real>(hits) / segmentLength;
}

struct SpecificTensorEstimate {
  int rank = 0;
  SymmetricTensor tensor;
  std::size_t linesUsed = 0;
  Real meanHitsPerLine = 0;
};

// average over directions of G_s(L) gamma_L-hat: unbiased for the specific
// surface tensor of the process
inline SpecificTensorEstimate specificTensorEstimate(const std::vector<ConvexBody>& particles,
                                                     const ParticleProcessModel& model,
                                                     const std::vector<LinearDirection>& directions,
                                                     Real segmentLength, int s) {
  if (s % 2 != 0) throw std::invalid_argument("specificTensorEstimate: odd rank has no line-section representation");
  if (directions.empty()) throw std::invalid_argument("specificTensorEstimate: need directions");
  const MeasurementFunction g(model.dim(), s);
  SpecificTensorEstimate out;
  out.rank = s;
  out.tensor = SymmetricTensor(model.dim(), s);
  Real totalRate = 0;
  for (const auto& dir : directions) {
    const Real rate = sectionIntensity(particles, model, dir, segmentLength);
    totalRate += rate * segmentLength;
    out.tensor += rate * g(dir);
  }
  out.tensor *= 1.0 / static_cast<Real>(directions.size());
  out.linesUsed = directions.size();
  out.meanHitsPerLine = totalRate / static_cast<Real>(directions.size());
  return out;
}

// gamma * E_Q[Phi_{n-1,0,s}(grain)]: closed route for fixed grains, grain
// Monte Carlo otherwise.
inline SymmetricTensor specificTensorTruth(const ParticleProcessModel& model, int s,
                                           std::size_t grainReps, std::uint64_t seed,
                                           const QuadratureSpec& q = QuadratureSpec(512, 64)) {
  if (grainReps == 0) throw std::invalid_argument("specificTensorTruth: need grain replications");
  SymmetricTensor acc(model.dim(), s);
  for (std::size_t r = 0; r < grainReps; ++r) {
    RngStream g(seed ^ 0x67726169ULL, r);
    acc += surfaceTensor(model.grain.sample(g), s, q);
  }
  return acc * (model.intensity / static_cast<Real>(grainReps));
}

// equidistant systematic directions in the plane
inline std::vector<LinearDirection> systematicDirections2d(int count, Real phi0) {
  std::vector<LinearDirection> dirs;
  for (int i = 0; i < count; ++i) dirs.push_back(LinearDirection::fromAngle(phi0 + i * M_PI / count));
  return dirs;
}

inline std::vector<LinearDirection> isotropicDirections(int n, int count, RngStream& rng) {
  std::vector<LinearDirection> dirs;
  for (int i = 0; i < count; ++i) dirs.push_back(isotropicDirection(n, rng));
  return dirs;
}

}  // namespace minktens
