#pragma once

#include "minktens/bodies.hpp"
#include "minktens/common.hpp"
#include "minktens/crofton.hpp"
#include "minktens/ground_truth.hpp"
#include "minktens/mc.hpp"
#include "minktens/quadrature.hpp"
#include "minktens/rng.hpp"
#include "minktens/symtensor.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace minktens {

// radius of a ball around the origin certainly containing K
inline Real boundRadiusFromOrigin(const ConvexBody& k) {
  return std::visit(
      [](const auto& b) -> Real {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) return b.center.norm() + b.radius;
        else if constexpr (std::is_same_v<T, Ellipsoid>) return b.center.norm() + b.semiAxes.maxCoeff();
        else if constexpr (std::is_same_v<T, Polygon>) {
          Real r = 0;
          for (const auto& v : b.vertices) r = std::max(r, v.norm());
          return r;
        } else if constexpr (std::is_same_v<T, Polytope3>) {
          Real r = 0;
          for (const auto& f : b.facets)
            for (const auto& v : f.loop) r = std::max(r, v.norm());
          return r;
        } else {
          return std::max(b.a.norm(), b.b.norm());
        }
      },
      k.data());
}

// Known compact container for the unknown body; caches V_{n-1}(A) and the
// rejection bound used by the line samplers.
class ReferenceSet {
 public:
  explicit ReferenceSet(ConvexBody a, const QuadratureSpec& q = QuadratureSpec(2048, 64))
      : body_(std::move(a)), vTop_(intrinsicTopVolume(body_, q)), bound_(boundRadiusFromOrigin(body_)) {}

  const ConvexBody& body() const { return body_; }
  int dim() const { return body_.dim(); }
  Real vTop() const { return vTop_; }
  Real boundRadius() const { return bound_; }

  // c_1(A)^{-1} = 2 kappa_{n-1} V_{n-1}(A) / omega_n for convex A
  Real c1Inverse() const {
    const int n = dim();
    return 2.0 * kappaN(n - 1) * vTop_ / omegaN(n);
  }

  // support-function dominance on a direction grid
  void requireContains(const ConvexBody& k, int gridCount = 1024) const {
    for (const auto& u : detail::directionGrid(dim(), gridCount))
      if (support(k, u) > support(body_, u) + 1e-9)
        throw std::invalid_argument("ReferenceSet: body is not contained in the reference set");
  }

 private:
  ConvexBody body_;
  Real vTop_;
  Real bound_;
};

// ---- isotropic uniform random lines -------------------------------------------

inline LinearDirection isotropicDirection(int n, RngStream& rng) {
  if (n == 2) return LinearDirection::fromAngle(rng.uniform(0.0, M_PI));
  for (;;) {
    const Vec g = rng.gaussianVec(n);
    if (g.norm() > 1e-12) return LinearDirection(g);
  }
}

// IUR line hitting A: joint density proportional to the invariant line measure
// restricted to {E : E cap A != empty}. Direction and offset proposals are
// redrawn together on rejection; the offset proposal ball has a fixed,
// direction-independent radius, so no direction weighting sneaks in. For a
// ball A centered at the origin every proposal is accepted.
inline AffineLine sampleIurLine(const ReferenceSet& a, RngStream& rng) {
  const int n = a.dim();
  const Real r = a.boundRadius();
  for (;;) {
    const LinearDirection dir = isotropicDirection(n, rng);
    const auto basis = complementBasis(dir.unit());
    Vec x = Vec::Zero(n);
    if (n == 2) {
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

// hit-or-miss estimator: c_1(A)^{-1} G_s(pi(E)) V_0(K cap E)
inline SymmetricTensor estHitMiss(const ConvexBody& k, const ReferenceSet& a, const AffineLine& e,
                                  const MeasurementFunction& g) {
  if (!lineHits(k, e)) return SymmetricTensor(k.dim(), g.rank());
  return a.c1Inverse() * g(e.direction);
}

inline SymmetricTensor estHitMiss(const ConvexBody& k, const ReferenceSet& a, const AffineLine& e,
                                  int s) {
  return estHitMiss(k, a, e, MeasurementFunction(k.dim(), s));
}

// projection estimator: (1/N) sum G_s(L_i) V_{n-1}(K | L_i^perp)
inline SymmetricTensor estProjection(const ConvexBody& k, const std::vector<LinearDirection>& dirs,
                                     const MeasurementFunction& g) {
  if (dirs.empty()) throw std::invalid_argument("estProjection: need at least one direction");
  SymmetricTensor acc(k.dim(), g.rank());
  for (const auto& d : dirs) acc += brightness(k, d) * g(d);
  return acc * (1.0 / static_cast<Real>(dirs.size()));
}

inline SymmetricTensor estProjection(const ConvexBody& k, const std::vector<LinearDirection>& dirs,
                                     int s) {
  return estProjection(k, dirs, MeasurementFunction(k.dim(), s));
}

// isotropic, pairwise orthogonal lines: a Haar-rotated standard frame
inline std::vector<LinearDirection> orthogonalFrame(int n, RngStream& rng) {
  if (n == 2) {
    const Real phi = rng.uniform(0.0, M_PI);
    return {LinearDirection::fromAngle(phi), LinearDirection::fromAngle(phi + 0.5 * M_PI)};
  }
  Eigen::MatrixXd g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = rng.normal();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i)
    if (r(i, i) < 0) q.col(i) = -q.col(i).eval();
  std::vector<LinearDirection> frame;
  for (int i = 0; i < n; ++i) frame.push_back(LinearDirection(Vec(q.col(i))));
  return frame;
}

// (n+1) V_{n-1}(K|L_i^perp) > sum_j V_{n-1}(K|L_j^perp) for every i: exactly
// when the rank-2 projection estimator over this frame is positive definite.
inline bool posdefCondition(const ConvexBody& k, const std::vector<LinearDirection>& frame) {
  const int n = k.dim();
  if (static_cast<int>(frame.size()) != n)
    throw std::invalid_argument("posdefCondition: frame size must equal dimension");
  std::vector<Real> b;
  Real total = 0;
  for (const auto& d : frame) {
    b.push_back(brightness(k, d));
    total += b.back();
  }
  for (Real bi : b)
    if (!((n + 1) * bi > total)) return false;
  return true;
}

// r(K)/R(K) > (1 - 1/n)^{1/(n-1)} guarantees the condition for every frame
inline bool sufficientRatioCheck(const ConvexBody& k) {
  const auto [rIn, rOut] = inradiusCircumradius(k);
  const int n = k.dim();
  return rIn / rOut > std::pow(1.0 - 1.0 / n, 1.0 / (n - 1));
}

// systematic design in the plane: directions phi_0 + i pi/N
inline SymmetricTensor systematicEstimator2d(const ConvexBody& k, int nLines, Real phi0,
                                             const MeasurementFunction& g) {
  if (k.dim() != 2) throw std::invalid_argument("systematicEstimator2d: planar bodies only");
  if (nLines < 1) throw std::invalid_argument("systematicEstimator2d: need N >= 1");
  std::vector<LinearDirection> dirs;
  for (int i = 0; i < nLines; ++i) dirs.push_back(LinearDirection::fromAngle(phi0 + i * M_PI / nLines));
  return estProjection(k, dirs, g);
}

inline SymmetricTensor systematicEstimator2d(const ConvexBody& k, int nLines, Real phi0) {
  return systematicEstimator2d(k, nLines, phi0, MeasurementFunction(2, 2));
}

// ---- vertical sections (n = 3) ---------------------------------------------------

// VUR 2-flat hitting A: plane through the vertical axis with density
// proportional to Lebesgue offset measure on A|M^perp; fixed-radius offset
// proposals keep the plane marginal correctly length-weighted.
inline VerticalFlat2 sampleVurFlat(const ReferenceSet& a, const LinearDirection& axis,
                                   RngStream& rng) {
  if (a.dim() != 3) throw std::invalid_argument("sampleVurFlat: needs dimension 3");
  const auto w = complementBasis(axis.unit());
  const Real bound = a.boundRadius();
  for (;;) {
    const Real psi = rng.uniform(0.0, M_PI);
    const Vec second = std::cos(psi) * w[0] + std::sin(psi) * w[1];
    const Vec normal = -std::sin(psi) * w[0] + std::cos(psi) * w[1];
    const Real t = rng.uniform(-bound, bound);
    // flat hits A iff t lies in the support interval of A along the normal
    if (t <= support(a.body(), normal) && -t <= support(a.body(), (-normal).eval())) {
      return VerticalFlat2(axis, LinearDirection(second), t * normal);
    }
  }
}

// line inside a 2-flat, in flat coordinates: direction angle + signed offset
struct FlatLine {
  Real angle;
  Real offset;

  Vec direction2() const { return makeVec({std::cos(angle), std::sin(angle)}); }
  Vec normal2() const { return makeVec({-std::sin(angle), std::cos(angle)}); }
  AffineLine line2() const {
    return AffineLine(LinearDirection(direction2()), (offset * normal2()).eval());
  }
};

// IUR line within the flat hitting the section body (2-D, flat coordinates)
inline FlatLine sampleIurLineInFlat(const ConvexBody& section, RngStream& rng) {
  const Real bound = boundRadiusFromOrigin(section);
  for (;;) {
    const Real beta = rng.uniform(0.0, M_PI);
    const Real tau = rng.uniform(-bound, bound);
    const FlatLine fl{beta, tau};
    if (lineHits(section, fl.line2())) return fl;
  }
}

namespace detail {

inline Real sinAngleToAxis(const Vec& u3, const LinearDirection& axis) {
  const Real c = std::min<Real>(1.0, std::abs(u3.dot(axis.unit())));
  return std::sqrt(std::max<Real>(0.0, 1.0 - c * c));
}

}  // namespace detail

// V_{n-2}(A | L0^perp): top intrinsic volume of the shadow of A on the
// plane orthogonal to the vertical axis.
inline Real shadowTopVolume(const ConvexBody& a, const LinearDirection& axis) {
  const auto w = complementBasis(axis.unit());
  return intrinsicTopVolume(shadowBody(a, w[0], w[1]));
}

// Two-step vertical estimator. Given a VUR flat H and an IUR line E inside it,
//   V_{n-2}(A|L0^perp) * (2/pi) V_1(A cap H) * G_s(pi(E)) * V_0(K cap E) * sin(angle(E, L0))^{n-2}
// is unbiased for the rank-s surface tensor of K.
inline SymmetricTensor estVertical(const ConvexBody& k, Real shadowVTop, Real v1Section,
                                   const VerticalFlat2& h, const FlatLine& e,
                                   const MeasurementFunction& g) {
  const Vec u3 = h.embedDirection(std::cos(e.angle), std::sin(e.angle));
  const Vec p2 = e.normal2();
  const Vec point3 = h.pointAt(e.offset * p2[0], e.offset * p2[1]);
  const AffineLine line3(LinearDirection(u3), point3);
  if (!lineHits(k, line3)) return SymmetricTensor(3, g.rank());
  const Real sinPow = detail::sinAngleToAxis(u3, h.axis);  // exponent n-2 = 1
  return (shadowVTop * (2.0 / M_PI) * v1Section * sinPow) * g(u3);
}

// Width variant: for U uniform on the flat's unit circle,
//   V_{n-2}(A|L0^perp) * G_s(U^perp cap pi(H)) * cos(angle(U, L0))^{n-2} * w(K cap H, U)
inline SymmetricTensor estVerticalWidth(const ConvexBody& k, Real shadowVTop,
                                        const VerticalFlat2& h, Real uAngle,
                                        const MeasurementFunction& g) {
  const auto section = flatSection(k, h);
  if (!section) return SymmetricTensor(3, g.rank());
  const Vec u2 = makeVec({std::cos(uAngle), std::sin(uAngle)});
  const Vec u3 = h.embedDirection(u2[0], u2[1]);
  const Vec p3 = h.embedDirection(-u2[1], u2[0]);  // U^perp within the flat
  const Real cosPow = std::abs(u3.dot(h.axis.unit()));
  const Real w = width(*section, u2);
  return (shadowVTop * cosPow * w) * g(p3);
}

// Bundles the fixed pieces of the vertical design (reference set, axis,
// measurement function, cached shadow volume) behind one-draw closures.
class VerticalDesign {
 public:
  VerticalDesign(ReferenceSet a, LinearDirection axis, int s)
      : a_(std::move(a)),
        axis_(std::move(axis)),
        g_(3, s),
        shadowVTop_(shadowTopVolume(a_.body(), axis_)) {}

  const ReferenceSet& reference() const { return a_; }
  const LinearDirection& axis() const { return axis_; }
  const MeasurementFunction& measurement() const { return g_; }
  Real shadowVTop() const { return shadowVTop_; }

  SymmetricTensor drawHitMiss(const ConvexBody& k, RngStream& rng) const {
    const VerticalFlat2 h = sampleVurFlat(a_, axis_, rng);
    const auto section = flatSection(a_.body(), h);
    if (!section) return SymmetricTensor(3, g_.rank());  // grazing flat: measure zero
    const FlatLine e = sampleIurLineInFlat(*section, rng);
    return estVertical(k, shadowVTop_, intrinsicTopVolume(*section), h, e, g_);
  }

  SymmetricTensor drawWidth(const ConvexBody& k, RngStream& rng) const {
    const VerticalFlat2 h = sampleVurFlat(a_, axis_, rng);
    return estVerticalWidth(k, shadowVTop_, h, rng.uniform(0.0, 2.0 * M_PI), g_);
  }

 private:
  ReferenceSet a_;
  LinearDirection axis_;
  MeasurementFunction g_;
  Real shadowVTop_;
};

// ---- non-isotropic (f-weighted) sampling in the plane -----------------------------

// matrix components of G_2 in the plane: g_ij([u_phi]) = (3/8)(u_i u_j - delta_ij/3)
inline Real gComponent2d(int i, int j, Real phi) {
  const Real u[2] = {std::cos(phi), std::sin(phi)};
  return (3.0 / 8.0) * (u[i] * u[j] - (i == j ? 1.0 / 3.0 : 0.0));
}

// Direction density on [0, pi) with respect to the uniform probability
// measure, tabulated on midpoint cells. Draws use the inverse CDF; the
// density reported for a draw is the table's own piecewise-constant value, so
// the weighted estimator stays exactly unbiased.
class DirectionDensity {
 public:
  static DirectionDensity fromWeight(const std::function<Real(Real)>& weight, int nodes = 4096) {
    if (nodes < 16) throw std::invalid_argument("DirectionDensity: too few nodes");
    DirectionDensity d;
    d.values_.resize(static_cast<std::size_t>(nodes));
    Real total = 0;
    int zeros = 0;
    for (int i = 0; i < nodes; ++i) {
      const Real phi = (i + 0.5) * M_PI / nodes;
      const Real w = weight(phi);
      if (!(w >= 0)) throw std::invalid_argument("DirectionDensity: negative weight");
      if (w == 0) ++zeros;
      d.values_[static_cast<std::size_t>(i)] = w;
      total += w;
    }
    if (total <= 0) throw std::invalid_argument("DirectionDensity: weight vanishes identically");
    if (zeros > nodes / 8)
      throw std::invalid_argument("DirectionDensity: weight vanishes on a positive-measure set");
    d.cdf_.resize(static_cast<std::size_t>(nodes) + 1);
    d.cdf_[0] = 0;
    for (int i = 0; i < nodes; ++i)
      d.cdf_[static_cast<std::size_t>(i) + 1] = d.cdf_[static_cast<std::size_t>(i)] +
                                                d.values_[static_cast<std::size_t>(i)] / total;
    d.cdf_.back() = 1.0;
    // density w.r.t. uniform measure: cell mass / cell probability-width
    const Real cellNu = 1.0 / nodes;
    Real peak = 0;
    for (auto& v : d.values_) {
      v = (v / total) / cellNu;
      peak = std::max(peak, v);
    }
    d.peak_ = peak;
    return d;
  }

  Real sample(RngStream& rng) const {
    const Real u = rng.uniform01();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    std::size_t cell = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cdf_.begin() - 1, 0));
    if (cell >= values_.size()) cell = values_.size() - 1;
    const Real lo = cdf_[cell], hi = cdf_[cell + 1];
    const Real frac = hi > lo ? (u - lo) / (hi - lo) : 0.5;
    const Real h = M_PI / static_cast<Real>(values_.size());
    return (static_cast<Real>(cell) + frac) * h;
  }

  Real sampleRejection(RngStream& rng) const {
    for (;;) {
      const Real phi = rng.uniform(0.0, M_PI);
      if (rng.uniform01() * peak_ <= density(phi)) return phi;
    }
  }

  Real density(Real phi) const {
    Real x = std::fmod(phi, M_PI);
    if (x < 0) x += M_PI;
    std::size_t cell = static_cast<std::size_t>(x / M_PI * static_cast<Real>(values_.size()));
    if (cell >= values_.size()) cell = values_.size() - 1;
    return values_[cell];
  }

 private:
  std::vector<Real> values_;  // density w.r.t. uniform measure, per cell
  std::vector<Real> cdf_;
  Real peak_ = 0;
};

// normalizer int |g_ij| d nu over [0, pi), by kink-split quadrature
inline Real fstarNormalizer(int i, int j) {
  const Real kap = std::acos(1.0 / std::sqrt(3.0));
  const std::vector<Real> breaks = {kap, M_PI - kap, M_PI + kap, 2 * M_PI - kap,
                                    0.5 * M_PI, M_PI, 1.5 * M_PI};
  return quad::periodicPiecewise([&](Real p) { return std::abs(gComponent2d(i, j, p)); }, breaks) /
         (2.0 * M_PI);
}

// f*(phi) = |g_ij([u_phi])| / int |g_ij| d nu
inline Real fstarDensityValue(int i, int j, Real phi) {
  static const Real norm11 = fstarNormalizer(0, 0);
  static const Real norm12 = fstarNormalizer(0, 1);
  const Real norm = (i == j) ? norm11 : norm12;
  return std::abs(gComponent2d(i, j, phi)) / norm;
}

inline DirectionDensity fstarDensity(int i, int j, int nodes = 4096) {
  return DirectionDensity::fromWeight([=](Real phi) { return std::abs(gComponent2d(i, j, phi)); },
                                      nodes);
}

// body-optimal density f*_K proportional to sqrt(2R V_1(K|u^perp)) |g_ij|
inline DirectionDensity fstarBodyDensity(int i, int j, const ConvexBody& k, Real radius,
                                         int nodes = 4096) {
  return DirectionDensity::fromWeight(
      [=, &k](Real phi) {
        const LinearDirection u = LinearDirection::fromAngle(phi);
        return std::sqrt(2.0 * radius * brightness(k, u)) * std::abs(gComponent2d(i, j, phi));
      },
      nodes);
}

// f-weighted single-component estimator in the plane with A = (radius) B^2:
// phi from f, offset uniform on [-R, R], value 2R g_ij(pi(E)) V_0(K cap E) / f.
inline Real estWeighted(const ConvexBody& k, Real radius, int i, int j,
                        const DirectionDensity& f, RngStream& rng) {
  const Real phi = f.sample(rng);
  const Real tau = rng.uniform(-radius, radius);
  const LinearDirection dir = LinearDirection::fromAngle(phi);
  const AffineLine e(dir, (tau * perp2(dir.unit())).eval());
  if (!lineHits(k, e)) return 0.0;
  return 2.0 * radius * gComponent2d(i, j, phi) / f.density(phi);
}

// ---- closed-form second-moment curves ----------------------------------------------

enum class CurveKind { PIur, PFstar, QIur, QFstar, POpt, QOpt };

namespace detail {

inline Real curveKappa() { return std::acos(1.0 / std::sqrt(3.0)); }

inline Real curveM() {
  const Real kap = curveKappa();
  return (std::sqrt(2.0) + kap) / (4.0 * M_PI) - 1.0 / 16.0;
}

// integral over [0, 2pi) of integrand(phi) * |cos(phi-gamma)|^pow
// split at every kink; sqrt weights get geometric panel refinement toward the
// zeros of the cosine.
template <class F>
Real curveIntegral(F&& integrand, Real gamma, bool sqrtWeight) {
  const Real kap = curveKappa();
  std::vector<Real> breaks = {kap, M_PI - kap, M_PI + kap, 2 * M_PI - kap,
                              0.0, 0.5 * M_PI, M_PI, 1.5 * M_PI};
  const Real z1 = gamma + 0.5 * M_PI;
  const Real z2 = gamma + 1.5 * M_PI;
  breaks.push_back(z1);
  breaks.push_back(z2);
  if (sqrtWeight) {
    Real step = 0.25;
    for (int k = 0; k < 18; ++k, step *= 0.5) {
      breaks.push_back(z1 - step);
      breaks.push_back(z1 + step);
      breaks.push_back(z2 - step);
      breaks.push_back(z2 + step);
    }
  }
  auto f = [&](Real p) {
    const Real c = std::abs(std::cos(p - gamma));
    return integrand(p) * (sqrtWeight ? std::sqrt(c) : c);
  };
  return quad::periodicPiecewise(f, std::move(breaks)) / (2.0 * M_PI);
}

}  // namespace detail

// Second-moment comparison curves for the single-component estimators, as
// functions of the generating segment angle gamma.
inline Real varianceCurve(CurveKind kind, Real gamma) {
  const Real kap = detail::curveKappa();
  const Real m = detail::curveM();
  auto foldP = [](Real g) {
    g = std::fmod(g, M_PI);
    if (g < 0) g += M_PI;
    return g > 0.5 * M_PI ? M_PI - g : g;
  };
  switch (kind) {
    case CurveKind::PIur: {
      const Real g = foldP(gamma);
      const Real c2 = std::cos(g) * std::cos(g);
      return (1.0 / (20.0 * M_PI)) * (-0.375 * c2 * c2 + c2 + 0.5);
    }
    case CurveKind::PFstar: {
      const Real g = foldP(gamma);
      if (g <= 0.5 * M_PI - kap) {
        return (m / M_PI) * ((2.0 * std::sqrt(2.0) / (3.0 * std::sqrt(3.0))) * std::cos(g) -
                             0.25 * std::cos(g) * std::cos(g));
      }
      return (m / M_PI) *
             (0.25 * std::cos(g) * std::cos(g) + std::sin(g) / (3.0 * std::sqrt(3.0)));
    }
    case CurveKind::QIur: {
      const Real s2 = std::sin(2.0 * gamma);
      return (3.0 / (320.0 * M_PI)) * (4.0 - 0.5 * s2 * s2);
    }
    case CurveKind::QFstar: {
      Real g = std::fmod(gamma, 0.5 * M_PI);
      if (g < 0) g += 0.5 * M_PI;
      return (3.0 / (32.0 * M_PI * M_PI)) *
             (std::sin(g) + std::cos(g) - std::sin(g) * std::cos(g));
    }
    case CurveKind::POpt: {
      const Real v = detail::curveIntegral(
          [](Real p) { return std::abs(gComponent2d(0, 0, p)); }, gamma, true);
      return v * v;
    }
    case CurveKind::QOpt: {
      const Real v = detail::curveIntegral(
          [](Real p) { return std::abs(gComponent2d(0, 1, p)); }, gamma, true);
      return v * v;
    }
  }
  throw std::logic_error("varianceCurve: unknown kind");
}

// The same curves evaluated straight from their defining integrals.
inline Real varianceCurveDefiningIntegral(CurveKind kind, Real gamma) {
  switch (kind) {
    case CurveKind::PIur:
      return detail::curveIntegral(
          [](Real p) {
            const Real g = gComponent2d(0, 0, p);
            return g * g;
          },
          gamma, false);
    case CurveKind::PFstar:
      return detail::curveM() * detail::curveIntegral(
                                    [](Real p) { return std::abs(gComponent2d(0, 0, p)); }, gamma,
                                    false);
    case CurveKind::QIur:
      return detail::curveIntegral(
          [](Real p) {
            const Real g = gComponent2d(0, 1, p);
            return g * g;
          },
          gamma, false);
    case CurveKind::QFstar:
      return (3.0 / (8.0 * M_PI)) * detail::curveIntegral(
                                        [](Real p) { return std::abs(gComponent2d(0, 1, p)); },
                                        gamma, false);
    case CurveKind::POpt:
    case CurveKind::QOpt:
      return varianceCurve(kind, gamma);  // quadrature is the definition here
  }
  throw std::logic_error("varianceCurveDefiningIntegral: unknown kind");
}

}  // namespace minktens
