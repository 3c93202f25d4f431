#pragma once

#include "minktens/bodies.hpp"
#include "minktens/common.hpp"
#include "minktens/crofton.hpp"
#include "minktens/parallel.hpp"
#include "minktens/quadrature.hpp"
#include "minktens/symtensor.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <functional>
#include <vector>

namespace minktens {

// Phi_{n-1,0,s}(K) = (1/(s! omega_{s+1})) int_{S^{n-1}} u^s S_{n-1}(K, du).
// Independent routes per model: facet atoms for polytopes, boundary
// parametrization for balls and ellipsoids.

inline SymmetricTensor surfaceTensorPolytope(const ConvexBody& p, int s) {
  const auto atoms = areaMeasureAtoms(p);
  SymmetricTensor acc(p.dim(), s);
  for (const auto& [normal, area] : atoms) acc += area * vectorPower(normal, s);
  return acc * (1.0 / (std::tgamma(s + 1.0) * omegaN(s + 1)));
}

namespace detail {

// sum of f(boundary normal) * surface element over the boundary of a ball or
// ellipsoid; callback receives (outward unit normal, boundary measure weight)
template <class F>
void forEachBoundaryElement(const ConvexBody& k, const QuadratureSpec& q, F&& f) {
  if (k.is<Ball>()) {
    const auto& b = k.get<Ball>();
    const int n = k.dim();
    if (n == 2) {
      for (Real th : quad::midpoints(0, 2 * M_PI, q.directionNodes)) {
        const Vec nu = makeVec({std::cos(th), std::sin(th)});
        f(nu, b.radius * (2 * M_PI / q.directionNodes));
      }
    } else {
      // Gauss-Legendre in t = cos(theta), periodic midpoints in phi
      using GL = boost::math::quadrature::gauss<Real, 64>;
      const auto& ts = GL::abscissa();  // nonnegative half
      const auto& ws = GL::weights();
      const int nPhi = 2 * q.directionNodes;
      const Real dPhi = 2 * M_PI / nPhi;
      auto emit = [&](Real t, Real w) {
        const Real r = std::sqrt(std::max<Real>(0, 1 - t * t));
        for (int j = 0; j < nPhi; ++j) {
          const Real phi = (j + 0.5) * dPhi;
          const Vec nu = makeVec({r * std::cos(phi), r * std::sin(phi), t});
          f(nu, b.radius * b.radius * w * dPhi);
        }
      };
      for (std::size_t i = 0; i < ts.size(); ++i) {
        emit(ts[i], ws[i]);
        if (ts[i] > 0) emit(-ts[i], ws[i]);
      }
    }
    return;
  }
  if (!k.is<Ellipsoid>())
    throw std::invalid_argument("surfaceTensorSmooth: body must be a ball or ellipsoid");
  const auto& e = k.get<Ellipsoid>();
  const int n = k.dim();
  if (n == 2) {
    const Real a1 = e.semiAxes[0], a2 = e.semiAxes[1];
    for (Real th : quad::midpoints(0, 2 * M_PI, q.directionNodes)) {
      const Real c = std::cos(th), s = std::sin(th);
      const Real speed = std::sqrt(a1 * a1 * s * s + a2 * a2 * c * c);
      Vec nu = makeVec({c / a1, s / a2});
      nu.normalize();
      nu = e.rotation * nu;
      f(nu, speed * (2 * M_PI / q.directionNodes));
    }
  } else {
    // x = c + R D w(theta,phi); dS = |det D| sin(theta) |D^{-1} w| dtheta dphi
    using GL = boost::math::quadrature::gauss<Real, 64>;
    const auto& ts = GL::abscissa();
    const auto& ws = GL::weights();
    const int nPhi = 2 * q.directionNodes;
    const Real dPhi = 2 * M_PI / nPhi;
    const Real det = e.semiAxes.prod();
    auto emit = [&](Real t, Real w) {
      const Real r = std::sqrt(std::max<Real>(0, 1 - t * t));
      for (int j = 0; j < nPhi; ++j) {
        const Real phi = (j + 0.5) * dPhi;
        const Vec omega = makeVec({r * std::cos(phi), r * std::sin(phi), t});
        const Vec dInv = omega.cwiseQuotient(e.semiAxes);
        Vec nu = e.rotation * dInv.normalized();
        f(nu, det * dInv.norm() * w * dPhi);
      }
    };
    for (std::size_t i = 0; i < ts.size(); ++i) {
      emit(ts[i], ws[i]);
      if (ts[i] > 0) emit(-ts[i], ws[i]);
    }
  }
}

}  // namespace detail

inline SymmetricTensor surfaceTensorSmooth(const ConvexBody& k, int s, const QuadratureSpec& q) {
  SymmetricTensor acc(k.dim(), s);
  detail::forEachBoundaryElement(k, q, [&](const Vec& nu, Real w) { acc += w * vectorPower(nu, s); });
  return acc * (1.0 / (std::tgamma(s + 1.0) * omegaN(s + 1)));
}

inline SymmetricTensor surfaceTensor(const ConvexBody& k, int s,
                                     const QuadratureSpec& q = QuadratureSpec(512, 64)) {
  if (k.is<Polygon>() || k.is<Polytope3>()) return surfaceTensorPolytope(k, s);
  return surfaceTensorSmooth(k, s, q);
}

// V_{n-1}(K) = Phi_{n-1,0,0}(K); closed form for balls.
inline Real intrinsicTopVolume(const ConvexBody& k,
                               const QuadratureSpec& q = QuadratureSpec(512, 64)) {
  if (k.is<Ball>()) {
    const auto& b = k.get<Ball>();
    const int n = k.dim();
    return 0.5 * omegaN(n) * std::pow(b.radius, n - 1);
  }
  if (k.is<Segment>()) {
    const auto& s = k.get<Segment>();
    if (k.dim() == 2) return (s.b - s.a).norm();  // V_1 of a segment is its length
    return 0.0;
  }
  return surfaceTensor(k, 0, q)[0];
}

namespace detail {

// roots of c1 cos(x) + c2 sin(x) + c3 = 0 on [0, 2pi)
inline std::vector<Real> cosineRoots(Real c1, Real c2, Real c3) {
  const Real amp = std::hypot(c1, c2);
  if (amp <= std::abs(c3)) return {};
  const Real psi = std::atan2(c2, c1);
  const Real delta = std::acos(std::clamp(-c3 / amp, -1.0, 1.0));
  return {psi + delta, psi - delta};
}

}  // namespace detail

// (1/2) int |<v,w>| S_{n-1}(K, dw): the Cauchy-projection route to brightness.
// The absolute value puts a kink along {w perp v}; the boundary quadrature
// splits at its analytically known parameter locations.
inline Real brightnessOracle(const ConvexBody& k, const LinearDirection& v,
                             const QuadratureSpec& q = QuadratureSpec(2048, 64)) {
  if (k.is<Polygon>() || k.is<Polytope3>()) {
    Real acc = 0;
    for (const auto& [normal, area] : areaMeasureAtoms(k)) acc += area * std::abs(v.unit().dot(normal));
    return 0.5 * acc;
  }
  Vec center, semiAxes;
  Mat rot;
  if (k.is<Ball>()) {
    const auto& b = k.get<Ball>();
    center = b.center;
    semiAxes = Vec::Constant(k.dim(), b.radius);
    rot = Mat::Identity(k.dim(), k.dim());
  } else if (k.is<Ellipsoid>()) {
    const auto& e = k.get<Ellipsoid>();
    center = e.center;
    semiAxes = e.semiAxes;
    rot = e.rotation;
  } else {
    throw std::invalid_argument("brightnessOracle: unsupported body");
  }
  const Vec w = rot.transpose() * v.unit();
  if (k.dim() == 2) {
    const Real a1 = semiAxes[0], a2 = semiAxes[1];
    auto f = [&](Real th) {
      const Real c = std::cos(th), s = std::sin(th);
      const Real speed = std::sqrt(a1 * a1 * s * s + a2 * a2 * c * c);
      Vec nu = makeVec({c / a1, s / a2});
      nu.normalize();
      return std::abs(w.dot(nu)) * speed;
    };
    return 0.5 * quad::periodicPiecewise(f, detail::cosineRoots(w[0] / a1, w[1] / a2, 0.0));
  }
  // n = 3: integrate in t = cos(theta) with per-t kink splitting in phi. The
  // phi-kinks vanish beyond the tangency values t*, so the t-axis is split
  // there too, with geometric refinement against the mild endpoint kink.
  const Real det = semiAxes.prod();
  const Vec a = w.cwiseQuotient(semiAxes);
  auto phiIntegral = [&](Real t) {
    const Real r = std::sqrt(std::max<Real>(0, 1 - t * t));
    auto f = [&](Real phi) {
      const Vec omega = makeVec({r * std::cos(phi), r * std::sin(phi), t});
      const Vec dInv = omega.cwiseQuotient(semiAxes);
      const Real norm = dInv.norm();
      return std::abs(w.dot(dInv) / norm) * det * norm;
    };
    return quad::periodicPiecewise(f, detail::cosineRoots(a[0] * r, a[1] * r, a[2] * t));
  };
  const Real planar = a[0] * a[0] + a[1] * a[1];
  const Real tStar = std::sqrt(planar / std::max<Real>(planar + a[2] * a[2], 1e-300));
  std::vector<Real> cuts = {-1.0, 1.0, -tStar, tStar};
  for (Real step = 0.5; step > 1e-7; step *= 0.5) {
    for (Real s : {tStar - step, tStar + step, -tStar + step, -tStar - step})
      if (s > -1.0 && s < 1.0) cuts.push_back(s);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  Real acc = 0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] < 1e-14) continue;
    acc += quad::gauss(phiIntegral, cuts[i], cuts[i + 1]);
  }
  return 0.5 * acc;
}

// ---- brute-force Crofton integrals -------------------------------------------

namespace detail {

// Measures the hit set {x in L^perp : K cap (L + x) != empty} with an
// equal-weight grid on a support-fitted box padded by 1 percent. The grid
// phase is slid per direction (quasi-random, index-seeded): the cell-boundary
// error then cancels across directions instead of accumulating, which matters
// for rotationally symmetric bodies where every direction sees the same box.
inline Real offsetHitMeasure(const ConvexBody& k, const Vec& u, const std::vector<Vec>& basis,
                             int nodes, std::size_t dirIndex) {
  const int m = static_cast<int>(basis.size());
  const Real g1 = 0.6180339887498949;   // 1/phi
  const Real g2 = 0.7548776662466927;   // 1/rho (plastic ratio), paired with g2^2
  const Real g3 = 0.5698402909980532;
  Real phase[2] = {std::fmod((dirIndex + 1) * g1, 1.0), std::fmod((dirIndex + 1) * g2, 1.0)};
  if (m == 2) phase[0] = std::fmod((dirIndex + 1) * g3, 1.0);
  Real lo[2], hi[2];
  for (int i = 0; i < m; ++i) {
    hi[i] = support(k, basis[static_cast<std::size_t>(i)]);
    lo[i] = -support(k, (-basis[static_cast<std::size_t>(i)]).eval());
    const Real pad = 0.01 * std::max<Real>(hi[i] - lo[i], 1e-12);
    lo[i] -= pad;
    hi[i] += pad;
  }
  const LinearDirection dir{Vec(u)};
  if (m == 1) {
    const Real h = (hi[0] - lo[0]) / nodes;
    long hits = 0;
    for (int i = 0; i < nodes; ++i) {
      const Vec x = (lo[0] + (i + phase[0]) * h) * basis[0];
      hits += lineHits(k, AffineLine(dir, x));
    }
    return hits * h;
  }
  const Real h0 = (hi[0] - lo[0]) / nodes;
  const Real h1 = (hi[1] - lo[1]) / nodes;
  long hits = 0;
  for (int i = 0; i < nodes; ++i) {
    const Vec base = (lo[0] + (i + phase[0]) * h0) * basis[0];
    for (int j = 0; j < nodes; ++j) {
      const Vec x = base + (lo[1] + (j + phase[1]) * h1) * basis[1];
      if (lineHits(k, AffineLine(dir, x))) ++hits;
    }
  }
  return hits * h0 * h1;
}

// direction nodes with probability weights for the invariant line measure
inline void forEachLineDirection(int n, const QuadratureSpec& q,
                                 const std::function<void(std::size_t, const Vec&, Real)>& f) {
  if (n == 2) {
    const Real h = M_PI / q.directionNodes;
    for (int i = 0; i < q.directionNodes; ++i) {
      const Real phi = (i + 0.5) * h;
      f(static_cast<std::size_t>(i), makeVec({std::cos(phi), std::sin(phi)}), h / M_PI);
    }
  } else {
    // hemisphere of directions: product midpoint grid with sin weight
    const int nTheta = q.directionNodes;
    const int nPhi = 2 * q.directionNodes;
    const Real dTheta = 0.5 * M_PI / nTheta;
    const Real dPhi = 2.0 * M_PI / nPhi;
    std::size_t idx = 0;
    for (int i = 0; i < nTheta; ++i) {
      const Real theta = (i + 0.5) * dTheta;
      const Real w = std::sin(theta) * dTheta * dPhi / (2.0 * M_PI);
      for (int j = 0; j < nPhi; ++j, ++idx) {
        const Real phi = (j + 0.5) * dPhi;
        f(idx, makeVec({std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)}), w);
      }
    }
  }
}

template <class PerDirection>
SymmetricTensor reduceOverDirections(const ConvexBody& k, int s, const QuadratureSpec& q,
                                     PerDirection&& perDir) {
  const int n = k.dim();
  std::vector<std::pair<Vec, Real>> dirs;
  forEachLineDirection(n, q, [&](std::size_t, const Vec& u, Real w) { dirs.emplace_back(u, w); });
  const std::size_t chunkSize = 64;
  std::vector<SymmetricTensor> partial(chunkCount(dirs.size(), chunkSize), SymmetricTensor(n, s));
  parallelChunks(dirs.size(), chunkSize, 0, [&](std::size_t c, std::size_t b, std::size_t e) {
    SymmetricTensor acc(n, s);
    for (std::size_t i = b; i < e; ++i) acc += dirs[i].second * perDir(i, dirs[i].first);
    partial[c] = std::move(acc);
  });
  SymmetricTensor total(n, s);
  for (const auto& p : partial) total += p;  // fixed chunk order
  return total;
}

}  // namespace detail

// Left-hand side of the linear Crofton identity, evaluated by brute force:
// the relative rank-s tensor of K cap E integrated over all lines, with the
// invariant measure factored as (uniform directions) x (Lebesgue offsets).
// The spherical factor (u^s + (-u)^s) vanishes identically for odd s.
inline SymmetricTensor croftonIntegralOracle(const ConvexBody& k, int s, const QuadratureSpec& q) {
  const Real scale = 1.0 / (std::tgamma(s + 1.0) * omegaN(s + 1));
  return detail::reduceOverDirections(k, s, q, [&](std::size_t i, const Vec& u) {
    const auto basis = complementBasis(u);
    const Real meas = detail::offsetHitMeasure(k, u, basis, q.offsetNodes, i);
    SymmetricTensor t = vectorPower(u, s) + vectorPower((-u).eval(), s);
    return t * (scale * meas);
  });
}

// Right-hand side of the same identity, assembled from surface tensors:
// (2 omega_{n+s+1} / (pi s! omega_{s+1}^2 omega_n)) sum_k c_k^{(s/2)} Q^{s/2-k} Phi_{n-1,0,2k}(K)
inline SymmetricTensor croftonCombination(const ConvexBody& k, int s,
                                          const QuadratureSpec& q = QuadratureSpec(512, 64)) {
  if (s % 2 != 0) throw std::invalid_argument("croftonCombination: s must be even");
  const int n = k.dim();
  const int half = s / 2;
  const SymmetricTensor qt = metricTensor(n);
  SymmetricTensor acc(n, s);
  for (int kk = 0; kk <= half; ++kk)
    acc += cCoeff(half, kk) * symProduct(tensorPower(qt, half - kk), surfaceTensor(k, 2 * kk, q));
  const Real front = 2.0 * omegaN(n + s + 1) /
                     (M_PI * std::tgamma(s + 1.0) * omegaN(s + 1) * omegaN(s + 1) * omegaN(n));
  return acc * front;
}

// int G_s(pi(E)) V_0(K cap E) mu(dE): same sweep, weighted by the measurement
// function; equal to Phi_{n-1,0,s}(K).
inline SymmetricTensor inverseCroftonOracle(const ConvexBody& k, int s, const QuadratureSpec& q) {
  const MeasurementFunction g(k.dim(), s);
  return detail::reduceOverDirections(k, s, q, [&](std::size_t i, const Vec& u) {
    const auto basis = complementBasis(u);
    const Real meas = detail::offsetHitMeasure(k, u, basis, q.offsetNodes, i);
    return g(u) * meas;
  });
}

}  // namespace minktens
