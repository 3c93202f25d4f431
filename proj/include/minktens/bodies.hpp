#pragma once

#include "minktens/common.hpp"
#include "minktens/symtensor.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace minktens {

struct Ball {
  Vec center;
  Real radius;
};

// center + rotation * diag(semiAxes) * B^n
struct Ellipsoid {
  Vec center;
  Vec semiAxes;
  Mat rotation;
};

// counterclockwise convex vertex list in R^2
struct Polygon {
  std::vector<Vec> vertices;
};

struct Facet {
  Vec normal;  // outward unit normal
  Real area;
  std::vector<Vec> loop;  // facet vertices
};

struct Polytope3 {
  std::vector<Facet> facets;
};

struct Segment {
  Vec a;
  Vec b;
};

namespace detail {

inline Real cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

inline void validatePolygon(const Polygon& p) {
  if (p.vertices.size() < 3) throw std::invalid_argument("Polygon: need >= 3 vertices");
  Real scale = 0;
  for (const auto& v : p.vertices) scale = std::max(scale, v.template lpNorm<Eigen::Infinity>());
  const std::size_t n = p.vertices.size();
  Real area2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& a = p.vertices[i];
    const Vec& b = p.vertices[(i + 1) % n];
    const Vec& c = p.vertices[(i + 2) % n];
    if (cross2(b - a, c - b) < -1e-12 * std::max<Real>(1, scale * scale))
      throw std::invalid_argument("Polygon: vertices not in counterclockwise convex position");
    area2 += cross2(a, b);
  }
  if (area2 <= 0) throw std::invalid_argument("Polygon: non-positive area (clockwise input?)");
}

inline void validatePolytope3(const Polytope3& p) {
  if (p.facets.size() < 4) throw std::invalid_argument("Polytope3: need >= 4 facets");
  Vec closure = Vec::Zero(3);
  Real totalArea = 0;
  for (const auto& f : p.facets) {
    if (std::abs(f.normal.norm() - 1.0) > 1e-10)
      throw std::invalid_argument("Polytope3: facet normal not unit");
    if (!(f.area > tol::kDegenerateFacet))
      throw std::invalid_argument("Polytope3: degenerate facet area");
    if (f.loop.size() < 3) throw std::invalid_argument("Polytope3: facet loop too short");
    closure += f.area * f.normal;
    totalArea += f.area;
  }
  if (closure.norm() > 1e-10 * totalArea)
    throw std::invalid_argument("Polytope3: facet area-normal closure violated");
}

inline void validateEllipsoid(const Ellipsoid& e) {
  if (e.semiAxes.size() != e.center.size() || e.rotation.rows() != e.center.size() ||
      e.rotation.cols() != e.center.size())
    throw std::invalid_argument("Ellipsoid: inconsistent dimensions");
  for (Eigen::Index i = 0; i < e.semiAxes.size(); ++i)
    if (!(e.semiAxes[i] > 0)) throw std::invalid_argument("Ellipsoid: semi-axes must be positive");
  const Mat err = e.rotation.transpose() * e.rotation - Mat::Identity(e.center.size(), e.center.size());
  if (err.cwiseAbs().maxCoeff() > 1e-10)
    throw std::invalid_argument("Ellipsoid: rotation is not orthogonal");
}

}  // namespace detail

class ConvexBody {
 public:
  using Variant = std::variant<Ball, Ellipsoid, Polygon, Polytope3, Segment>;

  ConvexBody(Ball b) : v_(std::move(b)) {
    if (!(std::get<Ball>(v_).radius > 0)) throw std::invalid_argument("Ball: radius must be positive");
  }
  ConvexBody(Ellipsoid e) : v_(std::move(e)) { detail::validateEllipsoid(std::get<Ellipsoid>(v_)); }
  ConvexBody(Polygon p) : v_(std::move(p)) { detail::validatePolygon(std::get<Polygon>(v_)); }
  ConvexBody(Polytope3 p) : v_(std::move(p)) { detail::validatePolytope3(std::get<Polytope3>(v_)); }
  ConvexBody(Segment s) : v_(std::move(s)) {
    if (std::get<Segment>(v_).a.size() != std::get<Segment>(v_).b.size())
      throw std::invalid_argument("Segment: endpoint dimension mismatch");
  }

  int dim() const {
    return std::visit(
        [](const auto& b) -> int {
          using T = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<T, Ball>) return static_cast<int>(b.center.size());
          if constexpr (std::is_same_v<T, Ellipsoid>) return static_cast<int>(b.center.size());
          if constexpr (std::is_same_v<T, Polygon>) return 2;
          if constexpr (std::is_same_v<T, Polytope3>) return 3;
          if constexpr (std::is_same_v<T, Segment>) return static_cast<int>(b.a.size());
        },
        v_);
  }

  const Variant& data() const { return v_; }

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(v_);
  }
  template <class T>
  const T& get() const {
    return std::get<T>(v_);
  }

 private:
  Variant v_;
};

// ---- directions, lines, flats ----------------------------------------------

inline Vec perp2(const Vec& u) { return makeVec({-u[1], u[0]}); }

// deterministic orthonormal basis of the orthogonal complement of a unit u
inline std::vector<Vec> complementBasis(const Vec& u) {
  const int n = static_cast<int>(u.size());
  if (n == 2) return {perp2(u)};
  // n == 3: seed with the axis least aligned with u
  int k = 0;
  for (int i = 1; i < 3; ++i)
    if (std::abs(u[i]) < std::abs(u[k])) k = i;
  Vec w1 = Vec::Zero(3);
  w1[k] = 1.0;
  w1 -= w1.dot(u) * u;
  w1.normalize();
  Vec w2(3);
  w2[0] = u[1] * w1[2] - u[2] * w1[1];
  w2[1] = u[2] * w1[0] - u[0] * w1[2];
  w2[2] = u[0] * w1[1] - u[1] * w1[0];
  return {w1, w2};
}

// 1-flat: unit direction plus an offset lying in the orthocomplement
struct AffineLine {
  AffineLine(LinearDirection dir, const Vec& anyPoint)
      : direction(std::move(dir)),
        offset(anyPoint - anyPoint.dot(direction.unit()) * direction.unit()) {}

  Vec pointAt(Real t) const { return offset + t * direction.unit(); }

  LinearDirection direction;
  Vec offset;
};

// 2-flat in R^3 containing a fixed vertical axis direction
struct VerticalFlat2 {
  VerticalFlat2(LinearDirection axisIn, LinearDirection secondIn, const Vec& anyPoint)
      : axis(std::move(axisIn)), second(std::move(secondIn)), offset(anyPoint) {
    if (axis.dim() != 3 || second.dim() != 3)
      throw std::invalid_argument("VerticalFlat2: needs dimension 3");
    if (std::abs(axis.unit().dot(second.unit())) > 1e-10)
      throw std::invalid_argument("VerticalFlat2: spanning directions not orthogonal");
    offset -= offset.dot(axis.unit()) * axis.unit();
    offset -= offset.dot(second.unit()) * second.unit();
  }

  Vec pointAt(Real s, Real t) const { return offset + s * axis.unit() + t * second.unit(); }
  // embed an in-plane unit vector (cos b, sin b) in flat coordinates
  Vec embedDirection(Real cosB, Real sinB) const { return cosB * axis.unit() + sinB * second.unit(); }

  LinearDirection axis;    // L0
  LinearDirection second;  // completes the spanning pair
  Vec offset;              // in the orthocomplement of the span
};

// ---- support / width / brightness ------------------------------------------

inline Real support(const ConvexBody& k, const Vec& u) {
  return std::visit(
      [&](const auto& b) -> Real {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return b.center.dot(u) + b.radius;
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          const Vec w = b.semiAxes.cwiseProduct(b.rotation.transpose() * u);
          return b.center.dot(u) + w.norm();
        } else if constexpr (std::is_same_v<T, Polygon>) {
          Real h = -std::numeric_limits<Real>::infinity();
          for (const auto& v : b.vertices) h = std::max(h, v.dot(u));
          return h;
        } else if constexpr (std::is_same_v<T, Polytope3>) {
          Real h = -std::numeric_limits<Real>::infinity();
          for (const auto& f : b.facets)
            for (const auto& v : f.loop) h = std::max(h, v.dot(u));
          return h;
        } else {
          return std::max(b.a.dot(u), b.b.dot(u));
        }
      },
      k.data());
}

inline Real width(const ConvexBody& k, const Vec& u) { return support(k, u) + support(k, -u); }

// V_{n-1}(K | v^perp): the shadow volume orthogonal to the probe direction v
inline Real brightness(const ConvexBody& k, const LinearDirection& v) {
  const Vec& u = v.unit();
  if (k.dim() == 2) {
    return width(k, perp2(u));
  }
  return std::visit(
      [&](const auto& b) -> Real {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return M_PI * b.radius * b.radius;
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          // K = T(B^3) with T = R diag(a): shadow area = kappa_2 |det T| * |T^{-T} v|
          const Real det = b.semiAxes.prod();
          const Vec w = (b.rotation * (b.rotation.transpose() * u).cwiseQuotient(b.semiAxes).eval());
          return M_PI * det * w.norm();
        } else if constexpr (std::is_same_v<T, Polytope3>) {
          Real acc = 0;
          for (const auto& f : b.facets) acc += f.area * std::abs(u.dot(f.normal));
          return 0.5 * acc;
        } else {
          return 0.0;  // segments cast measure-zero shadows in 3D
        }
      },
      k.data());
}

// ---- line intersections ------------------------------------------------------

// parameter interval {t : offset + t u in K}; tangency counts as a hit
inline std::optional<std::pair<Real, Real>> lineChord(const ConvexBody& k, const AffineLine& e) {
  const Vec& u = e.direction.unit();
  const Vec& o = e.offset;
  return std::visit(
      [&](const auto& b) -> std::optional<std::pair<Real, Real>> {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball> || std::is_same_v<T, Ellipsoid>) {
          Vec p, q;
          if constexpr (std::is_same_v<T, Ball>) {
            p = (o - b.center) / b.radius;
            q = u / b.radius;
          } else {
            p = (b.rotation.transpose() * (o - b.center)).cwiseQuotient(b.semiAxes);
            q = (b.rotation.transpose() * u).cwiseQuotient(b.semiAxes);
          }
          const Real a = q.squaredNorm();
          const Real bb = 2.0 * p.dot(q);
          const Real c = p.squaredNorm() - 1.0;
          Real disc = bb * bb - 4.0 * a * c;
          if (disc < -tol::kDiscriminant * std::max<Real>(1.0, bb * bb + std::abs(4.0 * a * c)))
            return std::nullopt;
          disc = std::sqrt(std::max<Real>(disc, 0.0));
          const Real t0 = (-bb - disc) / (2.0 * a);
          const Real t1 = (-bb + disc) / (2.0 * a);
          return std::make_pair(t0, t1);
        } else if constexpr (std::is_same_v<T, Polygon>) {
          Real lo = -std::numeric_limits<Real>::infinity();
          Real hi = std::numeric_limits<Real>::infinity();
          const std::size_t n = b.vertices.size();
          for (std::size_t i = 0; i < n; ++i) {
            const Vec& a0 = b.vertices[i];
            const Vec edge = b.vertices[(i + 1) % n] - a0;
            const Vec nrm = makeVec({edge[1], -edge[0]});  // outward for CCW
            const Real rhs = nrm.dot(a0);
            const Real den = nrm.dot(u);
            const Real num = rhs - nrm.dot(o);
            if (std::abs(den) < 1e-15 * nrm.norm()) {
              if (num < -tol::kPlane * std::max<Real>(1.0, std::abs(rhs))) return std::nullopt;
            } else if (den > 0) {
              hi = std::min(hi, num / den);
            } else {
              lo = std::max(lo, num / den);
            }
            if (lo > hi + tol::kPlane) return std::nullopt;
          }
          if (lo > hi) lo = hi = 0.5 * (lo + hi);
          return std::make_pair(lo, hi);
        } else if constexpr (std::is_same_v<T, Polytope3>) {
          Real lo = -std::numeric_limits<Real>::infinity();
          Real hi = std::numeric_limits<Real>::infinity();
          for (const auto& f : b.facets) {
            const Real rhs = f.normal.dot(f.loop.front());
            const Real den = f.normal.dot(u);
            const Real num = rhs - f.normal.dot(o);
            if (std::abs(den) < 1e-15) {
              if (num < -tol::kPlane * std::max<Real>(1.0, std::abs(rhs))) return std::nullopt;
            } else if (den > 0) {
              hi = std::min(hi, num / den);
            } else {
              lo = std::max(lo, num / den);
            }
            if (lo > hi + tol::kPlane) return std::nullopt;
          }
          if (lo > hi) lo = hi = 0.5 * (lo + hi);
          return std::make_pair(lo, hi);
        } else {
          // segment: 2-D crossing test, degenerate interval at the crossing
          if (b.a.size() != 2) return std::nullopt;
          const Vec d = b.b - b.a;
          const Real den = detail::cross2(u, d);
          if (std::abs(den) < 1e-15) return std::nullopt;
          const Vec w = b.a - o;
          const Real s = detail::cross2(u, w) / den;  // along the segment
          if (s < -tol::kPlane || s > 1 + tol::kPlane) return std::nullopt;
          const Real t = detail::cross2(d, o - b.a) / detail::cross2(d, u);
          return std::make_pair(t, t);
        }
      },
      k.data());
}

// V_0(K cap E): 1 when the line meets K
inline int lineHits(const ConvexBody& k, const AffineLine& e) { return lineChord(k, e) ? 1 : 0; }

// ---- flat sections -----------------------------------------------------------

namespace detail {

// Sutherland-Hodgman clip of a convex CCW polygon by {x : <nrm,x> <= rhs}
inline std::vector<Vec> clipByHalfPlane(const std::vector<Vec>& poly, const Vec& nrm, Real rhs) {
  std::vector<Vec> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& a = poly[i];
    const Vec& b = poly[(i + 1) % n];
    const Real fa = nrm.dot(a) - rhs;
    const Real fb = nrm.dot(b) - rhs;
    if (fa <= 0) out.push_back(a);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) {
      const Real t = fa / (fa - fb);
      out.push_back((a + t * (b - a)).eval());
    }
  }
  return out;
}

inline std::optional<ConvexBody> polygonFromLoopIfProper(std::vector<Vec> loop) {
  // drop near-duplicate vertices, then require a genuinely 2-dimensional hull
  std::vector<Vec> clean;
  for (const auto& v : loop) {
    if (clean.empty() || (v - clean.back()).norm() > 1e-10) clean.push_back(v);
  }
  while (clean.size() > 1 && (clean.front() - clean.back()).norm() <= 1e-10) clean.pop_back();
  if (clean.size() < 3) return std::nullopt;
  Real area2 = 0;
  for (std::size_t i = 0; i < clean.size(); ++i)
    area2 += cross2(clean[i], clean[(i + 1) % clean.size()]);
  if (area2 <= 1e-14) return std::nullopt;
  return ConvexBody(Polygon{std::move(clean)});
}

}  // namespace detail

// Planar section of a 3-D body with a vertical 2-flat, expressed in the
// flat's orthonormal coordinates. Misses yield an empty result.
inline std::optional<ConvexBody> flatSection(const ConvexBody& k, const VerticalFlat2& h) {
  if (k.dim() != 3) throw std::invalid_argument("flatSection: body must be 3-dimensional");
  const Vec& a = h.axis.unit();
  const Vec& b = h.second.unit();
  return std::visit(
      [&](const auto& body) -> std::optional<ConvexBody> {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Ball>) {
          const Vec d = body.center - h.offset;
          const Vec inPlane = makeVec({d.dot(a), d.dot(b)});
          const Real off2 = d.squaredNorm() - inPlane.squaredNorm();
          const Real r2 = body.radius * body.radius - off2;
          if (r2 <= tol::kDiscriminant) return std::nullopt;
          return ConvexBody(Ball{inPlane, std::sqrt(r2)});
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          // restrict (x-c)^T A (x-c) <= 1 to x = offset + U s
          Mat A = Mat::Zero(3, 3);
          for (int i = 0; i < 3; ++i) {
            const Vec col = body.rotation.col(i) / body.semiAxes[i];
            A += col * col.transpose();
          }
          Eigen::Matrix<Real, 3, 2> U;
          U.col(0) = a;
          U.col(1) = b;
          const Vec d = h.offset - body.center;
          const Eigen::Matrix2d M = U.transpose() * A * U;
          const Eigen::Vector2d g = U.transpose() * (A * d);
          const Real c0 = d.dot(A * d) - 1.0;
          const Eigen::Vector2d sc = -M.ldlt().solve(g);
          const Real rho = -(c0 + g.dot(sc));
          if (rho <= tol::kDiscriminant) return std::nullopt;
          Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(M);
          Vec axes = makeVec({std::sqrt(rho / es.eigenvalues()[0]), std::sqrt(rho / es.eigenvalues()[1])});
          Mat rot(2, 2);
          rot = es.eigenvectors();
          if (rot.determinant() < 0) rot.col(1) = -rot.col(1).eval();
          return ConvexBody(Ellipsoid{makeVec({sc[0], sc[1]}), axes, rot});
        } else if constexpr (std::is_same_v<T, Polytope3>) {
          // clip a generous box in flat coordinates by the facet half-spaces
          Real reach = 1.0;
          for (const auto& f : body.facets)
            for (const auto& v : f.loop) reach = std::max(reach, (v - h.offset).norm());
          reach *= 4.0;
          std::vector<Vec> poly = {makeVec({-reach, -reach}), makeVec({reach, -reach}),
                                   makeVec({reach, reach}), makeVec({-reach, reach})};
          for (const auto& f : body.facets) {
            const Real rhs = f.normal.dot(f.loop.front()) - f.normal.dot(h.offset);
            const Vec nrm2 = makeVec({f.normal.dot(a), f.normal.dot(b)});
            if (nrm2.norm() < 1e-14) {
              if (rhs < -tol::kPlane) return std::nullopt;  // flat entirely outside this half-space
              continue;
            }
            poly = detail::clipByHalfPlane(poly, nrm2, rhs);
            if (poly.empty()) return std::nullopt;
          }
          return detail::polygonFromLoopIfProper(std::move(poly));
        } else {
          return std::nullopt;  // segments and 2-D bodies have no proper planar section
        }
      },
      k.data());
}

// ---- area measure atoms -------------------------------------------------------

// Atomic decomposition of the top-order area measure of a polytope:
// one (outward unit normal, boundary measure) pair per facet/edge.
inline std::vector<std::pair<Vec, Real>> areaMeasureAtoms(const ConvexBody& k) {
  std::vector<std::pair<Vec, Real>> atoms;
  if (k.is<Polygon>()) {
    const auto& p = k.get<Polygon>();
    const std::size_t n = p.vertices.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec e = p.vertices[(i + 1) % n] - p.vertices[i];
      const Real len = e.norm();
      if (len < tol::kDegenerateFacet) throw std::invalid_argument("areaMeasureAtoms: degenerate edge");
      atoms.emplace_back(makeVec({e[1] / len, -e[0] / len}), len);
    }
    return atoms;
  }
  if (k.is<Polytope3>()) {
    for (const auto& f : k.get<Polytope3>().facets) atoms.emplace_back(f.normal, f.area);
    return atoms;
  }
  throw std::invalid_argument("areaMeasureAtoms: body is not a polytope");
}

// ---- inradius / circumradius ----------------------------------------------------

namespace detail {

inline std::vector<Vec> directionGrid(int n, int count) {
  std::vector<Vec> dirs;
  dirs.reserve(static_cast<std::size_t>(count));
  if (n == 2) {
    for (int i = 0; i < count; ++i) {
      const Real phi = i * 2.0 * M_PI / count;  // includes the axis directions
      dirs.push_back(makeVec({std::cos(phi), std::sin(phi)}));
    }
  } else {
    // Fibonacci sphere
    const Real ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const Real z = 1.0 - 2.0 * (i + 0.5) / count;
      const Real r = std::sqrt(std::max<Real>(0.0, 1.0 - z * z));
      dirs.push_back(makeVec({r * std::cos(ga * i), r * std::sin(ga * i), z}));
    }
  }
  return dirs;
}

inline std::vector<Vec> vertexList(const ConvexBody& k) {
  std::vector<Vec> vs;
  if (k.is<Polygon>()) {
    vs = k.get<Polygon>().vertices;
  } else if (k.is<Polytope3>()) {
    for (const auto& f : k.get<Polytope3>().facets)
      for (const auto& v : f.loop) vs.push_back(v);
  }
  return vs;
}

}  // namespace detail

// Exact for balls and ellipsoids. Polytopes use the vertex centroid as the
// candidate center with a 4096-direction support grid for the inradius; this
// is an approximation, adequate for the eccentricity checks it feeds.
inline std::pair<Real, Real> inradiusCircumradius(const ConvexBody& k) {
  if (k.is<Ball>()) {
    const Real r = k.get<Ball>().radius;
    return {r, r};
  }
  if (k.is<Ellipsoid>()) {
    const Vec& a = k.get<Ellipsoid>().semiAxes;
    return {a.minCoeff(), a.maxCoeff()};
  }
  if (k.is<Segment>()) throw std::invalid_argument("inradiusCircumradius: body is lower-dimensional");
  const std::vector<Vec> vs = detail::vertexList(k);
  Vec c = Vec::Zero(k.dim());
  for (const auto& v : vs) c += v;
  c /= static_cast<Real>(vs.size());
  Real rIn = std::numeric_limits<Real>::infinity();
  for (const auto& u : detail::directionGrid(k.dim(), 4096))
    rIn = std::min(rIn, support(k, u) - c.dot(u));
  Real rOut = 0;
  for (const auto& v : vs) rOut = std::max(rOut, (v - c).norm());
  return {rIn, rOut};
}

// ---- constructors / transforms ---------------------------------------------------

inline ConvexBody makeBox3(const Vec& lo, const Vec& hi) {
  for (int i = 0; i < 3; ++i)
    if (!(hi[i] > lo[i])) throw std::invalid_argument("makeBox3: hi must exceed lo");
  auto v = [&](int m) {
    return makeVec({(m & 1) ? hi[0] : lo[0], (m & 2) ? hi[1] : lo[1], (m & 4) ? hi[2] : lo[2]});
  };
  const Vec ext = hi - lo;
  Polytope3 p;
  auto facet = [&](Vec n, Real area, std::vector<int> loop) {
    Facet f;
    f.normal = std::move(n);
    f.area = area;
    for (int m : loop) f.loop.push_back(v(m));
    p.facets.push_back(std::move(f));
  };
  facet(makeVec({-1, 0, 0}), ext[1] * ext[2], {0, 4, 6, 2});
  facet(makeVec({1, 0, 0}), ext[1] * ext[2], {1, 3, 7, 5});
  facet(makeVec({0, -1, 0}), ext[0] * ext[2], {0, 1, 5, 4});
  facet(makeVec({0, 1, 0}), ext[0] * ext[2], {2, 6, 7, 3});
  facet(makeVec({0, 0, -1}), ext[0] * ext[1], {0, 2, 3, 1});
  facet(makeVec({0, 0, 1}), ext[0] * ext[1], {4, 5, 7, 6});
  return ConvexBody(std::move(p));
}

inline ConvexBody translated(const ConvexBody& k, const Vec& t) {
  return std::visit(
      [&](const auto& b) -> ConvexBody {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) return ConvexBody(Ball{(b.center + t).eval(), b.radius});
        else if constexpr (std::is_same_v<T, Ellipsoid>)
          return ConvexBody(Ellipsoid{(b.center + t).eval(), b.semiAxes, b.rotation});
        else if constexpr (std::is_same_v<T, Polygon>) {
          Polygon p = b;
          for (auto& v : p.vertices) v += t;
          return ConvexBody(std::move(p));
        } else if constexpr (std::is_same_v<T, Polytope3>) {
          Polytope3 p = b;
          for (auto& f : p.facets)
            for (auto& v : f.loop) v += t;
          return ConvexBody(std::move(p));
        } else {
          return ConvexBody(Segment{(b.a + t).eval(), (b.b + t).eval()});
        }
      },
      k.data());
}

inline ConvexBody scaled(const ConvexBody& k, Real lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("scaled: lambda must be positive");
  return std::visit(
      [&](const auto& b) -> ConvexBody {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>)
          return ConvexBody(Ball{(lambda * b.center).eval(), lambda * b.radius});
        else if constexpr (std::is_same_v<T, Ellipsoid>)
          return ConvexBody(Ellipsoid{(lambda * b.center).eval(), (lambda * b.semiAxes).eval(), b.rotation});
        else if constexpr (std::is_same_v<T, Polygon>) {
          Polygon p = b;
          for (auto& v : p.vertices) v *= lambda;
          return ConvexBody(std::move(p));
        } else if constexpr (std::is_same_v<T, Polytope3>) {
          Polytope3 p = b;
          for (auto& f : p.facets) {
            f.area *= lambda * lambda;
            for (auto& v : f.loop) v *= lambda;
          }
          return ConvexBody(std::move(p));
        } else {
          return ConvexBody(Segment{(lambda * b.a).eval(), (lambda * b.b).eval()});
        }
      },
      k.data());
}

inline ConvexBody rotatedBody(const ConvexBody& k, const Mat& rho) {
  return std::visit(
      [&](const auto& b) -> ConvexBody {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>)
          return ConvexBody(Ball{(rho * b.center).eval(), b.radius});
        else if constexpr (std::is_same_v<T, Ellipsoid>)
          return ConvexBody(Ellipsoid{(rho * b.center).eval(), b.semiAxes, (rho * b.rotation).eval()});
        else if constexpr (std::is_same_v<T, Polygon>) {
          Polygon p = b;
          for (auto& v : p.vertices) v = rho * v;
          return ConvexBody(std::move(p));
        } else if constexpr (std::is_same_v<T, Polytope3>) {
          Polytope3 p = b;
          for (auto& f : p.facets) {
            f.normal = rho * f.normal;
            for (auto& v : f.loop) v = rho * v;
          }
          return ConvexBody(std::move(p));
        } else {
          return ConvexBody(Segment{(rho * b.a).eval(), (rho * b.b).eval()});
        }
      },
      k.data());
}

inline Mat rotation2(Real angle) {
  Mat r(2, 2);
  r << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return r;
}

inline Mat rotationAboutAxis3(int axis, Real angle) {
  if (axis < 0 || axis > 2) throw std::invalid_argument("rotationAboutAxis3: axis in {0,1,2}");
  Mat r = Mat::Identity(3, 3);
  const int i = (axis + 1) % 3;
  const int j = (axis + 2) % 3;
  r(i, i) = std::cos(angle);
  r(j, j) = std::cos(angle);
  r(i, j) = -std::sin(angle);
  r(j, i) = std::sin(angle);
  return r;
}

// ---- shadows (projections onto a plane, n = 3) -----------------------------------

namespace detail {

inline std::vector<Vec> convexHull2(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
              return (a - b).norm() < 1e-13;
            }), pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vec> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace detail

// Orthogonal projection of a 3-D body onto span(w1, w2), in (w1, w2) coordinates.
inline ConvexBody shadowBody(const ConvexBody& k, const Vec& w1, const Vec& w2) {
  if (k.dim() != 3) throw std::invalid_argument("shadowBody: body must be 3-dimensional");
  auto proj = [&](const Vec& x) { return makeVec({x.dot(w1), x.dot(w2)}); };
  return std::visit(
      [&](const auto& b) -> ConvexBody {
        using T = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return ConvexBody(Ball{proj(b.center), b.radius});
        } else if constexpr (std::is_same_v<T, Ellipsoid>) {
          // support of the shadow is sqrt(v^T M' v) with M' the restriction of R D^2 R^T
          Mat M = Mat::Zero(3, 3);
          for (int i = 0; i < 3; ++i) {
            const Vec col = b.rotation.col(i) * b.semiAxes[i];
            M += col * col.transpose();
          }
          Eigen::Matrix2d Mp;
          Mp << w1.dot(M * w1), w1.dot(M * w2), w2.dot(M * w1), w2.dot(M * w2);
          Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Mp);
          Mat rot(2, 2);
          rot = es.eigenvectors();
          if (rot.determinant() < 0) rot.col(1) = -rot.col(1).eval();
          return ConvexBody(Ellipsoid{proj(b.center),
                                      makeVec({std::sqrt(es.eigenvalues()[0]), std::sqrt(es.eigenvalues()[1])}),
                                      rot});
        } else if constexpr (std::is_same_v<T, Polytope3>) {
          std::vector<Vec> pts;
          for (const auto& f : b.facets)
            for (const auto& v : f.loop) pts.push_back(proj(v));
          auto hull = detail::convexHull2(std::move(pts));
          if (hull.size() < 3) throw std::invalid_argument("shadowBody: degenerate shadow");
          return ConvexBody(Polygon{std::move(hull)});
        } else if constexpr (std::is_same_v<T, Segment>) {
          return ConvexBody(Segment{proj(b.a), proj(b.b)});
        } else {
          throw std::invalid_argument("shadowBody: unsupported body");
        }
      },
      k.data());
}

}  // namespace minktens
