#pragma once

#include "minktens/common.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace minktens {

struct QuadratureSpec {
  int directionNodes = 2048;  // circle angles (n=2); theta nodes (n=3, phi uses 2x)
  int offsetNodes = 512;      // per orthocomplement axis
  enum class Method { MidpointGrid, BoundaryParametrization } method = Method::MidpointGrid;

  QuadratureSpec() = default;
  QuadratureSpec(int dirNodes, int offNodes, Method m = Method::MidpointGrid)
      : directionNodes(dirNodes), offsetNodes(offNodes), method(m) {
    if (directionNodes < 16 || offsetNodes < 16)
      throw std::invalid_argument("QuadratureSpec: node counts must be >= 16");
  }
};

namespace quad {

// Gauss-Legendre on [a, b]
template <class F>
Real gauss(F&& f, Real a, Real b) {
  return boost::math::quadrature::gauss<Real, 40>::integrate(f, a, b);
}

// Integral over [0, 2pi] of a piecewise-smooth integrand, split at the given
// break angles (taken modulo 2pi) so each Gauss panel sees an analytic piece.
template <class F>
Real periodicPiecewise(F&& f, std::vector<Real> breaks) {
  const Real twoPi = 2.0 * M_PI;
  for (auto& b : breaks) {
    b = std::fmod(b, twoPi);
    if (b < 0) b += twoPi;
  }
  breaks.push_back(0.0);
  breaks.push_back(twoPi);
  std::sort(breaks.begin(), breaks.end());
  Real total = 0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const Real a = breaks[i];
    const Real b = breaks[i + 1];
    if (b - a < 1e-14) continue;
    total += gauss(f, a, b);
  }
  return total;
}

// midpoint nodes of [a, b]
inline std::vector<Real> midpoints(Real a, Real b, int n) {
  std::vector<Real> xs(static_cast<std::size_t>(n));
  const Real h = (b - a) / n;
  for (int i = 0; i < n; ++i) xs[static_cast<std::size_t>(i)] = a + (i + 0.5) * h;
  return xs;
}

}  // namespace quad

}  // namespace minktens
