#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace minktens {

using Real = double;

// All geometry lives in R^2 or R^3; dynamic size with inline storage keeps
// the hot Monte-Carlo loops free of heap traffic.
template <class Scalar>
using VecT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;
template <class Scalar>
using MatT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;

using Vec = VecT<Real>;
using Mat = MatT<Real>;

inline Vec makeVec(std::initializer_list<Real> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (Real x : xs) v[i++] = x;
  return v;
}

// Centralized geometric tolerances.
namespace tol {
constexpr Real kUnit = 1e-12;          // unit-vector / orthogonality checks
constexpr Real kPlane = 1e-12;         // point-on-plane, half-space feasibility
constexpr Real kDiscriminant = 1e-14;  // quadric tangency counts as a hit
constexpr Real kPosdefEig = 1e-10;     // smallest eigenvalue threshold
constexpr Real kDegenerateFacet = 1e-14;
}  // namespace tol

inline constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace minktens
