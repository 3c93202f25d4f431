#pragma once

#include "minktens/common.hpp"

#include <cmath>
#include <cstdint>
#include <random>

namespace minktens {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace detail

// Seeded substream generator: (seed, stream) identifies the draw sequence,
// independent of thread assignment. Conversions are hand-rolled so output is
// identical across standard libraries.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : eng_(detail::splitmix64(seed ^ detail::splitmix64(stream * 0x9e3779b97f4a7c15ULL + 1))) {}

  std::uint64_t nextU64() { return eng_(); }

  // in [0,1)
  Real uniform01() { return static_cast<Real>(eng_() >> 11) * 0x1.0p-53; }

  Real uniform(Real a, Real b) { return a + (b - a) * uniform01(); }

  Real normal() {
    if (haveSpare_) {
      haveSpare_ = false;
      return spare_;
    }
    Real u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform01();
    const Real u2 = uniform01();
    const Real r = std::sqrt(-2.0 * std::log(u1));
    const Real a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    haveSpare_ = true;
    return r * std::cos(a);
  }

  // Exact Poisson sampling; large means are split into blocks so the Knuth
  // product never underflows.
  long poisson(Real mean) {
    long total = 0;
    while (mean > 30.0) {
      total += poissonKnuth(30.0);
      mean -= 30.0;
    }
    return total + poissonKnuth(mean);
  }

  Vec gaussianVec(int n) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

 private:
  long poissonKnuth(Real mean) {
    if (mean <= 0.0) return 0;
    const Real limit = std::exp(-mean);
    long k = 0;
    Real p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

  std::mt19937_64 eng_;
  Real spare_ = 0.0;
  bool haveSpare_ = false;
};

}  // namespace minktens
