#pragma once

#include "minktens/common.hpp"
#include "minktens/parallel.hpp"
#include "minktens/rng.hpp"
#include "minktens/symtensor.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

namespace minktens {

struct McSummary {
  std::size_t replications = 0;
  Eigen::VectorXd mean;      // per component
  Eigen::VectorXd variance;  // unbiased sample variance
  Eigen::VectorXd cv;        // sd / |mean|, NaN where the mean vanishes
  Eigen::VectorXd seMean;    // sd / sqrt(reps)
  Real posdefFraction = std::numeric_limits<Real>::quiet_NaN();  // rank-2 runs only

  Real sd(std::size_t i) const { return std::sqrt(variance[static_cast<Eigen::Index>(i)]); }
};

namespace detail {

// Welford accumulator per component; exact zero spread stays exactly zero.
struct WelfordBlock {
  std::size_t n = 0;
  Eigen::VectorXd mean;
  Eigen::VectorXd m2;
  std::size_t posdefCount = 0;

  void init(Eigen::Index comps) {
    mean = Eigen::VectorXd::Zero(comps);
    m2 = Eigen::VectorXd::Zero(comps);
  }
  void add(const Eigen::VectorXd& x, bool posdef) {
    ++n;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const Real d = x[i] - mean[i];
      mean[i] += d / static_cast<Real>(n);
      m2[i] += d * (x[i] - mean[i]);
    }
    if (posdef) ++posdefCount;
  }
  void merge(const WelfordBlock& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const Real na = static_cast<Real>(n), nb = static_cast<Real>(o.n);
    for (Eigen::Index i = 0; i < mean.size(); ++i) {
      const Real d = o.mean[i] - mean[i];
      m2[i] += o.m2[i] + d * d * na * nb / (na + nb);
      mean[i] += d * nb / (na + nb);
    }
    n += o.n;
    posdefCount += o.posdefCount;
  }
};

inline McSummary summarize(const WelfordBlock& w, bool hasPosdef) {
  McSummary s;
  s.replications = w.n;
  s.mean = w.mean;
  const Eigen::Index c = w.mean.size();
  s.variance.resize(c);
  s.cv.resize(c);
  s.seMean.resize(c);
  for (Eigen::Index i = 0; i < c; ++i) {
    s.variance[i] = w.n > 1 ? w.m2[i] / static_cast<Real>(w.n - 1) : 0.0;
    const Real sd = std::sqrt(s.variance[i]);
    s.seMean[i] = w.n > 0 ? sd / std::sqrt(static_cast<Real>(w.n)) : 0.0;
    s.cv[i] = w.mean[i] != 0.0 ? sd / std::abs(w.mean[i]) : std::numeric_limits<Real>::quiet_NaN();
  }
  if (hasPosdef) s.posdefFraction = static_cast<Real>(w.posdefCount) / static_cast<Real>(w.n);
  return s;
}

}  // namespace detail

// Runs `draw(rng)` for replications 0..reps-1. Replication r always uses the
// substream (seed, r) and chunk results merge in index order, so the summary
// is identical for any worker count.
template <class Draw>
McSummary mcRunVector(Draw&& draw, Eigen::Index comps, std::size_t reps, std::uint64_t seed,
                      int threads = 0, bool trackPosdefRank2 = false, int posdefDim = 0) {
  if (reps < 2) throw std::invalid_argument("mcRunVector: need at least 2 replications");
  const std::size_t chunkSize = 4096;
  std::vector<detail::WelfordBlock> blocks(chunkCount(reps, chunkSize));
  parallelChunks(reps, chunkSize, threads, [&](std::size_t c, std::size_t b, std::size_t e) {
    detail::WelfordBlock w;
    w.init(comps);
    for (std::size_t r = b; r < e; ++r) {
      RngStream rng(seed, r);
      bool posdef = false;
      const Eigen::VectorXd x = draw(rng, posdef);
      w.add(x, posdef);
    }
    blocks[c] = std::move(w);
  });
  detail::WelfordBlock total;
  total.init(comps);
  for (const auto& b : blocks) total.merge(b);
  (void)posdefDim;
  return detail::summarize(total, trackPosdefRank2);
}

// Monte-Carlo summary for a tensor-valued estimator; rank-2 estimates also
// track the fraction of positive definite draws.
template <class Draw>
McSummary mcRunTensor(Draw&& draw, int dim, int rank, std::size_t reps, std::uint64_t seed,
                      int threads = 0) {
  const SymmetricTensor probe(dim, rank);
  const Eigen::Index comps = static_cast<Eigen::Index>(probe.size());
  const bool wantPosdef = rank == 2;
  return mcRunVector(
      [&](RngStream& rng, bool& posdef) {
        const SymmetricTensor t = draw(rng);
        if (wantPosdef) posdef = isPositiveDefinite(t);
        Eigen::VectorXd x(comps);
        for (Eigen::Index i = 0; i < comps; ++i) x[i] = t[static_cast<std::size_t>(i)];
        return x;
      },
      comps, reps, seed, threads, wantPosdef);
}

template <class Draw>
McSummary mcRunScalar(Draw&& draw, std::size_t reps, std::uint64_t seed, int threads = 0) {
  return mcRunVector(
      [&](RngStream& rng, bool&) {
        Eigen::VectorXd x(1);
        x[0] = draw(rng);
        return x;
      },
      1, reps, seed, threads, false);
}

// Per-replication scalar draws in replication order (for bootstrap work).
template <class Draw>
std::vector<Real> mcSamplesScalar(Draw&& draw, std::size_t reps, std::uint64_t seed,
                                  int threads = 0) {
  std::vector<Real> out(reps);
  parallelChunks(reps, 4096, threads, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t r = b; r < e; ++r) {
      RngStream rng(seed, r);
      out[r] = draw(rng);
    }
  });
  return out;
}

// Percentile bootstrap confidence interval for the variance of a sample.
inline std::pair<Real, Real> bootstrapVarianceCI(const std::vector<Real>& xs, Real level,
                                                 std::uint64_t seed, int resamples = 400) {
  const std::size_t n = xs.size();
  std::vector<Real> vars(static_cast<std::size_t>(resamples));
  parallelChunks(static_cast<std::size_t>(resamples), 8, 0, [&](std::size_t, std::size_t b, std::size_t e) {
    for (std::size_t r = b; r < e; ++r) {
      RngStream rng(seed ^ 0xb00757a9ULL, r);
      Real mean = 0, m2 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const Real x = xs[static_cast<std::size_t>(rng.nextU64() % n)];
        const Real d = x - mean;
        mean += d / static_cast<Real>(i + 1);
        m2 += d * (x - mean);
      }
      vars[r] = m2 / static_cast<Real>(n - 1);
    }
  });
  std::sort(vars.begin(), vars.end());
  const Real alpha = (1.0 - level) / 2.0;
  const auto pick = [&](Real p) {
    const long i = std::lround(p * (resamples - 1));
    return vars[static_cast<std::size_t>(std::clamp<long>(i, 0, resamples - 1))];
  };
  return {pick(alpha), pick(1.0 - alpha)};
}

}  // namespace minktens
