#pragma once

#include "minktens/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace minktens {

using MultiIndex = std::vector<int>;  // sorted ascending, entries in [0, dim)

namespace detail {

inline long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline void enumerateSortedIndices(int dim, int rank, std::vector<MultiIndex>& out) {
  out.clear();
  MultiIndex cur(static_cast<std::size_t>(rank), 0);
  if (rank == 0) {
    out.push_back(cur);
    return;
  }
  for (;;) {
    out.push_back(cur);
    int p = rank - 1;
    while (p >= 0 && cur[static_cast<std::size_t>(p)] == dim - 1) --p;
    if (p < 0) break;
    const int v = ++cur[static_cast<std::size_t>(p)];
    for (int q = p + 1; q < rank; ++q) cur[static_cast<std::size_t>(q)] = v;
  }
}

}  // namespace detail

// Dense symmetric tensor of rank p over R^n. The stored coefficient for a
// sorted multi-index (i1 <= ... <= ip) is the evaluation on the basis vectors
// (e_{i1}, ..., e_{ip}); symmetry makes the argument order irrelevant.
template <class Scalar = Real>
class SymmetricTensorT {
 public:
  SymmetricTensorT() = default;

  SymmetricTensorT(int dim, int rank) : dim_(dim), rank_(rank) {
    if (dim < 1 || rank < 0) throw std::invalid_argument("SymmetricTensor: bad dim/rank");
    detail::enumerateSortedIndices(dim, rank, indices_);
    coeffs_.assign(indices_.size(), Scalar(0));
  }

  static SymmetricTensorT scalarTensor(int dim, Scalar value) {
    SymmetricTensorT t(dim, 0);
    t.coeffs_[0] = value;
    return t;
  }

  int dim() const { return dim_; }
  int rank() const { return rank_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<MultiIndex>& multiIndices() const { return indices_; }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }

  Scalar& operator[](std::size_t flat) { return coeffs_[flat]; }
  const Scalar& operator[](std::size_t flat) const { return coeffs_[flat]; }

  std::size_t flatIndex(MultiIndex idx) const {
    std::sort(idx.begin(), idx.end());
    const auto it = std::lower_bound(indices_.begin(), indices_.end(), idx);
    if (it == indices_.end() || *it != idx)
      throw std::out_of_range("SymmetricTensor: multi-index out of range");
    return static_cast<std::size_t>(it - indices_.begin());
  }

  Scalar coeff(const MultiIndex& idx) const { return coeffs_[flatIndex(idx)]; }
  Scalar& coeffRef(const MultiIndex& idx) { return coeffs_[flatIndex(idx)]; }
  Scalar coeff(std::initializer_list<int> idx) const { return coeff(MultiIndex(idx)); }
  Scalar& coeffRef(std::initializer_list<int> idx) { return coeffRef(MultiIndex(idx)); }

  // Full multilinear expansion over all n^p basis tuples.
  Scalar evaluate(const std::vector<VecT<Scalar>>& args) const {
    if (static_cast<int>(args.size()) != rank_)
      throw std::invalid_argument("SymmetricTensor::evaluate: argument count != rank");
    for (const auto& a : args)
      if (a.size() != dim_) throw std::invalid_argument("SymmetricTensor::evaluate: bad dim");
    if (rank_ == 0) return coeffs_[0];
    MultiIndex tuple(static_cast<std::size_t>(rank_), 0);
    MultiIndex sorted(static_cast<std::size_t>(rank_), 0);
    Scalar total(0);
    for (;;) {
      Scalar prod(1);
      for (int k = 0; k < rank_; ++k) prod *= args[static_cast<std::size_t>(k)][tuple[static_cast<std::size_t>(k)]];
      sorted = tuple;
      std::sort(sorted.begin(), sorted.end());
      total += prod * coeffs_[flatIndexSorted(sorted)];
      int p = rank_ - 1;
      while (p >= 0 && tuple[static_cast<std::size_t>(p)] == dim_ - 1) {
        tuple[static_cast<std::size_t>(p)] = 0;
        --p;
      }
      if (p < 0) break;
      ++tuple[static_cast<std::size_t>(p)];
    }
    return total;
  }

  SymmetricTensorT& operator+=(const SymmetricTensorT& o) {
    requireSameShape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  SymmetricTensorT& operator-=(const SymmetricTensorT& o) {
    requireSameShape(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  SymmetricTensorT& operator*=(Scalar a) {
    for (auto& c : coeffs_) c *= a;
    return *this;
  }

  friend SymmetricTensorT operator+(SymmetricTensorT a, const SymmetricTensorT& b) { return a += b; }
  friend SymmetricTensorT operator-(SymmetricTensorT a, const SymmetricTensorT& b) { return a -= b; }
  friend SymmetricTensorT operator*(SymmetricTensorT a, Scalar s) { return a *= s; }
  friend SymmetricTensorT operator*(Scalar s, SymmetricTensorT a) { return a *= s; }

 private:
  std::size_t flatIndexSorted(const MultiIndex& idx) const {
    const auto it = std::lower_bound(indices_.begin(), indices_.end(), idx);
    return static_cast<std::size_t>(it - indices_.begin());
  }

  void requireSameShape(const SymmetricTensorT& o) const {
    if (dim_ != o.dim_ || rank_ != o.rank_)
      throw std::invalid_argument("SymmetricTensor: shape mismatch");
  }

  int dim_ = 0;
  int rank_ = 0;
  std::vector<MultiIndex> indices_;
  std::vector<Scalar> coeffs_;
};

using SymmetricTensor = SymmetricTensorT<Real>;

// A 1-subspace of R^n, represented by a unit vector with the sign fixed so
// that the first nonzero coordinate is positive (u and -u span the same line).
class LinearDirection {
 public:
  explicit LinearDirection(Vec v) {
    const Real norm = v.norm();
    if (!(norm > 0) || !std::isfinite(norm))
      throw std::invalid_argument("LinearDirection: zero or non-finite vector");
    v /= norm;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (v[i] != Real(0)) {
        if (v[i] < Real(0)) v = -v;
        break;
      }
    }
    u_ = std::move(v);
  }

  static LinearDirection fromAngle(Real phi) {
    return LinearDirection(makeVec({std::cos(phi), std::sin(phi)}));
  }

  int dim() const { return static_cast<int>(u_.size()); }
  const Vec& unit() const { return u_; }

  bool operator==(const LinearDirection& o) const { return u_ == o.u_; }

 private:
  Vec u_;
};

// ---- free functions --------------------------------------------------------

template <class Scalar>
SymmetricTensorT<Scalar> symProduct(const SymmetricTensorT<Scalar>& aIn,
                                    const SymmetricTensorT<Scalar>& bIn) {
  if (aIn.dim() != bIn.dim()) throw std::invalid_argument("symProduct: dimension mismatch");
  // canonical factor order makes the accumulation, and hence the rounding,
  // independent of which operand came first
  const bool swap = aIn.rank() > bIn.rank() ||
                    (aIn.rank() == bIn.rank() &&
                     std::lexicographical_compare(bIn.coefficients().begin(), bIn.coefficients().end(),
                                                  aIn.coefficients().begin(), aIn.coefficients().end()));
  const SymmetricTensorT<Scalar>& a = swap ? bIn : aIn;
  const SymmetricTensorT<Scalar>& b = swap ? aIn : bIn;
  const int p1 = a.rank();
  const int p = a.rank() + b.rank();
  SymmetricTensorT<Scalar> out(a.dim(), p);
  if (p == 0) {
    out[0] = a[0] * b[0];
    return out;
  }
  const Scalar invCount = Scalar(1) / Scalar(detail::binomial(p, p1));
  // positions selected for factor a; index subsequences of a sorted index stay sorted
  std::vector<int> sel(static_cast<std::size_t>(p1));
  MultiIndex ia(static_cast<std::size_t>(p1)), ib(static_cast<std::size_t>(p - p1));
  const auto& outIdx = out.multiIndices();
  for (std::size_t f = 0; f < out.size(); ++f) {
    const MultiIndex& I = outIdx[f];
    Scalar sum(0);
    std::iota(sel.begin(), sel.end(), 0);
    for (;;) {
      std::size_t na = 0, nb = 0, s = 0;
      for (int pos = 0; pos < p; ++pos) {
        if (s < sel.size() && sel[s] == pos) {
          ia[na++] = I[static_cast<std::size_t>(pos)];
          ++s;
        } else {
          ib[nb++] = I[static_cast<std::size_t>(pos)];
        }
      }
      sum += (p1 == 0 ? a[0] : a.coeff(ia)) * (p - p1 == 0 ? b[0] : b.coeff(ib));
      // next combination of {0..p-1} choose p1
      int k = p1 - 1;
      while (k >= 0 && sel[static_cast<std::size_t>(k)] == p - p1 + k) --k;
      if (k < 0) break;
      int v = ++sel[static_cast<std::size_t>(k)];
      for (int q = k + 1; q < p1; ++q) sel[static_cast<std::size_t>(q)] = ++v;
    }
    out[f] = sum * invCount;
  }
  return out;
}

template <class Scalar>
SymmetricTensorT<Scalar> tensorPower(const SymmetricTensorT<Scalar>& t, int k) {
  if (k < 0) throw std::invalid_argument("tensorPower: negative exponent");
  SymmetricTensorT<Scalar> out = SymmetricTensorT<Scalar>::scalarTensor(t.dim(), Scalar(1));
  for (int i = 0; i < k; ++i) out = symProduct(out, t);
  return out;
}

// x^s for a vector x: the s-fold product of a rank-1 tensor is already
// symmetric, so the coefficient on (i1..is) is just the plain product.
template <class Scalar>
SymmetricTensorT<Scalar> vectorPower(const VecT<Scalar>& x, int s) {
  SymmetricTensorT<Scalar> out(static_cast<int>(x.size()), s);
  const auto& idx = out.multiIndices();
  for (std::size_t f = 0; f < out.size(); ++f) {
    Scalar prod(1);
    for (int i : idx[f]) prod *= x[i];
    out[f] = prod;
  }
  return out;
}

template <class Scalar>
SymmetricTensorT<Scalar> metricTensorT(int n) {
  SymmetricTensorT<Scalar> q(n, 2);
  for (int i = 0; i < n; ++i) q.coeffRef({i, i}) = Scalar(1);
  return q;
}

inline SymmetricTensor metricTensor(int n) { return metricTensorT<Real>(n); }

// Q(L)(x,y) = <p_L x, p_L y> for the line L spanned by u.
inline SymmetricTensor lineMetric(const LinearDirection& u) { return vectorPower(u.unit(), 2); }

inline Mat rank2Matrix(const SymmetricTensor& t) {
  if (t.rank() != 2) throw std::invalid_argument("rank2Matrix: rank != 2");
  const int n = t.dim();
  Mat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = t.coeff({i, j});
  return m;
}

// ascending eigenvalues of the matrix representation
inline Vec rank2Spectrum(const SymmetricTensor& t) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rank2Matrix(t), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline bool isPositiveDefinite(const SymmetricTensor& t, Real eigTol = tol::kPosdefEig) {
  const Vec ev = rank2Spectrum(t);
  return ev[0] > eigTol;
}

// (rho T)(x...) = T(rho^T x ...): push the tensor forward through a rotation.
inline SymmetricTensor rotated(const SymmetricTensor& t, const Mat& rho) {
  SymmetricTensor out(t.dim(), t.rank());
  const auto& idx = out.multiIndices();
  std::vector<Vec> args;
  for (std::size_t f = 0; f < out.size(); ++f) {
    args.clear();
    for (int i : idx[f]) args.push_back(rho.row(i).transpose());
    out[f] = t.evaluate(args);
  }
  return out;
}

inline Real maxAbsDiff(const SymmetricTensor& a, const SymmetricTensor& b) {
  if (a.dim() != b.dim() || a.rank() != b.rank())
    throw std::invalid_argument("maxAbsDiff: shape mismatch");
  Real m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline Real maxAbs(const SymmetricTensor& a) {
  Real m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

// CSV row per coefficient: dash-joined 1-based multi-index, then the value
// with 17 significant digits.
inline std::vector<std::pair<std::string, std::string>> tensorCsvRows(const SymmetricTensor& t) {
  std::vector<std::pair<std::string, std::string>> rows;
  char buf[64];
  const auto& idx = t.multiIndices();
  for (std::size_t f = 0; f < t.size(); ++f) {
    std::string key;
    for (std::size_t k = 0; k < idx[f].size(); ++k) {
      if (k) key += '-';
      key += std::to_string(idx[f][k] + 1);
    }
    std::snprintf(buf, sizeof(buf), "%.17g", t[f]);
    rows.emplace_back(key, buf);
  }
  return rows;
}

}  // namespace minktens
