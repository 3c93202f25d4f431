#pragma once

#include "minktens/common.hpp"
#include "minktens/symtensor.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <vector>

namespace minktens {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Surface area omega_n and volume kappa_n of the unit ball B^n, via log-Gamma
// so large indices stay in range.
inline Real omegaN(int n) {
  if (n < 0) throw std::invalid_argument("omegaN: n < 0");
  if (n == 0) return 0.0;
  return 2.0 * std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n));
}

inline Real kappaN(int n) {
  if (n < 0) throw std::invalid_argument("kappaN: n < 0");
  return std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0));
}

// c_k^(m) = (-1)^k binom(m,k) (2k)! omega_{2k+1} / (1-2k)
inline Real cCoeff(int m, int k) {
  if (k < 0 || m < 0 || k > m) throw std::invalid_argument("cCoeff: need 0 <= k <= m");
  const Real sign = (k % 2 == 0) ? 1.0 : -1.0;
  const Real binom = std::exp(std::lgamma(m + 1.0) - std::lgamma(k + 1.0) - std::lgamma(m - k + 1.0));
  return sign * binom * std::tgamma(2.0 * k + 1.0) * omegaN(2 * k + 1) / (1.0 - 2.0 * k);
}

// C_j = pi j! omega_{j+1}^2 omega_n / (2 omega_{n+j+1}), defined for even j.
inline Real cNormalizer(int j, int n) {
  if (j < 0 || j % 2 != 0) throw std::invalid_argument("cNormalizer: j must be even and >= 0");
  const Real w1 = omegaN(j + 1);
  return M_PI * std::tgamma(j + 1.0) * w1 * w1 * omegaN(n) / (2.0 * omegaN(n + j + 1));
}

// Triangular coefficient tables for a fixed even rank s: the c_k^(m), the
// normalizers C_{2j}, and the inverse-system entries d_ij obtained from
// d_ii = 1/c_i^(i), d_ij = -(1/c_i^(i)) sum_{k=j}^{i-1} c_k^(i) d_kj.
struct CroftonTable {
  int dim = 0;   // n
  int rank = 0;  // s, even
  std::vector<std::vector<Real>> c;  // c[m][k], 0 <= k <= m <= s/2
  std::vector<Real> C;               // C[j] = C_{2j}, j = 0..s/2
  std::vector<std::vector<Real>> d;  // d[i][j], 0 <= j <= i <= s/2

  static CroftonTable build(int n, int s) {
    if (s < 0 || s % 2 != 0) throw std::invalid_argument("CroftonTable: s must be even");
    if (n < 1) throw std::invalid_argument("CroftonTable: n < 1");
    CroftonTable t;
    t.dim = n;
    t.rank = s;
    const int half = s / 2;
    t.c.resize(half + 1);
    t.d.resize(half + 1);
    t.C.resize(half + 1);
    for (int m = 0; m <= half; ++m) {
      t.c[m].resize(m + 1);
      for (int k = 0; k <= m; ++k) t.c[m][k] = cCoeff(m, k);
      t.C[m] = cNormalizer(2 * m, n);
    }
    for (int i = 0; i <= half; ++i) {
      t.d[i].assign(i + 1, 0.0);
      t.d[i][i] = 1.0 / t.c[i][i];
      for (int j = i - 1; j >= 0; --j) {
        Real acc = 0.0;
        for (int k = j; k <= i - 1; ++k) acc += t.c[i][k] * t.d[k][j];
        t.d[i][j] = -acc / t.c[i][i];
      }
    }
    return t;
  }

  // max |(D*C)_ij - delta_ij| over the scalar triangular system: with powers
  // of Q treated as formal basis elements the (i,j) block carries the scalar
  // sum_k d_ik c_j^(k).
  Real dcIdentityError() const {
    const int half = rank / 2;
    Real worst = 0.0;
    for (int i = 0; i <= half; ++i) {
      for (int j = 0; j <= half; ++j) {
        Real acc = 0.0;
        for (int k = j; k <= i; ++k) acc += d[i][k] * c[k][j];
        worst = std::max(worst, std::abs(acc - (i == j ? 1.0 : 0.0)));
      }
    }
    return worst;
  }
};

// Measurement function G_{2m}(L) = sum_j 2 d_{mj} C_{2j} / ((2j)! omega_{2j+1})
// Q^{m-j} Q(L)^j. Built once per (n, s); evaluation per direction costs one
// small symmetric product per term.
class MeasurementFunction {
 public:
  MeasurementFunction(int n, int s) : n_(n), s_(s) {
    if (s < 0 || s % 2 != 0) throw std::invalid_argument("MeasurementFunction: s must be even");
    const CroftonTable t = CroftonTable::build(n, s);
    const int m = s / 2;
    const SymmetricTensor q = metricTensor(n);
    for (int j = 0; j <= m; ++j) {
      coef_.push_back(2.0 * t.d[m][j] * t.C[j] /
                      (std::tgamma(2.0 * j + 1.0) * omegaN(2 * j + 1)));
      qPow_.push_back(tensorPower(q, m - j));
    }
  }

  int dim() const { return n_; }
  int rank() const { return s_; }

  SymmetricTensor operator()(const Vec& unit) const {
    const int m = s_ / 2;
    SymmetricTensor acc(n_, s_);
    for (int j = 0; j <= m; ++j) {
      // Q(L)^j = u^{2j} for the line spanned by u
      SymmetricTensor term = symProduct(qPow_[static_cast<std::size_t>(j)], vectorPower(unit, 2 * j));
      acc += coef_[static_cast<std::size_t>(j)] * term;
    }
    return acc;
  }

  SymmetricTensor operator()(const LinearDirection& u) const { return (*this)(u.unit()); }

  // scalar weights in front of Q^{m-j} Q(L)^j
  const std::vector<Real>& termCoefficients() const { return coef_; }

 private:
  int n_, s_;
  std::vector<Real> coef_;
  std::vector<SymmetricTensor> qPow_;
};

inline SymmetricTensor measurementTensor(const LinearDirection& u, int n, int s) {
  return MeasurementFunction(n, s)(u);
}

// ---- exact identity checks --------------------------------------------------

namespace detail {

inline BigInt bigBinomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

}  // namespace detail

// Residual of  sum_{j=0}^m (-1)^j binom(2n,2j) binom(n-j,m-j) / binom(n-1/2,j)
//            - binom(n,m) / (1-2m)
// in exact rational arithmetic; the half-integer binomial is the rational
// prod_{i<j} (2n-1-2i) / (2^j j!). Returns exactly zero when the identity holds.
inline Rational binomialHalfIntegerIdentityResidual(int n, int m) {
  if (n < 0 || m < 0) throw std::invalid_argument("binomialHalfIntegerIdentityResidual: negative input");
  Rational sum = 0;
  for (int j = 0; j <= m; ++j) {
    const BigInt a = detail::bigBinomial(2L * n, 2L * j);
    const BigInt b = detail::bigBinomial(n - j, m - j);
    if (a == 0 || b == 0) continue;
    BigInt num = 1;  // numerator of binom(n-1/2, j) * 2^j j!
    for (int i = 0; i < j; ++i) num *= (2L * n - 1 - 2L * i);
    BigInt denomScale = 1;  // 2^j j!
    for (int i = 1; i <= j; ++i) denomScale *= 2L * i;
    // term = (+-) a*b / (num / denomScale) = (+-) a*b*denomScale / num
    Rational term = Rational(BigInt(a * b * denomScale)) / Rational(num);
    sum += (j % 2 == 0) ? term : -term;
  }
  const Rational rhs = Rational(detail::bigBinomial(n, m)) / Rational(BigInt(1 - 2L * m));
  return sum - rhs;
}

// Residual of  sum_{j=0}^m (-1)^j binom(m,j)/(1-2j) = sqrt(pi) Gamma(m+1)/Gamma(m+1/2),
// whose right-hand side reduces to the rational 4^m / binom(2m, m) by the
// Gamma duplication formula; evaluated exactly.
inline Real alternatingBinomialSumResidual(int m) {
  if (m < 0) throw std::invalid_argument("alternatingBinomialSumResidual: m < 0");
  Rational lhs = 0;
  for (int j = 0; j <= m; ++j) {
    Rational term = Rational(detail::bigBinomial(m, j)) / Rational(BigInt(1 - 2L * j));
    lhs += (j % 2 == 0) ? term : -term;
  }
  BigInt pow4 = 1;
  for (int i = 0; i < m; ++i) pow4 *= 4;
  const Rational rhs = Rational(pow4) / Rational(detail::bigBinomial(2L * m, m));
  return std::abs(static_cast<Real>(lhs - rhs));
}

}  // namespace minktens
