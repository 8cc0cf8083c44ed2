#pragma once

// Exact integer/rational scalars and integer matrix algebra: determinants,
// column replacement, cofactor sums K(M) and exact linear solves.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "nashrand/detail/fraction_free.hpp"
#include "nashrand/error.hpp"

namespace nashrand {

using BigInteger = mpz_class;
using BigRational = mpq_class;

/// Number of bits in the binary representation of |v|; zero occupies one bit.
inline std::size_t bit_length(const BigInteger& v) {
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

/// log2 of a positive big integer without overflowing a double.
inline double log2_big(const BigInteger& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(std::fabs(mant)) + static_cast<double>(exp);
}

inline double to_double(const BigRational& q) {
  if (q == 0) return 0.0;
  return std::copysign(std::exp2(log2_big(abs(q.get_num())) - log2_big(q.get_den())),
                       sgn(q) < 0 ? -1.0 : 1.0);
}

inline BigInteger gcd_big(const BigInteger& a, const BigInteger& b) {
  BigInteger g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline BigInteger lcm_big(const BigInteger& a, const BigInteger& b) {
  BigInteger l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// Dense square matrix of exact integers (row-major, 0-based indices).
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, BigInteger(0)) {}

  IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
      : IntMatrix(rows.size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != n_) {
        throw Error(ErrorKind::kDimensionMismatch, "matrix rows must have length " +
                                                       std::to_string(n_));
      }
      std::size_t c = 0;
      for (long v : row) (*this)(r, c++) = v;
      ++r;
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix filled(std::size_t n, long value) {
    IntMatrix m(n);
    std::fill(m.data_.begin(), m.data_.end(), BigInteger(value));
    return m;
  }

  std::size_t size() const { return n_; }

  BigInteger& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  const BigInteger& operator()(std::size_t r, std::size_t c) const {
    return data_[r * n_ + c];
  }

  IntMatrix transposed() const {
    IntMatrix t(n_);
    for (std::size_t r = 0; r < n_; ++r)
      for (std::size_t c = 0; c < n_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  BigInteger max_abs_entry() const {
    BigInteger m = 0;
    for (const auto& v : data_) m = std::max<BigInteger>(m, abs(v));
    return m;
  }

  bool is_binary() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const BigInteger& v) { return v == 0 || v == 1; });
  }

  BigInteger row_sum(std::size_t r) const {
    BigInteger s = 0;
    for (std::size_t c = 0; c < n_; ++c) s += (*this)(r, c);
    return s;
  }

  BigInteger col_sum(std::size_t c) const {
    BigInteger s = 0;
    for (std::size_t r = 0; r < n_; ++r) s += (*this)(r, c);
    return s;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw Error(ErrorKind::kDimensionMismatch, "matrix sizes differ");
    IntMatrix r(a.n_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
    return r;
  }

  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw Error(ErrorKind::kDimensionMismatch, "matrix sizes differ");
    IntMatrix r(a.n_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
    return r;
  }

 private:
  std::size_t n_ = 0;
  std::vector<BigInteger> data_;
};

namespace detail {

inline Dense<BigInteger> to_dense(const IntMatrix& m, std::size_t extra_cols = 0) {
  Dense<BigInteger> d(m.size(), m.size() + extra_cols);
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c) d(r, c) = m(r, c);
  return d;
}

}  // namespace detail

/// Exact determinant by fraction-free elimination. The 0x0 determinant is 1.
inline BigInteger det(const IntMatrix& m) {
  return detail::determinant(detail::to_dense(m));
}

/// Copy of `m` with column `col` (0-based) replaced by `values`.
inline IntMatrix replace_column(const IntMatrix& m, std::size_t col,
                                std::span<const BigInteger> values) {
  if (col >= m.size()) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "column " + std::to_string(col) + " outside 0.." +
                    std::to_string(m.size() == 0 ? 0 : m.size() - 1));
  }
  if (values.size() != m.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "replacement column has length " +
                                                   std::to_string(values.size()));
  }
  IntMatrix r = m;
  for (std::size_t i = 0; i < m.size(); ++i) r(i, col) = values[i];
  return r;
}

inline std::vector<BigInteger> ones_vector(std::size_t n) {
  return std::vector<BigInteger>(n, BigInteger(1));
}

/// K(M): the sum of all cofactors, computed from its definition as
/// sum_i det(M with column i replaced by the all-ones vector).
inline BigInteger cofactor_sum(const IntMatrix& m) {
  const auto ones = ones_vector(m.size());
  BigInteger k = 0;
  for (std::size_t i = 0; i < m.size(); ++i) k += det(replace_column(m, i, ones));
  return k;
}

/// K(M) through a single solve, K = det(M) * sum(M^{-1} 1); falls back to the
/// definition when M is singular.
inline BigInteger cofactor_sum_fast(const IntMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return 0;
  auto a = detail::to_dense(m, 1);
  for (std::size_t r = 0; r < n; ++r) a(r, n) = 1;
  std::vector<BigInteger> x;
  BigInteger d;
  if (!detail::solve_fraction_free(std::move(a), &x, &d)) return cofactor_sum(m);
  // x_i = det(M with column i replaced by 1) by Cramer's rule.
  return std::accumulate(x.begin(), x.end(), BigInteger(0));
}

/// Unique exact solution of M x = rhs. Throws SingularMatrix when det M = 0.
inline std::vector<BigRational> solve_exact(const IntMatrix& m,
                                            std::span<const BigRational> rhs) {
  const std::size_t n = m.size();
  if (rhs.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                "right-hand side has length " + std::to_string(rhs.size()) +
                    ", expected " + std::to_string(n));
  }
  if (n == 0) return {};
  BigInteger scale = 1;
  for (const auto& v : rhs) scale = lcm_big(scale, v.get_den());
  auto a = detail::to_dense(m, 1);
  for (std::size_t r = 0; r < n; ++r) {
    a(r, n) = rhs[r].get_num() * (scale / rhs[r].get_den());
  }
  std::vector<BigInteger> x;
  BigInteger d;
  if (!detail::solve_fraction_free(std::move(a), &x, &d)) {
    throw Error(ErrorKind::kSingularMatrix, "matrix is singular");
  }
  std::vector<BigRational> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = BigRational(x[i], d * scale);
    out[i].canonicalize();
  }
  return out;
}

inline std::vector<BigRational> solve_exact(const IntMatrix& m,
                                            std::initializer_list<BigRational> rhs) {
  return solve_exact(m, std::span<const BigRational>(rhs.begin(), rhs.size()));
}

}  // namespace nashrand
