#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace nashrand::detail {

// Dense row-major scratch matrix for the elimination kernels.
template <class T>
struct Dense {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<T> data;

  Dense(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, T(0)) {}

  T& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const T& operator()(std::size_t r, std::size_t c) const {
    return data[r * cols + c];
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t c = 0; c < cols; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }
};

// Bareiss fraction-free elimination of the leading m x m block of `a`
// (m = a.rows), carrying along any extra right-hand columns. Every division is
// exact. On return the leading block is upper triangular and the last pivot
// equals `*sign_out` times the determinant. Returns false (and stops early)
// when the leading block is singular.
template <class T>
bool bareiss_eliminate(Dense<T>& a, int* sign_out) {
  const std::size_t m = a.rows;
  int sign = 1;
  T prev(1);
  for (std::size_t k = 0; k < m; ++k) {
    if (a(k, k) == T(0)) {
      std::size_t r = k + 1;
      while (r < m && a(r, k) == T(0)) ++r;
      if (r == m) return false;
      a.swap_rows(k, r);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < m; ++i) {
      for (std::size_t j = k + 1; j < a.cols; ++j) {
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      }
      a(i, k) = T(0);
    }
    prev = a(k, k);
  }
  *sign_out = sign;
  return true;
}

// Signed determinant of a square matrix; consumes the scratch copy.
template <class T>
T determinant(Dense<T> a) {
  if (a.rows == 0) return T(1);
  int sign = 1;
  if (!bareiss_eliminate(a, &sign)) return T(0);
  T d = a(a.rows - 1, a.rows - 1);
  return sign < 0 ? T(0) - d : d;
}

// Integer Cramer numerators of a square system with one right-hand column
// stored as column m of `a` (a is m x (m+1)). On success `denom` is the signed
// determinant of the leading block and `numerators[i] / denom` is the i-th
// solution coordinate (so numerators[i] is the i-th Cramer determinant).
template <class T>
bool solve_fraction_free(Dense<T> a, std::vector<T>* numerators, T* denom) {
  const std::size_t m = a.rows;
  int sign = 1;
  if (!bareiss_eliminate(a, &sign)) return false;
  const T d = a(m - 1, m - 1);
  std::vector<T>& x = *numerators;
  x.assign(m, T(0));
  for (std::size_t ii = m; ii-- > 0;) {
    T acc = d * a(ii, m);
    for (std::size_t j = ii + 1; j < m; ++j) acc = acc - a(ii, j) * x[j];
    x[ii] = acc / a(ii, ii);
  }
  if (sign < 0) {
    for (auto& v : x) v = T(0) - v;
    *denom = T(0) - d;
  } else {
    *denom = d;
  }
  return true;
}

}  // namespace nashrand::detail
