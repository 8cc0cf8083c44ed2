#pragma once

// The integer recurrences a_n, b_n (x_n = x_{n-2} - x_{n-3} + x_{n-4}), the
// determinant sequence det B_n, g_n = gcd(b_n, b_{n+1}), the characteristic
// constants rho, z, w and the floating-point asymptotic checks built on them.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "nashrand/error.hpp"
#include "nashrand/exact.hpp"

namespace nashrand {

/// Exact tables indexed from 1: a_1..a_N, b_1..b_{N+1}, det B_1..det B_N and
/// g_1..g_N.
class RecurrenceTable {
 public:
  explicit RecurrenceTable(std::size_t upto) : upto_(upto) {
    if (upto < 4) {
      throw Error(ErrorKind::kUnsupportedDimension, "recurrence table needs upto >= 4");
    }
    a_ = extend({1, 1, 1, 0}, upto);
    b_ = extend({0, 1, 0, 1}, upto + 1);
    det_b_.assign(upto + 1, BigInteger(0));
    const long base[] = {1, 1, 2};
    for (std::size_t k = 1; k <= upto; ++k)
      det_b_[k] = k <= 3 ? BigInteger(base[k - 1]) : det_b_[k - 1] + det_b_[k - 3];
    g_.assign(upto + 1, BigInteger(0));
    for (std::size_t k = 1; k <= upto; ++k) g_[k] = gcd_big(b_[k], b_[k + 1]);
  }

  std::size_t upto() const { return upto_; }
  const BigInteger& a(std::size_t k) const { return at(a_, k, "a"); }
  const BigInteger& b(std::size_t k) const { return at(b_, k, "b"); }
  const BigInteger& det_b(std::size_t k) const { return at(det_b_, k, "det B"); }
  const BigInteger& g(std::size_t k) const { return at(g_, k, "g"); }

 private:
  static std::vector<BigInteger> extend(std::initializer_list<long> init, std::size_t last) {
    std::vector<BigInteger> v(1, BigInteger(0));
    for (long x : init) v.emplace_back(x);
    while (v.size() <= last) {
      const std::size_t k = v.size();
      v.push_back(v[k - 2] - v[k - 3] + v[k - 4]);
    }
    v.resize(last + 1);
    return v;
  }

  static const BigInteger& at(const std::vector<BigInteger>& v, std::size_t k,
                              const char* name) {
    if (k == 0 || k >= v.size()) {
      throw Error(ErrorKind::kIndexOutOfRange, std::string(name) + "_" + std::to_string(k) +
                                                   " outside the table");
    }
    return v[k];
  }

  std::size_t upto_;
  std::vector<BigInteger> a_, b_, det_b_, g_;
};

/// Roots of x^3 + x^2 + 1 and the coefficients of
/// b_n = w0 + w1 rho^n + w2 z^n + conj(w2) conj(z)^n.
struct RecurrenceConstants {
  double rho = 0.0;
  std::complex<double> z;
  double w0 = 0.0;
  double w1 = 0.0;
  std::complex<double> w2;

  static RecurrenceConstants compute() {
    RecurrenceConstants c;
    const double s93 = std::sqrt(93.0);
    const double lo = 29.0 - 3.0 * s93;
    const double hi = 29.0 + 3.0 * s93;
    c.rho = (-1.0 - std::cbrt(2.0 / lo) - std::cbrt(0.5 * lo)) / 3.0;
    const std::complex<double> i_sqrt3(0.0, std::sqrt(3.0));
    c.z = (-4.0 + (1.0 + i_sqrt3) * std::cbrt(4.0 * lo) + (1.0 - i_sqrt3) * std::cbrt(4.0 * hi)) /
          12.0;

    // Interpolate b_1..b_4 over the roots 1, rho, z, conj(z).
    Eigen::Matrix4cd m;
    Eigen::Vector4cd rhs;
    const std::complex<double> roots[] = {1.0, c.rho, c.z, std::conj(c.z)};
    const double b[] = {0.0, 1.0, 0.0, 1.0};
    for (int k = 0; k < 4; ++k) {
      for (int r = 0; r < 4; ++r) m(k, r) = std::pow(roots[r], k + 1);
      rhs(k) = b[k];
    }
    const Eigen::Vector4cd w = m.partialPivLu().solve(rhs);
    c.w0 = w(0).real();
    c.w1 = w(1).real();
    c.w2 = w(2);
    return c;
  }

  /// Floating evaluation of b_n from the closed form.
  double b_closed_form(int n) const {
    return w0 + w1 * std::pow(rho, n) + 2.0 * (w2 * std::pow(z, n)).real();
  }
};

struct GcdGrowthRow {
  std::size_t n = 0;
  BigInteger g;
  double rate = 0.0;  // (1/n) log2 max(g_n, 1)
  bool above_envelope = false;
};

struct AsymptoticReport {
  std::size_t at = 0;
  double ratio = 0.0;  // b_{at+1} / b_at
  double ratio_error = 0.0;
  double first_gap = 0.0;   // b_at - b_{at+1} b_{at-1} / b_at
  double first_gap_limit = 0.0;
  double second_gap = 0.0;  // b_{at+2} - b_{at+1}^2 / b_at
  double second_gap_limit = 0.0;
  /// n >= 5 where b_{n+1}/b_n is on the wrong side of rho (above for even n).
  std::vector<std::size_t> side_violations;
  /// n >= 5 where |b_{n+2}/b_{n+1} - rho| >= |b_{n+1}/b_n - rho|.
  std::vector<std::size_t> distance_violations;
  std::vector<GcdGrowthRow> gcd_growth;
  double envelope_base = 0.0;
};

/// Envelope base used when reporting g_n > base^n: sqrt(2) + 0.01, a point
/// inside (1, |rho|).
inline constexpr double kGcdEnvelopeBase = 1.4242135623730951;

/// num / den in canonical form (den may be negative).
inline BigRational quotient(const BigInteger& num, const BigInteger& den) {
  BigRational q(num, den);
  q.canonicalize();
  return q;
}

inline double ratio_of(const BigInteger& num, const BigInteger& den) {
  return to_double(quotient(num, den));
}

/// Numeric checks evaluated at index at = upto - 1 (so that b_{at+2} exists).
inline AsymptoticReport asymptotic_checks(const RecurrenceTable& t,
                                          const RecurrenceConstants& c) {
  if (t.upto() < 40) {
    throw Error(ErrorKind::kUnsupportedDimension, "asymptotic checks need upto >= 40");
  }
  AsymptoticReport r;
  r.at = t.upto() - 1;
  const std::size_t l = r.at;
  r.ratio = ratio_of(t.b(l + 1), t.b(l));
  r.ratio_error = std::fabs(r.ratio - c.rho);

  const BigRational first = BigRational(t.b(l)) - quotient(t.b(l + 1) * t.b(l - 1), t.b(l));
  const BigRational second = BigRational(t.b(l + 2)) - quotient(t.b(l + 1) * t.b(l + 1), t.b(l));
  r.first_gap = to_double(first);
  r.second_gap = to_double(second);
  r.first_gap_limit = -(c.rho - 1.0) * (c.rho - 1.0) / (3.0 * c.rho);
  r.second_gap_limit = (c.rho - 1.0) * (c.rho - 1.0) / 3.0;

  for (std::size_t n = 5; n <= l; ++n) {
    const double q = ratio_of(t.b(n + 1), t.b(n));
    const bool above = q > c.rho;
    if (above != (n % 2 == 0)) r.side_violations.push_back(n);
    if (n + 1 <= l) {
      const double q_next = ratio_of(t.b(n + 2), t.b(n + 1));
      if (std::fabs(q_next - c.rho) >= std::fabs(q - c.rho)) r.distance_violations.push_back(n);
    }
  }

  r.envelope_base = kGcdEnvelopeBase;
  for (std::size_t n = 1; n <= t.upto(); ++n) {
    GcdGrowthRow row;
    row.n = n;
    row.g = t.g(n);
    const BigInteger clamped = std::max<BigInteger>(row.g, 1);
    row.rate = log2_big(clamped) / static_cast<double>(n);
    row.above_envelope = log2_big(clamped) > static_cast<double>(n) * std::log2(kGcdEnvelopeBase);
    r.gcd_growth.push_back(row);
  }
  return r;
}

}  // namespace nashrand
