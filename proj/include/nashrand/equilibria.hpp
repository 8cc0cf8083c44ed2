#pragma once

// Equilibrium computation over exact integers: pure scan, equal-size support
// enumeration, minimal complexities C_1/C_2, the bounded-capability gate and
// an explicit upper bound on C_1/C_2 depending only on n and max |payoff|.

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nashrand/detail/checked_int.hpp"
#include "nashrand/detail/fraction_free.hpp"
#include "nashrand/error.hpp"
#include "nashrand/exact.hpp"
#include "nashrand/game.hpp"
#include "nashrand/strategy.hpp"

namespace nashrand {

inline constexpr std::size_t kDefaultMaxN = 10;

/// Supports (I, J) of the row and column player, 0-based and sorted.
struct SupportPair {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;

  friend bool operator==(const SupportPair&, const SupportPair&) = default;
};

struct EnumerationOptions {
  std::size_t max_n = kDefaultMaxN;
  /// Largest support size examined; 0 means no cap (all sizes up to n).
  std::size_t max_support = 0;
};

struct EnumerationStats {
  std::uint64_t enumerated_supports = 0;
  bool degenerate = false;
  bool capped = false;
  bool stopped_early = false;
};

struct SolveReport {
  std::vector<Profile> equilibria;
  std::vector<SupportPair> supports;
  std::optional<BigInteger> c1_min;
  std::optional<BigInteger> c2_min;
  bool degenerate_flag = false;
  std::uint64_t enumerated_supports = 0;
  bool capped = false;
};

/// All pure profiles (e_i, e_j) that are mutual best responses.
inline std::vector<Profile> pure_nash(const Game& g) {
  const std::size_t n = g.size();
  std::vector<BigInteger> col_max_a(n), row_max_b(n);
  for (std::size_t j = 0; j < n; ++j) {
    col_max_a[j] = g.a()(0, j);
    for (std::size_t i = 1; i < n; ++i) col_max_a[j] = std::max(col_max_a[j], g.a()(i, j));
  }
  for (std::size_t i = 0; i < n; ++i) {
    row_max_b[i] = g.b()(i, 0);
    for (std::size_t j = 1; j < n; ++j) row_max_b[i] = std::max(row_max_b[i], g.b()(i, j));
  }
  std::vector<Profile> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.a()(i, j) == col_max_a[j] && g.b()(i, j) == row_max_b[i])
        out.emplace_back(MixedStrategy::pure(n, i), MixedStrategy::pure(n, j));
  return out;
}

namespace detail {

enum class SideStatus { kRejected, kZeroOnSupport, kAccepted };

inline bool is_negative(const Checked64& v) { return v.value() < 0; }
inline bool is_negative(const BigInteger& v) { return sgn(v) < 0; }

inline BigInteger to_big(const Checked64& v) { return BigInteger(static_cast<long>(v.value())); }
inline const BigInteger& to_big(const BigInteger& v) { return v; }

// Weights of one player on `own` that make every strategy in `other`
// indifferent for the opponent, whose payoff for (own s, other t) is
// payoff(s, t). Solved as a (k+1)-variable system in (weights, value):
//   sum_s payoff(s, t) w_s - value = 0 for t in other,  sum_s w_s = 1.
// On return `w` holds k integer weights followed by the value numerator, all
// over a positive common denominator. `tie` is set when an off-support
// strategy of the opponent attains the value as well.
template <class T, class Payoff>
SideStatus solve_side(const Payoff& payoff, std::span<const std::size_t> own,
                      std::span<const std::size_t> other,
                      const std::vector<char>& in_other, std::vector<T>* w, bool* tie) {
  const std::size_t k = own.size();
  Dense<T> sys(k + 1, k + 2);
  for (std::size_t r = 0; r < k; ++r) {
    for (std::size_t c = 0; c < k; ++c) sys(r, c) = payoff(own[c], other[r]);
    sys(r, k) = T(-1);
  }
  for (std::size_t c = 0; c < k; ++c) sys(k, c) = T(1);
  sys(k, k + 1) = T(1);

  T d;
  if (!solve_fraction_free(std::move(sys), w, &d)) return SideStatus::kRejected;
  if (is_negative(d)) {
    for (auto& v : *w) v = T(0) - v;
  }
  bool zero = false;
  for (std::size_t r = 0; r < k; ++r) {
    if (is_negative((*w)[r])) return SideStatus::kRejected;
    if ((*w)[r] == T(0)) zero = true;
  }
  const T value = (*w)[k];
  bool tied = false;
  for (std::size_t t = 0; t < in_other.size(); ++t) {
    if (in_other[t]) continue;
    T s(0);
    for (std::size_t r = 0; r < k; ++r) s = s + payoff(own[r], t) * (*w)[r];
    if (value < s) return SideStatus::kRejected;
    if (s == value) tied = true;
  }
  *tie = *tie || tied;
  return zero ? SideStatus::kZeroOnSupport : SideStatus::kAccepted;
}

template <class T>
struct PayoffTables {
  Dense<T> a;
  Dense<T> b;
};

struct CandidateResult {
  std::optional<Profile> profile;
  bool degenerate = false;
};

template <class T>
CandidateResult evaluate_support(const PayoffTables<T>& tables, std::size_t n,
                                 const SupportPair& s, const std::vector<char>& in_rows,
                                 const std::vector<char>& in_cols) {
  CandidateResult result;
  bool tie = false;
  std::vector<T> xw, yw;
  // Row player's weights make the column player indifferent over J.
  const auto b_payoff = [&](std::size_t own, std::size_t other) -> const T& {
    return tables.b(own, other);
  };
  const SideStatus sx = solve_side<T>(b_payoff, s.rows, s.cols, in_cols, &xw, &tie);
  if (sx == SideStatus::kRejected) return result;
  // Column player's weights make the row player indifferent over I.
  const auto a_payoff = [&](std::size_t own, std::size_t other) -> const T& {
    return tables.a(other, own);
  };
  const SideStatus sy = solve_side<T>(a_payoff, s.cols, s.rows, in_rows, &yw, &tie);
  if (sy == SideStatus::kRejected) return result;
  if (sx == SideStatus::kZeroOnSupport || sy == SideStatus::kZeroOnSupport) {
    result.degenerate = true;
    return result;
  }
  result.degenerate = tie;
  std::vector<BigInteger> x(n, BigInteger(0)), y(n, BigInteger(0));
  for (std::size_t r = 0; r < s.rows.size(); ++r) x[s.rows[r]] = to_big(xw[r]);
  for (std::size_t c = 0; c < s.cols.size(); ++c) y[s.cols[c]] = to_big(yw[c]);
  result.profile.emplace(MixedStrategy::from_weights(std::move(x)),
                         MixedStrategy::from_weights(std::move(y)));
  return result;
}

// Advances a sorted k-subset of {0..n-1} to its lexicographic successor.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

inline std::vector<char> mask_of(const std::vector<std::size_t>& idx, std::size_t n) {
  std::vector<char> m(n, 0);
  for (std::size_t i : idx) m[i] = 1;
  return m;
}

}  // namespace detail

/// Calls visit(profile, supports) for every equilibrium found by equal-size
/// support enumeration, in ascending support size and lexicographic (I, J)
/// order. Enumeration stops when visit returns false.
template <class Visitor>
EnumerationStats for_each_equilibrium(const Game& g, const EnumerationOptions& options,
                                      Visitor&& visit) {
  const std::size_t n = g.size();
  if (n > options.max_n) {
    throw Error(ErrorKind::kDimensionTooLarge,
                "n = " + std::to_string(n) + " exceeds the enumeration limit " +
                    std::to_string(options.max_n));
  }
  using detail::Checked64;
  bool fits = true;
  detail::PayoffTables<BigInteger> big{detail::Dense<BigInteger>(n, n),
                                       detail::Dense<BigInteger>(n, n)};
  detail::PayoffTables<Checked64> small{detail::Dense<Checked64>(n, n),
                                        detail::Dense<Checked64>(n, n)};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      big.a(r, c) = g.a()(r, c);
      big.b(r, c) = g.b()(r, c);
      if (g.a()(r, c).fits_slong_p() && g.b()(r, c).fits_slong_p()) {
        small.a(r, c) = g.a()(r, c).get_si();
        small.b(r, c) = g.b()(r, c).get_si();
      } else {
        fits = false;
      }
    }
  }

  EnumerationStats stats;
  const std::size_t kmax =
      options.max_support == 0 ? n : std::min(n, options.max_support);
  stats.capped = kmax < n;
  for (std::size_t k = 1; k <= kmax; ++k) {
    SupportPair s{detail::first_combination(k), {}};
    do {
      const auto in_rows = detail::mask_of(s.rows, n);
      s.cols = detail::first_combination(k);
      do {
        ++stats.enumerated_supports;
        const auto in_cols = detail::mask_of(s.cols, n);
        detail::CandidateResult res;
        bool done = false;
        if (fits) {
          try {
            res = detail::evaluate_support(small, n, s, in_rows, in_cols);
            done = true;
          } catch (const detail::ArithmeticOverflow&) {
          }
        }
        if (!done) res = detail::evaluate_support(big, n, s, in_rows, in_cols);
        stats.degenerate = stats.degenerate || res.degenerate;
        if (res.profile && !visit(*res.profile, s)) {
          stats.stopped_early = true;
          return stats;
        }
      } while (detail::next_combination(s.cols, n));
    } while (detail::next_combination(s.rows, n));
  }
  return stats;
}

/// Every extreme equilibrium reachable through equal-size supports, with
/// the minimal complexities over them.
inline SolveReport support_enumeration(const Game& g, const EnumerationOptions& options) {
  SolveReport report;
  const auto stats = for_each_equilibrium(g, options, [&](const Profile& p, const SupportPair& s) {
    const BigInteger c1 = complexity(p.x);
    const BigInteger c2 = complexity(p.y);
    if (!report.c1_min || c1 < *report.c1_min) report.c1_min = c1;
    if (!report.c2_min || c2 < *report.c2_min) report.c2_min = c2;
    report.equilibria.push_back(p);
    report.supports.push_back(s);
    return true;
  });
  report.degenerate_flag = stats.degenerate;
  report.enumerated_supports = stats.enumerated_supports;
  report.capped = stats.capped;
  return report;
}

inline SolveReport support_enumeration(const Game& g, std::size_t max_n = kDefaultMaxN) {
  return support_enumeration(g, EnumerationOptions{max_n, 0});
}

/// (C_1, C_2) minimized over the equilibria found by support enumeration.
inline std::pair<BigInteger, BigInteger> min_complexities(const Game& g,
                                                          const EnumerationOptions& options) {
  const SolveReport r = support_enumeration(g, options);
  if (!r.c1_min) {
    throw Error(ErrorKind::kNoEquilibriumFound,
                r.capped ? "no equilibrium within the support-size cap"
                         : "no equilibrium with equal-size supports (degenerate game)");
  }
  return {*r.c1_min, *r.c2_min};
}

inline std::pair<BigInteger, BigInteger> min_complexities(const Game& g,
                                                          std::size_t max_n = kDefaultMaxN) {
  return min_complexities(g, EnumerationOptions{max_n, 0});
}

/// The profile ((B^T)^{-1} 1, A^{-1} 1), normalized, when it is a fully mixed
/// equilibrium. Throws SingularMatrix if A or B is singular.
inline std::optional<Profile> fully_mixed_ne(const Game& g) {
  const std::size_t n = g.size();
  if (det(g.a()) == 0 || det(g.b()) == 0) {
    throw Error(ErrorKind::kSingularMatrix, "fully mixed solve needs det A != 0 and det B != 0");
  }
  const std::vector<BigRational> ones(n, BigRational(1));
  auto normalized = [](std::vector<BigRational> v) -> std::optional<MixedStrategy> {
    BigRational total = 0;
    for (const auto& e : v) total += e;
    if (total == 0) return std::nullopt;
    for (auto& e : v) {
      e /= total;
      if (e <= 0) return std::nullopt;
    }
    return canonicalize(v);
  };
  auto x = normalized(solve_exact(g.b().transposed(), ones));
  auto y = normalized(solve_exact(g.a(), ones));
  if (!x || !y) return std::nullopt;
  Profile p(std::move(*x), std::move(*y));
  if (!is_nash(g, p)) return std::nullopt;
  return p;
}

/// Whether the (c1, c2)-bounded-randomness version of g has an equilibrium,
/// i.e. some equilibrium (x, y) with C(x) <= c1 and C(y) <= c2.
inline bool bounded_ne_exists(const Game& g, const BigInteger& c1, const BigInteger& c2,
                              const EnumerationOptions& options) {
  if (c1 < 1 || c2 < 1) {
    throw Error(ErrorKind::kHypothesisViolation, "capabilities must be at least 1");
  }
  // Pure equilibria have complexity 1 and satisfy every capability.
  if (!pure_nash(g).empty()) return true;
  bool found = false;
  for_each_equilibrium(g, options, [&](const Profile& p, const SupportPair&) {
    found = capability_admissible(p.x, c1) && capability_admissible(p.y, c2);
    return !found;
  });
  return found;
}

inline bool bounded_ne_exists(const Game& g, const BigInteger& c1, const BigInteger& c2,
                              std::size_t max_n = kDefaultMaxN) {
  return bounded_ne_exists(g, c1, c2, EnumerationOptions{max_n, 0});
}

namespace detail {

// n(n+1) * ceil(M^n (2n+1)^{(2n+1)/2}) with M = max(max |entry|, 1).
inline BigInteger explicit_bound(const IntMatrix& m) {
  const unsigned long n = m.size();
  BigInteger max_entry = std::max<BigInteger>(m.max_abs_entry(), 1);
  BigInteger base;
  mpz_pow_ui(base.get_mpz_t(), BigInteger(max_entry * (2 * n + 1)).get_mpz_t(), n);
  // ceil(base * sqrt(2n+1)) = ceil(sqrt(base^2 (2n+1))).
  const BigInteger radicand = base * base * (2 * n + 1);
  BigInteger root;
  mpz_sqrt(root.get_mpz_t(), radicand.get_mpz_t());
  if (root * root != radicand) root += 1;
  return BigInteger(n * (n + 1)) * root;
}

}  // namespace detail

/// Explicit integers bounding C_1 (from B) and C_2 (from A).
inline std::pair<BigInteger, BigInteger> complexity_upper_bound(const Game& g) {
  return {detail::explicit_bound(g.b()), detail::explicit_bound(g.a())};
}

}  // namespace nashrand
