#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nashrand/error.hpp"
#include "nashrand/exact.hpp"
#include "nashrand/strategy.hpp"

namespace nashrand {

/// Returns u when A + B = u * (all-ones), otherwise nothing.
inline std::optional<BigInteger> constant_sum_of(const IntMatrix& a, const IntMatrix& b) {
  if (a.size() != b.size() || a.size() == 0) return std::nullopt;
  const BigInteger u = a(0, 0) + b(0, 0);
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < a.size(); ++c)
      if (a(r, c) + b(r, c) != u) return std::nullopt;
  return u;
}

/// Two-player n x n game (A, B): A pays the row player, B the column player.
class Game {
 public:
  Game(IntMatrix a, IntMatrix b, std::optional<std::string> family_tag = std::nullopt,
       std::optional<BigInteger> constant_sum = std::nullopt)
      : a_(std::move(a)),
        b_(std::move(b)),
        family_tag_(std::move(family_tag)),
        constant_sum_(std::move(constant_sum)) {
    if (a_.size() != b_.size()) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "payoff matrices are " + std::to_string(a_.size()) + "x" +
                      std::to_string(a_.size()) + " and " + std::to_string(b_.size()) +
                      "x" + std::to_string(b_.size()));
    }
    if (a_.size() == 0) throw Error(ErrorKind::kDimensionMismatch, "empty game");
    if (constant_sum_ && constant_sum_of(a_, b_) != constant_sum_) {
      throw Error(ErrorKind::kHypothesisViolation,
                  "A + B is not " + constant_sum_->get_str() + " everywhere");
    }
  }

  std::size_t size() const { return a_.size(); }
  const IntMatrix& a() const { return a_; }
  const IntMatrix& b() const { return b_; }
  const std::optional<std::string>& family_tag() const { return family_tag_; }
  const std::optional<BigInteger>& constant_sum() const { return constant_sum_; }

  friend bool operator==(const Game&, const Game&) = default;

 private:
  IntMatrix a_;
  IntMatrix b_;
  std::optional<std::string> family_tag_;
  std::optional<BigInteger> constant_sum_;
};

struct Profile {
  MixedStrategy x;
  MixedStrategy y;

  Profile(MixedStrategy row, MixedStrategy col) : x(std::move(row)), y(std::move(col)) {
    if (x.size() != y.size()) {
      throw Error(ErrorKind::kDimensionMismatch, "profile strategies differ in length");
    }
  }

  friend bool operator==(const Profile&, const Profile&) = default;
};

namespace detail {

// (M w)_i for integer weights w.
inline std::vector<BigInteger> times_column(const IntMatrix& m,
                                            const std::vector<BigInteger>& w) {
  std::vector<BigInteger> out(m.size(), BigInteger(0));
  for (std::size_t r = 0; r < m.size(); ++r)
    for (std::size_t c = 0; c < m.size(); ++c)
      if (w[c] != 0) out[r] += m(r, c) * w[c];
  return out;
}

// (w^T M)_j for integer weights w.
inline std::vector<BigInteger> times_row(const std::vector<BigInteger>& w,
                                         const IntMatrix& m) {
  std::vector<BigInteger> out(m.size(), BigInteger(0));
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (w[r] == 0) continue;
    for (std::size_t c = 0; c < m.size(); ++c) out[c] += w[r] * m(r, c);
  }
  return out;
}

// Every index in the support of `weights` attains the maximum of `payoff`.
inline bool support_is_best_response(const std::vector<BigInteger>& weights,
                                     const std::vector<BigInteger>& payoff) {
  BigInteger best = payoff.front();
  for (const auto& v : payoff) best = std::max(best, v);
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] != 0 && payoff[i] != best) return false;
  return true;
}

}  // namespace detail

inline void check_dimensions(const Game& g, const Profile& p) {
  if (p.x.size() != g.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "profile has " + std::to_string(p.x.size()) + " strategies, game has " +
                    std::to_string(g.size()));
  }
}

/// Best-response test: every pure strategy in supp x maximizes (A y)_i and
/// every pure strategy in supp y maximizes (x^T B)_j. Exact; works on the
/// integer numerators since scaling by the denominators preserves the order.
inline bool is_nash(const Game& g, const Profile& p) {
  check_dimensions(g, p);
  const auto row_payoffs = detail::times_column(g.a(), p.y.numerators());
  const auto col_payoffs = detail::times_row(p.x.numerators(), g.b());
  return detail::support_is_best_response(p.x.numerators(), row_payoffs) &&
         detail::support_is_best_response(p.y.numerators(), col_payoffs);
}

/// Expected payoffs (x^T A y, x^T B y).
inline std::pair<BigRational, BigRational> expected_payoffs(const Game& g,
                                                            const Profile& p) {
  check_dimensions(g, p);
  const auto ay = detail::times_column(g.a(), p.y.numerators());
  const auto by = detail::times_column(g.b(), p.y.numerators());
  BigInteger u1 = 0, u2 = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    u1 += p.x.numerators()[i] * ay[i];
    u2 += p.x.numerators()[i] * by[i];
  }
  const BigInteger scale = p.x.denominator() * p.y.denominator();
  BigRational r1(u1, scale), r2(u2, scale);
  r1.canonicalize();
  r2.canonicalize();
  return {r1, r2};
}

}  // namespace nashrand
