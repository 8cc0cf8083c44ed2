#pragma once

// Canonical rational mixed strategies and the complexity measure C(x): the
// common denominator q of (p_1/q, ..., p_n/q) with gcd(p_1, ..., p_n) = 1.

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nashrand/error.hpp"
#include "nashrand/exact.hpp"

namespace nashrand {

class MixedStrategy {
 public:
  /// Strategy proportional to nonnegative integer weights (not all zero).
  static MixedStrategy from_weights(std::vector<BigInteger> weights) {
    if (weights.empty()) {
      throw Error(ErrorKind::kNotADistribution, "empty strategy");
    }
    BigInteger g = 0;
    BigInteger total = 0;
    for (const auto& w : weights) {
      if (w < 0) throw Error(ErrorKind::kNotADistribution, "negative weight");
      g = gcd_big(g, w);
      total += w;
    }
    if (total == 0) throw Error(ErrorKind::kNotADistribution, "all weights are zero");
    for (auto& w : weights) w /= g;
    return MixedStrategy(std::move(weights), total / g);
  }

  /// Parses an explicit (numerators, denominator) pair; the numerators must sum
  /// to the denominator. A common factor is divided out.
  static MixedStrategy from_fraction(std::vector<BigInteger> numerators,
                                     const BigInteger& denominator) {
    BigInteger total = 0;
    for (const auto& p : numerators) total += p;
    if (denominator <= 0 || total != denominator) {
      throw Error(ErrorKind::kNotADistribution,
                  "numerators sum to " + total.get_str() + ", denominator is " +
                      denominator.get_str());
    }
    return from_weights(std::move(numerators));
  }

  static MixedStrategy pure(std::size_t n, std::size_t i) {
    std::vector<BigInteger> w(n, BigInteger(0));
    w.at(i) = 1;
    return from_weights(std::move(w));
  }

  static MixedStrategy uniform(std::size_t n) {
    return from_weights(std::vector<BigInteger>(n, BigInteger(1)));
  }

  static MixedStrategy uniform_on(std::size_t n, std::span<const std::size_t> support) {
    std::vector<BigInteger> w(n, BigInteger(0));
    for (std::size_t i : support) w.at(i) = 1;
    return from_weights(std::move(w));
  }

  std::size_t size() const { return numerators_.size(); }
  const std::vector<BigInteger>& numerators() const { return numerators_; }
  const BigInteger& denominator() const { return denominator_; }

  BigRational probability(std::size_t i) const {
    BigRational q(numerators_.at(i), denominator_);
    q.canonicalize();
    return q;
  }

  std::vector<std::size_t> support() const {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < numerators_.size(); ++i)
      if (numerators_[i] != 0) s.push_back(i);
    return s;
  }

  bool is_pure() const { return denominator_ == 1; }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  MixedStrategy(std::vector<BigInteger> numerators, BigInteger denominator)
      : numerators_(std::move(numerators)), denominator_(std::move(denominator)) {}

  std::vector<BigInteger> numerators_;
  BigInteger denominator_;
};

/// Canonical form of a rational distribution. Throws NotADistribution unless
/// every entry is nonnegative and the entries sum to exactly one.
inline MixedStrategy canonicalize(std::span<const BigRational> raw) {
  BigRational total = 0;
  BigInteger common = 1;
  for (const auto& v : raw) {
    if (v < 0) throw Error(ErrorKind::kNotADistribution, "negative probability " + v.get_str());
    total += v;
    common = lcm_big(common, v.get_den());
  }
  if (raw.empty() || total != 1) {
    throw Error(ErrorKind::kNotADistribution, "probabilities sum to " + total.get_str());
  }
  std::vector<BigInteger> w;
  w.reserve(raw.size());
  for (const auto& v : raw) w.push_back(v.get_num() * (common / v.get_den()));
  return MixedStrategy::from_weights(std::move(w));
}

inline MixedStrategy canonicalize(std::initializer_list<BigRational> raw) {
  return canonicalize(std::span<const BigRational>(raw.begin(), raw.size()));
}

/// C(x).
inline BigInteger complexity(const MixedStrategy& x) { return x.denominator(); }

/// Bits needed to store the numerators in binary; a zero takes one bit.
inline std::size_t storage_bits(const MixedStrategy& x) {
  std::size_t bits = 0;
  for (const auto& p : x.numerators()) bits += bit_length(p);
  return bits;
}

/// Shannon entropy in bits (the only floating-point quantity of the model).
inline double entropy(const MixedStrategy& x) {
  const double log_q = log2_big(x.denominator());
  double h = 0.0;
  for (const auto& p : x.numerators()) {
    if (p == 0) continue;
    const double log_p = log2_big(p);
    h -= std::exp2(log_p - log_q) * (log_p - log_q);
  }
  return h;
}

/// Whether a player with capability c may play x.
inline bool capability_admissible(const MixedStrategy& x, const BigInteger& capability) {
  return complexity(x) <= capability;
}

}  // namespace nashrand
