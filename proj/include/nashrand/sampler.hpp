#pragma once

// Exact sampling from a canonical rational distribution with fair coin flips,
// by lazily walking the Knuth-Yao generating tree of (p_1/q, ..., p_n/q).

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "nashrand/error.hpp"
#include "nashrand/exact.hpp"
#include "nashrand/strategy.hpp"

namespace nashrand {

/// Seeded pseudorandom bit stream that counts the bits handed out.
class BitSource {
 public:
  explicit BitSource(std::uint64_t seed) : engine_(seed) {}

  int next() {
    if (left_ == 0) {
      buffer_ = engine_();
      left_ = 64;
    }
    --left_;
    ++consumed_;
    return static_cast<int>((buffer_ >> left_) & 1u);
  }

  std::uint64_t consumed() const { return consumed_; }

 private:
  std::mt19937_64 engine_;
  std::uint64_t buffer_ = 0;
  int left_ = 0;
  std::uint64_t consumed_ = 0;
};

/// Fixed bit sequence, for exercising the leaf-labeling convention.
class ScriptedBits {
 public:
  explicit ScriptedBits(std::vector<int> bits) : bits_(std::move(bits)) {}

  int next() {
    if (pos_ >= bits_.size()) throw Error(ErrorKind::kSamplerStall, "scripted bits exhausted");
    ++consumed_;
    return bits_[pos_++];
  }

  std::uint64_t consumed() const { return consumed_; }

 private:
  std::vector<int> bits_;
  std::size_t pos_ = 0;
  std::uint64_t consumed_ = 0;
};

struct SampleResult {
  std::size_t index = 0;  // 0-based outcome
  std::uint64_t bits = 0;
};

struct SamplerAnalysis {
  std::size_t depth = 0;
  std::vector<BigRational> resolved;  // leaf mass per outcome within depth
  BigRational tail;                   // mass not yet resolved
  BigRational partial_expected_bits;  // sum over leaves of depth * 2^-depth
  BigRational max_error;              // max_i |resolved_i - p_i/q|
  bool error_within_tail = false;
  bool tail_within_bound = false;     // tail <= n 2^-depth
};

inline constexpr std::size_t kSamplerDepthCap = 4096;

class DdgSampler {
 public:
  explicit DdgSampler(MixedStrategy target) : target_(std::move(target)) {}

  const MixedStrategy& target() const { return target_; }

  /// Outcomes claim the leaves of each level in ascending index order, and
  /// the bits read so far, most significant first, select a leaf.
  template <class Bits>
  SampleResult sample(Bits& bits) const {
    const std::uint64_t start = bits.consumed();
    const auto& p = target_.numerators();
    const BigInteger& q = target_.denominator();
    if (target_.is_pure()) return {target_.support().front(), 0};
    std::vector<BigInteger> rem = p;
    BigInteger d = 0;
    for (std::size_t level = 1; level <= kSamplerDepthCap; ++level) {
      d = 2 * d + bits.next();
      for (std::size_t i = 0; i < rem.size(); ++i) {
        rem[i] *= 2;
        if (rem[i] >= q) {
          rem[i] -= q;
          d -= 1;
          if (d < 0) return {i, bits.consumed() - start};
        }
      }
    }
    throw Error(ErrorKind::kSamplerStall, "no leaf reached within 4096 bits");
  }

  /// Leaf mass resolved within `depth` levels, with exact error accounting.
  SamplerAnalysis analyze(std::size_t depth) const {
    if (depth < 1) throw Error(ErrorKind::kHypothesisViolation, "depth must be >= 1");
    const auto& p = target_.numerators();
    const BigInteger& q = target_.denominator();
    const std::size_t n = p.size();
    SamplerAnalysis a;
    a.depth = depth;
    a.resolved.assign(n, BigRational(0));
    if (target_.is_pure()) {
      for (std::size_t i = 0; i < n; ++i) a.resolved[i] = p[i];
    } else {
      std::vector<BigInteger> rem = p;
      BigInteger level_weight = 1;  // 2^level
      for (std::size_t level = 1; level <= depth; ++level) {
        level_weight *= 2;
        BigInteger leaves = 0;
        for (std::size_t i = 0; i < n; ++i) {
          rem[i] *= 2;
          if (rem[i] >= q) {
            rem[i] -= q;
            ++leaves;
            a.resolved[i] += BigRational(1, level_weight);
          }
        }
        if (leaves != 0) {
          BigRational contribution(leaves * static_cast<unsigned long>(level), level_weight);
          contribution.canonicalize();
          a.partial_expected_bits += contribution;
        }
      }
      for (auto& r : a.resolved) r.canonicalize();
    }
    a.tail = 1;
    for (const auto& r : a.resolved) a.tail -= r;
    for (std::size_t i = 0; i < n; ++i) {
      BigRational err = BigRational(p[i], q) - a.resolved[i];
      err.canonicalize();
      err = abs(err);
      if (err > a.max_error) a.max_error = err;
    }
    BigInteger two_pow;
    mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, depth);
    BigRational bound(BigInteger(static_cast<unsigned long>(n)), two_pow);
    bound.canonicalize();
    a.error_within_tail = a.max_error <= a.tail;
    a.tail_within_bound = a.tail <= bound;
    return a;
  }

 private:
  MixedStrategy target_;
};

inline DdgSampler build_sampler(const MixedStrategy& x) { return DdgSampler(x); }

}  // namespace nashrand
