#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "nashrand/error.hpp"
#include "nashrand/exact.hpp"

namespace nashrand {

/// Bijection on {0, ..., n-1}, stored as its image table.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<std::size_t> image) : map_(std::move(image)) {
    std::vector<char> seen(map_.size(), 0);
    for (std::size_t v : map_) {
      if (v >= map_.size() || seen[v]) {
        throw Error(ErrorKind::kHypothesisViolation, "not a permutation");
      }
      seen[v] = 1;
    }
  }

  static Permutation identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    return Permutation(std::move(m));
  }

  static Permutation reversal(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = n - 1 - i;
    return Permutation(std::move(m));
  }

  /// i -> i+1 (mod n).
  static Permutation cycle(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = (i + 1) % n;
    return Permutation(std::move(m));
  }

  /// Builds from a 1-based image list such as "2 3 1".
  static Permutation from_one_based(const std::vector<long long>& image) {
    std::vector<std::size_t> m;
    m.reserve(image.size());
    for (long long v : image) {
      if (v < 1 || static_cast<std::size_t>(v) > image.size()) {
        throw Error(ErrorKind::kIndexOutOfRange,
                    "permutation entry " + std::to_string(v) + " outside 1.." +
                        std::to_string(image.size()));
      }
      m.push_back(static_cast<std::size_t>(v - 1));
    }
    return Permutation(std::move(m));
  }

  std::size_t size() const { return map_.size(); }
  std::size_t operator()(std::size_t i) const { return map_.at(i); }
  const std::vector<std::size_t>& image() const { return map_; }

  Permutation inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
  }

  /// (this ∘ other)(i) = this(other(i)).
  Permutation compose(const Permutation& other) const {
    if (other.size() != size()) {
      throw Error(ErrorKind::kDimensionMismatch, "permutations differ in size");
    }
    std::vector<std::size_t> m(size());
    for (std::size_t i = 0; i < size(); ++i) m[i] = map_[other.map_[i]];
    return Permutation(std::move(m));
  }

  /// Cycle decomposition; each cycle starts at its smallest element and the
  /// cycles are ordered by that element.
  std::vector<std::vector<std::size_t>> cycles() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<char> seen(size(), 0);
    for (std::size_t s = 0; s < size(); ++s) {
      if (seen[s]) continue;
      std::vector<std::size_t> c;
      for (std::size_t i = s; !seen[i]; i = map_[i]) {
        seen[i] = 1;
        c.push_back(i);
      }
      out.push_back(std::move(c));
    }
    return out;
  }

  std::size_t min_cycle_length() const {
    std::size_t best = size();
    for (const auto& c : cycles()) best = std::min(best, c.size());
    return best;
  }

  /// Action on vectors: (π v)_j = v_{π(j)}.
  template <class V>
  std::vector<V> apply(const std::vector<V>& v) const {
    if (v.size() != size()) {
      throw Error(ErrorKind::kDimensionMismatch, "vector length differs from permutation size");
    }
    std::vector<V> out;
    out.reserve(v.size());
    for (std::size_t j = 0; j < size(); ++j) out.push_back(v[map_[j]]);
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// Permutation matrix with (P)_{π(i), i} = 1.
inline IntMatrix permutation_matrix(const Permutation& p) {
  IntMatrix m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) m(p(i), i) = 1;
  return m;
}

}  // namespace nashrand
