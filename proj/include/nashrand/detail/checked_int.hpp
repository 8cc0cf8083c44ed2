#pragma once

#include <cstdint>
#include <exception>

namespace nashrand::detail {

struct ArithmeticOverflow : std::exception {
  const char* what() const noexcept override { return "int64 overflow"; }
};

// 64-bit integer that throws ArithmeticOverflow instead of wrapping. Used as
// the fast path of the fraction-free kernels; callers retry with mpz_class.
class Checked64 {
 public:
  constexpr Checked64(std::int64_t v = 0) : v_(v) {}  // NOLINT: implicit by intent

  constexpr std::int64_t value() const { return v_; }

  friend Checked64 operator+(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_add_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
    return r;
  }
  friend Checked64 operator-(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
    return r;
  }
  friend Checked64 operator*(Checked64 a, Checked64 b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a.v_, b.v_, &r)) throw ArithmeticOverflow{};
    return r;
  }
  friend Checked64 operator/(Checked64 a, Checked64 b) {
    if (b.v_ == -1 && a.v_ == INT64_MIN) throw ArithmeticOverflow{};
    return a.v_ / b.v_;
  }
  Checked64 operator-() const { return Checked64(0) - *this; }
  Checked64& operator+=(Checked64 o) { return *this = *this + o; }
  Checked64& operator-=(Checked64 o) { return *this = *this - o; }

  friend constexpr bool operator==(Checked64 a, Checked64 b) = default;
  friend constexpr auto operator<=>(Checked64 a, Checked64 b) = default;

 private:
  std::int64_t v_;
};

inline int sgn(Checked64 v) { return (v.value() > 0) - (v.value() < 0); }

}  // namespace nashrand::detail
