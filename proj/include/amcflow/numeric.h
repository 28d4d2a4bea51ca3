// Exact integer helpers: an extended integer with explicit infinities and
// overflow-checked arithmetic.

#ifndef AMCFLOW_NUMERIC_H_
#define AMCFLOW_NUMERIC_H_

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace amcflow {

// Largest magnitude accepted for costs, durations, capacities and supplies.
inline constexpr int64_t kMaxMagnitude = int64_t{1} << 40;

inline int64_t CheckedAdd(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in addition");
  }
  return r;
}

inline int64_t CheckedSub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in subtraction");
  }
  return r;
}

inline int64_t CheckedMul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw std::overflow_error("integer overflow in multiplication");
  }
  return r;
}

// An integer, +infinity or -infinity. Infinity is a distinct state, never a
// large sentinel number.
class ExtendedInt {
 public:
  constexpr ExtendedInt() = default;
  constexpr ExtendedInt(int64_t v) : value_(v) {}  // NOLINT: implicit by design

  static constexpr ExtendedInt PosInf() { return ExtendedInt(Kind::kPosInf); }
  static constexpr ExtendedInt NegInf() { return ExtendedInt(Kind::kNegInf); }

  constexpr bool is_finite() const { return kind_ == Kind::kFinite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::kPosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::kNegInf; }

  int64_t value() const {
    if (!is_finite()) throw std::logic_error("value() of an infinite ExtendedInt");
    return value_;
  }

  constexpr std::strong_ordering operator<=>(const ExtendedInt& o) const {
    if (kind_ != o.kind_) return Rank() <=> o.Rank();
    if (kind_ != Kind::kFinite) return std::strong_ordering::equal;
    return value_ <=> o.value_;
  }
  constexpr bool operator==(const ExtendedInt& o) const {
    return (*this <=> o) == std::strong_ordering::equal;
  }

  // Sum; mixing opposite infinities is an error.
  friend ExtendedInt operator+(const ExtendedInt& a, const ExtendedInt& b) {
    if (a.is_finite() && b.is_finite()) return CheckedAdd(a.value_, b.value_);
    if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
      throw std::logic_error("inf - inf");
    }
    return a.is_finite() ? b : a;
  }
  friend ExtendedInt operator-(const ExtendedInt& a, const ExtendedInt& b) {
    return a + (-b);
  }
  constexpr ExtendedInt operator-() const {
    switch (kind_) {
      case Kind::kPosInf: return NegInf();
      case Kind::kNegInf: return PosInf();
      default: return ExtendedInt(-value_);
    }
  }

  std::string ToString() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    return std::to_string(value_);
  }

 private:
  enum class Kind : uint8_t { kNegInf, kFinite, kPosInf };
  constexpr explicit ExtendedInt(Kind k) : kind_(k) {}
  constexpr int Rank() const { return static_cast<int>(kind_); }

  Kind kind_ = Kind::kFinite;
  int64_t value_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const ExtendedInt& v) {
  return os << v.ToString();
}

inline ExtendedInt Min(const ExtendedInt& a, const ExtendedInt& b) {
  return b < a ? b : a;
}

}  // namespace amcflow

#endif  // AMCFLOW_NUMERIC_H_
