#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace ca {

/// Krull dimension, with -infinity for the zero module / unit ideal so that
/// sums like dim M + dim N compare without special cases.
class Dimension {
 public:
  constexpr Dimension() = default;
  constexpr explicit Dimension(int value) : value_(value), finite_(true) {}
  static constexpr Dimension minus_infinity() { return Dimension(); }

  constexpr bool is_minus_infinity() const noexcept { return !finite_; }
  constexpr int value() const noexcept { return value_; }

  friend constexpr Dimension operator+(Dimension a, Dimension b) noexcept {
    if (!a.finite_ || !b.finite_) return minus_infinity();
    return Dimension(a.value_ + b.value_);
  }
  friend constexpr bool operator==(Dimension a, Dimension b) noexcept {
    return a.finite_ == b.finite_ && (!a.finite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Dimension a, Dimension b) noexcept {
    if (!a.finite_ || !b.finite_) return a.finite_ <=> b.finite_;
    return a.value_ <=> b.value_;
  }
  friend constexpr bool operator==(Dimension a, int b) noexcept { return a == Dimension(b); }
  friend constexpr std::strong_ordering operator<=>(Dimension a, int b) noexcept {
    return a <=> Dimension(b);
  }

  std::string to_string() const { return finite_ ? std::to_string(value_) : "-inf"; }

 private:
  int value_ = 0;
  bool finite_ = false;
};

inline std::ostream& operator<<(std::ostream& os, Dimension d) { return os << d.to_string(); }

/// Vector-space length; nullopt means infinite.
using Length = std::optional<std::int64_t>;

}  // namespace ca
