#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>

namespace ca {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector in at most kMaxVars variables with cached total degree.
/// Unused trailing slots are zero, so monomials over different variable
/// counts compare consistently.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::span<const int> exponents);

  static Monomial variable(std::size_t index, int power = 1);

  int operator[](std::size_t i) const noexcept { return exp_[i]; }
  int degree() const noexcept { return static_cast<int>(degree_); }
  bool is_one() const noexcept { return degree_ == 0; }

  bool divides(const Monomial& other) const noexcept;
  /// Bitmask of variables with positive exponent.
  std::uint32_t support() const noexcept;

  Monomial operator*(const Monomial& other) const;
  /// other / *this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const noexcept;
  Monomial pow(std::uint64_t e) const;

  friend Monomial lcm(const Monomial& a, const Monomial& b) noexcept;
  friend Monomial gcd(const Monomial& a, const Monomial& b) noexcept;
  friend bool coprime(const Monomial& a, const Monomial& b) noexcept;
  friend bool operator==(const Monomial& a, const Monomial& b) noexcept {
    return a.exp_ == b.exp_;
  }

 private:
  std::array<std::uint16_t, kMaxVars> exp_{};
  std::uint32_t degree_ = 0;
};

enum class OrderKind { Grevlex, Lex };

/// Graded reverse lexicographic comparison (the engine's working order).
std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b) noexcept;
std::strong_ordering lex_compare(const Monomial& a, const Monomial& b) noexcept;

inline std::strong_ordering compare(OrderKind order, const Monomial& a,
                                    const Monomial& b) noexcept {
  return order == OrderKind::Grevlex ? grevlex_compare(a, b) : lex_compare(a, b);
}

}  // namespace ca
