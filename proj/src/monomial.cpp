#include "ca/monomial.hpp"

#include <algorithm>
#include <limits>

#include "ca/error.hpp"

namespace ca {

namespace {

std::uint16_t checked_exponent(std::uint64_t e) {
  if (e > std::numeric_limits<std::uint16_t>::max())
    fail(ErrorCode::DegreeLimit, "exponent overflow (" + std::to_string(e) + ")");
  return static_cast<std::uint16_t>(e);
}

}  // namespace

Monomial::Monomial(std::span<const int> exponents) {
  if (exponents.size() > kMaxVars) fail(ErrorCode::InvalidArgument, "too many variables");
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (exponents[i] < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
    exp_[i] = checked_exponent(static_cast<std::uint64_t>(exponents[i]));
    degree_ += exp_[i];
  }
}

Monomial Monomial::variable(std::size_t index, int power) {
  Monomial m;
  m.exp_[index] = checked_exponent(static_cast<std::uint64_t>(power));
  m.degree_ = m.exp_[index];
  return m;
}

bool Monomial::divides(const Monomial& other) const noexcept {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exp_[i] > other.exp_[i]) return false;
  return true;
}

std::uint32_t Monomial::support() const noexcept {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (exp_[i] != 0) mask |= 1u << i;
  return mask;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    r.exp_[i] = checked_exponent(std::uint64_t{exp_[i]} + other.exp_[i]);
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::quotient_of(const Monomial& other) const noexcept {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp_[i] = other.exp_[i] - exp_[i];
  r.degree_ = other.degree_ - degree_;
  return r;
}

Monomial Monomial::pow(std::uint64_t e) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) r.exp_[i] = checked_exponent(exp_[i] * e);
  r.degree_ = static_cast<std::uint32_t>(degree_ * e);
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) noexcept {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
    r.degree_ += r.exp_[i];
  }
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) noexcept {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.exp_[i] = std::min(a.exp_[i], b.exp_[i]);
    r.degree_ += r.exp_[i];
  }
  return r;
}

bool coprime(const Monomial& a, const Monomial& b) noexcept {
  return (a.support() & b.support()) == 0;
}

std::strong_ordering grevlex_compare(const Monomial& a, const Monomial& b) noexcept {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  for (std::size_t i = kMaxVars; i-- > 0;) {
    if (a[i] != b[i]) return b[i] <=> a[i];
  }
  return std::strong_ordering::equal;
}

std::strong_ordering lex_compare(const Monomial& a, const Monomial& b) noexcept {
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    if (a[i] != b[i]) return a[i] <=> b[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace ca
