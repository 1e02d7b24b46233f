#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ca/field.hpp"
#include "ca/monomial.hpp"

namespace ca {

/// Coefficient field plus variable names.
struct PolyRing {
  PolyRing(std::uint64_t p, std::vector<std::string> names);

  PrimeField field;
  std::vector<std::string> variables;

  std::size_t nvars() const noexcept { return variables.size(); }
  friend bool operator==(const PolyRing&, const PolyRing&) = default;
};

struct Term {
  Monomial mono;
  Coeff coeff;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Sparse polynomial over F_p.  Terms are kept strictly descending in grevlex
/// with no zero coefficients, so equality is structural.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const PrimeField& field) : field_(field) {}
  Poly(const PrimeField& field, std::vector<Term> terms);

  static Poly constant(const PrimeField& field, std::int64_t c);
  static Poly monomial(const PrimeField& field, const Monomial& m, Coeff c = 1);
  static Poly variable(const PrimeField& field, std::size_t index);

  const PrimeField& field() const noexcept { return field_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  const Term& lead() const { return terms_.front(); }

  /// Total degree of the leading term (-1 for zero).
  int degree() const noexcept { return terms_.empty() ? -1 : terms_.front().mono.degree(); }
  bool is_homogeneous() const noexcept;
  bool is_constant() const noexcept { return terms_.empty() || terms_.front().mono.is_one(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(Coeff c) const;
  Poly times(const Monomial& m, Coeff c) const;
  Poly pow(std::uint64_t e) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  /// Value at a point of F_p^n.
  Coeff evaluate(std::span<const Coeff> point) const noexcept;

  friend bool operator==(const Poly& a, const Poly& b) noexcept { return a.terms_ == b.terms_; }

 private:
  PrimeField field_{2};
  std::vector<Term> terms_;
};

/// f^(p^nsteps), computed term-wise: (sum c m)^q = sum c^q m^q in characteristic p.
Poly frobenius_power(const Poly& f, unsigned nsteps);

/// Parses the interchange grammar
///   poly := term (('+'|'-') term)* ;  term := [int '*'] factor ('*' factor)* | int
///   factor := var ['^' nat]
/// Coefficients are reduced mod p.  Throws Error(Parse) and, when
/// require_homogeneous is set, Error(NotHomogeneous).
Poly parse_poly(std::string_view text, const PolyRing& ring, bool require_homogeneous = false);

/// Canonical text: terms descending in the given order, coefficient 1 elided,
/// '*' and '^' explicit, " + " separators, "0" for zero.
std::string to_string(const Poly& f, const PolyRing& ring, OrderKind order = OrderKind::Grevlex);

}  // namespace ca
