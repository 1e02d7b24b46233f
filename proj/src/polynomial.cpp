#include "ca/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "ca/error.hpp"

namespace ca {

namespace {

bool term_greater(const Term& a, const Term& b) noexcept {
  return grevlex_compare(a.mono, b.mono) == std::strong_ordering::greater;
}

// Sorts descending and merges equal monomials, dropping zero sums.
std::vector<Term> normalize(const PrimeField& field, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const Term& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = field.add(out.back().coeff, t.coeff);
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff != 0) {
      out.push_back(t);
    }
  }
  return out;
}

// a + c*b for descending term lists.
std::vector<Term> merge_axpy(const PrimeField& field, const std::vector<Term>& a, Coeff c,
                             const std::vector<Term>& b) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size()) {
      out.push_back(a[i++]);
      continue;
    }
    if (i == a.size()) {
      Coeff v = field.mul(c, b[j].coeff);
      if (v != 0) out.push_back({b[j].mono, v});
      ++j;
      continue;
    }
    auto cmp = grevlex_compare(a[i].mono, b[j].mono);
    if (cmp == std::strong_ordering::greater) {
      out.push_back(a[i++]);
    } else if (cmp == std::strong_ordering::less) {
      Coeff v = field.mul(c, b[j].coeff);
      if (v != 0) out.push_back({b[j].mono, v});
      ++j;
    } else {
      Coeff v = field.add(a[i].coeff, field.mul(c, b[j].coeff));
      if (v != 0) out.push_back({a[i].mono, v});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

PolyRing::PolyRing(std::uint64_t p, std::vector<std::string> names)
    : field(p), variables(std::move(names)) {
  if (variables.size() > kMaxVars)
    fail(ErrorCode::InvalidArgument, "at most " + std::to_string(kMaxVars) + " variables supported");
  for (std::size_t i = 0; i < variables.size(); ++i) {
    const std::string& v = variables[i];
    if (v.empty() || !std::isalpha(static_cast<unsigned char>(v[0])))
      fail(ErrorCode::Parse, "invalid variable name '" + v + "'");
    for (char ch : v)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
        fail(ErrorCode::Parse, "invalid variable name '" + v + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (variables[j] == v) fail(ErrorCode::Parse, "duplicate variable '" + v + "'");
  }
}

Poly::Poly(const PrimeField& field, std::vector<Term> terms)
    : field_(field), terms_(normalize(field, std::move(terms))) {}

Poly Poly::constant(const PrimeField& field, std::int64_t c) {
  return monomial(field, Monomial{}, field.from_int(c));
}

Poly Poly::monomial(const PrimeField& field, const Monomial& m, Coeff c) {
  Poly f(field);
  c %= field.characteristic();
  if (c != 0) f.terms_.push_back({m, c});
  return f;
}

Poly Poly::variable(const PrimeField& field, std::size_t index) {
  return monomial(field, Monomial::variable(index), 1);
}

bool Poly::is_homogeneous() const noexcept {
  for (const Term& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r(field_);
  r.terms_ = merge_axpy(field_, terms_, 1, o.terms_);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r(field_);
  r.terms_ = merge_axpy(field_, terms_, field_.neg(1), o.terms_);
  return r;
}

Poly Poly::operator-() const { return scaled(field_.neg(1)); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(field_);
  if (o.size() == 1) return times(o.lead().mono, o.lead().coeff);
  if (size() == 1) return o.times(lead().mono, lead().coeff);
  std::vector<Term> prod;
  prod.reserve(size() * o.size());
  for (const Term& a : terms_)
    for (const Term& b : o.terms_) prod.push_back({a.mono * b.mono, field_.mul(a.coeff, b.coeff)});
  return Poly(field_, std::move(prod));
}

Poly Poly::scaled(Coeff c) const {
  Poly r(field_);
  if (c % field_.characteristic() == 0) return r;
  r.terms_ = terms_;
  for (Term& t : r.terms_) t.coeff = field_.mul(t.coeff, c);
  return r;
}

Poly Poly::times(const Monomial& m, Coeff c) const {
  Poly r(field_);
  if (c % field_.characteristic() == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) r.terms_.push_back({t.mono * m, field_.mul(t.coeff, c)});
  return r;
}

Poly Poly::pow(std::uint64_t e) const {
  Poly result = constant(field_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

Coeff Poly::evaluate(std::span<const Coeff> point) const noexcept {
  Coeff total = 0;
  for (const Term& t : terms_) {
    Coeff v = t.coeff;
    for (std::size_t i = 0; i < point.size() && v != 0; ++i)
      if (t.mono[i] != 0) v = field_.mul(v, field_.pow(point[i], static_cast<std::uint64_t>(t.mono[i])));
    total = field_.add(total, v);
  }
  return total;
}

Poly frobenius_power(const Poly& f, unsigned nsteps) {
  if (nsteps == 0) return f;
  const PrimeField& field = f.field();
  std::uint64_t q = 1;
  for (unsigned i = 0; i < nsteps; ++i) q *= field.characteristic();
  std::vector<Term> terms;
  terms.reserve(f.size());
  // Raising to the q-th power preserves the monomial order, and c^q = c in F_p.
  for (const Term& t : f.terms()) terms.push_back({t.mono.pow(q), field.pow(t.coeff, q)});
  return Poly(field, std::move(terms));
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const PolyRing& ring) : text_(text), ring_(ring) {}

  Poly parse() {
    std::vector<Term> terms;
    skip_ws();
    if (at_end()) error("empty polynomial");
    bool negate = false;
    if (peek() == '-') {
      negate = true;
      ++pos_;
    } else if (peek() == '+') {
      ++pos_;
    }
    while (true) {
      Term t = parse_term();
      if (negate) t.coeff = ring_.field.neg(t.coeff);
      terms.push_back(t);
      skip_ws();
      if (at_end()) break;
      char c = peek();
      if (c != '+' && c != '-') error(std::string("unexpected '") + c + "'");
      negate = c == '-';
      ++pos_;
    }
    return Poly(ring_.field, std::move(terms));
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::Parse, what + " at column " + std::to_string(pos_ + 1) + " in \"" +
                               std::string(text_) + "\"");
  }

  std::uint64_t parse_nat() {
    skip_ws();
    if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) error("expected number");
    std::uint64_t v = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (v > (1ULL << 40)) error("number too large");
      ++pos_;
    }
    return v;
  }

  Term parse_term() {
    Coeff coeff = 1;
    Monomial mono;
    bool first = true;
    while (true) {
      skip_ws();
      if (at_end()) error("expected factor");
      char c = peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::uint64_t v = parse_nat();
        coeff = ring_.field.mul(coeff, static_cast<Coeff>(v % ring_.field.characteristic()));
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        auto it = std::find(ring_.variables.begin(), ring_.variables.end(), name);
        if (it == ring_.variables.end()) {
          pos_ = start;
          error("unknown variable '" + name + "'");
        }
        std::uint64_t e = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          e = parse_nat();
        }
        mono = mono * Monomial::variable(static_cast<std::size_t>(it - ring_.variables.begin()),
                                         static_cast<int>(e));
      } else {
        error(first ? std::string("unexpected '") + c + "'" : "expected factor after '*'");
      }
      first = false;
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      return {mono, coeff};
    }
  }

  std::string_view text_;
  const PolyRing& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const PolyRing& ring, bool require_homogeneous) {
  Poly f = PolyParser(text, ring).parse();
  if (require_homogeneous && !f.is_homogeneous())
    fail(ErrorCode::NotHomogeneous, "polynomial \"" + std::string(text) + "\" is not homogeneous");
  return f;
}

std::string to_string(const Poly& f, const PolyRing& ring, OrderKind order) {
  if (f.is_zero()) return "0";
  std::vector<Term> terms = f.terms();
  if (order == OrderKind::Lex)
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return lex_compare(a.mono, b.mono) == std::strong_ordering::greater;
    });
  std::ostringstream out;
  bool first_term = true;
  for (const Term& t : terms) {
    if (!first_term) out << " + ";
    first_term = false;
    bool need_star = false;
    if (t.coeff != 1 || t.mono.is_one()) {
      out << t.coeff;
      need_star = true;
    }
    for (std::size_t i = 0; i < ring.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (need_star) out << '*';
      out << ring.variables[i];
      if (t.mono[i] != 1) out << '^' << t.mono[i];
      need_star = true;
    }
  }
  return out.str();
}

}  // namespace ca
