#include <gtest/gtest.h>

#include <random>

#include "ca/error.hpp"
#include "ca/polynomial.hpp"
#include "test_util.hpp"

using namespace ca;
using ca::testing::P;

namespace {

std::uint64_t binomial_mod(unsigned n, unsigned k, unsigned p) {
  // Exact integer binomial, reduced at the end.
  unsigned long long b = 1;
  for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b % p;
}

}  // namespace

TEST(PrimeField, RejectsComposite) {
  EXPECT_THROW(PrimeField(4), Error);
  EXPECT_THROW(PrimeField(1), Error);
  EXPECT_NO_THROW(PrimeField(2147483647));
}

TEST(PrimeField, AxiomsHoldOnSamples) {
  std::mt19937_64 rng(7);
  for (std::uint32_t p : {2u, 3u, 5u, 65521u, 2147483647u}) {
    PrimeField f(p);
    std::uniform_int_distribution<Coeff> d(0, p - 1);
    for (int i = 0; i < 300; ++i) {
      Coeff a = d(rng), b = d(rng), c = d(rng);
      EXPECT_EQ(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
      EXPECT_EQ(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
      EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
      EXPECT_EQ(f.add(a, f.neg(a)), 0u);
      EXPECT_EQ(f.sub(f.add(a, b), b), a);
      if (a != 0) {
        EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
      }
    }
  }
}

TEST(ParsePoly, ReducesCoefficientsModP) {
  PolyRing r(2, {"x", "y"});
  EXPECT_EQ(parse_poly("x^2 + 3*y^2", r), P(r, "x^2 + y^2"));
  EXPECT_EQ(to_string(parse_poly("x^2 + 3*y^2", r), r), "x^2 + y^2");
}

TEST(ParsePoly, ZeroLiteral) {
  PolyRing r(5, {"a", "b", "c"});
  EXPECT_TRUE(parse_poly("0", r).is_zero());
  EXPECT_EQ(to_string(parse_poly("0", r), r), "0");
  EXPECT_TRUE(parse_poly("2*a - 2*a", r).is_zero());
}

TEST(ParsePoly, CollectsLikeTerms) {
  PolyRing r(3, {"x", "y"});
  Poly f = parse_poly("x*y + y*x", r);
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f.lead().coeff, 2u);
  EXPECT_EQ(to_string(f, r), "2*x*y");
}

TEST(ParsePoly, Errors) {
  PolyRing r(2, {"x", "y"});
  EXPECT_THROW(parse_poly("x + w", r), Error);
  EXPECT_THROW(parse_poly("x +", r), Error);
  EXPECT_THROW(parse_poly("x ** y", r), Error);
  EXPECT_THROW(parse_poly("", r), Error);
  try {
    parse_poly("x + x^2", r, true);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHomogeneous);
  }
  try {
    parse_poly("x*w", r);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
  }
}

TEST(ParsePoly, PrintParsePrintIsFixedPoint) {
  std::mt19937_64 rng(11);
  PolyRing r(5, {"x", "y", "z"});
  for (int i = 0; i < 200; ++i) {
    Poly f = ca::testing::random_homogeneous(rng, r, static_cast<int>(rng() % 5), 6);
    std::string s = to_string(f, r);
    Poly g = parse_poly(s, r);
    EXPECT_EQ(f, g);
    EXPECT_EQ(to_string(g, r), s);
  }
}

TEST(ToString, FormatsConstantsAndPowers) {
  PolyRing r(7, {"x", "y"});
  EXPECT_EQ(to_string(P(r, "3*x^2*y + x*y^2 + 5"), r), "3*x^2*y + x*y^2 + 5");
  EXPECT_EQ(to_string(P(r, "y + x"), r, OrderKind::Lex), "x + y");
  EXPECT_EQ(to_string(P(r, "-1"), r), "6");
}

TEST(Frobenius, FreshmansDream) {
  PolyRing r(2, {"x", "y"});
  EXPECT_EQ(frobenius_power(P(r, "x + y"), 1), P(r, "x^2 + y^2"));
  Poly f = P(r, "x*y + y^2");
  EXPECT_EQ(frobenius_power(f, 0), f);
}

TEST(Frobenius, MatchesBinomialExpansion) {
  // (x + y)^9 over F_3 expanded by the binomial theorem.
  PolyRing r(3, {"x", "y"});
  std::vector<Term> terms;
  for (unsigned k = 0; k <= 9; ++k) {
    Coeff c = static_cast<Coeff>(binomial_mod(9, k, 3));
    std::vector<int> e{static_cast<int>(9 - k), static_cast<int>(k)};
    terms.push_back({Monomial(e), c});
  }
  Poly oracle(r.field, terms);
  EXPECT_EQ(oracle, P(r, "x^9 + y^9"));
  EXPECT_EQ(frobenius_power(P(r, "x + y"), 2), oracle);
  EXPECT_EQ(P(r, "x + y").pow(9), oracle);
}

TEST(Frobenius, IsARingMap) {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    PolyRing r(p, {"x", "y", "z"});
    for (int i = 0; i < 40; ++i) {
      Poly f = ca::testing::random_homogeneous(rng, r, 1 + static_cast<int>(rng() % 2));
      Poly g = ca::testing::random_homogeneous(rng, r, 1 + static_cast<int>(rng() % 2));
      unsigned n = 1 + static_cast<unsigned>(rng() % 2);
      EXPECT_EQ(frobenius_power(f * g, n), frobenius_power(f, n) * frobenius_power(g, n));
      EXPECT_EQ(frobenius_power(f + g, n), frobenius_power(f, n) + frobenius_power(g, n));
      EXPECT_EQ(frobenius_power(f, 1), f.pow(p));
    }
  }
}

TEST(MonomialOrder, Examples) {
  Monomial xy = Monomial::variable(0) * Monomial::variable(1);
  Monomial x2 = Monomial::variable(0, 2);
  EXPECT_EQ(grevlex_compare(x2, xy), std::strong_ordering::greater);
  EXPECT_EQ(compare(OrderKind::Lex, xy, xy), std::strong_ordering::equal);
  EXPECT_EQ(compare(OrderKind::Lex, Monomial::variable(0), Monomial::variable(1, 3)),
            std::strong_ordering::greater);
  // grevlex breaks ties on the last variable: x*z < y^2 in F[x,y,z].
  Monomial xz = Monomial::variable(0) * Monomial::variable(2);
  EXPECT_EQ(grevlex_compare(xz, Monomial::variable(1, 2)), std::strong_ordering::less);
}

TEST(MonomialOrder, TotalAndMultiplicative) {
  std::mt19937_64 rng(5);
  for (OrderKind order : {OrderKind::Grevlex, OrderKind::Lex}) {
    for (int i = 0; i < 2000; ++i) {
      Monomial a = ca::testing::random_monomial(rng, 3, 3);
      Monomial b = ca::testing::random_monomial(rng, 3, 3);
      Monomial c = ca::testing::random_monomial(rng, 3, 3);
      auto ab = compare(order, a, b);
      EXPECT_EQ(ab, 0 <=> compare(order, b, a));
      EXPECT_EQ(ab == 0, a == b);
      if (ab < 0 && compare(order, b, c) < 0) {
        EXPECT_TRUE(compare(order, a, c) < 0);
      }
      EXPECT_EQ(compare(order, a * c, b * c), ab);
      EXPECT_TRUE(compare(order, a * c, a) >= 0);
    }
  }
}
