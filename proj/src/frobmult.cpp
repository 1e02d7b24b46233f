#include "ca/frobmult.hpp"

#include <random>
#include <string>

#include "ca/error.hpp"
#include "ca/koszul.hpp"

namespace ca {

FgModule frobenius_module(const FgModule& m, unsigned nsteps) {
  if (nsteps == 0) return m;
  return FgModule(m.ring_ptr(), m.presentation().frobenius(nsteps));
}

FreeComplex frobenius_complex(const FreeComplex& c, unsigned nsteps) {
  if (nsteps == 0) return c;
  FreeComplex out;
  out.ring = c.ring;
  std::uint64_t q = 1;
  for (unsigned s = 0; s < nsteps; ++s) q *= c.ring->field().characteristic();
  for (const auto& d : c.degrees) {
    std::vector<int> scaled;
    for (int x : d) scaled.push_back(static_cast<int>(x * static_cast<std::int64_t>(q)));
    out.degrees.push_back(std::move(scaled));
  }
  for (const PolyMatrix& m : c.maps) out.maps.push_back(m.frobenius(nsteps));
  return out;
}

namespace {

std::int64_t power_checked(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > INT64_MAX / base) fail(ErrorCode::InvalidArgument, "normalizing power overflows 64 bits");
    r *= base;
  }
  return r;
}

// Comparisons stay within Rational: mixing in int literals recurses under
// C++20's reversed operator== for boost::rational.
const Rational kZero(0);

Rational abs(Rational r) { return r < kZero ? -r : r; }

int codim_of(const FgModule& m) {
  Dimension r = dimension(m);
  if (r.is_minus_infinity()) fail(ErrorCode::ZeroModule, "the module is zero");
  return m.ring().dimension().value() - r.value();
}

template <class RawFn>
LimitReport limit_report(LimitKind kind, const FgModule& m, const LimitOptions& options, RawFn&& raw) {
  LimitReport rep;
  rep.kind = kind;
  rep.codim = codim_of(m);
  rep.thresholds = options.thresholds;
  const int nmax = options.nmax >= 0 ? options.nmax : default_nmax(m.ring());
  const auto p = static_cast<std::int64_t>(m.ring().field().characteristic());
  rep.values.resize(static_cast<std::size_t>(nmax) + 1);
  for_each_index(options.exec, rep.values.size(), [&](std::size_t i) {
    const int n = static_cast<int>(i);
    LimitValue& v = rep.values[i];
    v.n = n;
    v.raw = raw(static_cast<unsigned>(n));
    v.normalized = Rational(v.raw, power_checked(p, n * rep.codim));
  });
  rep.verdict = classify(rep.values, rep.thresholds);
  return rep;
}

}  // namespace

LimitVerdict classify(std::span<const LimitValue> values, const LimitThresholds& t) {
  if (values.size() < 2) return LimitVerdict::Inconclusive;
  const Rational last = values.back().normalized;
  const Rational prev = values[values.size() - 2].normalized;
  if (last >= t.positive_min && abs(last - prev) <= t.stability) return LimitVerdict::Positive;
  if (abs(last) <= t.zero_max) {
    bool decays = prev == kZero ? last == kZero : abs(last / prev) <= t.decay_ratio;
    if (decays) return LimitVerdict::Zero;
  }
  return LimitVerdict::Inconclusive;
}

int default_nmax(const QuotientRing& ring) { return ring.field().characteristic() == 2 ? 3 : 2; }

LimitReport chi_infinity(const FgModule& m, std::span<const Poly> ideal, const LimitOptions& options) {
  if (!length(tensor_cyclic(m, ideal))) fail(ErrorCode::InfiniteIntersection, "M / JM has infinite length");
  std::vector<Poly> j(ideal.begin(), ideal.end());
  if (options.recompute) {
    return limit_report(LimitKind::Chi, m, options, [&](unsigned n) {
      return chi(frobenius_module(m, n), j, options.cutoff);
    });
  }
  Resolution res = free_resolution(m, Over::A, options.cutoff);
  if (!res.complete)
    fail(ErrorCode::PdCutoff, "no finite resolution within cutoff " + std::to_string(res.cutoff));
  return limit_report(LimitKind::Chi, m, options, [&](unsigned n) {
    return chi(frobenius_complex(res.complex, n), j);
  });
}

LimitReport e_infinity(const FgModule& m, std::span<const Poly> seq, const LimitOptions& options) {
  SopCertificates c = is_sop(seq, m);
  if (!c.sop_for_m.value_or(false)) fail(ErrorCode::NotSop, "the sequence is not a system of parameters for M");
  std::vector<Poly> x(seq.begin(), seq.end());
  return limit_report(LimitKind::E, m, options, [&](unsigned n) { return multiplicity(x, frobenius_module(m, n)); });
}

// ------------------------------------------------------------------- sop

namespace {

bool higher_koszul_finite(std::span<const Poly> seq, const RingPtr& ring) {
  if (seq.empty()) return true;
  FreeComplex k = koszul_complex(seq, ring);
  for (std::size_t t = 1; t <= seq.size(); ++t)
    if (!length(homology(k, t))) return false;
  return true;
}

// Checks (a) and (b) for the prefix ending at seq.back().
bool prefix_ok(std::span<const Poly> seq, const FgModule& m, int r, int d) {
  const int i = static_cast<int>(seq.size());
  if (dimension(tensor_cyclic(m, seq)) != Dimension(r - i)) return false;
  return dimension(m.ring(), seq) == Dimension(d - i);
}

Poly dense_random_form(std::mt19937_64& rng, const QuotientRing& ring, int degree) {
  const auto p = static_cast<Coeff>(ring.field().characteristic());
  std::uniform_int_distribution<Coeff> coeff(0, p - 1);
  std::vector<int> e(ring.nvars(), 0);
  Poly f(ring.field());
  auto rec = [&](auto&& self, std::size_t var, int rem) -> void {
    if (var + 1 == ring.nvars()) {
      e[var] = rem;
      Coeff c = coeff(rng);
      if (c) f += Poly::monomial(ring.field(), Monomial(e), c);
      return;
    }
    for (int k = rem; k >= 0; --k) {
      e[var] = k;
      self(self, var + 1, rem - k);
    }
  };
  rec(rec, 0, degree);
  return f;
}

}  // namespace

SopCertificates is_sop(std::span<const Poly> seq, const FgModule& m) {
  SopCertificates out;
  Dimension dm = dimension(m);
  const int d = m.ring().dimension().value();
  if (dm.is_minus_infinity() || static_cast<int>(seq.size()) != dm.value()) {
    out.sop_for_m = false;
    return out;
  }
  const int r = dm.value();
  bool a = true, b = true;
  for (std::size_t i = 1; i <= seq.size(); ++i) {
    auto prefix = seq.first(i);
    a = a && dimension(tensor_cyclic(m, prefix)) == Dimension(r - static_cast<int>(i));
    b = b && dimension(m.ring(), prefix) == Dimension(d - static_cast<int>(i));
  }
  out.sop_for_m = a;
  if (!a) return out;
  out.part_of_sop_for_a = b;
  out.higher_koszul_finite = higher_koszul_finite(seq, m.ring_ptr());
  return out;
}

ParamSeq find_sop(const FgModule& m, std::uint64_t seed, int max_tries) {
  Dimension dm = dimension(m);
  if (dm.is_minus_infinity()) fail(ErrorCode::ZeroModule, "sop of the zero module");
  const int r = dm.value();
  const int d = m.ring().dimension().value();
  const QuotientRing& ring = m.ring();
  const std::size_t n = ring.nvars();
  std::mt19937_64 rng(seed);
  int tries = 0;
  auto charge = [&] {
    if (++tries > max_tries)
      fail(ErrorCode::TriesExhausted, "no system of parameters after " + std::to_string(max_tries) + " candidates");
  };
  for (int attempt = 0;; ++attempt) {
    std::vector<Poly> seq;
    while (static_cast<int>(seq.size()) < r) {
      bool found = false;
      if (attempt == 0) {
        for (std::size_t v = n; v-- > 0 && !found;) {
          charge();
          seq.push_back(Poly::variable(ring.field(), v));
          if (prefix_ok(seq, m, r, d)) found = true;
          else seq.pop_back();
        }
      }
      for (int k = 0; !found; ++k) {
        charge();
        Poly f = dense_random_form(rng, ring, 1 + k / static_cast<int>(4 * n));
        if (f.is_zero()) continue;
        seq.push_back(std::move(f));
        if (prefix_ok(seq, m, r, d)) found = true;
        else seq.pop_back();
      }
    }
    if (higher_koszul_finite(seq, m.ring_ptr())) {
      ParamSeq out;
      out.elements = std::move(seq);
      out.certificates = {true, true, true};
      return out;
    }
    charge();
  }
}

// -------------------------------------------------------- associativity

bool AssociativityReport::all_equal() const noexcept {
  for (const auto& row : rows)
    if (!row.equal) return false;
  return true;
}

AssociativityReport associativity_check(const FgModule& m, std::span<const Poly> seq,
                                        std::span<const PrimeDatum> primes, int nmax, Exec exec) {
  Dimension dm = dimension(m);
  AssociativityReport rep;
  for (const PrimeDatum& p : primes) {
    Dimension dp = dimension(m.ring(), p.ideal);
    if (dp != dm)
      fail(ErrorCode::DimMismatch, "dim A/" + p.name + " = " + dp.to_string() + " but dim M = " + dm.to_string());
    if (static_cast<int>(p.lengths.size()) < nmax + 1)
      fail(ErrorCode::InvalidArgument, "prime " + p.name + " has lengths only up to n = " +
                                           std::to_string(static_cast<int>(p.lengths.size()) - 1));
    rep.prime_multiplicities.push_back(multiplicity(seq, FgModule::cyclic(m.ring_ptr(), p.ideal)));
  }
  rep.rows.resize(static_cast<std::size_t>(nmax) + 1);
  std::vector<Poly> x(seq.begin(), seq.end());
  for_each_index(exec, rep.rows.size(), [&](std::size_t n) {
    AssociativityRow& row = rep.rows[n];
    row.n = static_cast<int>(n);
    row.engine = multiplicity(x, frobenius_module(m, static_cast<unsigned>(n)));
    for (std::size_t k = 0; k < primes.size(); ++k) row.predicted += rep.prime_multiplicities[k] * primes[k].lengths[n];
    row.equal = row.engine == row.predicted;
  });
  return rep;
}

const char* to_string(LimitKind k) { return k == LimitKind::Chi ? "chi" : "e"; }

const char* to_string(LimitVerdict v) {
  switch (v) {
    case LimitVerdict::Positive: return "positive";
    case LimitVerdict::Zero: return "zero";
    case LimitVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace ca
