#include "ca/corpus.hpp"

#include <algorithm>
#include <stdexcept>

namespace ca {

Poly random_form(std::mt19937_64& rng, const PolyRing& ring, int degree, int max_terms, double zero_chance) {
  if (zero_chance > 0 && std::uniform_real_distribution<double>(0, 1)(rng) < zero_chance) return Poly(ring.field);
  const auto p = static_cast<Coeff>(ring.field.characteristic());
  std::uniform_int_distribution<Coeff> coeff(1, p - 1);
  std::uniform_int_distribution<std::size_t> var(0, ring.nvars() - 1);
  std::uniform_int_distribution<int> count(1, max_terms);
  Poly f(ring.field);
  for (int t = count(rng); t > 0; --t) {
    Monomial m;
    for (int k = 0; k < degree; ++k) m = m * Monomial::variable(var(rng));
    f += Poly::monomial(ring.field, m, coeff(rng));
  }
  return f;
}

namespace {

int max_entry_degree(const PolyMatrix& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = std::max(d, m.at(i, j).degree());
  return d;
}

FreeComplex random_complex(std::mt19937_64& rng, std::size_t index, std::uint64_t fixed_p, std::size_t nvars) {
  static const std::uint64_t primes[] = {2, 3, 5};
  const std::uint64_t p = fixed_p != 0 ? fixed_p : primes[index % 3];
  const bool three = nvars != 0 ? nvars == 3 : index % 2 == 1;
  PolyRing base(p, three ? std::vector<std::string>{"x", "y", "z"} : std::vector<std::string>{"x", "y"});
  auto ring = std::make_shared<QuotientRing>(base, std::vector<Poly>{}, true);
  std::uniform_int_distribution<int> small(1, 3), deg(1, 2);

  if (index % 4 == 0) {
    // Koszul complex on two random forms: exact iff they form a regular sequence.
    std::vector<Poly> seq{random_form(rng, base, deg(rng)), random_form(rng, base, deg(rng))};
    if (seq[0].is_zero() || seq[1].is_zero()) seq = {Poly::variable(base.field, 0), Poly::variable(base.field, 1)};
    if (index % 8 == 4) seq[1] = seq[0] * Poly::variable(base.field, 1);  // never regular
    return koszul_complex(seq, ring);
  }

  const std::size_t b0 = static_cast<std::size_t>(std::uniform_int_distribution<int>(1, 2)(rng));
  const std::size_t b1 = static_cast<std::size_t>(small(rng));
  std::vector<int> c1;
  for (std::size_t j = 0; j < b1; ++j) c1.push_back(deg(rng));
  PolyMatrix d1(base.field, std::vector<int>(b0, 0), c1);
  for (std::size_t i = 0; i < b0; ++i)
    for (std::size_t j = 0; j < b1; ++j) d1.at(i, j) = random_form(rng, base, c1[j], 2, 0.3);

  PolyMatrix k = kernel(d1, *ring);
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < k.cols() && keep.size() < 3; ++j) {
    std::vector<std::size_t> one{j};
    if (max_entry_degree(k.select_columns(one)) <= 2) keep.push_back(j);
  }
  std::vector<PolyMatrix> maps{d1};
  if (!keep.empty()) {
    PolyMatrix d2 = k.select_columns(keep);
    // Sometimes drop a generator or scale one by a form so that H_1 survives.
    if (index % 3 == 1 && d2.cols() > 1) {
      std::vector<std::size_t> first{0};
      d2 = d2.select_columns(first);
    } else if (index % 3 == 2 && max_entry_degree(d2) <= 1) {
      std::vector<ModVec> cols;
      std::vector<int> degs;
      for (std::size_t j = 0; j < d2.cols(); ++j) {
        ModVec v;
        for (const ModTerm& t : d2.column(j)) v.push_back({t.mono * Monomial::variable(0), t.comp, t.coeff});
        cols.push_back(std::move(v));
        degs.push_back(d2.col_degrees()[j] + 1);
      }
      d2 = PolyMatrix::from_columns(base.field, d2.row_degrees(), cols, degs);
    }
    maps.push_back(d2);
  }
  return FreeComplex::from_maps(ring, std::move(maps));
}

}  // namespace

std::vector<FreeComplex> exactness_corpus(std::uint64_t seed, std::size_t count, std::uint64_t p,
                                          std::size_t nvars) {
  if (nvars != 0 && nvars != 2 && nvars != 3) throw std::invalid_argument("exactness_corpus: nvars must be 2 or 3");
  std::vector<FreeComplex> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    out.push_back(random_complex(rng, i, p, nvars));
  }
  return out;
}

std::vector<ExactnessReport> certify_corpus(const std::vector<FreeComplex>& corpus, std::uint64_t seed,
                                            Exec exec) {
  std::vector<ExactnessReport> out(corpus.size());
  ExactnessOptions opts;
  opts.exec = Exec::Serial;
  for_each_index(exec, corpus.size(), [&](std::size_t i) { out[i] = be_exactness(corpus[i], derive_seed(seed, i), opts); });
  return out;
}

}  // namespace ca
