#include "ca/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ca/error.hpp"

namespace ca {

std::strong_ordering pot_compare(const ModTerm& a, const ModTerm& b) noexcept {
  if (a.comp != b.comp) return b.comp <=> a.comp;
  return grevlex_compare(a.mono, b.mono);
}

namespace {

bool modterm_greater(const ModTerm& a, const ModTerm& b) noexcept {
  return pot_compare(a, b) == std::strong_ordering::greater;
}

}  // namespace

ModVec modvec_normalize(const PrimeField& field, ModVec terms) {
  std::sort(terms.begin(), terms.end(), modterm_greater);
  ModVec out;
  out.reserve(terms.size());
  for (const ModTerm& t : terms) {
    if (!out.empty() && out.back().comp == t.comp && out.back().mono == t.mono) {
      out.back().coeff = field.add(out.back().coeff, t.coeff);
      if (out.back().coeff == 0) out.pop_back();
    } else if (t.coeff != 0) {
      out.push_back(t);
    }
  }
  return out;
}

ModVec to_modvec(std::span<const Poly> coords) {
  ModVec v;
  for (std::size_t i = 0; i < coords.size(); ++i)
    for (const Term& t : coords[i].terms())
      v.push_back({t.mono, static_cast<std::uint32_t>(i), t.coeff});
  // Components ascend and each coordinate is already grevlex-descending.
  return v;
}

std::vector<Poly> to_coords(const ModVec& v, std::size_t rank, const PrimeField& field) {
  std::vector<std::vector<Term>> parts(rank);
  for (const ModTerm& t : v) parts.at(t.comp).push_back({t.mono, t.coeff});
  std::vector<Poly> out;
  out.reserve(rank);
  for (auto& p : parts) out.emplace_back(field, std::move(p));
  return out;
}

ModVec modvec_axpy(const PrimeField& field, const ModVec& a, Coeff c, const Monomial& m,
                   const ModVec& b) {
  ModVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  auto scaled = [&](std::size_t k) {
    return ModTerm{b[k].mono * m, b[k].comp, field.mul(c, b[k].coeff)};
  };
  while (i < a.size() && j < b.size()) {
    ModTerm t = scaled(j);
    auto cmp = pot_compare(a[i], t);
    if (cmp == std::strong_ordering::greater) {
      out.push_back(a[i++]);
    } else if (cmp == std::strong_ordering::less) {
      if (t.coeff != 0) out.push_back(t);
      ++j;
    } else {
      Coeff v = field.add(a[i].coeff, t.coeff);
      if (v != 0) out.push_back({a[i].mono, a[i].comp, v});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    ModTerm t = scaled(j);
    if (t.coeff != 0) out.push_back(t);
  }
  return out;
}

bool is_homogeneous(const FreeModuleSpace& space, const ModVec& v) noexcept {
  for (const ModTerm& t : v) {
    if (t.comp >= space.rank()) return false;
    if (space.degree_of(t) != space.degree_of(v.front())) return false;
  }
  return true;
}

SubmoduleGB::SubmoduleGB(FreeModuleSpace space, std::vector<ModVec> basis,
                         std::vector<std::size_t> minimal)
    : space_(std::move(space)), basis_(std::move(basis)), minimal_(std::move(minimal)) {}

namespace {

// Reducer lookup bucketed by leading component.
class ReducerIndex {
 public:
  explicit ReducerIndex(std::size_t rank) : by_comp_(rank) {}

  void add(std::uint32_t idx, const ModVec& v) { by_comp_[v.front().comp].push_back(idx); }

  const ModVec* find(const ModTerm& t, const std::vector<ModVec>& basis, std::uint32_t* which) const {
    for (std::uint32_t idx : by_comp_[t.comp]) {
      const ModTerm& lt = basis[idx].front();
      if (lt.mono.divides(t.mono)) {
        if (which) *which = idx;
        return &basis[idx];
      }
    }
    return nullptr;
  }

 private:
  std::vector<std::vector<std::uint32_t>> by_comp_;
};

// Full reduction.  Basis elements need not be monic.  When quotient is
// non-null, records v = sum quotient_k * basis_k + remainder.
ModVec reduce_full(const PrimeField& field, ModVec h, const std::vector<ModVec>& basis,
                   const ReducerIndex& index, ModVec* quotient) {
  ModVec rem;
  std::size_t start = 0;
  while (start < h.size()) {
    const ModTerm lead = h[start];
    std::uint32_t which = 0;
    const ModVec* g = index.find(lead, basis, &which);
    if (g == nullptr) {
      rem.push_back(lead);
      ++start;
      continue;
    }
    const ModTerm& glt = g->front();
    Monomial m = glt.mono.quotient_of(lead.mono);
    Coeff c = field.div(lead.coeff, glt.coeff);
    if (quotient) quotient->push_back({m, which, c});
    ModVec tail(h.begin() + static_cast<std::ptrdiff_t>(start), h.end());
    h = modvec_axpy(field, tail, field.neg(c), m, *g);
    start = 0;
  }
  return rem;
}

ModVec make_monic(const PrimeField& field, ModVec v) {
  if (v.empty() || v.front().coeff == 1) return v;
  Coeff inv = field.inv(v.front().coeff);
  for (ModTerm& t : v) t.coeff = field.mul(t.coeff, inv);
  return v;
}

bool single_component(const ModVec& v) noexcept {
  for (const ModTerm& t : v)
    if (t.comp != v.front().comp) return false;
  return true;
}

struct Pair {
  std::uint32_t i, j;
  int degree;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const FreeModuleSpace& space, const GbOptions& options)
      : space_(space), options_(options), index_(space.rank()) {}

  SubmoduleGB run(std::span<const GbInput> gens) {
    struct Pending {
      std::size_t input;
      int degree;
      bool ambient;
    };
    std::vector<Pending> queue;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const ModVec& v = gens[k].vec;
      if (v.empty()) continue;
      if (!is_homogeneous(space_, v))
        fail(ErrorCode::NotHomogeneous, "generator " + std::to_string(k) + " is not homogeneous");
      queue.push_back({k, space_.degree_of(v.front()), gens[k].ambient});
    }
    std::stable_sort(queue.begin(), queue.end(), [](const Pending& a, const Pending& b) {
      if (a.degree != b.degree) return a.degree < b.degree;
      return a.ambient && !b.ambient;
    });

    std::vector<std::size_t> minimal;
    std::size_t next_gen = 0;
    while (next_gen < queue.size() || !pairs_.empty()) {
      int degree = next_gen < queue.size() ? queue[next_gen].degree : 0;
      if (!pairs_.empty()) {
        int pd = min_pair_degree();
        if (next_gen >= queue.size() || pd < degree) degree = pd;
      }
      process_pairs_of_degree(degree);
      while (next_gen < queue.size() && queue[next_gen].degree == degree) {
        const Pending& item = queue[next_gen++];
        ModVec r = reduce_full(space_.field, gens[item.input].vec, basis_, index_, nullptr);
        if (r.empty()) continue;
        if (!item.ambient) minimal.push_back(item.input);
        insert(std::move(r));
      }
    }
    std::sort(minimal.begin(), minimal.end());
    return SubmoduleGB(space_, interreduce(), std::move(minimal));
  }

 private:
  int min_pair_degree() const {
    int d = pairs_.front().degree;
    for (const Pair& p : pairs_) d = std::min(d, p.degree);
    return d;
  }

  void process_pairs_of_degree(int degree) {
    std::vector<Pair> batch;
    std::vector<Pair> rest;
    for (Pair& p : pairs_) (p.degree == degree ? batch : rest).push_back(p);
    pairs_ = std::move(rest);
    std::sort(batch.begin(), batch.end(), [](const Pair& a, const Pair& b) {
      auto c = grevlex_compare(a.lcm, b.lcm);
      if (c != std::strong_ordering::equal) return c == std::strong_ordering::less;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    for (const Pair& p : batch) {
      pending_.erase({p.i, p.j});
      if (chain_criterion(p)) continue;
      if (p.lcm.degree() > options_.degree_cap)
        fail(ErrorCode::DegreeLimit, "S-pair degree " + std::to_string(p.lcm.degree()) +
                                         " exceeds cap " + std::to_string(options_.degree_cap));
      const ModVec& f = basis_[p.i];
      const ModVec& g = basis_[p.j];
      Monomial mf = f.front().mono.quotient_of(p.lcm);
      Monomial mg = g.front().mono.quotient_of(p.lcm);
      ModVec s = modvec_axpy(space_.field, ModVec{}, 1, mf, f);
      s = modvec_axpy(space_.field, s, space_.field.neg(1), mg, g);
      ModVec r = reduce_full(space_.field, std::move(s), basis_, index_, nullptr);
      if (!r.empty()) insert(std::move(r));
    }
  }

  bool chain_criterion(const Pair& p) const {
    std::uint32_t comp = basis_[p.i].front().comp;
    for (std::uint32_t k = 0; k < basis_.size(); ++k) {
      if (k == p.i || k == p.j) continue;
      const ModTerm& lt = basis_[k].front();
      if (lt.comp != comp || !lt.mono.divides(p.lcm)) continue;
      auto key = [](std::uint32_t a, std::uint32_t b) {
        return std::make_pair(std::min(a, b), std::max(a, b));
      };
      if (!pending_.count(key(p.i, k)) && !pending_.count(key(p.j, k))) return true;
    }
    return false;
  }

  void insert(ModVec v) {
    v = make_monic(space_.field, std::move(v));
    auto idx = static_cast<std::uint32_t>(basis_.size());
    const ModTerm& lt = v.front();
    for (std::uint32_t k = 0; k < idx; ++k) {
      const ModVec& other = basis_[k];
      const ModTerm& olt = other.front();
      if (olt.comp != lt.comp) continue;
      if (coprime(olt.mono, lt.mono) && single_component(other) && single_component(v)) continue;
      Monomial l = lcm(olt.mono, lt.mono);
      pairs_.push_back({k, idx, l.degree() + space_.shifts[lt.comp], l});
      pending_.insert({k, idx});
    }
    index_.add(idx, v);
    basis_.push_back(std::move(v));
  }

  std::vector<ModVec> interreduce() const {
    std::vector<ModVec> out;
    out.reserve(basis_.size());
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      const ModVec& g = basis_[k];
      // Leading terms are pairwise non-dividing, so only tails change.
      std::vector<ModVec> others;
      ReducerIndex idx(space_.rank());
      for (std::size_t m = 0; m < basis_.size(); ++m) {
        if (m == k) continue;
        idx.add(static_cast<std::uint32_t>(others.size()), basis_[m]);
        others.push_back(basis_[m]);
      }
      ModVec tail(g.begin() + 1, g.end());
      ModVec reduced = reduce_full(space_.field, std::move(tail), others, idx, nullptr);
      reduced.insert(reduced.begin(), g.front());
      out.push_back(std::move(reduced));
    }
    return out;
  }

  const FreeModuleSpace& space_;
  GbOptions options_;
  std::vector<ModVec> basis_;
  ReducerIndex index_;
  std::vector<Pair> pairs_;
  std::set<std::pair<std::uint32_t, std::uint32_t>> pending_;
};

ReducerIndex make_index(const SubmoduleGB& gb) {
  ReducerIndex idx(gb.space().rank());
  for (std::uint32_t k = 0; k < gb.basis().size(); ++k) idx.add(k, gb.basis()[k]);
  return idx;
}

}  // namespace

SubmoduleGB buchberger(const FreeModuleSpace& space, std::span<const GbInput> gens,
                       const GbOptions& options) {
  return Buchberger(space, options).run(gens);
}

SubmoduleGB buchberger(const FreeModuleSpace& space, std::span<const ModVec> gens,
                       const GbOptions& options) {
  std::vector<GbInput> inputs;
  inputs.reserve(gens.size());
  for (const ModVec& g : gens) inputs.push_back({g, false});
  return buchberger(space, inputs, options);
}

ModVec normal_form(const ModVec& v, const SubmoduleGB& gb) {
  return reduce_full(gb.space().field, v, gb.basis(), make_index(gb), nullptr);
}

bool contains(const SubmoduleGB& gb, const ModVec& v) { return normal_form(v, gb).empty(); }

Division divide(const ModVec& v, const SubmoduleGB& gb) {
  Division d;
  d.remainder = reduce_full(gb.space().field, v, gb.basis(), make_index(gb), &d.quotient);
  d.quotient = modvec_normalize(gb.space().field, std::move(d.quotient));
  return d;
}

std::vector<int> basis_degrees(const SubmoduleGB& gb) {
  std::vector<int> out;
  for (const ModVec& g : gb.basis()) out.push_back(gb.space().degree_of(g.front()));
  return out;
}

std::vector<ModVec> syzygies(const SubmoduleGB& gb) {
  const PrimeField& field = gb.space().field;
  const auto& basis = gb.basis();
  std::vector<ModVec> out;
  for (std::uint32_t i = 0; i < basis.size(); ++i) {
    for (std::uint32_t j = i + 1; j < basis.size(); ++j) {
      const ModTerm& a = basis[i].front();
      const ModTerm& b = basis[j].front();
      if (a.comp != b.comp) continue;
      Monomial l = lcm(a.mono, b.mono);
      Monomial ma = a.mono.quotient_of(l);
      Monomial mb = b.mono.quotient_of(l);
      Coeff ca = field.inv(a.coeff);
      Coeff cb = field.neg(field.inv(b.coeff));
      ModVec s = modvec_axpy(field, ModVec{}, ca, ma, basis[i]);
      s = modvec_axpy(field, s, cb, mb, basis[j]);
      Division d = divide(s, gb);
      if (!d.remainder.empty()) throw std::logic_error("syzygies: input is not a Gröbner basis");
      ModVec syz = d.quotient;
      for (ModTerm& t : syz) t.coeff = field.neg(t.coeff);
      syz.push_back({ma, i, ca});
      syz.push_back({mb, j, cb});
      syz = modvec_normalize(field, std::move(syz));
      if (!syz.empty()) out.push_back(std::move(syz));
    }
  }
  return out;
}

MonomialIdeal::MonomialIdeal(std::size_t n, std::vector<Monomial> g) : nvars(n) {
  // Keep only minimal generators, in a canonical order.
  std::sort(g.begin(), g.end(), [](const Monomial& a, const Monomial& b) {
    return grevlex_compare(a, b) == std::strong_ordering::less;
  });
  for (const Monomial& m : g) {
    bool redundant = false;
    for (const Monomial& kept : gens)
      if (kept.divides(m)) {
        redundant = true;
        break;
      }
    if (!redundant) gens.push_back(m);
  }
}

bool MonomialIdeal::contains(const Monomial& m) const noexcept {
  for (const Monomial& g : gens)
    if (g.divides(m)) return true;
  return false;
}

bool MonomialIdeal::is_unit() const noexcept {
  return std::any_of(gens.begin(), gens.end(), [](const Monomial& m) { return m.is_one(); });
}

MonomialIdeal leading_ideal(const SubmoduleGB& gb, std::uint32_t comp) {
  std::vector<Monomial> lts;
  for (const ModVec& g : gb.basis())
    if (g.front().comp == comp) lts.push_back(g.front().mono);
  return MonomialIdeal(gb.space().nvars, std::move(lts));
}

Dimension krull_dimension(const MonomialIdeal& lt) {
  if (lt.is_unit()) return Dimension::minus_infinity();
  std::vector<std::uint32_t> supports;
  for (const Monomial& m : lt.gens) supports.push_back(m.support());
  const std::uint32_t n = static_cast<std::uint32_t>(lt.nvars);
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int size = std::popcount(mask);
    if (size <= best) continue;
    bool independent = std::none_of(supports.begin(), supports.end(),
                                    [&](std::uint32_t s) { return (s & ~mask) == 0; });
    if (independent) best = size;
  }
  return Dimension(best);
}

namespace {

using IntPoly = std::vector<std::int64_t>;

IntPoly add_shifted(IntPoly a, const IntPoly& b, int shift) {
  if (a.size() < b.size() + static_cast<std::size_t>(shift)) a.resize(b.size() + shift, 0);
  for (std::size_t k = 0; k < b.size(); ++k) a[k + shift] += b[k];
  return a;
}

void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

IntPoly numerator_rec(std::vector<Monomial> gens, std::size_t nvars) {
  // Minimalize.
  MonomialIdeal ideal(nvars, std::move(gens));
  const auto& g = ideal.gens;
  if (g.empty()) return {1};
  bool pairwise_coprime = true;
  std::uint32_t seen = 0;
  for (const Monomial& m : g) {
    if (seen & m.support()) {
      pairwise_coprime = false;
      break;
    }
    seen |= m.support();
  }
  if (pairwise_coprime) {
    IntPoly result{1};
    for (const Monomial& m : g) {
      IntPoly factor(static_cast<std::size_t>(m.degree()) + 1, 0);
      factor[0] = 1;
      factor[m.degree()] -= 1;
      IntPoly prod(result.size() + factor.size() - 1, 0);
      for (std::size_t a = 0; a < result.size(); ++a)
        for (std::size_t b = 0; b < factor.size(); ++b) prod[a + b] += result[a] * factor[b];
      result = std::move(prod);
    }
    trim(result);
    return result;
  }
  // Pivot on the variable occurring in the most non-linear generators.
  std::size_t pivot = 0;
  int best = -1;
  for (std::size_t v = 0; v < nvars; ++v) {
    int count = 0;
    for (const Monomial& m : g)
      if (m[v] > 0 && m.degree() > 1) ++count;
    if (count > best) {
      best = count;
      pivot = v;
    }
  }
  Monomial x = Monomial::variable(pivot);
  // N(I) = N(I + (x)) + t * N(I : x)
  std::vector<Monomial> plus{x};
  std::vector<Monomial> colon;
  for (const Monomial& m : g) {
    if (m[pivot] == 0) plus.push_back(m);
    colon.push_back(m[pivot] > 0 ? x.quotient_of(m) : m);
  }
  IntPoly result = numerator_rec(std::move(plus), nvars);
  result = add_shifted(std::move(result), numerator_rec(std::move(colon), nvars), 1);
  trim(result);
  return result;
}

}  // namespace

std::vector<std::int64_t> hilbert_numerator(const MonomialIdeal& lt) {
  return numerator_rec(lt.gens, lt.nvars);
}

int vanishing_order_at_one(std::vector<std::int64_t> poly) {
  trim(poly);
  if (poly.size() == 1 && poly[0] == 0) throw std::invalid_argument("zero polynomial");
  int order = 0;
  while (true) {
    std::int64_t value = std::accumulate(poly.begin(), poly.end(), std::int64_t{0});
    if (value != 0) return order;
    // Divide by (1 - t): q_k = sum_{i<=k} p_i.
    std::vector<std::int64_t> q(poly.size() - 1);
    std::int64_t run = 0;
    for (std::size_t k = 0; k + 1 < poly.size(); ++k) {
      run += poly[k];
      q[k] = run;
    }
    poly = std::move(q);
    ++order;
  }
}

Dimension cokernel_dimension(const SubmoduleGB& gb) {
  Dimension best = Dimension::minus_infinity();
  for (std::uint32_t c = 0; c < gb.space().rank(); ++c)
    best = std::max(best, krull_dimension(leading_ideal(gb, c)));
  return best;
}

namespace {

// Calls f on every exponent vector of total degree `degree` in `nvars` variables.
template <class F>
void for_each_monomial(std::size_t nvars, int degree, F&& f) {
  std::vector<int> exps(nvars, 0);
  auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
    if (var + 1 == nvars) {
      exps[var] = remaining;
      f(Monomial(exps));
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      exps[var] = e;
      self(self, var + 1, remaining - e);
    }
  };
  if (nvars == 0) {
    if (degree == 0) f(Monomial{});
    return;
  }
  rec(rec, 0, degree);
}

}  // namespace

Length cokernel_length(const SubmoduleGB& gb) {
  if (cokernel_dimension(gb) > 0) return std::nullopt;
  std::int64_t total = 0;
  for (std::uint32_t c = 0; c < gb.space().rank(); ++c) {
    MonomialIdeal lt = leading_ideal(gb, c);
    for (int degree = 0;; ++degree) {
      std::int64_t count = 0;
      for_each_monomial(lt.nvars, degree, [&](const Monomial& m) {
        if (!lt.contains(m)) ++count;
      });
      if (count == 0) break;
      total += count;
    }
  }
  return total;
}

Length cokernel_length_via_hilbert(const SubmoduleGB& gb) {
  std::int64_t total = 0;
  for (std::uint32_t c = 0; c < gb.space().rank(); ++c) {
    MonomialIdeal lt = leading_ideal(gb, c);
    std::vector<std::int64_t> num = hilbert_numerator(lt);
    // HS = N / (1-t)^n must be a polynomial; its value at 1 is the length.
    for (std::size_t k = 0; k < lt.nvars; ++k) {
      std::int64_t at_one = std::accumulate(num.begin(), num.end(), std::int64_t{0});
      if (at_one != 0) return std::nullopt;
      if (num.size() <= 1) break;
      std::vector<std::int64_t> q(num.size() - 1);
      std::int64_t run = 0;
      for (std::size_t i = 0; i + 1 < num.size(); ++i) {
        run += num[i];
        q[i] = run;
      }
      num = std::move(q);
    }
    total += std::accumulate(num.begin(), num.end(), std::int64_t{0});
  }
  return total;
}

SubmoduleGB ideal_gb(const PrimeField& field, std::size_t nvars, std::span<const Poly> gens,
                     const GbOptions& options) {
  FreeModuleSpace space{field, nvars, {0}};
  std::vector<ModVec> vecs;
  for (const Poly& g : gens) vecs.push_back(to_modvec(std::span<const Poly>(&g, 1)));
  return buchberger(space, std::span<const ModVec>(vecs), options);
}

std::vector<Poly> basis_polys(const SubmoduleGB& gb) {
  std::vector<Poly> out;
  for (const ModVec& g : gb.basis()) out.push_back(to_coords(g, gb.space().rank(), gb.space().field)[0]);
  return out;
}

Poly reduce_poly(const Poly& f, const SubmoduleGB& ideal) {
  ModVec v = to_modvec(std::span<const Poly>(&f, 1));
  return to_coords(normal_form(v, ideal), 1, ideal.space().field)[0];
}

}  // namespace ca
