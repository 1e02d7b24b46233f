#include "ca/modcalc.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

#include "ca/error.hpp"

namespace ca {

namespace {

ModVec offset_components(const ModVec& v, std::int64_t offset) {
  ModVec out = v;
  for (ModTerm& t : out) t.comp = static_cast<std::uint32_t>(t.comp + offset);
  return out;
}

// h * e_i for every basis element h of I and every i in [first, first + count).
void add_ambient(std::vector<GbInput>& inputs, const QuotientRing& ring, std::size_t first,
                 std::size_t count) {
  for (std::size_t i = first; i < first + count; ++i)
    for (const Poly& h : ring.ideal_basis()) {
      ModVec v;
      for (const Term& t : h.terms()) v.push_back({t.mono, static_cast<std::uint32_t>(i), t.coeff});
      inputs.push_back({std::move(v), true});
    }
}

PolyMatrix reduce_entries(const PolyMatrix& m, const QuotientRing& ring) {
  if (ring.is_polynomial_ring()) return m;
  return m.map_entries([&](const Poly& e) { return ring.reduce(e); });
}

PolyMatrix empty_matrix(const PrimeField& f) { return PolyMatrix(f, {}, {}); }

// Columns g * e_i for the generators g of J and every row i.
PolyMatrix ideal_columns(const PrimeField& field, const std::vector<int>& row_degrees,
                         std::span<const Poly> ideal) {
  std::vector<ModVec> cols;
  std::vector<int> degs;
  for (std::size_t i = 0; i < row_degrees.size(); ++i)
    for (const Poly& g : ideal) {
      if (g.is_zero()) continue;
      if (!g.is_homogeneous()) fail(ErrorCode::NotHomogeneous, "ideal generator is not homogeneous");
      ModVec v;
      for (const Term& t : g.terms()) v.push_back({t.mono, static_cast<std::uint32_t>(i), t.coeff});
      cols.push_back(std::move(v));
      degs.push_back(g.degree() + row_degrees[i]);
    }
  return PolyMatrix::from_columns(field, row_degrees, cols, degs);
}

int effective_cutoff(const QuotientRing& ring, int cutoff) {
  if (cutoff > 0) return cutoff;
  return ring.dimension().value() + 1;
}

}  // namespace

// ---------------------------------------------------------------- rings

QuotientRing::QuotientRing(PolyRing base, std::vector<Poly> ideal, bool equidimensional,
                           GbOptions options)
    : base_(std::move(base)),
      generators_(std::move(ideal)),
      gb_(FreeModuleSpace{base_.field, base_.nvars(), {0}}, {}, {}),
      equidimensional_(equidimensional),
      options_(options) {
  for (const Poly& g : generators_)
    if (!g.is_homogeneous()) fail(ErrorCode::NotHomogeneous, "ring ideal generator is not homogeneous");
  gb_ = ca::ideal_gb(base_.field, base_.nvars(), generators_, options_);
  basis_ = basis_polys(gb_);
  for (const Poly& b : basis_)
    if (b.is_constant()) fail(ErrorCode::InvalidArgument, "the ring ideal is the unit ideal");
  dimension_ = cokernel_dimension(gb_);
}

Poly QuotientRing::reduce(const Poly& f) const {
  if (basis_.empty()) return f;
  return reduce_poly(f, gb_);
}

RingPtr QuotientRing::quotient_by(std::span<const Poly> extra) const {
  std::vector<Poly> gens = generators_;
  gens.insert(gens.end(), extra.begin(), extra.end());
  return std::make_shared<QuotientRing>(base_, std::move(gens), false, options_);
}

RingPtr QuotientRing::ambient() const {
  return std::make_shared<QuotientRing>(base_, std::vector<Poly>{}, true, options_);
}

// -------------------------------------------------------------- modules

FgModule::FgModule(RingPtr ring, PolyMatrix presentation)
    : ring_(std::move(ring)), presentation_(std::move(presentation)) {
  if (!(presentation_.field() == ring_->field()))
    fail(ErrorCode::InvalidArgument, "presentation over a different field");
  if (!presentation_.is_homogeneous())
    fail(ErrorCode::NotHomogeneous, "presentation matrix is not homogeneous");
}

FgModule FgModule::cyclic(RingPtr ring, std::span<const Poly> ideal, int shift) {
  PolyMatrix p = ideal_columns(ring->field(), {shift}, ideal);
  return FgModule(std::move(ring), std::move(p));
}

FgModule FgModule::free(RingPtr ring, std::vector<int> degrees) {
  PolyMatrix p(ring->field(), std::move(degrees), {});
  return FgModule(std::move(ring), std::move(p));
}

PolyMatrix FreeComplex::differential(std::size_t k) const {
  const PrimeField& f = ring->field();
  if (k >= 1 && k <= maps.size()) return maps[k - 1];
  std::vector<int> rows = (k >= 1 && k - 1 < degrees.size()) ? degrees[k - 1] : std::vector<int>{};
  std::vector<int> cols = k < degrees.size() ? degrees[k] : std::vector<int>{};
  return PolyMatrix(f, rows, cols);
}

FreeComplex FreeComplex::from_maps(RingPtr ring, std::vector<PolyMatrix> maps,
                                   std::vector<int> degrees0) {
  FreeComplex c;
  c.ring = std::move(ring);
  c.degrees.push_back(maps.empty() ? std::move(degrees0) : maps[0].row_degrees());
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (k > 0 && maps[k].row_degrees() != maps[k - 1].col_degrees())
      fail(ErrorCode::DimMismatch, "map d_" + std::to_string(k + 1) + " does not compose with d_" +
                                       std::to_string(k));
    if (!maps[k].is_homogeneous())
      fail(ErrorCode::NotHomogeneous, "map d_" + std::to_string(k + 1) + " is not homogeneous");
    c.degrees.push_back(maps[k].col_degrees());
  }
  c.maps = std::move(maps);
  return c;
}

bool FreeComplex::is_complex() const {
  for (std::size_t k = 1; k < maps.size(); ++k)
    if (!reduce_entries(maps[k - 1] * maps[k], *ring).is_zero()) return false;
  return true;
}

std::vector<std::size_t> Resolution::ranks() const {
  std::vector<std::size_t> out;
  for (const auto& d : complex.degrees) out.push_back(d.size());
  return out;
}

// ------------------------------------------------------------ invariants

SubmoduleGB presentation_gb(const FgModule& m) {
  const PolyMatrix& p = m.presentation();
  FreeModuleSpace space = p.target_space(m.ring().nvars());
  std::vector<GbInput> inputs;
  for (ModVec& c : p.columns()) inputs.push_back({std::move(c), false});
  add_ambient(inputs, m.ring(), 0, p.rows());
  return buchberger(space, inputs, m.ring().options());
}

Dimension dimension(const FgModule& m) { return cokernel_dimension(presentation_gb(m)); }

Length length(const FgModule& m) { return cokernel_length(presentation_gb(m)); }

bool is_zero(const FgModule& m) {
  Length l = length(m);
  return l && *l == 0;
}

Dimension dimension(const QuotientRing& ring, std::span<const Poly> ideal) {
  std::vector<Poly> gens = ring.ideal_basis();
  gens.insert(gens.end(), ideal.begin(), ideal.end());
  return cokernel_dimension(ideal_gb(ring.field(), ring.nvars(), gens, ring.options()));
}

int height(const QuotientRing& ring, std::span<const Poly> ideal) {
  if (!ring.equidimensional())
    fail(ErrorCode::NotEquidim, "height needs a ring flagged equidimensional");
  Dimension q = dimension(ring, ideal);
  if (q.is_minus_infinity()) fail(ErrorCode::InvalidArgument, "height of the unit ideal");
  return ring.dimension().value() - q.value();
}

// --------------------------------------------------------- kernels etc.

PolyMatrix kernel(const PolyMatrix& map, const QuotientRing& ring) {
  const PrimeField& field = ring.field();
  const std::size_t b = map.rows(), s = map.cols();
  if (s == 0) return empty_matrix(field);

  std::vector<int> shifts = map.row_degrees();
  shifts.insert(shifts.end(), map.col_degrees().begin(), map.col_degrees().end());
  FreeModuleSpace space{field, ring.nvars(), shifts};
  std::vector<GbInput> inputs;
  for (std::size_t j = 0; j < s; ++j) {
    ModVec v = map.column(j);
    v.push_back({Monomial{}, static_cast<std::uint32_t>(b + j), 1});
    inputs.push_back({std::move(v), false});
  }
  add_ambient(inputs, ring, 0, b + s);
  SubmoduleGB gb = buchberger(space, inputs, ring.options());

  // Elements living only in the source components generate the kernel
  // (plus I * source); pick minimal generators modulo I.
  FreeModuleSpace source{field, ring.nvars(), map.col_degrees()};
  std::vector<GbInput> kept;
  for (const ModVec& g : gb.basis())
    if (g.front().comp >= b) kept.push_back({offset_components(g, -static_cast<std::int64_t>(b)), false});
  const std::size_t nkept = kept.size();
  add_ambient(kept, ring, 0, s);
  SubmoduleGB mgb = buchberger(source, kept, ring.options());

  std::vector<ModVec> cols;
  std::vector<int> degs;
  for (std::size_t idx : mgb.minimal_generators()) {
    if (idx >= nkept) continue;
    cols.push_back(kept[idx].vec);
    degs.push_back(source.degree_of(kept[idx].vec.front()));
  }
  return PolyMatrix::from_columns(field, map.col_degrees(), cols, degs);
}

PolyMatrix minimal_columns(const PolyMatrix& map, const QuotientRing& ring) {
  PolyMatrix m = reduce_entries(map, ring);
  FreeModuleSpace space = m.target_space(ring.nvars());
  std::vector<GbInput> inputs;
  for (ModVec& c : m.columns()) inputs.push_back({std::move(c), false});
  const std::size_t ncols = inputs.size();
  add_ambient(inputs, ring, 0, m.rows());
  SubmoduleGB gb = buchberger(space, inputs, ring.options());
  std::vector<std::size_t> keep;
  for (std::size_t idx : gb.minimal_generators())
    if (idx < ncols) keep.push_back(idx);
  std::sort(keep.begin(), keep.end());
  return m.select_columns(keep);
}

FgModule prune(const FgModule& m) {
  const QuotientRing& ring = m.ring();
  const PrimeField& f = ring.field();
  PolyMatrix p = reduce_entries(m.presentation(), ring);
  for (;;) {
    std::size_t pi = p.rows(), pj = p.cols();
    for (std::size_t i = 0; i < p.rows() && pi == p.rows(); ++i)
      for (std::size_t j = 0; j < p.cols(); ++j)
        if (!p.at(i, j).is_zero() && p.at(i, j).is_constant()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == p.rows()) break;
    Coeff inv = f.inv(p.at(pi, pj).lead().coeff);
    for (std::size_t k = 0; k < p.cols(); ++k) {
      if (k == pj || p.at(pi, k).is_zero()) continue;
      Poly factor = p.at(pi, k).scaled(inv);
      for (std::size_t i = 0; i < p.rows(); ++i)
        if (!p.at(i, pj).is_zero()) p.at(i, k) = ring.reduce(p.at(i, k) - factor * p.at(i, pj));
    }
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < p.rows(); ++i)
      if (i != pi) rows.push_back(i);
    for (std::size_t j = 0; j < p.cols(); ++j)
      if (j != pj) cols.push_back(j);
    p = p.select_rows(rows).select_columns(cols);
  }
  return FgModule(m.ring_ptr(), minimal_columns(p, ring));
}

FgModule tensor_cyclic(const FgModule& m, std::span<const Poly> ideal) {
  const PolyMatrix& p = m.presentation();
  return FgModule(m.ring_ptr(), p.concat_columns(ideal_columns(p.field(), p.row_degrees(), ideal)));
}

// ----------------------------------------------------------- resolutions

Resolution free_resolution(const FgModule& m, Over over, int cutoff) {
  RingPtr ring = m.ring_ptr();
  PolyMatrix p = m.presentation();
  if (over == Over::R && !ring->is_polynomial_ring()) {
    p = p.concat_columns(ideal_columns(p.field(), p.row_degrees(), ring->ideal_basis()));
    ring = ring->ambient();
  }
  FgModule n = prune(FgModule(ring, p));

  Resolution res;
  res.cutoff = effective_cutoff(*ring, cutoff);
  res.complex.ring = ring;
  res.complex.degrees.push_back(n.presentation().row_degrees());
  PolyMatrix current = n.presentation();
  for (int k = 1;; ++k) {
    if (current.cols() == 0) {
      res.complete = true;
      break;
    }
    if (k > res.cutoff) break;
    res.complex.degrees.push_back(current.col_degrees());
    PolyMatrix next = kernel(current, *ring);
    res.complex.maps.push_back(std::move(current));
    current = std::move(next);
  }
  return res;
}

ProjectiveDimension projective_dimension(const FgModule& m, Over over, int cutoff) {
  if (is_zero(m)) fail(ErrorCode::ZeroModule, "projective dimension of the zero module");
  Resolution r = free_resolution(m, over, cutoff);
  if (r.complete) return {static_cast<int>(r.complex.length()), false};
  return {r.cutoff, true};
}

int depth(const FgModule& m) {
  if (is_zero(m)) fail(ErrorCode::ZeroModule, "depth of the zero module");
  const int n = static_cast<int>(m.ring().nvars());
  ProjectiveDimension pd = projective_dimension(m, Over::R, n + 1);
  if (pd.at_least) throw std::logic_error("resolution over R exceeded n steps");
  return n - pd.value;
}

int ring_depth(const QuotientRing& ring) {
  RingPtr r = ring.ambient();
  return depth(FgModule::cyclic(r, ring.ideal_basis()));
}

FgModule ext_module(const Resolution& res, int i) {
  if (i < 0) throw std::invalid_argument("ext_module: negative index");
  const FreeComplex& c = res.complex;
  const auto k = static_cast<std::size_t>(i);
  if (k + 1 > c.length() && !res.complete)
    fail(ErrorCode::PdCutoff, "Ext^" + std::to_string(i) + " needs a longer resolution");
  FreeComplex dual;
  dual.ring = c.ring;
  PolyMatrix d1 = c.differential(k + 1).dual();
  PolyMatrix d2 = c.differential(k).dual();
  dual.degrees = {d1.row_degrees(), d1.col_degrees(), d2.col_degrees()};
  dual.maps = {std::move(d1), std::move(d2)};
  return homology(dual, 1);
}

FgModule ext_module(const FgModule& m, int i, int cutoff) {
  int need = std::max(i + 1, effective_cutoff(m.ring(), cutoff));
  return ext_module(free_resolution(m, Over::A, need), i);
}

int grade(const FgModule& m) {
  if (is_zero(m)) fail(ErrorCode::ZeroModule, "grade of the zero module");
  const int d = m.ring().dimension().value();
  Resolution res;
  try {
    res = free_resolution(m, Over::A, d + 1);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::DegreeLimit) throw;
    fail(ErrorCode::PdCutoff, "resolution of length " + std::to_string(d + 1) +
                                  " exceeds the degree cap: " + e.detail());
  }
  for (int i = 0; i <= d; ++i)
    if (!is_zero(ext_module(res, i))) return i;
  throw std::logic_error("grade: no nonvanishing Ext up to dim A");
}

std::vector<Poly> colon(const PolyMatrix& columns, const ModVec& v, int v_degree,
                        const QuotientRing& ring) {
  const std::size_t b = columns.rows();
  std::vector<int> shifts = columns.row_degrees();
  shifts.push_back(v_degree);
  FreeModuleSpace space{ring.field(), ring.nvars(), shifts};
  std::vector<GbInput> inputs;
  for (ModVec& c : columns.columns()) inputs.push_back({std::move(c), false});
  ModVec marked = v;
  marked.push_back({Monomial{}, static_cast<std::uint32_t>(b), 1});
  inputs.push_back({std::move(marked), false});
  add_ambient(inputs, ring, 0, b + 1);
  SubmoduleGB gb = buchberger(space, inputs, ring.options());
  std::vector<Poly> gens;
  for (const ModVec& g : gb.basis())
    if (g.front().comp == b) gens.push_back(to_coords(g, b + 1, ring.field())[b]);
  std::vector<Poly> out = basis_polys(ideal_gb(ring.field(), ring.nvars(), gens, ring.options()));
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return grevlex_compare(a.lead().mono, b.lead().mono) > 0;
  });
  return out;
}

std::vector<Poly> annihilator(const FgModule& m) {
  FgModule n = prune(m);
  const PolyMatrix& p = n.presentation();
  const std::size_t b = p.rows();
  const PrimeField& f = p.field();
  if (b == 0) return {Poly::constant(f, 1)};
  // b copies of F; copy i is shifted by -a_i so sum_i e_{i,i} has degree 0.
  std::vector<int> shifts;
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t k = 0; k < b; ++k) shifts.push_back(p.row_degrees()[k] - p.row_degrees()[i]);
  std::vector<ModVec> cols;
  std::vector<int> degs;
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < p.cols(); ++j) {
      cols.push_back(offset_components(p.column(j), static_cast<std::int64_t>(i * b)));
      degs.push_back(p.col_degrees()[j] - p.row_degrees()[i]);
    }
  PolyMatrix big = PolyMatrix::from_columns(f, shifts, cols, degs);
  ModVec v;
  for (std::size_t i = 0; i < b; ++i) v.push_back({Monomial{}, static_cast<std::uint32_t>(i * b + i), 1});
  return colon(big, v, 0, n.ring());
}

// -------------------------------------------------------------- homology

FgModule homology(const FreeComplex& c, std::size_t k) {
  const QuotientRing& ring = *c.ring;
  PolyMatrix dk = c.differential(k);
  PolyMatrix dk1 = c.differential(k + 1);
  PolyMatrix z = dk.rows() == 0 ? PolyMatrix::identity(ring.field(), dk.col_degrees()) : kernel(dk, ring);
  if (z.cols() == 0) return FgModule::free(c.ring, {});
  PolyMatrix rel = kernel(z.concat_columns(dk1), ring);
  std::vector<std::size_t> rows(z.cols());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return prune(FgModule(c.ring, rel.select_rows(rows)));
}

FreeComplex change_ring(const FreeComplex& c, RingPtr ring) {
  FreeComplex out = c;
  out.ring = ring;
  for (PolyMatrix& m : out.maps) m = reduce_entries(m, *ring);
  return out;
}

FreeComplex shift_degrees(const FreeComplex& c, int shift) {
  FreeComplex out = c;
  for (auto& d : out.degrees)
    for (int& x : d) x += shift;
  for (PolyMatrix& m : out.maps) m = m.shifted(shift);
  return out;
}

FreeComplex tensor_total(const FreeComplex& c, const FreeComplex& l) {
  const PrimeField& f = c.ring->field();
  const std::size_t hc = c.degrees.empty() ? 0 : c.degrees.size() - 1;
  const std::size_t hl = l.degrees.empty() ? 0 : l.degrees.size() - 1;
  const std::size_t h = hc + hl;
  // offsets[k][i] = start of block C_i (x) L_{k-i} inside Tot_k.
  std::vector<std::vector<std::size_t>> offsets(h + 1, std::vector<std::size_t>(hc + 1, 0));
  FreeComplex out;
  out.ring = c.ring;
  for (std::size_t k = 0; k <= h; ++k) {
    std::vector<int> degs;
    for (std::size_t i = 0; i <= std::min(k, hc); ++i) {
      if (k - i > hl) continue;
      offsets[k][i] = degs.size();
      for (int a : c.degrees[i])
        for (int b : l.degrees[k - i]) degs.push_back(a + b);
    }
    out.degrees.push_back(std::move(degs));
  }
  for (std::size_t k = 1; k <= h; ++k) {
    PolyMatrix d(f, out.degrees[k - 1], out.degrees[k]);
    for (std::size_t i = 0; i <= std::min(k, hc); ++i) {
      std::size_t j = k - i;
      if (j > hl) continue;
      const std::size_t rc = c.rank(i), rl = l.rank(j);
      if (i >= 1) {
        const PolyMatrix& dc = c.maps[i - 1];
        const std::size_t rc1 = c.rank(i - 1);
        for (std::size_t a = 0; a < rc; ++a)
          for (std::size_t a2 = 0; a2 < rc1; ++a2) {
            if (dc.at(a2, a).is_zero()) continue;
            for (std::size_t b = 0; b < rl; ++b)
              d.at(offsets[k - 1][i - 1] + a2 * rl + b, offsets[k][i] + a * rl + b) = dc.at(a2, a);
          }
      }
      if (j >= 1) {
        const PolyMatrix& dl = l.maps[j - 1];
        const std::size_t rl1 = l.rank(j - 1);
        for (std::size_t a = 0; a < rc; ++a)
          for (std::size_t b = 0; b < rl; ++b)
            for (std::size_t b2 = 0; b2 < rl1; ++b2) {
              if (dl.at(b2, b).is_zero()) continue;
              d.at(offsets[k - 1][i] + a * rl1 + b2, offsets[k][i] + a * rl + b) =
                  i % 2 == 0 ? dl.at(b2, b) : -dl.at(b2, b);
            }
      }
    }
    out.maps.push_back(std::move(d));
  }
  return out;
}

FgModule homology_with_coefficients(const FreeComplex& c, const FgModule& m, std::size_t k) {
  FgModule n = prune(m);
  if (n.num_generators() == 0) return FgModule::free(c.ring, {});
  if (n.num_generators() == 1) {
    const PolyMatrix& p = n.presentation();
    std::vector<Poly> j;
    for (std::size_t col = 0; col < p.cols(); ++col) j.push_back(p.at(0, col));
    RingPtr sub = c.ring->quotient_by(j);
    FgModule h = homology(shift_degrees(change_ring(c, sub), p.row_degrees()[0]), k);
    const PolyMatrix& hp = h.presentation();
    return prune(FgModule(c.ring, hp.concat_columns(ideal_columns(hp.field(), hp.row_degrees(), j))));
  }
  Resolution r = free_resolution(n, Over::A);
  if (!r.complete)
    fail(ErrorCode::PdCutoff, "coefficient module has no finite resolution within the cutoff");
  return homology(tensor_total(c, r.complex), k);
}

}  // namespace ca
