#include "ca/koszul.hpp"

#include <algorithm>
#include <random>
#include <string>

#include "ca/error.hpp"

namespace ca {

namespace {

// All size-t subsets of {0..k-1} in lexicographic order.
std::vector<std::vector<std::size_t>> subsets(std::size_t k, std::size_t t) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (cur.size() == t) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < k; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::int64_t finite_length(const FgModule& m, ErrorCode code, const std::string& what) {
  Length l = length(m);
  if (!l) fail(code, what + " has infinite length");
  return *l;
}

}  // namespace

FreeComplex koszul_complex(std::span<const Poly> seq, const RingPtr& ring) {
  const std::size_t k = seq.size();
  if (k == 0 || k > ring->nvars())
    fail(ErrorCode::InvalidArgument, "Koszul complex needs 1 <= k <= n elements");
  std::vector<int> deg;
  for (const Poly& x : seq) {
    if (x.is_zero()) fail(ErrorCode::InvalidArgument, "Koszul sequence contains zero");
    if (!x.is_homogeneous()) fail(ErrorCode::NotHomogeneous, "Koszul sequence element is not homogeneous");
    deg.push_back(x.degree());
  }
  std::vector<std::vector<std::vector<std::size_t>>> basis;
  FreeComplex c;
  c.ring = ring;
  for (std::size_t t = 0; t <= k; ++t) {
    basis.push_back(subsets(k, t));
    std::vector<int> d;
    for (const auto& s : basis.back()) {
      int sum = 0;
      for (std::size_t i : s) sum += deg[i];
      d.push_back(sum);
    }
    c.degrees.push_back(std::move(d));
  }
  const PrimeField& f = ring->field();
  for (std::size_t t = 1; t <= k; ++t) {
    PolyMatrix m(f, c.degrees[t - 1], c.degrees[t]);
    const auto& src = basis[t];
    const auto& dst = basis[t - 1];
    for (std::size_t col = 0; col < src.size(); ++col)
      for (std::size_t j = 0; j < src[col].size(); ++j) {
        std::vector<std::size_t> face = src[col];
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
        auto row = static_cast<std::size_t>(std::lower_bound(dst.begin(), dst.end(), face) - dst.begin());
        const Poly& x = seq[src[col][j]];
        m.at(row, col) = j % 2 ? -x : x;
      }
    c.maps.push_back(std::move(m));
  }
  return c;
}

std::vector<FgModule> koszul_homology(std::span<const Poly> seq, const FgModule& m) {
  FreeComplex k = koszul_complex(seq, m.ring_ptr());
  std::vector<FgModule> out;
  for (std::size_t t = 0; t <= seq.size(); ++t) out.push_back(homology_with_coefficients(k, m, t));
  return out;
}

std::int64_t multiplicity(std::span<const Poly> seq, const FgModule& m) {
  Dimension dim = dimension(m);
  if (dim.is_minus_infinity()) fail(ErrorCode::ZeroModule, "multiplicity of the zero module");
  if (static_cast<int>(seq.size()) != dim.value())
    fail(ErrorCode::NotSop, "sequence has " + std::to_string(seq.size()) + " elements but dim M = " +
                                dim.to_string());
  if (!length(tensor_cyclic(m, seq))) fail(ErrorCode::NotSop, "M / xM has infinite length");
  if (seq.empty()) return *length(m);
  std::int64_t e = 0;
  std::vector<FgModule> h = koszul_homology(seq, m);
  for (std::size_t t = 0; t < h.size(); ++t) {
    std::int64_t l = finite_length(h[t], ErrorCode::NotSop, "H_" + std::to_string(t) + "(x; M)");
    e += t % 2 ? -l : l;
  }
  return e;
}

std::int64_t chi(const FreeComplex& resolution, std::span<const Poly> ideal) {
  const QuotientRing& ring = *resolution.ring;
  if (dimension(ring, ideal).is_minus_infinity()) return 0;
  RingPtr sub = ring.quotient_by(ideal);
  FreeComplex c = change_ring(resolution, sub);
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < c.degrees.size(); ++i) {
    std::int64_t l = finite_length(homology(c, i), ErrorCode::InfiniteIntersection,
                                   "Tor_" + std::to_string(i) + "(M, A/J)");
    sum += i % 2 ? -l : l;
  }
  return sum;
}

std::int64_t chi(const FgModule& m, std::span<const Poly> ideal, int cutoff) {
  finite_length(tensor_cyclic(m, ideal), ErrorCode::InfiniteIntersection, "M / JM");
  Resolution res = free_resolution(m, Over::A, cutoff);
  if (!res.complete)
    fail(ErrorCode::PdCutoff, "no finite resolution within cutoff " + std::to_string(res.cutoff));
  return chi(res.complex, ideal);
}

// ------------------------------------------------------------ minors

Poly determinant(const std::vector<std::vector<Poly>>& m, const PrimeField& field) {
  const std::size_t r = m.size();
  if (r == 0) return Poly::constant(field, 1);
  if (r > 20) throw std::invalid_argument("determinant: matrix too large");
  std::vector<Poly> dp(std::size_t{1} << r, Poly(field));
  dp[0] = Poly::constant(field, 1);
  for (std::size_t mask = 0; mask + 1 < dp.size(); ++mask) {
    if (dp[mask].is_zero()) continue;
    const auto row = static_cast<std::size_t>(__builtin_popcountll(mask));
    for (std::size_t c = 0; c < r; ++c) {
      if (mask >> c & 1 || m[row][c].is_zero()) continue;
      // Inversions added: chosen columns greater than c.
      int inv = __builtin_popcountll(mask >> (c + 1));
      Poly term = m[row][c] * dp[mask];
      dp[mask | (std::size_t{1} << c)] += inv % 2 ? -term : term;
    }
  }
  return dp.back();
}

std::vector<Poly> minors(const PolyMatrix& m, std::size_t r) {
  const PrimeField& f = m.field();
  if (r == 0) return {Poly::constant(f, 1)};
  std::vector<Poly> out;
  if (r > m.rows() || r > m.cols()) return out;
  for (const auto& rows : subsets(m.rows(), r))
    for (const auto& cols : subsets(m.cols(), r)) {
      std::vector<std::vector<Poly>> sub(r, std::vector<Poly>(r, Poly(f)));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) sub[i][j] = m.at(rows[i], cols[j]);
      Poly d = determinant(sub, f);
      if (!d.is_zero()) out.push_back(std::move(d));
    }
  return out;
}

// ------------------------------------------------------- point ranks

PointRank rank_at_point(const PolyMatrix& m, std::span<const Coeff> point) {
  const PrimeField& f = m.field();
  std::vector<std::vector<Coeff>> a(m.rows(), std::vector<Coeff>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j).evaluate(point);
  std::vector<std::size_t> order(m.rows());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  PointRank out;
  std::size_t top = 0;
  for (std::size_t col = 0; col < m.cols() && top < m.rows(); ++col) {
    std::size_t piv = top;
    while (piv < m.rows() && a[order[piv]][col] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(order[top], order[piv]);
    const std::vector<Coeff>& prow = a[order[top]];
    Coeff inv = f.inv(prow[col]);
    for (std::size_t r = top + 1; r < m.rows(); ++r) {
      std::vector<Coeff>& row = a[order[r]];
      if (row[col] == 0) continue;
      Coeff factor = f.mul(row[col], inv);
      for (std::size_t j = col; j < m.cols(); ++j) row[j] = f.sub(row[j], f.mul(factor, prow[j]));
    }
    out.rows.push_back(order[top]);
    out.cols.push_back(col);
    ++top;
  }
  out.rank = top;
  std::sort(out.rows.begin(), out.rows.end());
  return out;
}

PointRank evaluated_rank(const PolyMatrix& m, std::size_t nvars, std::uint64_t seed, std::size_t points,
                         Exec exec) {
  std::vector<PointRank> results(points);
  const Coeff p = static_cast<Coeff>(m.field().characteristic());
  for_each_index(exec, points, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    std::uniform_int_distribution<Coeff> coord(0, p - 1);
    std::vector<Coeff> pt(nvars);
    for (Coeff& c : pt) c = coord(rng);
    results[i] = rank_at_point(m, pt);
  });
  PointRank best;
  for (const PointRank& r : results)
    if (r.rank > best.rank) best = r;
  return best;
}

// --------------------------------------------------------- exactness

ExactnessReport be_exactness(const FreeComplex& c, std::uint64_t seed, const ExactnessOptions& options) {
  const QuotientRing& ring = *c.ring;
  if (!ring.is_polynomial_ring())
    fail(ErrorCode::InvalidArgument, "exactness certification needs a complex over the polynomial ring");
  if (!c.is_complex()) fail(ErrorCode::NotAComplex, "consecutive maps do not compose to zero");
  const std::size_t h = c.length();
  const int n = static_cast<int>(ring.nvars());
  const std::size_t points = options.points ? options.points : (ring.field().characteristic() == 2 ? 16 : 8);

  std::vector<int> lower(h + 2, 0), expected(h + 2, 0);
  for (std::size_t k = 1; k <= h; ++k) {
    int r = 0;
    for (std::size_t i = k; i <= h; ++i) r += ((i - k) % 2 ? -1 : 1) * static_cast<int>(c.rank(i));
    expected[k] = r;
    const PolyMatrix& d = c.maps[k - 1];
    PointRank pr = evaluated_rank(d, ring.nvars(), derive_seed(seed, k), points, options.exec);
    // Confirm the witness symbolically.
    std::vector<std::vector<Poly>> sub(pr.rank, std::vector<Poly>(pr.rank, Poly(ring.field())));
    for (std::size_t i = 0; i < pr.rank; ++i)
      for (std::size_t j = 0; j < pr.rank; ++j) sub[i][j] = d.at(pr.rows[i], pr.cols[j]);
    lower[k] = determinant(sub, ring.field()).is_zero() ? 0 : static_cast<int>(pr.rank);
  }

  ExactnessReport report;
  bool failed = false, all_ok = true;
  for (std::size_t k = 1; k <= h; ++k) {
    const PolyMatrix& d = c.maps[k - 1];
    MapExactness me;
    me.k = static_cast<int>(k);
    me.expected_rank = expected[k];
    me.required_grade = static_cast<int>(k);
    me.rank_lower = lower[k];
    me.rank_upper = std::min({static_cast<int>(d.rows()), static_cast<int>(d.cols()),
                              static_cast<int>(c.rank(k)) - lower[k + 1]});
    const int r = expected[k];
    auto affordable = [&](int s) {
      return s >= 0 && binomial(d.rows(), static_cast<std::uint64_t>(s)) *
                               binomial(d.cols(), static_cast<std::uint64_t>(s)) <=
                           options.max_minors;
    };
    std::optional<std::vector<Poly>> ir;
    if (r >= 0 && r <= me.rank_upper && affordable(r)) ir = minors(d, static_cast<std::size_t>(r));
    // Pin the rank from the bounds and, where needed, the minors.
    int lo = me.rank_lower, hi = me.rank_upper;
    if (ir && lo < r && !ir->empty()) lo = r;
    if (ir && ir->empty() && r > 0) hi = std::min(hi, r - 1);
    if (lo <= r && r < hi && affordable(r + 1) && minors(d, static_cast<std::size_t>(r + 1)).empty()) hi = r;
    if (lo == hi) me.rank = lo;
    const bool rank_bad = r < 0 || lo > r || hi < r;
    if (ir && r > 0) {
      SubmoduleGB gb = ideal_gb(ring.field(), ring.nvars(), *ir, ring.options());
      Dimension q = cokernel_dimension(gb);
      if (!q.is_minus_infinity()) me.grade = n - q.value();  // unit ideal: infinite grade
    }
    const bool grade_known = (ir && r > 0) || r == 0;
    const bool grade_ok = r == 0 || (me.grade ? *me.grade >= me.required_grade : grade_known);
    me.ok = me.rank && *me.rank == r && grade_known && grade_ok;
    if (rank_bad || (me.rank && *me.rank == r && grade_known && !grade_ok)) failed = true;
    if (!me.ok) all_ok = false;
    report.maps.push_back(me);
  }
  report.verdict = failed ? ExactnessVerdict::NotExact
                          : (all_ok ? ExactnessVerdict::Exact : ExactnessVerdict::Inconclusive);
  return report;
}

const char* to_string(ExactnessVerdict v) {
  switch (v) {
    case ExactnessVerdict::Exact: return "exact";
    case ExactnessVerdict::NotExact: return "not-exact";
    case ExactnessVerdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

}  // namespace ca
