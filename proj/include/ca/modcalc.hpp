#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ca/dimension.hpp"
#include "ca/groebner.hpp"
#include "ca/matrix.hpp"
#include "ca/polynomial.hpp"

namespace ca {

/// A = F_p[x_1..x_n] / I with I homogeneous and proper.
class QuotientRing {
 public:
  QuotientRing(PolyRing base, std::vector<Poly> ideal, bool equidimensional = false,
               GbOptions options = {});

  const PolyRing& base() const noexcept { return base_; }
  const PrimeField& field() const noexcept { return base_.field; }
  std::size_t nvars() const noexcept { return base_.nvars(); }
  const std::vector<Poly>& ideal_generators() const noexcept { return generators_; }
  /// Reduced Gröbner basis of I over R.
  const std::vector<Poly>& ideal_basis() const noexcept { return basis_; }
  const SubmoduleGB& ideal_gb() const noexcept { return gb_; }
  const GbOptions& options() const noexcept { return options_; }
  bool equidimensional() const noexcept { return equidimensional_; }
  bool is_polynomial_ring() const noexcept { return basis_.empty(); }
  /// Krull dimension d of A.
  Dimension dimension() const noexcept { return dimension_; }

  Poly reduce(const Poly& f) const;
  /// A / J, i.e. R / (I + J).
  std::shared_ptr<const QuotientRing> quotient_by(std::span<const Poly> extra) const;
  /// The ambient polynomial ring R with the same options.
  std::shared_ptr<const QuotientRing> ambient() const;

 private:
  PolyRing base_;
  std::vector<Poly> generators_;
  std::vector<Poly> basis_;
  SubmoduleGB gb_;
  bool equidimensional_;
  GbOptions options_;
  Dimension dimension_;
};

using RingPtr = std::shared_ptr<const QuotientRing>;

/// Finitely generated graded A-module coker(presentation); rows are the
/// generators with their degrees.
class FgModule {
 public:
  FgModule(RingPtr ring, PolyMatrix presentation);

  /// A(-shift) / J.
  static FgModule cyclic(RingPtr ring, std::span<const Poly> ideal, int shift = 0);
  static FgModule free(RingPtr ring, std::vector<int> degrees);

  const QuotientRing& ring() const noexcept { return *ring_; }
  const RingPtr& ring_ptr() const noexcept { return ring_; }
  const PolyMatrix& presentation() const noexcept { return presentation_; }
  std::size_t num_generators() const noexcept { return presentation_.rows(); }

 private:
  RingPtr ring_;
  PolyMatrix presentation_;
};

/// Bounded complex of graded free modules 0 <- F_0 <- F_1 <- ... <- F_h.
struct FreeComplex {
  RingPtr ring;
  std::vector<std::vector<int>> degrees;  // degrees[k] = shifts of F_k
  std::vector<PolyMatrix> maps;           // maps[k-1] = d_k : F_k -> F_{k-1}

  std::size_t length() const noexcept { return maps.size(); }
  std::size_t rank(std::size_t k) const noexcept { return k < degrees.size() ? degrees[k].size() : 0; }
  /// d_k, a zero matrix when k = 0 or k > length.
  PolyMatrix differential(std::size_t k) const;
  /// Builds a complex from its maps, taking F_0 degrees from maps[0]'s rows.
  static FreeComplex from_maps(RingPtr ring, std::vector<PolyMatrix> maps,
                               std::vector<int> degrees0 = {});
  /// d_k d_{k+1} = 0 modulo I for all k.
  bool is_complex() const;
};

enum class Over { R, A };

struct Resolution {
  FreeComplex complex;
  bool minimal = true;
  bool complete = false;
  int cutoff = 0;

  std::vector<std::size_t> ranks() const;
};

/// Projective dimension, or a lower bound when the resolution hit the cutoff.
struct ProjectiveDimension {
  int value = 0;
  bool at_least = false;
  bool finite() const noexcept { return !at_least; }
  friend bool operator==(const ProjectiveDimension&, const ProjectiveDimension&) = default;
};

/// Columns together with I * e_i rows, as a Gröbner basis over R.
SubmoduleGB presentation_gb(const FgModule& m);
Dimension dimension(const FgModule& m);
Length length(const FgModule& m);
bool is_zero(const FgModule& m);
/// dim A / J.
Dimension dimension(const QuotientRing& ring, std::span<const Poly> ideal);
/// d - dim A/J; refuses with Error(NotEquidim) unless the ring is flagged
/// equidimensional.
int height(const QuotientRing& ring, std::span<const Poly> ideal);

/// Minimal homogeneous generators (over A) of the kernel of the matrix.
PolyMatrix kernel(const PolyMatrix& map, const QuotientRing& ring);
/// Minimal subset of the columns generating their span modulo I.
PolyMatrix minimal_columns(const PolyMatrix& map, const QuotientRing& ring);
/// Minimal presentation: unit pivots eliminated, relations minimal.
FgModule prune(const FgModule& m);
/// M/JM.
FgModule tensor_cyclic(const FgModule& m, std::span<const Poly> ideal);

/// cutoff = 0 selects dim A + 1, enough to decide finiteness over A since a
/// finite pd is at most depth A.
Resolution free_resolution(const FgModule& m, Over over, int cutoff = 0);
ProjectiveDimension projective_dimension(const FgModule& m, Over over, int cutoff = 0);
/// depth M = n - pd_R M.
int depth(const FgModule& m);
int ring_depth(const QuotientRing& ring);
/// Least i <= d with Ext^i(M, A) != 0.
int grade(const FgModule& m);
FgModule ext_module(const FgModule& m, int i, int cutoff = 0);
FgModule ext_module(const Resolution& resolution, int i);
/// ann M as an ideal of R containing I (reduced Gröbner basis).
std::vector<Poly> annihilator(const FgModule& m);
/// {f in R : f v in span(columns) + I F}.
std::vector<Poly> colon(const PolyMatrix& columns, const ModVec& v, int v_degree,
                        const QuotientRing& ring);

/// ker d_k / im d_{k+1}.
FgModule homology(const FreeComplex& c, std::size_t k);
/// H_k(C (x) M).  Cyclic M = A/J is handled over A/J; otherwise through the
/// total complex with a finite resolution of M (Error(PdCutoff) if none).
FgModule homology_with_coefficients(const FreeComplex& c, const FgModule& m, std::size_t k);
/// Total complex of C (x) L with d(a (x) b) = da (x) b + (-1)^i a (x) db.
FreeComplex tensor_total(const FreeComplex& c, const FreeComplex& l);
/// The same maps read over another ring (e.g. A/J).
FreeComplex change_ring(const FreeComplex& c, RingPtr ring);
FreeComplex shift_degrees(const FreeComplex& c, int shift);

}  // namespace ca
