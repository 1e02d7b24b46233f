#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "ca/dimension.hpp"
#include "ca/field.hpp"
#include "ca/monomial.hpp"
#include "ca/polynomial.hpp"

namespace ca {

/// One term c * m * e_comp of an element of a free module.
struct ModTerm {
  Monomial mono;
  std::uint32_t comp;
  Coeff coeff;
  friend bool operator==(const ModTerm&, const ModTerm&) = default;
};

/// Element of a graded free module, terms strictly descending in the
/// position-over-term order: lower component index first, grevlex within a
/// component.  Ideals are the rank-one case.
using ModVec = std::vector<ModTerm>;

/// Graded free module R^rank = (+) R(-shift_i) over F_p[x_1..x_n].
struct FreeModuleSpace {
  PrimeField field;
  std::size_t nvars = 0;
  std::vector<int> shifts;

  std::size_t rank() const noexcept { return shifts.size(); }
  int degree_of(const ModTerm& t) const noexcept { return t.mono.degree() + shifts[t.comp]; }
};

std::strong_ordering pot_compare(const ModTerm& a, const ModTerm& b) noexcept;

/// Coordinates <-> term list.
ModVec to_modvec(std::span<const Poly> coords);
std::vector<Poly> to_coords(const ModVec& v, std::size_t rank, const PrimeField& field);

ModVec modvec_axpy(const PrimeField& field, const ModVec& a, Coeff c, const Monomial& m,
                   const ModVec& b);
ModVec modvec_normalize(const PrimeField& field, ModVec terms);
bool is_homogeneous(const FreeModuleSpace& space, const ModVec& v) noexcept;

struct GbOptions {
  int degree_cap = 512;
};

/// A generator handed to the engine.  Ambient generators (I * e_i rows for a
/// quotient ring) take part in the computation but are never reported as
/// minimal generators.
struct GbInput {
  ModVec vec;
  bool ambient = false;
};

/// Reduced Gröbner basis of a homogeneous submodule.
class SubmoduleGB {
 public:
  SubmoduleGB(FreeModuleSpace space, std::vector<ModVec> basis, std::vector<std::size_t> minimal);

  const FreeModuleSpace& space() const noexcept { return space_; }
  const std::vector<ModVec>& basis() const noexcept { return basis_; }
  /// Indices (into the input list) of non-ambient generators that were not
  /// in the span of earlier and lower-degree generators: a minimal
  /// generating set of the submodule modulo the ambient part.
  const std::vector<std::size_t>& minimal_generators() const noexcept { return minimal_; }
  bool is_zero() const noexcept { return basis_.empty(); }

 private:
  FreeModuleSpace space_;
  std::vector<ModVec> basis_;
  std::vector<std::size_t> minimal_;
};

/// Homogeneous Buchberger: items are processed degree by degree (S-pairs,
/// then ambient generators, then user generators), pairs within a degree by
/// smallest lcm first, with the product and chain criteria.  Throws
/// Error(DegreeLimit) when an S-pair lcm exceeds the cap.
SubmoduleGB buchberger(const FreeModuleSpace& space, std::span<const GbInput> gens,
                       const GbOptions& options = {});
SubmoduleGB buchberger(const FreeModuleSpace& space, std::span<const ModVec> gens,
                       const GbOptions& options = {});

ModVec normal_form(const ModVec& v, const SubmoduleGB& gb);
bool contains(const SubmoduleGB& gb, const ModVec& v);

struct Division {
  ModVec quotient;  // in the free module with one basis vector per gb element
  ModVec remainder;
};
Division divide(const ModVec& v, const SubmoduleGB& gb);

/// Degrees of the basis elements; the shifts of the syzygy module.
std::vector<int> basis_degrees(const SubmoduleGB& gb);

/// Schreyer syzygies of the basis elements: one per S-pair with matching
/// leading positions, m_ij e_i - m_ji e_j - sum q_k e_k.
std::vector<ModVec> syzygies(const SubmoduleGB& gb);

/// Minimal monomial generators.
struct MonomialIdeal {
  std::size_t nvars = 0;
  std::vector<Monomial> gens;
  explicit MonomialIdeal(std::size_t n, std::vector<Monomial> g = {});
  bool contains(const Monomial& m) const noexcept;
  bool is_unit() const noexcept;
};

/// Leading monomials of the basis in one component.
MonomialIdeal leading_ideal(const SubmoduleGB& gb, std::uint32_t comp);

/// dim R/J from the largest variable set supporting no generator.
Dimension krull_dimension(const MonomialIdeal& lt);

/// Numerator N(t) of HS_{R/lt}(t) = N(t)/(1-t)^n, coefficient of t^k at index k.
std::vector<std::int64_t> hilbert_numerator(const MonomialIdeal& lt);

/// Order of vanishing of an integer polynomial at t = 1.
int vanishing_order_at_one(std::vector<std::int64_t> poly);

/// Dimension of the cokernel F / U from its leading-term module.
Dimension cokernel_dimension(const SubmoduleGB& gb);
/// Length of F / U counted by standard monomials; nullopt when infinite.
Length cokernel_length(const SubmoduleGB& gb);
/// Independent route: sum of Hilbert-function values from the numerators.
Length cokernel_length_via_hilbert(const SubmoduleGB& gb);

/// Rank-one convenience wrappers.
SubmoduleGB ideal_gb(const PrimeField& field, std::size_t nvars, std::span<const Poly> gens,
                     const GbOptions& options = {});
std::vector<Poly> basis_polys(const SubmoduleGB& gb);
Poly reduce_poly(const Poly& f, const SubmoduleGB& ideal);

}  // namespace ca
