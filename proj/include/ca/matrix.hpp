#pragma once

#include <optional>
#include <span>
#include <vector>

#include "ca/groebner.hpp"
#include "ca/polynomial.hpp"

namespace ca {

/// Homogeneous map of graded free modules, stored as a dense matrix of
/// polynomials.  Rows index the target basis (degrees row_degrees), columns
/// the source basis; a nonzero entry (i, j) has degree
/// col_degrees[j] - row_degrees[i].
class PolyMatrix {
 public:
  PolyMatrix(PrimeField field, std::vector<int> row_degrees, std::vector<int> col_degrees);
  static PolyMatrix from_columns(PrimeField field, std::vector<int> row_degrees,
                                 std::span<const ModVec> columns, std::vector<int> col_degrees);
  static PolyMatrix identity(PrimeField field, std::vector<int> degrees);

  std::size_t rows() const noexcept { return row_degrees_.size(); }
  std::size_t cols() const noexcept { return col_degrees_.size(); }
  const PrimeField& field() const noexcept { return field_; }
  const std::vector<int>& row_degrees() const noexcept { return row_degrees_; }
  const std::vector<int>& col_degrees() const noexcept { return col_degrees_; }

  Poly& at(std::size_t i, std::size_t j) { return entries_[i * cols() + j]; }
  const Poly& at(std::size_t i, std::size_t j) const { return entries_[i * cols() + j]; }

  ModVec column(std::size_t j) const;
  std::vector<ModVec> columns() const;
  FreeModuleSpace target_space(std::size_t nvars) const;

  bool is_zero() const noexcept;
  bool is_homogeneous() const noexcept;
  /// Transpose with negated degrees: the matrix of Hom(-, A).
  PolyMatrix dual() const;
  PolyMatrix operator*(const PolyMatrix& other) const;
  PolyMatrix frobenius(unsigned nsteps) const;
  /// Every row and column degree raised by s.
  PolyMatrix shifted(int s) const;
  /// [this | other]; row degrees must agree.
  PolyMatrix concat_columns(const PolyMatrix& other) const;
  PolyMatrix select_columns(std::span<const std::size_t> which) const;
  PolyMatrix select_rows(std::span<const std::size_t> which) const;
  /// Entries replaced by f(entry).
  template <class F>
  PolyMatrix map_entries(F&& f) const {
    PolyMatrix out = *this;
    for (Poly& e : out.entries_) e = f(e);
    return out;
  }

  friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

 private:
  PrimeField field_;
  std::vector<int> row_degrees_;
  std::vector<int> col_degrees_;
  std::vector<Poly> entries_;
};

/// Infers column degrees from entries; zero columns get degree
/// fallback[j] when provided, else 0.  Throws Error(NotHomogeneous).
std::vector<int> infer_column_degrees(const std::vector<std::vector<Poly>>& rows,
                                      const std::vector<int>& row_degrees,
                                      const std::vector<std::optional<int>>& fallback = {});

}  // namespace ca
