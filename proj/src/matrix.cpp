#include "ca/matrix.hpp"

#include <stdexcept>
#include <string>

#include "ca/error.hpp"

namespace ca {

PolyMatrix::PolyMatrix(PrimeField field, std::vector<int> row_degrees, std::vector<int> col_degrees)
    : field_(field),
      row_degrees_(std::move(row_degrees)),
      col_degrees_(std::move(col_degrees)),
      entries_(row_degrees_.size() * col_degrees_.size(), Poly(field)) {}

PolyMatrix PolyMatrix::from_columns(PrimeField field, std::vector<int> row_degrees,
                                    std::span<const ModVec> columns, std::vector<int> col_degrees) {
  if (columns.size() != col_degrees.size())
    throw std::invalid_argument("from_columns: degree count mismatch");
  PolyMatrix m(field, std::move(row_degrees), std::move(col_degrees));
  for (std::size_t j = 0; j < columns.size(); ++j) {
    std::vector<Poly> coords = to_coords(columns[j], m.rows(), field);
    for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, j) = std::move(coords[i]);
  }
  return m;
}

PolyMatrix PolyMatrix::identity(PrimeField field, std::vector<int> degrees) {
  PolyMatrix m(field, degrees, degrees);
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, i) = Poly::constant(field, 1);
  return m;
}

ModVec PolyMatrix::column(std::size_t j) const {
  std::vector<Poly> coords;
  coords.reserve(rows());
  for (std::size_t i = 0; i < rows(); ++i) coords.push_back(at(i, j));
  return to_modvec(coords);
}

std::vector<ModVec> PolyMatrix::columns() const {
  std::vector<ModVec> out;
  out.reserve(cols());
  for (std::size_t j = 0; j < cols(); ++j) out.push_back(column(j));
  return out;
}

FreeModuleSpace PolyMatrix::target_space(std::size_t nvars) const {
  return FreeModuleSpace{field_, nvars, row_degrees_};
}

bool PolyMatrix::is_zero() const noexcept {
  for (const Poly& e : entries_)
    if (!e.is_zero()) return false;
  return true;
}

bool PolyMatrix::is_homogeneous() const noexcept {
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) {
      const Poly& e = at(i, j);
      if (e.is_zero()) continue;
      if (!e.is_homogeneous() || e.degree() != col_degrees_[j] - row_degrees_[i]) return false;
    }
  return true;
}

PolyMatrix PolyMatrix::dual() const {
  std::vector<int> r, c;
  for (int d : col_degrees_) r.push_back(-d);
  for (int d : row_degrees_) c.push_back(-d);
  PolyMatrix out(field_, r, c);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) out.at(j, i) = at(i, j);
  return out;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols() != o.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  PolyMatrix out(field_, row_degrees_, o.col_degrees_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < cols(); ++k) {
      const Poly& a = at(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.cols(); ++j)
        if (!o.at(k, j).is_zero()) out.at(i, j) += a * o.at(k, j);
    }
  return out;
}

PolyMatrix PolyMatrix::frobenius(unsigned nsteps) const {
  std::uint64_t q = 1;
  for (unsigned s = 0; s < nsteps; ++s) q *= field_.characteristic();
  std::vector<int> r, c;
  for (int d : row_degrees_) r.push_back(static_cast<int>(d * static_cast<std::int64_t>(q)));
  for (int d : col_degrees_) c.push_back(static_cast<int>(d * static_cast<std::int64_t>(q)));
  PolyMatrix out(field_, r, c);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = frobenius_power(entries_[k], nsteps);
  return out;
}

PolyMatrix PolyMatrix::shifted(int s) const {
  PolyMatrix out = *this;
  for (int& d : out.row_degrees_) d += s;
  for (int& d : out.col_degrees_) d += s;
  return out;
}

PolyMatrix PolyMatrix::concat_columns(const PolyMatrix& o) const {
  if (row_degrees_ != o.row_degrees_) throw std::invalid_argument("concat_columns: row degrees differ");
  std::vector<int> c = col_degrees_;
  c.insert(c.end(), o.col_degrees_.begin(), o.col_degrees_.end());
  PolyMatrix out(field_, row_degrees_, c);
  for (std::size_t i = 0; i < rows(); ++i) {
    for (std::size_t j = 0; j < cols(); ++j) out.at(i, j) = at(i, j);
    for (std::size_t j = 0; j < o.cols(); ++j) out.at(i, cols() + j) = o.at(i, j);
  }
  return out;
}

PolyMatrix PolyMatrix::select_columns(std::span<const std::size_t> which) const {
  std::vector<int> c;
  for (std::size_t j : which) c.push_back(col_degrees_.at(j));
  PolyMatrix out(field_, row_degrees_, c);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < which.size(); ++k) out.at(i, k) = at(i, which[k]);
  return out;
}

PolyMatrix PolyMatrix::select_rows(std::span<const std::size_t> which) const {
  std::vector<int> r;
  for (std::size_t i : which) r.push_back(row_degrees_.at(i));
  PolyMatrix out(field_, r, col_degrees_);
  for (std::size_t k = 0; k < which.size(); ++k)
    for (std::size_t j = 0; j < cols(); ++j) out.at(k, j) = at(which[k], j);
  return out;
}

std::vector<int> infer_column_degrees(const std::vector<std::vector<Poly>>& rows,
                                      const std::vector<int>& row_degrees,
                                      const std::vector<std::optional<int>>& fallback) {
  std::size_t ncols = rows.empty() ? fallback.size() : rows[0].size();
  std::vector<int> out(ncols, 0);
  for (std::size_t j = 0; j < ncols; ++j) {
    std::optional<int> deg;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Poly& e = rows[i][j];
      if (e.is_zero()) continue;
      if (!e.is_homogeneous())
        fail(ErrorCode::NotHomogeneous,
             "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not homogeneous");
      int d = e.degree() + row_degrees[i];
      if (deg && *deg != d)
        fail(ErrorCode::NotHomogeneous, "column " + std::to_string(j) + " has no consistent degree");
      deg = d;
    }
    if (!deg && j < fallback.size()) deg = fallback[j];
    out[j] = deg.value_or(0);
  }
  return out;
}

}  // namespace ca
