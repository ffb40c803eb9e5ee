#include "sparsesense/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sparsesense/error.hpp"

namespace sparsesense {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw DimensionError("matrix data length " + std::to_string(data_.size()) + " != " +
                         std::to_string(rows) + " x " + std::to_string(cols));
  }
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : rows.begin()->size();
  Matrix out(n, m);
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != m) throw DimensionError("ragged initializer for Matrix");
    std::copy(row.begin(), row.end(), out.row(r).begin());
    ++r;
  }
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> indices) const {
  Matrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= rows_) throw IndexError("row index out of range");
    std::ranges::copy(row(indices[i]), out.row(i).begin());
  }
  return out;
}

void Matrix::append_row(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) {
    throw DimensionError("append_row: expected " + std::to_string(cols_) + " values, got " +
                         std::to_string(values.size()));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

bool Matrix::all_finite() const {
  return std::ranges::all_of(data_, [](double v) { return std::isfinite(v); });
}

}  // namespace sparsesense
