#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "helmdg/types.hpp"

namespace helmdg {

struct Triplet {
  int row = 0;
  int col = 0;
  Complex value{};
};

/// Compressed-row complex matrix. Column indices are sorted and unique within
/// each row; duplicate triplets are summed in insertion order and exact zeros
/// dropped. The systems assembled here are non-Hermitian, so no symmetry is
/// tracked or exploited.
class ComplexSparseMatrix {
 public:
  ComplexSparseMatrix() = default;

  static ComplexSparseMatrix from_triplets(int rows, int cols, std::vector<Triplet> triplets);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nnz() const { return static_cast<int>(values_.size()); }

  std::span<const int> row_offsets() const { return row_offsets_; }
  std::span<const int> col_indices() const { return col_indices_; }
  std::span<const Complex> values() const { return values_; }

  /// Stored value at (i, j), zero if the entry is absent.
  Complex coeff(int i, int j) const;

  bool has_empty_row() const;

  /// MatrixMarket "coordinate complex general" export.
  void write_matrix_market(std::ostream& out) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<int> row_offsets_;
  std::vector<int> col_indices_;
  std::vector<Complex> values_;
};

std::vector<Complex> matvec(const ComplexSparseMatrix& a, std::span<const Complex> x);

double norm2(std::span<const Complex> v);

}  // namespace helmdg
