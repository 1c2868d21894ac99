#include "helmdg/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace helmdg {

ComplexSparseMatrix ComplexSparseMatrix::from_triplets(int rows, int cols,
                                                       std::vector<Triplet> triplets) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("from_triplets: negative dimension");
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::invalid_argument("from_triplets: index out of range");

  // Deterministic assembly: sort by (row, col) keeping insertion order among
  // duplicates, then accumulate.
  std::vector<int> order(triplets.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const Triplet& ta = triplets[a];
    const Triplet& tb = triplets[b];
    if (ta.row != tb.row) return ta.row < tb.row;
    if (ta.col != tb.col) return ta.col < tb.col;
    return a < b;
  });

  ComplexSparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_offsets_.assign(rows + 1, 0);

  size_t i = 0;
  while (i < order.size()) {
    const Triplet& head = triplets[order[i]];
    Complex sum = head.value;
    size_t j = i + 1;
    while (j < order.size() && triplets[order[j]].row == head.row &&
           triplets[order[j]].col == head.col) {
      sum += triplets[order[j]].value;
      ++j;
    }
    if (sum != Complex{}) {
      m.col_indices_.push_back(head.col);
      m.values_.push_back(sum);
      ++m.row_offsets_[head.row + 1];
    }
    i = j;
  }
  std::partial_sum(m.row_offsets_.begin(), m.row_offsets_.end(), m.row_offsets_.begin());
  return m;
}

Complex ComplexSparseMatrix::coeff(int i, int j) const {
  auto begin = col_indices_.begin() + row_offsets_[i];
  auto end = col_indices_.begin() + row_offsets_[i + 1];
  auto it = std::lower_bound(begin, end, j);
  if (it == end || *it != j) return {};
  return values_[static_cast<size_t>(it - col_indices_.begin())];
}

bool ComplexSparseMatrix::has_empty_row() const {
  for (int i = 0; i < rows_; ++i)
    if (row_offsets_[i] == row_offsets_[i + 1]) return true;
  return false;
}

void ComplexSparseMatrix::write_matrix_market(std::ostream& out) const {
  out << "%%MatrixMarket matrix coordinate complex general\n";
  out << rows_ << " " << cols_ << " " << nnz() << "\n";
  out.precision(17);
  for (int i = 0; i < rows_; ++i)
    for (int p = row_offsets_[i]; p < row_offsets_[i + 1]; ++p)
      out << i + 1 << " " << col_indices_[p] + 1 << " " << values_[p].real() << " "
          << values_[p].imag() << "\n";
}

std::vector<Complex> matvec(const ComplexSparseMatrix& a, std::span<const Complex> x) {
  if (static_cast<int>(x.size()) != a.cols())
    throw std::invalid_argument("matvec: dimension mismatch");
  std::vector<Complex> y(a.rows());
  auto offsets = a.row_offsets();
  auto cols = a.col_indices();
  auto vals = a.values();
  for (int i = 0; i < a.rows(); ++i) {
    Complex acc{};
    for (int p = offsets[i]; p < offsets[i + 1]; ++p) acc += vals[p] * x[cols[p]];
    y[i] = acc;
  }
  return y;
}

double norm2(std::span<const Complex> v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace helmdg
