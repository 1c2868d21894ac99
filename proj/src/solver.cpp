#include "helmdg/solver.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace helmdg {

struct SparseLu::Impl {
  ComplexSparseMatrix a;
  Eigen::SparseMatrix<Complex> eigen_a;
  Eigen::SparseLU<Eigen::SparseMatrix<Complex>, Eigen::COLAMDOrdering<int>> lu;
};

SparseLu::SparseLu(const ComplexSparseMatrix& a) : impl_(std::make_unique<Impl>()) {
  if (a.rows() != a.cols()) throw std::invalid_argument("SparseLu: matrix must be square");
  impl_->a = a;

  std::vector<Eigen::Triplet<Complex>> trip;
  trip.reserve(a.nnz());
  auto offsets = a.row_offsets();
  auto cols = a.col_indices();
  auto vals = a.values();
  for (int i = 0; i < a.rows(); ++i)
    for (int p = offsets[i]; p < offsets[i + 1]; ++p)
      trip.emplace_back(i, cols[p], vals[p]);
  impl_->eigen_a.resize(a.rows(), a.cols());
  impl_->eigen_a.setFromTriplets(trip.begin(), trip.end());
  impl_->eigen_a.makeCompressed();

  impl_->lu.analyzePattern(impl_->eigen_a);
  impl_->lu.factorize(impl_->eigen_a);
  if (impl_->lu.info() != Eigen::Success)
    throw SolverError("SparseLu: factorization failed: " + impl_->lu.lastErrorMessage());
}

SparseLu::~SparseLu() = default;
SparseLu::SparseLu(SparseLu&&) noexcept = default;
SparseLu& SparseLu::operator=(SparseLu&&) noexcept = default;

std::vector<Complex> SparseLu::solve(std::span<const Complex> b) const {
  const int n = impl_->a.rows();
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("SparseLu: rhs size mismatch");

  Eigen::VectorXcd rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = b[i];
  Eigen::VectorXcd sol = impl_->lu.solve(rhs);
  if (impl_->lu.info() != Eigen::Success) throw SolverError("SparseLu: back substitution failed");

  std::vector<Complex> x(sol.data(), sol.data() + n);

  std::vector<Complex> r = matvec(impl_->a, x);
  for (int i = 0; i < n; ++i) r[i] -= b[i];
  const double b_norm = norm2(b);
  if (b_norm > 0.0) {
    const double rel = norm2(r) / b_norm;
    if (rel > kResidualTolerance)
      throw SolverError("SparseLu: relative residual " + std::to_string(rel) +
                        " exceeds tolerance");
  }
  return x;
}

std::vector<Complex> sparse_lu_solve(const ComplexSparseMatrix& a, std::span<const Complex> b) {
  return SparseLu(a).solve(b);
}

}  // namespace helmdg
