#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "helmdg/sparse.hpp"

namespace helmdg {

/// Structural/numerical singularity, or a residual above tolerance.
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Direct LU factorization (fill-reducing column ordering, row pivoting).
/// The factor is immutable after construction; solves against distinct
/// right-hand sides may run concurrently. Every solve is residual-checked:
/// ||Ax - b|| / ||b|| must not exceed 1e-10.
class SparseLu {
 public:
  explicit SparseLu(const ComplexSparseMatrix& a);
  ~SparseLu();
  SparseLu(SparseLu&&) noexcept;
  SparseLu& operator=(SparseLu&&) noexcept;

  std::vector<Complex> solve(std::span<const Complex> b) const;

  static constexpr double kResidualTolerance = 1e-10;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<Complex> sparse_lu_solve(const ComplexSparseMatrix& a, std::span<const Complex> b);

}  // namespace helmdg
