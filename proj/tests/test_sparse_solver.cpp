#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "helmdg/solver.hpp"
#include "support/dense_oracle.hpp"

using namespace helmdg;
namespace ts = helmdg::testsupport;

namespace {

ComplexSparseMatrix identity(int n) {
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) t.push_back({i, i, 1.0});
  return ComplexSparseMatrix::from_triplets(n, n, std::move(t));
}

std::vector<Complex> random_vector(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (Complex& z : v) z = {d(rng), d(rng)};
  return v;
}

}  // namespace

TEST_CASE("triplet accumulation and row structure") {
  std::vector<Triplet> t{{1, 2, {1.0, 0.0}}, {0, 0, {2.0, 1.0}}, {1, 2, {0.5, -1.0}},
                         {1, 0, {0.0, 3.0}}, {0, 0, {-2.0, -1.0}}};
  ComplexSparseMatrix a = ComplexSparseMatrix::from_triplets(2, 3, t);
  CHECK(a.coeff(1, 2) == Complex{1.5, -1.0});
  CHECK(a.coeff(1, 0) == Complex{0.0, 3.0});
  CHECK(a.coeff(0, 0) == Complex{});  // summed to exactly zero, dropped
  CHECK(a.coeff(0, 1) == Complex{});
  CHECK(a.nnz() == 2);
  CHECK(a.has_empty_row());

  for (int i = 0; i < a.rows(); ++i) {
    auto off = a.row_offsets();
    auto cols = a.col_indices();
    for (int p = off[i] + 1; p < off[i + 1]; ++p) CHECK(cols[p - 1] < cols[p]);
  }

  CHECK_THROWS_AS(ComplexSparseMatrix::from_triplets(2, 2, {{2, 0, 1.0}}), std::invalid_argument);
}

TEST_CASE("matvec") {
  std::mt19937 rng(11);
  ComplexSparseMatrix zero = ComplexSparseMatrix::from_triplets(4, 4, {});
  auto y = matvec(zero, random_vector(rng, 4));
  for (const Complex& z : y) CHECK(z == Complex{});

  auto x = random_vector(rng, 5);
  auto idy = matvec(identity(5), x);
  for (int i = 0; i < 5; ++i) CHECK(idy[i] == x[i]);

  CHECK_THROWS_AS(matvec(identity(5), std::vector<Complex>(4)), std::invalid_argument);

  // Random triplets against the dense product.
  std::uniform_int_distribution<int> idx(0, 7);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  std::vector<Triplet> t;
  for (int i = 0; i < 40; ++i) t.push_back({idx(rng), idx(rng), {val(rng), val(rng)}});
  ComplexSparseMatrix a = ComplexSparseMatrix::from_triplets(8, 8, t);
  auto v = random_vector(rng, 8);
  auto got = matvec(a, v);
  auto dense = ts::to_dense(a);
  for (int i = 0; i < 8; ++i) {
    Complex want{};
    for (int j = 0; j < 8; ++j) want += dense[i][j] * v[j];
    CHECK(std::abs(got[i] - want) <= 1e-14);
  }
}

TEST_CASE("matrix market export") {
  ComplexSparseMatrix a =
      ComplexSparseMatrix::from_triplets(2, 2, {{0, 0, {1.0, -2.0}}, {1, 0, {0.0, 0.5}}});
  std::ostringstream os;
  a.write_matrix_market(os);
  std::string text = os.str();
  CHECK(text.find("%%MatrixMarket matrix coordinate complex general") == 0);
  CHECK(text.find("2 2 2") != std::string::npos);
  CHECK(text.find("1 1 1 -2") != std::string::npos);
  CHECK(text.find("2 1 0 0.5") != std::string::npos);
}

TEST_CASE("lu solve: identity and zero rhs") {
  std::mt19937 rng(5);
  auto b = random_vector(rng, 6);
  auto x = sparse_lu_solve(identity(6), b);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(x[i] - b[i]) < 1e-15);

  std::vector<Complex> zero(6);
  auto xz = sparse_lu_solve(identity(6), zero);
  for (const Complex& z : xz) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("lu solve matches the dense elimination oracle") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  const int n = 50;
  std::vector<Triplet> t;
  ts::DenseMatrix dense(n, std::vector<Complex>(n));
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < 6; ++s) {
      int j = std::uniform_int_distribution<int>(0, n - 1)(rng);
      Complex v{val(rng), val(rng)};
      t.push_back({i, j, v});
      dense[i][j] += v;
    }
    Complex d{8.0 + val(rng), val(rng)};  // well-conditioned via dominance
    t.push_back({i, i, d});
    dense[i][i] += d;
  }
  ComplexSparseMatrix a = ComplexSparseMatrix::from_triplets(n, n, t);
  auto b = random_vector(rng, n);

  auto got = sparse_lu_solve(a, b);
  auto want = ts::dense_solve(dense, b);
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += std::norm(got[i] - want[i]);
    den += std::norm(want[i]);
  }
  CHECK(std::sqrt(num / den) <= 1e-10);

  // Residual of the sparse solve itself.
  auto r = matvec(a, got);
  for (int i = 0; i < n; ++i) r[i] -= b[i];
  CHECK(norm2(r) / norm2(b) <= 1e-10);
}

TEST_CASE("one factorization serves many right-hand sides") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> val(-1.0, 1.0);
  const int n = 30;
  std::vector<Triplet> t;
  for (int i = 0; i < n; ++i) {
    t.push_back({i, i, {5.0 + val(rng), val(rng)}});
    t.push_back({i, (i + 1) % n, {val(rng), val(rng)}});
  }
  ComplexSparseMatrix a = ComplexSparseMatrix::from_triplets(n, n, t);
  SparseLu factor(a);
  for (int trial = 0; trial < 3; ++trial) {
    auto b = random_vector(rng, n);
    auto x1 = factor.solve(b);
    auto x2 = sparse_lu_solve(a, b);
    double diff = 0.0, ref = 0.0;
    for (int i = 0; i < n; ++i) {
      diff += std::norm(x1[i] - x2[i]);
      ref += std::norm(x2[i]);
    }
    CHECK(std::sqrt(diff / ref) <= 1e-12);
  }
}

TEST_CASE("singular and malformed systems are reported") {
  // Structurally singular: an empty column.
  std::vector<Triplet> t{{0, 0, 1.0}, {1, 0, 1.0}};
  ComplexSparseMatrix a = ComplexSparseMatrix::from_triplets(2, 2, t);
  CHECK_THROWS_AS(sparse_lu_solve(a, std::vector<Complex>(2, Complex{1.0, 0.0})), SolverError);

  ComplexSparseMatrix rect = ComplexSparseMatrix::from_triplets(2, 3, {{0, 0, 1.0}});
  CHECK_THROWS_AS(SparseLu{rect}, std::invalid_argument);

  SparseLu ident(identity(3));
  CHECK_THROWS_AS(ident.solve(std::vector<Complex>(2)), std::invalid_argument);
}
