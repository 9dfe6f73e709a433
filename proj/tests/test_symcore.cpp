#include <doctest.h>

#include <cmath>
#include <limits>

#include "specconvex/majorization.hpp"
#include "specconvex/oracles.hpp"
#include "specconvex/symcore.hpp"

using namespace specconvex;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("SymMatrix stores the upper triangle") {
  const SymMatrix a = SymMatrix::from_upper(3, {1, 2, 3, 4, 5, 6});
  CHECK(a(0, 1) == 2);
  CHECK(a(1, 0) == 2);
  CHECK(a(2, 2) == 6);
  CHECK(a.trace() == 11);
  CHECK(a.dense().isApprox(a.dense().transpose()));
  CHECK_THROWS_AS(SymMatrix::from_upper(3, {1, 2}), InputError);
  CHECK_THROWS_AS(SymMatrix::from_upper(2, {1, std::nan(""), 3}), InputError);
  SymMatrix b(2);
  CHECK_THROWS_AS(b.set(0, 1, std::numeric_limits<double>::infinity()), InputError);
  CHECK_THROWS_AS(a + SymMatrix(2), InputError);
}

TEST_CASE("eigh of a diagonal matrix") {
  const SpectralDecomposition e = eigh(diag_embed(vec({1, 2, 3})));
  CHECK(e.lambda.isApprox(vec({3, 2, 1})));
  // eigenvectors are signed coordinate vectors
  CHECK(e.Q.cwiseAbs().isApprox(Eigen::Matrix3d{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
}

TEST_CASE("eigh of the zero matrix") {
  const SpectralDecomposition e = eigh(SymMatrix(4));
  CHECK(e.lambda.isZero());
  CHECK((e.Q.transpose() * e.Q).isIdentity(1e-14));
}

TEST_CASE("eigh reconstructs random matrices and matches the reference solver") {
  CounterRng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 1 + trial % 6;
    const SymMatrix a = oracle::random_symmetric(d, rng);
    const SpectralDecomposition e = eigh(a);
    const Eigen::MatrixXd back = e.Q * e.lambda.asDiagonal() * e.Q.transpose();
    CHECK((back - a.dense()).cwiseAbs().maxCoeff() <= 1e-9 * std::max(1.0, a.max_abs()));
    CHECK((e.Q.transpose() * e.Q - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK((e.lambda - oracle::eigenvalues(a.dense())).cwiseAbs().maxCoeff() <= 1e-9);
    for (int i = 0; i + 1 < d; ++i) CHECK(e.lambda(i) >= e.lambda(i + 1));
    CHECK((eigvalsh(a.dense()) - e.lambda).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("eigenvalues are conjugation invariant") {
  CounterRng rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 5;
    const SymMatrix a = oracle::random_symmetric(d, rng);
    const SymMatrix b = conjugate(oracle::random_orthogonal(d, rng), a);
    CHECK((eigenvalues(a) - eigenvalues(b)).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("diagonal embedding and projection") {
  const SymMatrix a = diag_embed(vec({1, -2, 5}));
  CHECK(diag_project(a).isApprox(vec({1, -2, 5})));
  CHECK(diag_project(SymMatrix::from_upper(2, {0, 5, 0})).isZero());
}

TEST_CASE("the diagonal is majorized by the spectrum") {
  CounterRng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 5;
    const SymMatrix a = oracle::random_symmetric(d, rng);
    CHECK(oracle::majorized(oracle::eigenvalues(a.dense()), diag_project(a), 1e-9));
  }
}

TEST_CASE("conjugate_diagonal builds Q diag(p) Q^T") {
  CounterRng rng(14);
  const Eigen::MatrixXd q = oracle::random_orthogonal(4, rng);
  const Eigen::VectorXd p = vec({3, 1, 0, -2});
  const SymMatrix a = conjugate_diagonal(q, p);
  CHECK((a.dense() - q * p.asDiagonal() * q.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((oracle::eigenvalues(a.dense()) - p).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Kronecker products") {
  const Eigen::MatrixXd b{{1, 2}, {2, 3}};
  const Eigen::MatrixXd k = kron(Eigen::MatrixXd::Identity(2, 2), b);
  CHECK(k.topLeftCorner(2, 2) == b);
  CHECK(k.bottomRightCorner(2, 2) == b);
  CHECK(k.topRightCorner(2, 2).isZero());

  const Eigen::MatrixXd d = kron(vec({1, 2}).asDiagonal().toDenseMatrix(), vec({3, 4}).asDiagonal().toDenseMatrix());
  CHECK(d == vec({3, 4, 6, 8}).asDiagonal().toDenseMatrix());

  CounterRng rng(15);
  const SymMatrix x = oracle::random_symmetric(2, rng);
  const SymMatrix y = oracle::random_symmetric(2, rng);
  const Eigen::VectorXd lx = oracle::eigenvalues(x.dense());
  const Eigen::VectorXd ly = oracle::eigenvalues(y.dense());
  std::vector<double> products;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) products.push_back(lx(i) * ly(j));
  const Eigen::VectorXd lk = oracle::eigenvalues(kron(x.dense(), y.dense()));
  CHECK(oracle::multiset_distance(products, {lk.data(), lk.data() + 4}) <= 1e-12);

  CHECK_THROWS_AS(kron(Eigen::MatrixXd::Identity(3, 3), Eigen::MatrixXd::Identity(3, 3), 8), CapExceeded);
}

TEST_CASE("k-subsets in lexicographic order") {
  CHECK(k_subsets(3, 2) == std::vector<Subset>{{0, 1}, {0, 2}, {1, 2}});
  CHECK(k_subsets(4, 0) == std::vector<Subset>{{}});
  CHECK(k_subsets(5, 2) == std::vector<Subset>{{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2},
                                                {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}});
  CHECK(k_subsets(5, 3).size() == 10);
  CHECK(k_subsets(5, 3).front() == Subset{0, 1, 2});
  CHECK(k_subsets(5, 3).back() == Subset{2, 3, 4});
  CHECK_THROWS_AS(k_subsets(3, 4), InputError);
}

TEST_CASE("binomial coefficients") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(6, 0) == 1);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK_THROWS_AS(binomial(70, 35), CapExceeded);
}

TEST_CASE("characteristic polynomial coefficients") {
  const Eigen::VectorXd eta = char_poly_coeffs(diag_embed(vec({1, 2, 3})));
  CHECK(eta.isApprox(vec({6, 11, 6})));
  CHECK(char_poly_coeffs(SymMatrix(3)).isZero());

  CounterRng rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 1 + trial % 6;
    const SymMatrix a = oracle::random_symmetric(d, rng);
    const Eigen::VectorXd e = char_poly_coeffs(a);
    const Eigen::VectorXd expected = oracle::elementary_symmetric(oracle::eigenvalues(a.dense()));
    const Eigen::VectorXd rotated = char_poly_coeffs(conjugate(oracle::random_orthogonal(d, rng), a));
    for (int i = 0; i < d; ++i) {
      const double scale = std::max(1.0, std::abs(expected(i)));
      CHECK(std::abs(e(i) - expected(i)) <= 1e-9 * scale);
      CHECK(std::abs(rotated(i) - e(i)) <= 1e-8 * scale);
    }
  }
}
