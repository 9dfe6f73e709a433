#include <doctest.h>

#include <algorithm>
#include <vector>

#include "specconvex/oracles.hpp"
#include "specconvex/schurrep.hpp"
#include "specconvex/shadowrep.hpp"

using namespace specconvex;

namespace {

using V = std::vector<double>;

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

std::vector<double> as_vector(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

std::vector<double> upper_values(const SymMatrix& a) { return {a.upper().begin(), a.upper().end()}; }

SymmetricPolyhedron random_polyhedron(int d, int m, CounterRng& rng) {
  std::vector<OrbitHalfspace> orbits;
  for (int i = 0; i < m; ++i) {
    V a(static_cast<std::size_t>(d));
    for (double& x : a) x = rng.normal();
    orbits.emplace_back(std::move(a), rng.uniform(0.5, 2.0));
  }
  return SymmetricPolyhedron(d, std::move(orbits));
}

double stacked_min_eig(const SdpProblem& lmi, const SymMatrix& a) {
  double m = 1e300;
  for (const PsdBlock& b : lmi.blocks) m = std::min(m, min_eigenvalue(evaluate_block(b, upper_values(a))));
  return m;
}

}  // namespace

TEST_CASE("first compound is A") {
  CounterRng rng(41);
  const SymMatrix a = oracle::random_symmetric(4, rng);
  CHECK(schur_functor(a, 1).M == a.dense());
}

TEST_CASE("second compound of a diagonal matrix") {
  const CompoundMatrix l = schur_functor(diag_embed(vec({5, 3, 1})), 2);
  CHECK(l.M == vec({8, 6, 4}).asDiagonal().toDenseMatrix());
}

TEST_CASE("top compound is the trace") {
  CounterRng rng(42);
  const SymMatrix a = oracle::random_symmetric(4, rng);
  const CompoundMatrix l = schur_functor(a, 4);
  REQUIRE(l.M.rows() == 1);
  CHECK(l.M(0, 0) == doctest::Approx(a.trace()));
  CHECK_THROWS_AS(schur_functor(a, 0), InputError);
  CHECK_THROWS_AS(schur_functor(a, 5), InputError);
}

TEST_CASE("compound eigenvalues are subset sums") {
  CounterRng rng(43);
  for (int d = 2; d <= 5; ++d)
    for (int k = 1; k <= d; ++k)
      for (int trial = 0; trial < 30; ++trial) {
        const SymMatrix a = oracle::random_symmetric(d, rng);
        const Eigen::VectorXd ev = oracle::eigenvalues(schur_functor(a, k).M);
        CHECK(oracle::multiset_distance(as_vector(ev), oracle::subset_sums(oracle::eigenvalues(a.dense()), k)) <= 1e-9);
      }
}

TEST_CASE("compounds are linear and the sparse form matches") {
  CounterRng rng(44);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + trial % 4;
    const int k = 1 + trial % d;
    const SymMatrix a = oracle::random_symmetric(d, rng);
    const SymMatrix b = oracle::random_symmetric(d, rng);
    const double s = rng.normal();
    const Eigen::MatrixXd lhs = schur_functor(a + s * b, k).M;
    const Eigen::MatrixXd rhs = schur_functor(a, k).M + s * schur_functor(b, k).M;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((schur_functor_sparse(a, k).dense() - schur_functor(a, k).M).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("compounds commute with orthogonal conjugation up to similarity") {
  CounterRng rng(45);
  const SymMatrix a = oracle::random_symmetric(4, rng);
  const SymMatrix b = conjugate(oracle::random_orthogonal(4, rng), a);
  for (int k = 1; k <= 4; ++k) {
    const Eigen::VectorXd ea = oracle::eigenvalues(schur_functor(a, k).M);
    const Eigen::VectorXd eb = oracle::eigenvalues(schur_functor(b, k).M);
    CHECK((ea - eb).cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("sfh special generators") {
  CounterRng rng(46);
  const SymMatrix a = oracle::random_symmetric(2, rng);
  CHECK((sfh(DescendingVector::checked({1, 0}), a) - a.dense()).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK((sfh(DescendingVector::checked({1, 1}), a) - a.trace() * Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() <= 1e-14);
}

TEST_CASE("sfh eigenvalues are the chain values") {
  CounterRng rng(47);
  for (int d = 2; d <= 4; ++d)
    for (int trial = 0; trial < 10; ++trial) {
      const DescendingVector a = DescendingVector::checked(oracle::random_descending(d, rng));
      const SymMatrix m = oracle::random_symmetric(d, rng);
      const Eigen::MatrixXd s = sfh(a, m);
      CHECK(s.rows() == static_cast<Eigen::Index>(sfh_order(d)));
      CHECK((sfh_sparse(a, m).dense() - s).cwiseAbs().maxCoeff() <= 1e-14);
      const Eigen::VectorXd ev = oracle::eigenvalues(s);
      CHECK(oracle::multiset_distance(as_vector(ev), oracle::chain_values(a.eigen(), oracle::eigenvalues(m.dense()))) <=
            1e-9);
    }
}

TEST_CASE("sfh of a diagonal matrix has the chain vectors on its diagonal") {
  const DescendingVector a = DescendingVector::checked({3, 2, 0});
  const Eigen::VectorXd lambda = vec({1, -2, 5});
  const Eigen::MatrixXd s = sfh(a, diag_embed(lambda));
  CHECK(s.isDiagonal());
  ChainStream stream(3);
  while (const NumericalChain* c = stream.next())
    CHECK(s(static_cast<Eigen::Index>(stream.position()), static_cast<Eigen::Index>(stream.position())) ==
          doctest::Approx(chain_vector(a, *c).dot(lambda)));
}

TEST_CASE("sfh is capped") {
  CHECK_THROWS_AS(sfh(DescendingVector::checked({6, 5, 4, 3, 2, 1}), SymMatrix(6)), CapExceeded);
}

TEST_CASE("spectrahedron sizes") {
  CounterRng rng(48);
  const SdpProblem one = build_spectrahedron(random_polyhedron(3, 1, rng));
  REQUIRE(one.blocks.size() == 1);
  CHECK(one.blocks[0].order == 9);
  CHECK(one.size() == 9);
  const SdpProblem two = build_spectrahedron(random_polyhedron(4, 2, rng));
  REQUIRE(two.blocks.size() == 2);
  CHECK(two.blocks[0].order == 96);
  CHECK(two.size() == 192);
  CHECK(two.metadata.formula_size == 192);
  CHECK_THROWS_AS(build_spectrahedron(random_polyhedron(6, 1, rng)), CapExceeded);
}

TEST_CASE("spectrahedron agrees with the eigenvalue membership oracle") {
  CounterRng rng(49);
  for (int instance = 0; instance < 3; ++instance) {
    const SymmetricPolyhedron p = random_polyhedron(3, 1 + instance, rng);
    const SdpProblem lmi = build_spectrahedron(p);
    for (int trial = 0; trial < 300; ++trial) {
      const SymMatrix g = oracle::random_symmetric(3, rng);
      const Eigen::VectorXd lambda = oracle::eigenvalues(g.dense());
      double ratio = 0.0;
      for (const OrbitHalfspace& h : p.orbits())
        ratio = std::max(ratio, oracle::permutation_max(h.a().eigen(), lambda) / h.b());
      const SymMatrix a = (ratio > 0 ? rng.uniform(0.5, 1.5) / ratio : 1.0) * g;
      const Eigen::VectorXd la = oracle::eigenvalues(a.dense());
      double slack = 1e300;
      for (const OrbitHalfspace& h : p.orbits())
        slack = std::min(slack, h.b() - oracle::permutation_max(h.a().eigen(), la));
      const double m = stacked_min_eig(lmi, a);
      CHECK(std::abs(m - slack) <= 1e-9 * std::max(1.0, std::abs(slack)) + 1e-10);
      if (std::abs(slack) > 1e-7) CHECK((m >= 0) == (slack > 0));
    }
  }
}

TEST_CASE("permutahedron LMI") {
  const DescendingVector p = DescendingVector::checked({1, 0, 0});
  const SdpProblem lmi = permutahedron_lmi(p);
  CHECK(lmi.size() == 6);
  CHECK(check_assignment(lmi, upper_values(diag_embed(vec({1, 0, 0}))), 1e-9).feasible);
  CHECK(check_assignment(lmi, upper_values((1.0 / 3) * SymMatrix::identity(3)), 1e-9).feasible);
  CHECK_FALSE(check_assignment(lmi, upper_values(diag_embed(vec({1.2, -0.2, 0}))), 1e-9).feasible);
  CHECK_FALSE(check_assignment(lmi, upper_values(0.5 * SymMatrix::identity(3)), 1e-9).feasible);

  CounterRng rng(50);
  for (int trial = 0; trial < 300; ++trial) {
    const int d = 2 + trial % 4;
    const DescendingVector pd = DescendingVector::checked(oracle::random_descending(d, rng));
    const Eigen::VectorXd pv = pd.eigen();
    const SdpProblem l = permutahedron_lmi(pd);
    CHECK(l.size() == (1ull << d) - 2);
    SymMatrix a = oracle::random_symmetric(d, rng);
    a -= (a.trace() - pv.sum()) / d * SymMatrix::identity(d);
    if (trial % 2 == 0)
      a = conjugate_diagonal(oracle::random_orthogonal(d, rng), oracle::random_doubly_stochastic(d, rng) * pv);
    const Eigen::VectorXd la = oracle::eigenvalues(a.dense());
    double margin = 1e300;
    for (int k = 1; k < d; ++k) margin = std::min(margin, oracle::max_subset_sum(pv, k) - oracle::max_subset_sum(la, k));
    if (std::abs(margin) > 1e-7) CHECK(check_assignment(l, upper_values(a), 1e-9).feasible == (margin > 0));
  }
}

TEST_CASE("adjugate functor for d = 2") {
  const SymMatrix r = adjugate_functor_d2(V{2, 1}, diag_embed(vec({3, 1})));
  CHECK(r == diag_embed(vec({7, 5})));
  CounterRng rng(51);
  for (int trial = 0; trial < 100; ++trial) {
    const SymMatrix a = oracle::random_symmetric(2, rng);
    const SymMatrix sum = adjugate_functor_d2(V{1, 1}, a);
    CHECK((sum - a.trace() * SymMatrix::identity(2)).max_abs() <= 1e-14);
    const double a1 = rng.normal();
    const double a2 = rng.normal();
    const Eigen::VectorXd l = oracle::eigenvalues(a.dense());
    const Eigen::VectorXd ev = oracle::eigenvalues(adjugate_functor_d2(V{a1, a2}, a).dense());
    CHECK(oracle::multiset_distance(as_vector(ev), {a1 * l(0) + a2 * l(1), a1 * l(1) + a2 * l(0)}) <= 1e-12);
  }
}

TEST_CASE("representation sizes") {
  auto sizes = [](int d, int m) {
    std::vector<OrbitHalfspace> orbits;
    for (int i = 0; i < m; ++i) {
      V a(static_cast<std::size_t>(d));
      for (int j = 0; j < d; ++j) a[j] = d - j + i;
      orbits.emplace_back(a, 1.0);
    }
    return representation_sizes(SymmetricPolyhedron(d, orbits));
  };
  CHECK(sizes(3, 1).upper == 9);
  CHECK(sizes(3, 1).lower == 6);
  CHECK(sizes(4, 1).upper == 96);
  CHECK(sizes(4, 1).lower == 24);
  CHECK(sizes(5, 2).upper == 5000);
  CHECK(sizes(5, 2).lower == 240);
  CHECK(sizes(5, 2).generic);
  CHECK_FALSE(representation_sizes(SymmetricPolyhedron(3, {OrbitHalfspace({1, 0, 0}, 1)})).generic);
}
