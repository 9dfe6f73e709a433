#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "specconvex/oracles.hpp"
#include "specconvex/specgeo.hpp"

using namespace specconvex;

namespace {

using V = std::vector<double>;

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

Eigen::VectorXd random_vector(int d, CounterRng& rng) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v(i) = rng.normal();
  return v;
}

std::vector<Eigen::VectorXd> permutations_of(const Eigen::VectorXd& p) {
  std::vector<int> idx(static_cast<std::size_t>(p.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::vector<Eigen::VectorXd> out;
  do {
    Eigen::VectorXd v(p.size());
    for (Eigen::Index i = 0; i < p.size(); ++i) v(i) = p(idx[i]);
    out.push_back(v);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

}  // namespace

TEST_CASE("support_hull examples") {
  const OrbitHull k = OrbitHull::permutahedron(DescendingVector::checked({1, 0, 0}));
  CHECK(support_hull(k, vec({1, 1, 0})) == doctest::Approx(1));
  const OrbitHull ball = OrbitHull::ball(3, 1.0);
  CHECK(support_hull(ball, vec({3, 0, 4})) == doctest::Approx(5));
}

TEST_CASE("support_spectral examples") {
  const OrbitHull k = OrbitHull::permutahedron(DescendingVector::checked({1, 0, 0}));
  CounterRng rng(71);
  const SymMatrix b = conjugate_diagonal(oracle::random_orthogonal(3, rng), vec({2, -1, -1}));
  CHECK(support_spectral(k, b) == doctest::Approx(2).epsilon(1e-12));
  const OrbitHull centered = OrbitHull::permutahedron(DescendingVector::checked({1, 0, -1}));
  CHECK(support_spectral(centered, SymMatrix(3)) == 0.0);
}

TEST_CASE("support_hull matches permutation enumeration") {
  CounterRng rng(72);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 4;
    std::vector<DescendingVector> points;
    for (int i = 0; i < 1 + trial % 3; ++i) points.push_back(DescendingVector::checked(oracle::random_descending(d, rng)));
    const double radius = trial % 2 ? rng.uniform() : 0.0;
    const OrbitHull k(d, points, radius);
    const Eigen::VectorXd c = random_vector(d, rng);
    double brute = -1e300;
    for (const DescendingVector& v : points) brute = std::max(brute, oracle::permutation_max(v.eigen(), c));
    brute += radius * c.norm();
    CHECK(support_hull(k, c) == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("polar pairing") {
  const OrbitHull k = OrbitHull::permutahedron(DescendingVector::checked({1, -1}));
  CounterRng rng(73);
  for (int trial = 0; trial < 300; ++trial) {
    const SymMatrix a = conjugate_diagonal(oracle::random_orthogonal(2, rng),
                                           oracle::random_doubly_stochastic(2, rng) * vec({1, -1}));
    SymMatrix b = oracle::random_symmetric(2, rng);
    const Eigen::VectorXd lb = oracle::eigenvalues(b.dense());
    b *= rng.uniform() / (lb(0) - lb(1));
    const PairingCheck pc = polar_pairing_check(k, a, b, 1e-9);
    CHECK(pc.a_in_body);
    CHECK(pc.b_in_polar);
    CHECK(pc.holds);
    CHECK(pc.pairing <= 1 + 1e-9);
  }
  const PairingCheck zero = polar_pairing_check(k, SymMatrix(2), SymMatrix(2), 1e-9);
  CHECK(zero.pairing == 0.0);
  CHECK(zero.holds);
}

TEST_CASE("Minkowski sums") {
  CounterRng rng(74);
  const SymMatrix b = oracle::random_symmetric(3, rng);
  const double norm = oracle::eigenvalues(b.dense()).norm();
  CHECK(minkowski_support(OrbitHull::ball(3, 1), OrbitHull::ball(3, 2), b) == doctest::Approx(3 * norm));
  const OrbitHull origin = OrbitHull::permutahedron(DescendingVector::checked({0, 0, 0}));
  const OrbitHull k(3, {DescendingVector::checked({2, 1, -1}), DescendingVector::checked({0, 0, -2})}, 0.3);
  CHECK(support_spectral(minkowski_sum(k, origin), b) == doctest::Approx(support_spectral(k, b)));
  const OrbitHull l(3, {DescendingVector::checked({1, 1, 0})}, 0.2);
  CHECK(support_spectral(minkowski_sum(k, l), b) == doctest::Approx(minkowski_support(k, l, b)));
}

TEST_CASE("zonotope support examples") {
  CHECK(zonotope_support(SpectralZonotope(2, {vec({1, -1})}), vec({1, 0})) == doctest::Approx(2));
  CounterRng rng(75);
  const SymMatrix b = conjugate_diagonal(oracle::random_orthogonal(3, rng), vec({1, 0, -1}));
  CHECK(zonotope_support(SpectralZonotope(3, {vec({1, -1, 0})}), b) == doctest::Approx(8).epsilon(1e-12));
  const Eigen::VectorXd c = random_vector(4, rng);
  CHECK(zonotope_support(SpectralZonotope(4, {vec({1, 0, 0, 0})}), c) == doctest::Approx(6 * c.lpNorm<1>()));
  CHECK_THROWS_AS(zonotope_support(SpectralZonotope(9, {Eigen::VectorXd::Ones(9)}), Eigen::VectorXd::Ones(9)),
                  CapExceeded);
}

TEST_CASE("commutator map") {
  const Eigen::MatrixXd m = commutator_map(diag_embed(vec({3, 1})));
  REQUIRE(m.cols() == 1);
  REQUIRE(m.rows() == 2);
  const Eigen::VectorXd sv = m.jacobiSvd().singularValues();
  CHECK(sv(0) == doctest::Approx(2));
  CHECK(commutator_map(2.5 * SymMatrix::identity(4)).isZero());

  CounterRng rng(76);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 4;
    const SymMatrix b = oracle::random_symmetric(d, rng);
    const Eigen::VectorXd l = oracle::eigenvalues(b.dense());
    double sum = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) sum += std::abs(l(i) - l(j));
    const Eigen::MatrixXd c = commutator_map(b);
    CHECK(c.rows() == d * (d + 1) / 2 - 1);
    CHECK(c.cols() == d * (d - 1) / 2);
    CHECK(nuclear_norm(c) == doctest::Approx(sum).epsilon(1e-10));
    // the map is X -> BX - XB in the stated bases
    const int col = static_cast<int>(rng.below(static_cast<std::uint64_t>(c.cols())));
    int i0 = 0, j0 = 1, idx = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j, ++idx)
        if (idx == col) {
          i0 = i;
          j0 = j;
        }
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(d, d);
    x(i0, j0) = 1 / std::numbers::sqrt2;
    x(j0, i0) = -1 / std::numbers::sqrt2;
    const Eigen::MatrixXd image = b.dense() * x - x * b.dense();
    CHECK(std::abs(image.norm() - c.col(col).norm()) <= 1e-12);
    CHECK(std::abs(image.trace()) <= 1e-12);
  }
}

TEST_CASE("hull distance is the Euclidean projection") {
  const OrbitHull seg = OrbitHull::permutahedron(DescendingVector::checked({1, -1}));
  CHECK(hull_distance(seg, vec({3, 0})).distance == doctest::Approx(std::hypot(2.0, 1.0)));
  CHECK(hull_distance(seg, vec({0.5, 0.0})).distance == doctest::Approx(0.25 * std::numbers::sqrt2));
  CHECK(hull_distance(seg, vec({0.2, -0.2})).distance <= 1e-12);

  CounterRng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 3 + trial % 2;
    std::vector<DescendingVector> points;
    for (int i = 0; i < 1 + trial % 3; ++i) points.push_back(DescendingVector::checked(oracle::random_descending(d, rng)));
    const OrbitHull k(d, points, 0.0);
    const Eigen::VectorXd x = 2 * random_vector(d, rng);
    const HullDistance h = hull_distance(k, x);
    CHECK(h.distance == doctest::Approx((x - h.nearest).norm()).epsilon(1e-9));
    // y is the projection iff <x - y, z - y> <= 0 for every vertex z
    for (const DescendingVector& v : points)
      for (const Eigen::VectorXd& z : permutations_of(v.eigen()))
        CHECK((x - h.nearest).dot(z - h.nearest) <= 1e-8);
  }
}

TEST_CASE("spectral hull membership") {
  const OrbitHull k = OrbitHull::permutahedron(DescendingVector::checked({1, 0, 0}));
  CHECK(spectral_hull_contains(k, (1.0 / 3) * SymMatrix::identity(3), 1e-9));
  CHECK_FALSE(spectral_hull_contains(k, SymMatrix::identity(3), 1e-9));
  const OrbitHull fat(3, {DescendingVector::checked({1, 0, 0})}, 0.5);
  CHECK(spectral_hull_contains(fat, diag_embed(vec({1.4, 0, 0})), 1e-9));
  CHECK_FALSE(spectral_hull_contains(fat, diag_embed(vec({1.6, 0, 0})), 1e-9));
}

TEST_CASE("Steiner constants") {
  CHECK(steiner_constant(1) == doctest::Approx(1.0));
  CHECK(steiner_constant(2) == doctest::Approx(std::numbers::pi / std::numbers::sqrt2).epsilon(1e-12));
  CHECK(steiner_constant(2) ==
        doctest::Approx(oracle::ball_volume(3) / oracle::disk_vandermonde_integral(1.0)).epsilon(1e-12));
  CHECK(hurwitz_prefactor(1) == doctest::Approx(4.0));
  CHECK(hurwitz_prefactor(2) == doctest::Approx(32 * std::numbers::pi));
  for (int n = 0; n <= 10; ++n) CHECK(unit_ball_volume(n) == doctest::Approx(oracle::ball_volume(n)).epsilon(1e-12));
}

TEST_CASE("Steiner Monte Carlo for the unit ball") {
  const std::vector<double> ts{0.0, 1.0};
  const auto est = steiner_mc(OrbitHull::ball(2, 1.0), ts, 200000, 5);
  REQUIRE(est.size() == 2);
  for (const SteinerEstimate& e : est) {
    const double expected = oracle::ball_volume(3) * std::pow(1 + e.t, 3);
    CHECK(std::abs(e.volume - expected) <= 3 * e.standard_error);
  }
  const auto again = steiner_mc(OrbitHull::ball(2, 1.0), ts, 200000, 5);
  CHECK(again[0].volume == est[0].volume);
  CHECK(again[1].standard_error == est[1].standard_error);

  const std::vector<double> zero{0.0};
  const OrbitHull seg = OrbitHull::permutahedron(DescendingVector::checked({1, -1}));
  CHECK_THROWS_AS(steiner_mc(seg, zero, 20000, 1), InputError);
  CHECK_THROWS_AS(steiner_mc(OrbitHull::ball(5, 1.0), zero, 20000, 1), InputError);
  CHECK_THROWS_AS(steiner_mc(OrbitHull::ball(2, 1.0), zero, 100, 1), InputError);
}

TEST_CASE("Steiner volumes match direct sampling in matrix coordinates") {
  // K = segment [(1,-1), (-1,1)] + 0.5 B; sample (x, y, z) with A = [[x, y/sqrt2], [y/sqrt2, z]]
  const OrbitHull k(2, {DescendingVector::checked({1, -1})}, 0.5);
  CounterRng rng(78);
  constexpr int n = 100000;
  constexpr double half = 2.2;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.uniform(-half, half);
    const double y = rng.uniform(-half, half);
    const double z = rng.uniform(-half, half);
    hits += spectral_hull_contains(k, SymMatrix::from_upper(2, {x, y / std::numbers::sqrt2, z}), 1e-12) ? 1 : 0;
  }
  const double box = std::pow(2 * half, 3);
  const double frac = static_cast<double>(hits) / n;
  const double direct = box * frac;
  const double direct_se = box * std::sqrt(frac * (1 - frac) / n);
  const double exact = steiner_constant(2) * oracle::stadium_vandermonde_integral(0.5);
  CHECK(std::abs(direct - exact) <= 3 * direct_se);

  const std::vector<double> ts{0.5};
  const SteinerEstimate e = steiner_mc(OrbitHull::permutahedron(DescendingVector::checked({1, -1})), ts, 400000, 9)[0];
  CHECK(std::abs(e.volume - exact) <= 3 * e.standard_error);
}

TEST_CASE("calibration") {
  const Calibration c2 = calibrate_cd(2, 400000, 3);
  CHECK(std::abs(c2.value - std::numbers::pi / std::numbers::sqrt2) <= 0.01 * c2.exact);
  const Calibration a = calibrate_cd(3, 400000, 1);
  const Calibration b = calibrate_cd(3, 400000, 2);
  CHECK(a.value > 0);
  CHECK(std::isfinite(a.value));
  CHECK(std::abs(a.value - b.value) <= 0.02 * a.value);
  CHECK(std::abs(a.value - a.exact) <= 0.02 * a.exact);
  CHECK_THROWS_AS(calibrate_cd(1, 400000, 1), InputError);
}

TEST_CASE("quermass fit") {
  const double omega = oracle::ball_volume(3);
  std::vector<SteinerSample> cubic;
  for (double t : {0.0, 0.5, 1.0, 2.0, 3.0}) cubic.push_back({t, omega * std::pow(1 + t, 3), 0.0});
  const QuermassFit fit = quermass_fit(cubic, 3);
  REQUIRE(fit.W.size() == 4);
  for (double w : fit.W) CHECK(std::abs(w - omega) <= 1e-9);
  CHECK(std::abs(fit.polynomial[1] - 3 * omega) <= 1e-9);

  std::vector<SteinerSample> flat;
  for (double t : {0.0, 1.0, 2.0, 3.0, 4.0}) flat.push_back({t, 5.0, 0.0});
  const QuermassFit constant = quermass_fit(flat, 0);
  REQUIRE(constant.polynomial.size() == 1);
  CHECK(constant.polynomial[0] == doctest::Approx(5));
  const QuermassFit higher = quermass_fit(flat, 3);
  CHECK(higher.W[3] == doctest::Approx(5));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(higher.W[i]) <= 1e-9);

  CHECK_THROWS_AS(quermass_fit(std::vector<SteinerSample>{{1.0, 2.0, 0.0}, {1.0, 2.0, 0.0}}, 1), InputError);
}

TEST_CASE("hyperbolicity picture") {
  // {x : x_i >= 0} as the orbit of -e_d, read with orientation >=
  const SymmetricPolyhedron orthant(3, {OrbitHalfspace({0, 0, -1}, 0)});
  CounterRng rng(79);
  for (int trial = 0; trial < 300; ++trial) {
    SymMatrix x = oracle::random_symmetric(3, rng);
    x += rng.uniform(-0.5, 2.0) * SymMatrix::identity(3);
    const double min_eig = oracle::eigenvalues(x.dense()).minCoeff();
    // <sigma(0,0,-1), lambda> <= 0 for all sigma  <=>  lambda >= 0
    if (std::abs(min_eig) > 1e-9) CHECK(spectral_contains(orthant, x, 1e-12).inside == (min_eig > 0));
  }

  const SymmetricPolyhedron cone(3, {OrbitHalfspace({1, 0, 0}, 0)});
  const HyperbolicityReport r = hyperbolicity_sample_check(cone, 200, 1);
  CHECK(r.degree == 6);
  CHECK(r.identity_interior);
  CHECK(r.factor_agreements == 200);
  CHECK(r.root_agreements == 200);
  CHECK(r.max_identity_error <= 1e-12);

  for (int trial = 0; trial < 5; ++trial) {
    std::vector<OrbitHalfspace> orbits;
    for (int i = 0; i < 2; ++i) {
      V a{rng.normal(), rng.normal(), rng.normal()};
      const double s = a[0] + a[1] + a[2];
      if (s <= 0) for (double& v : a) v = -v;
      orbits.emplace_back(a, 0.0);
    }
    const HyperbolicityReport rr = hyperbolicity_sample_check(SymmetricPolyhedron(3, orbits), 200, 10 + trial);
    CHECK(rr.identity_interior);
    CHECK(rr.factor_agreements == 200);
    CHECK(rr.root_agreements == 200);
  }

  const HyperbolicityReport flat = hyperbolicity_sample_check(SymmetricPolyhedron(3, {OrbitHalfspace({1, -1, 0}, 0)}), 50, 2);
  CHECK_FALSE(flat.identity_interior);
  CHECK(flat.skipped_factors > 0);
  CHECK_THROWS_AS(hyperbolicity_sample_check(SymmetricPolyhedron(3, {OrbitHalfspace({1, 0, 0}, 1)}), 10, 1), InputError);
}
