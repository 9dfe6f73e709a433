#include "specconvex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "specconvex/errors.hpp"
#include "specconvex/majorization.hpp"
#include "specconvex/oracles.hpp"
#include "specconvex/probio.hpp"
#include "specconvex/schurrep.hpp"
#include "specconvex/shadowrep.hpp"
#include "specconvex/specgeo.hpp"
#include "specconvex/symcore.hpp"
#include "specconvex/sympoly.hpp"

namespace specconvex {

using nlohmann::json;

namespace {

struct Tally {
  SuiteResult r;

  explicit Tally(std::string name) { r.name = std::move(name); }

  void check(bool ok) {
    ++r.checks;
    if (!ok) ++r.failures;
  }
  /// error <= bound counts as a pass; the error is recorded.
  void within(double error, double bound) {
    r.max_error = std::max(r.max_error, error);
    check(error <= bound);
  }
};

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::VectorXd sorted_desc(Eigen::VectorXd v) {
  std::sort(v.data(), v.data() + v.size(), std::greater<>());
  return v;
}

Eigen::VectorXd oracle_lambda(const SymMatrix& a) { return oracle::eigenvalues(a.dense()); }

std::vector<double> upper_values(const SymMatrix& a) { return {a.upper().begin(), a.upper().end()}; }

/// Q diag(D p) Q^T: a member of Lambda(Pi(p)) by Hardy-Littlewood-Polya.
SymMatrix member_of_orbitope(const Eigen::VectorXd& p, CounterRng& rng) {
  const int d = static_cast<int>(p.size());
  const Eigen::VectorXd q = oracle::random_doubly_stochastic(d, rng) * p;
  return conjugate_diagonal(oracle::random_orthogonal(d, rng), q);
}

SymmetricPolyhedron random_polyhedron(int d, int m, CounterRng& rng) {
  std::vector<OrbitHalfspace> orbits;
  for (int i = 0; i < m; ++i) {
    std::vector<double> a(static_cast<std::size_t>(d));
    for (double& x : a) x = rng.normal();
    orbits.emplace_back(std::move(a), rng.uniform(0.5, 2.0));
  }
  return SymmetricPolyhedron(d, std::move(orbits));
}

/// min_i (b_i - max_sigma <sigma a_i, lambda>) by permutation enumeration.
double oracle_slack(const SymmetricPolyhedron& p, const Eigen::VectorXd& lambda) {
  double slack = std::numeric_limits<double>::infinity();
  for (const OrbitHalfspace& h : p.orbits()) slack = std::min(slack, h.b() - oracle::permutation_max(h.a().eigen(), lambda));
  return slack;
}

/// Rescales a random symmetric matrix so that it lands on either side of
/// the boundary of Lambda(P) (0 is interior since every b > 0).
SymMatrix straddling_matrix(const SymmetricPolyhedron& p, CounterRng& rng) {
  const int d = p.dim();
  SymMatrix g = oracle::random_symmetric(d, rng);
  const Eigen::VectorXd lambda = oracle_lambda(g);
  double ratio = 0.0;
  for (const OrbitHalfspace& h : p.orbits())
    ratio = std::max(ratio, oracle::permutation_max(h.a().eigen(), lambda) / h.b());
  const double scale = ratio > 0.0 ? rng.uniform(0.5, 1.5) / ratio : 1.0;
  return scale * g;
}

double polyhedron_scale(const SymmetricPolyhedron& p, const Eigen::VectorXd& lambda) {
  double s = 1.0;
  for (const OrbitHalfspace& h : p.orbits())
    s = std::max(s, std::abs(h.b()) + h.a().eigen().lpNorm<1>() * lambda.lpNorm<Eigen::Infinity>());
  return s;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

SuiteResult suite_eigh(const SuiteOptions& o, CounterRng& rng) {
  Tally t("eigh");
  for (int trial = 0; trial < o.trials; ++trial) {
    const int d = 1 + trial % 6;
    SymMatrix a = oracle::random_symmetric(d, rng);
    if (trial % 5 == 4) {
      // repeated eigenvalues
      Eigen::VectorXd p(d);
      for (int i = 0; i < d; ++i) p(i) = static_cast<double>(i / 2);
      a = conjugate_diagonal(oracle::random_orthogonal(d, rng), p);
    }
    const double scale = std::max(1.0, a.max_abs());
    const SpectralDecomposition e = eigh(a);
    const Eigen::MatrixXd rebuilt = e.Q * e.lambda.asDiagonal() * e.Q.transpose();
    t.within((rebuilt - a.dense()).cwiseAbs().maxCoeff() / scale, 1e-10);
    t.within((e.Q.transpose() * e.Q - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-12 * d);
    bool descending = true;
    for (int i = 1; i < d; ++i) descending = descending && e.lambda(i - 1) >= e.lambda(i);
    t.check(descending);
    const Eigen::VectorXd ref = oracle::eigenvalues(a.dense());
    t.within((e.lambda - ref).cwiseAbs().maxCoeff() / scale, 1e-9);
    const Eigen::VectorXd eta = char_poly_coeffs(a);
    const Eigen::VectorXd expected = oracle::elementary_symmetric(ref);
    const Eigen::VectorXd magnitude = oracle::elementary_symmetric(ref.cwiseAbs());
    double worst = 0.0;
    for (int i = 0; i < d; ++i) worst = std::max(worst, std::abs(eta(i) - expected(i)) / std::max(1.0, magnitude(i)));
    t.within(worst, 1e-8);
  }
  return t.r;
}

SuiteResult suite_majorization(const SuiteOptions& o, CounterRng& rng) {
  Tally t("majorization");
  int inside = 0;
  for (int trial = 0; trial < o.trials; ++trial) {
    const int d = 2 + trial % 5;
    const Eigen::VectorXd p = to_eigen(oracle::random_descending(d, rng));
    Eigen::VectorXd q = oracle::random_doubly_stochastic(d, rng) * p;
    if (trial % 2 == 1) {
      Eigen::VectorXd noise(d);
      for (int i = 0; i < d; ++i) noise(i) = 0.5 * rng.normal();
      q.array() += noise.array() - noise.mean();
    }
    const bool expected = oracle::majorized(p, q, 1e-9);
    inside += expected ? 1 : 0;
    t.check(majorizes(p, q, 1e-9) == expected);

    const SymMatrix a = oracle::random_symmetric(d, rng);
    t.check(oracle::majorized(oracle_lambda(a), diag_project(a), 1e-9 * std::max(1.0, a.max_abs())));

    const Eigen::VectorXd x = to_eigen(oracle::random_descending(d, rng)).reverse();
    const double brute = oracle::permutation_max(q, x);
    t.within(std::abs(orbit_max(q, x) - brute) / std::max(1.0, std::abs(brute)), 1e-12);
  }
  t.r.details = {{"majorized_cases", inside}};
  return t.r;
}

SuiteResult suite_chains(const SuiteOptions& o, CounterRng& rng) {
  Tally t("chains");
  json per_d = json::object();
  for (int d : {3, 4}) {
    std::uint64_t expected_count = 1;
    for (int j = 1; j <= d; ++j) expected_count *= binomial(d, j);
    t.check(chain_count(d) == expected_count);
    ChainStream stream(d);
    std::uint64_t nested = 0;
    std::uint64_t visited = 0;
    while (const NumericalChain* c = stream.next()) {
      ++visited;
      nested += c->nested() ? 1 : 0;
    }
    t.check(visited == expected_count);
    t.check(static_cast<double>(nested) == factorial(d));

    int disagreements = 0;
    int members = 0;
    std::vector<LinearInequality> rows;
    OrbitHalfspace h({1.0}, 1.0);
    for (int trial = 0; trial < o.trials; ++trial) {
      if (trial % 200 == 0) {
        std::vector<double> a(static_cast<std::size_t>(d));
        for (double& x : a) x = rng.normal();
        h = OrbitHalfspace(a, 1.0);
        rows = redundant_description(h);
        ChainStream s(d);
        while (const NumericalChain* c = s.next())
          t.check(oracle::majorized(h.a().eigen(), chain_vector(h.a(), *c), 1e-12));
      }
      Eigen::VectorXd x(d);
      for (int i = 0; i < d; ++i) x(i) = rng.normal();
      const double m = oracle::permutation_max(h.a().eigen(), x);
      if (m > 0.0) x *= rng.uniform(0.5, 1.5) / m;
      const bool orbit_inside = oracle::permutation_max(h.a().eigen(), x) <= h.b() + 1e-9;
      bool chain_inside = true;
      for (const LinearInequality& row : rows) chain_inside = chain_inside && row.coeffs.dot(x) <= row.rhs + 1e-9;
      members += orbit_inside ? 1 : 0;
      disagreements += orbit_inside != chain_inside ? 1 : 0;
      t.check(orbit_inside == chain_inside);
    }
    per_d[std::to_string(d)] = {{"chains", expected_count}, {"points", o.trials}, {"inside", members},
                                {"disagreements", disagreements}};
  }
  t.r.details = per_d;
  return t.r;
}

SuiteResult suite_compound(const SuiteOptions& o, CounterRng& rng) {
  Tally t("compound");
  for (int d = 2; d <= 5; ++d)
    for (int k = 1; k <= d; ++k)
      for (int trial = 0; trial < o.trials; ++trial) {
        const SymMatrix a = oracle::random_symmetric(d, rng);
        const CompoundMatrix l = schur_functor(a, k);
        const Eigen::VectorXd ev = oracle::eigenvalues(l.M);
        t.within(oracle::multiset_distance({ev.data(), ev.data() + ev.size()},
                                           oracle::subset_sums(oracle_lambda(a), k)),
                 1e-8);
      }
  return t.r;
}

SuiteResult suite_sfh(const SuiteOptions& o, CounterRng& rng) {
  Tally t("sfh");
  for (int d = 2; d <= 4; ++d)
    for (int trial = 0; trial < o.trials; ++trial) {
      const DescendingVector a = DescendingVector::checked(oracle::random_descending(d, rng));
      const SymMatrix m = oracle::random_symmetric(d, rng);
      const Eigen::VectorXd ev = oracle::eigenvalues(sfh(a, m));
      const Eigen::VectorXd lambda = oracle_lambda(m);
      const double scale = std::max(1.0, a.eigen().lpNorm<1>() * lambda.lpNorm<Eigen::Infinity>());
      t.within(oracle::multiset_distance({ev.data(), ev.data() + ev.size()}, oracle::chain_values(a.eigen(), lambda)) /
                   scale,
               1e-10);
    }
  return t.r;
}

SuiteResult suite_spectrahedron(const SuiteOptions& o, CounterRng& rng) {
  Tally t("spectrahedron");
  constexpr int kPolyhedra = 5;
  constexpr double kBand = 1e-7;
  int on_band = 0;
  int disagreements = 0;
  int inside = 0;
  const int per = std::max(1, o.trials / kPolyhedra);
  for (int pi = 0; pi < kPolyhedra; ++pi) {
    const SymmetricPolyhedron p = random_polyhedron(3, 1 + pi % 3, rng);
    const SdpProblem lmi = build_spectrahedron(p);
    t.check(lmi.size() == 9 * p.orbit_count());
    for (int trial = 0; trial < per; ++trial) {
      const SymMatrix a = straddling_matrix(p, rng);
      const std::vector<double> x = upper_values(a);
      double min_eig = std::numeric_limits<double>::infinity();
      for (const PsdBlock& b : lmi.blocks) min_eig = std::min(min_eig, min_eigenvalue(evaluate_block(b, x)));
      const Eigen::VectorXd lambda = oracle_lambda(a);
      const double slack = oracle_slack(p, lambda);
      t.within(std::abs(min_eig - slack) / polyhedron_scale(p, lambda), 1e-8);
      if (std::abs(slack) <= kBand) {
        ++on_band;
        continue;
      }
      inside += slack > 0.0 ? 1 : 0;
      const bool agree = (min_eig >= 0.0) == (slack > 0.0);
      disagreements += agree ? 0 : 1;
      t.check(agree);
    }
  }
  const double band_fraction = static_cast<double>(on_band) / (per * kPolyhedra);
  t.check(band_fraction <= 0.005);
  t.r.details = {{"samples", per * kPolyhedra}, {"inside", inside}, {"on_band", on_band},
                 {"disagreements", disagreements}};
  return t.r;
}

SuiteResult suite_permutahedron(const SuiteOptions& o, CounterRng& rng) {
  Tally t("permutahedron");
  int on_band = 0;
  int inside = 0;
  for (int trial = 0; trial < o.trials; ++trial) {
    const int d = 2 + trial % 4;
    const Eigen::VectorXd p = to_eigen(oracle::random_descending(d, rng));
    const SdpProblem lmi = permutahedron_lmi(DescendingVector::checked({p.data(), p.data() + d}));
    t.check(lmi.size() == (1ull << d) - 2);
    SymMatrix a = member_of_orbitope(p, rng);
    if (trial % 2 == 1) {
      // random matrix with the right trace
      SymMatrix g = oracle::random_symmetric(d, rng);
      g -= (g.trace() - p.sum()) / d * SymMatrix::identity(d);
      a = g;
    }
    const Eigen::VectorXd lambda = oracle_lambda(a);
    double margin = std::numeric_limits<double>::infinity();
    for (int k = 1; k < d; ++k)
      margin = std::min(margin, oracle::max_subset_sum(p, k) - oracle::max_subset_sum(lambda, k));
    const AssignmentReport report = check_assignment(lmi, upper_values(a), 1e-9);
    if (std::abs(margin) <= 1e-7) {
      ++on_band;
      continue;
    }
    inside += margin > 0.0 ? 1 : 0;
    t.check(report.feasible == (margin > 0.0));
  }
  t.r.details = {{"inside", inside}, {"on_band", on_band}};
  return t.r;
}

SuiteResult suite_btn(const SuiteOptions& o, CounterRng& rng) {
  Tally t("btn");
  int feasible_cases = 0;
  int infeasible_cases = 0;
  for (int trial = 0; trial < o.trials; ++trial) {
    const int d = 2 + trial % 5;
    const int k = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - 1)));
    const SymMatrix a = oracle::random_symmetric(d, rng);
    const double sk = oracle::max_subset_sum(oracle_lambda(a), k);
    const double scale = std::max(1.0, a.max_abs());
    const SdpProblem lift = btn_lift(d, k);
    t.check(lift.size() == (k == 1 ? static_cast<std::uint64_t>(d) : 2ull * d + 1));

    // the witness certifies tr Z + ks = s_k
    const BtnWitness w = btn_witness(a, k);
    t.within(std::abs(w.Z.trace() + k * w.s - sk) / scale, 1e-9);

    const int mode = trial % 3;  // 0: t = s_k, 1: t = s_k + eps, 2: t = s_k - 1e-3
    const double tval = mode == 0 ? sk : mode == 1 ? sk + rng.uniform(0.0, 0.1) : sk - 1e-3;
    const AssignmentReport report = check_assignment(lift, btn_assignment(a, k, tval), 1e-8);
    if (mode < 2) {
      ++feasible_cases;
      t.check(report.feasible);
      continue;
    }
    ++infeasible_cases;
    t.check(!report.feasible);
    // Any (Z, s) passing both PSD blocks has tr Z + ks >= s_k, so perturbed
    // witnesses must still be rejected at t = s_k - 1e-3.
    if (k == 1) continue;
    for (int r = 0; r < 5; ++r) {
      NamedValues values = btn_assignment(a, k, tval);
      SymMatrix extra = oracle::random_symmetric(d, rng, 0.1);
      extra = conjugate_diagonal(oracle::random_orthogonal(d, rng), oracle_lambda(extra).cwiseAbs());
      for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
          values["Z" + std::to_string(k) + "[" + std::to_string(i) + "," + std::to_string(j) + "]"] +=
              extra(i, j);
      values["s" + std::to_string(k)] += rng.uniform(-0.05, 0.05);
      const AssignmentReport perturbed = check_assignment(lift, values, 1e-8);
      const double tr_z = w.Z.trace() + extra.trace();
      const double s = values["s" + std::to_string(k)];
      const bool blocks_ok = std::all_of(perturbed.blocks.begin(), perturbed.blocks.end(),
                                         [](const BlockReport& b) { return b.min_eigenvalue >= -1e-8; });
      if (blocks_ok) t.check(tr_z + k * s >= sk - 1e-8 * scale);
      t.check(!perturbed.feasible);
    }
  }
  t.r.details = {{"feasible_cases", feasible_cases}, {"infeasible_cases", infeasible_cases}};
  return t.r;
}

SuiteResult suite_hrep(const SuiteOptions& o, CounterRng& rng) {
  Tally t("hrep");
  int inside = 0;
  int on_band = 0;
  SymmetricPolyhedron p = random_polyhedron(3, 2, rng);
  SdpProblem shadow = build_shadow_hrep(p);
  for (int trial = 0; trial < o.trials; ++trial) {
    if (trial % 100 == 0) {
      p = random_polyhedron(3, 1 + (trial / 100) % 3, rng);
      shadow = build_shadow_hrep(p);
      t.check(shadow.size() == p.orbit_count() + 10);
    }
    const SymMatrix a = straddling_matrix(p, rng);
    const double slack = oracle_slack(p, oracle_lambda(a));
    if (std::abs(slack) <= 1e-7) {
      ++on_band;
      continue;
    }
    inside += slack > 0.0 ? 1 : 0;
    const bool feasible = check_assignment(shadow, hrep_witness(p, a), 1e-8).feasible;
    t.check(feasible == (slack > 0.0));
    t.check(spectral_contains(p, a, 1e-9).inside == (slack > 0.0));
  }
  t.r.details = {{"inside", inside}, {"on_band", on_band}};
  return t.r;
}

SuiteResult suite_vrep(const SuiteOptions& o, CounterRng& rng) {
  Tally t("vrep");
  constexpr int d = 3;
  std::vector<DescendingVector> points;
  for (int i = 0; i < 3; ++i) points.push_back(DescendingVector::checked(oracle::random_descending(d, rng)));
  const OrbitHull hull(d, points, 0.0);
  const SdpProblem shadow = build_shadow_vrep(hull);
  t.check(shadow.size() == 3 + 2 * d * d - 2 * d - 2);

  int inside_failures = 0;
  for (int trial = 0; trial < o.trials; ++trial) {
    const std::vector<double> mu = oracle::random_simplex_weights(3, rng);
    Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
    for (int i = 0; i < 3; ++i) p += mu[i] * points[i].eigen();
    const SymMatrix a = member_of_orbitope(p, rng);
    const AssignmentReport report = check_assignment(shadow, vrep_witness(hull, a, mu), 1e-8);
    t.r.max_error = std::max(t.r.max_error, std::max(0.0, -report.worst));
    const bool ok = report.feasible && spectral_hull_contains(hull, a, 1e-9);
    inside_failures += ok ? 0 : 1;
    t.check(ok);
  }

  int outside = 0;
  int inversions = 0;
  int attempts = 0;
  while (outside < o.trials && attempts < 100 * o.trials) {
    ++attempts;
    const SymMatrix g = oracle::random_symmetric(d, rng);
    Eigen::VectorXd c(d);
    for (int i = 0; i < d; ++i) c(i) = rng.normal();
    const Eigen::VectorXd cs = sorted_desc(c);
    const Eigen::VectorXd lambda = sorted_desc(oracle_lambda(g));
    double h = -std::numeric_limits<double>::infinity();
    for (const DescendingVector& v : points) h = std::max(h, cs.dot(v.eigen()));
    const double gain = cs.dot(lambda);
    if (gain <= 0.0) continue;
    const double scale = h > 0.0 ? h / gain * rng.uniform(1.01, 2.0) : rng.uniform(0.1, 2.0);
    const SymMatrix a = scale * g;
    // support separation: <c sorted, lambda(A) sorted> > h_K(c)
    if (!(scale * gain > h)) continue;
    ++outside;
    const bool rejected = !spectral_hull_contains(hull, a, 1e-9);
    inversions += rejected ? 0 : 1;
    t.check(rejected);
  }
  t.check(outside == o.trials);
  t.r.details = {{"inside_samples", o.trials}, {"inside_failures", inside_failures}, {"outside_samples", outside},
                 {"inversions", inversions}};
  return t.r;
}

SuiteResult suite_sizes(const SuiteOptions&, CounterRng& rng) {
  Tally t("sizes");
  json spot;
  for (int d = 2; d <= 6; ++d)
    for (int m = 1; m <= 5; ++m) {
      const SymmetricPolyhedron p = random_polyhedron(d, m, rng);
      const std::uint64_t shadow_expected = static_cast<std::uint64_t>(m + 2 * d * d - 2 * d - 2);
      std::uint64_t order = 1;
      for (int j = 1; j <= d; ++j) order *= binomial(d, j);
      const SdpProblem hrep = build_shadow_hrep(p);
      t.check(hrep.size() == shadow_expected && hrep.metadata.formula_size == shadow_expected);
      std::vector<DescendingVector> points;
      for (int i = 0; i < m; ++i) points.push_back(DescendingVector::checked(oracle::random_descending(d, rng)));
      t.check(build_shadow_vrep(points, d).size() == shadow_expected);
      t.check(representation_sizes(p).upper == m * order);
      if (order <= kDefaultOrderCap) {
        const SdpProblem lmi = build_spectrahedron(p);
        t.check(lmi.size() == m * order && lmi.blocks.size() == static_cast<std::size_t>(m));
      } else {
        bool capped = false;
        try {
          build_spectrahedron(p);
        } catch (const CapExceeded& e) {
          capped = e.requested() == order;
        }
        t.check(capped);
      }
      if (d == 3 && m == 2) spot = {{"hrep", hrep.size()}, {"spectrahedron", m * order}};
    }
  t.r.details = {{"d3_M2", spot}};
  return t.r;
}

SuiteResult suite_nuclear(const SuiteOptions& o, CounterRng& rng) {
  Tally t("nuclear");
  for (int trial = 0; trial < o.trials; ++trial) {
    const int d = 2 + trial % 4;
    const SymMatrix b = oracle::random_symmetric(d, rng);
    const Eigen::VectorXd lambda = oracle_lambda(b);
    std::vector<double> gaps;
    double sum = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        gaps.push_back(std::abs(lambda(i) - lambda(j)));
        sum += gaps.back();
      }
    const Eigen::MatrixXd m = commutator_map(b);
    const Eigen::VectorXd gram = oracle::eigenvalues(m.transpose() * m);
    std::vector<double> singular;
    for (Eigen::Index i = 0; i < gram.size(); ++i) singular.push_back(std::sqrt(std::max(0.0, gram(i))));
    const double scale = std::max(1.0, sum);
    t.within(oracle::multiset_distance(singular, gaps) / scale, 1e-7);
    t.within(std::abs(nuclear_norm(m) - sum) / scale, 1e-8);
    Eigen::VectorXd e12 = Eigen::VectorXd::Zero(d);
    e12(0) = 1.0;
    e12(1) = -1.0;
    const double zono = zonotope_support(SpectralZonotope(d, {e12}), b) / (2.0 * factorial(d - 2));
    t.within(std::abs(zono - sum) / scale, 1e-8);
  }
  return t.r;
}

/// [-1, 1]^d as the orbit hull of the points (1^k, (-1)^{d-k}).
OrbitHull cube(int d) {
  std::vector<DescendingVector> points;
  for (int k = 0; k <= d; ++k) {
    std::vector<double> v(static_cast<std::size_t>(d), -1.0);
    for (int i = 0; i < k; ++i) v[i] = 1.0;
    points.push_back(DescendingVector::checked(v));
  }
  return OrbitHull(d, points, 0.0);
}

SuiteResult suite_duality(const SuiteOptions& o, CounterRng& rng) {
  Tally t("duality");
  double max_pairing = -std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < o.trials; ++trial) {
    const int d = 2 + trial % 4;
    Eigen::VectorXd u(d);
    Eigen::VectorXd w(d);
    for (int i = 0; i < d; ++i) {
      u(i) = rng.uniform(-1.0, 1.0);
      w(i) = rng.normal();
    }
    if (trial % 4 == 0) u = u.array().sign();  // extreme points of the operator-norm ball
    w /= w.lpNorm<1>();
    const SymMatrix a = conjugate_diagonal(oracle::random_orthogonal(d, rng), u);
    const SymMatrix b = conjugate_diagonal(oracle::random_orthogonal(d, rng), w);
    const double pairing = (a.dense() * b.dense()).trace();
    max_pairing = std::max(max_pairing, pairing);
    t.within(std::max(0.0, pairing - 1.0), 1e-9);
    const PairingCheck pc = polar_pairing_check(cube(d), a, b, 1e-9);
    t.check(pc.a_in_body && pc.b_in_polar && pc.holds);
    t.within(std::abs(pc.support - b.dense().jacobiSvd().singularValues().sum()), 1e-9);
  }
  t.r.details = {{"max_pairing", max_pairing}};
  return t.r;
}

SuiteResult suite_support(const SuiteOptions& o, CounterRng& rng) {
  Tally t("support");
  double max_gap = 0.0;
  for (int trial = 0; trial < o.trials; ++trial) {
    const int d = 2 + trial % 4;
    std::vector<DescendingVector> points;
    const int m = 1 + static_cast<int>(rng.below(3));
    for (int i = 0; i < m; ++i) points.push_back(DescendingVector::checked(oracle::random_descending(d, rng)));
    const double radius = trial % 2 == 0 ? 0.0 : rng.uniform(0.0, 1.0);
    const OrbitHull k(d, points, radius);
    Eigen::VectorXd c(d);
    for (int i = 0; i < d; ++i) c(i) = rng.normal();
    double brute = -std::numeric_limits<double>::infinity();
    for (const DescendingVector& v : points) brute = std::max(brute, oracle::permutation_max(v.eigen(), c));
    brute += radius * c.norm();
    t.within(std::abs(support_hull(k, c) - brute) / std::max(1.0, std::abs(brute)), 1e-12);

    // conjugation invariance and Minkowski additivity
    const SymMatrix b = oracle::random_symmetric(d, rng);
    const SymMatrix rotated = conjugate(oracle::random_orthogonal(d, rng), b);
    const double h = support_spectral(k, b);
    t.within(std::abs(h - support_spectral(k, rotated)) / std::max(1.0, std::abs(h)), 1e-9);
    const OrbitHull l(d, {DescendingVector::checked(oracle::random_descending(d, rng))}, rng.uniform(0.0, 1.0));
    const double additive = minkowski_support(k, l, b);
    t.within(std::abs(additive - support_spectral(minkowski_sum(k, l), b)) / std::max(1.0, std::abs(additive)), 1e-9);

    // generated members never exceed the support function
    if (trial < 20) {
      double best = -std::numeric_limits<double>::infinity();
      for (int s = 0; s < 500; ++s) {
        const DescendingVector& v = points[rng.below(points.size())];
        SymMatrix member = member_of_orbitope(v.eigen(), rng);
        if (radius > 0.0) {
          SymMatrix g = oracle::random_symmetric(d, rng);
          member += (radius * rng.uniform() / frobenius_norm(g)) * g;
        }
        t.check(spectral_hull_contains(k, member, 1e-9));
        best = std::max(best, (member.dense() * b.dense()).trace());
      }
      t.check(best <= h + 1e-8 * std::max(1.0, std::abs(h)));
      max_gap = std::max(max_gap, h - best);
    }
  }
  t.r.details = {{"max_sampled_gap", max_gap}};
  return t.r;
}

SuiteResult suite_steiner(const SuiteOptions& o, std::uint64_t seed) {
  Tally t("steiner");
  const std::uint64_t n = o.samples;
  const std::vector<double> ts{0.0, 0.5, 1.0, 2.0};
  json rows = json::array();
  const double omega3 = oracle::ball_volume(3);
  for (const SteinerEstimate& e : steiner_mc(OrbitHull::ball(2, 1.0), ts, n, seed)) {
    const double expected = omega3 * std::pow(1.0 + e.t, 3);
    const double z = std::abs(e.volume - expected) / e.standard_error;
    t.check(z <= 3.0);
    t.check(e.standard_error / e.volume <= 0.02);
    rows.push_back({{"t", e.t}, {"volume", e.volume}, {"standard_error", e.standard_error}, {"expected", expected}});
  }
  const std::vector<double> stadium_ts{0.5, 1.0};
  json segment = json::array();
  const OrbitHull seg = OrbitHull::permutahedron(DescendingVector::checked({1.0, -1.0}));
  for (const SteinerEstimate& e : steiner_mc(seg, stadium_ts, n, seed + 1000003)) {
    const double expected = oracle::stadium_vandermonde_integral(e.t);
    t.check(std::abs(e.integral - expected) <= 3.0 * e.integral_se);
    segment.push_back({{"t", e.t}, {"integral", e.integral}, {"standard_error", e.integral_se}, {"expected", expected}});
  }
  const double c2 = std::numbers::pi / std::numbers::sqrt2;
  t.within(std::abs(steiner_constant(2) - oracle::ball_volume(3) / oracle::disk_vandermonde_integral(1.0)), 1e-12);
  const Calibration cal = calibrate_cd(2, n, seed + 2000003);
  t.check(std::abs(cal.value - c2) <= 0.01 * c2);
  t.r.details = {{"ball", rows},
                 {"segment", segment},
                 {"calibration", {{"value", cal.value}, {"standard_error", cal.standard_error}, {"exact", cal.exact},
                                  {"hurwitz", cal.hurwitz}}}};
  return t.r;
}

SuiteResult suite_sdpa(const SuiteOptions& o, CounterRng& rng) {
  Tally t("sdpa");
  auto round_trip = [&](const SdpProblem& p) {
    const SdpaModel model = to_sdpa_model(p);
    t.check(parse_sdpa(export_sdpa(p)) == model);
    std::uint64_t total = 0;
    for (int s : model.block_sizes) total += static_cast<std::uint64_t>(std::abs(s));
    t.check(total == p.exported_size());
  };
  for (int trial = 0; trial < o.trials; ++trial) {
    const int d = 2 + trial % 3;
    round_trip(permutahedron_lmi(DescendingVector::checked(oracle::random_descending(d, rng))));
    const SymmetricPolyhedron p = random_polyhedron(d, 1 + trial % 2, rng);
    round_trip(build_spectrahedron(p));
    round_trip(build_shadow_hrep(p));
    round_trip(build_shadow_vrep({DescendingVector::checked(oracle::random_descending(d, rng))}, d));
  }
  return t.r;
}

struct SuiteEntry {
  const char* name;
  int trials;
};

constexpr SuiteEntry kSuites[] = {
    {"eigh", 200},          {"majorization", 500}, {"chains", 2000}, {"compound", 100}, {"sfh", 20},
    {"spectrahedron", 10000}, {"permutahedron", 500}, {"btn", 500}, {"hrep", 1000},   {"vrep", 1000},
    {"sizes", 1},           {"nuclear", 200},      {"duality", 500},  {"support", 200},  {"steiner", 1},
    {"sdpa", 12},
};

constexpr std::uint64_t kDefaultSteinerSamples = 1'000'000;

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const SuiteEntry& e : kSuites) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

int default_trials(const std::string& suite) {
  for (const SuiteEntry& e : kSuites)
    if (suite == e.name) return e.trials;
  throw InputError("unknown suite '" + suite + "'");
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  SuiteOptions o = options;
  if (o.trials <= 0) o.trials = default_trials(name);
  if (o.samples == 0) o.samples = kDefaultSteinerSamples;
  std::uint64_t index = 0;
  while (suite_names()[index] != name) ++index;
  CounterRng rng(o.seed, index << 40);

  static const std::map<std::string, std::function<SuiteResult(const SuiteOptions&, CounterRng&)>> table = {
      {"eigh", suite_eigh},
      {"majorization", suite_majorization},
      {"chains", suite_chains},
      {"compound", suite_compound},
      {"sfh", suite_sfh},
      {"spectrahedron", suite_spectrahedron},
      {"permutahedron", suite_permutahedron},
      {"btn", suite_btn},
      {"hrep", suite_hrep},
      {"vrep", suite_vrep},
      {"sizes", suite_sizes},
      {"nuclear", suite_nuclear},
      {"duality", suite_duality},
      {"support", suite_support},
      {"steiner", [](const SuiteOptions& so, CounterRng&) { return suite_steiner(so, so.seed); }},
      {"sdpa", suite_sdpa},
  };
  SuiteResult r = table.at(name)(o, rng);
  r.details["trials"] = o.trials;
  return r;
}

json verify_report(const std::vector<SuiteResult>& results, const SuiteOptions& options) {
  json suites = json::array();
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  bool passed = true;
  for (const SuiteResult& r : results) {
    suites.push_back({{"name", r.name},
                      {"checks", r.checks},
                      {"failures", r.failures},
                      {"max_error", r.max_error},
                      {"passed", r.passed()},
                      {"details", r.details}});
    checks += r.checks;
    failures += r.failures;
    passed = passed && r.passed();
  }
  return {{"seed", options.seed}, {"suites", suites}, {"checks", checks}, {"failures", failures}, {"passed", passed}};
}

}  // namespace specconvex
