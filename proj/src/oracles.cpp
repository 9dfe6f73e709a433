#include "specconvex/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace specconvex::oracle {

namespace {

std::vector<unsigned> masks_of_size(int d, int k) {
  std::vector<unsigned> out;
  for (unsigned m = 0; m < (1u << d); ++m)
    if (std::popcount(m) == k) out.push_back(m);
  return out;
}

double masked_sum(const Eigen::VectorXd& v, unsigned mask) {
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i)
    if (mask & (1u << i)) s += v(i);
  return s;
}

}  // namespace

Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& a) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().reverse();
}

double permutation_max(const Eigen::VectorXd& a, const Eigen::VectorXd& x) {
  std::vector<int> perm(static_cast<std::size_t>(a.size()));
  std::iota(perm.begin(), perm.end(), 0);
  double best = -std::numeric_limits<double>::infinity();
  do {
    double dot = 0.0;
    for (std::size_t i = 0; i < perm.size(); ++i) dot += a(perm[i]) * x(static_cast<Eigen::Index>(i));
    best = std::max(best, dot);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<double> subset_sums(const Eigen::VectorXd& v, int k) {
  std::vector<double> out;
  for (unsigned m : masks_of_size(static_cast<int>(v.size()), k)) out.push_back(masked_sum(v, m));
  std::sort(out.begin(), out.end());
  return out;
}

double max_subset_sum(const Eigen::VectorXd& v, int k) {
  double best = -std::numeric_limits<double>::infinity();
  for (unsigned m : masks_of_size(static_cast<int>(v.size()), k)) best = std::max(best, masked_sum(v, m));
  return best;
}

bool majorized(const Eigen::VectorXd& p, const Eigen::VectorXd& q, double tol) {
  const int d = static_cast<int>(p.size());
  if (q.size() != d) return false;
  if (std::abs(p.sum() - q.sum()) > tol) return false;
  for (int k = 1; k < d; ++k) {
    const double bound = max_subset_sum(p, k);
    for (unsigned m : masks_of_size(d, k))
      if (masked_sum(q, m) > bound + tol) return false;
  }
  return true;
}

std::vector<double> chain_values(const Eigen::VectorXd& a, const Eigen::VectorXd& lambda) {
  const int d = static_cast<int>(a.size());
  std::vector<std::vector<unsigned>> levels;
  for (int j = 1; j <= d; ++j) levels.push_back(masks_of_size(d, j));
  std::vector<double> out;
  auto recurse = [&](auto&& self, int j, double acc) -> void {
    if (j > d) {
      out.push_back(acc);
      return;
    }
    const double weight = a(j - 1) - (j < d ? a(j) : 0.0);
    for (unsigned m : levels[static_cast<std::size_t>(j - 1)]) self(self, j + 1, acc + weight * masked_sum(lambda, m));
  };
  recurse(recurse, 1, 0.0);
  std::sort(out.begin(), out.end());
  return out;
}

Eigen::VectorXd elementary_symmetric(const Eigen::VectorXd& v) {
  // coefficients of prod (t + v_i), highest power first
  std::vector<double> poly{1.0};
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::vector<double> next(poly.size() + 1, 0.0);
    for (std::size_t j = 0; j < poly.size(); ++j) {
      next[j] += poly[j];
      next[j + 1] += poly[j] * v(i);
    }
    poly = std::move(next);
  }
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = poly[static_cast<std::size_t>(i) + 1];
  return out;
}

double multiset_distance(std::vector<double> x, std::vector<double> y) {
  if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] - y[i]));
  return worst;
}

double ball_volume(int n) {
  if (n == 0) return 1.0;
  if (n == 1) return 2.0;
  return 2.0 * std::numbers::pi / n * ball_volume(n - 2);
}

double disk_vandermonde_integral(double r) {
  // |p1 - p2| = rho |cos th - sin th| = sqrt2 rho |cos(th + pi/4)|; the angular
  // integral of |cos| is 4 and the radial one is r^3 / 3.
  return std::numbers::sqrt2 * 4.0 * r * r * r / 3.0;
}

double stadium_vandermonde_integral(double t) {
  // Frame s along (1,-1)/sqrt2, w along (1,1)/sqrt2: p1 - p2 = sqrt2 s and
  // the segment is |s| <= sqrt2, w = 0.
  const double half = std::numbers::sqrt2;
  const double rectangle = std::numbers::sqrt2 * (half * half) * (2.0 * t);
  // Each end cap: half disk of radius t centred at s = half, integrand sqrt2 (half + sigma).
  const double cap = std::numbers::sqrt2 * (half * std::numbers::pi * t * t / 2.0 + 2.0 * t * t * t / 3.0);
  return rectangle + 2.0 * cap;
}

SymMatrix random_symmetric(int d, CounterRng& rng, double scale) {
  SymMatrix a(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) a.set(i, j, scale * rng.normal());
  return a;
}

Eigen::MatrixXd random_orthogonal(int d, CounterRng& rng) {
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(d, d);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

std::vector<int> random_permutation(int d, CounterRng& rng) {
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = d - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
  return perm;
}

Eigen::MatrixXd random_doubly_stochastic(int d, CounterRng& rng, int terms) {
  const std::vector<double> weights = random_simplex_weights(terms, rng);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
  for (int t = 0; t < terms; ++t) {
    const std::vector<int> perm = random_permutation(d, rng);
    for (int i = 0; i < d; ++i) out(i, perm[i]) += weights[t];
  }
  return out;
}

std::vector<double> random_simplex_weights(int m, CounterRng& rng) {
  std::vector<double> w(static_cast<std::size_t>(m));
  double total = 0.0;
  for (double& x : w) {
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    x = -std::log(u);
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> random_descending(int d, CounterRng& rng) {
  std::vector<double> v(static_cast<std::size_t>(d));
  for (double& x : v) x = rng.normal();
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j - 1] < v[j]; --j) std::swap(v[j - 1], v[j]);
  return v;
}

}  // namespace specconvex::oracle
