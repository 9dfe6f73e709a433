#include "specconvex/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "specconvex/errors.hpp"

namespace specconvex {

namespace {

std::span<const double> view(const Eigen::VectorXd& v) {
  return {v.data(), static_cast<std::size_t>(v.size())};
}

void require_same_length(std::size_t a, std::size_t b) {
  if (a != b)
    throw InputError("vector length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

DescendingVector DescendingVector::sorted(std::vector<double> v) {
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  return DescendingVector(std::move(v));
}

DescendingVector DescendingVector::sorted(const Eigen::VectorXd& v) {
  return sorted(std::vector<double>(v.data(), v.data() + v.size()));
}

DescendingVector DescendingVector::checked(std::vector<double> v) {
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] < v[i + 1])
      throw InputError("vector is not descending at index " + std::to_string(i + 1));
  return DescendingVector(std::move(v));
}

Eigen::VectorXd DescendingVector::eigen() const {
  return Eigen::Map<const Eigen::VectorXd>(v_.data(), static_cast<Eigen::Index>(v_.size()));
}

std::vector<double> sort_descending(std::span<const double> p) {
  std::vector<double> out(p.begin(), p.end());
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

std::vector<double> sort_descending(const Eigen::VectorXd& p) { return sort_descending(view(p)); }

double top_k_sum(std::span<const double> p, int k) {
  if (k < 1 || k > static_cast<int>(p.size()))
    throw InputError("top_k_sum needs 1 <= k <= " + std::to_string(p.size()) + ", got " + std::to_string(k));
  std::vector<double> s(p.begin(), p.end());
  std::partial_sort(s.begin(), s.begin() + k, s.end(), std::greater<>());
  return std::accumulate(s.begin(), s.begin() + k, 0.0);
}

double top_k_sum(const Eigen::VectorXd& p, int k) { return top_k_sum(view(p), k); }

double default_tolerance(std::span<const double> p) {
  double m = 1.0;
  for (double v : p) m = std::max(m, std::abs(v));
  return 1e-9 * m;
}

bool majorizes(std::span<const double> p, std::span<const double> q, double tol) {
  require_same_length(p.size(), q.size());
  const std::vector<double> ps = sort_descending(p);
  const std::vector<double> qs = sort_descending(q);
  double sp = 0.0;
  double sq = 0.0;
  for (std::size_t k = 0; k < ps.size(); ++k) {
    sp += ps[k];
    sq += qs[k];
    if (k + 1 < ps.size() && sq > sp + tol) return false;
  }
  return std::abs(sq - sp) <= tol;
}

bool majorizes(const Eigen::VectorXd& p, const Eigen::VectorXd& q, double tol) {
  return majorizes(view(p), view(q), tol);
}

bool permutahedron_contains(std::span<const double> p, std::span<const double> q, double tol) {
  return majorizes(p, q, tol);
}

bool permutahedron_contains(const Eigen::VectorXd& p, const Eigen::VectorXd& q, double tol) {
  return majorizes(p, q, tol);
}

double orbit_max(std::span<const double> a, std::span<const double> x) {
  require_same_length(a.size(), x.size());
  const std::vector<double> as = sort_descending(a);
  const std::vector<double> xs = sort_descending(x);
  return std::inner_product(as.begin(), as.end(), xs.begin(), 0.0);
}

double orbit_max(const Eigen::VectorXd& a, const Eigen::VectorXd& x) { return orbit_max(view(a), view(x)); }

bool orbit_halfspace_contains(std::span<const double> a, double b, std::span<const double> x, double tol) {
  return orbit_max(a, x) <= b + tol;
}

}  // namespace specconvex
