#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace specconvex {

/// A vector with non-increasing coordinates (a point of the descending cone).
class DescendingVector {
 public:
  DescendingVector() = default;

  /// Sorts a copy of v descending.
  static DescendingVector sorted(std::vector<double> v);
  static DescendingVector sorted(const Eigen::VectorXd& v);
  /// Throws InputError unless v is already non-increasing.
  static DescendingVector checked(std::vector<double> v);

  int dim() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[static_cast<std::size_t>(i)]; }
  std::span<const double> values() const { return v_; }
  Eigen::VectorXd eigen() const;

  friend bool operator==(const DescendingVector&, const DescendingVector&) = default;

 private:
  explicit DescendingVector(std::vector<double> v) : v_(std::move(v)) {}
  std::vector<double> v_;
};

/// Stable descending sort.
std::vector<double> sort_descending(std::span<const double> p);
std::vector<double> sort_descending(const Eigen::VectorXd& p);

/// s_k(p): the sum of the k largest entries.
double top_k_sum(std::span<const double> p, int k);
double top_k_sum(const Eigen::VectorXd& p, int k);

/// 1e-9 scaled by max(1, |p|_inf).
double default_tolerance(std::span<const double> p);

/// q is majorized by p: equal sums within tol and s_k(q) <= s_k(p) + tol
/// for k = 1..d-1.
bool majorizes(std::span<const double> p, std::span<const double> q, double tol);
bool majorizes(const Eigen::VectorXd& p, const Eigen::VectorXd& q, double tol);

/// q in the permutahedron Pi(p).
bool permutahedron_contains(std::span<const double> p, std::span<const double> q, double tol);
bool permutahedron_contains(const Eigen::VectorXd& p, const Eigen::VectorXd& q, double tol);

/// max over permutations sigma of <sigma a, x>, which by the rearrangement
/// inequality equals <sort(a), sort(x)> with both sorted descending.
double orbit_max(std::span<const double> a, std::span<const double> x);
double orbit_max(const Eigen::VectorXd& a, const Eigen::VectorXd& x);

/// x satisfies <sigma a, x> <= b for every permutation sigma.
bool orbit_halfspace_contains(std::span<const double> a, double b, std::span<const double> x, double tol);

}  // namespace specconvex
