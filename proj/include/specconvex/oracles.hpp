#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "specconvex/random.hpp"
#include "specconvex/symcore.hpp"

// Brute-force references used by the verification suites and the tests.
// Nothing here calls the sorting, rearrangement, chain-stream or Jacobi
// code paths of the library; the computations enumerate permutations and
// subsets directly or go through Eigen's own solvers.
namespace specconvex::oracle {

/// Eigenvalues by Eigen's SelfAdjointEigenSolver, sorted descending.
Eigen::VectorXd eigenvalues(const Eigen::MatrixXd& a);

/// max over all d! permutations sigma of <sigma a, x>.
double permutation_max(const Eigen::VectorXd& a, const Eigen::VectorXd& x);

/// Every sum over a k-element index subset, sorted ascending.
std::vector<double> subset_sums(const Eigen::VectorXd& v, int k);

/// Largest k-element subset sum, by enumeration.
double max_subset_sum(const Eigen::VectorXd& v, int k);

/// q majorized by p, checked on every index subset of q against the
/// enumerated maxima of p.
bool majorized(const Eigen::VectorXd& p, const Eigen::VectorXd& q, double tol);

/// {sum_j (a_j - a_{j+1}) sum_{i in I_j} lambda_i} over all tuples of subsets
/// with |I_j| = j, a read in the given order, a_{d+1} = 0. Sorted ascending.
std::vector<double> chain_values(const Eigen::VectorXd& a, const Eigen::VectorXd& lambda);

/// Elementary symmetric polynomials e_1..e_d by expanding prod (t + v_i).
Eigen::VectorXd elementary_symmetric(const Eigen::VectorXd& v);

/// Largest |x_i - y_i| after sorting both ascending; +inf on size mismatch.
double multiset_distance(std::vector<double> x, std::vector<double> y);

/// Volume of the unit n-ball by the recursion omega_n = 2 pi / n omega_{n-2}.
double ball_volume(int n);

/// int over the 2-disk of radius r of |p_1 - p_2|, in polar coordinates.
double disk_vandermonde_integral(double r);

/// int_{S + tB} |p_1 - p_2| dp for the segment S = [(1,-1), (-1,1)]:
/// the stadium around it, integrated slice by slice in the rotated frame.
double stadium_vandermonde_integral(double t);

SymMatrix random_symmetric(int d, CounterRng& rng, double scale = 1.0);
/// Haar-distributed orthogonal matrix (QR of a Gaussian matrix, signs fixed).
Eigen::MatrixXd random_orthogonal(int d, CounterRng& rng);
/// A convex combination of random permutation matrices.
Eigen::MatrixXd random_doubly_stochastic(int d, CounterRng& rng, int terms = 4);
/// Uniform point of the probability simplex with m vertices.
std::vector<double> random_simplex_weights(int m, CounterRng& rng);
/// Gaussian vector sorted non-increasing (by an insertion sort local to this file).
std::vector<double> random_descending(int d, CounterRng& rng);
std::vector<int> random_permutation(int d, CounterRng& rng);

}  // namespace specconvex::oracle
