#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "specconvex/errors.hpp"
#include "specconvex/majorization.hpp"
#include "specconvex/symcore.hpp"

namespace specconvex {

/// The orbit of halfspaces <sigma a, x> <= b over all permutations sigma.
/// The generator is stored sorted descending (the orbit does not depend on
/// the order of a) and must be non-zero.
class OrbitHalfspace {
 public:
  OrbitHalfspace(std::vector<double> a, double b);

  const DescendingVector& a() const { return a_; }
  double b() const { return b_; }
  int dim() const { return a_.dim(); }
  /// All entries of the generator distinct, so the orbit has d! members.
  bool generic() const;

 private:
  DescendingVector a_;
  double b_;
};

/// Intersection of M >= 1 orbit halfspaces in R^d.
class SymmetricPolyhedron {
 public:
  SymmetricPolyhedron(int d, std::vector<OrbitHalfspace> orbits);

  int dim() const { return d_; }
  const std::vector<OrbitHalfspace>& orbits() const { return orbits_; }
  std::size_t orbit_count() const { return orbits_.size(); }

 private:
  int d_;
  std::vector<OrbitHalfspace> orbits_;
};

/// Result of a membership test against a symmetric polyhedron. `slack` is
/// min_i (b_i - max_sigma <sigma a_i, x>), negative outside; on failure
/// `violated_orbit` names the orbit attaining it.
struct PointMembership {
  bool inside = false;
  double slack = 0.0;
  std::optional<std::size_t> violated_orbit;
  std::vector<double> orbit_slacks;
};

struct SpectralMembership : PointMembership {
  Eigen::VectorXd lambda;
};

PointMembership contains_point(const SymmetricPolyhedron& p, const Eigen::VectorXd& x, double tol);
/// A in Lambda(P), decided on lambda(A).
SpectralMembership spectral_contains(const SymmetricPolyhedron& p, const SymMatrix& a, double tol);

/// (I_1, ..., I_d) with |I_j| = j. Sets are 0-based and sorted.
struct NumericalChain {
  std::vector<Subset> sets;

  /// I_1 subset I_2 subset ... subset I_d, i.e. the chain of a permutation.
  bool nested() const;
  friend bool operator==(const NumericalChain&, const NumericalChain&) = default;
};

/// prod_{j=1}^d C(d, j).
std::uint64_t chain_count(int d);

/// Streams all numerical chains of {0..d-1} in lexicographic order of
/// (I_1, ..., I_d), each I_j ranging over k_subsets(d, j). I_1 varies
/// slowest. Nothing beyond the per-level subset lists is materialized.
class ChainStream {
 public:
  explicit ChainStream(int d, std::uint64_t cap = kDefaultChainCap);

  /// Advances; returns nullptr once exhausted.
  const NumericalChain* next();
  /// Mixed-radix position of the chain last returned by next().
  std::uint64_t position() const { return position_; }
  std::uint64_t size() const { return count_; }

 private:
  int d_;
  std::uint64_t count_;
  std::uint64_t position_ = 0;
  bool started_ = false;
  std::vector<std::vector<Subset>> levels_;
  std::vector<std::size_t> digits_;
  NumericalChain current_;
};

/// a^I = sum_j (a_j - a_{j+1}) 1_{I_j}, with a_{d+1} = 0.
Eigen::VectorXd chain_vector(const DescendingVector& a, const NumericalChain& chain);

struct LinearInequality {
  Eigen::VectorXd coeffs;  ///< <coeffs, x> <= rhs
  double rhs;
};

/// One inequality <a^I, x> <= b per numerical chain I, in stream order.
std::vector<LinearInequality> redundant_description(const OrbitHalfspace& h,
                                                    std::uint64_t cap = kDefaultChainCap);

}  // namespace specconvex
