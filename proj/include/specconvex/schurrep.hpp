#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>

#include "specconvex/errors.hpp"
#include "specconvex/majorization.hpp"
#include "specconvex/problem.hpp"
#include "specconvex/symcore.hpp"
#include "specconvex/sympoly.hpp"

namespace specconvex {

/// The k-th additive compound L_k(A) acting on the wedge basis e_I, I in
/// k_subsets(d, k) order. Its eigenvalues are the k-subset sums of lambda(A).
struct CompoundMatrix {
  int d = 0;
  int k = 0;
  Eigen::MatrixXd M;
};

/// Entries: (I, I) -> sum_{i in I} A_ii; (I, J) with I\J = {r}, J\I = {s}
/// -> (-1)^{pos_I(r) + pos_J(s)} A_rs using 0-based positions; else 0.
CompoundMatrix schur_functor(const SymMatrix& a, int k, std::uint64_t order_cap = kDefaultOrderCap);
SparseSym schur_functor_sparse(const SymMatrix& a, int k, std::uint64_t order_cap = kDefaultOrderCap);

/// prod_{j=1}^d C(d, j): the order of the tensor lift.
std::uint64_t sfh_order(int d);

/// SFh_a(A) = sum_j (a_j - a_{j+1}) I x ... x L_j(A) x ... x I with a_{d+1} = 0;
/// factor j carries the j-th compound and indices compose row-major with
/// factor 1 most significant. Eigenvalues are <a^I, lambda(A)> over all
/// numerical chains I; the diagonal position of chain I is its ChainStream position.
Eigen::MatrixXd sfh(const DescendingVector& a, const SymMatrix& m, std::uint64_t order_cap = kDefaultOrderCap);
SparseSym sfh_sparse(const DescendingVector& a, const SymMatrix& m, std::uint64_t order_cap = kDefaultOrderCap);

/// Exact LMI for Lambda(P): one block b_i I - SFh_{a_i}(A) >= 0 per orbit,
/// over the upper-triangle entries of A.
SdpProblem build_spectrahedron(const SymmetricPolyhedron& p, std::uint64_t order_cap = kDefaultOrderCap);

/// Schur-Horn orbitope Lambda(Pi(p)): tr(A) = s_d(p) and s_k(p) I - L_k(A) >= 0
/// for k = 1..d-1.
SdpProblem permutahedron_lmi(const DescendingVector& p, std::uint64_t order_cap = kDefaultOrderCap);

/// a_1 A + a_2 adj(A) for 2 x 2 A; eigenvalues a_1 l_1 + a_2 l_2 and a_1 l_2 + a_2 l_1.
SymMatrix adjugate_functor_d2(std::span<const double> a, const SymMatrix& m);

struct RepresentationSizes {
  std::uint64_t upper = 0;  ///< M * prod_j C(d, j), the size of build_spectrahedron
  std::uint64_t lower = 0;  ///< M * d!, the degree of the algebraic boundary for full orbits
  /// False if some generator has repeated entries; its orbit is then smaller
  /// than d! and `lower` is only the generic bound.
  bool generic = true;
};

RepresentationSizes representation_sizes(const SymmetricPolyhedron& p);

}  // namespace specconvex
