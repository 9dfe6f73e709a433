#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "specconvex/errors.hpp"

namespace specconvex {

/// Dense real symmetric d x d matrix. Only the upper triangle is stored
/// (row-major: a11, a12, ..., a1d, a22, ..., add), so symmetry is structural.
/// All entries are finite.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int d);

  static SymMatrix from_upper(int d, std::vector<double> upper);
  /// Reads the upper triangle of a square matrix; the lower triangle is ignored.
  static SymMatrix from_dense(const Eigen::MatrixXd& m);
  static SymMatrix identity(int d);
  /// Symmetric unit: E_ii for i == j, E_ij + E_ji otherwise.
  static SymMatrix unit(int d, int i, int j);

  int dim() const { return d_; }
  double operator()(int i, int j) const { return upper_[index(i, j)]; }
  void set(int i, int j, double value);
  std::span<const double> upper() const { return upper_; }

  Eigen::MatrixXd dense() const;
  double trace() const;
  /// Largest absolute entry.
  double max_abs() const;

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(double s);

  friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
  friend SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
  friend SymMatrix operator*(double s, SymMatrix a) { return a *= s; }
  friend bool operator==(const SymMatrix&, const SymMatrix&) = default;

 private:
  std::size_t index(int i, int j) const;

  int d_ = 0;
  std::vector<double> upper_;
};

/// Frobenius inner product tr(AB).
double frobenius_inner(const SymMatrix& a, const SymMatrix& b);
double frobenius_norm(const SymMatrix& a);

/// Eigenvalues sorted non-increasing with matching orthonormal eigenvector
/// columns: A = Q diag(lambda) Q^T.
struct SpectralDecomposition {
  Eigen::VectorXd lambda;
  Eigen::MatrixXd Q;
};

/// Cyclic Jacobi eigensolver. Deterministic; sorts eigenvalues descending
/// with a stable sort so ties keep rotation order.
SpectralDecomposition eigh(const SymMatrix& a);
SpectralDecomposition eigh(const Eigen::MatrixXd& a);

/// lambda(A), descending.
Eigen::VectorXd eigenvalues(const SymMatrix& a);

/// Eigenvalues of a (possibly large) dense symmetric matrix, descending.
/// Uses Eigen's tridiagonal QR; intended for PSD checks on LMI blocks.
Eigen::VectorXd eigvalsh(const Eigen::MatrixXd& a);
double min_eigenvalue(const Eigen::MatrixXd& a);

/// delta(p): diagonal embedding.
SymMatrix diag_embed(std::span<const double> p);
SymMatrix diag_embed(const Eigen::VectorXd& p);
/// D(A): the diagonal (A_11, ..., A_dd).
Eigen::VectorXd diag_project(const SymMatrix& a);

/// Q diag(p) Q^T.
SymMatrix conjugate_diagonal(const Eigen::MatrixXd& q, const Eigen::VectorXd& p);
/// G A G^T.
SymMatrix conjugate(const Eigen::MatrixXd& g, const SymMatrix& a);

/// Kronecker product with row-major pair indexing (i,k) -> i*rows(B) + k.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                     std::uint64_t order_cap = kDefaultOrderCap);

/// Sorted 0-based subset of {0, ..., d-1}.
using Subset = std::vector<int>;

/// All k-element subsets of {0..d-1} in lexicographic order of their sorted
/// tuples. This order indexes every compound-matrix basis.
std::vector<Subset> k_subsets(int d, int k);

/// Binomial coefficient; throws CapExceeded on 64-bit overflow.
std::uint64_t binomial(int n, int k);

/// Coefficients (eta_1, ..., eta_d) of det(A + tI) = t^d + eta_1 t^{d-1} + ... + eta_d,
/// computed by the Faddeev-LeVerrier recursion (no eigenvalues involved).
Eigen::VectorXd char_poly_coeffs(const SymMatrix& a);

}  // namespace specconvex
