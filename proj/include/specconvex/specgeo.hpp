#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "specconvex/majorization.hpp"
#include "specconvex/symcore.hpp"
#include "specconvex/sympoly.hpp"

namespace specconvex {

/// Pi(L) + radius * B: the convex hull of the permutation orbits of
/// finitely many descending points, plus a Euclidean ball.
class OrbitHull {
 public:
  OrbitHull(int d, std::vector<DescendingVector> points, double radius = 0.0);

  static OrbitHull ball(int d, double radius);
  static OrbitHull permutahedron(DescendingVector p);

  int dim() const { return d_; }
  const std::vector<DescendingVector>& points() const { return points_; }
  double radius() const { return radius_; }

 private:
  int d_;
  std::vector<DescendingVector> points_;
  double radius_;
};

/// Sum over generators z_i of the symmetric zonotopes Z(z_i) = sum_sigma sigma[-z_i, z_i].
class SpectralZonotope {
 public:
  SpectralZonotope(int d, std::vector<Eigen::VectorXd> generators);

  int dim() const { return d_; }
  const std::vector<Eigen::VectorXd>& generators() const { return generators_; }

 private:
  int d_;
  std::vector<Eigen::VectorXd> generators_;
};

/// h_K(c) = max_i <v_i sorted, c sorted> + radius |c|_2.
double support_hull(const OrbitHull& k, const Eigen::VectorXd& c);
/// h_{Lambda(K)}(B) = h_K(lambda(B)).
double support_spectral(const OrbitHull& k, const SymMatrix& b);

/// Euclidean distance from x to Pi(L) (the ball term is ignored), found by
/// Wolfe's minimum-norm-point method with a rearrangement linear oracle.
struct HullDistance {
  double distance = 0.0;
  Eigen::VectorXd nearest;
  int iterations = 0;
};
HullDistance hull_distance(const OrbitHull& k, const Eigen::VectorXd& x);

/// x in Pi(L) + radius B, i.e. dist(x, Pi(L)) <= radius + tol.
bool hull_contains(const OrbitHull& k, const Eigen::VectorXd& x, double tol);
bool spectral_hull_contains(const OrbitHull& k, const SymMatrix& a, double tol);

struct PairingCheck {
  double pairing = 0.0;  ///< <A, B> = tr(AB)
  double support = 0.0;  ///< h_{Lambda(K)}(B)
  bool a_in_body = false;
  bool b_in_polar = false;
  /// For A in Lambda(K): <A, B> <= h_{Lambda(K)}(B) + tol, and hence <A, B> <= 1 + tol
  /// whenever B lies in the polar. Vacuously true when A is outside.
  bool holds = false;
};
PairingCheck polar_pairing_check(const OrbitHull& k, const SymMatrix& a, const SymMatrix& b, double tol);

/// K + L as an OrbitHull: points v_i + w_j (sums of descending vectors stay
/// descending) and summed radii.
OrbitHull minkowski_sum(const OrbitHull& k, const OrbitHull& l);
/// h_{Lambda(K)}(B) + h_{Lambda(L)}(B).
double minkowski_support(const OrbitHull& k, const OrbitHull& l, const SymMatrix& b);

inline constexpr int kZonotopeMaxDim = 8;

/// sum_i sum_sigma |<sigma z_i, c>| over all d! permutations.
double zonotope_support(const SpectralZonotope& z, const Eigen::VectorXd& c);
double zonotope_support(const SpectralZonotope& z, const SymMatrix& b);

/// Matrix of X -> BX - XB from skew-symmetric to traceless symmetric
/// matrices, in Frobenius-orthonormal bases:
///   domain   (e_ij - e_ji)/sqrt2, i < j, lexicographic;
///   codomain (e_ij + e_ji)/sqrt2, i < j, then the Helmert diagonals
///            (1, ..., 1, -k, 0, ...)/sqrt(k(k+1)), k = 1..d-1.
Eigen::MatrixXd commutator_map(const SymMatrix& b);
double nuclear_norm(const Eigen::MatrixXd& m);

/// prod_{i<j} |p_j - p_i|.
double vandermonde_abs(const Eigen::VectorXd& p);
/// Volume of the Euclidean unit ball in R^n.
double unit_ball_volume(int n);

/// c_d with vol(Lambda(K)) = c_d * int_K prod_{i<j} |p_j - p_i| dp, volumes
/// taken in Frobenius-orthonormal coordinates on symmetric matrices.
/// Closed form omega_N / int_{B_d} prod|p_j - p_i|, N = d(d+1)/2, with the
/// ball integral from the Gaussian (Mehta) Vandermonde integral.
double steiner_constant(int d);
/// 2^{d(d+3)/2} prod_{r=1}^d pi^{r/2} / Gamma(r/2). Kept for comparison; it is
/// not consistent with the Lebesgue normalization above (4 vs 1 at d = 1).
double hurwitz_prefactor(int d);

struct SteinerEstimate {
  double t = 0.0;
  double volume = 0.0;          ///< c_d * integral
  double standard_error = 0.0;  ///< c_d * integral_se
  double integral = 0.0;        ///< int_{K + tB} prod|p_j - p_i| dp
  double integral_se = 0.0;
  double acceptance = 0.0;  ///< fraction of box samples inside K + tB
};

inline constexpr int kSteinerMaxDim = 4;
inline constexpr std::uint64_t kSteinerMinSamples = 10'000;

/// vol(Lambda(K) + t B) for each t by rejection sampling K + tB inside the
/// box [-R, R]^d, R = max_i |v_i|_inf + radius + t. Deterministic for a
/// fixed seed; chunk c of the run uses the stream seeded seed + c.
std::vector<SteinerEstimate> steiner_mc(const OrbitHull& k, std::span<const double> t_values,
                                        std::uint64_t n_samples, std::uint64_t seed);

struct Calibration {
  int d = 0;
  double value = 0.0;  ///< Monte-Carlo estimate of c_d
  double standard_error = 0.0;
  double exact = 0.0;  ///< steiner_constant(d)
  double hurwitz = 0.0;
};
Calibration calibrate_cd(int d, std::uint64_t n_samples, std::uint64_t seed);

struct SteinerSample {
  double t = 0.0;
  double volume = 0.0;
  double standard_error = 0.0;  ///< 0 disables weighting
};

struct QuermassFit {
  std::vector<double> polynomial;  ///< coefficient of t^i
  std::vector<double> polynomial_se;
  std::vector<double> W;  ///< W_0..W_N with coefficient of t^i = C(N, i) W_{N-i}
  std::vector<double> W_se;
  double residual_norm = 0.0;
};
/// Least-squares fit of a degree-N polynomial in t (weighted by 1/se^2 when
/// every sample carries a positive standard error).
QuermassFit quermass_fit(std::span<const SteinerSample> samples, int n);

struct HyperbolicityReport {
  int trials = 0;
  std::uint64_t degree = 0;  ///< M * d!
  bool identity_interior = true;  ///< every factor is positive at X = I
  int inside = 0;
  int factor_agreements = 0;  ///< factor signs at t = 0 vs the membership oracle
  int root_agreements = 0;    ///< all roots of t -> F(X - tI) non-negative vs the oracle
  std::uint64_t skipped_factors = 0;  ///< factors constant in t (generator orthogonal to 1)
  double max_identity_error = 0.0;  ///< max |F_sigma(X - t0 I) - (F_sigma(X) - t0 <a, 1>)| over factors
};

inline constexpr int kHyperbolicMaxDim = 5;

/// Samples X and checks the hyperbolicity-cone picture for the symmetric cone
/// {x : <sigma a_i, x> >= 0}: the generators of `cone` are read in that
/// orientation and its right-hand sides must be zero.
HyperbolicityReport hyperbolicity_sample_check(const SymmetricPolyhedron& cone, int trials, std::uint64_t seed);

}  // namespace specconvex
