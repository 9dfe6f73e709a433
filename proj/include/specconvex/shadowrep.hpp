#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "specconvex/majorization.hpp"
#include "specconvex/problem.hpp"
#include "specconvex/specgeo.hpp"
#include "specconvex/symcore.hpp"
#include "specconvex/sympoly.hpp"

namespace specconvex {

/// Values map keyed by variable name, as consumed by check_assignment.
using NamedValues = std::map<std::string, double>;

/// Certificate for s_k(lambda(A)) <= t in the Ben-Tal-Nemirovski lift:
/// Z >= 0, Z - A + sI >= 0, t - ks - tr Z >= 0.
struct BtnWitness {
  SymMatrix Z;
  double s = 0.0;
};

/// s = lambda_k(A), Z = sum_{i<k} (lambda_i - s) v_i v_i^T, so that
/// tr Z + ks = s_k(lambda(A)).
BtnWitness btn_witness(const SymMatrix& a, int k);

/// Standalone lift for s_k(lambda(A)) <= t over the variables A[i,j], t{k}
/// and, for k > 1, Z{k}[i,j] and s{k}. Size d for k = 1 (the single block
/// tI - A >= 0), 2d + 1 otherwise. Requires 1 <= k <= d - 1.
SdpProblem btn_lift(int d, int k);

/// Values for every variable of btn_lift(d, k) at (A, t), auxiliaries from
/// btn_witness.
NamedValues btn_assignment(const SymMatrix& a, int k, double t);

/// Shadow of Lambda(P) of size M + 2d^2 - 2d - 2 (d >= 2). Auxiliaries
/// t1..t{d-1} bound s_k(lambda(A)); with t_d = tr A each orbit becomes the
/// scalar constraint sum_j (a_j - a_{j+1}) t_j + a_d tr A <= b.
SdpProblem build_shadow_hrep(const SymmetricPolyhedron& p);

/// Witness for build_shadow_hrep at A: t_k = s_k(lambda(A)) and the lift
/// auxiliaries from btn_witness. Feasible exactly when A is in Lambda(P).
NamedValues hrep_witness(const SymmetricPolyhedron& p, const SymMatrix& a);

/// Shadow of Lambda(conv Pi(v_1..v_M)): barycentric weights mu (M scalar
/// constraints, sum mu = 1 free), p = sum mu_m v_m, tr A = sum p_i, and
/// s_k(lambda(A)) <= p_1 + ... + p_k for k < d through the lift. Size
/// M + 2d^2 - 2d - 2 (d >= 2). A positive radius adds variables W[i,j], a
/// Frobenius-norm block |W|_F <= radius of order d(d+1)/2 + 1, and replaces
/// A by A - W in the majorization constraints.
SdpProblem build_shadow_vrep(const OrbitHull& k);
SdpProblem build_shadow_vrep(const std::vector<DescendingVector>& points, int d);

/// Witness for build_shadow_vrep at A given weights mu with
/// lambda(A - W) majorized by sum mu_m v_m; W defaults to zero.
NamedValues vrep_witness(const OrbitHull& k, const SymMatrix& a, std::span<const double> mu,
                         const std::optional<SymMatrix>& w = std::nullopt);

struct BlockReport {
  std::string label;
  int order = 0;
  double min_eigenvalue = 0.0;
};

struct RowReport {
  std::string label;
  bool equality = false;
  /// rhs - row.x for inequalities, -|row.x - rhs| for equalities: the
  /// constraint holds when this is >= 0.
  double residual = 0.0;
};

struct AssignmentReport {
  bool feasible = false;
  double worst = 0.0;  ///< minimum over block eigenvalues and row residuals
  std::vector<BlockReport> blocks;
  std::vector<RowReport> rows;
};

/// Evaluates every block and linear row; feasible iff every minimum
/// eigenvalue and residual is >= -tol.
AssignmentReport check_assignment(const SdpProblem& problem, std::span<const double> x, double tol);
/// Throws InputError on a missing variable.
AssignmentReport check_assignment(const SdpProblem& problem, const NamedValues& values, double tol);

}  // namespace specconvex
