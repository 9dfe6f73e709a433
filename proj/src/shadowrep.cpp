#include "specconvex/shadowrep.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "specconvex/errors.hpp"

namespace specconvex {

namespace {

std::string matrix_name(const std::string& prefix, int i, int j) {
  return prefix + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

void put_matrix(NamedValues& out, const std::string& prefix, const SymMatrix& m) {
  for (int i = 0; i < m.dim(); ++i)
    for (int j = i; j < m.dim(); ++j) out[matrix_name(prefix, i, j)] = m(i, j);
}

void require_k(int d, int k) {
  if (k < 1 || k > d - 1)
    throw InputError("lift index k=" + std::to_string(k) + " out of range 1.." + std::to_string(d - 1));
}

/// s_k(lambda(a)) <= t: the block tI - a for k = 1, otherwise the lift with
/// fresh auxiliaries Z{k}, s{k}.
void append_topk_bound(ProblemBuilder& builder, const AffineSym& a, const AffineExpr& t, int k) {
  const int d = a.order();
  const std::string tag = std::to_string(k);
  if (k == 1) {
    builder.add_psd("t1 I - A", AffineSym::scaled_identity(d, t) - a);
    return;
  }
  const AffineSym z = builder.add_matrix("Z" + tag, d, VariableRole::Auxiliary);
  const AffineExpr s = builder.add_scalar("s" + tag);
  builder.add_psd("Z" + tag, z);
  builder.add_psd("Z" + tag + " - A + s" + tag + " I", z - a + AffineSym::scaled_identity(d, s));
  builder.add_nonnegative("t" + tag + " - " + tag + " s" + tag + " - tr Z" + tag,
                          t - static_cast<double>(k) * s - z.trace());
}

void put_lift(NamedValues& out, const SymMatrix& a, int k) {
  if (k == 1) return;
  const BtnWitness w = btn_witness(a, k);
  put_matrix(out, "Z" + std::to_string(k), w.Z);
  out["s" + std::to_string(k)] = w.s;
}

std::uint64_t shadow_size(std::uint64_t m, int d) {
  const auto dd = static_cast<std::uint64_t>(d);
  return m + 2 * dd * dd - 2 * dd - 2;
}

}  // namespace

BtnWitness btn_witness(const SymMatrix& a, int k) {
  const int d = a.dim();
  if (k < 1 || k > d) throw InputError("witness index k=" + std::to_string(k) + " out of range 1.." + std::to_string(d));
  const SpectralDecomposition eig = eigh(a);
  BtnWitness w;
  w.s = eig.lambda(k - 1);
  Eigen::VectorXd weights = Eigen::VectorXd::Zero(d);
  for (int i = 0; i < k - 1; ++i) weights(i) = eig.lambda(i) - w.s;
  w.Z = conjugate_diagonal(eig.Q, weights);
  return w;
}

SdpProblem btn_lift(int d, int k) {
  require_k(d, k);
  ProblemBuilder builder;
  const AffineSym a = builder.add_matrix("A", d, VariableRole::MatrixEntry);
  const AffineExpr t = builder.add_scalar("t" + std::to_string(k));
  append_topk_bound(builder, a, t, k);
  const auto dd = static_cast<std::uint64_t>(d);
  if (k == 1) return std::move(builder).finish({"btn_lift", "d", dd, "t I - A >= 0"});
  return std::move(builder).finish(
      {"btn_lift", "2d + 1", 2 * dd + 1, "Z >= 0, Z - A + sI >= 0, t - ks - tr Z >= 0"});
}

NamedValues btn_assignment(const SymMatrix& a, int k, double t) {
  require_k(a.dim(), k);
  NamedValues out;
  put_matrix(out, "A", a);
  out["t" + std::to_string(k)] = t;
  put_lift(out, a, k);
  return out;
}

SdpProblem build_shadow_hrep(const SymmetricPolyhedron& p) {
  const int d = p.dim();
  if (d < 2) throw InputError("the H-description shadow needs d >= 2");
  ProblemBuilder builder;
  const AffineSym a = builder.add_matrix("A", d, VariableRole::MatrixEntry);
  std::vector<AffineExpr> t(static_cast<std::size_t>(d) + 1);
  for (int k = 1; k < d; ++k) t[k] = builder.add_scalar("t" + std::to_string(k));
  t[d] = a.trace();
  for (int k = 1; k < d; ++k) append_topk_bound(builder, a, t[k], k);

  for (std::size_t i = 0; i < p.orbit_count(); ++i) {
    const OrbitHalfspace& h = p.orbits()[i];
    AffineExpr slack = AffineExpr::scalar(h.b());
    for (int j = 1; j <= d; ++j) {
      const double next = j < d ? h.a()[j] : 0.0;
      slack -= (h.a()[j - 1] - next) * t[j];
    }
    builder.add_nonnegative("orbit " + std::to_string(i), slack);
  }
  return std::move(builder).finish(
      {"shadow_hrep", "M + 2d^2 - 2d - 2", shadow_size(p.orbit_count(), d),
       "Abel summation <a, lambda(A)> = sum_j (a_j - a_{j+1}) s_j(lambda(A)) with shared bounds s_k <= t_k "
       "(Ben-Tal-Nemirovski lift), t_d = tr A; built directly rather than through the polar"});
}

NamedValues hrep_witness(const SymmetricPolyhedron& p, const SymMatrix& a) {
  const int d = p.dim();
  if (a.dim() != d) throw InputError("matrix dimension does not match the polyhedron");
  NamedValues out;
  put_matrix(out, "A", a);
  const Eigen::VectorXd lambda = eigenvalues(a);
  for (int k = 1; k < d; ++k) {
    out["t" + std::to_string(k)] = top_k_sum(lambda, k);
    put_lift(out, a, k);
  }
  return out;
}

SdpProblem build_shadow_vrep(const OrbitHull& hull) {
  const int d = hull.dim();
  if (d < 2) throw InputError("the V-description shadow needs d >= 2");
  if (hull.points().empty()) throw InputError("the V-description shadow needs at least one point");
  const std::size_t m = hull.points().size();

  ProblemBuilder builder;
  const AffineSym a = builder.add_matrix("A", d, VariableRole::MatrixEntry);
  std::vector<AffineExpr> p(static_cast<std::size_t>(d));
  AffineExpr total;
  for (std::size_t i = 0; i < m; ++i) {
    const AffineExpr mu = builder.add_scalar("mu" + std::to_string(i));
    builder.add_nonnegative("mu" + std::to_string(i) + " >= 0", mu);
    total += mu;
    for (int j = 0; j < d; ++j) p[j] += hull.points()[i][j] * mu;
  }
  builder.add_equality("sum mu = 1", total - AffineExpr::scalar(1.0));

  AffineSym shifted = a;
  std::uint64_t size = shadow_size(m, d);
  std::string formula = "M + 2d^2 - 2d - 2";
  if (hull.radius() > 0.0) {
    const AffineSym w = builder.add_matrix("W", d, VariableRole::Auxiliary);
    const int n = d * (d + 1) / 2;
    AffineSym arrow = AffineSym::scaled_identity(n + 1, AffineExpr::scalar(hull.radius()));
    int row = 1;
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j, ++row) arrow.at(0, row) = (i == j ? 1.0 : std::numbers::sqrt2) * w.at(i, j);
    builder.add_psd("|W|_F <= radius", arrow);
    shifted -= w;
    size += static_cast<std::uint64_t>(n) + 1;
    formula += " + d(d+1)/2 + 1";
  }

  AffineExpr prefix;
  for (const AffineExpr& pj : p) prefix += pj;
  builder.add_equality("tr A = sum p", shifted.trace() - prefix);
  prefix = AffineExpr();
  for (int k = 1; k < d; ++k) {
    prefix += p[k - 1];
    append_topk_bound(builder, shifted, prefix, k);
  }
  return std::move(builder).finish(
      {"shadow_vrep", formula, size,
       "lambda(A) majorized by p = sum mu_m v_m; s_k(lambda(A)) <= p_1 + ... + p_k through the "
       "Ben-Tal-Nemirovski lift with t_k eliminated"});
}

SdpProblem build_shadow_vrep(const std::vector<DescendingVector>& points, int d) {
  return build_shadow_vrep(OrbitHull(d, points, 0.0));
}

NamedValues vrep_witness(const OrbitHull& hull, const SymMatrix& a, std::span<const double> mu,
                         const std::optional<SymMatrix>& w) {
  const int d = hull.dim();
  if (a.dim() != d) throw InputError("matrix dimension does not match the hull");
  if (mu.size() != hull.points().size()) throw InputError("one weight per hull point is required");
  NamedValues out;
  put_matrix(out, "A", a);
  for (std::size_t i = 0; i < mu.size(); ++i) out["mu" + std::to_string(i)] = mu[i];
  SymMatrix shifted = a;
  if (hull.radius() > 0.0) {
    const SymMatrix zero(d);
    const SymMatrix& wm = w ? *w : zero;
    if (wm.dim() != d) throw InputError("W dimension does not match the hull");
    put_matrix(out, "W", wm);
    shifted -= wm;
  }
  for (int k = 2; k < d; ++k) put_lift(out, shifted, k);
  return out;
}

AssignmentReport check_assignment(const SdpProblem& problem, std::span<const double> x, double tol) {
  if (x.size() != problem.variables.size())
    throw InputError("assignment has " + std::to_string(x.size()) + " values for " +
                     std::to_string(problem.variables.size()) + " variables");
  AssignmentReport report;
  report.worst = std::numeric_limits<double>::infinity();
  for (const PsdBlock& b : problem.blocks) {
    const double e = min_eigenvalue(evaluate_block(b, x));
    report.blocks.push_back({b.label, b.order, e});
    report.worst = std::min(report.worst, e);
  }
  for (const LinearRow& r : problem.equalities) {
    const double residual = -std::abs(evaluate_row(r, x) - r.rhs);
    report.rows.push_back({r.label, true, residual});
    report.worst = std::min(report.worst, residual);
  }
  for (const LinearRow& r : problem.inequalities) {
    const double residual = r.rhs - evaluate_row(r, x);
    report.rows.push_back({r.label, false, residual});
    report.worst = std::min(report.worst, residual);
  }
  if (report.blocks.empty() && report.rows.empty()) report.worst = 0.0;
  report.feasible = report.worst >= -tol;
  return report;
}

AssignmentReport check_assignment(const SdpProblem& problem, const NamedValues& values, double tol) {
  return check_assignment(problem, assignment_from_map(problem, values), tol);
}

}  // namespace specconvex
