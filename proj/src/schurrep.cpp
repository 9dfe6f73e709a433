#include "specconvex/schurrep.hpp"

#include <string>
#include <unordered_map>

namespace specconvex {

namespace {

std::uint64_t subset_mask(const Subset& s) {
  std::uint64_t m = 0;
  for (int i : s) m |= std::uint64_t{1} << i;
  return m;
}

int position(const Subset& s, int element) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] == element) return static_cast<int>(i);
  return -1;
}

void require_order(std::uint64_t order, std::uint64_t cap, const std::string& what) {
  if (order > cap)
    throw CapExceeded(what + " has order " + std::to_string(order) + ", above the cap " + std::to_string(cap), order,
                      cap);
}

/// Calls emit(row, col, value) for every upper-triangle nonzero of L_k(a).
template <typename Emit>
void for_each_compound_entry(const SymMatrix& a, int k, Emit&& emit) {
  const int d = a.dim();
  const std::vector<Subset> basis = k_subsets(d, k);
  std::unordered_map<std::uint64_t, int> index_of;
  for (std::size_t i = 0; i < basis.size(); ++i) index_of.emplace(subset_mask(basis[i]), static_cast<int>(i));

  for (std::size_t col = 0; col < basis.size(); ++col) {
    const Subset& J = basis[col];
    double diagonal = 0.0;
    for (int i : J) diagonal += a(i, i);
    if (diagonal != 0.0) emit(static_cast<int>(col), static_cast<int>(col), diagonal);

    const std::uint64_t mask = subset_mask(J);
    for (int s : J) {
      for (int r = 0; r < d; ++r) {
        if (mask & (std::uint64_t{1} << r)) continue;
        const double ars = a(r, s);
        if (ars == 0.0) continue;
        const std::uint64_t target = (mask & ~(std::uint64_t{1} << s)) | (std::uint64_t{1} << r);
        const int row = index_of.at(target);
        if (row > static_cast<int>(col)) continue;  // the transposed pair emits it
        const Subset& I = basis[static_cast<std::size_t>(row)];
        const int parity = position(I, r) + position(J, s);
        emit(row, static_cast<int>(col), parity % 2 == 0 ? ars : -ars);
      }
    }
  }
}

SparseSym negated(const SparseSym& m) {
  SparseSym out(m.order());
  for (const Triplet& t : m.entries()) out.add(t.row, t.col, -t.value);
  out.compress();
  return out;
}

void require_compound_args(const SymMatrix& a, int k, std::uint64_t cap) {
  if (k < 1 || k > a.dim())
    throw InputError("compound index k=" + std::to_string(k) + " outside 1.." + std::to_string(a.dim()));
  if (a.dim() > 63) throw InputError("compound matrices need d <= 63");
  require_order(binomial(a.dim(), k), cap, "compound matrix");
}

/// Calls emit(row, col, value) for the tensor-lift entries, possibly with
/// repeated (row, col) pairs across levels.
template <typename Emit>
void for_each_sfh_entry(const DescendingVector& a, const SymMatrix& m, std::uint64_t cap, Emit&& emit) {
  const int d = m.dim();
  if (a.dim() != d)
    throw InputError("generator length " + std::to_string(a.dim()) + " differs from matrix order " +
                     std::to_string(d));
  const std::uint64_t total = sfh_order(d);
  require_order(total, cap, "tensor lift SFh");

  std::uint64_t stride = total;
  for (int j = 1; j <= d; ++j) {
    const std::uint64_t nj = binomial(d, j);
    stride /= nj;  // product of the level sizes after j
    const double weight = a[j - 1] - (j < d ? a[j] : 0.0);
    if (weight == 0.0) continue;
    const std::uint64_t outer = total / (nj * stride);
    for_each_compound_entry(m, j, [&](int x, int y, double v) {
      const double w = weight * v;
      for (std::uint64_t left = 0; left < outer; ++left) {
        const std::uint64_t base = left * nj * stride;
        for (std::uint64_t right = 0; right < stride; ++right)
          emit(static_cast<int>(base + x * stride + right), static_cast<int>(base + y * stride + right), w);
      }
    });
  }
}

}  // namespace

CompoundMatrix schur_functor(const SymMatrix& a, int k, std::uint64_t order_cap) {
  require_compound_args(a, k, order_cap);
  const auto n = static_cast<Eigen::Index>(binomial(a.dim(), k));
  CompoundMatrix out{a.dim(), k, Eigen::MatrixXd::Zero(n, n)};
  for_each_compound_entry(a, k, [&](int i, int j, double v) { out.M(i, j) = out.M(j, i) = v; });
  return out;
}

SparseSym schur_functor_sparse(const SymMatrix& a, int k, std::uint64_t order_cap) {
  require_compound_args(a, k, order_cap);
  SparseSym out(static_cast<int>(binomial(a.dim(), k)));
  for_each_compound_entry(a, k, [&](int i, int j, double v) { out.add(i, j, v); });
  out.compress();
  return out;
}

std::uint64_t sfh_order(int d) { return chain_count(d); }

Eigen::MatrixXd sfh(const DescendingVector& a, const SymMatrix& m, std::uint64_t order_cap) {
  const std::uint64_t order = sfh_order(m.dim());
  require_order(order, order_cap, "tensor lift SFh");
  const auto n = static_cast<Eigen::Index>(order);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for_each_sfh_entry(a, m, order_cap, [&](int i, int j, double v) {
    out(i, j) += v;
    if (i != j) out(j, i) += v;
  });
  return out;
}

SparseSym sfh_sparse(const DescendingVector& a, const SymMatrix& m, std::uint64_t order_cap) {
  const std::uint64_t order = sfh_order(m.dim());
  require_order(order, order_cap, "tensor lift SFh");
  SparseSym out(static_cast<int>(order));
  for_each_sfh_entry(a, m, order_cap, [&](int i, int j, double v) { out.add(i, j, v); });
  out.compress();
  return out;
}

SdpProblem build_spectrahedron(const SymmetricPolyhedron& p, std::uint64_t order_cap) {
  const int d = p.dim();
  const std::uint64_t order = sfh_order(d);
  const std::uint64_t total = order * p.orbit_count();
  if (order > order_cap)
    throw CapExceeded("spectrahedral representation needs blocks of order prod_j C(" + std::to_string(d) +
                          ",j) = " + std::to_string(order) + " (total size M * prod_j C(d,j) = " +
                          std::to_string(total) + "), above the cap " + std::to_string(order_cap),
                      order, order_cap);

  ProblemBuilder builder;
  builder.add_matrix("A", d, VariableRole::MatrixEntry);

  // Coefficient of A[r,s] in SFh_a(A) is SFh_a of the symmetric unit, by linearity.
  for (std::size_t i = 0; i < p.orbit_count(); ++i) {
    const OrbitHalfspace& h = p.orbits()[i];
    PsdBlock block;
    block.label = "orbit " + std::to_string(i);
    block.order = static_cast<int>(order);
    block.constant = SparseSym::scaled_identity(block.order, h.b());
    std::size_t var = 0;
    for (int r = 0; r < d; ++r)
      for (int s = r; s < d; ++s, ++var) {
        SparseSym coeff = negated(sfh_sparse(h.a(), SymMatrix::unit(d, r, s), order_cap));
        if (!coeff.empty()) block.coefficients.emplace_back(var, std::move(coeff));
      }
    builder.add_psd(std::move(block));
  }
  return std::move(builder).finish({"spectrahedron", "M * prod_{j=1}^{d} C(d,j)", total,
                                    "b_i I - SFh_{a_i}(A) >= 0, SFh a sum of tensored additive compounds"});
}

SdpProblem permutahedron_lmi(const DescendingVector& p, std::uint64_t order_cap) {
  const int d = p.dim();
  if (d < 1) throw InputError("permutahedron needs a non-empty point");
  ProblemBuilder builder;
  const AffineSym a = builder.add_matrix("A", d, VariableRole::MatrixEntry);
  builder.add_equality("trace", a.trace() - AffineExpr::scalar(top_k_sum(p.values(), d)));

  std::uint64_t total = 0;
  for (int k = 1; k < d; ++k) {
    const std::uint64_t order = binomial(d, k);
    require_order(order, order_cap, "compound matrix");
    total += order;
    PsdBlock block;
    block.label = "compound " + std::to_string(k);
    block.order = static_cast<int>(order);
    block.constant = SparseSym::scaled_identity(block.order, top_k_sum(p.values(), k));
    int var = 0;
    for (int r = 0; r < d; ++r)
      for (int s = r; s < d; ++s, ++var) {
        SparseSym coeff = negated(schur_functor_sparse(SymMatrix::unit(d, r, s), k, order_cap));
        if (!coeff.empty()) block.coefficients.emplace_back(static_cast<std::size_t>(var), std::move(coeff));
      }
    builder.add_psd(std::move(block));
  }
  return std::move(builder).finish({"permutahedron_lmi", "sum_{k=1}^{d-1} C(d,k) = 2^d - 2", total,
                                    "tr(A) = s_d(p), s_k(p) I - L_k(A) >= 0 for k < d"});
}

SymMatrix adjugate_functor_d2(std::span<const double> a, const SymMatrix& m) {
  if (a.size() != 2 || m.dim() != 2) throw InputError("adjugate functor is defined for d = 2 only");
  SymMatrix out(2);
  out.set(0, 0, a[0] * m(0, 0) + a[1] * m(1, 1));
  out.set(1, 1, a[0] * m(1, 1) + a[1] * m(0, 0));
  out.set(0, 1, a[0] * m(0, 1) - a[1] * m(0, 1));
  return out;
}

RepresentationSizes representation_sizes(const SymmetricPolyhedron& p) {
  RepresentationSizes out;
  const std::uint64_t m = p.orbit_count();
  const std::uint64_t order = sfh_order(p.dim());
  if (order > UINT64_MAX / m) throw CapExceeded("representation size overflows 64 bits", UINT64_MAX, UINT64_MAX);
  out.upper = m * order;
  std::uint64_t factorial = 1;
  for (int i = 2; i <= p.dim(); ++i) {
    if (factorial > UINT64_MAX / static_cast<std::uint64_t>(i))
      throw CapExceeded("d! overflows 64 bits", UINT64_MAX, UINT64_MAX);
    factorial *= static_cast<std::uint64_t>(i);
  }
  out.lower = m * factorial;
  for (const OrbitHalfspace& h : p.orbits()) out.generic = out.generic && h.generic();
  return out;
}

}  // namespace specconvex
