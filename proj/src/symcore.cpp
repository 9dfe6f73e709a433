#include "specconvex/symcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace specconvex {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiRelativeThreshold = 1e-13;

void require_finite(double v) {
  if (!std::isfinite(v)) throw InputError("SymMatrix entries must be finite");
}

double offdiag_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += a(i, j) * a(i, j);
  return std::sqrt(sum);
}

}  // namespace

SymMatrix::SymMatrix(int d) : d_(d) {
  if (d < 0) throw InputError("SymMatrix dimension must be non-negative");
  upper_.assign(static_cast<std::size_t>(d) * (d + 1) / 2, 0.0);
}

SymMatrix SymMatrix::from_upper(int d, std::vector<double> upper) {
  if (d < 1) throw InputError("SymMatrix dimension must be positive");
  const std::size_t expected = static_cast<std::size_t>(d) * (d + 1) / 2;
  if (upper.size() != expected)
    throw InputError("upper triangle of a " + std::to_string(d) + "x" + std::to_string(d) +
                     " matrix needs " + std::to_string(expected) + " entries, got " +
                     std::to_string(upper.size()));
  std::for_each(upper.begin(), upper.end(), require_finite);
  SymMatrix m;
  m.d_ = d;
  m.upper_ = std::move(upper);
  return m;
}

SymMatrix SymMatrix::from_dense(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw InputError("from_dense needs a square matrix");
  const int d = static_cast<int>(m.rows());
  SymMatrix out(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) out.set(i, j, m(i, j));
  return out;
}

SymMatrix SymMatrix::identity(int d) {
  SymMatrix out(d);
  for (int i = 0; i < d; ++i) out.set(i, i, 1.0);
  return out;
}

SymMatrix SymMatrix::unit(int d, int i, int j) {
  SymMatrix out(d);
  out.set(i, j, 1.0);
  return out;
}

std::size_t SymMatrix::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  // Row i starts after rows 0..i-1, which hold d, d-1, ..., d-i+1 entries.
  return static_cast<std::size_t>(i) * d_ - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
}

void SymMatrix::set(int i, int j, double value) {
  require_finite(value);
  upper_[index(i, j)] = value;
}

Eigen::MatrixXd SymMatrix::dense() const {
  Eigen::MatrixXd m(d_, d_);
  for (int i = 0; i < d_; ++i)
    for (int j = i; j < d_; ++j) m(i, j) = m(j, i) = (*this)(i, j);
  return m;
}

double SymMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < d_; ++i) t += (*this)(i, i);
  return t;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : upper_) m = std::max(m, std::abs(v));
  return m;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.d_ != d_) throw InputError("SymMatrix dimension mismatch");
  for (std::size_t i = 0; i < upper_.size(); ++i) upper_[i] += other.upper_[i];
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  if (other.d_ != d_) throw InputError("SymMatrix dimension mismatch");
  for (std::size_t i = 0; i < upper_.size(); ++i) upper_[i] -= other.upper_[i];
  return *this;
}

SymMatrix& SymMatrix::operator*=(double s) {
  for (double& v : upper_) v *= s;
  return *this;
}

double frobenius_inner(const SymMatrix& a, const SymMatrix& b) {
  if (a.dim() != b.dim()) throw InputError("SymMatrix dimension mismatch");
  double sum = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    sum += a(i, i) * b(i, i);
    for (int j = i + 1; j < a.dim(); ++j) sum += 2.0 * a(i, j) * b(i, j);
  }
  return sum;
}

double frobenius_norm(const SymMatrix& a) { return std::sqrt(frobenius_inner(a, a)); }

SpectralDecomposition eigh(const Eigen::MatrixXd& input) {
  if (input.rows() != input.cols()) throw InputError("eigh needs a square matrix");
  const Eigen::Index n = input.rows();
  Eigen::MatrixXd a = input;
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double threshold = kJacobiRelativeThreshold * a.norm();

  bool converged = false;
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    if (offdiag_norm(a) <= threshold) {
      converged = true;
      break;
    }
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        // Entries below the diagonal's resolution are dropped outright once
        // the first sweeps have run; this guarantees termination.
        const double g = 100.0 * std::abs(apq);
        if (sweep > 3 && std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && offdiag_norm(a) > threshold)
    throw std::runtime_error("Jacobi eigensolver did not converge");

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return a(x, x) > a(y, y); });

  SpectralDecomposition out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.lambda(i) = a(order[i], order[i]);
    out.Q.col(i) = v.col(order[i]);
  }
  return out;
}

SpectralDecomposition eigh(const SymMatrix& a) { return eigh(a.dense()); }

Eigen::VectorXd eigenvalues(const SymMatrix& a) { return eigh(a).lambda; }

Eigen::VectorXd eigvalsh(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw InputError("eigvalsh needs a square matrix");
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigvalsh failed to converge");
  return solver.eigenvalues().reverse();
}

double min_eigenvalue(const Eigen::MatrixXd& a) {
  if (a.rows() == 1) return a(0, 0);
  const Eigen::VectorXd ev = eigvalsh(a);
  return ev(ev.size() - 1);
}

SymMatrix diag_embed(std::span<const double> p) {
  SymMatrix out(static_cast<int>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i) out.set(static_cast<int>(i), static_cast<int>(i), p[i]);
  return out;
}

SymMatrix diag_embed(const Eigen::VectorXd& p) {
  return diag_embed(std::span<const double>(p.data(), static_cast<std::size_t>(p.size())));
}

Eigen::VectorXd diag_project(const SymMatrix& a) {
  Eigen::VectorXd out(a.dim());
  for (int i = 0; i < a.dim(); ++i) out(i) = a(i, i);
  return out;
}

SymMatrix conjugate_diagonal(const Eigen::MatrixXd& q, const Eigen::VectorXd& p) {
  return SymMatrix::from_dense(q * p.asDiagonal() * q.transpose());
}

SymMatrix conjugate(const Eigen::MatrixXd& g, const SymMatrix& a) {
  return SymMatrix::from_dense(g * a.dense() * g.transpose());
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, std::uint64_t order_cap) {
  const std::uint64_t rows = static_cast<std::uint64_t>(a.rows()) * static_cast<std::uint64_t>(b.rows());
  const std::uint64_t cols = static_cast<std::uint64_t>(a.cols()) * static_cast<std::uint64_t>(b.cols());
  if (std::max(rows, cols) > order_cap)
    throw CapExceeded("Kronecker product of order " + std::to_string(std::max(rows, cols)) +
                          " exceeds the cap " + std::to_string(order_cap),
                      std::max(rows, cols), order_cap);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

std::vector<Subset> k_subsets(int d, int k) {
  if (d < 0 || k < 0 || k > d)
    throw InputError("k_subsets needs 0 <= k <= d, got d=" + std::to_string(d) + " k=" + std::to_string(k));
  std::vector<Subset> out;
  out.reserve(static_cast<std::size_t>(binomial(d, k)));
  Subset current(static_cast<std::size_t>(k));
  std::iota(current.begin(), current.end(), 0);
  while (true) {
    out.push_back(current);
    int i = k - 1;
    while (i >= 0 && current[i] == d - k + i) --i;
    if (i < 0) break;
    ++current[i];
    for (int j = i + 1; j < k; ++j) current[j] = current[j - 1] + 1;
  }
  return out;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const std::uint64_t numerator = static_cast<std::uint64_t>(n - k + i);
    // result * numerator is divisible by i at every step.
    if (result > UINT64_MAX / numerator)
      throw CapExceeded("binomial coefficient overflows 64 bits", UINT64_MAX, UINT64_MAX);
    result = result * numerator / static_cast<std::uint64_t>(i);
  }
  return result;
}

Eigen::VectorXd char_poly_coeffs(const SymMatrix& a) {
  // det(A + tI) = det(tI - B) with B = -A; Faddeev-LeVerrier on B.
  const int n = a.dim();
  const Eigen::MatrixXd b = -a.dense();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd eta(n);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  double previous = 1.0;
  for (int k = 1; k <= n; ++k) {
    m = b * m + previous * id;
    previous = -(b * m).trace() / k;
    eta(k - 1) = previous;
  }
  return eta;
}

}  // namespace specconvex
