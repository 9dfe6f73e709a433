#include "specconvex/sympoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace specconvex {

OrbitHalfspace::OrbitHalfspace(std::vector<double> a, double b)
    : a_(DescendingVector::sorted(std::move(a))), b_(b) {
  if (a_.dim() == 0) throw InputError("orbit generator must be non-empty");
  const auto values = a_.values();
  if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; }))
    throw InputError("orbit generator must be non-zero");
  if (!std::isfinite(b)) throw InputError("orbit right-hand side must be finite");
}

bool OrbitHalfspace::generic() const {
  for (int i = 0; i + 1 < a_.dim(); ++i)
    if (a_[i] == a_[i + 1]) return false;
  return true;
}

SymmetricPolyhedron::SymmetricPolyhedron(int d, std::vector<OrbitHalfspace> orbits)
    : d_(d), orbits_(std::move(orbits)) {
  if (d < 1) throw InputError("polyhedron dimension must be positive");
  if (orbits_.empty()) throw InputError("polyhedron needs at least one orbit");
  for (std::size_t i = 0; i < orbits_.size(); ++i)
    if (orbits_[i].dim() != d)
      throw InputError("orbit " + std::to_string(i) + " has generator length " +
                       std::to_string(orbits_[i].dim()) + ", expected " + std::to_string(d));
}

PointMembership contains_point(const SymmetricPolyhedron& p, const Eigen::VectorXd& x, double tol) {
  if (x.size() != p.dim())
    throw InputError("point has dimension " + std::to_string(x.size()) + ", polyhedron " +
                     std::to_string(p.dim()));
  PointMembership out;
  out.slack = std::numeric_limits<double>::infinity();
  std::size_t worst = 0;
  for (std::size_t i = 0; i < p.orbit_count(); ++i) {
    const OrbitHalfspace& h = p.orbits()[i];
    const double s = h.b() - orbit_max(h.a().eigen(), x);
    out.orbit_slacks.push_back(s);
    if (s < out.slack) {
      out.slack = s;
      worst = i;
    }
  }
  out.inside = out.slack >= -tol;
  if (!out.inside) out.violated_orbit = worst;
  return out;
}

SpectralMembership spectral_contains(const SymmetricPolyhedron& p, const SymMatrix& a, double tol) {
  if (a.dim() != p.dim())
    throw InputError("matrix has order " + std::to_string(a.dim()) + ", polyhedron dimension " +
                     std::to_string(p.dim()));
  SpectralMembership out;
  out.lambda = eigenvalues(a);
  static_cast<PointMembership&>(out) = contains_point(p, out.lambda, tol);
  return out;
}

bool NumericalChain::nested() const {
  for (std::size_t j = 0; j + 1 < sets.size(); ++j)
    if (!std::includes(sets[j + 1].begin(), sets[j + 1].end(), sets[j].begin(), sets[j].end())) return false;
  return true;
}

std::uint64_t chain_count(int d) {
  if (d < 1) throw InputError("chain_count needs d >= 1");
  std::uint64_t total = 1;
  for (int j = 1; j <= d; ++j) {
    const std::uint64_t c = binomial(d, j);
    if (total > UINT64_MAX / c) throw CapExceeded("chain count overflows 64 bits", UINT64_MAX, UINT64_MAX);
    total *= c;
  }
  return total;
}

ChainStream::ChainStream(int d, std::uint64_t cap) : d_(d), count_(chain_count(d)) {
  if (count_ > cap)
    throw CapExceeded("d=" + std::to_string(d) + " has " + std::to_string(count_) +
                          " numerical chains, above the cap " + std::to_string(cap),
                      count_, cap);
  for (int j = 1; j <= d; ++j) levels_.push_back(k_subsets(d, j));
  digits_.assign(static_cast<std::size_t>(d), 0);
  current_.sets.resize(static_cast<std::size_t>(d));
}

const NumericalChain* ChainStream::next() {
  if (!started_) {
    started_ = true;
    position_ = 0;
  } else {
    // Odometer with the last level as the least significant digit.
    int j = d_ - 1;
    while (j >= 0) {
      if (++digits_[j] < levels_[j].size()) break;
      digits_[j] = 0;
      --j;
    }
    if (j < 0) {
      position_ = count_;
      return nullptr;
    }
    ++position_;
  }
  if (position_ >= count_) return nullptr;
  for (int j = 0; j < d_; ++j) current_.sets[j] = levels_[j][digits_[j]];
  return &current_;
}

Eigen::VectorXd chain_vector(const DescendingVector& a, const NumericalChain& chain) {
  const int d = a.dim();
  if (static_cast<int>(chain.sets.size()) != d)
    throw InputError("chain has " + std::to_string(chain.sets.size()) + " levels, generator length " +
                     std::to_string(d));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(d);
  for (int j = 0; j < d; ++j) {
    const double weight = a[j] - (j + 1 < d ? a[j + 1] : 0.0);
    for (int i : chain.sets[j]) out(i) += weight;
  }
  return out;
}

std::vector<LinearInequality> redundant_description(const OrbitHalfspace& h, std::uint64_t cap) {
  ChainStream stream(h.dim(), cap);
  std::vector<LinearInequality> out;
  out.reserve(stream.size());
  while (const NumericalChain* c = stream.next()) out.push_back({chain_vector(h.a(), *c), h.b()});
  return out;
}

}  // namespace specconvex
