#include "specconvex/problem.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace specconvex {

namespace {

void merge_terms(std::vector<std::pair<std::size_t, double>>& terms) {
  std::stable_sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::pair<std::size_t, double>> merged;
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().first == t.first)
      merged.back().second += t.second;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const auto& t) { return t.second == 0.0; });
  terms = std::move(merged);
}

}  // namespace

SparseSym SparseSym::from_dense(const Eigen::MatrixXd& m) {
  SparseSym out(static_cast<int>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j)
      if (m(i, j) != 0.0) out.entries_.push_back({i, j, m(i, j)});
  return out;
}

SparseSym SparseSym::scaled_identity(int order, double s) {
  SparseSym out(order);
  if (s != 0.0)
    for (int i = 0; i < order; ++i) out.entries_.push_back({i, i, s});
  return out;
}

void SparseSym::add(int i, int j, double value) {
  if (i > j) std::swap(i, j);
  entries_.push_back({i, j, value});
}

void SparseSym::compress() {
  std::stable_sort(entries_.begin(), entries_.end(), [](const Triplet& x, const Triplet& y) {
    return x.row != y.row ? x.row < y.row : x.col < y.col;
  });
  std::vector<Triplet> merged;
  merged.reserve(entries_.size());
  for (const Triplet& t : entries_) {
    if (!merged.empty() && merged.back().row == t.row && merged.back().col == t.col)
      merged.back().value += t.value;
    else
      merged.push_back(t);
  }
  std::erase_if(merged, [](const Triplet& t) { return t.value == 0.0; });
  entries_ = std::move(merged);
}

Eigen::MatrixXd SparseSym::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(order_, order_);
  accumulate_into(m, 1.0);
  return m;
}

void SparseSym::accumulate_into(Eigen::MatrixXd& m, double scale) const {
  for (const Triplet& t : entries_) {
    m(t.row, t.col) += scale * t.value;
    if (t.row != t.col) m(t.col, t.row) += scale * t.value;
  }
}

std::uint64_t SdpProblem::size() const {
  std::uint64_t total = inequalities.size();
  for (const PsdBlock& b : blocks) total += static_cast<std::uint64_t>(b.order);
  return total;
}

std::uint64_t SdpProblem::exported_size() const { return size() + 2 * equalities.size(); }

std::size_t SdpProblem::variable_index(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i].name == name) return i;
  throw InputError("unknown variable '" + name + "'");
}

void SdpProblem::validate() const {
  std::set<std::string> names;
  for (const Variable& v : variables)
    if (!names.insert(v.name).second) throw InputError("duplicate variable name '" + v.name + "'");

  auto check_matrix = [&](const SparseSym& m, int order, const std::string& where) {
    if (m.order() != order) throw InputError(where + ": matrix order does not match its block");
    for (const Triplet& t : m.entries()) {
      if (t.row < 0 || t.col >= order || t.row > t.col) throw InputError(where + ": triplet out of range");
      if (!std::isfinite(t.value)) throw InputError(where + ": non-finite coefficient");
    }
  };
  for (const PsdBlock& b : blocks) {
    check_matrix(b.constant, b.order, "block '" + b.label + "' constant");
    std::size_t previous = 0;
    bool first = true;
    for (const auto& [var, m] : b.coefficients) {
      if (var >= variables.size()) throw InputError("block '" + b.label + "' references an unknown variable");
      if (!first && var <= previous) throw InputError("block '" + b.label + "' coefficients not sorted");
      check_matrix(m, b.order, "block '" + b.label + "' coefficient of " + variables[var].name);
      previous = var;
      first = false;
    }
  }
  for (const auto* rows : {&equalities, &inequalities})
    for (const LinearRow& r : *rows) {
      if (!std::isfinite(r.rhs)) throw InputError("row '" + r.label + "' has a non-finite rhs");
      for (const auto& [var, c] : r.coeffs) {
        if (var >= variables.size()) throw InputError("row '" + r.label + "' references an unknown variable");
        if (!std::isfinite(c)) throw InputError("row '" + r.label + "' has a non-finite coefficient");
      }
    }
  if (metadata.formula_size != size())
    throw InputError("declared size " + std::to_string(metadata.formula_size) + " differs from block accounting " +
                     std::to_string(size()));
}

Assignment assignment_from_map(const SdpProblem& problem, const std::map<std::string, double>& values) {
  Assignment out;
  out.reserve(problem.variables.size());
  for (const Variable& v : problem.variables) {
    const auto it = values.find(v.name);
    if (it == values.end()) throw InputError("assignment is missing variable '" + v.name + "'");
    out.push_back(it->second);
  }
  return out;
}

Eigen::MatrixXd evaluate_block(const PsdBlock& block, std::span<const double> x) {
  Eigen::MatrixXd m = block.constant.dense();
  for (const auto& [var, coeff] : block.coefficients) {
    if (var >= x.size()) throw InputError("assignment is shorter than the variable catalog");
    if (x[var] != 0.0) coeff.accumulate_into(m, x[var]);
  }
  return m;
}

double evaluate_row(const LinearRow& row, std::span<const double> x) {
  double sum = 0.0;
  for (const auto& [var, c] : row.coeffs) {
    if (var >= x.size()) throw InputError("assignment is shorter than the variable catalog");
    sum += c * x[var];
  }
  return sum;
}

AffineExpr AffineExpr::variable(std::size_t index, double weight) {
  AffineExpr e;
  if (weight != 0.0) e.terms.emplace_back(index, weight);
  return e;
}

AffineExpr AffineExpr::scalar(double c) {
  AffineExpr e;
  e.constant = c;
  return e;
}

AffineExpr& AffineExpr::operator+=(const AffineExpr& other) {
  constant += other.constant;
  terms.insert(terms.end(), other.terms.begin(), other.terms.end());
  merge_terms(terms);
  return *this;
}

AffineExpr& AffineExpr::operator-=(const AffineExpr& other) {
  AffineExpr negated = other;
  negated *= -1.0;
  return *this += negated;
}

AffineExpr& AffineExpr::operator*=(double s) {
  constant *= s;
  for (auto& t : terms) t.second *= s;
  merge_terms(terms);
  return *this;
}

AffineSym::AffineSym(int order) : order_(order), upper_(static_cast<std::size_t>(order) * (order + 1) / 2) {}

AffineSym AffineSym::scaled_identity(int order, const AffineExpr& s) {
  AffineSym out(order);
  for (int i = 0; i < order; ++i) out.at(i, i) = s;
  return out;
}

std::size_t AffineSym::index(int i, int j) const {
  if (i > j) std::swap(i, j);
  return static_cast<std::size_t>(i) * order_ - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
}

const AffineExpr& AffineSym::at(int i, int j) const { return upper_[index(i, j)]; }
AffineExpr& AffineSym::at(int i, int j) { return upper_[index(i, j)]; }

AffineExpr AffineSym::trace() const {
  AffineExpr t;
  for (int i = 0; i < order_; ++i) t += at(i, i);
  return t;
}

AffineSym& AffineSym::operator+=(const AffineSym& other) {
  if (other.order_ != order_) throw InputError("AffineSym order mismatch");
  for (std::size_t i = 0; i < upper_.size(); ++i) upper_[i] += other.upper_[i];
  return *this;
}

AffineSym& AffineSym::operator-=(const AffineSym& other) {
  if (other.order_ != order_) throw InputError("AffineSym order mismatch");
  for (std::size_t i = 0; i < upper_.size(); ++i) upper_[i] -= other.upper_[i];
  return *this;
}

std::size_t ProblemBuilder::add_variable(std::string name, VariableRole role, int row, int col) {
  problem_.variables.push_back({std::move(name), role, row, col});
  return problem_.variables.size() - 1;
}

AffineExpr ProblemBuilder::add_scalar(std::string name) { return AffineExpr::variable(add_variable(std::move(name))); }

AffineSym ProblemBuilder::add_matrix(const std::string& prefix, int d, VariableRole role) {
  AffineSym m(d);
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      const std::string name = prefix + "[" + std::to_string(i) + "," + std::to_string(j) + "]";
      const bool entry = role == VariableRole::MatrixEntry;
      m.at(i, j) = AffineExpr::variable(add_variable(name, role, entry ? i : -1, entry ? j : -1));
    }
  return m;
}

void ProblemBuilder::add_psd(std::string label, const AffineSym& m) {
  PsdBlock block;
  block.label = std::move(label);
  block.order = m.order();
  block.constant = SparseSym(m.order());
  std::map<std::size_t, SparseSym> coefficients;
  for (int i = 0; i < m.order(); ++i)
    for (int j = i; j < m.order(); ++j) {
      const AffineExpr& e = m.at(i, j);
      if (e.constant != 0.0) block.constant.add(i, j, e.constant);
      for (const auto& [var, w] : e.terms) {
        auto [it, inserted] = coefficients.try_emplace(var, m.order());
        it->second.add(i, j, w);
      }
    }
  block.constant.compress();
  for (auto& [var, coeff] : coefficients) {
    coeff.compress();
    if (!coeff.empty()) block.coefficients.emplace_back(var, std::move(coeff));
  }
  add_psd(std::move(block));
}

void ProblemBuilder::add_psd(PsdBlock block) { problem_.blocks.push_back(std::move(block)); }

void ProblemBuilder::add_nonnegative(std::string label, const AffineExpr& expr) {
  // expr >= 0  <=>  -terms . x <= constant
  LinearRow row{std::move(label), expr.terms, expr.constant};
  for (auto& t : row.coeffs) t.second = -t.second;
  problem_.inequalities.push_back(std::move(row));
}

void ProblemBuilder::add_equality(std::string label, const AffineExpr& expr) {
  LinearRow row{std::move(label), expr.terms, -expr.constant};
  problem_.equalities.push_back(std::move(row));
}

SdpProblem ProblemBuilder::finish(ProblemMetadata metadata) && {
  problem_.metadata = std::move(metadata);
  problem_.validate();
  return std::move(problem_);
}

}  // namespace specconvex
