#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specconvex/errors.hpp"

namespace specconvex {

enum class VariableRole { MatrixEntry, Auxiliary };

/// A scalar decision variable. Matrix-entry variables are the upper-triangle
/// entries A[row, col] (row <= col) of the matrix being represented; the
/// projection of a representation keeps exactly these.
struct Variable {
  std::string name;
  VariableRole role = VariableRole::Auxiliary;
  int row = -1;
  int col = -1;
};

struct Triplet {
  int row;
  int col;
  double value;
  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Symmetric matrix held as upper-triangle triplets (row <= col), sorted
/// row-major with duplicates merged and zeros dropped once compressed.
class SparseSym {
 public:
  SparseSym() = default;
  explicit SparseSym(int order) : order_(order) {}

  static SparseSym from_dense(const Eigen::MatrixXd& m);
  static SparseSym scaled_identity(int order, double s);

  /// Accumulates value at (i, j); either triangle may be named.
  void add(int i, int j, double value);
  void compress();

  int order() const { return order_; }
  const std::vector<Triplet>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  Eigen::MatrixXd dense() const;
  void accumulate_into(Eigen::MatrixXd& m, double scale) const;

 private:
  int order_ = 0;
  std::vector<Triplet> entries_;
};

/// constant + sum_v x_v * coefficients[v]  is required to be PSD.
struct PsdBlock {
  std::string label;
  int order = 0;
  SparseSym constant;
  std::vector<std::pair<std::size_t, SparseSym>> coefficients;  ///< sorted by variable index
};

/// sum coeffs . x  (= or <=)  rhs, depending on which list holds it.
struct LinearRow {
  std::string label;
  std::vector<std::pair<std::size_t, double>> coeffs;  ///< sorted by variable index
  double rhs = 0.0;
};

struct ProblemMetadata {
  std::string builder;
  std::string size_formula;
  std::uint64_t formula_size = 0;  ///< value of size_formula for this instance
  std::string construction;
};

/// Block-diagonal affine LMI plus linear constraints over named scalars.
/// Size counts PSD block orders plus scalar inequalities; equalities are free.
struct SdpProblem {
  std::vector<Variable> variables;
  std::vector<PsdBlock> blocks;
  std::vector<LinearRow> equalities;
  std::vector<LinearRow> inequalities;
  ProblemMetadata metadata;

  std::uint64_t size() const;
  /// Size after each equality becomes two inequalities.
  std::uint64_t exported_size() const;
  std::size_t variable_index(const std::string& name) const;
  /// Throws InputError if any data-model invariant is broken.
  void validate() const;
};

/// Values for every variable, in catalog order.
using Assignment = std::vector<double>;

Assignment assignment_from_map(const SdpProblem& problem, const std::map<std::string, double>& values);

Eigen::MatrixXd evaluate_block(const PsdBlock& block, std::span<const double> x);
double evaluate_row(const LinearRow& row, std::span<const double> x);

/// c + sum_v w_v x_v with terms kept sorted by variable index.
struct AffineExpr {
  double constant = 0.0;
  std::vector<std::pair<std::size_t, double>> terms;

  static AffineExpr variable(std::size_t index, double weight = 1.0);
  static AffineExpr scalar(double c);

  AffineExpr& operator+=(const AffineExpr& other);
  AffineExpr& operator-=(const AffineExpr& other);
  AffineExpr& operator*=(double s);
  friend AffineExpr operator+(AffineExpr a, const AffineExpr& b) { return a += b; }
  friend AffineExpr operator-(AffineExpr a, const AffineExpr& b) { return a -= b; }
  friend AffineExpr operator*(double s, AffineExpr a) { return a *= s; }
};

/// Symmetric matrix of affine expressions (upper triangle stored).
class AffineSym {
 public:
  AffineSym() = default;
  explicit AffineSym(int order);

  static AffineSym scaled_identity(int order, const AffineExpr& s);

  int order() const { return order_; }
  const AffineExpr& at(int i, int j) const;
  AffineExpr& at(int i, int j);
  AffineExpr trace() const;

  AffineSym& operator+=(const AffineSym& other);
  AffineSym& operator-=(const AffineSym& other);
  friend AffineSym operator+(AffineSym a, const AffineSym& b) { return a += b; }
  friend AffineSym operator-(AffineSym a, const AffineSym& b) { return a -= b; }

 private:
  std::size_t index(int i, int j) const;
  int order_ = 0;
  std::vector<AffineExpr> upper_;
};

/// Incremental assembly of an SdpProblem.
class ProblemBuilder {
 public:
  std::size_t add_variable(std::string name, VariableRole role = VariableRole::Auxiliary, int row = -1,
                           int col = -1);
  AffineExpr add_scalar(std::string name);
  /// Creates one variable per upper-triangle entry, named prefix[i,j].
  AffineSym add_matrix(const std::string& prefix, int d, VariableRole role);

  std::size_t variable_count() const { return problem_.variables.size(); }

  void add_psd(std::string label, const AffineSym& m);
  void add_psd(PsdBlock block);
  /// expr >= 0
  void add_nonnegative(std::string label, const AffineExpr& expr);
  /// expr == 0
  void add_equality(std::string label, const AffineExpr& expr);

  SdpProblem finish(ProblemMetadata metadata) &&;

 private:
  SdpProblem problem_;
};

}  // namespace specconvex
