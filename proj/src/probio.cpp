#include "specconvex/probio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "specconvex/errors.hpp"

namespace specconvex {

using nlohmann::json;

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void push_matrix(std::vector<SdpaEntry>& out, int matno, int block, const SparseSym& m, double sign) {
  for (const Triplet& t : m.entries()) {
    if (!std::isfinite(t.value)) throw InputError("non-finite coefficient in SDPA export");
    if (t.value != 0.0) out.push_back({matno, block, t.row + 1, t.col + 1, sign * t.value});
  }
}

void require_finite(double v, const std::string& where) {
  if (!std::isfinite(v)) throw InputError("non-finite value in " + where);
}

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t index) { return ptr + "/" + std::to_string(index); }

std::string where(const std::string& ptr) { return ptr.empty() ? "/" : ptr; }

const json& field(const json& j, const std::string& key, const std::string& ptr) {
  if (!j.is_object()) throw InputError(where(ptr) + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw InputError(child(ptr, key) + ": missing field");
  return *it;
}

double number(const json& j, const std::string& ptr) {
  if (!j.is_number()) throw InputError(where(ptr) + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw InputError(where(ptr) + ": expected a finite number");
  return v;
}

std::vector<double> numbers(const json& j, const std::string& ptr, std::size_t expected) {
  if (!j.is_array()) throw InputError(where(ptr) + ": expected an array of numbers");
  if (j.size() != expected)
    throw InputError(where(ptr) + ": expected " + std::to_string(expected) + " entries, got " +
                     std::to_string(j.size()));
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], child(ptr, i)));
  return out;
}

const json& array(const json& j, const std::string& ptr) {
  if (!j.is_array()) throw InputError(where(ptr) + ": expected an array");
  return j;
}

int dimension(const json& j) {
  const json& d = field(j, "d", "");
  if (!d.is_number_integer() || d.get<long long>() < 1 || d.get<long long>() > 64)
    throw InputError("/d: expected an integer between 1 and 64");
  return d.get<int>();
}

json triplets(const SparseSym& m) {
  json out = json::array();
  for (const Triplet& t : m.entries()) out.push_back({t.row, t.col, t.value});
  return out;
}

json rows_json(const SdpProblem& problem, const std::vector<LinearRow>& rows) {
  json out = json::array();
  for (const LinearRow& r : rows) {
    json coeffs = json::array();
    for (const auto& [var, c] : r.coeffs) coeffs.push_back({{"variable", problem.variables[var].name}, {"value", c}});
    out.push_back({{"label", r.label}, {"coefficients", coeffs}, {"rhs", r.rhs}});
  }
  return out;
}

}  // namespace

SdpaModel to_sdpa_model(const SdpProblem& problem) {
  SdpaModel model;
  model.m = static_cast<int>(problem.variables.size());
  model.objective.assign(problem.variables.size(), 0.0);
  for (const PsdBlock& b : problem.blocks) model.block_sizes.push_back(b.order);
  const std::size_t scalar_rows = 2 * problem.equalities.size() + problem.inequalities.size();
  const int lp_block = static_cast<int>(problem.blocks.size()) + 1;
  if (scalar_rows > 0) model.block_sizes.push_back(-static_cast<int>(scalar_rows));

  // by_matno[v] collects F_v; entries inside follow block, then row-major order.
  std::vector<std::vector<SdpaEntry>> by_matno(problem.variables.size() + 1);
  for (std::size_t bi = 0; bi < problem.blocks.size(); ++bi) {
    const PsdBlock& b = problem.blocks[bi];
    const int block = static_cast<int>(bi) + 1;
    push_matrix(by_matno[0], 0, block, b.constant, -1.0);
    for (const auto& [var, coeff] : b.coefficients) push_matrix(by_matno[var + 1], static_cast<int>(var) + 1, block, coeff, 1.0);
  }
  int diag = 0;
  auto push_row = [&](const LinearRow& r, double sign) {
    ++diag;
    require_finite(r.rhs, "row '" + r.label + "'");
    // sign * (row.x - rhs) >= 0
    if (r.rhs != 0.0) by_matno[0].push_back({0, lp_block, diag, diag, sign * r.rhs});
    for (const auto& [var, c] : r.coeffs) {
      require_finite(c, "row '" + r.label + "'");
      if (c != 0.0) by_matno[var + 1].push_back({static_cast<int>(var) + 1, lp_block, diag, diag, sign * c});
    }
  };
  for (const LinearRow& r : problem.equalities) {
    push_row(r, 1.0);
    push_row(r, -1.0);
  }
  for (const LinearRow& r : problem.inequalities) push_row(r, -1.0);

  for (auto& list : by_matno) {
    std::stable_sort(list.begin(), list.end(), [](const SdpaEntry& x, const SdpaEntry& y) {
      if (x.block != y.block) return x.block < y.block;
      if (x.i != y.i) return x.i < y.i;
      return x.j < y.j;
    });
    model.entries.insert(model.entries.end(), list.begin(), list.end());
  }
  return model;
}

std::string format_sdpa(const SdpaModel& model, std::string_view comment) {
  std::string out = "\"" + std::string(comment) + "\n";
  out += std::to_string(model.m) + "\n";
  out += std::to_string(model.block_sizes.size()) + "\n";
  for (std::size_t i = 0; i < model.block_sizes.size(); ++i)
    out += (i ? " " : "") + std::to_string(model.block_sizes[i]);
  out += "\n";
  for (std::size_t i = 0; i < model.objective.size(); ++i) out += (i ? " " : "") + format_double(model.objective[i]);
  out += "\n";
  for (const SdpaEntry& e : model.entries)
    out += std::to_string(e.matno) + " " + std::to_string(e.block) + " " + std::to_string(e.i) + " " +
           std::to_string(e.j) + " " + format_double(e.value) + "\n";
  return out;
}

std::string export_sdpa(const SdpProblem& problem) {
  std::string comment = problem.metadata.builder.empty() ? "problem" : problem.metadata.builder;
  comment += ": size " + std::to_string(problem.size()) + ", exported size " + std::to_string(problem.exported_size());
  return format_sdpa(to_sdpa_model(problem), comment);
}

SdpaModel parse_sdpa(std::string_view text) {
  std::istringstream lines{std::string(text)};
  std::string line;
  std::string body;
  bool header = true;
  while (std::getline(lines, line)) {
    if (header && !line.empty() && (line[0] == '"' || line[0] == '*')) continue;
    header = false;
    body += line + "\n";
  }
  std::replace_if(body.begin(), body.end(), [](char c) { return c == ',' || c == '{' || c == '}' || c == '(' || c == ')'; },
                  ' ');
  std::istringstream in(body);
  auto next_int = [&](const char* what) {
    long long v;
    if (!(in >> v)) throw InputError(std::string("SDPA: cannot read ") + what);
    return static_cast<int>(v);
  };
  SdpaModel model;
  model.m = next_int("m");
  const int blocks = next_int("nBLOCK");
  if (model.m < 0 || blocks < 0) throw InputError("SDPA: negative m or nBLOCK");
  for (int i = 0; i < blocks; ++i) model.block_sizes.push_back(next_int("block size"));
  for (int i = 0; i < model.m; ++i) {
    double v;
    if (!(in >> v)) throw InputError("SDPA: cannot read objective entry");
    model.objective.push_back(v);
  }
  while (true) {
    SdpaEntry e;
    if (!(in >> e.matno)) break;
    if (!(in >> e.block >> e.i >> e.j >> e.value)) throw InputError("SDPA: truncated entry line");
    if (e.matno < 0 || e.matno > model.m || e.block < 1 || e.block > blocks)
      throw InputError("SDPA: entry index out of range");
    const int size = model.block_sizes[static_cast<std::size_t>(e.block - 1)];
    const int order = size < 0 ? -size : size;
    if (e.i < 1 || e.j < 1 || e.i > order || e.j > order || (size < 0 && e.i != e.j))
      throw InputError("SDPA: entry position outside its block");
    model.entries.push_back(e);
  }
  if (!in.eof()) throw InputError("SDPA: unexpected token");
  return model;
}

ProblemInput parse_problem(std::string_view text) { return problem_from_json(parse_json(text, "problem")); }

ProblemInput problem_from_json(const json& j) {
  if (!j.is_object()) throw InputError("/: expected an object");
  if (j.contains("orbits")) return parse_polyhedron(j);
  if (j.contains("generators")) return parse_zonotope(j);
  if (j.contains("upper")) return parse_matrix(j);
  if (j.contains("points") || j.contains("radius")) return parse_hull(j);
  throw InputError("/: expected one of the fields orbits, points, radius, generators, upper");
}

SymmetricPolyhedron parse_polyhedron(const json& j) {
  const int d = dimension(j);
  const json& orbits = array(field(j, "orbits", ""), "/orbits");
  if (orbits.empty()) throw InputError("/orbits: at least one orbit is required");
  std::vector<OrbitHalfspace> halfspaces;
  for (std::size_t i = 0; i < orbits.size(); ++i) {
    const std::string ptr = child("/orbits", i);
    std::vector<double> a = numbers(field(orbits[i], "a", ptr), child(ptr, "a"), static_cast<std::size_t>(d));
    const double b = number(field(orbits[i], "b", ptr), child(ptr, "b"));
    try {
      halfspaces.emplace_back(std::move(a), b);
    } catch (const InputError& e) {
      throw InputError(ptr + ": " + e.what());
    }
  }
  return SymmetricPolyhedron(d, std::move(halfspaces));
}

OrbitHull parse_hull(const json& j) {
  const int d = dimension(j);
  std::vector<DescendingVector> points;
  if (j.contains("points")) {
    const json& list = array(j["points"], "/points");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string ptr = child("/points", i);
      try {
        points.push_back(DescendingVector::checked(numbers(list[i], ptr, static_cast<std::size_t>(d))));
      } catch (const InputError& e) {
        if (std::string(e.what()).rfind("/", 0) == 0) throw;
        throw InputError(ptr + ": point not descending (" + e.what() + ")");
      }
    }
  }
  const double radius = j.contains("radius") ? number(j["radius"], "/radius") : 0.0;
  if (radius < 0.0) throw InputError("/radius: must be non-negative");
  if (points.empty() && radius == 0.0) throw InputError("/points: a hull needs a point or a positive radius");
  return OrbitHull(d, std::move(points), radius);
}

SpectralZonotope parse_zonotope(const json& j) {
  const int d = dimension(j);
  const json& list = array(field(j, "generators", ""), "/generators");
  std::vector<Eigen::VectorXd> generators;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::vector<double> g = numbers(list[i], child("/generators", i), static_cast<std::size_t>(d));
    generators.push_back(Eigen::Map<const Eigen::VectorXd>(g.data(), d));
    if (generators.back().isZero(0.0)) throw InputError(child("/generators", i) + ": generator is zero");
  }
  return SpectralZonotope(d, std::move(generators));
}

SymMatrix parse_matrix(const json& j) {
  const int d = dimension(j);
  return SymMatrix::from_upper(d, numbers(field(j, "upper", ""), "/upper", static_cast<std::size_t>(d) * (d + 1) / 2));
}

NamedValues parse_assignment(const json& j) {
  if (!j.is_object()) throw InputError("/: expected an object mapping variable names to numbers");
  NamedValues out;
  for (const auto& [key, value] : j.items()) out[key] = number(value, "/" + key);
  return out;
}

json to_json(const SymMatrix& a) {
  return {{"d", a.dim()}, {"upper", std::vector<double>(a.upper().begin(), a.upper().end())}};
}

json to_json(const SymmetricPolyhedron& p) {
  json orbits = json::array();
  for (const OrbitHalfspace& h : p.orbits())
    orbits.push_back({{"a", std::vector<double>(h.a().values().begin(), h.a().values().end())}, {"b", h.b()}});
  return {{"d", p.dim()}, {"orbits", orbits}};
}

json to_json(const OrbitHull& k) {
  json points = json::array();
  for (const DescendingVector& v : k.points()) points.push_back(std::vector<double>(v.values().begin(), v.values().end()));
  return {{"d", k.dim()}, {"points", points}, {"radius", k.radius()}};
}

json to_json(const SdpProblem& problem) {
  json variables = json::array();
  for (const Variable& v : problem.variables) {
    json entry = {{"name", v.name}, {"role", v.role == VariableRole::MatrixEntry ? "matrix-entry" : "auxiliary"}};
    if (v.role == VariableRole::MatrixEntry) {
      entry["row"] = v.row;
      entry["col"] = v.col;
    }
    variables.push_back(entry);
  }
  json blocks = json::array();
  for (const PsdBlock& b : problem.blocks) {
    json coeffs = json::array();
    for (const auto& [var, m] : b.coefficients)
      coeffs.push_back({{"variable", problem.variables[var].name}, {"entries", triplets(m)}});
    blocks.push_back({{"label", b.label}, {"order", b.order}, {"constant", triplets(b.constant)}, {"coefficients", coeffs}});
  }
  return {{"builder", problem.metadata.builder},
          {"size_formula", problem.metadata.size_formula},
          {"size", problem.size()},
          {"formula_size", problem.metadata.formula_size},
          {"exported_size", problem.exported_size()},
          {"construction", problem.metadata.construction},
          {"variables", variables},
          {"blocks", blocks},
          {"equalities", rows_json(problem, problem.equalities)},
          {"inequalities", rows_json(problem, problem.inequalities)}};
}

json to_json(const AssignmentReport& report) {
  json blocks = json::array();
  for (const BlockReport& b : report.blocks)
    blocks.push_back({{"label", b.label}, {"order", b.order}, {"min_eigenvalue", b.min_eigenvalue}});
  json rows = json::array();
  for (const RowReport& r : report.rows)
    rows.push_back({{"label", r.label}, {"equality", r.equality}, {"residual", r.residual}});
  return {{"feasible", report.feasible}, {"worst", report.worst}, {"blocks", blocks}, {"rows", rows}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(what + ": invalid JSON (" + e.what() + ")");
  }
}

}  // namespace specconvex
