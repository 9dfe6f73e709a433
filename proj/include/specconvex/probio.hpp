#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "specconvex/problem.hpp"
#include "specconvex/shadowrep.hpp"
#include "specconvex/specgeo.hpp"
#include "specconvex/symcore.hpp"
#include "specconvex/sympoly.hpp"

namespace specconvex {

/// One nonzero of an SDPA matrix: F_matno restricted to block `block`, entry (i, j), i <= j, 1-based.
struct SdpaEntry {
  int matno = 0;
  int block = 0;
  int i = 0;
  int j = 0;
  double value = 0.0;
  friend bool operator==(const SdpaEntry&, const SdpaEntry&) = default;
};

/// The data of an SDPA sparse file: sum_v F_v x_v - F_0 >= 0.
struct SdpaModel {
  int m = 0;
  std::vector<int> block_sizes;  ///< negative for the diagonal (LP) block
  std::vector<double> objective;
  std::vector<SdpaEntry> entries;  ///< ordered by matno, block, row-major
  friend bool operator==(const SdpaModel&, const SdpaModel&) = default;
};

/// PSD blocks in catalog order, then one diagonal block holding, for each
/// equality, the pair row.x - rhs >= 0 and rhs - row.x >= 0, then
/// rhs - row.x >= 0 for each inequality.
SdpaModel to_sdpa_model(const SdpProblem& problem);
/// Text of to_sdpa_model(problem): a comment line, m, nBLOCK, block sizes,
/// objective (all zeros), then the entries with 17 significant digits.
std::string export_sdpa(const SdpProblem& problem);
std::string format_sdpa(const SdpaModel& model, std::string_view comment);
SdpaModel parse_sdpa(std::string_view text);

using ProblemInput = std::variant<SymmetricPolyhedron, OrbitHull, SpectralZonotope, SymMatrix>;

/// Dispatches on the keys "orbits", "points"/"radius", "generators", "upper".
/// Errors name the offending field as a JSON pointer.
ProblemInput parse_problem(std::string_view text);
ProblemInput problem_from_json(const nlohmann::json& j);
SymmetricPolyhedron parse_polyhedron(const nlohmann::json& j);
OrbitHull parse_hull(const nlohmann::json& j);
SpectralZonotope parse_zonotope(const nlohmann::json& j);
SymMatrix parse_matrix(const nlohmann::json& j);
/// {"name": value, ...}
NamedValues parse_assignment(const nlohmann::json& j);

nlohmann::json to_json(const SymMatrix& a);
nlohmann::json to_json(const SymmetricPolyhedron& p);
nlohmann::json to_json(const OrbitHull& k);
nlohmann::json to_json(const SdpProblem& problem);
nlohmann::json to_json(const AssignmentReport& report);

/// Reads a whole file; throws InputError if it cannot be opened.
std::string read_file(const std::string& path);
nlohmann::json parse_json(std::string_view text, const std::string& what);

}  // namespace specconvex
