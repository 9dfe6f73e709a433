#include "specconvex/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "specconvex/errors.hpp"
#include "specconvex/probio.hpp"
#include "specconvex/schurrep.hpp"
#include "specconvex/shadowrep.hpp"
#include "specconvex/specgeo.hpp"
#include "specconvex/sympoly.hpp"
#include "specconvex/verify.hpp"

namespace specconvex::cli {

using nlohmann::json;

namespace {

struct RunConfig {
  std::string poly;
  std::string hull;
  std::string zono;
  std::string matrix;
  std::string assignment;
  std::string out;
  std::string format = "json";
  std::string suite = "all";
  double tol = 1e-9;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> samples;
  std::optional<int> trials;
  std::vector<double> t_values;
  std::optional<int> fit_degree;
  int d = 2;
  bool strict = false;
};

/// A command's result: the document to print and the exit code.
struct Outcome {
  json doc;
  int code = kExitOk;
  std::optional<std::string> raw;  ///< printed verbatim instead of doc (SDPA)
};

std::uint64_t order_cap() {
  const char* env = std::getenv("SPECCONVEX_CAP");
  if (!env || !*env) return kDefaultOrderCap;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || v == 0) throw InputError("SPECCONVEX_CAP must be a positive integer");
  return v;
}

json load_json(const std::string& path) { return parse_json(read_file(path), path); }

template <typename T>
T load_as(const std::string& path, T (*parser)(const json&)) {
  try {
    return parser(load_json(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::uint64_t require_seed(const RunConfig& c) {
  if (c.strict && !c.seed) throw InputError("--strict requires an explicit --seed for randomized commands");
  return c.seed.value_or(0);
}

void require_format(const RunConfig& c, bool sdpa_allowed) {
  if (c.format == "sdpa" && !sdpa_allowed) throw InputError("--format sdpa is only available for lmi and shadow");
}

std::string text_of(const json& doc, const std::string& prefix = "") {
  std::string out;
  if (doc.is_object()) {
    for (const auto& [key, value] : doc.items()) {
      const std::string name = prefix.empty() ? key : prefix + "." + key;
      if (value.is_object())
        out += text_of(value, name);
      else
        out += name + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
    }
  } else {
    out += (prefix.empty() ? "" : prefix + ": ") + doc.dump() + "\n";
  }
  return out;
}

json lambda_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

/// "boundary" for accepted matrices within tol * max(1, |lambda|_inf) of the boundary.
std::string membership_status(bool inside, double margin, const Eigen::VectorXd& lambda, double tol) {
  if (!inside) return "outside";
  const double scale = std::max(1.0, lambda.size() ? lambda.cwiseAbs().maxCoeff() : 0.0);
  return margin <= tol * scale ? "boundary" : "inside";
}

Outcome cmd_check(const RunConfig& c) {
  require_format(c, false);
  if (c.matrix.empty()) throw InputError("check needs --matrix");
  const SymMatrix a = load_as(c.matrix, parse_matrix);
  if (!c.poly.empty()) {
    const SymmetricPolyhedron p = load_as(c.poly, parse_polyhedron);
    if (p.dim() != a.dim()) throw InputError("matrix dimension does not match the polyhedron");
    const SpectralMembership m = spectral_contains(p, a, c.tol);
    json doc = {{"inside", m.inside}, {"margin", m.slack}, {"lambda", lambda_json(m.lambda)},
                {"orbit_slacks", m.orbit_slacks}, {"status", membership_status(m.inside, m.slack, m.lambda, c.tol)}};
    if (m.violated_orbit) doc["violated_orbit"] = *m.violated_orbit;
    return {doc, m.inside ? kExitOk : kExitRejected, {}};
  }
  if (!c.hull.empty()) {
    const OrbitHull k = load_as(c.hull, parse_hull);
    if (k.dim() != a.dim()) throw InputError("matrix dimension does not match the hull");
    const Eigen::VectorXd lambda = eigenvalues(a);
    const bool inside = spectral_hull_contains(k, a, c.tol);
    json doc = {{"inside", inside}, {"lambda", lambda_json(lambda)}};
    const double distance = k.points().empty() ? lambda.norm() : hull_distance(k, lambda).distance;
    doc["margin"] = k.radius() - distance;
    doc["status"] = membership_status(inside, k.radius() - distance, lambda, c.tol);
    return {doc, inside ? kExitOk : kExitRejected, {}};
  }
  throw InputError("check needs --poly or --hull");
}

Outcome problem_outcome(const RunConfig& c, const SdpProblem& problem, const std::optional<NamedValues>& values) {
  if (values) {
    const AssignmentReport report = check_assignment(problem, *values, c.tol);
    json doc = to_json(report);
    doc["size"] = problem.size();
    return {doc, report.feasible ? kExitOk : kExitRejected, {}};
  }
  if (c.format == "sdpa") return {json(), kExitOk, export_sdpa(problem)};
  return {to_json(problem), kExitOk, {}};
}

std::optional<NamedValues> load_assignment(const RunConfig& c) {
  if (c.assignment.empty()) return std::nullopt;
  return load_as(c.assignment, parse_assignment);
}

NamedValues matrix_values(const SymMatrix& a) {
  NamedValues out;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = i; j < a.dim(); ++j) out["A[" + std::to_string(i) + "," + std::to_string(j) + "]"] = a(i, j);
  return out;
}

Outcome cmd_lmi(const RunConfig& c) {
  std::optional<NamedValues> values = load_assignment(c);
  if (!c.poly.empty()) {
    const SymmetricPolyhedron p = load_as(c.poly, parse_polyhedron);
    if (!values && !c.matrix.empty()) values = matrix_values(load_as(c.matrix, parse_matrix));
    return problem_outcome(c, build_spectrahedron(p, order_cap()), values);
  }
  if (!c.hull.empty()) {
    const OrbitHull k = load_as(c.hull, parse_hull);
    if (k.points().size() != 1 || k.radius() != 0.0)
      throw InputError("lmi --hull expects a single point and no radius (a permutahedron); use shadow for hulls");
    if (!values && !c.matrix.empty()) values = matrix_values(load_as(c.matrix, parse_matrix));
    return problem_outcome(c, permutahedron_lmi(k.points().front(), order_cap()), values);
  }
  throw InputError("lmi needs --poly or --hull");
}

Outcome cmd_shadow(const RunConfig& c) {
  std::optional<NamedValues> values = load_assignment(c);
  if (!c.poly.empty()) {
    const SymmetricPolyhedron p = load_as(c.poly, parse_polyhedron);
    if (!values && !c.matrix.empty()) values = hrep_witness(p, load_as(c.matrix, parse_matrix));
    return problem_outcome(c, build_shadow_hrep(p), values);
  }
  if (!c.hull.empty()) {
    if (!c.matrix.empty() && !values)
      throw InputError("shadow --hull checks a full --assignment; --matrix alone does not fix the weights mu");
    return problem_outcome(c, build_shadow_vrep(load_as(c.hull, parse_hull)), values);
  }
  throw InputError("shadow needs --poly or --hull");
}

Outcome cmd_support(const RunConfig& c) {
  require_format(c, false);
  if (c.matrix.empty()) throw InputError("support needs --matrix");
  const SymMatrix b = load_as(c.matrix, parse_matrix);
  if (!c.hull.empty()) {
    const OrbitHull k = load_as(c.hull, parse_hull);
    return {{{"support", support_spectral(k, b)}, {"lambda", lambda_json(eigenvalues(b))}}, kExitOk, {}};
  }
  if (!c.zono.empty()) {
    const SpectralZonotope z = load_as(c.zono, parse_zonotope);
    return {{{"support", zonotope_support(z, b)}, {"lambda", lambda_json(eigenvalues(b))}}, kExitOk, {}};
  }
  throw InputError("support needs --hull or --zono");
}

Outcome cmd_steiner(const RunConfig& c) {
  require_format(c, false);
  if (c.hull.empty()) throw InputError("steiner needs --hull");
  const std::uint64_t seed = require_seed(c);
  const OrbitHull k = load_as(c.hull, parse_hull);
  const std::vector<double> ts = c.t_values.empty() ? std::vector<double>{0.0} : c.t_values;
  const std::uint64_t n = c.samples.value_or(100000);
  const std::vector<SteinerEstimate> estimates = steiner_mc(k, ts, n, seed);
  json rows = json::array();
  std::vector<SteinerSample> samples;
  for (const SteinerEstimate& e : estimates) {
    rows.push_back({{"t", e.t},
                    {"volume", e.volume},
                    {"standard_error", e.standard_error},
                    {"integral", e.integral},
                    {"integral_standard_error", e.integral_se},
                    {"acceptance", e.acceptance}});
    samples.push_back({e.t, e.volume, e.standard_error});
  }
  const int dim = k.dim() * (k.dim() + 1) / 2;
  json doc = {{"d", k.dim()}, {"samples", n}, {"seed", seed}, {"c_d", steiner_constant(k.dim())}, {"estimates", rows}};
  const int degree = c.fit_degree.value_or(dim);
  std::vector<double> distinct = ts;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (c.fit_degree || static_cast<int>(distinct.size()) >= degree + 1) {
    const QuermassFit fit = quermass_fit(samples, degree);
    doc["fit"] = {{"degree", degree},
                  {"polynomial", fit.polynomial},
                  {"polynomial_standard_error", fit.polynomial_se},
                  {"W", fit.W},
                  {"W_standard_error", fit.W_se},
                  {"residual_norm", fit.residual_norm}};
  }
  return {doc, kExitOk, {}};
}

Outcome cmd_verify(const RunConfig& c) {
  require_format(c, false);
  SuiteOptions options;
  options.seed = require_seed(c);
  options.trials = c.trials.value_or(0);
  options.samples = c.samples.value_or(0);
  std::vector<SuiteResult> results;
  if (c.suite == "all") {
    for (const std::string& name : suite_names()) results.push_back(run_suite(name, options));
  } else {
    results.push_back(run_suite(c.suite, options));
  }
  json doc = verify_report(results, options);
  return {doc, doc["passed"].get<bool>() ? kExitOk : kExitRejected, {}};
}

Outcome cmd_charpoly(const RunConfig& c) {
  require_format(c, false);
  if (c.matrix.empty()) throw InputError("charpoly needs --matrix");
  const SymMatrix a = load_as(c.matrix, parse_matrix);
  return {{{"d", a.dim()}, {"eta", lambda_json(char_poly_coeffs(a))}}, kExitOk, {}};
}

Outcome cmd_hyperbolic(const RunConfig& c) {
  require_format(c, false);
  if (c.poly.empty()) throw InputError("hyperbolic needs --poly (a cone: every b = 0)");
  const std::uint64_t seed = require_seed(c);
  const HyperbolicityReport r = hyperbolicity_sample_check(load_as(c.poly, parse_polyhedron), c.trials.value_or(100), seed);
  const bool ok = r.factor_agreements == r.trials && r.root_agreements == r.trials;
  return {{{"trials", r.trials},
           {"degree", r.degree},
           {"identity_interior", r.identity_interior},
           {"inside", r.inside},
           {"factor_agreements", r.factor_agreements},
           {"root_agreements", r.root_agreements},
           {"skipped_factors", r.skipped_factors},
           {"max_identity_error", r.max_identity_error},
           {"consistent", ok}},
          ok ? kExitOk : kExitRejected,
          {}};
}

Outcome cmd_calibrate(const RunConfig& c) {
  require_format(c, false);
  const std::uint64_t seed = require_seed(c);
  const Calibration cal = calibrate_cd(c.d, c.samples.value_or(1'000'000), seed);
  return {{{"d", cal.d},
           {"value", cal.value},
           {"standard_error", cal.standard_error},
           {"exact", cal.exact},
           {"hurwitz_prefactor", cal.hurwitz}},
          kExitOk,
          {}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectral convex sets: membership, LMI and shadow representations, support functions, Steiner volumes",
               "specconvex"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--tol", c.tol, "numerical tolerance")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--samples", c.samples, "Monte-Carlo samples")->check(CLI::PositiveNumber);
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text", "sdpa"}));
  app.add_option("--out", c.out, "write output to this file");
  app.add_flag("--strict", c.strict, "require explicit seeds");

  auto input_flags = [&](CLI::App* sub) {
    sub->add_option("--poly", c.poly, "SymmetricPolyhedron JSON");
    sub->add_option("--hull", c.hull, "OrbitHull JSON");
    sub->add_option("--zono", c.zono, "SpectralZonotope JSON");
    sub->add_option("--matrix", c.matrix, "matrix JSON");
  };
  std::vector<std::pair<CLI::App*, Outcome (*)(const RunConfig&)>> commands;
  auto add = [&](const char* name, const char* help, Outcome (*fn)(const RunConfig&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    input_flags(sub);
    commands.emplace_back(sub, fn);
    return sub;
  };
  add("check", "membership of a matrix in Lambda(K), with margin", cmd_check);
  add("lmi", "spectrahedral representation (SDPA or JSON)", cmd_lmi)
      ->add_option("--assignment", c.assignment, "variable values to check");
  add("shadow", "projected-spectrahedral representation", cmd_shadow)
      ->add_option("--assignment", c.assignment, "variable values to check");
  add("support", "support function at a matrix", cmd_support);
  CLI::App* steiner = add("steiner", "Monte-Carlo Steiner volumes and quermass fit", cmd_steiner);
  steiner->add_option("--t", c.t_values, "Steiner parameter (repeatable)");
  steiner->add_option("--fit", c.fit_degree, "degree of the fitted polynomial");
  CLI::App* verify = add("verify", "oracle-equivalence suites", cmd_verify);
  verify->add_option("--suite", c.suite, "suite name or all");
  verify->add_option("--trials", c.trials, "trials per suite")->check(CLI::PositiveNumber);
  add("charpoly", "coefficients of det(A + tI)", cmd_charpoly);
  add("hyperbolic", "sample check of the hyperbolicity cone picture", cmd_hyperbolic)
      ->add_option("--trials", c.trials, "number of sampled matrices")
      ->check(CLI::PositiveNumber);
  add("calibrate", "Monte-Carlo estimate of the Steiner constant c_d", cmd_calibrate)
      ->add_option("--d", c.d, "dimension");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitInput;
  }

  try {
    if (c.suite != "all") default_trials(c.suite);
    Outcome result;
    for (const auto& [sub, fn] : commands)
      if (sub->parsed()) result = fn(c);
    std::string text;
    if (result.raw)
      text = *result.raw;
    else if (c.format == "text")
      text = text_of(result.doc);
    else
      text = result.doc.dump(2) + "\n";
    if (c.out.empty()) {
      out << text;
    } else {
      std::ofstream file(c.out, std::ios::binary);
      if (!file) throw InputError("cannot write '" + c.out + "'");
      file << text;
    }
    return result.code;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << " (requested " << e.requested() << ", cap " << e.cap()
        << "; raise SPECCONVEX_CAP to allow it)\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace specconvex::cli
