// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "specconvex/verify.hpp"

using namespace specconvex;

namespace {

constexpr std::uint64_t kSeed = 7;

struct Timed {
  SuiteResult result;
  double seconds = 0.0;
};

Timed timed_suite(const std::string& name, int trials, std::uint64_t samples = 0) {
  const auto start = std::chrono::steady_clock::now();
  SuiteResult r = run_suite(name, {trials, kSeed, samples});
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return {std::move(r), elapsed.count()};
}

std::string fmt(double v, int precision = 3) {
  std::ostringstream s;
  s.precision(precision);
  s << v;
  return s.str();
}

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << (pass ? "PASS" : "FAIL") << " " << id << " " << name << ": " << detail << std::endl;
}

std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  {
    const Timed t = timed_suite("compound", 100);
    const bool pass = t.result.passed() && t.result.max_error <= 1e-8 && t.seconds < 10.0;
    report(1, "compound eigenvalue law",
           pass,
           "d=2..5, k=1..d, 100 matrices each; max deviation " + fmt(t.result.max_error) + " (tol 1e-8); " +
               std::to_string(t.result.failures) + " failures; " + fmt(t.seconds) + " s (limit 10 s)");
  }
  {
    const Timed t = timed_suite("spectrahedron", 10000);
    const auto& d = t.result.details;
    const int samples = d["samples"];
    const int on_band = d["on_band"];
    const int disagreements = d["disagreements"];
    const bool pass = t.result.passed() && disagreements == 0 && on_band <= 0.005 * samples &&
                      t.result.max_error <= 1e-8 && t.seconds < 60.0;
    report(2, "spectrahedron equivalence", pass,
           std::to_string(samples) + " matrices, " + std::to_string(disagreements) + " disagreements, " +
               std::to_string(on_band) + " on the 1e-7 band (limit 0.5%); max relative |min-eig - slack| " +
               fmt(t.result.max_error) + " (tol 1e-8); " + fmt(t.seconds) + " s (limit 60 s)");
  }
  {
    const Timed t = timed_suite("chains", 2000);
    const auto& d = t.result.details;
    const int dis3 = d["3"]["disagreements"];
    const int dis4 = d["4"]["disagreements"];
    const bool pass = t.result.passed() && dis3 == 0 && dis4 == 0 && d["3"]["chains"] == 9 && d["4"]["chains"] == 96;
    report(3, "redundant chain description", pass,
           "d=3 (9 chains): " + std::to_string(dis3) + " disagreements, d=4 (96 chains): " + std::to_string(dis4) +
               " disagreements over 2000 points each (tol 1e-9)");
  }
  {
    const Timed t = timed_suite("btn", 500);
    const int feasible = t.result.details["feasible_cases"];
    const int infeasible = t.result.details["infeasible_cases"];
    report(4, "Ben-Tal-Nemirovski lift", t.result.passed(),
           std::to_string(feasible) + " cases with t >= s_k, " + std::to_string(infeasible) +
               " with t = s_k - 1e-3; " + std::to_string(t.result.failures) + " failures in " +
               std::to_string(t.result.checks) + " checks");
  }
  {
    const Timed t = timed_suite("sizes", 1);
    const auto& spot = t.result.details["d3_M2"];
    const bool pass = t.result.passed() && spot["hrep"] == 12 && spot["spectrahedron"] == 18;
    report(5, "shadow and spectrahedron sizes", pass,
           "all d<=6, M<=5: " + std::to_string(t.result.failures) + " mismatches; d=3 M=2 shadow " +
               spot["hrep"].dump() + " (want 12), spectrahedron " + spot["spectrahedron"].dump() + " (want 18)");
  }
  {
    const Timed t = timed_suite("vrep", 1000);
    const auto& d = t.result.details;
    const int inside_failures = d["inside_failures"];
    const int inversions = d["inversions"];
    const bool pass = t.result.passed() && inside_failures == 0 && inversions == 0 && d["outside_samples"] == 1000;
    report(6, "V-description shadow generation test", pass,
           "1000 inside matrices, " + std::to_string(inside_failures) + " rejected; " +
               d["outside_samples"].dump() + " separated matrices, " + std::to_string(inversions) + " accepted");
  }
  {
    const Timed t = timed_suite("nuclear", 200);
    report(7, "nuclear-norm identity", t.result.passed(),
           "200 matrices, d=2..5; " + std::to_string(t.result.failures) + " failures; max relative deviation " +
               fmt(t.result.max_error));
  }
  {
    const Timed t = timed_suite("steiner", 1, 1'000'000);
    const auto& cal = t.result.details["calibration"];
    std::string rows;
    for (const auto& r : t.result.details["ball"]) {
      const double v = r["volume"];
      const double se = r["standard_error"];
      const double want = r["expected"];
      rows += " t=" + fmt(r["t"].get<double>()) + ": z=" + fmt((v - want) / se) + " se/mean=" + fmt(se / v) + ";";
    }
    const bool pass = t.result.passed() && t.seconds < 60.0;
    report(8, "Steiner ball law", pass,
           "10^6 samples;" + rows + " c_2 estimate " + fmt(cal["value"].get<double>(), 6) + " vs " +
               fmt(cal["exact"].get<double>(), 6) + " (tol 1%)" + "; " + fmt(t.seconds) + " s (limit 60 s)");
  }
  {
    const Timed t = timed_suite("duality", 500);
    const double max_pairing = t.result.details["max_pairing"];
    report(9, "duality pairing", t.result.passed() && max_pairing <= 1.0 + 1e-9,
           "500 pairs; max tr(AB) " + fmt(max_pairing, 15) + " (limit 1 + 1e-9); " + std::to_string(t.result.failures) +
               " failures");
  }
  {
    const std::string cli = SPECCONVEX_CLI_PATH;
    const std::string golden = SPECCONVEX_GOLDEN_DIR;
    int s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    const std::string verify = "'" + cli + "' verify --strict --seed " + std::to_string(kSeed);
    const std::string first = capture(verify, s1);
    const std::string second = capture(verify, s2);
    const bool identical = s1 == 0 && s2 == 0 && !first.empty() && first == second;
    const std::string perm =
        capture("'" + cli + "' lmi --format sdpa --hull '" + golden + "/permutahedron_d2.json'", s3);
    const std::string spec =
        capture("'" + cli + "' lmi --format sdpa --poly '" + golden + "/polyhedron_d3.json'", s4);
    const bool perm_ok = s3 == 0 && perm == slurp(golden + "/permutahedron_lmi_d2.dat-s");
    const bool spec_ok = s4 == 0 && spec == slurp(golden + "/spectrahedron_d3_m1.dat-s");
    report(10, "determinism and formats", identical && perm_ok && spec_ok,
           std::string("verify --strict twice: ") + (identical ? "byte-identical" : "DIFFERENT or failed") +
               " (" + std::to_string(first.size()) + " bytes); permutahedron_lmi((1,0)) golden " +
               (perm_ok ? "matches" : "DIFFERS") + "; spectrahedron d=3 M=1 golden " + (spec_ok ? "matches" : "DIFFERS"));
  }
  std::cout << (failures == 0 ? "all 10 criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
  return failures == 0 ? 0 : 1;
}
