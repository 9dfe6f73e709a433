#include "specconvex/specgeo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>
#include <thread>

#include "specconvex/errors.hpp"
#include "specconvex/random.hpp"

namespace specconvex {

namespace {

void require_dim(int expected, Eigen::Index got, const char* what) {
  if (got != expected)
    throw InputError(std::string(what) + " has dimension " + std::to_string(got) + ", expected " +
                     std::to_string(expected));
}

/// argmin over y in Pi(L) of <g, y>: pair the largest entries of each v
/// with the smallest entries of g, keep the best generator.
Eigen::VectorXd linear_minimizer(const OrbitHull& k, const Eigen::VectorXd& g) {
  const int d = k.dim();
  std::vector<int> ascending(static_cast<std::size_t>(d));
  std::iota(ascending.begin(), ascending.end(), 0);
  std::stable_sort(ascending.begin(), ascending.end(), [&](int x, int y) { return g(x) < g(y); });

  double best = std::numeric_limits<double>::infinity();
  const DescendingVector* chosen = nullptr;
  for (const DescendingVector& v : k.points()) {
    double value = 0.0;
    for (int i = 0; i < d; ++i) value += v[i] * g(ascending[i]);
    if (value < best) {
      best = value;
      chosen = &v;
    }
  }
  Eigen::VectorXd out(d);
  for (int i = 0; i < d; ++i) out(ascending[i]) = (*chosen)[i];
  return out;
}

/// Weights alpha with sum 1 minimizing |sum alpha_i s_i|.
Eigen::VectorXd affine_minimizer(const std::vector<Eigen::VectorXd>& s) {
  const auto n = static_cast<Eigen::Index>(s.size());
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) kkt(i, j) = s[i].dot(s[j]);
    kkt(i, n) = kkt(n, i) = 1.0;
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 1);
  rhs(n) = 1.0;
  return kkt.fullPivLu().solve(rhs).head(n);
}

struct WolfeResult {
  double upper = 0.0;  ///< |z|, an achieved distance
  double lower = 0.0;  ///< certified lower bound on the distance
  Eigen::VectorXd z;   ///< nearest point minus x
  int iterations = 0;
};

/// Minimum-norm point of Pi(L) - x. With threshold >= 0 it stops as soon as
/// the distance is certified to be <= threshold or > threshold.
WolfeResult wolfe(const OrbitHull& k, const Eigen::VectorXd& x, double threshold) {
  constexpr int kMaxIterations = 1000;
  constexpr double kWeightEps = 1e-14;
  double scale = 1.0 + x.cwiseAbs().maxCoeff();
  for (const DescendingVector& v : k.points())
    for (double e : v.values()) scale = std::max(scale, 1.0 + std::abs(e));
  const double gap_eps = 1e-14 * scale * scale;

  std::vector<Eigen::VectorXd> support{linear_minimizer(k, -x) - x};
  std::vector<double> weights{1.0};
  Eigen::VectorXd z = support.front();

  WolfeResult out;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    out.iterations = iter + 1;
    const double zz = z.squaredNorm();
    if (zz <= 1e-28 * scale * scale) {
      out.upper = std::sqrt(zz);
      out.lower = 0.0;
      break;
    }
    const Eigen::VectorXd q = linear_minimizer(k, z) - x;
    const double zq = z.dot(q);
    out.upper = std::sqrt(zz);
    out.lower = std::max(out.lower, zq / out.upper);
    if (threshold >= 0.0 && (out.upper <= threshold || out.lower > threshold)) break;
    if (zz - zq <= gap_eps) break;
    if (std::any_of(support.begin(), support.end(),
                    [&](const Eigen::VectorXd& s) { return (s - q).norm() <= 1e-14 * scale; }))
      break;

    support.push_back(q);
    weights.push_back(0.0);
    while (true) {
      const Eigen::VectorXd alpha = affine_minimizer(support);
      if ((alpha.array() > kWeightEps).all()) {
        weights.assign(alpha.data(), alpha.data() + alpha.size());
        break;
      }
      double theta = 1.0;
      std::size_t leaving = 0;
      for (std::size_t i = 0; i < support.size(); ++i)
        if (alpha(static_cast<Eigen::Index>(i)) <= kWeightEps) {
          const double denom = weights[i] - alpha(static_cast<Eigen::Index>(i));
          const double ratio = denom > 0.0 ? weights[i] / denom : 0.0;
          if (ratio < theta) {
            theta = ratio;
            leaving = i;
          }
        }
      for (std::size_t i = 0; i < support.size(); ++i)
        weights[i] = theta * alpha(static_cast<Eigen::Index>(i)) + (1.0 - theta) * weights[i];
      weights[leaving] = 0.0;
      std::vector<Eigen::VectorXd> kept;
      std::vector<double> kept_weights;
      for (std::size_t i = 0; i < support.size(); ++i)
        if (weights[i] > kWeightEps) {
          kept.push_back(support[i]);
          kept_weights.push_back(weights[i]);
        }
      support = std::move(kept);
      weights = std::move(kept_weights);
      const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
      for (double& w : weights) w /= total;
      if (support.size() == 1) break;
    }
    z = Eigen::VectorXd::Zero(x.size());
    for (std::size_t i = 0; i < support.size(); ++i) z += weights[i] * support[i];
  }
  out.z = z;
  out.upper = z.norm();
  out.lower = std::min(out.lower, out.upper);
  return out;
}

/// dist(x, Pi(L)) <= rho + tol, with exact shortcuts for the ball and for
/// points majorized by a single generator.
bool within_distance(const OrbitHull& k, const Eigen::VectorXd& x, double rho, double tol) {
  if (k.points().empty()) return x.norm() <= rho + tol;
  for (const DescendingVector& v : k.points())
    if (majorizes(v.eigen(), x, tol)) return true;
  const WolfeResult r = wolfe(k, x, rho + tol);
  return r.upper <= rho + tol;
}

/// Neumaier-compensated running sum.
struct CompensatedSum {
  double sum = 0.0;
  double compensation = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      compensation += (sum - t) + v;
    else
      compensation += (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + compensation; }
};

struct ChunkResult {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  std::uint64_t accepted = 0;
  std::uint64_t n = 0;
};

/// Runs chunk_fn(c) for c in [0, chunks) on a worker pool. Results are
/// written per chunk, so the reduction order does not depend on scheduling.
template <typename ChunkFn>
std::vector<ChunkResult> run_chunks(std::size_t chunks, ChunkFn&& chunk_fn) {
  std::vector<ChunkResult> results(chunks);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) results[c] = chunk_fn(c);
  };
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers && w < chunks; ++w) pool.emplace_back(work);
    work();
  }
  return results;
}

struct MonteCarloMean {
  double mean = 0.0;
  double standard_error = 0.0;
  double acceptance = 0.0;
};

MonteCarloMean reduce(const std::vector<ChunkResult>& chunks) {
  CompensatedSum sum;
  CompensatedSum sum_sq;
  std::uint64_t accepted = 0;
  std::uint64_t n = 0;
  for (const ChunkResult& c : chunks) {
    sum.add(c.sum.value());
    sum_sq.add(c.sum_sq.value());
    accepted += c.accepted;
    n += c.n;
  }
  MonteCarloMean out;
  const double nn = static_cast<double>(n);
  out.mean = sum.value() / nn;
  const double variance = std::max(0.0, sum_sq.value() / nn - out.mean * out.mean) * nn / (nn - 1.0);
  out.standard_error = std::sqrt(variance / nn);
  out.acceptance = static_cast<double>(accepted) / nn;
  return out;
}

constexpr std::uint64_t kChunkSize = 1 << 16;

}  // namespace

OrbitHull::OrbitHull(int d, std::vector<DescendingVector> points, double radius)
    : d_(d), points_(std::move(points)), radius_(radius) {
  if (d < 1) throw InputError("hull dimension must be positive");
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw InputError("hull radius must be finite and non-negative");
  if (points_.empty() && radius == 0.0) throw InputError("hull needs at least one point or a positive radius");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].dim() != d)
      throw InputError("hull point " + std::to_string(i) + " has dimension " + std::to_string(points_[i].dim()) +
                       ", expected " + std::to_string(d));
    for (double v : points_[i].values())
      if (!std::isfinite(v)) throw InputError("hull point " + std::to_string(i) + " is not finite");
  }
}

OrbitHull OrbitHull::ball(int d, double radius) { return OrbitHull(d, {}, radius); }

OrbitHull OrbitHull::permutahedron(DescendingVector p) {
  const int d = p.dim();
  return OrbitHull(d, {std::move(p)}, 0.0);
}

SpectralZonotope::SpectralZonotope(int d, std::vector<Eigen::VectorXd> generators)
    : d_(d), generators_(std::move(generators)) {
  if (d < 1) throw InputError("zonotope dimension must be positive");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].size() != d)
      throw InputError("generator " + std::to_string(i) + " has dimension " + std::to_string(generators_[i].size()) +
                       ", expected " + std::to_string(d));
    if (generators_[i].isZero(0.0)) throw InputError("generator " + std::to_string(i) + " is zero");
  }
}

double support_hull(const OrbitHull& k, const Eigen::VectorXd& c) {
  require_dim(k.dim(), c.size(), "direction");
  double best = k.points().empty() ? 0.0 : -std::numeric_limits<double>::infinity();
  for (const DescendingVector& v : k.points()) best = std::max(best, orbit_max(v.eigen(), c));
  return best + k.radius() * c.norm();
}

double support_spectral(const OrbitHull& k, const SymMatrix& b) {
  require_dim(k.dim(), b.dim(), "matrix");
  return support_hull(k, eigenvalues(b));
}

HullDistance hull_distance(const OrbitHull& k, const Eigen::VectorXd& x) {
  require_dim(k.dim(), x.size(), "point");
  if (k.points().empty()) throw InputError("hull_distance needs at least one point");
  const WolfeResult r = wolfe(k, x, -1.0);
  return {r.upper, x + r.z, r.iterations};
}

bool hull_contains(const OrbitHull& k, const Eigen::VectorXd& x, double tol) {
  require_dim(k.dim(), x.size(), "point");
  return within_distance(k, x, k.radius(), tol);
}

bool spectral_hull_contains(const OrbitHull& k, const SymMatrix& a, double tol) {
  require_dim(k.dim(), a.dim(), "matrix");
  return hull_contains(k, eigenvalues(a), tol);
}

PairingCheck polar_pairing_check(const OrbitHull& k, const SymMatrix& a, const SymMatrix& b, double tol) {
  require_dim(k.dim(), a.dim(), "matrix A");
  require_dim(k.dim(), b.dim(), "matrix B");
  PairingCheck out;
  out.pairing = frobenius_inner(a, b);
  out.support = support_spectral(k, b);
  out.a_in_body = spectral_hull_contains(k, a, tol);
  out.b_in_polar = out.support <= 1.0 + tol;
  out.holds = !out.a_in_body ||
              (out.pairing <= out.support + tol && (!out.b_in_polar || out.pairing <= 1.0 + tol));
  return out;
}

OrbitHull minkowski_sum(const OrbitHull& k, const OrbitHull& l) {
  if (k.dim() != l.dim()) throw InputError("Minkowski sum needs equal dimensions");
  std::vector<DescendingVector> points;
  if (k.points().empty()) {
    points = l.points();
  } else if (l.points().empty()) {
    points = k.points();
  } else {
    for (const DescendingVector& v : k.points())
      for (const DescendingVector& w : l.points()) {
        std::vector<double> sum(static_cast<std::size_t>(k.dim()));
        for (int i = 0; i < k.dim(); ++i) sum[i] = v[i] + w[i];
        points.push_back(DescendingVector::checked(std::move(sum)));
      }
  }
  return OrbitHull(k.dim(), std::move(points), k.radius() + l.radius());
}

double minkowski_support(const OrbitHull& k, const OrbitHull& l, const SymMatrix& b) {
  if (k.dim() != l.dim()) throw InputError("Minkowski sum needs equal dimensions");
  return support_spectral(k, b) + support_spectral(l, b);
}

double zonotope_support(const SpectralZonotope& z, const Eigen::VectorXd& c) {
  require_dim(z.dim(), c.size(), "direction");
  const int d = z.dim();
  if (d > kZonotopeMaxDim)
    throw CapExceeded("zonotope support enumerates d! permutations; d=" + std::to_string(d) + " exceeds " +
                          std::to_string(kZonotopeMaxDim),
                      static_cast<std::uint64_t>(d), kZonotopeMaxDim);
  double total = 0.0;
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (const Eigen::VectorXd& g : z.generators()) {
    std::iota(perm.begin(), perm.end(), 0);
    do {
      double dot = 0.0;
      for (int i = 0; i < d; ++i) dot += g(perm[i]) * c(i);
      total += std::abs(dot);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return total;
}

double zonotope_support(const SpectralZonotope& z, const SymMatrix& b) {
  require_dim(z.dim(), b.dim(), "matrix");
  return zonotope_support(z, eigenvalues(b));
}

Eigen::MatrixXd commutator_map(const SymMatrix& b) {
  const int d = b.dim();
  const Eigen::MatrixXd bm = b.dense();
  const double r2 = std::numbers::sqrt2;

  std::vector<Eigen::MatrixXd> codomain;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
      e(i, j) = e(j, i) = 1.0 / r2;
      codomain.push_back(std::move(e));
    }
  for (int k = 1; k < d; ++k) {
    Eigen::MatrixXd e = Eigen::MatrixXd::Zero(d, d);
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) e(i, i) = 1.0 / norm;
    e(k, k) = -static_cast<double>(k) / norm;
    codomain.push_back(std::move(e));
  }

  const int cols = d * (d - 1) / 2;
  Eigen::MatrixXd out(static_cast<Eigen::Index>(codomain.size()), cols);
  int col = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j, ++col) {
      Eigen::MatrixXd x = Eigen::MatrixXd::Zero(d, d);
      x(i, j) = 1.0 / r2;
      x(j, i) = -1.0 / r2;
      const Eigen::MatrixXd image = bm * x - x * bm;
      for (std::size_t r = 0; r < codomain.size(); ++r)
        out(static_cast<Eigen::Index>(r), col) = (codomain[r].array() * image.array()).sum();
    }
  return out;
}

double nuclear_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues().sum();
}

double vandermonde_abs(const Eigen::VectorXd& p) {
  double prod = 1.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    for (Eigen::Index j = i + 1; j < p.size(); ++j) prod *= std::abs(p(j) - p(i));
  return prod;
}

double unit_ball_volume(int n) {
  return std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

double steiner_constant(int d) {
  if (d < 1) throw InputError("steiner_constant needs d >= 1");
  const int n = d * (d + 1) / 2;
  // Gaussian integral of prod|p_j - p_i|, then polar coordinates: the
  // integrand is homogeneous of degree n - d.
  double log_gaussian = 0.5 * d * std::log(2.0 * std::numbers::pi);
  for (int j = 1; j <= d; ++j) log_gaussian += std::lgamma(1.0 + j / 2.0) - std::lgamma(1.5);
  const double log_ball = log_gaussian - (n / 2.0) * std::log(2.0) - std::lgamma(n / 2.0 + 1.0);
  return unit_ball_volume(n) / std::exp(log_ball);
}

double hurwitz_prefactor(int d) {
  double value = std::pow(2.0, 0.5 * d * (d + 3));
  for (int r = 1; r <= d; ++r) value *= std::pow(std::numbers::pi, r / 2.0) / std::tgamma(r / 2.0);
  return value;
}

std::vector<SteinerEstimate> steiner_mc(const OrbitHull& k, std::span<const double> t_values,
                                        std::uint64_t n_samples, std::uint64_t seed) {
  const int d = k.dim();
  if (d > kSteinerMaxDim)
    throw InputError("steiner_mc supports d <= " + std::to_string(kSteinerMaxDim) + ", got " + std::to_string(d));
  if (n_samples < kSteinerMinSamples)
    throw InputError("steiner_mc needs at least " + std::to_string(kSteinerMinSamples) + " samples");
  const double c_d = steiner_constant(d);

  double reach = 0.0;
  double max_norm = 0.0;
  for (const DescendingVector& v : k.points()) {
    reach = std::max(reach, v.eigen().cwiseAbs().maxCoeff());
    max_norm = std::max(max_norm, v.eigen().norm());
  }

  const std::uint64_t chunks_per_t = (n_samples + kChunkSize - 1) / kChunkSize;
  std::vector<SteinerEstimate> out;
  for (std::size_t ti = 0; ti < t_values.size(); ++ti) {
    const double t = t_values[ti];
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("Steiner parameters t must be finite and non-negative");
    const double rho = k.radius() + t;
    const double half = reach + rho;
    const auto results = run_chunks(chunks_per_t, [&](std::size_t c) {
      ChunkResult r;
      CounterRng rng(seed + ti * chunks_per_t + c);
      const std::uint64_t begin = c * kChunkSize;
      const std::uint64_t end = std::min(n_samples, begin + kChunkSize);
      Eigen::VectorXd x(d);
      for (std::uint64_t s = begin; s < end; ++s) {
        for (int i = 0; i < d; ++i) x(i) = rng.uniform(-half, half);
        ++r.n;
        if (x.norm() > max_norm + rho) continue;
        if (!within_distance(k, x, rho, 0.0)) continue;
        const double f = vandermonde_abs(x);
        ++r.accepted;
        r.sum.add(f);
        r.sum_sq.add(f * f);
      }
      return r;
    });
    const MonteCarloMean m = reduce(results);
    if (m.acceptance == 0.0)
      throw InputError("no sample landed in K + tB at t = " + std::to_string(t) + "; the body has no volume");
    const double box = std::pow(2.0 * half, d);
    SteinerEstimate e;
    e.t = t;
    e.integral = box * m.mean;
    e.integral_se = box * m.standard_error;
    e.volume = c_d * e.integral;
    e.standard_error = c_d * e.integral_se;
    e.acceptance = m.acceptance;
    out.push_back(e);
  }
  return out;
}

Calibration calibrate_cd(int d, std::uint64_t n_samples, std::uint64_t seed) {
  if (d < 2 || d > kSteinerMaxDim)
    throw InputError("calibrate_cd supports 2 <= d <= " + std::to_string(kSteinerMaxDim));
  if (n_samples < 2) throw InputError("calibrate_cd needs at least 2 samples");
  const std::uint64_t chunks = (n_samples + kChunkSize - 1) / kChunkSize;
  const auto results = run_chunks(chunks, [&](std::size_t c) {
    ChunkResult r;
    CounterRng rng(seed + c);
    const std::uint64_t begin = c * kChunkSize;
    const std::uint64_t end = std::min(n_samples, begin + kChunkSize);
    Eigen::VectorXd x(d);
    for (std::uint64_t s = begin; s < end; ++s) {
      for (int i = 0; i < d; ++i) x(i) = rng.uniform(-1.0, 1.0);
      ++r.n;
      if (x.squaredNorm() > 1.0) continue;
      const double f = vandermonde_abs(x);
      ++r.accepted;
      r.sum.add(f);
      r.sum_sq.add(f * f);
    }
    return r;
  });
  const MonteCarloMean m = reduce(results);
  const double box = std::pow(2.0, d);
  const double integral = box * m.mean;
  const double integral_se = box * m.standard_error;
  Calibration out;
  out.d = d;
  out.value = unit_ball_volume(d * (d + 1) / 2) / integral;
  out.standard_error = out.value * integral_se / integral;
  out.exact = steiner_constant(d);
  out.hurwitz = hurwitz_prefactor(d);
  return out;
}

QuermassFit quermass_fit(std::span<const SteinerSample> samples, int n) {
  if (n < 0) throw InputError("quermass_fit needs a non-negative degree");
  std::vector<double> ts;
  for (const SteinerSample& s : samples) ts.push_back(s.t);
  std::sort(ts.begin(), ts.end());
  const auto distinct = std::unique(ts.begin(), ts.end()) - ts.begin();
  if (distinct < n + 1)
    throw InputError("rank deficient: degree " + std::to_string(n) + " needs " + std::to_string(n + 1) +
                     " distinct t values, got " + std::to_string(distinct));

  const bool weighted =
      std::all_of(samples.begin(), samples.end(), [](const SteinerSample& s) { return s.standard_error > 0.0; });
  const auto rows = static_cast<Eigen::Index>(samples.size());
  Eigen::MatrixXd design(rows, n + 1);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const SteinerSample& s = samples[static_cast<std::size_t>(r)];
    const double w = weighted ? 1.0 / s.standard_error : 1.0;
    double power = 1.0;
    for (int i = 0; i <= n; ++i, power *= s.t) design(r, i) = w * power;
    y(r) = w * s.volume;
  }
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  if (qr.rank() < n + 1) throw InputError("rank deficient design in quermass_fit");
  const Eigen::VectorXd coeffs = qr.solve(y);

  QuermassFit out;
  out.residual_norm = (design * coeffs - y).norm();
  out.polynomial.assign(coeffs.data(), coeffs.data() + coeffs.size());
  out.polynomial_se.assign(static_cast<std::size_t>(n + 1), 0.0);
  if (weighted) {
    const Eigen::MatrixXd covariance = (design.transpose() * design).inverse();
    for (int i = 0; i <= n; ++i) out.polynomial_se[i] = std::sqrt(std::max(0.0, covariance(i, i)));
  }
  out.W.assign(static_cast<std::size_t>(n + 1), 0.0);
  out.W_se.assign(static_cast<std::size_t>(n + 1), 0.0);
  for (int i = 0; i <= n; ++i) {
    const double binom = static_cast<double>(binomial(n, i));
    out.W[n - i] = out.polynomial[i] / binom;
    out.W_se[n - i] = out.polynomial_se[i] / binom;
  }
  return out;
}

HyperbolicityReport hyperbolicity_sample_check(const SymmetricPolyhedron& cone, int trials, std::uint64_t seed) {
  const int d = cone.dim();
  if (d > kHyperbolicMaxDim)
    throw InputError("hyperbolicity check supports d <= " + std::to_string(kHyperbolicMaxDim));
  if (trials < 1) throw InputError("hyperbolicity check needs at least one trial");
  for (const OrbitHalfspace& h : cone.orbits())
    if (h.b() != 0.0) throw InputError("a cone needs every right-hand side equal to zero");

  // {x : <sigma a, x> >= 0} is the polyhedron with generators -a and b = 0.
  std::vector<OrbitHalfspace> flipped;
  for (const OrbitHalfspace& h : cone.orbits()) {
    std::vector<double> neg(h.a().values().begin(), h.a().values().end());
    for (double& v : neg) v = -v;
    flipped.emplace_back(std::move(neg), 0.0);
  }
  const SymmetricPolyhedron oracle(d, std::move(flipped));

  HyperbolicityReport report;
  report.trials = trials;
  std::uint64_t factorial = 1;
  for (int i = 2; i <= d; ++i) factorial *= static_cast<std::uint64_t>(i);
  report.degree = factorial * cone.orbit_count();

  std::vector<double> slopes;
  for (const OrbitHalfspace& h : cone.orbits()) {
    double slope = 0.0;
    for (double v : h.a().values()) slope += v;
    slopes.push_back(slope);
    report.identity_interior = report.identity_interior && slope > 0.0;
  }

  CounterRng rng(seed);
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (int trial = 0; trial < trials; ++trial) {
    SymMatrix x(d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) x.set(i, j, rng.normal());
    const double shift = rng.uniform(-1.0, 3.0) * std::sqrt(static_cast<double>(d));
    x += shift * SymMatrix::identity(d);
    const double t0 = rng.uniform(-1.0, 1.0);

    const Eigen::VectorXd lambda = eigenvalues(x);
    const Eigen::VectorXd shifted = eigenvalues(x - t0 * SymMatrix::identity(d));
    const double tol = default_tolerance({lambda.data(), static_cast<std::size_t>(d)});

    bool factors_nonnegative = true;
    bool roots_nonnegative = true;
    for (std::size_t o = 0; o < cone.orbit_count(); ++o) {
      const DescendingVector& a = cone.orbits()[o].a();
      const bool constant_in_t = std::abs(slopes[o]) <= 1e-12 * a.eigen().cwiseAbs().maxCoeff();
      std::iota(perm.begin(), perm.end(), 0);
      do {
        double value = 0.0;
        double value_shifted = 0.0;
        for (int i = 0; i < d; ++i) {
          value += a[perm[i]] * lambda(i);
          value_shifted += a[perm[i]] * shifted(i);
        }
        if (value < -tol) factors_nonnegative = false;
        const double linear = value - t0 * slopes[o];
        // The shifted spectrum pairs with the same sigma: lambda(X - t0 I) = lambda(X) - t0.
        report.max_identity_error = std::max(report.max_identity_error, std::abs(value_shifted - linear));
        if (constant_in_t) {
          ++report.skipped_factors;
          continue;
        }
        const double root = value / slopes[o];
        if (root < -tol / std::abs(slopes[o])) roots_nonnegative = false;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    const bool inside = spectral_contains(oracle, x, tol).inside;
    report.inside += inside ? 1 : 0;
    report.factor_agreements += factors_nonnegative == inside ? 1 : 0;
    report.root_agreements += roots_nonnegative == inside ? 1 : 0;
  }
  return report;
}

}  // namespace specconvex
