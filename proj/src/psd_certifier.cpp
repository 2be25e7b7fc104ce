#include "rkhs/psd_certifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "rkhs/errors.hpp"
#include "rkhs/kernel_catalog.hpp"

namespace rkhs {

namespace {

constexpr double kMinSeparation = 1e-9;

void require_pair(const KernelSpec& k, const KernelSpec& g, double lambda) {
  if (k.dim != g.dim) throw DimensionMismatch("certify: kernels differ in input dimension");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive and finite");
}

// Collects the Hilbert-Schmidt leaves of a spec.
void hs_leaves(const KernelSpec& k, std::vector<const HsKernel*>& out) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, family::HilbertSchmidt>) {
          out.push_back(&n.kernel);
        } else if constexpr (std::is_same_v<T, family::Sum>) {
          for (const auto& t : n.terms) hs_leaves(*t, out);
        } else if constexpr (std::is_same_v<T, family::Scaled> || std::is_same_v<T, family::ExpComposed> ||
                             std::is_same_v<T, family::SeriesComposed>) {
          hs_leaves(*n.inner, out);
        } else if constexpr (std::is_same_v<T, family::Product> || std::is_same_v<T, family::Tensor>) {
          hs_leaves(*n.first, out);
          hs_leaves(*n.second, out);
        }
      },
      k.node);
}

struct Decomp {
  double min_eig;
  double scale;
  Eigen::VectorXd vec;
};

Decomp analyze(const Eigen::MatrixXd& lg, const Eigen::MatrixXd& km) {
  Eigen::MatrixXd m = lg - km;
  m = 0.5 * (m + m.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigensolver did not converge");
  return {es.eigenvalues()(0), lg.diagonal().maxCoeff(), es.eigenvectors().col(0)};
}

bool separated(const PointSet& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((pts[i] - pts[j]).norm() <= kMinSeparation) return false;
  return true;
}

PointSet draw(std::mt19937_64& rng, int n, int d, double lo, double hi, int& resamples) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    PointSet pts(n, Point(d));
    for (auto& p : pts)
      for (int j = 0; j < d; ++j) p(j) = u(rng);
    if (separated(pts)) return pts;
    ++resamples;
    if (resamples > 1000) throw NumericError("could not draw a separated point set");
  }
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial)};
  return std::mt19937_64(seq);
}

}  // namespace

void SamplerConfig::validate() const {
  if (n_points < 2) throw DomainError("n_points must be at least 2");
  if (n_trials < 1) throw DomainError("n_trials must be at least 1");
  if (!(box_radius > 0.0)) throw DomainError("box_radius must be positive");
  if (!(tolerance >= 0.0)) throw DomainError("tolerance must be nonnegative");
}

Eigen::MatrixXd gram(const KernelSpec& k, const PointSet& points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (points[i].size() != k.dim) throw DimensionMismatch("point dimension does not match the kernel");
    for (Eigen::Index j = 0; j <= i; ++j) {
      m(i, j) = eval(k, points[i], points[j]);
      m(j, i) = m(i, j);
    }
  }
  return m;
}

std::pair<double, double> sample_interval(const KernelSpec& k, const KernelSpec& g, const SamplerConfig& cfg) {
  std::vector<const HsKernel*> hs;
  hs_leaves(k, hs);
  hs_leaves(g, hs);
  if (hs.empty()) return {-cfg.box_radius, cfg.box_radius};
  const bool periodic = std::all_of(hs.begin(), hs.end(), [](const HsKernel* h) {
    return h->features.kind == FeatureKind::ComplexExponentials;
  });
  if (periodic) return {0.0, 2.0 * std::numbers::pi};
  // keeps |x.y| < 1 so every admissible power series converges
  const double b = std::min(cfg.box_radius, 0.9 / std::sqrt(static_cast<double>(k.dim)));
  return {-b, b};
}

PsdCertificate certify_points(const KernelSpec& k, const KernelSpec& g, double lambda, const PointSet& points,
                              double tolerance) {
  require_pair(k, g, lambda);
  if (!separated(points)) throw DomainError("points must be pairwise separated by more than 1e-9");
  const Eigen::MatrixXd lg = lambda * gram(g, points);
  const Decomp dc = analyze(lg, gram(k, points));
  PsdCertificate c;
  c.points = points;
  c.lambda_tested = lambda;
  c.min_eigenvalue = dc.min_eig;
  c.tolerance = tolerance;
  c.scale = dc.scale;
  c.pass = dc.min_eig >= -tolerance * dc.scale;
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(lg, Eigen::EigenvaluesOnly).eigenvalues();
  const double lo = std::abs(ev(0));
  c.condition_number = lo > 0.0 ? std::abs(ev(ev.size() - 1)) / lo : std::numeric_limits<double>::infinity();
  return c;
}

std::vector<PsdCertificate> certify(const KernelSpec& k, const KernelSpec& g, double lambda,
                                    const SamplerConfig& cfg) {
  cfg.validate();
  require_pair(k, g, lambda);
  const auto [lo, hi] = sample_interval(k, g, cfg);
  std::vector<PsdCertificate> out;
  out.reserve(cfg.n_trials);
  for (int t = 0; t < cfg.n_trials; ++t) {
    auto rng = trial_rng(cfg.rng_seed, t);
    int resamples = 0;
    PointSet pts = draw(rng, cfg.n_points, k.dim, lo, hi, resamples);
    PsdCertificate c = certify_points(k, g, lambda, pts, cfg.tolerance);
    c.resamples = resamples;
    out.push_back(std::move(c));
  }
  return out;
}

double pass_fraction(const std::vector<PsdCertificate>& certs) {
  if (certs.empty()) return 0.0;
  const auto n = std::count_if(certs.begin(), certs.end(), [](const PsdCertificate& c) { return c.pass; });
  return static_cast<double>(n) / static_cast<double>(certs.size());
}

std::optional<ViolationWitness> falsify(const KernelSpec& k, const KernelSpec& g, double lambda_max,
                                        const SamplerConfig& cfg) {
  cfg.validate();
  require_pair(k, g, lambda_max);
  const auto [lo, hi] = sample_interval(k, g, cfg);

  // Objective: min eigenvalue relative to the diagonal scale.
  auto score = [&](const PointSet& pts, Decomp* out) {
    const Decomp dc = analyze(lambda_max * gram(g, pts), gram(k, pts));
    if (out) *out = dc;
    return dc.scale > 0.0 ? dc.min_eig / dc.scale : dc.min_eig;
  };

  PointSet best;
  double best_score = std::numeric_limits<double>::infinity();
  for (int t = 0; t < cfg.n_trials; ++t) {
    auto rng = trial_rng(cfg.rng_seed, t);
    int resamples = 0;
    PointSet pts = draw(rng, cfg.n_points, k.dim, lo, hi, resamples);
    const double s = score(pts, nullptr);
    if (s < best_score) {
      best_score = s;
      best = std::move(pts);
    }
  }

  // Coordinate-wise hill climb on the worst trial.
  auto rng = trial_rng(cfg.rng_seed, cfg.n_trials);
  std::uniform_int_distribution<int> pick_point(0, cfg.n_points - 1);
  std::uniform_int_distribution<int> pick_coord(0, k.dim - 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  double step = 0.1 * (hi - lo);
  for (int it = 0; it < 500; ++it, step *= 0.9) {
    PointSet trial = best;
    const int i = pick_point(rng);
    const int j = pick_coord(rng);
    trial[i](j) = std::clamp(trial[i](j) + step * normal(rng), lo, hi);
    if (!separated(trial)) continue;
    const double s = score(trial, nullptr);
    if (s < best_score) {
      best_score = s;
      best = std::move(trial);
    }
  }

  Decomp dc{};
  score(best, &dc);
  if (!(dc.min_eig < -cfg.tolerance * dc.scale)) return std::nullopt;
  return ViolationWitness{best, dc.vec, dc.min_eig, dc.scale};
}

}  // namespace rkhs
