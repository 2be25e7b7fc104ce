#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rkhs/inclusion_engine.hpp"
#include "rkhs/kernel_catalog.hpp"

namespace rkhs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Origin { Grid, Tensor, FarOut, FarIn, Probe };

struct Sample {
  Point xi;
  double lu = 0.0;
  double lv = 0.0;
  double lr = 0.0;
  bool skip = false;
  bool violation = false;
  Origin origin = Origin::Grid;
  int ray = -1;
  int decade = 0;
  double r = 0.0;
};

class Analyzer {
 public:
  Analyzer(const SpectralDensity& u, const SpectralDensity& v) : u_(u), v_(v) {}

  Sample at(const Point& xi) const {
    Sample s;
    s.xi = xi;
    const LogDensity a = u_.log_density(xi);
    const LogDensity b = v_.log_density(xi);
    s.lu = a.value();
    s.lv = b.value();
    if (std::isnan(s.lu) || std::isnan(s.lv)) {
      throw NumericError("spectral density evaluated to NaN");
    }
    if (s.lv == -kInf) {
      s.skip = s.lu == -kInf;
      s.violation = !s.skip;
      s.lr = s.skip ? -kInf : kInf;
      return s;
    }
    if (s.lu == -kInf || b.lead == kInf) {
      s.lr = -kInf;
      s.skip = b.lead == kInf && a.lead == kInf;
      return s;
    }
    if (a.lead == kInf) {
      s.lr = kInf;
      return s;
    }
    s.lr = (a.lead - b.lead) + (a.rest - b.rest);
    return s;
  }

  double lr_along(const Point& dir, double r) const {
    const Sample s = at(dir * r);
    return s.skip ? -kInf : s.lr;
  }

 private:
  const SpectralDensity& u_;
  const SpectralDensity& v_;
};

std::vector<Point> ray_directions(int d, bool radial) {
  std::vector<Point> dirs;
  const int count = radial ? 1 : d;
  for (int k = 1; k <= count; ++k) {
    Point e = Point::Zero(d);
    e.head(k).setConstant(1.0 / std::sqrt(static_cast<double>(k)));
    dirs.push_back(e);
  }
  return dirs;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = std::pow(10.0, a + (b - a) * i / std::max(1, n - 1));
  }
  return out;
}

// Max log-ratio per extended decade of one ray, ordered outward from the grid.
std::vector<std::pair<double, const Sample*>> decade_maxima(const std::vector<Sample>& samples,
                                                            Origin side, int ray) {
  std::vector<std::pair<int, std::pair<double, const Sample*>>> by;
  for (const auto& s : samples) {
    if (s.origin != side || s.ray != ray || s.skip) continue;
    auto it = std::find_if(by.begin(), by.end(), [&](const auto& e) { return e.first == s.decade; });
    if (it == by.end()) {
      by.push_back({s.decade, {s.lr, &s}});
    } else if (s.lr > it->second.first) {
      it->second = {s.lr, &s};
    }
  }
  std::sort(by.begin(), by.end(), [side](const auto& x, const auto& y) {
    return side == Origin::FarOut ? x.first < y.first : x.first > y.first;
  });
  std::vector<std::pair<double, const Sample*>> out;
  for (const auto& e : by) out.push_back(e.second);
  return out;
}

// Threshold rule, plus a sustained-growth rule for logarithmic divergence.
bool diverges(const std::vector<std::pair<double, const Sample*>>& seq, double log_threshold) {
  const std::size_t n = seq.size();
  if (n < 2) return false;
  const double last = seq[n - 1].first;
  if (last == kInf) return true;
  if (last > log_threshold && last > seq[n - 2].first) return true;
  if (n < 22) return false;
  for (std::size_t i = n - 20; i < n; ++i) {
    if (!(seq[i].first > seq[i - 1].first)) return false;
  }
  const double r_last = std::exp(seq[n - 1].first);
  const double inc_last = r_last - std::exp(seq[n - 2].first);
  const double inc_early = std::exp(seq[n - 11].first) - std::exp(seq[n - 12].first);
  return inc_last >= 0.5 * inc_early && inc_last > 1e-3 * r_last;
}

double golden_max(const Analyzer& an, const Point& dir, double lo, double hi, double& best_r) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo;
  double b = hi;
  double c = b - phi * (b - a);
  double e = a + phi * (b - a);
  double fc = an.lr_along(dir, c);
  double fe = an.lr_along(dir, e);
  for (int i = 0; i < 80; ++i) {
    if (fc >= fe) {
      b = e;
      e = c;
      fe = fc;
      c = b - phi * (b - a);
      fc = an.lr_along(dir, c);
    } else {
      a = c;
      c = e;
      fc = fe;
      e = a + phi * (b - a);
      fe = an.lr_along(dir, e);
    }
  }
  best_r = fc >= fe ? c : e;
  return std::max(fc, fe);
}

std::vector<double> to_vec(const Point& p) { return {p.data(), p.data() + p.size()}; }

std::string point_text(const Point& p) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
  os << ")";
  return os.str();
}

}  // namespace

void GridConfig::validate() const {
  if (ray_points < 16 || !(r_min > 0.0) || !(r_max > r_min) || tensor_points < 0 ||
      extended_decades < 4 || cluster_size < 1 || !(blowup_threshold > 1.0) ||
      !(zero_rel > 0.0) || !(zero_mass_rel > 0.0) || !(margin >= 0.0)) {
    throw DomainError("invalid grid configuration");
  }
  quadrature.validate();
}

std::pair<InclusionVerdict, RatioProfile> decide_numeric(const KernelSpec& k, const KernelSpec& g,
                                                         const GridConfig& cfg) {
  cfg.validate();
  if (k.dim != g.dim) {
    throw DimensionMismatch("kernels differ in input dimension");
  }
  const int d = k.dim;
  const SpectralDensity u = spectral_density(k, cfg.quadrature);
  const SpectralDensity v = spectral_density(g, cfg.quadrature);
  const Analyzer an(u, v);
  const bool radial = d == 1 || (u.radial && v.radial);
  const auto dirs = ray_directions(d, radial);

  std::vector<Sample> samples;
  auto add = [&](const Point& xi, Origin o, int ray, int decade, double r) {
    Sample s = an.at(xi);
    s.origin = o;
    s.ray = ray;
    s.decade = decade;
    s.r = r;
    samples.push_back(std::move(s));
  };

  add(Point::Zero(d), Origin::Grid, -1, 0, 0.0);
  const auto radii = logspace(cfg.r_min, cfg.r_max, cfg.ray_points);
  const int top = static_cast<int>(std::ceil(std::log10(cfg.r_max)));
  const int bottom = static_cast<int>(std::floor(std::log10(cfg.r_min)));
  for (std::size_t i = 0; i < dirs.size(); ++i) {
    const int ray = static_cast<int>(i);
    for (double r : radii) add(dirs[i] * r, Origin::Grid, ray, 0, r);
    for (int dec = top + 1; dec <= cfg.extended_decades; ++dec) {
      for (int j = 0; j < cfg.cluster_size; ++j) {
        const double r = std::pow(10.0, dec) * (1.0 + 0.1 * j);
        add(dirs[i] * r, Origin::FarOut, ray, dec, r);
      }
    }
    for (int dec = bottom - 1; dec >= -cfg.extended_decades; --dec) {
      for (int j = 0; j < cfg.cluster_size; ++j) {
        const double r = std::pow(10.0, dec) * (1.0 + 0.1 * j);
        add(dirs[i] * r, Origin::FarIn, ray, dec, r);
      }
    }
  }

  if (!radial && cfg.tensor_points > 0) {
    const int per_axis = std::max(
        2, static_cast<int>(std::floor(std::pow(static_cast<double>(cfg.tensor_points), 1.0 / d) + 1e-9)));
    std::vector<double> axis{0.0};
    for (double x : logspace(1e-3, 1e2, per_axis - 1)) axis.push_back(x);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    for (;;) {
      Point xi(d);
      for (int j = 0; j < d; ++j) xi[j] = axis[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])];
      add(xi, Origin::Tensor, -1, 0, xi.norm());
      int j = 0;
      while (j < d && idx[static_cast<std::size_t>(j)] == per_axis - 1) {
        idx[static_cast<std::size_t>(j)] = 0;
        ++j;
      }
      if (j == d) break;
      ++idx[static_cast<std::size_t>(j)];
    }
  }

  // Exact zero-set probes of the target density, and rays approaching them.
  if (v.support == SupportKind::ZeroSet) {
    for (const auto& z : v.zero_probes) {
      add(z, Origin::Probe, -1, 0, z.norm());
      for (int e = 1; e <= 10; ++e) {
        Point step = Point::Zero(d);
        step[0] = std::pow(10.0, -e);
        add(z + step, Origin::Probe, -1, 0, (z + step).norm());
      }
    }
  }
  for (const SpectralDensity* s : {&u, &v}) {
    if (s->support != SupportKind::CompactSupport) continue;
    const double w = s->box_half_width;
    for (double f : {1.0, 1.0 + 1e-6, 1.5}) {
      Point corner = Point::Constant(d, w * f);
      Point edge = Point::Zero(d);
      edge[0] = w * f;
      add(corner, Origin::Probe, -1, 0, corner.norm());
      add(edge, Origin::Probe, -1, 0, edge.norm());
    }
  }

  RatioProfile profile;
  profile.grid.reserve(samples.size());
  for (const auto& s : samples) {
    if (!s.skip) profile.grid.push_back({to_vec(s.xi), std::exp(s.lr)});
  }

  InclusionVerdict verdict;
  verdict.method = Method::NumericRatio;
  auto not_included = [&](const Sample& s, BlowupKind kind, const std::string& why) {
    verdict.relation = Relation::NotIncluded;
    verdict.lambda = Lambda::unbounded();
    verdict.witness = Witness{to_vec(s.xi), kind, std::exp(s.lr), std::nullopt};
    verdict.reason = why + " at xi = " + point_text(s.xi);
    verdict.provenance = Provenance{"density-ratio", why, {}};
    profile.sup_estimate = kInf;
    profile.sup_location = to_vec(s.xi);
    profile.blowup_kind = kind;
    return std::pair{verdict, profile};
  };

  // 1. Absolute continuity: u > 0 where v vanishes.
  for (const auto& s : samples) {
    if (s.violation) return not_included(s, BlowupKind::OnZeroSet, "u > 0 = v");
  }
  if (v.support != SupportKind::EverywherePositive) {
    double lu_max = -kInf;
    double lv_max = -kInf;
    for (const auto& s : samples) {
      if (s.skip) continue;
      if (s.lu < kInf) lu_max = std::max(lu_max, s.lu);
      if (s.lv < kInf) lv_max = std::max(lv_max, s.lv);
    }
    for (const auto& s : samples) {
      if (s.skip || s.xi.cwiseAbs().maxCoeff() > cfg.r_max) continue;
      if (s.lv <= lv_max + std::log(cfg.zero_rel) && s.lu >= lu_max + std::log(cfg.zero_mass_rel)) {
        return not_included(s, BlowupKind::OnZeroSet, "v numerically zero where u is not");
      }
    }
  }

  // 2. Blowup toward the origin or infinity along any ray.
  const double log_thr = std::log(cfg.blowup_threshold);
  for (const auto& s : samples) {
    if (!s.skip && s.lr == kInf) return not_included(s, BlowupKind::AtOrigin, "u/v infinite");
  }
  for (Origin side : {Origin::FarIn, Origin::FarOut}) {
    const Sample* worst = nullptr;
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      const auto seq = decade_maxima(samples, side, static_cast<int>(i));
      if (diverges(seq, log_thr) && (!worst || seq.back().first > worst->lr)) {
        worst = seq.back().second;
      }
    }
    if (worst) {
      return side == Origin::FarIn ? not_included(*worst, BlowupKind::AtOrigin, "u/v unbounded toward the origin")
                                   : not_included(*worst, BlowupKind::AtInfinity, "u/v unbounded at infinity");
    }
  }

  // 3. Bounded: refine the supremum along the ray through the grid argmax.
  const Sample* best = nullptr;
  for (const auto& s : samples) {
    if (!s.skip && (!best || s.lr > best->lr)) best = &s;
  }
  double sup_lr = best ? best->lr : -kInf;
  Point sup_at = best ? best->xi : Point::Zero(d);
  if (best && best->lr > -kInf) {
    const double r = best->xi.norm();
    Point dir = r > 0.0 ? Point(best->xi / r) : dirs.front();
    double lo = 0.0;
    double hi = cfg.r_min;
    if (best->origin == Origin::Grid && best->ray >= 0) {
      auto it = std::lower_bound(radii.begin(), radii.end(), best->r);
      lo = it == radii.begin() ? 0.0 : *(it - 1);
      hi = (it + 1) < radii.end() ? *(it + 1) : best->r * 1.01;
    } else if (r > 0.0) {
      lo = 0.98 * r;
      hi = 1.02 * r;
    }
    double r_best = 0.0;
    const double refined = golden_max(an, dir, lo, hi, r_best);
    if (refined > sup_lr) {
      sup_lr = refined;
      sup_at = dir * r_best;
    }
  }
  const double sup = std::exp(sup_lr);
  profile.sup_estimate = sup;
  profile.sup_location = to_vec(sup_at);
  profile.blowup_kind = BlowupKind::None;
  verdict.relation = Relation::Included;
  verdict.lambda = Lambda::upper(sup * (1.0 + cfg.margin));
  verdict.reason = "ess sup u/v ~ " + std::to_string(sup) + " near xi = " + point_text(sup_at);
  verdict.provenance = Provenance{"density-ratio", verdict.reason, {}};
  return {verdict, profile};
}

}  // namespace rkhs
