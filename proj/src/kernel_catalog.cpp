#include "rkhs/kernel_catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rkhs/errors.hpp"
#include "rkhs/special_functions.hpp"

namespace rkhs {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_dims(const KernelSpec& k, const Point& x, const Point& y) {
  if (x.size() != k.dim || y.size() != k.dim) {
    throw DimensionMismatch("kernel of dimension " + std::to_string(k.dim) +
                            " evaluated at points of dimension " + std::to_string(x.size()) +
                            " and " + std::to_string(y.size()));
  }
}

double sinc_pi(double t) {
  if (std::abs(t) < 1e-8) return 1.0 - (kPi * t) * (kPi * t) / 6.0;
  return std::sin(kPi * t) / (kPi * t);
}

double log_sum_exp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

std::vector<Point> bspline_zero_probes(int d) {
  std::vector<Point> out;
  for (double k : {1.0, 2.0}) {
    Point axis = Point::Zero(d);
    axis[0] = 2.0 * kPi * k;
    out.push_back(axis);
    Point diag = Point::Constant(d, 2.0 * kPi * k);
    out.push_back(diag);
  }
  if (d > 1) {
    Point mixed = Point::Constant(d, 1.0);
    mixed[0] = 2.0 * kPi;
    out.push_back(mixed);
  }
  return out;
}

}  // namespace

double cardinal_bspline(int p, double t) {
  const double half = 0.5 * p;
  if (std::abs(t) >= half) return 0.0;
  // Symmetric, so evaluate on the left half where fewer terms are active.
  t = -std::abs(t);
  double s = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= p; ++k) {
    const double u = t + half - k;
    if (u > 0.0) {
      s += ((k % 2) ? -binom : binom) * std::pow(u, p - 1);
    }
    binom = binom * (p - k) / (k + 1);
  }
  return s / std::tgamma(static_cast<double>(p));
}

double eval(const KernelSpec& k, const Point& x, const Point& y) {
  check_dims(k, x, y);
  using namespace family;
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return std::exp(-(x - y).squaredNorm() / f.gamma);
        } else if constexpr (std::is_same_v<T, ExpL1>) {
          return std::exp(-(x - y).template lpNorm<1>() / f.sigma);
        } else if constexpr (std::is_same_v<T, ExpL2>) {
          return std::exp(-(x - y).norm() / f.sigma);
        } else if constexpr (std::is_same_v<T, InverseMultiquadric>) {
          return std::pow(1.0 + (x - y).squaredNorm(), -f.beta);
        } else if constexpr (std::is_same_v<T, BSpline>) {
          double v = 1.0;
          for (Eigen::Index j = 0; j < x.size(); ++j) v *= cardinal_bspline(f.p, x[j] - y[j]);
          return v;
        } else if constexpr (std::is_same_v<T, Anova>) {
          double v = 0.0;
          for (Eigen::Index j = 0; j < x.size(); ++j) {
            const double t = x[j] - y[j];
            v += std::exp(-t * t / f.tau);
          }
          return v;
        } else if constexpr (std::is_same_v<T, Sinc>) {
          double v = 1.0;
          for (Eigen::Index j = 0; j < x.size(); ++j) v *= sinc_pi(x[j] - y[j]);
          return v;
        } else if constexpr (std::is_same_v<T, HilbertSchmidt>) {
          return hs_eval(f.kernel.coeffs, f.kernel.features, x, y, f.kernel.truncation).value;
        } else if constexpr (std::is_same_v<T, Sum>) {
          double v = 0.0;
          for (const auto& t : f.terms) v += eval(*t, x, y);
          return v;
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return f.c * eval(*f.inner, x, y);
        } else if constexpr (std::is_same_v<T, Product>) {
          return eval(*f.first, x, y) * eval(*f.second, x, y);
        } else if constexpr (std::is_same_v<T, Tensor>) {
          const int d1 = f.first->dim;
          const int d2 = f.second->dim;
          return eval(*f.first, x.head(d1), y.head(d1)) * eval(*f.second, x.tail(d2), y.tail(d2));
        } else if constexpr (std::is_same_v<T, ExpComposed>) {
          return std::exp(eval(*f.inner, x, y));
        } else {
          const double z = eval(*f.inner, x, y);
          double v = 0.0;
          double zn = 1.0;
          for (double c : f.coeffs) {
            v += c * zn;
            zn *= z;
          }
          return v;
        }
      },
      k.node);
}

double SpectralDensity::eval(const Point& xi) const {
  return std::exp(log_density(xi).value());
}

SpectralDensity spectral_density(const KernelSpec& k, const QuadratureConfig& cfg) {
  const int d = k.dim;
  const double dd = d;
  SpectralDensity s;
  s.dim = d;
  using namespace family;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          const double g = f.gamma;
          const double c = dd * std::log(std::sqrt(g) / (2.0 * std::sqrt(kPi)));
          s.radial = true;
          s.asymptotic = {DecayClass::GaussianDecay, 0.0};
          s.log_density = [g, c](const Point& xi) {
            return LogDensity{-g * xi.squaredNorm() / 4.0, c};
          };
        } else if constexpr (std::is_same_v<T, ExpL1>) {
          const double sg = f.sigma;
          const double c = dd * std::log(sg / kPi);
          s.radial = d == 1;
          s.asymptotic = {DecayClass::PolyDecay, 2.0};
          s.log_density = [sg, c](const Point& xi) {
            double r = c;
            for (Eigen::Index j = 0; j < xi.size(); ++j) r -= std::log1p(sg * sg * xi[j] * xi[j]);
            return LogDensity{0.0, r};
          };
        } else if constexpr (std::is_same_v<T, ExpL2>) {
          const double sg = f.sigma;
          const double h = 0.5 * (dd + 1.0);
          const double c = std::lgamma(h) - h * std::log(kPi) + dd * std::log(sg);
          s.radial = true;
          s.asymptotic = {DecayClass::PolyDecay, dd + 1.0};
          s.log_density = [sg, h, c](const Point& xi) {
            return LogDensity{0.0, c - h * std::log1p(sg * sg * xi.squaredNorm())};
          };
        } else if constexpr (std::is_same_v<T, InverseMultiquadric>) {
          const double beta = f.beta;
          const double c = -dd * std::log(2.0 * std::sqrt(kPi)) - std::lgamma(beta);
          s.radial = true;
          s.asymptotic = {DecayClass::GaussianDecay, 0.0};
          s.log_density = [beta, d, c, cfg](const Point& xi) {
            const double r = xi.norm();
            if (r == 0.0 && !(beta > 0.5 * d)) return LogDensity{kInf, 0.0};
            return LogDensity{-r, c + special::log_laplace_type_integral_scaled(beta, d, r, cfg)};
          };
        } else if constexpr (std::is_same_v<T, BSpline>) {
          const int p = f.p;
          const double c = -dd * std::log(2.0 * kPi);
          s.radial = d == 1;
          s.support = SupportKind::ZeroSet;
          s.zero_set = "xi_j in 2*pi*Z \\ {0} for some j";
          s.zero_probes = bspline_zero_probes(d);
          s.asymptotic = {DecayClass::PolyDecay, static_cast<double>(p)};
          s.log_density = [p, c](const Point& xi) {
            double r = c;
            for (Eigen::Index j = 0; j < xi.size(); ++j) {
              const double v = special::sinc_half(xi[j]);
              if (v == 0.0) return LogDensity{-kInf, 0.0};
              r += p * std::log(std::abs(v));
            }
            return LogDensity{0.0, r};
          };
        } else if constexpr (std::is_same_v<T, Anova>) {
          const double tau = f.tau;
          const double c = std::log(std::sqrt(tau) / (2.0 * std::sqrt(kPi)));
          s.radial = d == 1;
          s.asymptotic = {d == 1 ? DecayClass::GaussianDecay : DecayClass::AnovaMixed, 0.0};
          s.log_density = [tau, c](const Point& xi) {
            const double m = xi.cwiseAbs2().minCoeff();
            double acc = 0.0;
            for (Eigen::Index j = 0; j < xi.size(); ++j) {
              acc += std::exp(-tau * (xi[j] * xi[j] - m) / 4.0);
            }
            return LogDensity{-tau * m / 4.0, c + std::log(acc)};
          };
        } else if constexpr (std::is_same_v<T, Sinc>) {
          const double c = -dd * std::log(2.0 * kPi);
          s.radial = d == 1;
          s.support = SupportKind::CompactSupport;
          s.box_half_width = kPi;
          s.asymptotic = {DecayClass::Compact, 0.0};
          s.log_density = [c](const Point& xi) {
            if (xi.cwiseAbs().maxCoeff() > kPi) return LogDensity{-kInf, 0.0};
            return LogDensity{0.0, c};
          };
        } else if constexpr (std::is_same_v<T, Sum>) {
          std::vector<SpectralDensity> parts;
          for (const auto& t : f.terms) parts.push_back(spectral_density(*t, cfg));
          s.radial = std::all_of(parts.begin(), parts.end(), [](const auto& p) { return p.radial; });
          const bool any_positive = std::any_of(parts.begin(), parts.end(), [](const auto& p) {
            return p.support == SupportKind::EverywherePositive;
          });
          const bool all_compact = std::all_of(parts.begin(), parts.end(), [](const auto& p) {
            return p.support == SupportKind::CompactSupport;
          });
          if (any_positive) {
            s.support = SupportKind::EverywherePositive;
          } else if (all_compact) {
            s.support = SupportKind::CompactSupport;
            for (const auto& p : parts) s.box_half_width = std::max(s.box_half_width, p.box_half_width);
          } else {
            s.support = SupportKind::ZeroSet;
            s.zero_set = "common zeros of the summands";
            for (const auto& p : parts) {
              s.zero_probes.insert(s.zero_probes.end(), p.zero_probes.begin(), p.zero_probes.end());
            }
          }
          s.asymptotic = parts.front().asymptotic;
          for (const auto& p : parts) {
            if (p.asymptotic.tag == DecayClass::PolyDecay &&
                (s.asymptotic.tag != DecayClass::PolyDecay || p.asymptotic.order < s.asymptotic.order)) {
              s.asymptotic = p.asymptotic;
            }
          }
          s.log_density = [parts](const Point& xi) {
            std::vector<LogDensity> v;
            double lead = -kInf;
            for (const auto& p : parts) {
              v.push_back(p.log_density(xi));
              if (v.back().value() > -kInf) lead = std::max(lead, v.back().lead);
            }
            if (lead == -kInf) return LogDensity{-kInf, 0.0};
            if (lead == kInf) return LogDensity{kInf, 0.0};
            std::vector<double> rel;
            for (const auto& x : v) rel.push_back((x.lead - lead) + x.rest);
            return LogDensity{lead, log_sum_exp(rel)};
          };
        } else if constexpr (std::is_same_v<T, Scaled>) {
          s = spectral_density(*f.inner, cfg);
          const double lc = std::log(f.c);
          auto inner = s.log_density;
          s.log_density = [inner, lc](const Point& xi) {
            LogDensity v = inner(xi);
            v.rest += lc;
            return v;
          };
        } else {
          throw UnsupportedFamily("no spectral density for " + to_string(k.family()) +
                                  " kernels (products, tensors, compositions and "
                                  "Hilbert-Schmidt kernels are handled algebraically)");
        }
      },
      k.node);
  s.dim = d;
  return s;
}

LaplaceRepresentation laplace_representation(const KernelSpec& k) {
  LaplaceRepresentation rep;
  switch (k.family()) {
    case Family::Gaussian:
      rep.kind = LaplaceKind::Atomic;
      rep.location = 1.0 / k.as<family::Gaussian>().gamma;
      rep.mass = 1.0;
      return rep;
    case Family::ExpL2: {
      const double sg = k.as<family::ExpL2>().sigma;
      rep.kind = LaplaceKind::Density;
      rep.density = [sg](double t) {
        if (!(t > 0.0)) return 0.0;
        return std::exp(-1.0 / (4.0 * sg * sg * t)) * std::pow(t, -1.5) / (2.0 * sg * std::sqrt(kPi));
      };
      return rep;
    }
    case Family::InverseMultiquadric: {
      const double beta = k.as<family::InverseMultiquadric>().beta;
      const double lg = std::lgamma(beta);
      rep.kind = LaplaceKind::Density;
      rep.density = [beta, lg](double t) {
        if (!(t > 0.0)) return 0.0;
        return std::exp((beta - 1.0) * std::log(t) - t - lg);
      };
      return rep;
    }
    default:
      throw UnsupportedFamily("no Laplace representation for " + to_string(k.family()) + " kernels");
  }
}

}  // namespace rkhs
