#include "rkhs/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {

// Kronrod 15-point abscissae (positive half, descending) and weights; the
// Gauss 7-point rule uses every other abscissa.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double lo;
  double hi;
  double result;
  double error;
};

Panel kronrod(const std::function<double(double)>& log_f, double log_scale,
              double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  auto f = [&](double x) {
    const double v = log_f(x);
    if (std::isnan(v)) {
      throw NumericError("integrand evaluated to NaN at x=" + std::to_string(x));
    }
    return std::exp(v - log_scale);
  };

  const double fc = f(center);
  double res_k = fc * kWgk[7];
  double res_g = fc * kWg[3];
  double res_abs = std::abs(res_k);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    res_k += kWgk[j] * (f1[j] + f2[j]);
    res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) {
      res_g += kWg[j / 2] * (f1[j] + f2[j]);
    }
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  res_k *= half;
  res_abs *= std::abs(half);
  res_asc *= std::abs(half);

  // QUADPACK's error scaling for the 7/15 pair.
  double err = std::abs((res_k - res_g * half));
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * res_abs, err);
  }
  return {lo, hi, res_k, err};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1) {
    throw DomainError("quadrature config requires rel_tol > 0, abs_tol > 0, max_subdivisions >= 1");
  }
}

LogIntegral integrate_exp(const std::function<double(double)>& log_f, double lo,
                          double hi, double log_scale,
                          const QuadratureConfig& cfg, int initial_panels) {
  cfg.validate();
  if (!(hi > lo)) {
    return {-std::numeric_limits<double>::infinity(), 0.0, 0};
  }
  initial_panels = std::max(1, initial_panels);
  std::vector<Panel> panels;
  panels.reserve(static_cast<std::size_t>(initial_panels + cfg.max_subdivisions));
  const double step = (hi - lo) / initial_panels;
  for (int i = 0; i < initial_panels; ++i) {
    const double a = lo + step * i;
    const double b = (i + 1 == initial_panels) ? hi : lo + step * (i + 1);
    panels.push_back(kronrod(log_f, log_scale, a, b));
  }

  auto totals = [&panels] {
    double r = 0.0;
    double e = 0.0;
    for (const auto& p : panels) {
      r += p.result;
      e += p.error;
    }
    return std::pair{r, e};
  };

  int bisections = 0;
  for (;;) {
    auto [result, error] = totals();
    if (error <= std::max(cfg.rel_tol * std::abs(result), cfg.abs_tol)) {
      if (!(result > 0.0)) {
        return {-std::numeric_limits<double>::infinity(), 0.0, bisections};
      }
      return {log_scale + std::log(result), error / result, bisections};
    }
    if (bisections >= cfg.max_subdivisions) {
      throw ConvergenceError("adaptive quadrature did not converge within " +
                             std::to_string(cfg.max_subdivisions) +
                             " subdivisions (estimated relative error " +
                             std::to_string(error / std::abs(result)) + ")");
    }
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const Panel& a, const Panel& b) { return a.error < b.error; });
    const Panel p = *worst;
    const double mid = 0.5 * (p.lo + p.hi);
    *worst = kronrod(log_f, log_scale, p.lo, mid);
    panels.push_back(kronrod(log_f, log_scale, mid, p.hi));
    ++bisections;
  }
}

LogIntegral integrate_unimodal(const std::function<double(double)>& log_f,
                               double mode, double width, double lower,
                               double upper, const QuadratureConfig& cfg) {
  cfg.validate();
  mode = std::clamp(mode, lower, upper);
  const double peak = log_f(mode);
  if (!std::isfinite(peak)) {
    throw NumericError("unimodal integrand is not finite at its mode");
  }
  const double floor = peak + std::log(cfg.abs_tol);

  // Walk outward in doubling steps until the integrand drops below the floor.
  auto reach = [&](double direction, double limit) {
    double step = width;
    double x = mode;
    for (int i = 0; i < 2000; ++i) {
      const double next = mode + direction * step;
      if ((direction > 0 && next >= limit) || (direction < 0 && next <= limit)) {
        return limit;
      }
      x = next;
      if (log_f(x) < floor) {
        return x;
      }
      step *= 2.0;
    }
    throw ConvergenceError("could not bracket the integrand tail");
  };
  const double lo = (mode <= lower) ? lower : reach(-1.0, lower);
  const double hi = (mode >= upper) ? upper : reach(+1.0, upper);
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ConvergenceError("integrand tail does not decay below the truncation floor");
  }

  // Panels of roughly four characteristic widths, capped so long tails stay cheap.
  const int panels = static_cast<int>(std::clamp((hi - lo) / (4.0 * width), 1.0, 24.0));
  return integrate_exp(log_f, lo, hi, peak, cfg, panels);
}

}  // namespace rkhs
