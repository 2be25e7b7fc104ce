#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rkhs/kernel_spec.hpp"
#include "rkhs/quadrature.hpp"

namespace rkhs {

double eval(const KernelSpec& k, const Point& x, const Point& y);

// log of a density value, split as lead + rest. `lead` carries the dominant
// growth term (e.g. -gamma r^2/4), so that ratios of densities at extreme
// frequencies lose no precision when the leads cancel.
struct LogDensity {
  double lead = 0.0;
  double rest = 0.0;
  double value() const { return lead + rest; }
};

enum class SupportKind { EverywherePositive, CompactSupport, ZeroSet };
enum class DecayClass { GaussianDecay, PolyDecay, Compact, AnovaMixed };

struct AsymptoticClass {
  DecayClass tag = DecayClass::PolyDecay;
  double order = 0.0;  // polynomial order for PolyDecay
};

struct SpectralDensity {
  int dim = 1;
  bool radial = false;
  SupportKind support = SupportKind::EverywherePositive;
  double box_half_width = 0.0;  // CompactSupport: support is [-w, w]^d
  std::string zero_set;         // ZeroSet: description
  std::vector<Point> zero_probes;
  AsymptoticClass asymptotic;
  std::function<LogDensity(const Point&)> log_density;

  double eval(const Point& xi) const;
};

SpectralDensity spectral_density(const KernelSpec& k, const QuadratureConfig& cfg = {});

enum class LaplaceKind { Atomic, Density };

// K(x, y) = int_0^inf exp(-t |x - y|^2) dmu(t)
struct LaplaceRepresentation {
  LaplaceKind kind = LaplaceKind::Atomic;
  double location = 0.0;
  double mass = 0.0;
  std::function<double(double)> density;
};

LaplaceRepresentation laplace_representation(const KernelSpec& k);

// Centered cardinal B-spline of order p (support [-p/2, p/2]).
double cardinal_bspline(int p, double t);

}  // namespace rkhs
