#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "rkhs/hilbert_schmidt.hpp"
#include "rkhs/types.hpp"

namespace rkhs {

struct KernelSpec;
using KernelPtr = std::shared_ptr<const KernelSpec>;

namespace family {

struct Gaussian {
  double gamma;
  bool operator==(const Gaussian&) const = default;
};
struct ExpL1 {
  double sigma;
  bool operator==(const ExpL1&) const = default;
};
struct ExpL2 {
  double sigma;
  bool operator==(const ExpL2&) const = default;
};
struct InverseMultiquadric {
  double beta;
  bool operator==(const InverseMultiquadric&) const = default;
};
struct BSpline {
  int p;
  bool operator==(const BSpline&) const = default;
};
struct Anova {
  double tau;
  bool operator==(const Anova&) const = default;
};
struct Sinc {
  bool operator==(const Sinc&) const = default;
};
struct HilbertSchmidt {
  HsKernel kernel;
  bool operator==(const HilbertSchmidt&) const = default;
};
struct Sum {
  std::vector<KernelPtr> terms;
};
struct Scaled {
  double c;
  KernelPtr inner;
};
struct Product {
  KernelPtr first;
  KernelPtr second;
};
struct Tensor {
  KernelPtr first;
  KernelPtr second;
};
struct ExpComposed {
  KernelPtr inner;
};
struct SeriesComposed {
  std::vector<double> coeffs;
  KernelPtr inner;
};

}  // namespace family

enum class Family {
  Gaussian,
  ExpL1,
  ExpL2,
  InverseMultiquadric,
  BSpline,
  Anova,
  Sinc,
  HilbertSchmidt,
  Sum,
  Scaled,
  Product,
  Tensor,
  ExpComposed,
  SeriesComposed
};

using KernelNode =
    std::variant<family::Gaussian, family::ExpL1, family::ExpL2, family::InverseMultiquadric,
                 family::BSpline, family::Anova, family::Sinc, family::HilbertSchmidt,
                 family::Sum, family::Scaled, family::Product, family::Tensor,
                 family::ExpComposed, family::SeriesComposed>;

// Immutable symbolic kernel. Build through the factories in rkhs::kernels,
// which validate parameters.
struct KernelSpec {
  int dim = 1;
  KernelNode node;

  Family family() const { return static_cast<Family>(node.index()); }
  bool is_base() const;  // one of the seven translation-invariant catalog families
  template <class T>
  const T& as() const {
    return std::get<T>(node);
  }
};

bool operator==(const KernelSpec& a, const KernelSpec& b);

std::string to_string(Family f);
Family family_from_string(const std::string& s);
// Compact human label, e.g. "G(gamma=2)" or "sum[G(gamma=1), E1(sigma=1)]".
std::string describe(const KernelSpec& k);

namespace kernels {

KernelSpec gaussian(double gamma, int dim);
KernelSpec exp_l1(double sigma, int dim);
KernelSpec exp_l2(double sigma, int dim);
KernelSpec inverse_multiquadric(double beta, int dim);
KernelSpec bspline(int p, int dim);
KernelSpec anova(double tau, int dim);
KernelSpec sinc(int dim);
KernelSpec hilbert_schmidt(HsKernel kernel, int dim);
KernelSpec sum(std::vector<KernelSpec> terms);
KernelSpec scaled(double c, KernelSpec inner);
KernelSpec product(KernelSpec first, KernelSpec second);
KernelSpec tensor(KernelSpec first, KernelSpec second);
KernelSpec exp_composed(KernelSpec inner);
KernelSpec series_composed(std::vector<double> coeffs, KernelSpec inner);

}  // namespace kernels

}  // namespace rkhs
