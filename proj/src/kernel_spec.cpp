#include "rkhs/kernel_spec.hpp"

#include <cmath>
#include <sstream>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {

void require_dim(int dim) {
  if (dim < 1) {
    throw DomainError("kernel dimension must be a positive integer, got " + std::to_string(dim));
  }
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be a finite positive number, got " +
                      std::to_string(v));
  }
}

KernelPtr share(KernelSpec k) { return std::make_shared<const KernelSpec>(std::move(k)); }

bool same_ptr(const KernelPtr& a, const KernelPtr& b) { return *a == *b; }

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

bool KernelSpec::is_base() const {
  switch (family()) {
    case Family::Gaussian:
    case Family::ExpL1:
    case Family::ExpL2:
    case Family::InverseMultiquadric:
    case Family::BSpline:
    case Family::Anova:
    case Family::Sinc:
      return true;
    default:
      return false;
  }
}

bool operator==(const KernelSpec& a, const KernelSpec& b) {
  if (a.dim != b.dim || a.node.index() != b.node.index()) return false;
  using namespace family;
  return std::visit(
      [&b](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.node);
        if constexpr (std::is_same_v<T, Sum>) {
          if (x.terms.size() != y.terms.size()) return false;
          for (std::size_t i = 0; i < x.terms.size(); ++i) {
            if (!same_ptr(x.terms[i], y.terms[i])) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return x.c == y.c && same_ptr(x.inner, y.inner);
        } else if constexpr (std::is_same_v<T, Product> || std::is_same_v<T, Tensor>) {
          return same_ptr(x.first, y.first) && same_ptr(x.second, y.second);
        } else if constexpr (std::is_same_v<T, ExpComposed>) {
          return same_ptr(x.inner, y.inner);
        } else if constexpr (std::is_same_v<T, SeriesComposed>) {
          return x.coeffs == y.coeffs && same_ptr(x.inner, y.inner);
        } else {
          return x == y;
        }
      },
      a.node);
}

std::string to_string(Family f) {
  switch (f) {
    case Family::Gaussian: return "gaussian";
    case Family::ExpL1: return "expl1";
    case Family::ExpL2: return "expl2";
    case Family::InverseMultiquadric: return "imq";
    case Family::BSpline: return "bspline";
    case Family::Anova: return "anova";
    case Family::Sinc: return "sinc";
    case Family::HilbertSchmidt: return "hs";
    case Family::Sum: return "sum";
    case Family::Scaled: return "scaled";
    case Family::Product: return "product";
    case Family::Tensor: return "tensor";
    case Family::ExpComposed: return "exp";
    case Family::SeriesComposed: return "series";
  }
  return "unknown";
}

Family family_from_string(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Family::SeriesComposed); ++i) {
    if (to_string(static_cast<Family>(i)) == s) return static_cast<Family>(i);
  }
  throw UnsupportedFamily("unknown kernel family '" + s + "'");
}

std::string describe(const KernelSpec& k) {
  using namespace family;
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          return "G(gamma=" + num(x.gamma) + ")";
        } else if constexpr (std::is_same_v<T, ExpL1>) {
          return "E1(sigma=" + num(x.sigma) + ")";
        } else if constexpr (std::is_same_v<T, ExpL2>) {
          return "E2(sigma=" + num(x.sigma) + ")";
        } else if constexpr (std::is_same_v<T, InverseMultiquadric>) {
          return "M(beta=" + num(x.beta) + ")";
        } else if constexpr (std::is_same_v<T, BSpline>) {
          return "B(p=" + std::to_string(x.p) + ")";
        } else if constexpr (std::is_same_v<T, Anova>) {
          return "A(tau=" + num(x.tau) + ")";
        } else if constexpr (std::is_same_v<T, Sinc>) {
          return "sinc";
        } else if constexpr (std::is_same_v<T, HilbertSchmidt>) {
          const auto& c = x.kernel.coeffs;
          if (c.is_finite()) return "HS(finite, n=" + std::to_string(c.values().size()) + ")";
          return "HS(" + to_string(c.rule_def().kind) + "=" + num(c.rule_def().param) + ")";
        } else if constexpr (std::is_same_v<T, Sum>) {
          std::string s = "sum[";
          for (std::size_t i = 0; i < x.terms.size(); ++i) {
            s += (i ? ", " : "") + describe(*x.terms[i]);
          }
          return s + "]";
        } else if constexpr (std::is_same_v<T, Scaled>) {
          return num(x.c) + "*" + describe(*x.inner);
        } else if constexpr (std::is_same_v<T, Product>) {
          return "(" + describe(*x.first) + " x " + describe(*x.second) + ")";
        } else if constexpr (std::is_same_v<T, Tensor>) {
          return "(" + describe(*x.first) + " (x) " + describe(*x.second) + ")";
        } else if constexpr (std::is_same_v<T, ExpComposed>) {
          return "exp(" + describe(*x.inner) + ")";
        } else {
          return "series(" + describe(*x.inner) + ")";
        }
      },
      k.node);
}

namespace kernels {

KernelSpec gaussian(double gamma, int dim) {
  require_dim(dim);
  require_positive(gamma, "gamma");
  return {dim, family::Gaussian{gamma}};
}

KernelSpec exp_l1(double sigma, int dim) {
  require_dim(dim);
  require_positive(sigma, "sigma1");
  return {dim, family::ExpL1{sigma}};
}

KernelSpec exp_l2(double sigma, int dim) {
  require_dim(dim);
  require_positive(sigma, "sigma2");
  return {dim, family::ExpL2{sigma}};
}

KernelSpec inverse_multiquadric(double beta, int dim) {
  require_dim(dim);
  require_positive(beta, "beta");
  return {dim, family::InverseMultiquadric{beta}};
}

KernelSpec bspline(int p, int dim) {
  require_dim(dim);
  if (p < 2 || p % 2 != 0) {
    throw DomainError("B-spline order p must be even and >= 2, got " + std::to_string(p));
  }
  return {dim, family::BSpline{p}};
}

KernelSpec anova(double tau, int dim) {
  require_dim(dim);
  require_positive(tau, "tau");
  return {dim, family::Anova{tau}};
}

KernelSpec sinc(int dim) {
  require_dim(dim);
  return {dim, family::Sinc{}};
}

KernelSpec hilbert_schmidt(HsKernel kernel, int dim) {
  require_dim(dim);
  if (!hs_is_kernel(kernel.coeffs)) {
    throw NegativeCoefficient("Hilbert-Schmidt kernel needs nonnegative coefficients");
  }
  validate_hs(kernel.coeffs, kernel.features, dim);
  if (kernel.truncation < 1) {
    throw DomainError("Hilbert-Schmidt truncation must be >= 1");
  }
  return {dim, family::HilbertSchmidt{std::move(kernel)}};
}

KernelSpec sum(std::vector<KernelSpec> terms) {
  if (terms.empty()) {
    throw DomainError("sum needs at least one term");
  }
  const int dim = terms.front().dim;
  family::Sum s;
  for (auto& t : terms) {
    if (t.dim != dim) {
      throw DimensionMismatch("sum terms differ in dimension");
    }
    s.terms.push_back(share(std::move(t)));
  }
  return {dim, std::move(s)};
}

KernelSpec scaled(double c, KernelSpec inner) {
  require_positive(c, "scale factor");
  const int dim = inner.dim;
  return {dim, family::Scaled{c, share(std::move(inner))}};
}

KernelSpec product(KernelSpec first, KernelSpec second) {
  if (first.dim != second.dim) {
    throw DimensionMismatch("product factors differ in dimension");
  }
  const int dim = first.dim;
  return {dim, family::Product{share(std::move(first)), share(std::move(second))}};
}

KernelSpec tensor(KernelSpec first, KernelSpec second) {
  const int dim = first.dim + second.dim;
  return {dim, family::Tensor{share(std::move(first)), share(std::move(second))}};
}

KernelSpec exp_composed(KernelSpec inner) {
  const int dim = inner.dim;
  return {dim, family::ExpComposed{share(std::move(inner))}};
}

KernelSpec series_composed(std::vector<double> coeffs, KernelSpec inner) {
  if (coeffs.empty()) {
    throw DomainError("series needs at least one coefficient");
  }
  for (double c : coeffs) {
    if (!(c >= 0.0) || !std::isfinite(c)) {
      throw NegativeCoefficient("series coefficients must be finite and nonnegative");
    }
  }
  const int dim = inner.dim;
  return {dim, family::SeriesComposed{std::move(coeffs), share(std::move(inner))}};
}

}  // namespace kernels

}  // namespace rkhs
