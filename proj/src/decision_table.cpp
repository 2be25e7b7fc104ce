#include <cmath>
#include <numbers>

#include "rkhs/inclusion_engine.hpp"
#include "rkhs/kernel_catalog.hpp"

namespace rkhs {

namespace {

constexpr double kPi = std::numbers::pi;

TableCell cell(Relation r, std::string rule, Lambda l = {}) {
  TableCell c;
  c.relation = r;
  c.lambda = l;
  c.rule = std::move(rule);
  return c;
}

TableCell not_included(std::string rule) {
  return cell(Relation::NotIncluded, std::move(rule), Lambda::unbounded());
}

TableCell numeric_lambda(std::string rule) {
  TableCell c = cell(Relation::Included, std::move(rule));
  c.numeric_lambda = true;
  return c;
}

TableCell routed(std::string rule) {
  TableCell c = cell(Relation::Unknown, std::move(rule));
  c.route_numeric = true;
  return c;
}

TableCell same_family(const KernelSpec& k, const KernelSpec& g) {
  const double d = k.dim;
  switch (k.family()) {
    case Family::Gaussian: {
      const double a = k.as<family::Gaussian>().gamma;
      const double b = g.as<family::Gaussian>().gamma;
      if (a == b) return cell(Relation::Equal, "identical Gaussian", Lambda::exact(1.0));
      if (a > b) {
        return cell(Relation::Included, "Gaussian widths: lambda = (gamma_K/gamma_G)^(d/2)",
                    Lambda::exact(std::pow(a / b, d / 2.0)));
      }
      return not_included("Gaussian widths: narrower target does not contain wider kernel");
    }
    case Family::ExpL1: {
      const double a = k.as<family::ExpL1>().sigma;
      const double b = g.as<family::ExpL1>().sigma;
      return cell(Relation::Equal, "l1 exponentials span the same space",
                  Lambda::exact(std::pow(std::max(a / b, b / a), d)));
    }
    case Family::ExpL2: {
      const double a = k.as<family::ExpL2>().sigma;
      const double b = g.as<family::ExpL2>().sigma;
      return cell(Relation::Equal, "l2 exponentials span the same space",
                  Lambda::exact(std::max(std::pow(a / b, d), b / a)));
    }
    case Family::BSpline: {
      const int q = k.as<family::BSpline>().p;
      const int p = g.as<family::BSpline>().p;
      if (q == p) return cell(Relation::Equal, "identical B-spline", Lambda::exact(1.0));
      if (q > p) return cell(Relation::Included, "B-spline orders: q > p gives lambda = 1", Lambda::exact(1.0));
      return not_included("B-spline orders: lower order not contained in higher order");
    }
    case Family::InverseMultiquadric: {
      const double b1 = k.as<family::InverseMultiquadric>().beta;
      const double b2 = g.as<family::InverseMultiquadric>().beta;
      if (b1 == b2) return cell(Relation::Equal, "identical inverse multiquadric", Lambda::exact(1.0));
      TableCell c = (d / 2.0 < b1 && b1 < b2)
                        ? numeric_lambda("inverse multiquadrics: included iff d/2 < beta_K < beta_G")
                        : not_included("inverse multiquadrics: included iff d/2 < beta_K < beta_G");
      c.boundary = b1 == d / 2.0 || b2 == d / 2.0;
      return c;
    }
    case Family::Anova: {
      const double a = k.as<family::Anova>().tau;
      const double b = g.as<family::Anova>().tau;
      if (a == b) return cell(Relation::Equal, "identical ANOVA", Lambda::exact(1.0));
      if (a > b) {
        return cell(Relation::Included, "ANOVA widths: lambda = sqrt(tau_K/tau_G)",
                    Lambda::exact(std::sqrt(a / b)));
      }
      return not_included("ANOVA widths: narrower target does not contain wider kernel");
    }
    case Family::Sinc:
      return cell(Relation::Equal, "identical sinc", Lambda::exact(1.0));
    default:
      break;
  }
  throw UnsupportedFamily("no table entry for " + to_string(k.family()));
}

// sinc against a base family: lambda = (2 pi)^-d / min of v over [-pi, pi]^d,
// with the minimum at the corner for every catalog density.
TableCell sinc_row(const KernelSpec& g) {
  const int d = g.dim;
  const double dd = d;
  TableCell c;
  c.relation = Relation::Included;
  c.method = Method::ClosedForm;
  if (g.family() == Family::Gaussian) {
    const double gamma = g.as<family::Gaussian>().gamma;
    c.lambda = Lambda::exact(std::exp(dd * gamma * kPi * kPi / 4.0) / std::pow(gamma * kPi, dd / 2.0));
    c.rule = "sinc into Gaussian: exp(d gamma pi^2/4)/(gamma pi)^(d/2)";
    return c;
  }
  if (g.family() == Family::Anova) {
    const double tau = g.as<family::Anova>().tau;
    c.lambda = Lambda::exact(std::sqrt(kPi) * std::exp(tau * kPi * kPi / 4.0) /
                             (std::pow(2.0, dd - 1.0) * std::pow(kPi, dd) * dd * std::sqrt(tau)));
    c.rule = "sinc into ANOVA: sqrt(pi) exp(tau pi^2/4)/(2^(d-1) pi^d d sqrt(tau))";
    return c;
  }
  const SpectralDensity v = spectral_density(g);
  const double log_min = v.log_density(Point::Constant(d, kPi)).value();
  c.lambda = Lambda::exact(std::exp(-dd * std::log(2.0 * kPi) - log_min));
  c.rule = "sinc into " + to_string(g.family()) + ": (2 pi)^-d over the density at the box corner";
  return c;
}

enum Slot { B, G, E, L, M, A };

Slot slot(Family f) {
  switch (f) {
    case Family::BSpline: return B;
    case Family::Gaussian: return G;
    case Family::ExpL1: return E;
    case Family::ExpL2: return L;
    case Family::InverseMultiquadric: return M;
    case Family::Anova: return A;
    default: throw UnsupportedFamily("family " + to_string(f) + " is not in the decision table");
  }
}

}  // namespace

TableCell table_lookup(const KernelSpec& k, const KernelSpec& g) {
  if (!k.is_base() || !g.is_base()) {
    throw UnsupportedFamily("table_lookup needs base catalog families, got " + describe(k) +
                            " and " + describe(g));
  }
  if (k.dim != g.dim) {
    throw DimensionMismatch("kernels differ in input dimension");
  }
  const int d = k.dim;
  const double dd = d;
  if (k.family() == g.family()) return same_family(k, g);
  if (k.family() == Family::Sinc) return sinc_row(g);
  if (g.family() == Family::Sinc) return routed("kernel into sinc: not tabulated");

  const Slot r = slot(k.family());
  const Slot c = slot(g.family());
  switch (r) {
    case B:
      switch (c) {
        case E: {
          const double s = g.as<family::ExpL1>().sigma;
          return cell(Relation::Included, "B-spline into l1 exponential (bound)",
                      Lambda::upper(std::pow(2.0 * (s + 1.0 / s), dd)));
        }
        case L: {
          const int p = k.as<family::BSpline>().p;
          if (p < d + 1) return not_included("B-spline into l2 exponential needs p >= d+1");
          const double s = g.as<family::ExpL2>().sigma;
          const double bound = std::pow(2.0, p - dd) / (std::pow(s, dd) * std::pow(kPi, (dd - 1.0) / 2.0)) *
                               std::pow(1.0 + s * s * dd, (dd + 1.0) / 2.0) / std::tgamma((dd + 1.0) / 2.0);
          return cell(Relation::Included, "B-spline into l2 exponential, p >= d+1 (bound)",
                      Lambda::upper(bound));
        }
        default:
          return not_included(c == G ? "b_p/g unbounded" : "B-spline row: not included");
      }
    case G:
      switch (c) {
        case B:
          return not_included("b_p has zeros where g is positive");
        case E: {
          const double gamma = k.as<family::Gaussian>().gamma;
          const double s = g.as<family::ExpL1>().sigma;
          const double base = std::max(1.0, 4.0 * s * s / gamma) * std::sqrt(gamma * kPi) / (2.0 * s);
          return cell(Relation::Included, "Gaussian into l1 exponential (bound)",
                      Lambda::upper(std::pow(base, dd)));
        }
        case L: {
          const double gamma = k.as<family::Gaussian>().gamma;
          const double s = g.as<family::ExpL2>().sigma;
          const double bound = std::pow(std::max(1.0, (2.0 * dd + 2.0) * s * s / gamma), (dd + 1.0) / 2.0) *
                               std::pow(std::sqrt(gamma) / (2.0 * s), dd) *
                               std::pow(kPi, (dd - 1.0) / 2.0) / std::tgamma((dd + 1.0) / 2.0);
          return cell(Relation::Included, "Gaussian into l2 exponential (bound)", Lambda::upper(bound));
        }
        case M:
          return numeric_lambda("Gaussian into inverse multiquadric");
        case A: {
          const double gamma = k.as<family::Gaussian>().gamma;
          const double tau = g.as<family::Anova>().tau;
          TableCell out =
              gamma >= tau
                  ? cell(Relation::Included, "Gaussian into ANOVA iff gamma >= tau",
                         Lambda::exact(std::pow(std::sqrt(gamma), dd) /
                                       (dd * std::sqrt(tau) * std::pow(2.0 * std::sqrt(kPi), dd - 1.0))))
                  : not_included("Gaussian into ANOVA iff gamma >= tau");
          out.boundary = gamma == tau;
          return out;
        }
        default:
          break;
      }
      break;
    case E:
      if (c == L) {
        return d >= 2 ? not_included("l1 vs l2 exponential: axis decay O(n^-2) vs O(n^-(d+1))")
                      : routed("l1 vs l2 exponential: table open for d = 1");
      }
      return not_included("l1 exponential row: not included");
    case L:
      if (c == E) {
        return d >= 2 ? not_included("l2 vs l1 exponential: diagonal decay comparison")
                      : routed("l2 vs l1 exponential: table open for d = 1");
      }
      return not_included("l2 exponential row: not included");
    case M:
      if (c == E || c == L) {
        const double beta = k.as<family::InverseMultiquadric>().beta;
        TableCell out = beta > dd / 2.0
                            ? numeric_lambda("inverse multiquadric into exponential iff beta > d/2")
                            : not_included("inverse multiquadric into exponential iff beta > d/2");
        out.boundary = beta == dd / 2.0;
        return out;
      }
      return not_included("inverse multiquadric row: not included");
    case A:
      if (d == 1 && c != B) return routed("ANOVA row: table open for d = 1");
      return not_included("ANOVA row: not included");
  }
  throw UnsupportedFamily("no table entry for " + describe(k) + " vs " + describe(g));
}

}  // namespace rkhs
