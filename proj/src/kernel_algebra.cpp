#include "rkhs/kernel_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {

bool usable(const InclusionVerdict& v) { return v.included() && v.lambda.has_value(); }

Provenance node(const std::string& rule, const std::string& detail,
                std::initializer_list<const InclusionVerdict*> inputs) {
  Provenance p{rule, detail, {}};
  for (const auto* v : inputs) {
    p.inputs.push_back(v->provenance.value_or(
        Provenance{"input", to_string(v->relation) + " " + to_string(v->lambda.kind) + " " +
                                std::to_string(v->lambda.value),
                   {}}));
  }
  return p;
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

InclusionVerdict propagated(double value, const std::string& rule, const std::string& detail,
                            std::initializer_list<const InclusionVerdict*> inputs) {
  InclusionVerdict out;
  out.relation = Relation::Included;
  out.lambda = Lambda::upper(value);
  out.method = Method::ClosedForm;
  out.reason = detail;
  out.provenance = node(rule, detail, inputs);
  return out;
}

InclusionVerdict inapplicable(const std::string& rule,
                              std::initializer_list<const InclusionVerdict*> inputs) {
  InclusionVerdict out = unknown_verdict(rule + ": needs every input Included with a constant",
                                         Method::ClosedForm);
  out.provenance = node(rule, out.reason, inputs);
  return out;
}

ComposedVerdicts compose(const KernelSpec& phi_k, const KernelSpec& phi_lg, const KernelSpec& phi_g,
                         const KernelSpec& k, const KernelSpec& g, const InclusionVerdict& v,
                         const std::string& rule) {
  ComposedVerdicts out{phi_k, phi_lg, {}, phi_g, {}};
  if (!usable(v)) {
    out.scaled = inapplicable(rule, {&v});
    out.plain = out.scaled;
    return out;
  }
  const double l = v.lambda.value;
  out.scaled = propagated(1.0, rule, "phi(K) << phi(lambda G) with lambda = " + num(l), {&v});
  if (k == g) {
    out.plain.relation = Relation::Equal;
    out.plain.lambda = Lambda::exact(1.0);
    out.plain.method = Method::ClosedForm;
    out.plain.reason = "identical inner kernels";
    out.plain.provenance = node(rule, out.plain.reason, {&v});
  } else if (l <= 1.0) {
    out.plain = propagated(1.0, rule, "lambda = " + num(l) + " <= 1 gives phi(K) << phi(G)", {&v});
  } else {
    out.plain = unknown_verdict(rule + ": lambda = " + num(l) + " > 1, phi(G) not decided",
                                Method::ClosedForm);
    out.plain.provenance = node(rule, out.plain.reason, {&v});
  }
  return out;
}

}  // namespace

InclusionVerdict combine_sum(const InclusionVerdict& v1, const InclusionVerdict& v2) {
  if (!usable(v1) || !usable(v2)) return inapplicable("sum", {&v1, &v2});
  const double l = std::max(v1.lambda.value, v2.lambda.value);
  return propagated(l, "sum", "max(" + num(v1.lambda.value) + ", " + num(v2.lambda.value) + ")", {&v1, &v2});
}

InclusionVerdict combine_sum_same_target(const InclusionVerdict& v1, const InclusionVerdict& v2) {
  if (!usable(v1) || !usable(v2)) return inapplicable("sum-same-target", {&v1, &v2});
  const double l = v1.lambda.value + v2.lambda.value;
  return propagated(l, "sum-same-target", num(v1.lambda.value) + " + " + num(v2.lambda.value), {&v1, &v2});
}

InclusionVerdict combine_scale(double a, double b, const InclusionVerdict& v) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw DomainError("scale factors must be positive");
  }
  InclusionVerdict out = v;
  out.provenance = node("scale", "(a/b) lambda with a = " + num(a) + ", b = " + num(b), {&v});
  if (v.lambda.has_value()) {
    out.lambda.value = v.lambda.value * (a / b);
    out.reason = "scaled by " + num(a) + "/" + num(b);
  }
  return out;
}

InclusionVerdict combine_product(const InclusionVerdict& v1, const InclusionVerdict& v2) {
  if (!usable(v1) || !usable(v2)) return inapplicable("product", {&v1, &v2});
  return propagated(v1.lambda.value * v2.lambda.value, "product",
                    num(v1.lambda.value) + " * " + num(v2.lambda.value), {&v1, &v2});
}

InclusionVerdict combine_tensor(const InclusionVerdict& v1, const InclusionVerdict& v2) {
  if (!usable(v1) || !usable(v2)) return inapplicable("tensor", {&v1, &v2});
  return propagated(v1.lambda.value * v2.lambda.value, "tensor",
                    num(v1.lambda.value) + " * " + num(v2.lambda.value), {&v1, &v2});
}

ComposedVerdicts combine_exp(const KernelSpec& k, const KernelSpec& g, const InclusionVerdict& v) {
  const double l = usable(v) ? v.lambda.value : 1.0;
  return compose(kernels::exp_composed(k), kernels::exp_composed(kernels::scaled(l, g)),
                 kernels::exp_composed(g), k, g, v, "exp");
}

ComposedVerdicts combine_series(const std::vector<double>& coeffs, const KernelSpec& k,
                                const KernelSpec& g, const InclusionVerdict& v) {
  for (double c : coeffs) {
    if (!(c >= 0.0)) {
      throw NegativeCoefficient("series composition needs nonnegative coefficients");
    }
  }
  const double l = usable(v) ? v.lambda.value : 1.0;
  return compose(kernels::series_composed(coeffs, k),
                 kernels::series_composed(coeffs, kernels::scaled(l, g)),
                 kernels::series_composed(coeffs, g), k, g, v, "series");
}

InclusionVerdict combine_limit(const std::vector<InclusionVerdict>& verdicts) {
  if (verdicts.empty()) return unknown_verdict("limit: empty sequence", Method::ClosedForm);
  double sup = 0.0;
  for (const auto& v : verdicts) {
    if (!usable(v)) return unknown_verdict("limit: a term is not Included", Method::ClosedForm);
    if (!std::isfinite(v.lambda.value)) return unknown_verdict("limit: lambda_j unbounded", Method::ClosedForm);
    sup = std::max(sup, v.lambda.value);
  }
  InclusionVerdict out = propagated(sup, "limit", "sup_j lambda_j = " + num(sup), {});
  return out;
}

InclusionVerdict combine_limit(const std::function<InclusionVerdict(long long)>& verdict_at) {
  constexpr int kLevels = 41;
  std::vector<double> l;
  for (int k = 0; k < kLevels; ++k) {
    const InclusionVerdict v = verdict_at(1LL << k);
    if (!usable(v) || !std::isfinite(v.lambda.value)) {
      return unknown_verdict("limit: term j = 2^" + std::to_string(k) + " is not Included with a finite constant",
                             Method::ClosedForm);
    }
    l.push_back(v.lambda.value);
  }
  const double last = l.back();
  const double sup = *std::max_element(l.begin(), l.end());
  const double prev = l[kLevels - 11];
  if (last > prev && prev > 0.0) {
    const double slope = std::log(last / prev) / (10.0 * std::log(2.0));
    if (slope > 0.02) {
      return unknown_verdict("limit: lambda_j grows like j^" + num(slope) + ", sup is not finite",
                             Method::ClosedForm);
    }
  }
  // Increasing tail with geometrically shrinking steps: add the remaining tail.
  double bound = sup;
  const double d1 = l[kLevels - 1] - l[kLevels - 2];
  const double d0 = l[kLevels - 2] - l[kLevels - 3];
  if (d1 > 0.0 && d0 > 0.0 && d1 < d0) {
    const double q = d1 / d0;
    bound = std::max(bound, last + d1 * q / (1.0 - q));
  }
  return propagated(bound, "limit", "sup_j lambda_j <= " + num(bound), {});
}

}  // namespace rkhs
