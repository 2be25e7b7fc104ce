#include "rkhs/inclusion_engine.hpp"

#include <algorithm>
#include <cmath>

#include "rkhs/kernel_algebra.hpp"
#include "rkhs/kernel_catalog.hpp"

namespace rkhs {

namespace {

InclusionVerdict from_cell(const TableCell& c) {
  InclusionVerdict v;
  v.relation = c.relation;
  v.lambda = c.lambda;
  v.method = c.method;
  v.reason = c.rule;
  v.provenance = Provenance{"table", c.rule, {}};
  return v;
}

bool has_density(const KernelSpec& k) {
  if (k.is_base()) return true;
  if (k.family() == Family::Scaled) return has_density(*k.as<family::Scaled>().inner);
  if (k.family() == Family::Sum) {
    const auto& t = k.as<family::Sum>().terms;
    return std::all_of(t.begin(), t.end(), [](const KernelPtr& p) { return has_density(*p); });
  }
  return false;
}

InclusionVerdict decide_base(const KernelSpec& k, const KernelSpec& g, const GridConfig& grid) {
  const TableCell c = table_lookup(k, g);
  if (c.route_numeric) {
    InclusionVerdict v = decide_numeric(k, g, grid).first;
    v.reason = c.rule + "; " + v.reason;
    v.provenance = Provenance{"table-open", c.rule, {v.provenance.value_or(Provenance{})}};
    return v;
  }
  InclusionVerdict v = from_cell(c);
  if (c.numeric_lambda) {
    const InclusionVerdict n = decide_numeric(k, g, grid).first;
    if (n.relation == Relation::Included) {
      v.lambda = n.lambda;
      v.reason = c.rule + "; lambda from density ratio";
      v.provenance->inputs.push_back(n.provenance.value_or(Provenance{}));
    } else {
      v = unknown_verdict(c.rule + "; the density ratio estimate diverged, constant not quantified");
    }
  }
  return v;
}

InclusionVerdict fold(const std::vector<InclusionVerdict>& vs,
                      InclusionVerdict (*op)(const InclusionVerdict&, const InclusionVerdict&)) {
  InclusionVerdict acc = vs.front();
  for (std::size_t i = 1; i < vs.size(); ++i) acc = op(acc, vs[i]);
  return acc;
}

InclusionVerdict numeric_or_unknown(const KernelSpec& k, const KernelSpec& g, const GridConfig& grid,
                                    const std::string& why) {
  if (has_density(k) && has_density(g)) return decide_numeric(k, g, grid).first;
  return unknown_verdict(why + ": no algebra rule applies to " + describe(k) + " vs " + describe(g));
}

}  // namespace

InclusionVerdict decide(const KernelSpec& k, const KernelSpec& g, const GridConfig& grid) {
  if (k.dim != g.dim) {
    throw DimensionMismatch("kernels differ in input dimension (" + std::to_string(k.dim) + " vs " +
                            std::to_string(g.dim) + ")");
  }
  if (k == g) {
    InclusionVerdict v;
    v.relation = Relation::Equal;
    v.lambda = Lambda::exact(1.0);
    v.method = Method::ClosedForm;
    v.reason = "identical kernels";
    v.provenance = Provenance{"reflexive", "K << 1 K", {}};
    return v;
  }

  const Family fk = k.family();
  const Family fg = g.family();

  if (fk == Family::Scaled || fg == Family::Scaled) {
    const double a = fk == Family::Scaled ? k.as<family::Scaled>().c : 1.0;
    const double b = fg == Family::Scaled ? g.as<family::Scaled>().c : 1.0;
    const KernelSpec& ki = fk == Family::Scaled ? *k.as<family::Scaled>().inner : k;
    const KernelSpec& gi = fg == Family::Scaled ? *g.as<family::Scaled>().inner : g;
    return combine_scale(a, b, decide(ki, gi, grid));
  }

  if (fk == Family::Sum && fg == Family::Sum) {
    const auto& kt = k.as<family::Sum>().terms;
    const auto& gt = g.as<family::Sum>().terms;
    if (kt.size() == gt.size()) {
      std::vector<InclusionVerdict> vs;
      for (std::size_t i = 0; i < kt.size(); ++i) vs.push_back(decide(*kt[i], *gt[i], grid));
      if (std::all_of(vs.begin(), vs.end(), [](const auto& v) { return v.included(); })) {
        return fold(vs, combine_sum);
      }
    }
  }
  if (fk == Family::Sum) {
    std::vector<InclusionVerdict> vs;
    for (const auto& t : k.as<family::Sum>().terms) vs.push_back(decide(*t, g, grid));
    if (std::all_of(vs.begin(), vs.end(), [](const auto& v) { return v.included(); })) {
      return fold(vs, combine_sum_same_target);
    }
    return numeric_or_unknown(k, g, grid, "sum");
  }
  if (fg == Family::Sum) {
    // K << l G_j and G_j << G give K << l G.
    std::optional<InclusionVerdict> best;
    for (const auto& t : g.as<family::Sum>().terms) {
      InclusionVerdict v = decide(k, *t, grid);
      if (v.included() && v.lambda.has_value() && (!best || v.lambda.value < best->lambda.value)) {
        best = v;
      }
    }
    if (best) {
      InclusionVerdict out;
      out.relation = Relation::Included;
      out.lambda = Lambda::upper(best->lambda.value);
      out.method = Method::ClosedForm;
      out.reason = "included in a summand of the target";
      out.provenance = Provenance{"target-summand", out.reason, {best->provenance.value_or(Provenance{})}};
      return out;
    }
    return numeric_or_unknown(k, g, grid, "sum target");
  }

  if (fk == Family::Product && fg == Family::Product) {
    const auto& kp = k.as<family::Product>();
    const auto& gp = g.as<family::Product>();
    return combine_product(decide(*kp.first, *gp.first, grid), decide(*kp.second, *gp.second, grid));
  }
  if (fk == Family::Tensor && fg == Family::Tensor) {
    const auto& kp = k.as<family::Tensor>();
    const auto& gp = g.as<family::Tensor>();
    if (kp.first->dim == gp.first->dim) {
      return combine_tensor(decide(*kp.first, *gp.first, grid), decide(*kp.second, *gp.second, grid));
    }
    return unknown_verdict("tensor factors split the coordinates differently");
  }
  if (fk == Family::ExpComposed && fg == Family::ExpComposed) {
    const KernelSpec& ki = *k.as<family::ExpComposed>().inner;
    const KernelSpec& gi = *g.as<family::ExpComposed>().inner;
    return combine_exp(ki, gi, decide(ki, gi, grid)).plain;
  }
  if (fk == Family::SeriesComposed && fg == Family::SeriesComposed) {
    const auto& ks = k.as<family::SeriesComposed>();
    const auto& gs = g.as<family::SeriesComposed>();
    if (ks.coeffs != gs.coeffs) {
      return unknown_verdict("series compositions use different coefficients");
    }
    return combine_series(ks.coeffs, *ks.inner, *gs.inner, decide(*ks.inner, *gs.inner, grid)).plain;
  }
  if (fk == Family::HilbertSchmidt && fg == Family::HilbertSchmidt) {
    const auto& a = k.as<family::HilbertSchmidt>().kernel;
    const auto& b = g.as<family::HilbertSchmidt>().kernel;
    if (!(a.features == b.features)) {
      return unknown_verdict("Hilbert-Schmidt kernels with different feature sequences");
    }
    return hs_inclusion(a.coeffs, b.coeffs);
  }
  if (k.is_base() && g.is_base()) return decide_base(k, g, grid);
  return numeric_or_unknown(k, g, grid, "mixed pair");
}

CrossValidation cross_validate(const KernelSpec& k, const KernelSpec& g, const GridConfig& grid) {
  CrossValidation cv;
  cv.symbolic = decide(k, g, grid);
  auto [num, profile] = decide_numeric(k, g, grid);
  cv.numeric = std::move(num);
  cv.profile = std::move(profile);
  if (k.is_base() && g.is_base()) cv.advisory = table_lookup(k, g).boundary;

  const bool sym_in = cv.symbolic.included();
  const bool num_in = cv.numeric.relation == Relation::Included;
  cv.relation_agrees = cv.symbolic.relation != Relation::Unknown && sym_in == num_in;

  if (sym_in && cv.symbolic.lambda.kind == LambdaKind::Exact) {
    const double l = cv.symbolic.lambda.value;
    cv.lambda_rel_error = std::abs(cv.profile.sup_estimate - l) / l;
  }
  if (sym_in && cv.symbolic.lambda.kind == LambdaKind::UpperBound &&
      cv.symbolic.method == Method::SymbolicTable) {
    cv.bound_respected = cv.profile.sup_estimate <= cv.symbolic.lambda.value * (1.0 + 1e-9);
  }

  const bool lambda_ok = !cv.lambda_rel_error || *cv.lambda_rel_error <= 0.02;
  if ((!cv.relation_agrees || !lambda_ok) && !cv.advisory) {
    std::string what = "symbolic and numeric verdicts disagree for " + describe(k) + " vs " + describe(g) +
                       ": " + to_string(cv.symbolic.relation) + " vs " + to_string(cv.numeric.relation);
    if (!lambda_ok) what += " (lambda relative error " + std::to_string(*cv.lambda_rel_error) + ")";
    throw DisagreementError(what, cv.symbolic, cv.numeric);
  }
  return cv;
}

}  // namespace rkhs
