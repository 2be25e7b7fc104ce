#include "rkhs/table.hpp"

#include <cmath>

#include "rkhs/errors.hpp"

namespace rkhs {

void TableParams::validate() const {
  if (!(gamma > 0) || !(sigma1 > 0) || !(sigma2 > 0) || !(beta > 0) || !(tau > 0)) {
    throw DomainError("table parameters must be positive");
  }
  if (p < 2 || p % 2 != 0) throw DomainError("B-spline order p must be even and at least 2");
}

std::vector<KernelSpec> table_kernels(int d, const TableParams& q) {
  q.validate();
  return {kernels::bspline(q.p, d),      kernels::gaussian(q.gamma, d),
          kernels::exp_l1(q.sigma1, d),  kernels::exp_l2(q.sigma2, d),
          kernels::inverse_multiquadric(q.beta, d), kernels::anova(q.tau, d)};
}

int TableReport::agreement_count() const {
  int n = 0;
  for (const auto& row : cells)
    for (const auto& c : row) n += c.agrees ? 1 : 0;
  return n;
}

std::string relation_symbol(const InclusionVerdict& v) {
  switch (v.relation) {
    case Relation::Equal:
      return "=";
    case Relation::Included:
      return "<=";
    case Relation::NotIncluded:
      return "!<=";
    case Relation::Unknown:
      break;
  }
  return "?";
}

TableReport reproduce_table(int d, const TableParams& params, bool cross_check, const GridConfig& grid) {
  if (d < 1) throw DomainError("dimension must be positive");
  TableReport rep;
  rep.dim = d;
  rep.params = params;
  const auto ks = table_kernels(d, params);
  for (const auto& k : ks) rep.labels.push_back(describe(k));

  for (const auto& k : ks) {
    std::vector<TableEntry> row;
    for (const auto& g : ks) {
      TableEntry e;
      if (!cross_check || k == g) {
        e.verdict = decide(k, g, grid);
        row.push_back(std::move(e));
        continue;
      }
      try {
        CrossValidation cv = cross_validate(k, g, grid);
        e.verdict = cv.symbolic;
        e.cross_checked = true;
        e.advisory = cv.advisory;
        e.agrees = cv.relation_agrees || cv.advisory;
        e.numeric_sup = cv.profile.sup_estimate;
        e.lambda_rel_error = cv.lambda_rel_error;
        if (!cv.bound_respected) e.note = "numeric sup exceeds the symbolic bound";
        if (cv.advisory && !cv.relation_agrees) e.note = "boundary parameters, numeric verdict advisory";
      } catch (const DisagreementError& err) {
        e.verdict = err.symbolic();
        e.cross_checked = true;
        e.agrees = false;
        e.note = err.what();
      }
      row.push_back(std::move(e));
    }
    rep.cells.push_back(std::move(row));
  }
  return rep;
}

}  // namespace rkhs
