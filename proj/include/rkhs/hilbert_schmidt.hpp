#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rkhs/types.hpp"
#include "rkhs/verdict.hpp"

namespace rkhs {

// Named coefficient generators, as functions of the index norm rho = |n|:
//   Geometric        exp(-param * rho^2)
//   Exponential      exp(-param * rho)
//   PolynomialDecay  (1 + rho)^(-param)
//   Binomial         C(param, n), n <= param      (naturals only)
//   InverseFactorial 1/n!                         (naturals only)
enum class RuleKind { Geometric, Exponential, PolynomialDecay, Binomial, InverseFactorial };

struct CoefficientRule {
  RuleKind kind;
  double param = 0.0;
  bool operator==(const CoefficientRule&) const = default;
};

enum class IndexSet { Naturals, IntegerLattice };

struct CoefficientSequence {
  IndexSet index_set = IndexSet::Naturals;
  int lattice_dim = 1;
  std::variant<std::vector<double>, CoefficientRule> source;

  static CoefficientSequence finite(std::vector<double> values);
  static CoefficientSequence rule(RuleKind kind, double param,
                                  IndexSet index_set = IndexSet::Naturals, int lattice_dim = 1);

  bool is_finite() const { return std::holds_alternative<std::vector<double>>(source); }
  const std::vector<double>& values() const { return std::get<std::vector<double>>(source); }
  const CoefficientRule& rule_def() const { return std::get<CoefficientRule>(source); }

  // Number of leading indices that can be nonzero (naturals), or nullopt for
  // infinite support.
  std::optional<long long> support_bound() const;
  // a_n on the naturals.
  double at(long long n) const;
  // log a(rho) for rules; -inf outside the support.
  double log_at_norm(double rho) const;

  bool operator==(const CoefficientSequence&) const = default;
};

enum class FeatureKind { Monomials, ComplexExponentials };

// Monomials: phi_n contributes (x.y)^n. ComplexExponentials: phi_n(x) = e^{i(t_n, x)},
// with t_n from `frequencies` (finite sequences) or the integer lattice when empty.
struct FeatureSequence {
  FeatureKind kind = FeatureKind::Monomials;
  std::vector<std::vector<double>> frequencies;

  static FeatureSequence monomials() { return {}; }
  static FeatureSequence lattice() { return {FeatureKind::ComplexExponentials, {}}; }
  static FeatureSequence exponentials(std::vector<std::vector<double>> freqs);

  bool operator==(const FeatureSequence&) const = default;
};

struct HsKernel {
  CoefficientSequence coeffs;
  FeatureSequence features;
  long long truncation = 32;

  bool operator==(const HsKernel&) const = default;
};

struct HsValue {
  double value;
  double tail_bound;
};

// Throws DivergenceError when the rule is not summable for the features, and
// DomainError for incompatible sequence/feature combinations.
void validate_hs(const CoefficientSequence& a, const FeatureSequence& phi, int dim);

HsValue hs_eval(const CoefficientSequence& a, const FeatureSequence& phi, const Point& x,
                const Point& y, long long truncation);

bool hs_is_kernel(const CoefficientSequence& r);

InclusionVerdict hs_inclusion(const CoefficientSequence& a, const CoefficientSequence& b);

struct EquivNorm {
  bool holds = false;
  double alpha = 0.0;
  double beta = 0.0;
  std::string reason;
};

EquivNorm hs_equiv_norm(const CoefficientSequence& a, const CoefficientSequence& b);

std::string to_string(RuleKind k);
RuleKind rule_kind_from_string(const std::string& s);

}  // namespace rkhs
