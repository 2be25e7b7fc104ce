#include "rkhs/verdict.hpp"

#include <cmath>
#include <limits>

#include "rkhs/errors.hpp"

namespace rkhs {

Lambda Lambda::unbounded() {
  return {LambdaKind::Unbounded, std::numeric_limits<double>::infinity()};
}

std::optional<double> InclusionVerdict::beta() const {
  if (lambda.kind != LambdaKind::Exact) {
    return std::nullopt;
  }
  return std::sqrt(lambda.value);
}

InclusionVerdict unknown_verdict(std::string reason, Method method) {
  InclusionVerdict v;
  v.relation = Relation::Unknown;
  v.method = method;
  v.reason = std::move(reason);
  return v;
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Included: return "Included";
    case Relation::NotIncluded: return "NotIncluded";
    case Relation::Equal: return "Equal";
    case Relation::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(LambdaKind k) {
  switch (k) {
    case LambdaKind::Exact: return "Exact";
    case LambdaKind::UpperBound: return "UpperBound";
    case LambdaKind::Unbounded: return "Unbounded";
    case LambdaKind::NotApplicable: return "NotApplicable";
  }
  return "NotApplicable";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::SymbolicTable: return "SymbolicTable";
    case Method::ClosedForm: return "ClosedForm";
    case Method::NumericRatio: return "NumericRatio";
    case Method::PsdEmpirical: return "PsdEmpirical";
  }
  return "SymbolicTable";
}

std::string to_string(BlowupKind b) {
  switch (b) {
    case BlowupKind::None: return "None";
    case BlowupKind::AtInfinity: return "AtInfinity";
    case BlowupKind::AtOrigin: return "AtOrigin";
    case BlowupKind::OnZeroSet: return "OnZeroSet";
  }
  return "None";
}

Relation relation_from_string(const std::string& s) {
  for (auto r : {Relation::Included, Relation::NotIncluded, Relation::Equal, Relation::Unknown}) {
    if (to_string(r) == s) return r;
  }
  throw std::invalid_argument("unknown relation '" + s + "'");
}

LambdaKind lambda_kind_from_string(const std::string& s) {
  for (auto k : {LambdaKind::Exact, LambdaKind::UpperBound, LambdaKind::Unbounded,
                 LambdaKind::NotApplicable}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown lambda kind '" + s + "'");
}

Method method_from_string(const std::string& s) {
  for (auto m : {Method::SymbolicTable, Method::ClosedForm, Method::NumericRatio,
                 Method::PsdEmpirical}) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown method '" + s + "'");
}

BlowupKind blowup_from_string(const std::string& s) {
  for (auto b : {BlowupKind::None, BlowupKind::AtInfinity, BlowupKind::AtOrigin,
                 BlowupKind::OnZeroSet}) {
    if (to_string(b) == s) return b;
  }
  throw std::invalid_argument("unknown blowup kind '" + s + "'");
}

}  // namespace rkhs
