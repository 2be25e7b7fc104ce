#pragma once

#include <optional>
#include <string>
#include <vector>

namespace rkhs {

enum class Relation { Included, NotIncluded, Equal, Unknown };
enum class LambdaKind { Exact, UpperBound, Unbounded, NotApplicable };
enum class Method { SymbolicTable, ClosedForm, NumericRatio, PsdEmpirical };
enum class BlowupKind { None, AtInfinity, AtOrigin, OnZeroSet };

struct Lambda {
  LambdaKind kind = LambdaKind::NotApplicable;
  double value = 0.0;

  static Lambda exact(double v) { return {LambdaKind::Exact, v}; }
  static Lambda upper(double v) { return {LambdaKind::UpperBound, v}; }
  static Lambda unbounded();
  static Lambda not_applicable() { return {}; }

  bool has_value() const { return kind == LambdaKind::Exact || kind == LambdaKind::UpperBound; }
  bool operator==(const Lambda&) const = default;
};

// Where a density ratio blows up (frequency point), or for Hilbert-Schmidt
// kernels the offending coefficient index.
struct Witness {
  std::vector<double> location;
  BlowupKind kind = BlowupKind::None;
  double ratio = 0.0;
  std::optional<long long> index;

  bool operator==(const Witness&) const = default;
};

struct Provenance {
  std::string rule;
  std::string detail;
  std::vector<Provenance> inputs;

  bool operator==(const Provenance&) const = default;
};

struct InclusionVerdict {
  Relation relation = Relation::Unknown;
  Lambda lambda;
  Method method = Method::SymbolicTable;
  std::optional<Witness> witness;
  std::string reason;
  std::optional<Provenance> provenance;

  // H_K is contained in H_G (strictly or as an equality of spaces).
  bool included() const { return relation == Relation::Included || relation == Relation::Equal; }
  // sqrt(lambda), the norm of the embedding, when lambda is exact.
  std::optional<double> beta() const;

  bool operator==(const InclusionVerdict&) const = default;
};

InclusionVerdict unknown_verdict(std::string reason, Method method = Method::SymbolicTable);

std::string to_string(Relation r);
std::string to_string(LambdaKind k);
std::string to_string(Method m);
std::string to_string(BlowupKind b);
Relation relation_from_string(const std::string& s);
LambdaKind lambda_kind_from_string(const std::string& s);
Method method_from_string(const std::string& s);
BlowupKind blowup_from_string(const std::string& s);

}  // namespace rkhs
