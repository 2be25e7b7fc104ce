#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rkhs/errors.hpp"
#include "rkhs/kernel_spec.hpp"
#include "rkhs/quadrature.hpp"
#include "rkhs/verdict.hpp"

namespace rkhs {

struct GridConfig {
  int ray_points = 4096;
  double r_min = 1e-4;
  double r_max = 1e3;
  int tensor_points = 32768;   // total budget for the positive-orthant tensor grid
  int extended_decades = 60;   // probes at 10^{+-k} beyond the grid
  int cluster_size = 8;        // probes r(1 + 0.1 j) per extended decade
  double blowup_threshold = 1e8;
  double zero_rel = 1e-14;     // v below zero_rel * max v counts as zero
  double zero_mass_rel = 1e-7; // ...when u is at least zero_mass_rel * max u
  double margin = 1e-3;
  QuadratureConfig quadrature;

  void validate() const;
};

struct ProfilePoint {
  std::vector<double> xi;
  double ratio;
};

struct RatioProfile {
  std::vector<ProfilePoint> grid;
  double sup_estimate = 0.0;  // +inf when a blowup was detected
  std::vector<double> sup_location;
  BlowupKind blowup_kind = BlowupKind::None;
};

// Symbolic cell of the base-family decision table.
struct TableCell {
  Relation relation = Relation::Unknown;
  Lambda lambda;                // table value or bound when one is known
  bool numeric_lambda = false;  // inclusion holds but lambda comes from decide_numeric
  bool route_numeric = false;   // table leaves this case open (d = 1 cells)
  bool boundary = false;        // parameters sit on a table condition boundary
  Method method = Method::SymbolicTable;
  std::string rule;
};

// Both kernels must be base catalog families of equal dimension.
TableCell table_lookup(const KernelSpec& k, const KernelSpec& g);

InclusionVerdict decide(const KernelSpec& k, const KernelSpec& g, const GridConfig& grid = {});

std::pair<InclusionVerdict, RatioProfile> decide_numeric(const KernelSpec& k, const KernelSpec& g,
                                                         const GridConfig& grid = {});

struct CrossValidation {
  InclusionVerdict symbolic;
  InclusionVerdict numeric;
  RatioProfile profile;
  bool relation_agrees = false;
  std::optional<double> lambda_rel_error;  // for Exact symbolic lambda
  bool bound_respected = true;             // numeric sup <= symbolic UpperBound
  bool advisory = false;                   // boundary parameters: numeric is advisory
};

class DisagreementError : public NumericError {
 public:
  DisagreementError(const std::string& what, InclusionVerdict symbolic, InclusionVerdict numeric)
      : NumericError(what), symbolic_(std::move(symbolic)), numeric_(std::move(numeric)) {}
  const InclusionVerdict& symbolic() const { return symbolic_; }
  const InclusionVerdict& numeric() const { return numeric_; }

 private:
  InclusionVerdict symbolic_;
  InclusionVerdict numeric_;
};

// Runs decide and decide_numeric. Throws DisagreementError when relations
// disagree or an exact lambda is off by more than 2%, unless the parameters
// sit on a table boundary.
CrossValidation cross_validate(const KernelSpec& k, const KernelSpec& g,
                               const GridConfig& grid = {});

}  // namespace rkhs
