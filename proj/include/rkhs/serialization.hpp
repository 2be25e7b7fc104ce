#pragma once

#include <string>

#include "json.hpp"
#include "rkhs/hilbert_schmidt.hpp"
#include "rkhs/inclusion_engine.hpp"
#include "rkhs/kernel_spec.hpp"
#include "rkhs/psd_certifier.hpp"
#include "rkhs/table.hpp"
#include "rkhs/verdict.hpp"

namespace rkhs {

using Record = nlohmann::ordered_json;

// Non-finite numbers are written as the strings "inf", "-inf", "nan".
Record number_record(double v);
double number_from_record(const Record& r);

Record to_record(const KernelSpec& k);
KernelSpec spec_from_record(const Record& r);

Record to_record(const CoefficientSequence& a);
CoefficientSequence sequence_from_record(const Record& r);
Record to_record(const FeatureSequence& phi);
FeatureSequence features_from_record(const Record& r);

Record to_record(const Lambda& l);
Lambda lambda_from_record(const Record& r);
Record to_record(const Witness& w);
Witness witness_from_record(const Record& r);
Record to_record(const Provenance& p);
Provenance provenance_from_record(const Record& r);
Record to_record(const InclusionVerdict& v);
InclusionVerdict verdict_from_record(const Record& r);

Record to_record(const RatioProfile& p, bool with_grid = false);
Record to_record(const PsdCertificate& c, bool with_points = false);
Record to_record(const ViolationWitness& w);
Record to_record(const TableReport& t);
Record to_record(const EquivNorm& e);

}  // namespace rkhs
