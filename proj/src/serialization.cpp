#include "rkhs/serialization.hpp"

#include <cmath>
#include <limits>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {

const Record& field(const Record& r, const char* key) {
  if (!r.is_object() || !r.contains(key)) {
    throw DomainError(std::string("record is missing field '") + key + "'");
  }
  return r.at(key);
}

double num_field(const Record& r, const char* key) { return number_from_record(field(r, key)); }

Record point_record(const std::vector<double>& p) {
  Record a = Record::array();
  for (double v : p) a.push_back(number_record(v));
  return a;
}

Record point_record(const Point& p) { return point_record(std::vector<double>(p.data(), p.data() + p.size())); }

std::vector<double> doubles(const Record& r) {
  if (!r.is_array()) throw DomainError("expected a numeric array");
  std::vector<double> out;
  for (const auto& v : r) out.push_back(number_from_record(v));
  return out;
}

KernelSpec child(const Record& params, const char* key) { return spec_from_record(field(params, key)); }

}  // namespace

Record number_record(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_record(const Record& r) {
  if (r.is_number()) return r.get<double>();
  if (r.is_string()) {
    const auto s = r.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw DomainError("expected a number, got " + r.dump());
}

Record to_record(const CoefficientSequence& a) {
  Record r;
  if (a.is_finite()) {
    r["kind"] = "finite";
    r["values"] = point_record(a.values());
  } else {
    r["kind"] = to_string(a.rule_def().kind);
    r["params"] = Record{{"param", a.rule_def().param}};
  }
  r["index_set"] = a.index_set == IndexSet::Naturals ? "naturals" : "lattice";
  if (a.index_set == IndexSet::IntegerLattice) r["lattice_dim"] = a.lattice_dim;
  return r;
}

CoefficientSequence sequence_from_record(const Record& r) {
  const auto kind = field(r, "kind").get<std::string>();
  const std::string is = r.contains("index_set") ? r.at("index_set").get<std::string>() : "naturals";
  if (is != "naturals" && is != "lattice") throw DomainError("index_set must be 'naturals' or 'lattice'");
  const IndexSet index_set = is == "naturals" ? IndexSet::Naturals : IndexSet::IntegerLattice;
  if (kind == "finite") {
    if (index_set != IndexSet::Naturals) throw DomainError("finite sequences are indexed by the naturals");
    return CoefficientSequence::finite(doubles(field(r, "values")));
  }
  const int ld = r.contains("lattice_dim") ? r.at("lattice_dim").get<int>() : 1;
  return CoefficientSequence::rule(rule_kind_from_string(kind), num_field(field(r, "params"), "param"), index_set,
                                   ld);
}

Record to_record(const FeatureSequence& phi) {
  Record r;
  if (phi.kind == FeatureKind::Monomials) {
    r["kind"] = "monomials";
  } else if (phi.frequencies.empty()) {
    r["kind"] = "lattice";
  } else {
    r["kind"] = "exponentials";
    Record f = Record::array();
    for (const auto& t : phi.frequencies) f.push_back(point_record(t));
    r["frequencies"] = f;
  }
  return r;
}

FeatureSequence features_from_record(const Record& r) {
  const auto kind = field(r, "kind").get<std::string>();
  if (kind == "monomials") return FeatureSequence::monomials();
  if (kind == "lattice") return FeatureSequence::lattice();
  if (kind == "exponentials") {
    std::vector<std::vector<double>> f;
    for (const auto& t : field(r, "frequencies")) f.push_back(doubles(t));
    return FeatureSequence::exponentials(std::move(f));
  }
  throw DomainError("unknown feature kind '" + kind + "'");
}

Record to_record(const KernelSpec& k) {
  Record r;
  r["family"] = to_string(k.family());
  Record p = Record::object();
  std::visit(
      [&](const auto& x) {
        using namespace family;
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Gaussian>) {
          p["gamma"] = x.gamma;
        } else if constexpr (std::is_same_v<T, ExpL1> || std::is_same_v<T, ExpL2>) {
          p["sigma"] = x.sigma;
        } else if constexpr (std::is_same_v<T, InverseMultiquadric>) {
          p["beta"] = x.beta;
        } else if constexpr (std::is_same_v<T, BSpline>) {
          p["p"] = x.p;
        } else if constexpr (std::is_same_v<T, Anova>) {
          p["tau"] = x.tau;
        } else if constexpr (std::is_same_v<T, HilbertSchmidt>) {
          p["coeffs"] = to_record(x.kernel.coeffs);
          p["features"] = to_record(x.kernel.features);
          p["truncation"] = x.kernel.truncation;
          if (x.kernel.features.kind == FeatureKind::ComplexExponentials) p["domain"] = "[0,2pi]^d";
        } else if constexpr (std::is_same_v<T, Sum>) {
          Record t = Record::array();
          for (const auto& term : x.terms) t.push_back(to_record(*term));
          p["terms"] = t;
        } else if constexpr (std::is_same_v<T, Scaled>) {
          p["c"] = x.c;
          p["inner"] = to_record(*x.inner);
        } else if constexpr (std::is_same_v<T, Product> || std::is_same_v<T, Tensor>) {
          p["first"] = to_record(*x.first);
          p["second"] = to_record(*x.second);
        } else if constexpr (std::is_same_v<T, ExpComposed>) {
          p["inner"] = to_record(*x.inner);
        } else if constexpr (std::is_same_v<T, SeriesComposed>) {
          p["coeffs"] = point_record(x.coeffs);
          p["inner"] = to_record(*x.inner);
        }
      },
      k.node);
  r["params"] = p;
  r["dim"] = k.dim;
  return r;
}

KernelSpec spec_from_record(const Record& r) {
  const Family f = family_from_string(field(r, "family").get<std::string>());
  const Record empty = Record::object();
  const Record& p = r.contains("params") ? r.at("params") : empty;
  auto dim = [&] { return field(r, "dim").get<int>(); };
  switch (f) {
    case Family::Gaussian:
      return kernels::gaussian(num_field(p, "gamma"), dim());
    case Family::ExpL1:
      return kernels::exp_l1(num_field(p, "sigma"), dim());
    case Family::ExpL2:
      return kernels::exp_l2(num_field(p, "sigma"), dim());
    case Family::InverseMultiquadric:
      return kernels::inverse_multiquadric(num_field(p, "beta"), dim());
    case Family::BSpline:
      return kernels::bspline(field(p, "p").get<int>(), dim());
    case Family::Anova:
      return kernels::anova(num_field(p, "tau"), dim());
    case Family::Sinc:
      return kernels::sinc(dim());
    case Family::HilbertSchmidt: {
      HsKernel h{sequence_from_record(field(p, "coeffs")), features_from_record(field(p, "features"))};
      if (p.contains("truncation")) h.truncation = p.at("truncation").get<long long>();
      return kernels::hilbert_schmidt(std::move(h), dim());
    }
    case Family::Sum: {
      std::vector<KernelSpec> terms;
      for (const auto& t : field(p, "terms")) terms.push_back(spec_from_record(t));
      return kernels::sum(std::move(terms));
    }
    case Family::Scaled:
      return kernels::scaled(num_field(p, "c"), child(p, "inner"));
    case Family::Product:
      return kernels::product(child(p, "first"), child(p, "second"));
    case Family::Tensor:
      return kernels::tensor(child(p, "first"), child(p, "second"));
    case Family::ExpComposed:
      return kernels::exp_composed(child(p, "inner"));
    case Family::SeriesComposed:
      return kernels::series_composed(doubles(field(p, "coeffs")), child(p, "inner"));
  }
  throw UnsupportedFamily("unhandled family");
}

Record to_record(const Lambda& l) {
  Record r;
  r["kind"] = to_string(l.kind);
  r["value"] = l.kind == LambdaKind::NotApplicable ? Record(nullptr) : number_record(l.value);
  return r;
}

Lambda lambda_from_record(const Record& r) {
  Lambda l;
  l.kind = lambda_kind_from_string(field(r, "kind").get<std::string>());
  if (l.kind == LambdaKind::Unbounded) {
    l = Lambda::unbounded();
  } else if (l.kind != LambdaKind::NotApplicable) {
    l.value = num_field(r, "value");
  }
  return l;
}

Record to_record(const Witness& w) {
  Record r;
  r["kind"] = to_string(w.kind);
  r["location"] = point_record(w.location);
  r["ratio"] = number_record(w.ratio);
  if (w.index) r["index"] = *w.index;
  return r;
}

Witness witness_from_record(const Record& r) {
  Witness w;
  w.kind = blowup_from_string(field(r, "kind").get<std::string>());
  w.location = doubles(field(r, "location"));
  w.ratio = num_field(r, "ratio");
  if (r.contains("index")) w.index = r.at("index").get<long long>();
  return w;
}

Record to_record(const Provenance& p) {
  Record r;
  r["rule"] = p.rule;
  r["detail"] = p.detail;
  Record in = Record::array();
  for (const auto& c : p.inputs) in.push_back(to_record(c));
  r["inputs"] = in;
  return r;
}

Provenance provenance_from_record(const Record& r) {
  Provenance p{field(r, "rule").get<std::string>(), field(r, "detail").get<std::string>(), {}};
  for (const auto& c : field(r, "inputs")) p.inputs.push_back(provenance_from_record(c));
  return p;
}

Record to_record(const InclusionVerdict& v) {
  Record r;
  r["relation"] = to_string(v.relation);
  r["lambda"] = to_record(v.lambda);
  r["method"] = to_string(v.method);
  r["witness"] = v.witness ? to_record(*v.witness) : Record(nullptr);
  const auto b = v.beta();
  r["beta"] = b ? number_record(*b) : Record(nullptr);
  r["reason"] = v.reason;
  r["provenance"] = v.provenance ? to_record(*v.provenance) : Record(nullptr);
  return r;
}

InclusionVerdict verdict_from_record(const Record& r) {
  InclusionVerdict v;
  v.relation = relation_from_string(field(r, "relation").get<std::string>());
  v.lambda = lambda_from_record(field(r, "lambda"));
  v.method = method_from_string(field(r, "method").get<std::string>());
  if (r.contains("witness") && !r.at("witness").is_null()) v.witness = witness_from_record(r.at("witness"));
  if (r.contains("reason")) v.reason = r.at("reason").get<std::string>();
  if (r.contains("provenance") && !r.at("provenance").is_null()) {
    v.provenance = provenance_from_record(r.at("provenance"));
  }
  return v;
}

Record to_record(const RatioProfile& p, bool with_grid) {
  Record r;
  r["sup_estimate"] = number_record(p.sup_estimate);
  r["sup_location"] = point_record(p.sup_location);
  r["blowup_kind"] = to_string(p.blowup_kind);
  r["grid_size"] = p.grid.size();
  if (with_grid) {
    Record g = Record::array();
    for (const auto& q : p.grid) g.push_back(Record{{"xi", point_record(q.xi)}, {"ratio", number_record(q.ratio)}});
    r["grid"] = g;
  }
  return r;
}

Record to_record(const PsdCertificate& c, bool with_points) {
  Record r;
  r["lambda_tested"] = number_record(c.lambda_tested);
  r["min_eigenvalue"] = number_record(c.min_eigenvalue);
  r["tolerance"] = c.tolerance;
  r["scale"] = number_record(c.scale);
  r["pass"] = c.pass;
  r["condition_number"] = number_record(c.condition_number);
  r["resamples"] = c.resamples;
  if (with_points) {
    Record pts = Record::array();
    for (const auto& x : c.points) pts.push_back(point_record(x));
    r["points"] = pts;
  }
  return r;
}

Record to_record(const ViolationWitness& w) {
  Record r;
  r["value"] = number_record(w.value);
  r["scale"] = number_record(w.scale);
  Record pts = Record::array();
  for (const auto& x : w.points) pts.push_back(point_record(x));
  r["points"] = pts;
  r["y"] = point_record(w.y);
  return r;
}

Record to_record(const TableReport& t) {
  Record r;
  r["dim"] = t.dim;
  r["params"] = Record{{"gamma", t.params.gamma}, {"sigma1", t.params.sigma1}, {"sigma2", t.params.sigma2},
                       {"beta", t.params.beta},   {"tau", t.params.tau},       {"p", t.params.p}};
  r["labels"] = t.labels;
  Record rows = Record::array();
  for (const auto& row : t.cells) {
    Record cells = Record::array();
    for (const auto& c : row) {
      Record e;
      e["verdict"] = to_record(c.verdict);
      e["cross_checked"] = c.cross_checked;
      e["agrees"] = c.agrees;
      e["advisory"] = c.advisory;
      e["numeric_sup"] = c.numeric_sup ? number_record(*c.numeric_sup) : Record(nullptr);
      e["note"] = c.note;
      cells.push_back(e);
    }
    rows.push_back(cells);
  }
  r["cells"] = rows;
  r["agreement"] = t.agreement_count();
  return r;
}

Record to_record(const EquivNorm& e) {
  return Record{{"holds", e.holds},
                {"alpha", number_record(e.alpha)},
                {"beta", number_record(e.beta)},
                {"reason", e.reason}};
}

}  // namespace rkhs
