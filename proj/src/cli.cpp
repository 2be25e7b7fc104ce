#include "rkhs/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "rkhs/errors.hpp"
#include "rkhs/hilbert_schmidt.hpp"
#include "rkhs/serialization.hpp"

namespace rkhs {

namespace {

struct KeyVals {
  std::string family;
  std::map<std::string, std::pair<std::string, std::size_t>> vals;  // value, column
};

// Splits `family:key=val,...`; columns in error messages are 1-based.
KeyVals split_spec(const std::string& text) {
  KeyVals kv;
  const auto colon = text.find(':');
  kv.family = text.substr(0, colon);
  if (kv.family.empty()) throw SpecParseError("spec '" + text + "': missing family name at column 1");
  if (colon == std::string::npos) return kv;
  std::size_t pos = colon + 1;
  while (pos <= text.size()) {
    const auto comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
      throw SpecParseError("spec '" + text + "': expected key=value at column " + std::to_string(pos + 1));
    }
    const std::string key = item.substr(0, eq);
    if (kv.vals.count(key)) {
      throw SpecParseError("spec '" + text + "': duplicate key '" + key + "' at column " + std::to_string(pos + 1));
    }
    kv.vals[key] = {item.substr(eq + 1), pos + eq + 2};
    pos = comma + 1;
  }
  return kv;
}

double to_number(const std::string& text, const std::string& key, const std::string& v, std::size_t col) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || used == 0) {
    throw SpecParseError("spec '" + text + "': value of '" + key + "' is not a number at column " +
                         std::to_string(col));
  }
  return x;
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text), kv_(split_spec(text)) {}

  const std::string& family() const { return kv_.family; }
  bool has(const std::string& key) const { return kv_.vals.count(key) > 0; }

  double number(const std::string& key) {
    auto it = kv_.vals.find(key);
    if (it == kv_.vals.end()) throw SpecParseError("spec '" + text_ + "': missing parameter '" + key + "'");
    used_.push_back(key);
    return to_number(text_, key, it->second.first, it->second.second);
  }
  double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }
  int integer(const std::string& key) {
    const double x = number(key);
    if (x != std::floor(x)) throw SpecParseError("spec '" + text_ + "': '" + key + "' must be an integer");
    return static_cast<int>(x);
  }
  std::string word(const std::string& key, const std::string& fallback) {
    auto it = kv_.vals.find(key);
    if (it == kv_.vals.end()) return fallback;
    used_.push_back(key);
    return it->second.first;
  }
  std::vector<double> list(const std::string& key) {
    auto it = kv_.vals.find(key);
    if (it == kv_.vals.end()) throw SpecParseError("spec '" + text_ + "': missing parameter '" + key + "'");
    used_.push_back(key);
    std::vector<double> out;
    std::stringstream ss(it->second.first);
    std::string item;
    std::size_t col = it->second.second;
    while (std::getline(ss, item, ';')) {
      out.push_back(to_number(text_, key, item, col));
      col += item.size() + 1;
    }
    return out;
  }
  void done() const {
    for (const auto& [k, v] : kv_.vals) {
      if (std::find(used_.begin(), used_.end(), k) == used_.end()) {
        throw SpecParseError("spec '" + text_ + "': unknown parameter '" + k + "' at column " +
                             std::to_string(v.second - k.size() - 1));
      }
    }
  }

 private:
  std::string text_;
  KeyVals kv_;
  std::vector<std::string> used_;
};

KernelSpec parse_hs(Reader& r, int dim) {
  const std::string kind = r.word("kind", "finite");
  const std::string index = r.word("index", "naturals");
  if (index != "naturals" && index != "lattice") throw SpecParseError("hs: index must be naturals or lattice");
  const IndexSet is = index == "naturals" ? IndexSet::Naturals : IndexSet::IntegerLattice;
  CoefficientSequence a = kind == "finite"
                              ? CoefficientSequence::finite(r.list("values"))
                              : CoefficientSequence::rule(rule_kind_from_string(kind), r.number("param"), is, dim);
  const std::string feat = r.word("features", is == IndexSet::IntegerLattice ? "lattice" : "monomials");
  FeatureSequence phi;
  if (feat == "monomials") {
    phi = FeatureSequence::monomials();
  } else if (feat == "lattice") {
    phi = FeatureSequence::lattice();
  } else {
    throw SpecParseError("hs: features must be monomials or lattice (use a spec file for explicit frequencies)");
  }
  HsKernel h{std::move(a), std::move(phi)};
  if (r.has("truncation")) h.truncation = r.integer("truncation");
  r.done();
  return kernels::hilbert_schmidt(std::move(h), dim);
}

// Base and HS nodes may omit dim in spec files; they inherit it from the parent.
void fill_dims(Record& r, int dim) {
  if (!r.is_object()) return;
  if (!r.contains("dim")) r["dim"] = dim;
  const int own = r["dim"].get<int>();
  if (!r.contains("params") || !r["params"].is_object()) return;
  auto& p = r["params"];
  const bool tensor = r.value("family", "") == "tensor";
  for (const char* key : {"inner", "first", "second"}) {
    if (p.contains(key) && !tensor) fill_dims(p[key], own);
  }
  if (p.contains("terms") && p["terms"].is_array()) {
    for (auto& t : p["terms"]) fill_dims(t, own);
  }
}

template <class E>
E parse_enum(const std::string& s, const std::map<std::string, E>& table, const char* what) {
  auto it = table.find(s);
  if (it == table.end()) throw SpecParseError(std::string("unknown ") + what + " '" + s + "'");
  return it->second;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

std::string lambda_text(const Lambda& l) {
  switch (l.kind) {
    case LambdaKind::Exact:
      return "Exact(" + fmt(l.value) + ")";
    case LambdaKind::UpperBound:
      return "UpperBound(" + fmt(l.value) + ")";
    case LambdaKind::Unbounded:
      return "Unbounded";
    case LambdaKind::NotApplicable:
      break;
  }
  return "NotApplicable";
}

void print_verdict(std::ostream& out, const InclusionVerdict& v) {
  out << "relation: " << to_string(v.relation) << "\n";
  out << "lambda:   " << lambda_text(v.lambda) << "\n";
  if (auto b = v.beta()) out << "beta:     " << fmt(*b) << "\n";
  out << "method:   " << to_string(v.method) << "\n";
  if (v.witness) {
    out << "witness:  " << to_string(v.witness->kind) << " at (";
    for (std::size_t i = 0; i < v.witness->location.size(); ++i) {
      out << (i ? ", " : "") << fmt(v.witness->location[i]);
    }
    out << ")";
    if (v.witness->index) out << " index " << *v.witness->index;
    out << " ratio " << fmt(v.witness->ratio) << "\n";
  }
  if (!v.reason.empty()) out << "reason:   " << v.reason << "\n";
}

void emit(std::ostream& out, const Record& r) { out << r.dump() << "\n"; }

const KernelSpec& need(const std::optional<KernelSpec>& k, const char* flag) {
  if (!k) throw SpecParseError(std::string("this command requires ") + flag);
  return *k;
}

int execute(const RunConfig& cfg, std::ostream& out) {
  const bool rec = cfg.output_format == OutputFormat::StructuredRecord;
  switch (cfg.command) {
    case Command::Decide: {
      const auto& k = need(cfg.kernel_k, "--k");
      const auto& g = need(cfg.kernel_g, "--g");
      const InclusionVerdict v = decide(k, g, cfg.grid);
      if (rec) {
        emit(out, Record{{"command", "decide"}, {"k", to_record(k)}, {"g", to_record(g)}, {"verdict", to_record(v)}});
      } else {
        out << describe(k) << " in " << describe(g) << " (d=" << k.dim << ")\n";
        print_verdict(out, v);
      }
      return 0;
    }
    case Command::RatioProfile: {
      const auto& k = need(cfg.kernel_k, "--k");
      const auto& g = need(cfg.kernel_g, "--g");
      const auto [v, prof] = decide_numeric(k, g, cfg.grid);
      if (rec) {
        emit(out, Record{{"command", "ratio-profile"},
                         {"k", to_record(k)},
                         {"g", to_record(g)},
                         {"verdict", to_record(v)},
                         {"profile", to_record(prof, cfg.full)}});
      } else {
        out << "density ratio " << describe(k) << " / " << describe(g) << " (d=" << k.dim << ")\n";
        print_verdict(out, v);
        out << "sup:      " << fmt(prof.sup_estimate) << " over " << prof.grid.size() << " probes\n";
        out << "blowup:   " << to_string(prof.blowup_kind) << "\n";
        if (cfg.full) {
          for (const auto& p : prof.grid) {
            for (double x : p.xi) out << fmt(x) << " ";
            out << fmt(p.ratio) << "\n";
          }
        }
      }
      return 0;
    }
    case Command::Certify: {
      const auto& k = need(cfg.kernel_k, "--k");
      const auto& g = need(cfg.kernel_g, "--g");
      double lambda = 0.0;
      if (cfg.lambda) {
        lambda = *cfg.lambda;
      } else {
        const InclusionVerdict v = decide(k, g, cfg.grid);
        if (!v.lambda.has_value()) throw SpecParseError("no lambda from decide; pass --lambda");
        lambda = v.lambda.value * (1.0 + 1e-6);
      }
      const auto certs = certify(k, g, lambda, cfg.sampler);
      int passed = 0;
      std::size_t worst = 0;
      for (std::size_t i = 0; i < certs.size(); ++i) {
        passed += certs[i].pass ? 1 : 0;
        if (certs[i].min_eigenvalue / certs[i].scale < certs[worst].min_eigenvalue / certs[worst].scale) worst = i;
      }
      if (rec) {
        Record fails = Record::array();
        for (std::size_t i = 0; i < certs.size(); ++i) {
          if (!certs[i].pass) fails.push_back(Record{{"trial", i}, {"certificate", to_record(certs[i])}});
        }
        Record r{{"command", "certify"},      {"k", to_record(k)},
                 {"g", to_record(g)},         {"lambda", number_record(lambda)},
                 {"trials", certs.size()},    {"passed", passed},
                 {"pass_fraction", pass_fraction(certs)},
                 {"worst", to_record(certs[worst], cfg.full)},
                 {"failures", fails}};
        emit(out, r);
      } else {
        out << "certify " << describe(k) << " << " << fmt(lambda) << " " << describe(g) << "\n";
        out << "passed " << passed << "/" << certs.size() << " trials\n";
        out << "worst min eigenvalue " << fmt(certs[worst].min_eigenvalue) << " (scale " << fmt(certs[worst].scale)
            << ", condition " << fmt(certs[worst].condition_number) << ")\n";
      }
      return 0;
    }
    case Command::Falsify: {
      const auto& k = need(cfg.kernel_k, "--k");
      const auto& g = need(cfg.kernel_g, "--g");
      const double lambda = cfg.lambda.value_or(1e6);
      const auto w = falsify(k, g, lambda, cfg.sampler);
      if (rec) {
        emit(out, Record{{"command", "falsify"},
                         {"k", to_record(k)},
                         {"g", to_record(g)},
                         {"lambda_max", number_record(lambda)},
                         {"falsified", w.has_value()},
                         {"witness", w ? to_record(*w) : Record(nullptr)}});
      } else if (w) {
        out << "falsified: y^T(" << fmt(lambda) << " G - K)y = " << fmt(w->value) << " on " << w->points.size()
            << " points (scale " << fmt(w->scale) << ")\n";
      } else {
        out << "not falsified at this budget (lambda_max " << fmt(lambda) << ")\n";
      }
      return 0;
    }
    case Command::HsQuery: {
      const auto& k = need(cfg.kernel_k, "--k");
      const auto& g = need(cfg.kernel_g, "--g");
      if (k.family() != Family::HilbertSchmidt || g.family() != Family::HilbertSchmidt) {
        throw UnsupportedFamily("hs command needs two Hilbert-Schmidt kernels");
      }
      const auto& a = k.as<family::HilbertSchmidt>().kernel;
      const auto& b = g.as<family::HilbertSchmidt>().kernel;
      const InclusionVerdict v = hs_inclusion(a.coeffs, b.coeffs);
      const EquivNorm e = hs_equiv_norm(a.coeffs, b.coeffs);
      if (rec) {
        emit(out, Record{{"command", "hs"},
                         {"k", to_record(k)},
                         {"g", to_record(g)},
                         {"verdict", to_record(v)},
                         {"equivalent_norm", to_record(e)}});
      } else {
        out << describe(k) << " in " << describe(g) << "\n";
        print_verdict(out, v);
        out << "equivalent norm: " << (e.holds ? "yes" : "no");
        if (e.holds) out << " (alpha " << fmt(e.alpha) << ", beta " << fmt(e.beta) << ")";
        out << "\n";
      }
      return 0;
    }
    case Command::Table: {
      const TableReport t = reproduce_table(cfg.dim, cfg.table, true, cfg.grid);
      if (rec) {
        emit(out, Record{{"command", "table"}, {"report", to_record(t)}});
        return 0;
      }
      const char* names[] = {"B", "G", "E", "cE", "M", "A"};
      out << "d=" << t.dim << "  rows: K, columns: G, cell: H_K vs H_G\n";
      out << std::setw(6) << "";
      for (const char* n : names) out << std::setw(6) << n;
      out << "\n";
      for (std::size_t i = 0; i < t.cells.size(); ++i) {
        out << std::setw(6) << names[i];
        for (const auto& c : t.cells[i]) out << std::setw(6) << relation_symbol(c.verdict) + (c.agrees ? "" : "!");
        out << "\n";
      }
      out << "\n";
      for (std::size_t i = 0; i < t.cells.size(); ++i) {
        for (std::size_t j = 0; j < t.cells[i].size(); ++j) {
          const auto& c = t.cells[i][j];
          if (!c.verdict.lambda.has_value()) continue;
          out << t.labels[i] << " in " << t.labels[j] << ": " << lambda_text(c.verdict.lambda);
          if (c.numeric_sup) out << ", numeric sup " << fmt(*c.numeric_sup);
          out << "\n";
        }
      }
      out << "numeric agreement " << t.agreement_count() << "/36\n";
      return 0;
    }
  }
  return 0;
}

}  // namespace

void RunConfig::validate() const {
  sampler.validate();
  grid.validate();
  if (dim < 1) throw DomainError("--dim must be positive");
  if (lambda && !(*lambda > 0.0)) throw DomainError("--lambda must be positive");
  const bool two = command != Command::Table;
  if (two && (!kernel_k || !kernel_g)) throw SpecParseError("this command requires both --k and --g");
}

KernelSpec parse_spec_text(const std::string& text, int dim) {
  Reader r(text);
  if (r.has("dim")) dim = r.integer("dim");
  const std::string f = r.family();
  KernelSpec k = [&] {
    if (f == "gaussian") return kernels::gaussian(r.number("gamma"), dim);
    if (f == "expl1") return kernels::exp_l1(r.number("sigma"), dim);
    if (f == "expl2") return kernels::exp_l2(r.number("sigma"), dim);
    if (f == "imq") return kernels::inverse_multiquadric(r.number("beta"), dim);
    if (f == "bspline") return kernels::bspline(r.integer("p"), dim);
    if (f == "anova") return kernels::anova(r.number("tau"), dim);
    if (f == "sinc") return kernels::sinc(dim);
    if (f == "hs") return parse_hs(r, dim);
    throw SpecParseError("spec '" + text + "': unknown family '" + f +
                         "' at column 1 (combinators need a spec file)");
  }();
  r.done();
  return k;
}

KernelSpec load_spec(const std::string& spec_or_path, int dim) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(spec_or_path, ec)) return parse_spec_text(spec_or_path, dim);
  std::ifstream in(spec_or_path);
  if (!in) throw SpecParseError("cannot open spec file '" + spec_or_path + "'");
  Record r;
  try {
    r = Record::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecParseError(spec_or_path + ": " + e.what());
  }
  fill_dims(r, dim);
  try {
    return spec_from_record(r);
  } catch (const nlohmann::json::exception& e) {
    throw SpecParseError(spec_or_path + ": " + e.what());
  }
}

TableParams parse_table_params(const std::string& text) {
  Reader r("table:" + text);
  TableParams p;
  p.gamma = r.number_or("gamma", p.gamma);
  p.sigma1 = r.number_or("sigma1", p.sigma1);
  p.sigma2 = r.number_or("sigma2", p.sigma2);
  p.beta = r.number_or("beta", p.beta);
  p.tau = r.number_or("tau", p.tau);
  if (r.has("p")) p.p = r.integer("p");
  r.done();
  p.validate();
  return p;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inclusion relations between reproducing kernel Hilbert spaces"};
  std::string k_text, g_text, cmd = "decide", format = "text", params;
  std::optional<std::int64_t> seed;
  std::optional<double> lambda;
  int dim = 1;
  RunConfig cfg;
  app.add_option("--k", k_text, "kernel K: family:key=val,... or spec file");
  app.add_option("--g", g_text, "kernel G: family:key=val,... or spec file");
  app.add_option("--dim", dim, "input dimension");
  app.add_option("--cmd", cmd, "decide | certify | falsify | ratio-profile | hs | table");
  app.add_option("--seed", seed, "RNG seed (falls back to RKHS_SEED)");
  app.add_option("--points", cfg.sampler.n_points, "points per trial");
  app.add_option("--trials", cfg.sampler.n_trials, "number of trials");
  app.add_option("--box", cfg.sampler.box_radius, "sampling box radius");
  app.add_option("--format", format, "text | record");
  app.add_option("--lambda", lambda, "lambda for certify, lambda_max for falsify");
  app.add_option("--params", params, "table parameters gamma=,sigma1=,sigma2=,beta=,tau=,p=");
  app.add_flag("--full", cfg.full, "include grids and point sets");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    cfg.command = parse_enum<Command>(cmd,
                                      {{"decide", Command::Decide},
                                       {"certify", Command::Certify},
                                       {"falsify", Command::Falsify},
                                       {"ratio-profile", Command::RatioProfile},
                                       {"hs", Command::HsQuery},
                                       {"table", Command::Table}},
                                      "command");
    cfg.output_format = parse_enum<OutputFormat>(
        format, {{"text", OutputFormat::HumanText}, {"record", OutputFormat::StructuredRecord}}, "format");
    cfg.dim = dim;
    cfg.lambda = lambda;
    if (seed) {
      cfg.sampler.rng_seed = static_cast<std::uint64_t>(*seed);
    } else if (const char* env = std::getenv("RKHS_SEED")) {
      try {
        cfg.sampler.rng_seed = std::stoull(env);
      } catch (const std::exception&) {
        throw SpecParseError(std::string("RKHS_SEED is not an integer: '") + env + "'");
      }
    }
    if (!k_text.empty()) cfg.kernel_k = load_spec(k_text, dim);
    if (!g_text.empty()) cfg.kernel_g = load_spec(g_text, dim);
    if (!params.empty()) cfg.table = parse_table_params(params);
    cfg.validate();
    return execute(cfg, out);
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace rkhs
