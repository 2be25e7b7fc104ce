#include "rkhs/hilbert_schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rkhs/errors.hpp"

namespace rkhs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr long long kScanLength = 100000;
constexpr long long kTailWindow = 1000;

double binomial(double q, long long n) {
  double r = 1.0;
  for (long long k = 1; k <= n; ++k) {
    r = r * (q - static_cast<double>(n) + static_cast<double>(k)) / static_cast<double>(k);
  }
  return r;
}

bool is_square(long long m) {
  auto r = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(m))));
  for (long long c = std::max(0LL, r - 1); c <= r + 1; ++c) {
    if (c * c == m) return true;
  }
  return false;
}

bool representable(long long m, int d) {
  if (m < 0) return false;
  if (m == 0) return true;
  switch (d) {
    case 1:
      return is_square(m);
    case 2:
      for (long long a = 0; a * a <= m; ++a) {
        if (is_square(m - a * a)) return true;
      }
      return false;
    case 3:
      while (m % 4 == 0) m /= 4;
      return m % 8 != 7;
    default:
      return true;
  }
}

// Decay order used by the closed-form ratio analysis; -1 when not applicable.
int decay_order(const CoefficientRule& r) {
  switch (r.kind) {
    case RuleKind::PolynomialDecay: return 0;
    case RuleKind::Exponential: return 1;
    case RuleKind::Geometric: return 2;
    default: return -1;
  }
}

struct Extremum {
  enum class Kind { Finite, PlusInfinity, Undecided } kind = Kind::Undecided;
  double log_value = 0.0;
  double rho = 0.0;
};

double log_rule(const CoefficientSequence& s, double rho) { return s.log_at_norm(rho); }

// Admissible index norms adjacent to rho: integers on the naturals, sqrt(m)
// with m a sum of d squares on the lattice.
std::vector<double> neighbours(const CoefficientSequence& s, double rho) {
  rho = std::max(rho, 0.0);
  if (s.index_set == IndexSet::Naturals) {
    return {std::floor(rho), std::ceil(rho)};
  }
  const auto m0 = static_cast<long long>(std::floor(rho * rho));
  long long lo = m0;
  while (!representable(lo, s.lattice_dim)) --lo;
  long long hi = m0 + 1;
  while (!representable(hi, s.lattice_dim)) ++hi;
  return {std::sqrt(static_cast<double>(lo)), std::sqrt(static_cast<double>(hi))};
}

Extremum scan_sup(const CoefficientSequence& a, const CoefficientSequence& b) {
  Extremum e;
  e.log_value = -kInf;
  std::vector<double> tail;
  tail.reserve(static_cast<std::size_t>(kTailWindow) + 1);
  for (long long n = 0; n <= kScanLength; ++n) {
    const double rho = static_cast<double>(n);
    const double l = log_rule(a, rho) - log_rule(b, rho);
    if (l > e.log_value) {
      e.log_value = l;
      e.rho = rho;
    }
    if (n >= kScanLength - kTailWindow) tail.push_back(l);
  }
  bool falling = true;
  bool rising_convex = true;
  for (std::size_t i = 1; i < tail.size(); ++i) {
    const double inc = tail[i] - tail[i - 1];
    falling = falling && inc <= 0.0;
    rising_convex = rising_convex && inc > 0.0 && (i < 2 || inc >= tail[i - 1] - tail[i - 2] - 1e-12);
  }
  if (falling) {
    e.kind = Extremum::Kind::Finite;
  } else if (rising_convex) {
    e.kind = Extremum::Kind::PlusInfinity;
  }
  return e;
}

// sup over the index set of log(a_n / b_n) for two infinite-support rules.
Extremum sup_log_ratio(const CoefficientSequence& a, const CoefficientSequence& b) {
  const CoefficientRule& ra = a.rule_def();
  const CoefficientRule& rb = b.rule_def();
  const int oa = decay_order(ra);
  const int ob = decay_order(rb);
  Extremum e;
  if (oa < 0 || ob < 0) {
    return scan_sup(a, b);
  }
  if (oa == ob) {
    if (ra.param >= rb.param) {
      e.kind = Extremum::Kind::Finite;
      e.log_value = 0.0;
      e.rho = 0.0;
    } else {
      e.kind = Extremum::Kind::PlusInfinity;
    }
    return e;
  }
  if (oa < ob) {
    e.kind = Extremum::Kind::PlusInfinity;
    return e;
  }
  // a decays strictly faster: log ratio is concave in rho with one stationary point.
  const double A = ra.param;
  const double B = rb.param;
  double rho_star = 0.0;
  if (ra.kind == RuleKind::Geometric && rb.kind == RuleKind::Exponential) {
    rho_star = B / (2.0 * A);
  } else if (ra.kind == RuleKind::Geometric) {
    rho_star = 0.5 * (-1.0 + std::sqrt(1.0 + 2.0 * B / A));
  } else {
    rho_star = B / A - 1.0;
  }
  e.kind = Extremum::Kind::Finite;
  e.log_value = -kInf;
  for (double rho : neighbours(a, rho_star)) {
    const double l = log_rule(a, rho) - log_rule(b, rho);
    if (l > e.log_value) {
      e.log_value = l;
      e.rho = rho;
    }
  }
  return e;
}

// First axis index where a_n/b_n exceeds 1e8, as a witness for divergence.
Witness divergence_witness(const CoefficientSequence& a, const CoefficientSequence& b) {
  Witness w;
  w.kind = BlowupKind::AtInfinity;
  double rho = 1.0;
  double l = 0.0;
  for (int i = 0; i < 62; ++i, rho *= 2.0) {
    l = log_rule(a, rho) - log_rule(b, rho);
    if (l > std::log(1e8)) break;
  }
  w.ratio = std::exp(l);
  if (a.index_set == IndexSet::Naturals) {
    w.index = static_cast<long long>(rho);
    w.location = {rho};
  } else {
    w.location.assign(static_cast<std::size_t>(a.lattice_dim), 0.0);
    w.location[0] = rho;
  }
  return w;
}

void require_nonnegative(const CoefficientSequence& s, const char* what) {
  if (!hs_is_kernel(s)) {
    throw NegativeCoefficient(std::string(what) + " has a negative coefficient");
  }
}

void require_compatible(const CoefficientSequence& a, const CoefficientSequence& b) {
  if (a.index_set != b.index_set ||
      (a.index_set == IndexSet::IntegerLattice && a.lattice_dim != b.lattice_dim)) {
    throw DomainError("coefficient sequences live on different index sets");
  }
}

// First index k with a_k > 0 = b_k (naturals only; lattice rules are positive).
std::optional<long long> support_violation(const CoefficientSequence& a,
                                           const CoefficientSequence& b) {
  const auto sb = b.support_bound();
  if (!sb) return std::nullopt;
  const auto sa = a.support_bound();
  const long long limit = sa ? std::max(*sa, *sb) : *sb + 1;
  for (long long n = 0; n < limit; ++n) {
    if (a.at(n) > 0.0 && !(b.at(n) > 0.0)) return n;
  }
  return std::nullopt;
}

}  // namespace

CoefficientSequence CoefficientSequence::finite(std::vector<double> values) {
  CoefficientSequence s;
  s.index_set = IndexSet::Naturals;
  s.source = std::move(values);
  return s;
}

CoefficientSequence CoefficientSequence::rule(RuleKind kind, double param, IndexSet index_set,
                                              int lattice_dim) {
  if (lattice_dim < 1) {
    throw DomainError("lattice dimension must be positive");
  }
  switch (kind) {
    case RuleKind::Geometric:
    case RuleKind::Exponential:
    case RuleKind::PolynomialDecay:
      if (!(param > 0.0) || !std::isfinite(param)) {
        throw DomainError(to_string(kind) + " rule needs a positive parameter");
      }
      break;
    case RuleKind::Binomial:
      if (!(param >= 0.0) || param != std::floor(param) || param > 1e6) {
        throw DomainError("binomial rule needs a nonnegative integer order");
      }
      [[fallthrough]];
    case RuleKind::InverseFactorial:
      if (index_set != IndexSet::Naturals) {
        throw DomainError(to_string(kind) + " rule is defined on the naturals only");
      }
      break;
  }
  CoefficientSequence s;
  s.index_set = index_set;
  s.lattice_dim = index_set == IndexSet::Naturals ? 1 : lattice_dim;
  s.source = CoefficientRule{kind, kind == RuleKind::InverseFactorial ? 0.0 : param};
  return s;
}

std::optional<long long> CoefficientSequence::support_bound() const {
  if (is_finite()) return static_cast<long long>(values().size());
  if (rule_def().kind == RuleKind::Binomial) return static_cast<long long>(rule_def().param) + 1;
  return std::nullopt;
}

double CoefficientSequence::at(long long n) const {
  if (n < 0) return 0.0;
  if (is_finite()) {
    const auto& v = values();
    return n < static_cast<long long>(v.size()) ? v[static_cast<std::size_t>(n)] : 0.0;
  }
  const auto& r = rule_def();
  if (r.kind == RuleKind::Binomial) {
    return static_cast<double>(n) <= r.param ? binomial(r.param, n) : 0.0;
  }
  return std::exp(log_at_norm(static_cast<double>(n)));
}

double CoefficientSequence::log_at_norm(double rho) const {
  if (is_finite()) {
    const double n = std::round(rho);
    const double v = at(static_cast<long long>(n));
    return v > 0.0 ? std::log(v) : -kInf;
  }
  const auto& r = rule_def();
  switch (r.kind) {
    case RuleKind::Geometric: return -r.param * rho * rho;
    case RuleKind::Exponential: return -r.param * rho;
    case RuleKind::PolynomialDecay: return -r.param * std::log1p(rho);
    case RuleKind::Binomial:
      if (rho > r.param) return -kInf;
      return std::lgamma(r.param + 1.0) - std::lgamma(rho + 1.0) - std::lgamma(r.param - rho + 1.0);
    case RuleKind::InverseFactorial: return -std::lgamma(rho + 1.0);
  }
  return -kInf;
}

FeatureSequence FeatureSequence::exponentials(std::vector<std::vector<double>> freqs) {
  for (std::size_t i = 0; i < freqs.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (freqs[i] == freqs[j]) {
        throw DomainError("exponential feature frequencies must be pairwise distinct");
      }
    }
  }
  return {FeatureKind::ComplexExponentials, std::move(freqs)};
}

void validate_hs(const CoefficientSequence& a, const FeatureSequence& phi, int dim) {
  if (a.is_finite()) {
    if (phi.kind == FeatureKind::ComplexExponentials) {
      if (phi.frequencies.size() < a.values().size()) {
        throw DomainError("finite sequence needs one frequency per coefficient");
      }
      for (const auto& t : phi.frequencies) {
        if (static_cast<int>(t.size()) != dim) {
          throw DimensionMismatch("frequency dimension differs from kernel dimension");
        }
      }
    }
    return;
  }
  const auto& r = a.rule_def();
  if (a.index_set == IndexSet::IntegerLattice) {
    if (phi.kind != FeatureKind::ComplexExponentials || !phi.frequencies.empty()) {
      throw DomainError("lattice sequences pair with lattice exponential features");
    }
    if (a.lattice_dim != dim) {
      throw DimensionMismatch("lattice dimension differs from kernel dimension");
    }
    if (r.kind == RuleKind::PolynomialDecay && !(r.param > dim)) {
      throw DivergenceError("polynomial-decay rule on Z^d needs alpha > d");
    }
    return;
  }
  if (phi.kind != FeatureKind::Monomials) {
    throw DomainError("rule sequences on the naturals pair with monomial features");
  }
  if (r.kind == RuleKind::PolynomialDecay && !(r.param > 1.0)) {
    throw DivergenceError("polynomial-decay rule on the naturals needs alpha > 1");
  }
}

HsValue hs_eval(const CoefficientSequence& a, const FeatureSequence& phi, const Point& x,
                const Point& y, long long truncation) {
  if (x.size() != y.size()) {
    throw DimensionMismatch("hs_eval: points differ in dimension");
  }
  validate_hs(a, phi, static_cast<int>(x.size()));
  if (truncation < 1) {
    throw DomainError("hs_eval needs truncation >= 1");
  }

  if (a.is_finite()) {
    const auto& v = a.values();
    double sum = 0.0;
    if (phi.kind == FeatureKind::Monomials) {
      const double z = x.dot(y);
      double zn = 1.0;
      for (double c : v) {
        sum += c * zn;
        zn *= z;
      }
    } else {
      for (std::size_t n = 0; n < v.size(); ++n) {
        double arg = 0.0;
        for (Eigen::Index j = 0; j < x.size(); ++j) {
          arg += phi.frequencies[n][static_cast<std::size_t>(j)] * (x[j] - y[j]);
        }
        sum += v[n] * std::cos(arg);
      }
    }
    return {sum, 0.0};
  }

  const auto& r = a.rule_def();
  if (a.index_set == IndexSet::Naturals) {
    const double z = x.dot(y);
    const double az = std::abs(z);
    if ((r.kind == RuleKind::Exponential && !(az < std::exp(r.param))) ||
        (r.kind == RuleKind::PolynomialDecay && az > 1.0)) {
      throw DivergenceError("power series diverges at (x,y) = " + std::to_string(z));
    }
    double sum = 0.0;
    double zn = 1.0;
    for (long long n = 0; n <= truncation; ++n) {
      sum += a.at(n) * zn;
      zn *= z;
    }
    if (r.kind == RuleKind::Binomial) {
      double tail = 0.0;
      for (long long n = truncation + 1; static_cast<double>(n) <= r.param; ++n) {
        tail += a.at(n) * std::pow(az, static_cast<double>(n));
      }
      return {sum, tail};
    }
    auto term = [&](long long m) { return std::exp(a.log_at_norm(static_cast<double>(m))) * std::pow(az, static_cast<double>(m)); };
    double tail = 0.0;
    long long m = truncation + 1;
    for (; m <= truncation + kScanLength; ++m) {
      const double t = term(m);
      tail += t;
      if (t <= 1e-18 * (std::abs(sum) + tail) || t == 0.0) break;
    }
    if (r.kind == RuleKind::PolynomialDecay) {
      tail += std::pow(1.0 + static_cast<double>(m), 1.0 - r.param) / (r.param - 1.0);
    } else {
      const double t0 = term(m);
      const double q = t0 > 0.0 ? term(m + 1) / t0 : 0.0;
      tail += q < 1.0 ? t0 * q / (1.0 - q) : kInf;
    }
    return {sum, tail};
  }

  // Integer lattice: sum over the cube |n|_inf <= truncation.
  const int d = a.lattice_dim;
  const long long N = truncation;
  std::vector<long long> n(static_cast<std::size_t>(d), -N);
  double sum = 0.0;
  for (;;) {
    double norm2 = 0.0;
    double arg = 0.0;
    for (int j = 0; j < d; ++j) {
      const auto nj = static_cast<double>(n[static_cast<std::size_t>(j)]);
      norm2 += nj * nj;
      arg += nj * (x[j] - y[j]);
    }
    sum += std::exp(a.log_at_norm(std::sqrt(norm2))) * std::cos(arg);
    int j = 0;
    while (j < d && n[static_cast<std::size_t>(j)] == N) {
      n[static_cast<std::size_t>(j)] = -N;
      ++j;
    }
    if (j == d) break;
    ++n[static_cast<std::size_t>(j)];
  }
  // Shell majorant: (2m+1)^d - (2m-1)^d points with |n| >= m on shell m.
  auto shell = [&](long long m) {
    const auto mm = static_cast<double>(m);
    return (std::pow(2.0 * mm + 1.0, d) - std::pow(2.0 * mm - 1.0, d)) * std::exp(a.log_at_norm(mm));
  };
  double tail = 0.0;
  long long m = N + 1;
  for (; m <= N + kScanLength; ++m) {
    const double t = shell(m);
    tail += t;
    if (t <= 1e-18 * (std::abs(sum) + tail) || t == 0.0) break;
  }
  if (r.kind == RuleKind::PolynomialDecay) {
    tail += 2.0 * d * std::pow(3.0, d - 1) * std::pow(static_cast<double>(m), d - r.param) /
            (r.param - d);
  } else {
    const double t0 = shell(m);
    const double q = t0 > 0.0 ? shell(m + 1) / t0 : 0.0;
    tail += q < 1.0 ? t0 * q / (1.0 - q) : kInf;
  }
  return {sum, tail};
}

bool hs_is_kernel(const CoefficientSequence& r) {
  if (!r.is_finite()) return true;
  return std::all_of(r.values().begin(), r.values().end(), [](double v) { return v >= 0.0; });
}

InclusionVerdict hs_inclusion(const CoefficientSequence& a, const CoefficientSequence& b) {
  require_nonnegative(a, "first sequence");
  require_nonnegative(b, "second sequence");
  require_compatible(a, b);

  InclusionVerdict v;
  v.method = Method::ClosedForm;
  if (auto k = support_violation(a, b)) {
    v.relation = Relation::NotIncluded;
    v.lambda = Lambda::unbounded();
    v.witness = Witness{{static_cast<double>(*k)}, BlowupKind::OnZeroSet, kInf, *k};
    v.reason = "a_k > 0 = b_k at k = " + std::to_string(*k);
    return v;
  }

  const auto sa = a.support_bound();
  const auto sb = b.support_bound();
  if (sa || sb) {
    // Finite common support: exact scan of a_n / b_n over b_n > 0.
    const long long limit = std::min(sa.value_or(*sb), sb.value_or(*sa));
    double sup = 0.0;
    long long arg = 0;
    for (long long n = 0; n < limit; ++n) {
      const double bn = b.at(n);
      if (bn > 0.0) {
        const double r = a.at(n) / bn;
        if (r > sup) {
          sup = r;
          arg = n;
        }
      }
    }
    v.relation = Relation::Included;
    v.lambda = Lambda::exact(sup);
    v.reason = "sup a_n/b_n attained at n = " + std::to_string(arg);
    return v;
  }

  const Extremum e = sup_log_ratio(a, b);
  switch (e.kind) {
    case Extremum::Kind::Finite:
      v.relation = Relation::Included;
      v.lambda = Lambda::exact(std::exp(e.log_value));
      v.reason = "sup a_n/b_n attained at |n| = " + std::to_string(e.rho);
      return v;
    case Extremum::Kind::PlusInfinity:
      v.relation = Relation::NotIncluded;
      v.lambda = Lambda::unbounded();
      v.witness = divergence_witness(a, b);
      v.reason = "a_n/b_n is unbounded";
      return v;
    case Extremum::Kind::Undecided:
      break;
  }
  return unknown_verdict("ratio scan to n = 100000 gave no monotone-tail certificate",
                         Method::ClosedForm);
}

EquivNorm hs_equiv_norm(const CoefficientSequence& a, const CoefficientSequence& b) {
  require_nonnegative(a, "first sequence");
  require_nonnegative(b, "second sequence");
  require_compatible(a, b);

  EquivNorm out;
  if (auto k = support_violation(a, b)) {
    out.reason = "supp a is not contained in supp b (index " + std::to_string(*k) + ")";
    return out;
  }
  if (const auto sa = a.support_bound()) {
    double lo = kInf;
    double hi = 0.0;
    for (long long n = 0; n < *sa; ++n) {
      const double an = a.at(n);
      if (an > 0.0) {
        const double r = b.at(n) / an;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
    }
    if (hi == 0.0) {
      out.reason = "a is the zero sequence";
      return out;
    }
    out.holds = true;
    out.alpha = lo;
    out.beta = hi;
    return out;
  }
  // Both rules with infinite support.
  const Extremum up = sup_log_ratio(b, a);
  const Extremum down = sup_log_ratio(a, b);
  if (up.kind == Extremum::Kind::Undecided || down.kind == Extremum::Kind::Undecided) {
    out.reason = "ratio scan gave no monotone-tail certificate";
    return out;
  }
  if (up.kind == Extremum::Kind::PlusInfinity) {
    out.reason = "b_n/a_n is unbounded above";
    return out;
  }
  if (down.kind == Extremum::Kind::PlusInfinity) {
    out.reason = "b_n/a_n is not bounded away from zero";
    return out;
  }
  out.holds = true;
  out.alpha = std::exp(-down.log_value);
  out.beta = std::exp(up.log_value);
  return out;
}

std::string to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Geometric: return "geometric";
    case RuleKind::Exponential: return "exponential";
    case RuleKind::PolynomialDecay: return "polynomial_decay";
    case RuleKind::Binomial: return "binomial";
    case RuleKind::InverseFactorial: return "inverse_factorial";
  }
  return "geometric";
}

RuleKind rule_kind_from_string(const std::string& s) {
  for (auto k : {RuleKind::Geometric, RuleKind::Exponential, RuleKind::PolynomialDecay,
                 RuleKind::Binomial, RuleKind::InverseFactorial}) {
    if (to_string(k) == s) return k;
  }
  throw DomainError("unknown coefficient rule '" + s + "'");
}

}  // namespace rkhs
