#include "fcseries/casebook.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "fcseries/convergence.hpp"

namespace fcs {

namespace {

constexpr double kBoundaryBand = 1e-9;

RootSeriesResult adaptive_root(const ScaledEquation& s, const AlgebraicEquation& eq, unsigned branch,
                               std::size_t T) {
  if (T > 0 || s.slots.empty()) return series_root_power(s, eq, branch, 1.0, T);
  std::size_t t = 64;
  RootSeriesResult r = series_root_power(s, eq, branch, 1.0, t);
  while (!(r.tail_estimate < 1e-13 * std::max(1.0, std::abs(r.value))) && t < (std::size_t{1} << 20)) {
    t *= 2;
    r = series_root_power(s, eq, branch, 1.0, t);
  }
  return r;
}

void add_pivot_roots(CaseRoots& out, const AlgebraicEquation& eq, const PivotChoice& pv, std::size_t T) {
  const ScaledEquation s = scale_equation(eq, pv);
  for (unsigned l = 0; l < s.branch_count(); ++l) out.roots.push_back(adaptive_root(s, eq, l, T));
}

// Match each regime's roots separately so that a boundary case reports both.
void score(CaseRoots& out, std::size_t group) {
  for (std::size_t start = 0; start < out.roots.size(); start += group) {
    std::vector<cplx> vals;
    for (std::size_t i = start; i < std::min(out.roots.size(), start + group); ++i) vals.push_back(out.roots[i].value);
    const RootMatch m = match_roots(vals, out.oracle);
    out.max_error = std::max(out.max_error, m.collision ? std::numeric_limits<double>::infinity() : m.max_error);
  }
}

CaseRoots split_regimes(const AlgebraicEquation& eq, double ratio, double threshold, const PivotChoice& whole,
                        const PivotChoice& low, const PivotChoice& high, std::size_t T) {
  CaseRoots out;
  out.oracle = oracle_roots(eq);
  out.near_threshold = std::abs(ratio - threshold) <= kBoundaryBand * threshold;
  const bool use_whole = out.near_threshold || ratio > threshold;
  const bool use_split = out.near_threshold || ratio < threshold;
  if (use_whole) add_pivot_roots(out, eq, whole, T);
  if (use_split) {
    add_pivot_roots(out, eq, low, T);
    add_pivot_roots(out, eq, high, T);
  }
  out.regime = out.near_threshold ? "boundary" : (use_whole ? "single-pivot" : "split");
  score(out, eq.degree());
  return out;
}

Rational rpow(Rational base, long e) {
  Rational out = 1;
  if (e < 0) {
    base = 1 / base;
    e = -e;
  }
  for (long i = 0; i < e; ++i) out *= base;
  return out;
}

// ---- truncated multivariate series over ℚ ----

using Series = std::map<std::vector<unsigned>, Rational>;

Series to_series(const ExactSeries& e) {
  Series s;
  for (const auto& [t, c] : e) s[t] = c;
  return s;
}

unsigned level_of(const std::vector<unsigned>& t) {
  unsigned s = 0;
  for (unsigned v : t) s += v;
  return s;
}

Series multiply(const Series& a, const Series& b, unsigned L) {
  Series out;
  for (const auto& [ta, ca] : a) {
    if (sgn(ca) == 0) continue;
    const unsigned la = level_of(ta);
    for (const auto& [tb, cb] : b) {
      if (la + level_of(tb) > L || sgn(cb) == 0) continue;
      std::vector<unsigned> t(ta.size());
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = ta[i] + tb[i];
      out[t] += ca * cb;
    }
  }
  return out;
}

Series one_series(std::size_t k) { return Series{{std::vector<unsigned>(k, 0), Rational(1)}}; }

// Constant term must be 1.
Series inverse(const Series& f, std::size_t k, unsigned L) {
  Series g = one_series(k);
  for (unsigned t = 1; t <= L; ++t)
    for (const auto& c : compositions(t, k)) {
      Rational acc = 0;
      for (const auto& [u, gu] : g) {
        bool fits = true;
        std::vector<unsigned> d(k);
        for (std::size_t i = 0; i < k && fits; ++i) {
          if (u[i] > c[i]) fits = false;
          else d[i] = c[i] - u[i];
        }
        if (!fits || u == c) continue;
        auto it = f.find(d);
        if (it != f.end()) acc += it->second * gu;
      }
      g[c] = -acc;
    }
  return g;
}

Series power(const Series& f, long e, std::size_t k, unsigned L) {
  Series base = e < 0 ? inverse(f, k, L) : f;
  Series out = one_series(k);
  for (long i = 0; i < std::abs(e); ++i) out = multiply(out, base, L);
  return out;
}

bool series_equal(const Series& a, const Series& b) {
  auto nonzero = [](const Series& s) {
    Series o;
    for (const auto& [t, c] : s)
      if (sgn(c) != 0) o[t] = c;
    return o;
  };
  return nonzero(a) == nonzero(b);
}

class Draws {
 public:
  explicit Draws(unsigned long long seed) : rng_(seed) {}
  Rational rational(int span = 12, int den = 6) {
    std::uniform_int_distribution<int> n(-span, span), d(1, den);
    return frac(n(rng_), d(rng_));
  }
  Rational nonzero(int span = 12, int den = 6) {
    for (;;) {
      Rational q = rational(span, den);
      if (sgn(q) != 0) return q;
    }
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

 private:
  std::mt19937_64 rng_;
};

Rational dot(std::span<const Rational> a, std::span<const unsigned> t) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * t[i];
  return s;
}

std::vector<std::vector<unsigned>> all_tuples(std::size_t k, unsigned L) {
  std::vector<std::vector<unsigned>> out;
  for (unsigned t = 0; t <= L; ++t)
    for (auto& c : compositions(t, k)) out.push_back(std::move(c));
  return out;
}

// Sub-tuples u ≤ t componentwise.
std::vector<std::vector<unsigned>> below(const std::vector<unsigned>& t) {
  std::vector<std::vector<unsigned>> out{{}};
  for (unsigned ti : t) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& u : out)
      for (unsigned v = 0; v <= ti; ++v) {
        auto w = u;
        w.push_back(v);
        next.push_back(std::move(w));
      }
    out = std::move(next);
  }
  return out;
}

std::vector<unsigned> minus(const std::vector<unsigned>& t, const std::vector<unsigned>& u) {
  std::vector<unsigned> d(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) d[i] = t[i] - u[i];
  return d;
}

Rational gould(const Rational& alpha, std::span<const unsigned> n, std::span<const Rational> beta,
               const Rational& gamma) {
  unsigned total = 0;
  for (unsigned v : n) total += v;
  if (total == 0) return 1;
  Rational out = alpha;
  for (unsigned v : n) out /= Rational(factorial(v));
  const Rational base = alpha + dot(beta, n);
  for (unsigned m = 1; m < total; ++m) out *= base - gamma * m;
  return out;
}

Rational binomial(unsigned n, unsigned k) {
  return Rational(factorial(n)) / (Rational(factorial(k)) * Rational(factorial(n - k)));
}

struct Tally {
  IdentityResult r;
  void check(bool ok) {
    ++r.cases;
    if (!ok) ++r.failures;
  }
};

}  // namespace

// ---- quintic and trinomial ----

double bring_jerrard_threshold() { return 4.0 / std::pow(5.0, 1.25); }

CaseRoots bring_jerrard_roots(cplx gamma, std::size_t T) {
  if (gamma == cplx(0.0, 0.0)) {
    CaseRoots out;
    out.regime = "factored";
    out.oracle = {0.0, 1.0, cplx(0.0, 1.0), -1.0, cplx(0.0, -1.0)};
    return out;
  }
  AlgebraicEquation eq{{gamma, -1.0, 0.0, 0.0, 0.0, 1.0}};
  // |γ| ≥ 4/5^{5/4}  ⇔  |γ|^4 ≥ 4^4/5^5
  return split_regimes(eq, std::pow(std::abs(gamma), 4), 256.0 / 3125.0, {0, 5}, {0, 1}, {1, 5}, T);
}

AlgebraicEquation TrinomialSpec::equation() const {
  if (m < 1 || n < 1) throw InvalidInput("trinomial needs m, n >= 1");
  AlgebraicEquation eq;
  eq.coeffs.assign(m + n + 1, 0.0);
  eq.coeffs[0] = b;
  eq.coeffs[n] = a;
  eq.coeffs[m + n] = 1.0;
  return eq;
}

double TrinomialSpec::amplitude_ratio() const {
  return std::pow(std::abs(b), m) / std::pow(std::abs(a), m + n);
}

double TrinomialSpec::threshold() const {
  const double mm = m, nn = n;
  return std::pow(mm, mm) * std::pow(nn, nn) / std::pow(mm + nn, mm + nn);
}

TrinomialCase trinomial_roots(const TrinomialSpec& spec, std::size_t T, unsigned compare_terms) {
  if (spec.a == cplx(0.0, 0.0) || spec.b == cplx(0.0, 0.0)) throw InvalidInput("trinomial needs a, b nonzero");
  const AlgebraicEquation eq = spec.equation();
  const unsigned m = spec.m, n = spec.n;
  TrinomialCase out;
  static_cast<CaseRoots&>(out) =
      split_regimes(eq, spec.amplitude_ratio(), spec.threshold(), {0, m + n}, {0, n}, {n, m + n}, T);

  // The q<p series around (n,0) against the p<q series around (0,n).
  const Rational mu = frac(m + n, n);
  const Rational r = frac(1, n);
  out.reversed_series_exact = true;
  for (unsigned t = 0; t <= compare_terms; ++t) {
    Rational lhs = fc_number_exact(1 - mu, -r, t);
    if (t % 2) lhs = -lhs;
    if (lhs != fc_number_exact(mu, r, t)) out.reversed_series_exact = false;
  }
  const ScaledEquation s = scale_equation(eq, {0, n});
  for (unsigned l = 0; l < n; ++l) {
    const cplx z = s.arguments(l).at(0);
    for (unsigned t = 0; t <= compare_terms; ++t) {
      const cplx fwd = fc_number({mu.get_d(), r.get_d()}, t) * std::pow(z, static_cast<int>(t));
      const cplx rev = fc_number({1.0 - mu.get_d(), -r.get_d()}, t) * std::pow(-z, static_cast<int>(t));
      out.reversed_series_deviation =
          std::max(out.reversed_series_deviation, std::abs(fwd - rev) / std::max(1.0, std::abs(fwd)));
    }
  }
  return out;
}

// ---- Lambert, Euler, Ramanujan ----

double lambert_radius(unsigned m) {
  if (m < 2) throw InvalidInput("Lambert series needs m >= 2");
  return (m - 1.0) / std::pow(double(m), double(m) / (m - 1.0));
}

TermCheck lambert_check(unsigned m, unsigned n, unsigned terms) {
  if (m < 2 || n < 1 || terms < 1) throw InvalidInput("Lambert check needs m >= 2, n >= 1");
  const unsigned D = n + (m - 1) * (terms - 1);
  auto mul = [D](const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> c(D + 1, 0);
    for (unsigned i = 0; i <= D; ++i)
      if (sgn(a[i]) != 0)
        for (unsigned j = 0; i + j <= D; ++j) c[i + j] += a[i] * b[j];
    return c;
  };
  auto pw = [&](const std::vector<Rational>& a, unsigned e) {
    std::vector<Rational> c(D + 1, 0);
    c[0] = 1;
    for (unsigned i = 0; i < e; ++i) c = mul(c, a);
    return c;
  };
  // x = q + x^m, iterated to a fixed point in ℚ[[q]]
  std::vector<Rational> x(D + 1, 0);
  for (unsigned it = 0; it <= D; ++it) {
    x = pw(x, m);
    x[1] += 1;
  }
  const std::vector<Rational> xn = pw(x, n);

  TermCheck out;
  out.terms = terms;
  out.exact_match = true;
  unsigned printed_agree = 0;
  for (unsigned d = 0; d <= D; ++d) {
    Rational expect = 0;
    if (d >= n && (d - n) % (m - 1) == 0) expect = fc_number_exact(m, n, (d - n) / (m - 1));
    if (xn[d] != expect) {
      out.exact_match = false;
      out.max_deviation = std::max(out.max_deviation, std::abs(Rational(xn[d] - expect).get_d()));
    }
    // prefactor q instead of q^n shifts every term by n-1 powers
    Rational printed = 0;
    if (d >= 1 && (d - 1) % (m - 1) == 0) printed = fc_number_exact(m, n, (d - 1) / (m - 1));
    if (xn[d] == printed) ++printed_agree;
  }
  out.printed_match = printed_agree == D + 1;
  out.note = out.printed_match ? "single-q prefactor also agrees"
                                    : "single-q prefactor disagrees; q^n is required";
  return out;
}

TermCheck euler_check(const Rational& alpha, const Rational& beta, const Rational& n, unsigned terms) {
  if (alpha == beta) throw InvalidInput("Euler check needs alpha != beta");
  const Rational d = alpha - beta;
  TermCheck out;
  out.terms = terms;
  out.exact_match = true;
  for (unsigned t = 0; t < terms; ++t) {
    Rational e = 1;
    if (t > 0) {
      e = n / Rational(factorial(t));
      for (unsigned j = 1; j < t; ++j) e *= n + alpha * (t - j) + beta * j;
    }
    const Rational fc = fc_number_exact(alpha / d, n / d, t) * rpow(d, t);
    if (e != fc) {
      out.exact_match = false;
      out.max_deviation = std::max(out.max_deviation, std::abs(Rational(e - fc).get_d()));
    }
  }
  return out;
}

TermCheck euler_printed_check(const Rational& a, const Rational& b, const Rational& n) {
  const std::array<Rational, 5> printed{
      Rational(1),
      n,
      n * (n + a + b) / 2,
      n * (n + a + 2 * b) * (n + 2 * a + b) / 6,
      n * (n + a + 3 * b) * (n + 2 * a + 2 * b) * (n + 3 * a + b) / 24,
  };
  const Rational d = a - b;
  TermCheck out;
  out.terms = printed.size();
  out.exact_match = true;
  for (unsigned t = 0; t < printed.size(); ++t) {
    const Rational fc = fc_number_exact(a / d, n / d, t) * rpow(d, t);
    if (fc != printed[t]) {
      out.exact_match = false;
      out.max_deviation = std::max(out.max_deviation, std::abs(Rational(fc - printed[t]).get_d()));
    }
  }
  return out;
}

RamanujanCheck ramanujan_check(double p, double q, double n, cplx a, unsigned terms) {
  if (q == 0.0 || p == 0.0 || p == q) throw InvalidInput("Ramanujan check needs p, q nonzero and p != q");
  RamanujanCheck out;
  const double mu = p / q;
  out.radius = 1.0 / (std::abs(q) * ratio_limit(mu));
  out.printed_radius = std::pow(std::abs(p), -p / q) * std::pow(std::abs(p - q), (p - q) / q);
  if (std::abs(a) > out.radius * (1.0 + 1e-12)) throw InvalidInput("|a| outside the convergence radius");

  const Rational P(p), Q(q), N(n);
  const cplx z = -q * a;
  out.exact.terms = out.gamma.terms = terms;
  out.exact.exact_match = true;
  out.gamma.exact_match = true;
  unsigned gamma_skipped = 0;
  for (unsigned k = 0; k < terms; ++k) {
    // cancelled form: (n/q)/k! ∏_{u=1}^{k-1} ((n+pk)/q - u)
    Rational cancelled = 1;
    if (k > 0) {
      cancelled = N / Q / Rational(factorial(k));
      for (unsigned u = 1; u < k; ++u) cancelled *= (N + P * k) / Q - u;
    }
    const Rational fc = fc_number_exact(P / Q, N / Q, k);
    if (cancelled != fc) {
      out.exact.exact_match = false;
      out.exact.max_deviation = std::max(out.exact.max_deviation, std::abs(Rational(cancelled - fc).get_d()));
    }
    const cplx fc_term = fc.get_d() * std::pow(z, static_cast<int>(k));
    cplx g_term = 1.0;
    if (k > 0) {
      const double x = (n + p * k) / q;
      const double lo = x - k + 1;
      auto pole = [](double v) { return v <= 0.0 && v == std::floor(v); };
      if (pole(x)) {
        ++gamma_skipped;
        continue;
      }
      const double ratio = pole(lo) ? 0.0 : std::tgamma(x) / std::tgamma(lo);
      g_term = (n / q) * ratio / std::tgamma(k + 1.0) * std::pow(z, static_cast<int>(k));
    }
    const double dev = std::abs(g_term - fc_term) / std::max(std::abs(fc_term), 1e-300);
    if (std::abs(fc_term) == 0.0 && std::abs(g_term) == 0.0) continue;
    out.gamma.max_deviation = std::max(out.gamma.max_deviation, dev);
  }
  out.gamma.exact_match = out.gamma.max_deviation < 1e-12;
  if (gamma_skipped) out.gamma.note = std::to_string(gamma_skipped) + " terms at gamma poles use the product form";

  out.value = genfun_eval({mu, n / q}, z, 4000).value;
  const cplx y = genfun_eval({mu, 1.0}, z, 4000).value;
  out.fixed_point_residual = std::abs(y - 1.0 - z * std::pow(y, mu));
  return out;
}

// ---- domain tables ----

namespace {

std::string render(const std::vector<BoundCondition>& conds) {
  std::string s;
  for (const auto& c : conds) {
    if (!s.empty()) s += " & ";
    s += c.member->id() + (c.sign > 0 ? " >= 0" : " <= 0");
  }
  return s;
}

bool compare_row(DomainRow& row, const PsiFamily& family) {
  row.computed = binding_conditions(family);
  row.formula = render(row.computed);
  std::vector<std::pair<const PsiMember*, int>> want, got;
  for (const auto& pc : row.printed) {
    const PsiMember* m = family.find(pc.q_sign, pc.sigma);
    if (!m) return row.matches = false;
    want.emplace_back(m, pc.inequality);
  }
  for (const auto& c : row.computed) got.emplace_back(c.member, c.sign);
  std::sort(want.begin(), want.end());
  std::sort(got.begin(), got.end());
  return row.matches = want == got;
}

// Shared pattern of the corrected cubic table; `top` is the leading slot.
std::vector<DomainRow> corrected_rows(unsigned top) {
  using PC = PrintedCondition;
  return {
      {{0, 1}, {PC{1, {1, -1}, -1}}, {}, false, {}},
      {{0, 2}, {PC{1, {1, 1}, 1}, PC{-1, {1, 1}, -1}}, {}, false, {}},
      {{0, top}, {PC{1, {-1, -1}, 1}}, {}, false, {}},
      {{1, 2}, {PC{1, {1, -1}, -1}, PC{1, {-1, 1}, -1}}, {}, false, {}},
      {{1, top}, {PC{1, {1, 1}, 1}, PC{-1, {1, 1}, -1}}, {}, false, {}},
      {{2, top}, {PC{1, {-1, 1}, -1}}, {}, false, {}},
  };
}

}  // namespace

CubicTable cubic_domain_table() {
  CubicTable out;
  out.rows = corrected_rows(3);
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    out.families[i] = build_family(out.rows[i].pivot, 3u);
    compare_row(out.rows[i], out.families[i]);
  }
  const PsiFamily& f02 = out.families[1];
  const std::array<double, 2> e1{1.0, 0.0}, e3{0.0, 1.0};
  out.d02_a1_axis = boundary_on_ray(e1, f02);
  out.d02_a3_axis = boundary_on_ray(e3, f02);
  // Original form: {Δ(|a1|,|a3|) > 0} ∩ {Δ(|a1|,-|a3|) < 0}, evaluated at the origin.
  const std::array<double, 2> origin{0.0, 0.0};
  const double first = f02.plus_general.evaluate(origin);
  const double second = f02.plus_general.substitute_signs(std::array{1, -1}).evaluate(origin);
  out.original_d02_rejects_origin = !(first > 0.0 && second < 0.0);
  return out;
}

QuinticTable principal_quintic_domains() {
  QuinticTable out;
  out.rows = corrected_rows(5);
  out.origin_inside_all = true;
  const std::vector<unsigned> support{0, 1, 2, 5};
  for (auto& row : out.rows) {
    const PsiFamily fam = build_family(row.pivot, support);
    compare_row(row, fam);
    const std::vector<double> origin(fam.variable_count(), 0.0);
    if (!member(origin, fam).inside) out.origin_inside_all = false;
  }
  return out;
}

// ---- Brioschi ----

std::string to_string(PivotOutcome o) {
  switch (o) {
    case PivotOutcome::ConvergesWithRoots: return "converges";
    case PivotOutcome::NeverConverges: return "never-converges";
    case PivotOutcome::OutsideDomain: return "outside-domain";
  }
  return "?";
}

AlgebraicEquation brioschi_equation(cplx C) {
  if (C == cplx(0.0, 0.0)) throw InvalidInput("Brioschi form needs C != 0");
  return AlgebraicEquation{{-C * C, 45.0 * C * C, 0.0, -10.0 * C, 0.0, 1.0}};
}

namespace {

const std::vector<unsigned> kBrioschiSupport{0, 1, 3, 5};
// Power of C in each coefficient.
constexpr std::array<int, 6> kBrioschiPower{2, 2, 0, 1, 0, 0};

const std::map<PivotChoice, PsiFamily>& brioschi_families() {
  static const std::map<PivotChoice, PsiFamily> families = [] {
    std::map<PivotChoice, PsiFamily> f;
    for (std::size_t i = 0; i < kBrioschiSupport.size(); ++i)
      for (std::size_t j = i + 1; j < kBrioschiSupport.size(); ++j) {
        const PivotChoice pv{kBrioschiSupport[i], kBrioschiSupport[j]};
        f.emplace(pv, build_family(pv, kBrioschiSupport));
      }
    return f;
  }();
  return families;
}

BrioschiPivot assess(const AlgebraicEquation& eq, const PivotChoice& pv, const PsiFamily& fam) {
  BrioschiPivot out{pv};
  const ScaledEquation s = scale_equation(eq, pv);
  const auto amps = s.amplitudes();
  const BoxBound box = necessary_box(s.mu);
  for (std::size_t i = 0; i < s.slots.size(); ++i) {
    // |b_j| ∝ |C|^e with e = e_j + (μ_j - 1) e_p - μ_j e_q
    const Rational e = kBrioschiPower[s.slots[i]] + (s.mu_exact[i] - 1) * kBrioschiPower[pv.p] -
                       s.mu_exact[i] * kBrioschiPower[pv.q];
    if (sgn(e) == 0 && amps[i] > box.per_coordinate_max[i]) {
      out.outcome = PivotOutcome::NeverConverges;
      return out;
    }
  }
  bool inside;
  try {
    inside = member(amps, fam).inside;
  } catch (const NoActiveBoundary&) {
    double total = 0.0;
    for (double a : amps) total += a;
    inside = total <= sufficient_simplex(s.mu).radius;
  }
  if (inside) {
    out.outcome = PivotOutcome::ConvergesWithRoots;
    out.roots = pv.branch_count();
  }
  return out;
}

// Boundary scale λ* of the amplitude point at |C|; the pivot converges iff λ* ≥ 1.
double boundary_scale(double absC, const PivotChoice& pv) {
  const ScaledEquation s = scale_equation(brioschi_equation(absC), pv);
  return first_crossing(s.amplitudes(), brioschi_families().at(pv)).scale;
}

// Bisection in log|C| on log λ*, which changes sign at the threshold.
double bisect_threshold(double lo, double hi, const PivotChoice& pv) {
  const bool lo_inside = boundary_scale(lo, pv) >= 1.0;
  if (lo_inside == (boundary_scale(hi, pv) >= 1.0)) throw InternalInconsistency("threshold not bracketed");
  double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    const double mid = 0.5 * (a + b);
    ((boundary_scale(std::exp(mid), pv) >= 1.0) == lo_inside ? a : b) = mid;
  }
  return std::exp(0.5 * (a + b));
}

}  // namespace

BrioschiVerdict brioschi_analysis(cplx C) {
  const AlgebraicEquation eq = brioschi_equation(C);
  BrioschiVerdict out;
  out.C = C;
  for (const auto& [pv, fam] : brioschi_families()) out.per_pivot.push_back(assess(eq, pv, fam));
  try {
    out.roots = solve_all(eq).roots;
    out.covered = true;
  } catch (const NoConvergentCover& e) {
    out.roots = e.partial.roots;
    out.covered = false;
  }
  return out;
}

BrioschiThresholds brioschi_thresholds() {
  BrioschiThresholds out;
  out.exact_lower = (13.0 * std::sqrt(2.0) - 17.0) / 42336.0;
  out.exact_upper = (13.0 * std::sqrt(2.0) + 17.0) / 42336.0;
  out.lower = bisect_threshold(1e-6, 1e-4, {0, 5});
  out.upper = bisect_threshold(1e-4, 1e-2, {0, 1});
  return out;
}

// ---- identities ----

std::vector<IdentityResult> identity_suite(const IdentityOptions& opts) {
  Draws draw(opts.seed);
  const unsigned L = opts.max_level;
  std::vector<IdentityResult> out;
  auto finish = [&](Tally& t, std::string name, std::string note = {}) {
    t.r.name = std::move(name);
    t.r.note = std::move(note);
    out.push_back(t.r);
  };

  for (unsigned k = 1; k <= opts.max_k; ++k) {
    const std::string tag = " (k=" + std::to_string(k) + ")";
    Tally fe, pw, conv, rec;
    for (unsigned d = 0; d < opts.draws; ++d) {
      std::vector<Rational> mu(k);
      for (auto& m : mu) m = draw.rational(8, 4);
      const Series one = to_series(exact_genfun_coefficients(mu, 1, L));

      // f = 1 + Σ z_j f^{μ_j}, with f^{μ_j} confirmed as B(μ;μ_j) by integer powers
      Series rhs = one_series(k);
      bool powers_ok = true;
      for (std::size_t j = 0; j < k; ++j) {
        const Series g = to_series(exact_genfun_coefficients(mu, mu[j], L));
        const long num = mu[j].get_num().get_si(), den = mu[j].get_den().get_si();
        powers_ok = powers_ok && series_equal(power(g, den, k, L), power(one, num, k, L));
        for (const auto& [t, c] : g) {
          if (level_of(t) + 1 > L) continue;
          auto s = t;
          ++s[j];
          rhs[s] += c;
        }
      }
      fe.check(powers_ok && series_equal(one, rhs));

      // B(1)^r = B(r) for r = num/den: B(r)^den = B(1)^num
      const Rational r = draw.rational(6, 4), s = draw.rational(6, 4);
      const Series br = to_series(exact_genfun_coefficients(mu, r, L));
      pw.check(series_equal(power(br, r.get_den().get_si(), k, L), power(one, r.get_num().get_si(), k, L)));

      for (const auto& t : all_tuples(k, L)) {
        Rational sum = 0;
        for (const auto& u : below(t)) sum += fc_multi_exact(mu, r, u) * fc_multi_exact(mu, s, minus(t, u));
        conv.check(sum == fc_multi_exact(mu, r + s, t));

        Rational rr = fc_multi_exact(mu, r, t);
        for (std::size_t j = 0; j < k; ++j)
          if (t[j] > 0) {
            auto u = t;
            --u[j];
            rr += fc_multi_exact(mu, r + mu[j], u);
          }
        rec.check(rr == fc_multi_exact(mu, r + 1, t));
      }
    }
    finish(fe, "functional equation" + tag);
    finish(pw, "power law" + tag);
    finish(conv, "convolution" + tag);
    finish(rec, "recurrence" + tag);
  }

  // Mohanty's weighted convolution and its two specializations.
  Tally moh, moh_q0, moh_pc;
  for (unsigned k = 1; k <= opts.max_k; ++k)
    for (unsigned d = 0; d < opts.draws; ++d) {
      std::vector<Rational> b(k), q(k);
      for (auto& v : b) v = draw.rational(8, 4);
      for (auto& v : q) v = draw.rational(8, 4);
      const Rational a = draw.rational(), p = draw.rational();
      Rational c = draw.rational();
      while (sgn(a + c) == 0) c = draw.rational();
      auto lhs = [&](const std::vector<unsigned>& n, const Rational& pp, std::span<const Rational> qq) -> Rational {
        Rational sum = 0;
        for (const auto& j : below(n))
          sum += (pp + dot(qq, j)) * fc_multi_exact(b, a, j) * fc_multi_exact(b, c, minus(n, j));
        return sum;
      };
      auto rhs = [&](const std::vector<unsigned>& n, const Rational& pp, std::span<const Rational> qq) -> Rational {
        return (pp * (a + c) + a * dot(qq, n)) / (a + c) * fc_multi_exact(b, a + c, n);
      };
      const std::vector<Rational> zero(k, 0);
      std::vector<Rational> negb(k);
      for (std::size_t i = 0; i < k; ++i) negb[i] = -b[i];
      for (const auto& n : all_tuples(k, L)) {
        moh.check(lhs(n, p, q) == rhs(n, p, q));
        moh_q0.check(lhs(n, p, zero) == rhs(n, p, zero) &&
                     lhs(n, 1, zero) == fc_multi_exact(b, a + c, n));
        const Rational pc = c + dot(b, n);
        moh_pc.check(lhs(n, pc, negb) == rhs(n, pc, negb));
      }
    }
  finish(moh, "Mohanty weighted convolution");
  finish(moh_q0, "Mohanty q=0 specialization");
  finish(moh_pc, "Mohanty p=c+b.n, q=-b specialization");

  // Gould's G numbers.
  Tally g_fc, g_zero, g_conv, g_multi;
  for (unsigned d = 0; d < opts.draws; ++d) {
    const Rational alpha = draw.rational(), alpha2 = draw.rational(), beta = draw.rational(), gamma = draw.nonzero();
    const std::array<Rational, 1> bv{beta};
    const std::array<Rational, 1> zero_g{beta};
    for (unsigned n = 0; n <= L; ++n) {
      const std::array<unsigned, 1> nv{n};
      const Rational g = gould(alpha, nv, bv, gamma);
      g_fc.check(g == rpow(gamma, n) * fc_number_exact(beta / gamma, alpha / gamma, n));
      const Rational base = alpha + beta * n;
      if (sgn(base) != 0)
        g_zero.check(gould(alpha, nv, zero_g, 0) == alpha / base * rpow(base, n) / Rational(factorial(n)));
      Rational sum = 0;
      for (unsigned n1 = 0; n1 <= n; ++n1) {
        const std::array<unsigned, 1> a1{n1}, a2{n - n1};
        sum += gould(alpha, a1, bv, gamma) * gould(alpha2, a2, bv, gamma);
      }
      g_conv.check(sum == gould(alpha + alpha2, nv, bv, gamma));
    }
    for (unsigned k = 1; k <= opts.max_k; ++k) {
      std::vector<Rational> betas(k), scaled(k);
      for (std::size_t i = 0; i < k; ++i) {
        betas[i] = draw.rational();
        scaled[i] = betas[i] / gamma;
      }
      for (const auto& n : all_tuples(k, L))
        g_multi.check(gould(alpha, n, betas, gamma) ==
                      rpow(gamma, level_of(n)) * fc_multi_exact(scaled, alpha / gamma, n));
    }
  }
  finish(g_fc, "Gould G to FC relation");
  finish(g_zero, "Gould gamma=0 limit");
  finish(g_conv, "Gould convolution");
  finish(g_multi, "Gould multiparameter G to FC relation");

  // Kahkeshani's generalized Catalan numbers.
  Tally kah;
  for (unsigned m = 2; m <= opts.max_k + 1; ++m)
    for (unsigned n = 0; n <= L; ++n) {
      std::vector<unsigned> parts(m - 1, n);
      parts.push_back(n * (m - 1));
      const Rational c = Rational(multinomial(parts)) / (n * (m - 1) + 1);
      const std::vector<Rational> two(m - 1, 2);
      kah.check(c == fc_multi_exact(two, 1, std::vector<unsigned>(m - 1, n)));
    }
  finish(kah, "Kahkeshani generalized Catalan");

  // Aval's multivariate numbers.
  Tally aval;
  std::size_t printed_bad = 0, printed_total = 0;
  for (unsigned d = 0; d < opts.draws; ++d) {
    const unsigned n = static_cast<unsigned>(draw.integer(1, 12));
    aval.check(frac(n, n) == 1);  // p = 1: empty product, (n - 0)/n
    for (unsigned p = 2; p <= opts.max_k + 1; ++p)
      for (const auto& kv : all_tuples(p - 1, L)) {
        Rational bp = frac(static_cast<long>(n) - static_cast<long>(level_of(kv)), n);
        Rational prod = 1;
        for (unsigned ki : kv) {
          bp *= binomial(n + ki - 1, ki);
          prod *= fc_number_exact(1, n, ki);
        }
        const Rational corrected = frac(static_cast<long>(n) - static_cast<long>(level_of(kv)), n) * prod;
        aval.check(bp == corrected);
        ++printed_total;
        if (bp != corrected * rpow(Rational(n), static_cast<long>(p) - 1)) ++printed_bad;
      }
  }
  aval.r.printed_failures = printed_bad;
  finish(aval, "Aval multivariate FC product",
         "n^{p-2} prefactor form disagrees in " + std::to_string(printed_bad) + " of " +
             std::to_string(printed_total) + " cases; (n-|k|)/n is required");
  return out;
}

// ---- Sturmfels ----

std::vector<PuiseuxTerm> puiseux_terms(const std::vector<unsigned>& support, const PivotChoice& pivot,
                                       unsigned branch, const Rational& r, unsigned max_level) {
  if (branch >= pivot.branch_count()) throw BranchOutOfRange("branch index exceeds q - p - 1");
  const auto slots = free_slots(support, pivot);
  std::vector<Rational> mu;
  for (unsigned j : slots) mu.push_back(pivot_exponent(pivot, j));
  const unsigned top = *std::max_element(support.begin(), support.end());
  const Rational rr = r / pivot.branch_count();
  const long odd = 2L * branch + 1;

  std::vector<PuiseuxTerm> out;
  for (unsigned t = 0; t <= max_level; ++t)
    for (const auto& c : compositions(t, slots.size())) {
      PuiseuxTerm term;
      term.t = c;
      term.coefficient = fc_multi_exact(mu, rr, c);
      if (sgn(term.coefficient) == 0) continue;
      const Rational tmu = dot(mu, c);
      term.phase_turns = odd * (rr + tmu);
      term.exponents.assign(top + 1, 0);
      term.exponents[pivot.p] = rr + tmu - t;
      term.exponents[pivot.q] = -rr - tmu;
      for (std::size_t i = 0; i < slots.size(); ++i) term.exponents[slots[i]] = c[i];
      out.push_back(std::move(term));
    }
  return out;
}

SturmfelsReport sturmfels_checks() {
  SturmfelsReport out;
  const std::vector<unsigned> quintic{0, 1, 2, 3, 4, 5};

  // −a0/a1 · {1, a0a2/a1², −a0²a3/a1³, a0³a4/a1⁴, −a0⁴a5/a1⁵, 2a0²a2²/a1⁴, −5a0³a2a3/a1⁵}
  struct Expect {
    std::array<int, 6> exps;
    int coef;
  };
  const std::array<Expect, 7> printed{{
      {{0, 0, 0, 0, 0, 0}, 1},
      {{1, -2, 1, 0, 0, 0}, 1},
      {{2, -3, 0, 1, 0, 0}, -1},
      {{3, -4, 0, 0, 1, 0}, 1},
      {{4, -5, 0, 0, 0, 1}, -1},
      {{2, -4, 2, 0, 0, 0}, 2},
      {{3, -5, 1, 1, 0, 0}, -5},
  }};
  const auto terms = puiseux_terms(quintic, {0, 1}, 0, 1, 2);
  out.coefficients_match = true;
  for (const auto& e : printed) {
    bool found = false;
    for (const auto& term : terms) {
      bool same = true;
      // strip the leading a0/a1
      for (unsigned j = 0; j < 6 && same; ++j) {
        const int lead = j == 0 ? 1 : (j == 1 ? -1 : 0);
        same = term.exponents[j] == Rational(e.exps[j] + lead);
      }
      if (!same) continue;
      found = true;
      // phase is an integer number of half-turns; divide by the leading −1
      const bool odd_turn = term.phase_turns.get_num().get_si() % 2 != 0;
      Rational c = odd_turn ? -term.coefficient : term.coefficient;
      c = -c;
      out.coefficients.push_back(c);
      if (c != e.coef) out.coefficients_match = false;
    }
    if (!found) {
      out.coefficients.push_back(0);
      out.coefficients_match = false;
    }
  }

  // (1/5) ξ^{j+1} a_j a0^{(j-4)/5} a5^{-(j+1)/5}
  out.quintic_05_leading_match = true;
  Rational a2_exponent;
  for (const auto& term : puiseux_terms(quintic, {0, 5}, 0, 1, 1)) {
    unsigned j = 0;
    for (unsigned s = 1; s <= 4; ++s)
      if (term.exponents[s] == 1) j = s;
    if (j == 0) continue;
    const bool ok = term.coefficient == frac(1, 5) && term.phase_turns == frac(j + 1, 5) &&
                    term.exponents[0] == frac(static_cast<long>(j) - 4, 5) &&
                    term.exponents[5] == frac(-static_cast<long>(j) - 1, 5);
    if (!ok) out.quintic_05_leading_match = false;
    if (j == 2) a2_exponent = term.exponents[0];
  }
  out.printed_05_a2_exponent_consistent = a2_exponent == frac(4, 5);

  // Unit triangulation {0,1},{1,2},...,{4,5}.
  const unsigned n = 5;
  bool first = true;
  double crosscheck = 0.0;
  for (unsigned i1 = 1; i1 <= n; ++i1) {
    const unsigned i0 = i1 - 1;
    for (unsigned k = 0; k <= n; ++k) {
      if (k == i0 || k == i1) continue;
      const long a = static_cast<long>(k) - i0, b = static_cast<long>(i1) - k, w = static_cast<long>(i1) - i0;
      const Rational mk = rpow(Rational(std::abs(a)), a) * rpow(Rational(std::abs(b)), b) / rpow(Rational(w), w);
      if (first || mk < out.M) out.M = mk;
      const double rl = ratio_limit(static_cast<double>(k > i1 ? a : b));
      crosscheck = first ? rl : std::min(crosscheck, rl);
      first = false;
    }
  }
  out.M /= n - 1;
  out.M_ratio_limit_crosscheck = crosscheck / (n - 1);
  return out;
}

}  // namespace fcs
