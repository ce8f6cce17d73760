#include "cli.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "fcseries/algebraic.hpp"
#include "fcseries/casebook.hpp"
#include "fcseries/convergence.hpp"
#include "fcseries/discriminant.hpp"
#include "fcseries/domain.hpp"
#include "fcseries/errors.hpp"
#include "fcseries/fc_core.hpp"

namespace fcs::cli {

using json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidInput("not a real number: '" + std::string(s) + "'");
  return v;
}

// `b` in `bi`: empty, '+' or '-' stand for ±1.
double parse_imag_coefficient(std::string_view s) {
  s = trim(s);
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s);
}

// Split on sep outside parentheses.
std::vector<std::string_view> split_top(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')') --depth;
    else if (s[i] == sep && depth == 0) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(s.substr(start));
  return out;
}

cplx parse_single(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw InvalidInput("empty complex literal");
  if (s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (const auto parts = split_top(s, ','); parts.size() == 2) return {parse_real(parts[0]), parse_real(parts[1])};
  if (s.back() != 'i' && s.back() != 'j') return parse_real(s);
  s.remove_suffix(1);
  // Split a+b at the last sign that is not an exponent sign.
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E')
      return {parse_real(s.substr(0, i)), parse_imag_coefficient(s.substr(i))};
  }
  return {0.0, parse_imag_coefficient(s)};
}

std::optional<std::size_t> env_terms() {
  const char* v = std::getenv("FC_TERMS");
  if (!v || !*v) return std::nullopt;
  const double t = parse_real(v);
  if (!(t >= 1.0) || t != std::floor(t)) throw InvalidInput("FC_TERMS must be a positive integer");
  return static_cast<std::size_t>(t);
}

std::size_t terms_or(std::optional<std::size_t> flag, std::size_t fallback) {
  if (flag) return *flag;
  if (auto e = env_terms()) return *e;
  return fallback;
}

PivotChoice parse_pivot(std::string_view s) {
  const auto v = parse_reals(s);
  if (v.size() != 2 || v[0] < 0 || v[1] < 0 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]) || v[0] >= v[1])
    throw InvalidInput("pivot must be p,q with 0 <= p < q");
  return {static_cast<unsigned>(v[0]), static_cast<unsigned>(v[1])};
}

void check_pivot(const AlgebraicEquation& eq, const PivotChoice& pv) {
  if (pv.q > eq.degree()) throw InvalidInput("pivot slot exceeds the degree");
  if (eq.coeffs[pv.p] == cplx(0.0, 0.0) || eq.coeffs[pv.q] == cplx(0.0, 0.0))
    throw InvalidInput("pivot slots must carry nonzero coefficients");
}

AlgebraicEquation parse_equation(const std::string& coeffs) {
  AlgebraicEquation eq{parse_coefficients(coeffs)};
  eq.validate();
  return eq;
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::string complex_text(cplx z) { return format_double(z.real()) + "," + format_double(z.imag()); }

json root_json(const RootSeriesResult& r) {
  return json{{"pivot", json::array({r.pivot.p, r.pivot.q})},
              {"branch", r.branch},
              {"value", complex_json(r.value)},
              {"residual", r.residual},
              {"terms", r.truncation},
              {"tail_estimate", std::isfinite(r.tail_estimate) ? json(r.tail_estimate) : json(nullptr)}};
}

void print_root(std::ostream& out, const RootSeriesResult& r) {
  out << "root pivot=" << r.pivot.p << ',' << r.pivot.q << " branch=" << r.branch << " value=" << complex_text(r.value)
      << " residual=" << format_double(r.residual) << " terms=" << r.truncation << '\n';
}

json double_list(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

// ---- subcommands ----

struct EvalArgs {
  std::string mu, r = "1", z;
  std::optional<std::size_t> terms;
  bool json_out = false;
};

int do_eval(const EvalArgs& a, std::ostream& out) {
  const auto mu = parse_reals(a.mu);
  const double r = parse_real(a.r);
  const std::vector<cplx> z = mu.size() == 1 ? std::vector<cplx>{parse_complex(a.z)} : parse_coefficients(a.z);
  if (z.size() != mu.size()) throw InvalidInput("--z needs one value per --mu entry");
  const std::size_t T = terms_or(a.terms, 100);
  const SeriesValue v = mu.size() == 1 ? genfun_eval({mu[0], r}, z[0], T) : genfun_multi_eval({mu, r}, z, T);
  if (a.json_out) {
    out << json{{"value", complex_json(v.value)},
                {"terms", v.truncation_level},
                {"tail_estimate", std::isfinite(v.tail_estimate) ? json(v.tail_estimate) : json(nullptr)},
                {"outside_radius", v.outside_radius}}
               .dump(2)
        << '\n';
  } else {
    out << "value " << complex_text(v.value) << '\n'
        << "terms " << v.truncation_level << '\n'
        << "tail_estimate " << format_double(v.tail_estimate) << '\n'
        << "outside_radius " << (v.outside_radius ? "true" : "false") << '\n';
  }
  return kOk;
}

struct SolveArgs {
  std::string coeffs, pivot;
  std::optional<std::size_t> terms;
  bool json_out = false;
};

int do_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  const AlgebraicEquation eq = parse_equation(a.coeffs);
  std::vector<RootSeriesResult> roots;
  std::string status = "covered";
  std::size_t uncovered = 0;
  int code = kOk;
  std::optional<DomainVerdict> verdict;
  if (!a.pivot.empty()) {
    const PivotChoice pv = parse_pivot(a.pivot);
    check_pivot(eq, pv);
    const ScaledEquation s = scale_equation(eq, pv);
    if (!s.slots.empty()) {
      const PsiFamily fam = build_family(pv, eq.support());
      try {
        verdict = member(s.amplitudes(), fam);
      } catch (const NoActiveBoundary&) {
        const double g = growth_exponent(s.amplitudes(), s.mu);
        verdict = DomainVerdict{g <= 0.0, false, std::nullopt};
      }
    }
    if (verdict && !verdict->inside) {
      status = "outside-domain";
      uncovered = eq.degree();
      code = kNoCover;
      err << "coefficients lie outside the domain of convergence of pivot " << pv.p << ',' << pv.q << '\n';
    } else {
      const std::size_t T = terms_or(a.terms, 1000);
      for (unsigned l = 0; l < s.branch_count(); ++l) roots.push_back(series_root_power(s, eq, l, 1.0, T));
      uncovered = eq.degree() - s.branch_count();
      status = uncovered ? "partial" : "covered";
    }
  } else {
    SolveOptions opts;
    if (auto t = terms_or(a.terms, 0)) opts.initial_terms = std::min(t, opts.max_terms);
    try {
      const SolveResult r = solve_all(eq, opts);
      roots = r.roots;
    } catch (const NoConvergentCover& e) {
      roots = e.partial.roots;
      uncovered = e.partial.uncovered;
      status = "no-convergent-cover";
      code = kNoCover;
      err << e.what() << '\n';
    }
  }
  if (a.json_out) {
    json j{{"status", status}, {"degree", eq.degree()}, {"uncovered", uncovered}, {"roots", json::array()}};
    for (const auto& r : roots) j["roots"].push_back(root_json(r));
    out << j.dump(2) << '\n';
  } else {
    out << "status " << status << '\n';
    for (const auto& r : roots) print_root(out, r);
    if (uncovered) out << "uncovered " << uncovered << '\n';
  }
  return code;
}

struct DomainArgs {
  std::string mode, coeffs, pivot, point;
  bool json_out = false;
};

int do_domain(const DomainArgs& a, std::ostream& out) {
  const AlgebraicEquation eq = parse_equation(a.coeffs);
  const PivotChoice pv = parse_pivot(a.pivot);
  check_pivot(eq, pv);
  const ScaledEquation s = scale_equation(eq, pv);
  if (s.slots.empty()) throw InvalidInput("a binomial has no domain to query");
  const PsiFamily fam = build_family(pv, eq.support());
  parity_check(pv, fam);
  std::vector<double> point = a.point.empty() ? s.amplitudes() : parse_reals(a.point);
  if (point.size() != fam.variable_count())
    throw InvalidInput("--point needs " + std::to_string(fam.variable_count()) + " amplitudes");
  json j{{"pivot", json::array({pv.p, pv.q})}, {"slots", fam.slots}, {"point", double_list(point)}};

  if (a.mode == "member") {
    const DomainVerdict v = member(point, fam);
    j["inside"] = v.inside;
    j["on_boundary"] = v.on_boundary;
    j["growth_exponent"] = growth_exponent(point, s.mu);
    if (v.binding) j["binding"] = json{{"member", v.binding->member_id}, {"scale", v.binding->scale}};
  } else if (a.mode == "ray") {
    const RayCrossing c = first_crossing(point, fam);
    j["scale"] = std::isfinite(c.scale) ? json(c.scale) : json(nullptr);
    j["member"] = c.member ? json(c.member->id()) : json(nullptr);
  } else {
    const BoxBound box = necessary_box(s.mu);
    const SimplexBound simplex = sufficient_simplex(s.mu);
    const MeasureBounds measure = measure_bounds(s.mu);
    j["mu"] = double_list(s.mu);
    j["necessary_box"] = double_list(box.per_coordinate_max);
    j["sufficient_simplex"] = json{{"radius", simplex.radius}, {"mu_star", simplex.mu_star}};
    j["mellin_bound"] = mellin_bound(s.mu);
    j["measure"] = json{{"lower", measure.lower}, {"upper", measure.upper}};
    json conds = json::array();
    try {
      for (const auto& c : binding_conditions(fam))
        conds.push_back(json{{"member", c.member->id()}, {"inequality", c.sign > 0 ? ">= 0" : "<= 0"}});
    } catch (const NoActiveBoundary&) {
      conds = nullptr;
    }
    j["conditions"] = conds;
  }

  if (a.json_out) {
    out << j.dump(2) << '\n';
  } else {
    for (const auto& [k, v] : j.items())
      out << k << ' ' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
  }
  return kOk;
}

struct TraceArgs {
  std::string coeffs, pivot, vars, window = "0,1,0,1";
  std::size_t grid = 200;
  bool all = false;
};

int do_trace(const TraceArgs& a, std::ostream& out) {
  const AlgebraicEquation eq = parse_equation(a.coeffs);
  const PivotChoice pv = parse_pivot(a.pivot);
  check_pivot(eq, pv);
  const PsiFamily fam = build_family(pv, eq.support());
  const auto vs = parse_reals(a.vars);
  if (vs.size() != 2) throw InvalidInput("--vars needs two slots");
  auto index_of = [&](double slot) {
    const auto it = std::find(fam.slots.begin(), fam.slots.end(), static_cast<unsigned>(slot));
    if (slot < 0 || slot != std::floor(slot) || it == fam.slots.end())
      throw InvalidInput("--vars slot " + format_double(slot) + " is not a free slot");
    return static_cast<std::size_t>(it - fam.slots.begin());
  };
  const std::size_t vx = index_of(vs[0]), vy = index_of(vs[1]);
  if (vx == vy) throw InvalidInput("--vars slots must differ");
  const auto w = parse_reals(a.window);
  if (w.size() != 4 || !(w[0] < w[1]) || !(w[2] < w[3])) throw InvalidInput("--window needs x0,x1,y0,y1 increasing");
  if (a.grid < 2) throw InvalidInput("--grid must be at least 2");
  const std::vector<double> fixed = scale_equation(eq, pv).amplitudes();

  std::vector<const PsiMember*> members;
  if (a.all) {
    members = fam.all();
  } else {
    try {
      members = active_members(fam);
    } catch (const NoActiveBoundary&) {
      members = fam.all();
    }
  }
  std::vector<std::pair<std::string, std::vector<Polyline>>> traces;
  for (const PsiMember* m : members)
    traces.emplace_back(m->id(), trace_level_set(m->poly, vx, vy, {w[0], w[1], w[2], w[3]}, a.grid, fixed));
  write_trace_csv(out, traces);
  return kOk;
}

// ---- casebook ----

struct CasebookArgs {
  std::string name, gamma, C, a, b;
  unsigned m = 0, n = 0;
  std::optional<std::size_t> terms;
  unsigned draws = 50;
  unsigned long long seed = 20240611ULL;
  bool json_out = false;
};

json roots_json(const CaseRoots& c) {
  json r = json::array();
  for (const auto& x : c.roots) r.push_back(root_json(x));
  return r;
}

std::vector<CaseReport> casebook_bring_jerrard(const CasebookArgs& a) {
  const std::size_t T = terms_or(a.terms, 0);
  std::vector<cplx> gammas;
  if (!a.gamma.empty()) gammas.push_back(parse_complex(a.gamma));
  else gammas = {0.6, cplx(0.0, 0.8), -0.7, 0.4, std::polar(0.3, kPi / 3.0)};
  const double thr = bring_jerrard_threshold();
  std::vector<CaseReport> out;
  for (cplx g : gammas) {
    const CaseRoots c = bring_jerrard_roots(g, T);
    CaseReport rep{"bring-jerrard gamma=" + complex_text(g), "pass", c.max_error,
                   {"Bring-Jerrard quintic x^5 - x + gamma", "single-pivot and split series regimes"}};
    const std::string expected = g == cplx(0.0, 0.0)                ? "factored"
                                 : c.near_threshold                 ? "boundary"
                                 : std::abs(g) > thr ? "single-pivot" : "split";
    if (c.regime != expected || !(c.max_error <= 1e-8) || (g != cplx(0.0, 0.0) && c.roots.size() < 5))
      rep.status = "fail";
    rep.details = json{{"gamma", complex_json(g)}, {"regime", c.regime}, {"roots", roots_json(c)}};
    out.push_back(std::move(rep));
  }
  const PsiFamily fam = build_family({0, 1}, std::vector<unsigned>{0, 1, 5});
  const std::array<double, 1> dir{1.0};
  const double lambda = boundary_on_ray(dir, fam);
  const double computed = std::pow(lambda, 0.25);
  const double err = std::abs(computed - thr) / thr;
  CaseReport th{"bring-jerrard threshold", err <= 1e-12 ? "pass" : "fail", err,
                {"Bring-Jerrard convergence threshold 4/5^(5/4)"}};
  th.details = json{{"computed", computed}, {"exact", thr}};
  out.push_back(std::move(th));
  return out;
}

std::vector<CaseReport> casebook_trinomial(const CasebookArgs& a) {
  const std::size_t T = terms_or(a.terms, 0);
  std::vector<TrinomialSpec> specs;
  if (a.m || a.n || !a.a.empty() || !a.b.empty()) {
    if (!a.m || !a.n || a.a.empty() || a.b.empty()) throw InvalidInput("trinomial needs --m, --n, --a and --b together");
    specs.push_back({a.m, a.n, parse_complex(a.a), parse_complex(a.b)});
  } else {
    TrinomialSpec base{2, 3, 1.0, 1.0};
    const double thr = base.threshold();
    specs.push_back({2, 3, 1.0, std::sqrt(2.0 * thr)});
    specs.push_back({2, 3, cplx(0.0, 1.0), std::polar(std::sqrt(0.5 * thr), 0.7)});
    specs.push_back({4, 1, -1.0, 0.6});
  }
  std::vector<CaseReport> out;
  for (const auto& s : specs) {
    const TrinomialCase c = trinomial_roots(s, T);
    CaseReport rep{"trinomial m=" + std::to_string(s.m) + " n=" + std::to_string(s.n), "pass", c.max_error,
                   {"trinomial x^(m+n) + a x^n + b", "redundant fourth series equals the second"}};
    if (!(c.max_error <= 1e-8) || !c.reversed_series_exact || c.roots.size() < s.m + s.n) rep.status = "fail";
    rep.details = json{{"a", complex_json(s.a)},
                       {"b", complex_json(s.b)},
                       {"amplitude_ratio", s.amplitude_ratio()},
                       {"threshold", s.threshold()},
                       {"regime", c.regime},
                       {"reversed_series_exact", c.reversed_series_exact},
                       {"reversed_series_deviation", c.reversed_series_deviation},
                       {"roots", roots_json(c)}};
    out.push_back(std::move(rep));
  }
  auto term_report = [](std::string name, std::vector<std::string> cites, const TermCheck& t) {
    CaseReport r{std::move(name), t.exact_match ? "pass" : "fail", t.max_deviation, std::move(cites)};
    r.details = json{{"terms", t.terms}, {"exact_match", t.exact_match}, {"printed_match", t.printed_match}, {"note", t.note}};
    return r;
  };
  for (unsigned m : {2u, 3u})
    for (unsigned n : {1u, 2u})
      out.push_back(term_report("lambert m=" + std::to_string(m) + " n=" + std::to_string(n),
                                {"Lambert series for x^n with x = q + x^m"}, lambert_check(m, n, 20)));
  out.push_back(term_report("euler alpha=3 beta=1 n=1", {"Euler trinomial series"}, euler_check(3, 1, 1, 20)));
  out.push_back(term_report("euler printed terms", {"Euler trinomial series, first printed terms"},
                            euler_printed_check(3, 1, 1)));
  for (double n : {1.0, 0.0}) {
    const RamanujanCheck rc = ramanujan_check(2, 3, n, 0.1, 20);
    const bool ok = rc.exact.exact_match && rc.gamma.max_deviation < 1e-12 &&
                    std::abs(rc.radius - rc.printed_radius) <= 1e-12 * rc.printed_radius &&
                    (n != 0.0 || rc.value == cplx(1.0, 0.0));
    CaseReport r{"ramanujan p=2 q=3 n=" + format_double(n) + " a=0.1", ok ? "pass" : "fail", rc.gamma.max_deviation,
                 {"Ramanujan trinomial series and its radius"}};
    r.details = json{{"exact_match", rc.exact.exact_match},
                     {"radius", rc.radius},
                     {"printed_radius", rc.printed_radius},
                     {"value", complex_json(rc.value)},
                     {"fixed_point_residual", rc.fixed_point_residual},
                     {"note", rc.gamma.note}};
    out.push_back(std::move(r));
  }
  return out;
}

json rows_json(const std::vector<DomainRow>& rows) {
  json r = json::array();
  for (const auto& row : rows)
    r.push_back(json{{"pivot", json::array({row.pivot.p, row.pivot.q})}, {"formula", row.formula}, {"matches", row.matches}});
  return r;
}

std::vector<CaseReport> casebook_cubic() {
  const CubicTable t = cubic_domain_table();
  const double e1 = std::abs(t.d02_a1_axis - 2.0), e3 = std::abs(t.d02_a3_axis - std::sqrt(4.0 / 27.0));
  const bool rows_ok = std::all_of(t.rows.begin(), t.rows.end(), [](const DomainRow& r) { return r.matches; });
  const bool ok = rows_ok && e1 <= 1e-9 && e3 <= 1e-9 && t.original_d02_rejects_origin;
  CaseReport r{"cubic-table", ok ? "pass" : "fail", std::max(e1, e3),
               {"corrected cubic domain table", "original (0,2) domain rejects the origin"}};
  r.details = json{{"rows", rows_json(t.rows)},
                   {"d02_a1_axis", t.d02_a1_axis},
                   {"d02_a3_axis", t.d02_a3_axis},
                   {"original_d02_rejects_origin", t.original_d02_rejects_origin}};
  return {r};
}

std::vector<CaseReport> casebook_quintic() {
  const QuinticTable t = principal_quintic_domains();
  const bool ok =
      t.origin_inside_all && std::all_of(t.rows.begin(), t.rows.end(), [](const DomainRow& r) { return r.matches; });
  CaseReport r{"principal-quintic", ok ? "pass" : "fail", 0.0, {"principal quintic domains of convergence"}};
  r.details = json{{"rows", rows_json(t.rows)}, {"origin_inside_all", t.origin_inside_all}};
  return {r};
}

CaseReport brioschi_report(cplx C, std::optional<bool> expect_covered) {
  const BrioschiVerdict v = brioschi_analysis(C);
  double max_error = 0.0;
  if (!v.roots.empty()) {
    const auto oracle = oracle_roots(brioschi_equation(C));
    for (const auto& r : v.roots) {
      double best = std::numeric_limits<double>::infinity();
      for (cplx o : oracle) best = std::min(best, std::abs(r.value - o) / std::max(1.0, std::abs(o)));
      max_error = std::max(max_error, best);
    }
  }
  std::string status = v.covered ? "pass" : "gap";
  if (expect_covered) status = *expect_covered == v.covered && max_error <= 1e-8 ? "pass" : "fail";
  CaseReport r{"brioschi C=" + complex_text(C), status, max_error, {"Brioschi quintic, pivot-by-pivot convergence"}};
  json pivots = json::array();
  for (const auto& p : v.per_pivot)
    pivots.push_back(json{{"pivot", json::array({p.pivot.p, p.pivot.q})}, {"outcome", to_string(p.outcome)}, {"roots", p.roots}});
  r.details = json{{"C", complex_json(C)}, {"covered", v.covered}, {"per_pivot", pivots}};
  return r;
}

std::vector<CaseReport> casebook_brioschi(const CasebookArgs& a) {
  const BrioschiThresholds th = brioschi_thresholds();
  if (!a.C.empty()) return {brioschi_report(parse_complex(a.C), std::nullopt)};
  const double el = std::abs(th.lower - th.exact_lower) / th.exact_lower;
  const double eu = std::abs(th.upper - th.exact_upper) / th.exact_upper;
  CaseReport t{"brioschi thresholds", std::max(el, eu) <= 1e-10 ? "pass" : "fail", std::max(el, eu),
               {"Brioschi |C| thresholds (+-17 + 13 sqrt 2)/42336"}};
  t.details = json{{"lower", th.lower}, {"upper", th.upper}, {"exact_lower", th.exact_lower}, {"exact_upper", th.exact_upper}};
  std::vector<CaseReport> out{t};
  out.push_back(brioschi_report(1e-3, true));
  out.push_back(brioschi_report(1e-5, true));
  out.push_back(brioschi_report(2e-4, false));
  return out;
}

std::vector<CaseReport> casebook_identities(const CasebookArgs& a) {
  IdentityOptions opts;
  opts.draws = a.draws;
  opts.seed = a.seed;
  std::vector<CaseReport> out;
  for (const auto& r : identity_suite(opts)) {
    CaseReport c{r.name, r.passed() ? "pass" : "fail", 0.0, {"Fuss-Catalan identities in exact rationals"}};
    c.details = json{{"cases", r.cases}, {"failures", r.failures}, {"printed_failures", r.printed_failures}, {"note", r.note}};
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CaseReport> casebook_sturmfels() {
  const SturmfelsReport s = sturmfels_checks();
  json coeffs = json::array();
  for (const auto& c : s.coefficients) coeffs.push_back(c.get_str());
  const bool ok = s.coefficients_match && s.quintic_05_leading_match;
  CaseReport r{"sturmfels", ok ? "pass" : "fail", 0.0, {"quintic series in the A-hypergeometric form", "constant M"}};
  r.details = json{{"coefficients", coeffs},
                   {"coefficients_match", s.coefficients_match},
                   {"quintic_05_leading_match", s.quintic_05_leading_match},
                   {"printed_05_a2_exponent_consistent", s.printed_05_a2_exponent_consistent},
                   {"M", s.M.get_str()},
                   {"M_ratio_limit_crosscheck", s.M_ratio_limit_crosscheck}};
  return {r};
}

int do_casebook(const CasebookArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<CaseReport> reports;
  if (a.name == "bring-jerrard") reports = casebook_bring_jerrard(a);
  else if (a.name == "trinomial") reports = casebook_trinomial(a);
  else if (a.name == "cubic-table") reports = casebook_cubic();
  else if (a.name == "principal-quintic") reports = casebook_quintic();
  else if (a.name == "brioschi") reports = casebook_brioschi(a);
  else if (a.name == "identities") reports = casebook_identities(a);
  else reports = casebook_sturmfels();

  if (a.json_out) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(r.to_json());
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& r : reports) {
      out << r.name << ": " << r.status << " max_error=" << format_double(r.max_error) << '\n';
      for (const auto& [k, v] : r.details.items())
        out << "  " << k << ' ' << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
    }
  }
  int code = kOk;
  for (const auto& r : reports) {
    if (r.status == "gap") {
      err << r.name << ": no convergent series cover; |C| lies in the gap between the (0,5) and (0,1)/(1,5) domains\n";
      code = std::max(code, int(kNoCover));
    } else if (r.status == "fail") {
      err << r.name << ": check failed\n";
      code = kInternal;
    }
  }
  return code;
}

}  // namespace

cplx parse_complex(std::string_view text) { return parse_single(text); }

std::vector<cplx> parse_coefficients(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw InvalidInput("empty coefficient list");
  const char sep = text.find(';') != std::string_view::npos ? ';' : ',';
  std::vector<cplx> out;
  for (auto item : split_top(text, sep)) {
    item = trim(item);
    if (sep == ',' && item.find(',') != std::string_view::npos && item.front() != '(')
      throw InvalidInput("ambiguous complex item '" + std::string(item) + "'");
    out.push_back(parse_single(item));
  }
  return out;
}

std::vector<double> parse_reals(std::string_view text) {
  std::vector<double> out;
  for (auto item : split_top(trim(text), ',')) out.push_back(parse_real(item));
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json CaseReport::to_json() const {
  return json{{"name", name},
              {"status", status},
              {"max_error", std::isfinite(max_error) ? json(max_error) : json(nullptr)},
              {"citations", citations},
              {"details", details}};
}

CaseReport CaseReport::from_json(const json& j) {
  CaseReport r;
  r.name = j.at("name").get<std::string>();
  r.status = j.at("status").get<std::string>();
  if (r.status != "pass" && r.status != "fail" && r.status != "gap") throw InvalidInput("unknown report status");
  const auto& e = j.at("max_error");
  r.max_error = e.is_null() ? std::numeric_limits<double>::infinity() : e.get<double>();
  r.citations = j.at("citations").get<std::vector<std::string>>();
  r.details = j.at("details");
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuss-Catalan series roots of polynomials and their domains of convergence", "fcs"};
  app.require_subcommand(1);

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "generating function B(mu; r; z)");
  eval->add_option("--mu", ev.mu, "exponents, comma separated")->required();
  eval->add_option("--r", ev.r, "power r");
  eval->add_option("--z", ev.z, "argument(s)")->required();
  eval->add_option("--terms", ev.terms, "truncation level");
  eval->add_flag("--json", ev.json_out);

  SolveArgs sv;
  auto* solve = app.add_subcommand("solve", "roots by series");
  solve->add_option("--coeffs", sv.coeffs, "a0,...,an")->required();
  solve->add_option("--pivot", sv.pivot, "p,q");
  solve->add_option("--terms", sv.terms, "truncation level");
  solve->add_flag("--json", sv.json_out);

  DomainArgs dm;
  auto* domain = app.add_subcommand("domain", "domain of convergence queries");
  domain->add_option("mode", dm.mode, "member, ray or bounds")->required()->check(CLI::IsMember({"member", "ray", "bounds"}));
  domain->add_option("--coeffs", dm.coeffs, "a0,...,an")->required();
  domain->add_option("--pivot", dm.pivot, "p,q")->required();
  domain->add_option("--point", dm.point, "amplitudes per free slot");
  domain->add_flag("--json", dm.json_out);

  TraceArgs tr;
  auto* trace = app.add_subcommand("trace", "zero level sets as CSV");
  trace->add_option("--coeffs", tr.coeffs, "a0,...,an")->required();
  trace->add_option("--pivot", tr.pivot, "p,q")->required();
  trace->add_option("--vars", tr.vars, "two free slots j,j'")->required();
  trace->add_option("--window", tr.window, "x0,x1,y0,y1");
  trace->add_option("--grid", tr.grid, "cells per side");
  trace->add_flag("--all", tr.all, "every member, not only the active ones");

  CasebookArgs cb;
  auto* casebook = app.add_subcommand("casebook", "worked cases");
  casebook->add_option("name", cb.name)
      ->required()
      ->check(CLI::IsMember(
          {"bring-jerrard", "trinomial", "cubic-table", "principal-quintic", "brioschi", "identities", "sturmfels"}));
  casebook->add_option("--gamma", cb.gamma, "Bring-Jerrard constant");
  casebook->add_option("--C", cb.C, "Brioschi constant");
  casebook->add_option("--m", cb.m);
  casebook->add_option("--n", cb.n);
  casebook->add_option("--a", cb.a);
  casebook->add_option("--b", cb.b);
  casebook->add_option("--terms", cb.terms, "truncation level, 0 adaptive");
  casebook->add_option("--draws", cb.draws, "random draws per identity");
  casebook->add_option("--seed", cb.seed);
  casebook->add_flag("--json", cb.json_out);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*eval) return do_eval(ev, out);
    if (*solve) return do_solve(sv, out, err);
    if (*domain) return do_domain(dm, out);
    if (*trace) return do_trace(tr, out);
    return do_casebook(cb, out, err);
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const NoConvergentCover& e) {
    err << e.what() << '\n';
    return kNoCover;
  } catch (const NoActiveBoundary& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const Error& e) {
    err << "internal inconsistency: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace fcs::cli
