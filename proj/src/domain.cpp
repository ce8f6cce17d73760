#include "fcseries/domain.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>

#include "fcseries/convergence.hpp"
#include "fcseries/errors.hpp"

namespace fcs {

namespace {

constexpr double kScaleTolerance = 1e-10;

// Univariate polynomial over Q, index = power.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Rational eval(const UPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

UPoly derivative(const UPoly& p) {
  UPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

UPoly remainder(UPoly a, const UPoly& b) {
  const std::size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

void normalize(UPoly& p) {
  const Rational lc = abs(p.back());
  for (auto& c : p) c /= lc;
}

class SturmChain {
 public:
  explicit SturmChain(const UPoly& p) {
    chain_.push_back(p);
    UPoly d = derivative(p);
    if (d.empty()) return;
    normalize(d);
    chain_.push_back(d);
    for (;;) {
      UPoly r = remainder(chain_[chain_.size() - 2], chain_.back());
      if (r.empty()) break;
      for (auto& c : r) c = -c;
      normalize(r);
      chain_.push_back(std::move(r));
    }
  }

  int variations(const Rational& x) const {
    int count = 0, last = 0;
    for (const auto& q : chain_) {
      const int s = sgn(eval(q, x));
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  // Distinct roots in (a, b].
  int count(const Rational& a, const Rational& b) const { return variations(a) - variations(b); }

 private:
  std::vector<UPoly> chain_;
};

UPoly quotient(UPoly a, const UPoly& b) {
  UPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return q;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    UPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  normalize(a);
  return a;
}

// Smallest root of p in (lo, hi], or +inf. Every root counts, touching ones
// included: a tangency still closes off the region connected to the origin.
double first_root(UPoly p, const Rational& lo, const Rational& hi, double rel_tol) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  trim(p);
  std::size_t low = 0;
  while (low < p.size() && p[low] == 0) ++low;
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(low));
  if (p.size() <= 1) return inf;
  // square-free part: same roots, all simple, so the sign flips across each
  const UPoly g = quotient(p, gcd(p, derivative(p)));
  const SturmChain chain(g);
  Rational a = lo, b = hi;
  int va = chain.variations(a), vb = chain.variations(b);
  if (va - vb == 0) return inf;
  const Rational width_tol = hi * Rational(rel_tol);
  while (va - vb > 1 && b - a > width_tol) {
    const Rational m = (a + b) / 2;
    const int vm = chain.variations(m);
    if (va - vm >= 1) {
      b = m;
      vb = vm;
    } else {
      a = m;
      va = vm;
    }
  }
  int sa = sgn(eval(g, a));
  while (b - a > width_tol) {
    const Rational m = (a + b) / 2;
    const int sm = sgn(eval(g, m));
    if (sm == 0) return m.get_d();
    if (sm != sa) {
      b = m;
    } else {
      a = m;
      sa = sm;
    }
  }
  return Rational((a + b) / 2).get_d();
}

std::vector<Rational> exact_direction(std::span<const double> direction) {
  std::vector<Rational> d;
  for (double x : direction) d.emplace_back(x);
  return d;
}

bool sign_definite(const MultiPoly& p) {
  int s = 0;
  for (const auto& [mono, coef] : p.terms()) {
    const int c = sgn(coef);
    if (s != 0 && c != s) return false;
    s = c;
  }
  return true;
}

void check_dimension(std::span<const double> point, const PsiFamily& family) {
  if (point.size() != family.variable_count())
    throw DimensionMismatch("amplitude point length differs from the number of free slots");
  for (double x : point)
    if (!(x >= 0.0) || !std::isfinite(x)) throw InvalidInput("amplitudes must be finite and nonnegative");
}

std::vector<const PsiMember*> candidate_pool(const PsiFamily& family) {
  std::vector<const PsiMember*> pool;
  for (const auto& m : family.plus) pool.push_back(&m);
  if ((family.pivot.q - family.pivot.p) % 2 == 0)
    for (const auto& m : family.minus) pool.push_back(&m);
  return pool;
}

std::vector<const PsiMember*> active_or_empty(const PsiFamily& family) {
  try {
    return active_members(family);
  } catch (const NoActiveBoundary&) {
    return {};
  }
}

// The boundary scale comes from the growth rate of the coefficients; the
// members only pin it exactly and name the level set that carries it.
RayCrossing search_ray(std::span<const double> direction, const PsiFamily& family) {
  RayCrossing out;
  std::vector<double> mu;
  for (const auto& m : family.mu) mu.push_back(m.get_d());
  const double phi = growth_exponent(direction, mu);
  if (!std::isfinite(phi)) return out;
  const double lambda = std::exp(-phi);
  const auto dir = exact_direction(direction);
  const auto active = active_or_empty(family);
  const auto pool = candidate_pool(family);
  for (double band : {1e-9, 1e-6}) {
    const Rational lo(lambda * (1.0 - band)), hi(lambda * (1.0 + band));
    for (const auto* group : {&active, &pool}) {
      for (const PsiMember* m : *group) {
        const double s = first_root(m->poly.restrict_to_ray(dir), lo, hi, 1e-15);
        if (s < out.scale) out = {s, m};
      }
      if (out.member) return out;
    }
  }
  out.scale = lambda;
  return out;
}

}  // namespace

std::vector<const PsiMember*> active_members(const PsiFamily& family) {
  std::vector<const PsiMember*> pool;
  for (const auto& m : family.plus) pool.push_back(&m);
  if ((family.pivot.q - family.pivot.p) % 2 == 0)
    for (const auto& m : family.minus) pool.push_back(&m);
  const bool nonzero_origin = std::any_of(pool.begin(), pool.end(), [](const PsiMember* m) {
    return m->origin.cls == OriginClass::NonzeroConstant;
  });
  std::vector<const PsiMember*> out;
  for (const PsiMember* m : pool) {
    if (!nonzero_origin && m->origin.cls == OriginClass::Saddle) continue;
    if (sign_definite(m->poly)) continue;
    out.push_back(m);
  }
  if (!nonzero_origin && std::none_of(pool.begin(), pool.end(), [](const PsiMember* m) {
        return m->origin.cls != OriginClass::Saddle;
      }))
    throw NoActiveBoundary("every member of the family has a saddle at the origin");
  return out;
}

RayCrossing first_crossing(std::span<const double> direction, const PsiFamily& family) {
  check_dimension(direction, family);
  return search_ray(direction, family);
}

double boundary_on_ray(std::span<const double> direction, const PsiFamily& family) {
  return first_crossing(direction, family).scale;
}

DomainVerdict member(std::span<const double> point, const PsiFamily& family) {
  check_dimension(point, family);
  DomainVerdict v;
  const RayCrossing s = search_ray(point, family);
  const double lambda = s.scale;
  if (!std::isfinite(lambda)) return v;
  const std::string id = s.member ? s.member->id() : "growth-rate";
  if (lambda < 1.0 - kScaleTolerance) {
    v.inside = false;
    v.binding = Binding{id, lambda};
  } else if (lambda <= 1.0 + kScaleTolerance) {
    v.on_boundary = true;
    v.binding = Binding{id, lambda};
  }
  return v;
}

std::vector<BoundCondition> binding_conditions(const PsiFamily& family, std::size_t directions) {
  const std::size_t k = family.variable_count();
  const auto active = active_or_empty(family);
  std::map<const PsiMember*, int> hit;
  static constexpr double kSteps[] = {0.41421356237309515, 0.7320508075688772, 0.2360679774997898,
                                      0.6457513110645907,  0.3166247903554,    0.6055512754639891};
  for (std::size_t i = 0; i < directions; ++i) {
    std::vector<double> d(k);
    if (k == 1) {
      d[0] = 1.0;
    } else if (k == 2) {
      const double theta = (static_cast<double>(i) + 0.5) / static_cast<double>(directions) * kPi / 2.0;
      d = {std::cos(theta), std::sin(theta)};
    } else {
      for (std::size_t j = 0; j < k; ++j) {
        const double u = std::fmod((static_cast<double>(i) + 0.5) * kSteps[j % 6] + 0.5 * j, 1.0);
        d[j] = 0.02 + 0.96 * u;
      }
    }
    const RayCrossing c = first_crossing(d, family);
    if (!c.member || hit.count(c.member)) continue;
    int sign = c.member->origin.near_sign();
    if (sign == 0 || std::find(active.begin(), active.end(), c.member) == active.end()) {
      // sign just inside the boundary along this ray
      std::vector<double> x(k);
      for (std::size_t j = 0; j < k; ++j) x[j] = d[j] * c.scale * (1.0 - 1e-6);
      const double val = c.member->poly.evaluate(x);
      sign = val > 0.0 ? 1 : (val < 0.0 ? -1 : 0);
    }
    hit[c.member] = sign;
  }
  std::vector<BoundCondition> out;
  for (const PsiMember* m : family.all()) {
    auto it = hit.find(m);
    if (it != hit.end()) out.push_back({m, it->second});
  }
  return out;
}

std::vector<Polyline> trace_level_set(const MultiPoly& member_poly, std::size_t vx, std::size_t vy,
                                      const Window& window, std::size_t grid, std::span<const double> fixed) {
  const std::size_t k = member_poly.nvars();
  if (vx >= k || vy >= k || vx == vy) throw InvalidInput("trace_level_set: variable pair out of range");
  if (grid < 2) throw InvalidInput("trace_level_set: grid must be at least 2");
  if (!fixed.empty() && fixed.size() != k) throw DimensionMismatch("trace_level_set: fixed values length");
  std::vector<double> x(k, 0.0);
  if (!fixed.empty()) std::copy(fixed.begin(), fixed.end(), x.begin());

  const std::size_t n = grid;
  auto gx = [&](std::size_t i) { return window.x0 + (window.x1 - window.x0) * static_cast<double>(i) / n; };
  auto gy = [&](std::size_t j) { return window.y0 + (window.y1 - window.y0) * static_cast<double>(j) / n; };
  std::vector<double> f((n + 1) * (n + 1));
  auto at = [&](std::size_t i, std::size_t j) -> double& { return f[j * (n + 1) + i]; };
  for (std::size_t j = 0; j <= n; ++j)
    for (std::size_t i = 0; i <= n; ++i) {
      x[vx] = gx(i);
      x[vy] = gy(j);
      at(i, j) = member_poly.evaluate(x);
    }

  // Edge keys: horizontal edge (i,j)-(i+1,j) -> 2*(j*(n+1)+i), vertical (i,j)-(i,j+1) -> +1.
  auto hkey = [&](std::size_t i, std::size_t j) { return 2 * (j * (n + 1) + i); };
  auto vkey = [&](std::size_t i, std::size_t j) { return 2 * (j * (n + 1) + i) + 1; };
  auto positive = [](double v) { return v >= 0.0; };
  auto point_on = [&](std::size_t key) -> std::array<double, 2> {
    const std::size_t cell = key / 2;
    const std::size_t i = cell % (n + 1), j = cell / (n + 1);
    const double a = at(i, j);
    if (key % 2 == 0) {
      const double b = at(i + 1, j);
      const double t = a / (a - b);
      return {gx(i) + t * (gx(i + 1) - gx(i)), gy(j)};
    }
    const double b = at(i, j + 1);
    const double t = a / (a - b);
    return {gx(i), gy(j) + t * (gy(j + 1) - gy(j))};
  };

  std::vector<std::array<std::size_t, 2>> segments;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      const bool s0 = positive(at(i, j)), s1 = positive(at(i + 1, j)), s2 = positive(at(i + 1, j + 1)),
                 s3 = positive(at(i, j + 1));
      std::vector<std::size_t> e;
      if (s0 != s1) e.push_back(hkey(i, j));
      if (s1 != s2) e.push_back(vkey(i + 1, j));
      if (s3 != s2) e.push_back(hkey(i, j + 1));
      if (s0 != s3) e.push_back(vkey(i, j));
      if (e.size() == 2) {
        segments.push_back({e[0], e[1]});
      } else if (e.size() == 4) {
        const double centre = 0.25 * (at(i, j) + at(i + 1, j) + at(i + 1, j + 1) + at(i, j + 1));
        if (positive(centre) == s0) {
          segments.push_back({e[0], e[1]});
          segments.push_back({e[2], e[3]});
        } else {
          segments.push_back({e[0], e[3]});
          segments.push_back({e[1], e[2]});
        }
      }
    }

  std::map<std::size_t, std::vector<std::size_t>> by_edge;
  for (std::size_t s = 0; s < segments.size(); ++s)
    for (std::size_t key : segments[s]) by_edge[key].push_back(s);
  std::vector<bool> used(segments.size(), false);
  auto next_segment = [&](std::size_t key, std::size_t from) -> std::optional<std::size_t> {
    for (std::size_t s : by_edge[key])
      if (s != from && !used[s]) return s;
    return std::nullopt;
  };

  std::vector<Polyline> out;
  for (std::size_t start = 0; start < segments.size(); ++start) {
    if (used[start]) continue;
    used[start] = true;
    std::vector<std::size_t> keys = {segments[start][0], segments[start][1]};
    for (int dir = 0; dir < 2; ++dir) {
      std::size_t cur = start;
      for (;;) {
        const std::size_t key = dir == 0 ? keys.back() : keys.front();
        auto nxt = next_segment(key, cur);
        if (!nxt) break;
        used[*nxt] = true;
        const auto& sg = segments[*nxt];
        const std::size_t other = sg[0] == key ? sg[1] : sg[0];
        if (dir == 0)
          keys.push_back(other);
        else
          keys.insert(keys.begin(), other);
        cur = *nxt;
      }
    }
    Polyline pl;
    for (std::size_t key : keys) pl.points.push_back(point_on(key));
    out.push_back(std::move(pl));
  }
  return out;
}

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void write_trace_csv(std::ostream& out, const std::vector<std::pair<std::string, std::vector<Polyline>>>& traces) {
  out << "# psi level set trace\n";
  out << "member_id,polyline_id,x,y\n";
  for (const auto& [id, lines] : traces)
    for (std::size_t p = 0; p < lines.size(); ++p)
      for (const auto& pt : lines[p].points)
        out << id << ',' << p << ',' << shortest(pt[0]) << ',' << shortest(pt[1]) << '\n';
}

std::string to_string(Convergence c) {
  switch (c) {
    case Convergence::Converges:
      return "Converges";
    case Convergence::Diverges:
      return "Diverges";
    case Convergence::Borderline:
      return "Borderline";
  }
  return "?";
}

std::vector<std::size_t> default_schedule(std::size_t variables) {
  std::vector<std::size_t> s;
  const unsigned lo = variables >= 2 ? 5 : 6, hi = variables >= 2 ? 10 : 14;
  for (unsigned e = lo; e <= hi; ++e) s.push_back(std::size_t{1} << e);
  return s;
}

EmpiricalReport empirical_convergence(const AlgebraicEquation& eq, const PivotChoice& pivot, unsigned branch,
                                      std::span<const std::size_t> schedule_in) {
  eq.validate();
  const ScaledEquation s = scale_equation(eq, pivot);
  if (branch >= s.branch_count()) throw BranchOutOfRange("branch index exceeds q - p - 1");
  EmpiricalReport rep;
  const cplx pre = pow_cut(s.scale, 1.0) * phase_pi((2.0 * branch + 1.0) / s.branch_count());
  if (s.slots.empty()) {
    rep.verdict = Convergence::Converges;
    rep.residual = residual(eq, pre);
    return rep;
  }
  std::vector<std::size_t> schedule(schedule_in.begin(), schedule_in.end());
  if (schedule.empty()) schedule = default_schedule(s.slots.size());
  if (schedule.size() < 3) throw InvalidInput("empirical_convergence: schedule needs at least three points");
  LevelSeries series(MultiFCParams{s.mu, 1.0 / s.branch_count()}, s.arguments(branch));
  std::vector<double> blocks;
  std::size_t prev = 0;
  for (std::size_t T : schedule) {
    series.extend_to(T);
    double block = 0.0;
    for (std::size_t t = prev + 1; t <= T; ++t) block += series.level_abs(t);
    blocks.push_back(block);
    prev = T;
  }
  const double last = blocks.back(), before = blocks[blocks.size() - 2];
  rep.last_ratio = before > 0.0 ? last / before : (last > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  rep.residual = residual(eq, pre * series.value());
  if (!std::isfinite(rep.last_ratio) || std::isnan(rep.residual) || rep.last_ratio > 1.0) {
    rep.verdict = Convergence::Diverges;
  } else if (rep.last_ratio < 0.5 && rep.residual < 1e-6) {
    rep.verdict = Convergence::Converges;
  } else {
    rep.verdict = Convergence::Borderline;
  }
  return rep;
}

bool log_convexity_probe(std::span<const double> p1, std::span<const double> p2, const PsiFamily& family,
                         std::size_t samples) {
  if (p1.size() != p2.size()) throw DimensionMismatch("log_convexity_probe: points differ in length");
  for (std::size_t j = 0; j < p1.size(); ++j)
    if (!(p1[j] > 0.0) || !(p2[j] > 0.0)) throw InvalidInput("log_convexity_probe: points must be strictly positive");
  if (samples < 2) samples = 2;
  std::vector<double> x(p1.size());
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(samples - 1);
    for (std::size_t j = 0; j < p1.size(); ++j) x[j] = std::pow(p1[j], t) * std::pow(p2[j], 1.0 - t);
    if (!member(x, family).inside) return false;
  }
  return true;
}

}  // namespace fcs
