#include "fcseries/discriminant.hpp"

#include <algorithm>
#include <set>

#include "fcseries/errors.hpp"

namespace fcs {

namespace {

constexpr unsigned kMaxDegree = 6;

std::vector<std::string> slot_names(const std::vector<unsigned>& slots, char prefix) {
  std::vector<std::string> names;
  for (unsigned j : slots) names.push_back(std::string(1, prefix) + std::to_string(j));
  return names;
}

int sign_of(const Rational& x) { return sgn(x); }

}  // namespace

MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) throw InvalidInput("bareiss_determinant: empty matrix");
  const auto names = m[0][0].names();
  MultiPoly prev = MultiPoly::constant(names, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return MultiPoly(names);
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly v = m[k][k] * m[i][j];
        if (!m[i][k].is_zero() && !m[k][j].is_zero()) v -= m[i][k] * m[k][j];
        m[i][j] = v.exact_divide(prev);
      }
      m[i][k] = MultiPoly(names);
    }
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

MultiPoly discriminant(std::span<const MultiPoly> coeffs, DiscConvention conv) {
  if (coeffs.size() < 3 || coeffs.size() > kMaxDegree + 1)
    throw DegreeOutOfRange("discriminant: degree must be between 2 and 6");
  const std::size_t n = coeffs.size() - 1;
  const auto names = coeffs[0].names();
  if (coeffs[n].is_zero()) throw InvalidInput("discriminant: leading coefficient is zero");
  const std::size_t size = 2 * n - 1;
  std::vector<std::vector<MultiPoly>> syl(size, std::vector<MultiPoly>(size, MultiPoly(names)));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) syl[i][i + (n - j)] = coeffs[j];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) syl[n - 1 + i][i + (n - 1 - j)] = coeffs[j + 1] * Integer(j + 1);
  }
  MultiPoly d = bareiss_determinant(std::move(syl)).exact_divide(coeffs[n]);
  if (conv == DiscConvention::Standard && (n * (n - 1) / 2) % 2 == 1) d = -d;
  return d;
}

std::vector<MultiPoly> generic_coefficients(unsigned n) {
  std::vector<unsigned> slots(n + 1);
  for (unsigned j = 0; j <= n; ++j) slots[j] = j;
  const auto names = slot_names(slots, 'a');
  std::vector<MultiPoly> c;
  for (unsigned j = 0; j <= n; ++j) c.push_back(MultiPoly::variable(names, j));
  return c;
}

MultiPoly generic_discriminant(unsigned n, DiscConvention conv) {
  const auto c = generic_coefficients(n);
  return discriminant(c, conv);
}

MultiPoly discriminant_symbolic(unsigned n, const std::map<unsigned, int>& fixed) {
  if (n < 2 || n > kMaxDegree) throw DegreeOutOfRange("discriminant_symbolic: degree must be between 2 and 6");
  std::vector<unsigned> slots;
  for (unsigned j = 0; j <= n; ++j)
    if (!fixed.contains(j)) slots.push_back(j);
  const auto names = slot_names(slots, 'b');
  std::vector<MultiPoly> c;
  std::size_t v = 0;
  for (unsigned j = 0; j <= n; ++j) {
    auto it = fixed.find(j);
    if (it != fixed.end())
      c.push_back(MultiPoly::constant(names, it->second));
    else
      c.push_back(MultiPoly::variable(names, v++));
  }
  return discriminant(c);
}

int OriginInfo::near_sign() const {
  switch (cls) {
    case OriginClass::NonzeroConstant:
      return sgn(value);
    case OriginClass::LocalMax:
      return -1;
    case OriginClass::LocalMin:
      return 1;
    case OriginClass::Saddle:
      return 0;
  }
  return 0;
}

std::string to_string(OriginClass c) {
  switch (c) {
    case OriginClass::NonzeroConstant:
      return "NonzeroConstant";
    case OriginClass::LocalMax:
      return "LocalMax";
    case OriginClass::LocalMin:
      return "LocalMin";
    case OriginClass::Saddle:
      return "Saddle";
  }
  return "?";
}

OriginInfo origin_classify(const MultiPoly& member) {
  OriginInfo info;
  info.value = member.constant_term();
  if (info.value != 0) {
    info.cls = OriginClass::NonzeroConstant;
    return info;
  }
  const std::size_t k = member.nvars();
  std::vector<std::vector<Rational>> probes;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> d(k, Rational(0));
    d[i] = 1;
    probes.push_back(std::move(d));
  }
  if (k > 1) probes.emplace_back(k, Rational(1));
  std::vector<int> signs;
  for (const auto& d : probes) {
    int s = 0;
    for (const Rational& c : member.restrict_to_ray(d)) {
      if (c != 0) {
        s = sign_of(c);
        break;
      }
    }
    signs.push_back(s);
  }
  if (signs.empty() || std::all_of(signs.begin(), signs.end(), [](int s) { return s == 0; }))
    throw Indeterminate("origin_classify: member vanishes along every probe direction");
  if (std::all_of(signs.begin(), signs.end(), [](int s) { return s < 0; }))
    info.cls = OriginClass::LocalMax;
  else if (std::all_of(signs.begin(), signs.end(), [](int s) { return s > 0; }))
    info.cls = OriginClass::LocalMin;
  else
    info.cls = OriginClass::Saddle;
  return info;
}

std::string PsiMember::id() const {
  std::string s = q_sign > 0 ? "psi+[" : "psi-[";
  for (int v : sigmas.front()) s += v > 0 ? '+' : '-';
  return s + "]";
}

const PsiMember* PsiFamily::find(int q_sign, std::span<const int> sigma) const {
  const auto& set = q_sign > 0 ? plus : minus;
  for (const auto& m : set) {
    for (const auto& s : m.sigmas) {
      if (std::equal(s.begin(), s.end(), sigma.begin(), sigma.end())) return &m;
    }
  }
  return nullptr;
}

std::vector<const PsiMember*> PsiFamily::all() const {
  std::vector<const PsiMember*> out;
  for (const auto& m : plus) out.push_back(&m);
  for (const auto& m : minus) out.push_back(&m);
  return out;
}

PsiFamily build_family(const PivotChoice& pivot, unsigned n) {
  std::vector<unsigned> support(n + 1);
  for (unsigned j = 0; j <= n; ++j) support[j] = j;
  return build_family(pivot, support);
}

PsiFamily build_family(const PivotChoice& pivot, const std::vector<unsigned>& support_in) {
  std::vector<unsigned> support = support_in;
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  if (support.empty()) throw InvalidInput("build_family: empty support");
  const unsigned n = support.back();
  if (n < 2 || n > kMaxDegree) throw DegreeOutOfRange("build_family: degree must be between 2 and 6");
  if (pivot.p >= pivot.q || !std::binary_search(support.begin(), support.end(), pivot.p) ||
      !std::binary_search(support.begin(), support.end(), pivot.q))
    throw InvalidInput("build_family: pivot slots must be distinct members of the support");

  PsiFamily fam;
  fam.pivot = pivot;
  fam.degree = n;
  fam.support = support;
  fam.slots = free_slots(support, pivot);
  for (unsigned j : fam.slots) fam.mu.push_back(pivot_exponent(pivot, j));
  const auto names = slot_names(fam.slots, 'b');
  const std::size_t k = fam.slots.size();

  auto general = [&](int q_sign) {
    std::vector<MultiPoly> c(n + 1, MultiPoly(names));
    std::size_t v = 0;
    for (unsigned j : support) {
      if (j == pivot.p)
        c[j] = MultiPoly::constant(names, 1);
      else if (j == pivot.q)
        c[j] = MultiPoly::constant(names, q_sign);
      else
        c[j] = MultiPoly::variable(names, v++);
    }
    return discriminant(c);
  };

  MultiPoly plus_raw = general(1);
  MultiPoly minus_raw = general(-1);
  fam.plus_content = plus_raw.monomial_content();
  fam.minus_content = minus_raw.monomial_content();
  fam.plus_general = plus_raw.divide_monomial(fam.plus_content);
  fam.minus_general = minus_raw.divide_monomial(fam.minus_content);

  std::vector<std::vector<int>> tuples;
  for (std::size_t bits = 0; bits < (std::size_t{1} << k); ++bits) {
    std::vector<int> s(k);
    for (std::size_t i = 0; i < k; ++i) s[i] = (bits >> (k - 1 - i)) & 1u ? -1 : 1;
    tuples.push_back(std::move(s));
  }

  auto fill = [&](const MultiPoly& g, int q_sign, std::vector<PsiMember>& out) {
    for (const auto& s : tuples) {
      MultiPoly p = g.substitute_signs(s);
      auto it = std::find_if(out.begin(), out.end(), [&](const PsiMember& m) { return m.poly == p; });
      if (it != out.end()) {
        it->sigmas.push_back(s);
        continue;
      }
      PsiMember m;
      m.q_sign = q_sign;
      m.sigmas.push_back(s);
      m.poly = std::move(p);
      m.origin = origin_classify(m.poly);
      out.push_back(std::move(m));
    }
  };
  fill(fam.plus_general, 1, fam.plus);
  fill(fam.minus_general, -1, fam.minus);
  return fam;
}

std::optional<Parity> compare_families(const PsiFamily& family) {
  auto key_set = [](const std::vector<PsiMember>& ms) {
    std::set<std::string> s;
    for (const auto& m : ms) s.insert(m.poly.to_string());
    return s;
  };
  const auto a = key_set(family.plus);
  const auto b = key_set(family.minus);
  if (a == b) return Parity::Identical;
  std::vector<std::string> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
  if (common.empty()) return Parity::Disjoint;
  return std::nullopt;
}

Parity parity_check(const PivotChoice& pivot, const PsiFamily& family) {
  const Parity expected = (pivot.q - pivot.p) % 2 == 1 ? Parity::Identical : Parity::Disjoint;
  const auto found = compare_families(family);
  if (!found || *found != expected)
    throw InternalInconsistency("parity_check: Ψ⁺/Ψ⁻ comparison contradicts the parity of q - p");
  return expected;
}

PowerSubstitutionCheck power_substitution_discriminant(unsigned n, unsigned m) {
  if (n < 2 || m < 1 || n * m > kMaxDegree)
    throw DegreeOutOfRange("power_substitution_discriminant: need n >= 2 and n*m <= 6");
  const auto a = generic_coefficients(n);
  const auto names = a[0].names();
  const MultiPoly base = discriminant(a, DiscConvention::Standard);
  PowerSubstitutionCheck out;
  if (m == 1) {
    out.lhs = base;
    out.rhs = base;
    out.holds = true;
    return out;
  }
  std::vector<MultiPoly> stretched(n * m + 1, MultiPoly(names));
  for (unsigned j = 0; j <= n; ++j) stretched[j * m] = a[j];
  out.lhs = discriminant(stretched, DiscConvention::Standard);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), m, m * n);
  if ((n * m * (m - 1) / 2) % 2 == 1) scale = -scale;
  out.rhs = (a[0] * a[n]).pow(m - 1) * base.pow(m) * scale;
  out.holds = out.lhs == out.rhs;
  return out;
}

}  // namespace fcs
