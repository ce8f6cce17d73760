#include "fcseries/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "fcseries/errors.hpp"

namespace fcs {

namespace {

constexpr unsigned kShift(std::size_t index) {
  return static_cast<unsigned>(8 * (MultiPoly::kMaxVars - 1 - index));
}

bool divides(MultiPoly::Monomial d, MultiPoly::Monomial m) {
  for (std::size_t i = 0; i < MultiPoly::kMaxVars; ++i) {
    if (MultiPoly::exponent(d, i) > MultiPoly::exponent(m, i)) return false;
  }
  return true;
}

MultiPoly::Monomial add_monomials(MultiPoly::Monomial a, MultiPoly::Monomial b) {
  for (std::size_t i = 0; i < MultiPoly::kMaxVars; ++i) {
    if (MultiPoly::exponent(a, i) + MultiPoly::exponent(b, i) > 255)
      throw InternalInconsistency("MultiPoly: exponent overflow");
  }
  return a + b;
}

void require_same_vars(const MultiPoly& a, const MultiPoly& b) {
  if (a.names() != b.names()) throw InternalInconsistency("MultiPoly: variable sets differ");
}

}  // namespace

MultiPoly::MultiPoly(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() > kMaxVars) throw InvalidInput("MultiPoly: too many variables");
}

MultiPoly MultiPoly::constant(std::vector<std::string> names, const Integer& c) {
  MultiPoly p(std::move(names));
  p.add_term(0, c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> names, std::size_t index) {
  MultiPoly p(std::move(names));
  if (index >= p.nvars()) throw InvalidInput("MultiPoly: variable index out of range");
  p.add_term(Monomial{1} << kShift(index), 1);
  return p;
}

unsigned MultiPoly::exponent(Monomial m, std::size_t index) {
  return static_cast<unsigned>((m >> kShift(index)) & 0xffu);
}

MultiPoly::Monomial MultiPoly::make_monomial(std::span<const unsigned> exps) {
  if (exps.size() > kMaxVars) throw InvalidInput("MultiPoly: too many exponents");
  Monomial m = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > 255) throw InvalidInput("MultiPoly: exponent too large");
    m |= Monomial{exps[i]} << kShift(i);
  }
  return m;
}

std::vector<unsigned> MultiPoly::exponents(Monomial m) const {
  std::vector<unsigned> e(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) e[i] = exponent(m, i);
  return e;
}

Integer MultiPoly::constant_term() const {
  auto it = terms_.find(0);
  return it == terms_.end() ? Integer(0) : it->second;
}

unsigned MultiPoly::total_degree() const {
  unsigned best = 0;
  for (const auto& [m, c] : terms_) {
    unsigned d = 0;
    for (std::size_t i = 0; i < nvars(); ++i) d += exponent(m, i);
    best = std::max(best, d);
  }
  return best;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

void MultiPoly::add_term(Monomial m, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (names_.empty() && terms_.empty()) names_ = o.names_;
  require_same_vars(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (names_.empty() && terms_.empty()) names_ = o.names_;
  require_same_vars(*this, o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same_vars(a, b);
  MultiPoly out(a.names_);
  Integer prod;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      prod = ca * cb;
      out.add_term(add_monomials(ma, mb), prod);
    }
  }
  return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) {
  return a.names_ == b.names_ && a.terms_ == b.terms_;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly result = constant(names_, 1);
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

MultiPoly MultiPoly::exact_divide(const MultiPoly& d) const {
  require_same_vars(*this, d);
  if (d.is_zero()) throw InternalInconsistency("MultiPoly: division by zero polynomial");
  MultiPoly q(names_);
  if (d.is_constant()) {
    const Integer& c = d.terms_.begin()->second;
    for (const auto& [m, v] : terms_) {
      if (!mpz_divisible_p(v.get_mpz_t(), c.get_mpz_t()))
        throw InternalInconsistency("MultiPoly: inexact division");
      q.terms_.emplace(m, v / c);
    }
    return q;
  }
  MultiPoly r = *this;
  const auto [dm, dc] = *d.terms_.begin();
  Integer c;
  while (!r.is_zero()) {
    const auto [rm, rc] = *r.terms_.begin();
    if (!divides(dm, rm) || !mpz_divisible_p(rc.get_mpz_t(), dc.get_mpz_t()))
      throw InternalInconsistency("MultiPoly: inexact division");
    c = rc / dc;
    const Monomial shift = rm - dm;
    q.add_term(shift, c);
    for (const auto& [bm, bc] : d.terms_) r.add_term(bm + shift, -(c * bc));
  }
  return q;
}

MultiPoly MultiPoly::substitute_signs(std::span<const int> sigma) const {
  if (sigma.size() != nvars()) throw DimensionMismatch("substitute_signs: wrong tuple length");
  MultiPoly out(names_);
  for (const auto& [m, c] : terms_) {
    unsigned odd = 0;
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (sigma[i] < 0) odd += exponent(m, i);
    }
    out.terms_.emplace(m, (odd % 2 == 0) ? c : Integer(-c));
  }
  return out;
}

MultiPoly::Monomial MultiPoly::monomial_content() const {
  if (terms_.empty()) return 0;
  std::vector<unsigned> lo(nvars(), 255);
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < nvars(); ++i) lo[i] = std::min(lo[i], exponent(m, i));
  }
  return make_monomial(lo);
}

MultiPoly MultiPoly::divide_monomial(Monomial d) const {
  MultiPoly out(names_);
  for (const auto& [m, c] : terms_) {
    if (!divides(d, m)) throw InternalInconsistency("divide_monomial: not a factor");
    out.terms_.emplace(m - d, c);
  }
  return out;
}

double MultiPoly::evaluate(std::span<const double> x) const {
  if (x.size() != nvars()) throw DimensionMismatch("evaluate: wrong point length");
  long double acc = 0.0L;
  long double comp = 0.0L;
  for (const auto& [m, c] : terms_) {
    long double v = c.get_d();
    for (std::size_t i = 0; i < nvars(); ++i) {
      const unsigned e = exponent(m, i);
      for (unsigned k = 0; k < e; ++k) v *= x[i];
    }
    long double t = acc + v;
    if (std::fabs(acc) >= std::fabs(v))
      comp += (acc - t) + v;
    else
      comp += (v - t) + acc;
    acc = t;
  }
  return static_cast<double>(acc + comp);
}

Rational MultiPoly::evaluate(std::span<const Rational> x) const {
  if (x.size() != nvars()) throw DimensionMismatch("evaluate: wrong point length");
  Rational acc = 0;
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    for (std::size_t i = 0; i < nvars(); ++i) {
      const unsigned e = exponent(m, i);
      for (unsigned k = 0; k < e; ++k) v *= x[i];
    }
    acc += v;
  }
  return acc;
}

std::vector<Rational> MultiPoly::restrict_to_ray(std::span<const Rational> dir) const {
  if (dir.size() != nvars()) throw DimensionMismatch("restrict_to_ray: wrong direction length");
  std::vector<Rational> coef(total_degree() + 1, Rational(0));
  for (const auto& [m, c] : terms_) {
    Rational v = c;
    unsigned deg = 0;
    for (std::size_t i = 0; i < nvars(); ++i) {
      const unsigned e = exponent(m, i);
      deg += e;
      for (unsigned k = 0; k < e; ++k) v *= dir[i];
    }
    coef[deg] += v;
  }
  return coef;
}

std::string MultiPoly::to_string() const {
  std::ostringstream os;
  for (const auto& [m, c] : terms_) {
    os << c.get_str();
    for (std::size_t i = 0; i < nvars(); ++i) {
      const unsigned e = exponent(m, i);
      if (e > 0) os << " * " << names_[i] << '^' << e;
    }
    os << '\n';
  }
  if (terms_.empty()) os << "0\n";
  return os.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::vector<std::string>& names) : names_(names) {
    // Drop LaTeX spacing and sizing commands; keep everything else.
    for (std::size_t i = 0; i < text.size(); ++i) {
      char ch = text[i];
      if (ch == '\\') {
        ++i;
        if (i < text.size() && !std::isalpha(static_cast<unsigned char>(text[i]))) continue;
        while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
        --i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      src_ += ch;
    }
  }

  MultiPoly parse() {
    MultiPoly p = expr();
    if (pos_ != src_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidInput("parse_polynomial: " + why + " at offset " + std::to_string(pos_));
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  bool starts_factor() const {
    char c = peek();
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) ||
           c == '(' || c == '|';
  }

  MultiPoly expr() {
    MultiPoly acc = term();
    while (peek() == '+' || peek() == '-') {
      char op = src_[pos_++];
      MultiPoly rhs = term();
      if (op == '+')
        acc += rhs;
      else
        acc -= rhs;
    }
    return acc;
  }

  MultiPoly term() {
    MultiPoly acc = unary();
    while (true) {
      if (peek() == '*') {
        ++pos_;
        acc = acc * unary();
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  MultiPoly unary() {
    if (peek() == '-') {
      ++pos_;
      return -unary();
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  MultiPoly power() {
    MultiPoly base = primary();
    if (peek() == '^') {
      ++pos_;
      bool brace = peek() == '{';
      if (brace) ++pos_;
      unsigned e = static_cast<unsigned>(std::stoul(digits()));
      if (brace) {
        if (peek() != '}') fail("expected }");
        ++pos_;
      }
      return base.pow(e);
    }
    return base;
  }

  std::string digits() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return src_.substr(start, pos_ - start);
  }

  MultiPoly primary() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) return MultiPoly::constant(names_, Integer(digits()));
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (peek() != ')') fail("expected )");
      ++pos_;
      return inner;
    }
    if (c == '|') {
      ++pos_;
      MultiPoly v = identifier();
      if (peek() != '|') fail("expected |");
      ++pos_;
      return v;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("unexpected character");
  }

  MultiPoly identifier() {
    if (!std::isalpha(static_cast<unsigned char>(peek()))) fail("expected identifier");
    ++pos_;
    if (peek() == '_') ++pos_;
    bool brace = peek() == '{';
    if (brace) ++pos_;
    std::string slot = digits();
    if (brace) {
      if (peek() != '}') fail("expected }");
      ++pos_;
    }
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const std::string& n = names_[i];
      std::size_t k = n.size();
      while (k > 0 && std::isdigit(static_cast<unsigned char>(n[k - 1]))) --k;
      if (n.substr(k) == slot) return MultiPoly::variable(names_, i);
    }
    fail("unknown variable slot " + slot);
  }

  std::string src_;
  std::size_t pos_ = 0;
  const std::vector<std::string>& names_;
};

}  // namespace

MultiPoly parse_polynomial(std::string_view text, const std::vector<std::string>& names) {
  return Parser(text, names).parse();
}

}  // namespace fcs
