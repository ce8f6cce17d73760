#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fcs {

using Integer = mpz_class;
using Rational = mpq_class;

// Exact polynomial over the integers in at most eight named variables.
// Monomials pack one byte per exponent, variable 0 in the most significant byte,
// so integer order on the packed key is lexicographic order on exponents.
class MultiPoly {
 public:
  using Monomial = std::uint64_t;
  static constexpr std::size_t kMaxVars = 8;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> names);

  static MultiPoly constant(std::vector<std::string> names, const Integer& c);
  static MultiPoly variable(std::vector<std::string> names, std::size_t index);

  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const std::map<Monomial, Integer, std::greater<>>& terms() const { return terms_; }

  static unsigned exponent(Monomial m, std::size_t index);
  static Monomial make_monomial(std::span<const unsigned> exps);
  std::vector<unsigned> exponents(Monomial m) const;

  Integer constant_term() const;
  unsigned total_degree() const;
  bool is_constant() const;

  void add_term(Monomial m, const Integer& c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const Integer& c);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Integer& c) { return a *= c; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);

  MultiPoly pow(unsigned e) const;
  // Quotient when this is known to be a multiple of d; throws InternalInconsistency otherwise.
  MultiPoly exact_divide(const MultiPoly& d) const;

  // Replace variable i by sigma[i] * variable i.
  MultiPoly substitute_signs(std::span<const int> sigma) const;
  // Componentwise minimum exponent over all terms.
  Monomial monomial_content() const;
  MultiPoly divide_monomial(Monomial m) const;

  double evaluate(std::span<const double> x) const;
  Rational evaluate(std::span<const Rational> x) const;
  // Coefficients, by power of s, of the univariate polynomial s ↦ P(s·dir).
  std::vector<Rational> restrict_to_ray(std::span<const Rational> dir) const;

  // One term per line, `coef * name^e * ...`, descending lexicographic exponent order.
  std::string to_string() const;

 private:
  std::vector<std::string> names_;
  std::map<Monomial, Integer, std::greater<>> terms_;
};

// Parses integer polynomial expressions with + - * ^, parentheses and implicit
// products. Identifiers like a_3, |b_3|, b3 or a_{3} refer to the variable whose
// name ends in the same slot number.
MultiPoly parse_polynomial(std::string_view text, const std::vector<std::string>& names);

}  // namespace fcs
