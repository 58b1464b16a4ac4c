#pragma once

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfdist/symbol.hpp"

namespace surfdist {

using Rational = mpq_class;

/// Power product; factors are sorted by symbol id and exponents are positive.
struct Monomial {
  std::vector<std::pair<SymbolId, unsigned>> factors;
  unsigned degree = 0;

  bool is_one() const { return factors.empty(); }
  unsigned exponent(SymbolId v) const;
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors == b.factors; }
};

/// Graded lexicographic comparison; smaller ids have higher lex priority.
/// Returns <0, 0, >0.
int compare_grlex(const Monomial& a, const Monomial& b);
Monomial operator*(const Monomial& a, const Monomial& b);
bool divides(const Monomial& d, const Monomial& m);
Monomial quotient(const Monomial& m, const Monomial& d);

struct Term {
  Monomial mono;
  Rational coeff;
};

/// Sparse multivariate polynomial over Q. Terms are kept strictly
/// decreasing in grlex order with no zero coefficients, so equality of
/// term lists is equality of polynomials.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Rational& c);
  explicit Poly(long c) : Poly(Rational(c)) {}
  static Poly variable(SymbolId v, unsigned exponent = 1);
  static Poly monomial(Monomial m, Rational c);
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_monomial() const { return terms_.size() == 1; }
  Rational constant_value() const;
  const Term& leading() const { return terms_.front(); }
  unsigned degree_in(SymbolId v) const;
  unsigned total_degree() const;
  std::vector<SymbolId> variables() const;
  bool contains(SymbolId v) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly times(const Monomial& m) const;
  Poly pow(unsigned n) const;
  friend bool operator==(const Poly& a, const Poly& b);

  /// Quotient if `d` divides this polynomial exactly.
  std::optional<Poly> divide_exact(const Poly& d) const;
  /// Partial derivative; jet atoms are promoted when `v` is a base coordinate.
  Poly derivative(SymbolId v) const;
  Rational evaluate(const std::function<Rational(SymbolId)>& value) const;

  /// Coefficients as a polynomial in `v`: result[k] multiplies v^k.
  std::vector<Poly> coefficients_in(SymbolId v) const;
  static Poly from_coefficients(SymbolId v, const std::vector<Poly>& coeffs);

  /// Positive rational c such that this/c has coprime integer coefficients.
  Rational content() const;
  /// Largest monomial dividing every term.
  Monomial monomial_content() const;

  /// Text in print order (see SymbolRegistry); parseable by the expression grammar.
  std::string str() const;
  /// Leading coefficient with respect to print order.
  Rational print_leading_coefficient() const;

 private:
  std::vector<Term> terms_;
};

/// Greatest common divisor, normalized to integer coefficients with unit
/// content and positive leading coefficient. gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);

}  // namespace surfdist
