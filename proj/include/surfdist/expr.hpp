#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "surfdist/poly.hpp"

namespace surfdist {

/// Exact rational function over Q.
///
/// Stored as a reduced fraction num/den whose denominator has leading
/// coefficient 1 in grlex order, so two Exprs are equal iff their
/// numerators and denominators are equal term by term.
class Expr {
 public:
  Expr() : den_(1) {}
  Expr(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Expr(long c) : Expr(Rational(c)) {}            // NOLINT(google-explicit-constructor)
  Expr(int c) : Expr(Rational(c)) {}             // NOLINT(google-explicit-constructor)
  explicit Expr(Poly p) : num_(std::move(p)), den_(1) {}

  static Expr symbol(SymbolId id);
  /// Named coordinate/parameter/jet already in the registry.
  static Expr named(std::string_view name);
  static Expr fraction(Poly num, Poly den);

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  Rational constant_value() const;

  Expr operator-() const;
  Expr& operator+=(const Expr& o);
  Expr& operator-=(const Expr& o);
  Expr& operator*=(const Expr& o);
  Expr& operator/=(const Expr& o);
  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(Expr a, const Expr& b) { return a *= b; }
  friend Expr operator/(Expr a, const Expr& b) { return a /= b; }
  friend bool operator==(const Expr& a, const Expr& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

  Expr pow(int n) const;
  Expr inverse() const;

  /// Symbols occurring in numerator or denominator, sorted by id.
  std::vector<SymbolId> symbols() const;
  bool contains(SymbolId v) const { return num_.contains(v) || den_.contains(v); }
  /// Replaces every occurrence of `v` by `value`.
  Expr substitute(SymbolId v, const Expr& value) const;

  /// Canonical text: numerator and denominator scaled to coprime integer
  /// coefficients, printed in the registry's print order.
  std::string str() const;

 private:
  Poly num_;
  Poly den_;
};

/// Partial derivative with respect to a coordinate (base or fiber). Jet atoms
/// are promoted under base coordinates; everything else is constant.
/// Throws DomainError if `v` is a parameter or a jet atom.
Expr differentiate(const Expr& e, SymbolId v);
inline bool is_zero(const Expr& e) { return e.is_zero(); }

using Point = std::map<SymbolId, Rational>;
/// Exact value at a point. Throws EvaluationError for a missing symbol or a
/// vanishing denominator.
Rational eval_at(const Expr& e, const Point& point);

std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace surfdist
