#include "surfdist/expr.hpp"

#include <algorithm>
#include <ostream>

#include "surfdist/errors.hpp"

namespace surfdist {

namespace {

Poly exact_quotient(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw ConsistencyError("gcd does not divide its argument");
  return *q;
}

}  // namespace

Expr Expr::symbol(SymbolId id) { return Expr(Poly::variable(id)); }

Expr Expr::named(std::string_view name) {
  auto id = SymbolRegistry::global().resolve(name);
  if (!id) throw DomainError("unknown symbol '" + std::string(name) + "'");
  return symbol(*id);
}

Expr Expr::fraction(Poly num, Poly den) {
  if (den.is_zero()) throw DomainError("division by zero");
  Expr e;
  if (num.is_zero()) return e;
  if (!den.is_constant()) {
    const Poly g = gcd(num, den);
    if (!g.is_constant()) {
      num = exact_quotient(num, g);
      den = exact_quotient(den, g);
    }
  }
  const Rational lc = den.leading().coeff;
  if (lc != 1) {
    const Rational inv = 1 / lc;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
  e.num_ = std::move(num);
  e.den_ = std::move(den);
  return e;
}

Rational Expr::constant_value() const {
  if (!is_constant()) throw DomainError("expression is not constant: " + str());
  return num_.constant_value() / den_.constant_value();
}

Expr Expr::operator-() const {
  Expr e = *this;
  e.num_ = -e.num_;
  return e;
}

Expr& Expr::operator+=(const Expr& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    if (den_.is_constant()) {
      num_ += o.num_;
      return *this;
    }
    return *this = fraction(num_ + o.num_, den_);
  }
  if (o.den_.is_constant()) {
    num_ += o.num_ * den_;
    return *this;
  }
  if (den_.is_constant()) {
    Poly n = num_ * o.den_ + o.num_;
    num_ = std::move(n);
    den_ = o.den_;
    return *this;
  }
  // With g = gcd(b, d): a/b + c/d = (a d' + c b') / (b d') and any common
  // factor of that fraction already divides g.
  const Poly g = gcd(den_, o.den_);
  const Poly b1 = g.is_constant() ? den_ : exact_quotient(den_, g);
  const Poly d1 = g.is_constant() ? o.den_ : exact_quotient(o.den_, g);
  Poly num = num_ * d1 + o.num_ * b1;
  Poly den = den_ * d1;
  if (num.is_zero()) return *this = Expr();
  if (!g.is_constant()) {
    const Poly h = gcd(num, g);
    if (!h.is_constant()) {
      num = exact_quotient(num, h);
      den = exact_quotient(den, h);
    }
  }
  const Rational lc = den.leading().coeff;
  num_ = num.scaled(1 / lc);
  den_ = den.scaled(1 / lc);
  return *this;
}

Expr& Expr::operator-=(const Expr& o) { return *this += -o; }

Expr& Expr::operator*=(const Expr& o) {
  if (is_zero() || o.is_zero()) return *this = Expr();
  if (o.is_constant()) {
    num_ = num_.scaled(o.constant_value());
    return *this;
  }
  if (is_constant()) {
    const Rational c = constant_value();
    *this = o;
    num_ = num_.scaled(c);
    return *this;
  }
  Poly a = num_;
  Poly b = den_;
  Poly c = o.num_;
  Poly d = o.den_;
  if (!d.is_constant()) {
    const Poly g = gcd(a, d);
    if (!g.is_constant()) {
      a = exact_quotient(a, g);
      d = exact_quotient(d, g);
    }
  }
  if (!b.is_constant()) {
    const Poly g = gcd(c, b);
    if (!g.is_constant()) {
      c = exact_quotient(c, g);
      b = exact_quotient(b, g);
    }
  }
  Poly num = a * c;
  Poly den = b * d;
  const Rational lc = den.leading().coeff;
  num_ = lc == 1 ? std::move(num) : num.scaled(1 / lc);
  den_ = lc == 1 ? std::move(den) : den.scaled(1 / lc);
  return *this;
}

Expr Expr::inverse() const {
  if (is_zero()) throw DomainError("division by zero");
  Expr e;
  const Rational lc = num_.leading().coeff;
  e.num_ = den_.scaled(1 / lc);
  e.den_ = num_.scaled(1 / lc);
  return e;
}

Expr& Expr::operator/=(const Expr& o) { return *this *= o.inverse(); }

Expr Expr::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  Expr e;
  e.num_ = num_.pow(static_cast<unsigned>(n));
  e.den_ = den_.pow(static_cast<unsigned>(n));
  return e;
}

std::vector<SymbolId> Expr::symbols() const {
  auto a = num_.variables();
  auto b = den_.variables();
  std::vector<SymbolId> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

Expr substitute_poly(const Poly& p, SymbolId v, const Expr& value) {
  if (!p.contains(v)) return Expr(p);
  const auto coeffs = p.coefficients_in(v);
  Expr acc;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * value + Expr(*it);
  return acc;
}

}  // namespace

Expr Expr::substitute(SymbolId v, const Expr& value) const {
  if (!contains(v)) return *this;
  return substitute_poly(num_, v, value) / substitute_poly(den_, v, value);
}

std::string Expr::str() const {
  if (is_zero()) return "0";
  // Joint scaling to coprime integers with a positive printed leading
  // denominator coefficient.
  mpz_class g = 0;
  mpz_class l = 1;
  for (const Poly* p : {&num_, &den_}) {
    for (const auto& t : p->terms()) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
  }
  Rational scale(l, g);
  scale.canonicalize();
  if (den_.print_leading_coefficient() < 0) scale = -scale;
  const Poly num = num_.scaled(scale);
  const Poly den = den_.scaled(scale);
  if (den.is_constant() && den.constant_value() == 1) return num.str();

  std::string out = num.size() > 1 ? "(" + num.str() + ")" : num.str();
  out += '/';
  const bool bare = den.is_constant() ||
                    (den.is_monomial() && den.leading().coeff == 1 && den.leading().mono.factors.size() == 1);
  out += bare ? den.str() : "(" + den.str() + ")";
  return out;
}

Expr differentiate(const Expr& e, SymbolId v) {
  if (!symbols().is_coordinate(v)) {
    throw DomainError("cannot differentiate with respect to '" + symbols().name(v) + "': not a coordinate");
  }
  const Poly& a = e.numerator();
  const Poly& b = e.denominator();
  if (b.is_constant()) return Expr::fraction(a.derivative(v), b);
  const Poly db = b.derivative(v);
  if (db.is_zero()) return Expr::fraction(a.derivative(v), b);
  // (a/b)' = (a' b - a b') / b^2; cancel against b first to keep sizes down.
  const Poly g = gcd(b, db);
  const Poly b1 = *b.divide_exact(g);
  const Poly db1 = *db.divide_exact(g);
  // a'/b - a db1/(b b1)  =  (a' b1 - a db1) / (b b1)
  return Expr::fraction(a.derivative(v) * b1 - a * db1, b * b1);
}

Rational eval_at(const Expr& e, const Point& point) {
  auto value = [&](SymbolId id) -> Rational {
    auto it = point.find(id);
    if (it == point.end()) throw EvaluationError("no value for symbol '" + symbols().name(id) + "'");
    return it->second;
  };
  const Rational den = e.denominator().evaluate(value);
  if (den == 0) throw EvaluationError("denominator vanishes at the point: " + e.str());
  return e.numerator().evaluate(value) / den;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.str(); }

}  // namespace surfdist
