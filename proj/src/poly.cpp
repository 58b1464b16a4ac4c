#include "surfdist/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "surfdist/errors.hpp"

namespace surfdist {

namespace {

Rational pow_rational(const Rational& base, unsigned e) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

bool term_greater(const Term& a, const Term& b) { return compare_grlex(a.mono, b.mono) > 0; }

Monomial remove_variable(const Monomial& m, SymbolId v, unsigned& exponent) {
  Monomial out;
  exponent = 0;
  out.factors.reserve(m.factors.size());
  for (const auto& [var, e] : m.factors) {
    if (var == v) {
      exponent = e;
    } else {
      out.factors.emplace_back(var, e);
      out.degree += e;
    }
  }
  return out;
}

}  // namespace

unsigned Monomial::exponent(SymbolId v) const {
  auto it = std::lower_bound(factors.begin(), factors.end(), v,
                             [](const auto& f, SymbolId id) { return f.first < id; });
  return (it != factors.end() && it->first == v) ? it->second : 0;
}

int compare_grlex(const Monomial& a, const Monomial& b) {
  if (a.degree != b.degree) return a.degree < b.degree ? -1 : 1;
  auto ia = a.factors.begin();
  auto ib = b.factors.begin();
  for (; ia != a.factors.end() && ib != b.factors.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first ? 1 : -1;
    if (ia->second != ib->second) return ia->second > ib->second ? 1 : -1;
  }
  if (ia != a.factors.end()) return 1;
  if (ib != b.factors.end()) return -1;
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.degree = a.degree + b.degree;
  out.factors.reserve(a.factors.size() + b.factors.size());
  auto ia = a.factors.begin();
  auto ib = b.factors.begin();
  while (ia != a.factors.end() && ib != b.factors.end()) {
    if (ia->first == ib->first) {
      out.factors.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    } else if (ia->first < ib->first) {
      out.factors.push_back(*ia++);
    } else {
      out.factors.push_back(*ib++);
    }
  }
  out.factors.insert(out.factors.end(), ia, a.factors.end());
  out.factors.insert(out.factors.end(), ib, b.factors.end());
  return out;
}

bool divides(const Monomial& d, const Monomial& m) {
  if (d.degree > m.degree) return false;
  auto im = m.factors.begin();
  for (const auto& [var, e] : d.factors) {
    while (im != m.factors.end() && im->first < var) ++im;
    if (im == m.factors.end() || im->first != var || im->second < e) return false;
  }
  return true;
}

Monomial quotient(const Monomial& m, const Monomial& d) {
  Monomial out;
  out.degree = m.degree - d.degree;
  auto id = d.factors.begin();
  for (const auto& [var, e] : m.factors) {
    unsigned sub = 0;
    if (id != d.factors.end() && id->first == var) sub = (id++)->second;
    if (e > sub) out.factors.emplace_back(var, e - sub);
  }
  return out;
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

Poly Poly::variable(SymbolId v, unsigned exponent) {
  if (exponent == 0) return Poly(1);
  Monomial m;
  m.factors.emplace_back(v, exponent);
  m.degree = exponent;
  return monomial(std::move(m), Rational(1));
}

Poly Poly::monomial(Monomial m, Rational c) {
  Poly p;
  if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  Poly p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

Rational Poly::constant_value() const {
  if (!is_constant()) throw DomainError("polynomial is not constant");
  return terms_.empty() ? Rational(0) : terms_[0].coeff;
}

unsigned Poly::degree_in(SymbolId v) const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

unsigned Poly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree; }

std::vector<SymbolId> Poly::variables() const {
  std::vector<SymbolId> vars;
  for (const auto& t : terms_) {
    for (const auto& f : t.mono.factors) vars.push_back(f.first);
  }
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

bool Poly::contains(SymbolId v) const {
  return std::any_of(terms_.begin(), terms_.end(), [v](const Term& t) { return t.mono.exponent(v) > 0; });
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

// Merges b*sign into a; both sorted decreasing.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    const int c = compare_grlex(ia->mono, ib->mono);
    if (c > 0) {
      out.push_back(*ia++);
    } else if (c < 0) {
      out.push_back({ib->mono, subtract ? Rational(-ib->coeff) : ib->coeff});
      ++ib;
    } else {
      Rational s = subtract ? Rational(ia->coeff - ib->coeff) : Rational(ia->coeff + ib->coeff);
      if (s != 0) out.push_back({ia->mono, std::move(s)});
      ++ia;
      ++ib;
    }
  }
  for (; ia != a.end(); ++ia) out.push_back(*ia);
  for (; ib != b.end(); ++ib) out.push_back({ib->mono, subtract ? Rational(-ib->coeff) : ib->coeff});
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) return *this;
  terms_ = merge_terms(terms_, o.terms_, true);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.is_constant()) return b.scaled(a.terms_[0].coeff);
  if (b.is_constant()) return a.scaled(b.terms_[0].coeff);
  if (a.is_monomial()) return b.times(a.terms_[0].mono).scaled(a.terms_[0].coeff);
  if (b.is_monomial()) return a.times(b.terms_[0].mono).scaled(b.terms_[0].coeff);
  std::vector<Term> terms;
  terms.reserve(a.size() * b.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) terms.push_back({ta.mono * tb.mono, ta.coeff * tb.coeff});
  }
  return Poly::from_terms(std::move(terms));
}

Poly Poly::scaled(const Rational& c) const {
  if (c == 0) return Poly();
  Poly p = *this;
  if (c != 1) {
    for (auto& t : p.terms_) t.coeff *= c;
  }
  return p;
}

Poly Poly::times(const Monomial& m) const {
  if (m.is_one()) return *this;
  Poly p = *this;
  for (auto& t : p.terms_) t.mono = t.mono * m;  // order is preserved
  return p;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1);
  Poly base = *this;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coeff != b.terms_[i].coeff || !(a.terms_[i].mono == b.terms_[i].mono)) return false;
  }
  return true;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  if (is_zero()) return Poly();
  if (d.is_constant()) return scaled(1 / d.terms_[0].coeff);
  const Term& lead = d.terms_.front();
  for (const auto& [var, e] : lead.mono.factors) {
    (void)e;
    if (degree_in(var) < d.degree_in(var)) return std::nullopt;
  }
  std::vector<Term> q;
  Poly r = *this;
  while (!r.is_zero()) {
    const Term& lt = r.terms_.front();
    if (!divides(lead.mono, lt.mono)) return std::nullopt;
    Term t{quotient(lt.mono, lead.mono), lt.coeff / lead.coeff};
    r -= d.times(t.mono).scaled(t.coeff);
    q.push_back(std::move(t));
  }
  Poly out;
  out.terms_ = std::move(q);
  return out;
}

Poly Poly::derivative(SymbolId v) const {
  auto& reg = symbols();
  const bool base = reg.kind(v) == SymbolKind::base_coordinate;
  const int base_index = base ? reg.info(v).base_index : -1;
  std::vector<Term> out;
  for (const auto& t : terms_) {
    for (const auto& [var, e] : t.mono.factors) {
      std::optional<SymbolId> target;
      if (var == v) {
        Monomial m = quotient(t.mono, Poly::variable(var).leading().mono);
        out.push_back({std::move(m), t.coeff * e});
        continue;
      }
      if (!base || reg.kind(var) != SymbolKind::function_jet) continue;
      target = reg.promote(var, base_index);
      if (!target) continue;
      Monomial m = quotient(t.mono, Poly::variable(var).leading().mono) * Poly::variable(*target).leading().mono;
      out.push_back({std::move(m), t.coeff * e});
    }
  }
  return from_terms(std::move(out));
}

Rational Poly::evaluate(const std::function<Rational(SymbolId)>& value) const {
  Rational sum = 0;
  std::map<SymbolId, Rational> cache;
  for (const auto& t : terms_) {
    Rational prod = t.coeff;
    for (const auto& [var, e] : t.mono.factors) {
      auto it = cache.find(var);
      if (it == cache.end()) it = cache.emplace(var, value(var)).first;
      prod *= pow_rational(it->second, e);
    }
    sum += prod;
  }
  return sum;
}

std::vector<Poly> Poly::coefficients_in(SymbolId v) const {
  std::vector<std::vector<Term>> buckets(degree_in(v) + 1);
  for (const auto& t : terms_) {
    unsigned e = 0;
    Monomial rest = remove_variable(t.mono, v, e);
    buckets[e].push_back({std::move(rest), t.coeff});
  }
  std::vector<Poly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

Poly Poly::from_coefficients(SymbolId v, const std::vector<Poly>& coeffs) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const Monomial vk = k == 0 ? Monomial{} : Poly::variable(v, static_cast<unsigned>(k)).leading().mono;
    for (const auto& t : coeffs[k].terms_) terms.push_back({t.mono * vk, t.coeff});
  }
  return from_terms(std::move(terms));
}

Rational Poly::content() const {
  if (terms_.empty()) return Rational(0);
  mpz_class num = 0;
  mpz_class den = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(abs(num), den);
  c.canonicalize();
  return c;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return {};
  Monomial m = terms_.front().mono;
  for (const auto& t : terms_) {
    Monomial next;
    for (const auto& [var, e] : m.factors) {
      const unsigned f = std::min(e, t.mono.exponent(var));
      if (f > 0) {
        next.factors.emplace_back(var, f);
        next.degree += f;
      }
    }
    m = std::move(next);
    if (m.is_one()) break;
  }
  return m;
}

namespace {

struct PrintTerm {
  std::vector<std::pair<std::size_t, unsigned>> ranked;  // (print rank, exponent), rank ascending
  unsigned degree;
  const Term* term;
};

std::vector<PrintTerm> print_order(const std::vector<Term>& terms, const std::vector<SymbolId>& vars) {
  auto& reg = symbols();
  std::vector<SymbolId> sorted = vars;
  std::sort(sorted.begin(), sorted.end(), [&](SymbolId a, SymbolId b) { return reg.print_less(a, b); });
  std::map<SymbolId, std::size_t> rank;
  for (std::size_t i = 0; i < sorted.size(); ++i) rank[sorted[i]] = i;
  std::vector<PrintTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    PrintTerm pt{{}, t.mono.degree, &t};
    for (const auto& [var, e] : t.mono.factors) pt.ranked.emplace_back(rank.at(var), e);
    std::sort(pt.ranked.begin(), pt.ranked.end());
    out.push_back(std::move(pt));
  }
  std::sort(out.begin(), out.end(), [](const PrintTerm& a, const PrintTerm& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    for (std::size_t i = 0; i < a.ranked.size() && i < b.ranked.size(); ++i) {
      if (a.ranked[i].first != b.ranked[i].first) return a.ranked[i].first < b.ranked[i].first;
      if (a.ranked[i].second != b.ranked[i].second) return a.ranked[i].second > b.ranked[i].second;
    }
    return a.ranked.size() > b.ranked.size();
  });
  return out;
}

}  // namespace

Rational Poly::print_leading_coefficient() const {
  if (terms_.empty()) return Rational(0);
  return print_order(terms_, variables()).front().term->coeff;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  auto& reg = symbols();
  std::ostringstream os;
  bool first = true;
  for (const auto& pt : print_order(terms_, variables())) {
    const Term& t = *pt.term;
    Rational c = t.coeff;
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    first = false;
    std::vector<std::pair<SymbolId, unsigned>> factors = t.mono.factors;
    std::sort(factors.begin(), factors.end(),
              [&](const auto& a, const auto& b) { return reg.print_less(a.first, b.first); });
    if (factors.empty()) {
      os << c.get_str();
      continue;
    }
    if (c != 1) os << c.get_str() << '*';
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i > 0) os << '*';
      os << reg.name(factors[i].first);
      if (factors[i].second > 1) os << '^' << factors[i].second;
    }
  }
  return os.str();
}

namespace {

Poly integer_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Poly q = p.scaled(1 / p.content());
  if (q.leading().coeff < 0) q = -q;
  return q;
}

Poly exact(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw ConsistencyError("expected exact polynomial division");
  return *q;
}

Poly gcd_rec(const Poly& a, const Poly& b);

// gcd of the coefficients of `p` viewed as a polynomial in v.
Poly content_in(const Poly& p, SymbolId v) {
  auto coeffs = p.coefficients_in(v);
  Poly g;
  for (const auto& c : coeffs) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? integer_primitive(c) : gcd_rec(g, c);
    if (g.is_constant()) return Poly(1);
  }
  return g;
}

Poly primitive_in(const Poly& p, SymbolId v) {
  const Poly c = content_in(p, v);
  return integer_primitive(c.is_constant() ? p : exact(p, c));
}

// Pseudo-remainder of a by b in the variable v.
Poly pseudo_remainder(const Poly& a, const Poly& b, SymbolId v) {
  auto r = a.coefficients_in(v);
  const auto bc = b.coefficients_in(v);
  const std::size_t db = bc.size() - 1;
  const Poly& lb = bc.back();
  while (r.size() > db && !r.back().is_zero()) {
    const std::size_t shift = r.size() - 1 - db;
    const Poly lr = r.back();
    for (auto& c : r) c = c * lb;
    for (std::size_t j = 0; j <= db; ++j) r[j + shift] -= lr * bc[j];
    while (r.size() > 1 && r.back().is_zero()) r.pop_back();
  }
  return Poly::from_coefficients(v, r);
}

Poly gcd_rec(const Poly& a_in, const Poly& b_in) {
  if (a_in.is_zero()) return integer_primitive(b_in);
  if (b_in.is_zero()) return integer_primitive(a_in);
  if (a_in.is_constant() || b_in.is_constant()) return Poly(1);

  // Monomial content first.
  const Monomial ma = a_in.monomial_content();
  const Monomial mb = b_in.monomial_content();
  Monomial common;
  for (const auto& [var, e] : ma.factors) {
    const unsigned f = std::min(e, mb.exponent(var));
    if (f > 0) {
      common.factors.emplace_back(var, f);
      common.degree += f;
    }
  }
  Poly a = ma.is_one() ? a_in : exact(a_in, Poly::monomial(ma, Rational(1)));
  Poly b = mb.is_one() ? b_in : exact(b_in, Poly::monomial(mb, Rational(1)));
  const Poly mono_part = Poly::monomial(common, Rational(1));
  if (a.is_constant() || b.is_constant()) return mono_part;

  // Variables occurring in only one argument can be eliminated by content.
  for (bool changed = true; changed;) {
    changed = false;
    const auto va = a.variables();
    const auto vb = b.variables();
    for (SymbolId v : va) {
      if (!std::binary_search(vb.begin(), vb.end(), v)) {
        a = content_in(a, v);
        changed = true;
        break;
      }
    }
    if (a.is_constant()) return mono_part;
    if (changed) continue;
    for (SymbolId v : vb) {
      if (!std::binary_search(va.begin(), va.end(), v)) {
        b = content_in(b, v);
        changed = true;
        break;
      }
    }
    if (b.is_constant()) return mono_part;
  }

  a = integer_primitive(a);
  b = integer_primitive(b);
  if (a == b) return a * mono_part;

  // Main variable: the common variable of least degree.
  const auto vars = a.variables();
  SymbolId v = vars.front();
  unsigned best = ~0U;
  for (SymbolId w : vars) {
    const unsigned d = std::max(a.degree_in(w), b.degree_in(w));
    if (d < best) {
      best = d;
      v = w;
    }
  }

  const Poly ca = content_in(a, v);
  const Poly cb = content_in(b, v);
  const Poly c = gcd_rec(ca, cb);
  Poly pa = integer_primitive(ca.is_constant() ? a : exact(a, ca));
  Poly pb = integer_primitive(cb.is_constant() ? b : exact(b, cb));
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);

  // Trial division catches the common case of one argument dividing the other.
  if (pa.divide_exact(pb)) return integer_primitive(pb * c) * mono_part;

  while (true) {
    Poly r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (r.degree_in(v) == 0) {
      pb = Poly(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_in(r, v);
  }
  return integer_primitive(primitive_in(pb, v) * c) * mono_part;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return Poly();
  return integer_primitive(gcd_rec(a, b));
}

}  // namespace surfdist
