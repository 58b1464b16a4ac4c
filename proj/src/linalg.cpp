#include "surfdist/linalg.hpp"

#include <algorithm>
#include <map>

#include "surfdist/errors.hpp"

namespace surfdist {

namespace {

Poly exact_div(const Poly& a, const Poly& b) {
  auto q = a.divide_exact(b);
  if (!q) throw ConsistencyError("inexact polynomial division in elimination");
  return *q;
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_constant()) return b;
  if (b.is_constant()) return a;
  return a * exact_div(b, gcd(a, b));
}

std::size_t complexity(const Expr& e) { return e.numerator().size() + e.denominator().size(); }

// Polynomial row with the denominators of `row` cleared; returns the lcm.
Poly clear_denominators(const ExprVector& row, std::vector<Poly>& out) {
  Poly l(1);
  for (const auto& e : row) l = lcm(l, e.denominator());
  l = l.scaled(1 / l.leading().coeff);
  out.clear();
  out.reserve(row.size());
  for (const auto& e : row) {
    out.push_back(e.is_zero() ? Poly() : e.numerator() * exact_div(l, e.denominator()));
  }
  return l;
}

void add_certificate(std::vector<Expr>& cert, const Poly& p) {
  if (p.is_constant()) return;
  const Expr e = sign_normalized(Expr(p));
  if (std::find(cert.begin(), cert.end(), e) == cert.end()) cert.push_back(e);
}

}  // namespace

ExprMatrix zero_matrix(std::size_t rows, std::size_t cols) { return ExprMatrix(rows, ExprVector(cols)); }

ExprMatrix identity_matrix(std::size_t n) {
  ExprMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Expr(1);
  return m;
}

ExprMatrix transpose(const ExprMatrix& a) {
  if (a.empty()) return {};
  ExprMatrix t = zero_matrix(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  }
  return t;
}

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.empty() || b.empty() || a[0].size() != b.size()) throw DomainError("matrix shape mismatch");
  ExprMatrix c = zero_matrix(a.size(), b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[0].size(); ++j) {
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
      }
    }
  }
  return c;
}

ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b) {
  ExprMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] += b.at(i).at(j);
  }
  return c;
}

ExprMatrix operator-(const ExprMatrix& a, const ExprMatrix& b) {
  ExprMatrix c = a;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) c[i][j] -= b.at(i).at(j);
  }
  return c;
}

ExprMatrix scaled(const ExprMatrix& a, const Expr& c) {
  ExprMatrix m = a;
  for (auto& row : m) {
    for (auto& e : row) e *= c;
  }
  return m;
}

bool is_zero(const ExprMatrix& a) {
  return std::all_of(a.begin(), a.end(), [](const ExprVector& row) {
    return std::all_of(row.begin(), row.end(), [](const Expr& e) { return e.is_zero(); });
  });
}

ExprMatrix differentiate(const ExprMatrix& a, SymbolId v) {
  ExprMatrix m = a;
  for (auto& row : m) {
    for (auto& e : row) e = differentiate(e, v);
  }
  return m;
}

Expr determinant(const ExprMatrix& a) {
  const std::size_t n = a.size();
  ExprMatrix m = a;
  Expr det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    for (std::size_t i = c; i < n; ++i) {
      if (!m[i][c].is_zero() && (best == n || complexity(m[i][c]) < complexity(m[best][c]))) best = i;
    }
    if (best == n) return Expr();
    if (best != c) {
      std::swap(m[best], m[c]);
      det = -det;
    }
    det *= m[c][c];
    const Expr inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      const Expr f = m[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

ExprMatrix inverse(const ExprMatrix& a) {
  const std::size_t n = a.size();
  ExprMatrix m = a;
  ExprMatrix inv = identity_matrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = n;
    for (std::size_t i = c; i < n; ++i) {
      if (!m[i][c].is_zero() && (best == n || complexity(m[i][c]) < complexity(m[best][c]))) best = i;
    }
    if (best == n) throw DomainError("matrix is singular");
    std::swap(m[best], m[c]);
    std::swap(inv[best], inv[c]);
    const Expr p = m[c][c].inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= p;
      inv[c][j] *= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c].is_zero()) continue;
      const Expr f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

RankCertificate generic_rank(const ExprMatrix& rows) {
  RankCertificate out;
  if (rows.empty()) return out;
  const std::size_t n = rows[0].size();
  std::vector<std::vector<Poly>> m(rows.size());
  std::vector<std::size_t> origin(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != n) throw DomainError("ragged matrix");
    add_certificate(out.certificate, clear_denominators(rows[i], m[i]));
    origin[i] = i;
  }
  Poly prev(1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t best = m.size();
    for (std::size_t i = r; i < m.size(); ++i) {
      if (!m[i][c].is_zero() && (best == m.size() || origin[i] < origin[best])) best = i;
    }
    if (best == m.size()) continue;
    std::swap(m[best], m[r]);
    std::swap(origin[best], origin[r]);
    const Poly& piv = m[r][c];
    for (std::size_t k = r + 1; k < m.size(); ++k) {
      const Poly a = m[k][c];
      for (std::size_t j = c + 1; j < n; ++j) {
        Poly v = piv * m[k][j];
        if (!a.is_zero()) v -= a * m[r][j];
        m[k][j] = prev.is_constant() ? v.scaled(1 / prev.constant_value()) : exact_div(v, prev);
      }
      m[k][c] = Poly();
    }
    add_certificate(out.certificate, piv);
    prev = piv;
    out.pivot_rows.push_back(origin[r]);
    ++r;
  }
  out.rank = r;
  std::sort(out.pivot_rows.begin(), out.pivot_rows.end());
  return out;
}

std::vector<ExprVector> nullspace(const ExprMatrix& a, std::size_t cols) {
  ExprMatrix m = a;
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t best = m.size();
    for (std::size_t i = r; i < m.size(); ++i) {
      if (!m[i][c].is_zero() && (best == m.size() || complexity(m[i][c]) < complexity(m[best][c]))) best = i;
    }
    if (best == m.size()) continue;
    std::swap(m[best], m[r]);
    const Expr p = m[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= p;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      const Expr f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) {
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
      }
    }
    pivot_cols.push_back(c);
    ++r;
  }
  std::vector<ExprVector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), f) != pivot_cols.end()) continue;
    ExprVector v(cols);
    v[f] = Expr(1);
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -m[k][f];
    basis.push_back(normalize_vector(v));
  }
  return basis;
}

ExprVector normalize_vector(const ExprVector& v) {
  std::vector<Poly> polys;
  clear_denominators(v, polys);
  Poly g;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    g = g.is_zero() ? p : gcd(g, p);
  }
  if (g.is_zero()) return v;
  mpz_class num = 0;
  mpz_class den = 1;
  for (auto& p : polys) {
    if (p.is_zero()) continue;
    if (!g.is_constant()) p = exact_div(p, g);
    for (const auto& t : p.terms()) {
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    }
  }
  Rational scale(den, num);
  scale.canonicalize();
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    if (p.print_leading_coefficient() < 0) scale = -scale;
    break;
  }
  ExprVector out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.emplace_back(p.scaled(scale));
  return out;
}

Expr sign_normalized(const Expr& e) {
  if (e.is_zero()) return e;
  const bool negative =
      (e.numerator().print_leading_coefficient() < 0) != (e.denominator().print_leading_coefficient() < 0);
  return negative ? -e : e;
}

RationalMatrix evaluate(const ExprMatrix& a, const Point& point) {
  RationalMatrix out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i].reserve(a[i].size());
    for (const auto& e : a[i]) out[i].push_back(eval_at(e, point));
  }
  return out;
}

std::size_t rank(RationalMatrix a) {
  std::size_t r = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && r < a.size(); ++c) {
    std::size_t p = r;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < a.size(); ++i) {
      if (a[i][c] == 0) continue;
      const Rational f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

std::optional<std::vector<Rational>> rational_combination(const Expr& target, const std::vector<Expr>& gens) {
  ExprVector all = gens;
  all.push_back(target);
  std::vector<Poly> polys;
  clear_denominators(all, polys);

  // Rows: monomials; columns: generators then the target.
  std::map<std::vector<std::pair<SymbolId, unsigned>>, std::size_t> row_of;
  RationalMatrix m;
  for (std::size_t j = 0; j < polys.size(); ++j) {
    for (const auto& t : polys[j].terms()) {
      auto [it, inserted] = row_of.emplace(t.mono.factors, m.size());
      if (inserted) m.emplace_back(polys.size(), Rational(0));
      m[it->second][j] = t.coeff;
    }
  }
  const std::size_t n = gens.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j <= n; ++j) m[i][j] -= f * m[r][j];
    }
    pivot_cols.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < m.size(); ++i) {
    if (m[i][n] != 0) return std::nullopt;
  }
  std::vector<Rational> c(n, Rational(0));
  for (std::size_t k = 0; k < pivot_cols.size(); ++k) c[pivot_cols[k]] = m[k][n];
  return c;
}

}  // namespace surfdist
