#pragma once

// Seeded random generators shared by the property suites.

#include <random>
#include <vector>

#include "surfdist/expr.hpp"

namespace surfdist::testing {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long bound = 9) {
    long num = integer(-bound, bound);
    long den = integer(1, bound);
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  Rational nonzero_rational(long bound = 9) {
    Rational r;
    do {
      r = rational(bound);
    } while (r == 0);
    return r;
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<long>(v.size()) - 1))];
  }

  /// Polynomial with up to `terms` terms of total degree <= `degree`.
  Expr polynomial(const std::vector<SymbolId>& vars, int terms = 4, int degree = 3) {
    Expr acc;
    const int n = static_cast<int>(integer(1, terms));
    for (int i = 0; i < n; ++i) {
      Expr t = rational();
      const int d = static_cast<int>(integer(0, degree));
      for (int k = 0; k < d; ++k) t *= Expr::symbol(pick(vars));
      acc += t;
    }
    return acc;
  }

  Expr nonzero_polynomial(const std::vector<SymbolId>& vars, int terms = 4, int degree = 3) {
    Expr e;
    do {
      e = polynomial(vars, terms, degree);
    } while (e.is_zero());
    return e;
  }

  Expr rational_function(const std::vector<SymbolId>& vars) {
    return polynomial(vars) / nonzero_polynomial(vars, 3, 2);
  }

  Point point(const std::vector<SymbolId>& vars, long bound = 20) {
    Point p;
    for (SymbolId v : vars) p[v] = rational(bound);
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace surfdist::testing
