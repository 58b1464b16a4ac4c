#pragma once

#include <optional>
#include <vector>

#include "surfdist/expr.hpp"

namespace surfdist {

using ExprVector = std::vector<Expr>;
using ExprMatrix = std::vector<ExprVector>;
using RationalMatrix = std::vector<std::vector<Rational>>;

ExprMatrix zero_matrix(std::size_t rows, std::size_t cols);
ExprMatrix identity_matrix(std::size_t n);
ExprMatrix transpose(const ExprMatrix& a);
ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix operator-(const ExprMatrix& a, const ExprMatrix& b);
ExprMatrix scaled(const ExprMatrix& a, const Expr& c);
bool is_zero(const ExprMatrix& a);
/// Entrywise derivative.
ExprMatrix differentiate(const ExprMatrix& a, SymbolId v);

Expr determinant(const ExprMatrix& a);
/// Throws DomainError if the determinant vanishes identically.
ExprMatrix inverse(const ExprMatrix& a);

struct RankCertificate {
  std::size_t rank = 0;
  /// Indices of input rows forming a basis of the row span, ascending.
  std::vector<std::size_t> pivot_rows;
  /// Nonconstant polynomials whose joint nonvanishing at a point
  /// guarantees the rank there: cleared row denominators and elimination
  /// pivots, each with positive leading printed coefficient.
  std::vector<Expr> certificate;
};

/// Rank over the fraction field by fraction-free (Bareiss) elimination on
/// denominator-cleared rows. Pivot rows are chosen earliest-first.
RankCertificate generic_rank(const ExprMatrix& rows);

/// Basis of {v : a v = 0} over the fraction field; each vector normalized
/// by normalize_vector.
std::vector<ExprVector> nullspace(const ExprMatrix& a, std::size_t cols);

/// Scales a nonzero vector by a rational function so its entries are
/// polynomials with no common polynomial factor, integer coefficients with
/// unit content, and the first nonzero entry has positive printed leading
/// coefficient.
ExprVector normalize_vector(const ExprVector& v);
/// Same normalization for a single expression (sign and integer content
/// only; polynomial factors are kept).
Expr sign_normalized(const Expr& e);

RationalMatrix evaluate(const ExprMatrix& a, const Point& point);
std::size_t rank(RationalMatrix a);

/// Constants c with sum_i c_i gens[i] == target, if any exist.
std::optional<std::vector<Rational>> rational_combination(const Expr& target, const std::vector<Expr>& gens);

}  // namespace surfdist
