#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "surfdist/linalg.hpp"

namespace surfdist {

/// Ordered coordinate system.
class Chart {
 public:
  Chart() = default;
  explicit Chart(std::vector<SymbolId> coords);
  /// Registers missing names as fiber coordinates (x and y are the base).
  static Chart of(std::initializer_list<std::string_view> names);

  std::size_t dim() const { return coords_.size(); }
  const std::vector<SymbolId>& coords() const { return coords_; }
  SymbolId operator[](std::size_t i) const { return coords_[i]; }
  /// Position of a coordinate; throws DomainError if absent.
  std::size_t index(SymbolId v) const;
  bool has(SymbolId v) const;
  friend bool operator==(const Chart&, const Chart&) = default;

 private:
  std::vector<SymbolId> coords_;
};

class VectorField {
 public:
  VectorField() = default;
  VectorField(Chart chart, ExprVector components);
  static VectorField zero(const Chart& chart);
  /// The coordinate field d/dv.
  static VectorField coordinate(const Chart& chart, SymbolId v);

  const Chart& chart() const { return chart_; }
  const ExprVector& components() const { return comps_; }
  const Expr& operator[](std::size_t i) const { return comps_[i]; }
  const Expr& component(SymbolId v) const { return comps_[chart_.index(v)]; }
  bool is_zero() const;

  /// Directional derivative V(f).
  Expr apply(const Expr& f) const;

  VectorField operator-() const;
  friend VectorField operator+(const VectorField& a, const VectorField& b);
  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend VectorField operator*(const Expr& f, const VectorField& v);
  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.chart_ == b.chart_ && a.comps_ == b.comps_;
  }

  /// Text such as `(4*x + k3)*d/dx + y*d/dy`.
  std::string str() const;

 private:
  Chart chart_;
  ExprVector comps_;
};

VectorField lie_bracket(const VectorField& v, const VectorField& w);

/// A p-form with p in {0, 1, 2}. Degree-2 coefficients are stored for index
/// pairs i < j in the order (0,1), (0,2), ..., (1,2), ...
class Form {
 public:
  Form() = default;
  Form(Chart chart, int degree, ExprVector coefficients);
  static Form function(const Chart& chart, const Expr& f);
  static Form zero(const Chart& chart, int degree);
  /// The coordinate 1-form dv.
  static Form differential(const Chart& chart, SymbolId v);

  const Chart& chart() const { return chart_; }
  int degree() const { return degree_; }
  const ExprVector& coefficients() const { return coeffs_; }
  bool is_zero() const;

  /// Coefficient of dx^i (degree 1) or dx^i ^ dx^j (degree 2, any order).
  Expr component(std::size_t i) const;
  Expr component(std::size_t i, std::size_t j) const;

  /// theta(V) for a 1-form.
  Expr operator()(const VectorField& v) const;
  /// omega(V, W) for a 2-form.
  Expr operator()(const VectorField& v, const VectorField& w) const;

  Form operator-() const;
  friend Form operator+(const Form& a, const Form& b);
  friend Form operator-(const Form& a, const Form& b);
  friend Form operator*(const Expr& f, const Form& a);
  friend bool operator==(const Form& a, const Form& b) {
    return a.chart_ == b.chart_ && a.degree_ == b.degree_ && a.coeffs_ == b.coeffs_;
  }

  /// Text such as `dz - p*dx - q*dy` or `dx^dp + dy^dq`.
  std::string str() const;

  static std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n);

 private:
  Chart chart_;
  int degree_ = 0;
  ExprVector coeffs_;
};

/// Throws DomainError when the result would exceed degree 2.
Form exterior_derivative(const Form& w);
Form wedge(const Form& a, const Form& b);

class Distribution {
 public:
  Distribution() = default;
  /// An empty field list is allowed only for results such as an empty
  /// set of Cauchy characteristics.
  Distribution(Chart chart, std::vector<VectorField> fields);

  const Chart& chart() const { return chart_; }
  const std::vector<VectorField>& fields() const { return fields_; }
  std::size_t size() const { return fields_.size(); }
  bool empty() const { return fields_.empty(); }

 private:
  Chart chart_;
  std::vector<VectorField> fields_;
};

struct GrowthVector {
  std::vector<std::size_t> ranks;
  std::vector<Expr> certificate;
  std::string str() const;  // "(2,3,5)"
  friend bool operator==(const GrowthVector& a, const GrowthVector& b) { return a.ranks == b.ranks; }
};

ExprMatrix coefficient_matrix(const std::vector<VectorField>& fields);
/// Throws DomainError for an empty list or mixed charts.
RankCertificate generic_rank(const std::vector<VectorField>& fields);

struct DerivedFlag {
  std::vector<Distribution> flag;
  GrowthVector growth;
};

/// Derived flag D, D', D'', ... Each step is reduced to a basis drawn from
/// the previous basis and the new brackets.
DerivedFlag derived_flag(const Distribution& d, int max_steps = 8);

Distribution cauchy_characteristics(const Distribution& d);
std::vector<Form> annihilator(const Distribution& d);
/// Fields annihilated by every form.
Distribution annihilated(const std::vector<Form>& forms);
std::vector<Form> derived_codistribution(const std::vector<Form>& forms);

bool same_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b);
bool same_span(const std::vector<Form>& a, const std::vector<Form>& b);
/// V lies in span(fields) over the fraction field.
bool in_span(const VectorField& v, const std::vector<VectorField>& fields);

}  // namespace surfdist
