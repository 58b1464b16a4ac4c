#include "surfdist/forms.hpp"

#include <algorithm>
#include <sstream>

#include "surfdist/errors.hpp"

namespace surfdist {

namespace {

void require_same_chart(const Chart& a, const Chart& b) {
  if (!(a == b)) throw DomainError("chart mismatch");
}

// "c1*e1 + c2*e2 - e3" from coefficient/basis-name pairs.
std::string format_linear(const std::vector<std::pair<Expr, std::string>>& terms) {
  std::string out;
  for (const auto& [c, basis] : terms) {
    if (c.is_zero()) continue;
    std::string coeff = c.str();
    bool negative = false;
    const bool single = c.numerator().size() == 1;
    if (single && coeff[0] == '-') {
      negative = true;
      coeff.erase(0, 1);
    }
    std::string piece;
    if (coeff == "1") {
      piece = basis;
    } else if (single || !c.is_polynomial()) {
      piece = (single ? coeff : "(" + coeff + ")") + "*" + basis;
    } else {
      piece = "(" + coeff + ")*" + basis;
    }
    if (out.empty()) {
      out = negative ? "-" + piece : piece;
    } else {
      out += negative ? " - " : " + ";
      out += piece;
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace

Chart::Chart(std::vector<SymbolId> coords) : coords_(std::move(coords)) {
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (!symbols().is_coordinate(coords_[i])) {
      throw DomainError("'" + symbols().name(coords_[i]) + "' is not a coordinate");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (coords_[i] == coords_[j]) throw DomainError("repeated chart coordinate");
    }
  }
}

Chart Chart::of(std::initializer_list<std::string_view> names) {
  std::vector<SymbolId> ids;
  for (auto n : names) ids.push_back(symbols().coordinate(n));
  return Chart(std::move(ids));
}

std::size_t Chart::index(SymbolId v) const {
  auto it = std::find(coords_.begin(), coords_.end(), v);
  if (it == coords_.end()) throw DomainError("'" + symbols().name(v) + "' is not a coordinate of the chart");
  return static_cast<std::size_t>(it - coords_.begin());
}

bool Chart::has(SymbolId v) const { return std::find(coords_.begin(), coords_.end(), v) != coords_.end(); }

// ---- VectorField ----

VectorField::VectorField(Chart chart, ExprVector components) : chart_(std::move(chart)), comps_(std::move(components)) {
  if (comps_.size() != chart_.dim()) throw DomainError("vector field has wrong number of components");
}

VectorField VectorField::zero(const Chart& chart) { return VectorField(chart, ExprVector(chart.dim())); }

VectorField VectorField::coordinate(const Chart& chart, SymbolId v) {
  ExprVector c(chart.dim());
  c[chart.index(v)] = Expr(1);
  return VectorField(chart, std::move(c));
}

bool VectorField::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Expr& e) { return e.is_zero(); });
}

Expr VectorField::apply(const Expr& f) const {
  Expr acc;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (comps_[i].is_zero()) continue;
    const Expr d = differentiate(f, chart_[i]);
    if (!d.is_zero()) acc += comps_[i] * d;
  }
  return acc;
}

VectorField VectorField::operator-() const {
  VectorField v = *this;
  for (auto& c : v.comps_) c = -c;
  return v;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  require_same_chart(a.chart_, b.chart_);
  VectorField v = a;
  for (std::size_t i = 0; i < v.comps_.size(); ++i) v.comps_[i] += b.comps_[i];
  return v;
}

VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }

VectorField operator*(const Expr& f, const VectorField& v) {
  VectorField out = v;
  for (auto& c : out.comps_) c *= f;
  return out;
}

std::string VectorField::str() const {
  std::vector<std::pair<Expr, std::string>> terms;
  for (std::size_t i = 0; i < comps_.size(); ++i) terms.emplace_back(comps_[i], "d/d" + symbols().name(chart_[i]));
  return format_linear(terms);
}

VectorField lie_bracket(const VectorField& v, const VectorField& w) {
  require_same_chart(v.chart(), w.chart());
  ExprVector c(v.chart().dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = v.apply(w[i]) - w.apply(v[i]);
  return VectorField(v.chart(), std::move(c));
}

// ---- Form ----

std::size_t Form::pair_index(std::size_t i, std::size_t j, std::size_t n) {
  // offset of row i in the upper triangle, then column j
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

namespace {

std::size_t form_size(int degree, std::size_t n) {
  switch (degree) {
    case 0: return 1;
    case 1: return n;
    case 2: return n * (n - 1) / 2;
    default: throw DomainError("forms of degree greater than 2 are not supported");
  }
}

}  // namespace

Form::Form(Chart chart, int degree, ExprVector coefficients)
    : chart_(std::move(chart)), degree_(degree), coeffs_(std::move(coefficients)) {
  if (degree < 0 || static_cast<std::size_t>(degree) > chart_.dim()) throw DomainError("form degree exceeds chart dimension");
  if (coeffs_.size() != form_size(degree, chart_.dim())) throw DomainError("form has wrong number of coefficients");
}

Form Form::function(const Chart& chart, const Expr& f) { return Form(chart, 0, {f}); }

Form Form::zero(const Chart& chart, int degree) { return Form(chart, degree, ExprVector(form_size(degree, chart.dim()))); }

Form Form::differential(const Chart& chart, SymbolId v) {
  ExprVector c(chart.dim());
  c[chart.index(v)] = Expr(1);
  return Form(chart, 1, std::move(c));
}

bool Form::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Expr& e) { return e.is_zero(); });
}

Expr Form::component(std::size_t i) const {
  if (degree_ != 1) throw DomainError("component(i) needs a 1-form");
  return coeffs_.at(i);
}

Expr Form::component(std::size_t i, std::size_t j) const {
  if (degree_ != 2) throw DomainError("component(i, j) needs a 2-form");
  if (i == j) return Expr();
  if (i < j) return coeffs_.at(pair_index(i, j, chart_.dim()));
  return -coeffs_.at(pair_index(j, i, chart_.dim()));
}

Expr Form::operator()(const VectorField& v) const {
  if (degree_ != 1) throw DomainError("only 1-forms pair with one vector field");
  require_same_chart(chart_, v.chart());
  Expr acc;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_zero() && !v[i].is_zero()) acc += coeffs_[i] * v[i];
  }
  return acc;
}

Expr Form::operator()(const VectorField& v, const VectorField& w) const {
  if (degree_ != 2) throw DomainError("only 2-forms pair with two vector fields");
  require_same_chart(chart_, v.chart());
  require_same_chart(chart_, w.chart());
  const std::size_t n = chart_.dim();
  Expr acc;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Expr& c = coeffs_[pair_index(i, j, n)];
      if (c.is_zero()) continue;
      const Expr m = v[i] * w[j] - v[j] * w[i];
      if (!m.is_zero()) acc += c * m;
    }
  }
  return acc;
}

Form Form::operator-() const {
  Form f = *this;
  for (auto& c : f.coeffs_) c = -c;
  return f;
}

Form operator+(const Form& a, const Form& b) {
  require_same_chart(a.chart_, b.chart_);
  if (a.degree_ != b.degree_) throw DomainError("cannot add forms of different degree");
  Form f = a;
  for (std::size_t i = 0; i < f.coeffs_.size(); ++i) f.coeffs_[i] += b.coeffs_[i];
  return f;
}

Form operator-(const Form& a, const Form& b) { return a + (-b); }

Form operator*(const Expr& f, const Form& a) {
  Form out = a;
  for (auto& c : out.coeffs_) c *= f;
  return out;
}

std::string Form::str() const {
  if (degree_ == 0) return coeffs_[0].str();
  std::vector<std::pair<Expr, std::string>> terms;
  const std::size_t n = chart_.dim();
  if (degree_ == 1) {
    for (std::size_t i = 0; i < n; ++i) terms.emplace_back(coeffs_[i], "d" + symbols().name(chart_[i]));
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        terms.emplace_back(coeffs_[pair_index(i, j, n)],
                           "d" + symbols().name(chart_[i]) + "^d" + symbols().name(chart_[j]));
      }
    }
  }
  return format_linear(terms);
}

Form exterior_derivative(const Form& w) {
  const Chart& chart = w.chart();
  const std::size_t n = chart.dim();
  if (w.degree() >= 2 || static_cast<std::size_t>(w.degree()) + 1 > n) {
    throw DomainError("exterior derivative would exceed the supported degree");
  }
  if (w.degree() == 0) {
    ExprVector c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = differentiate(w.coefficients()[0], chart[i]);
    return Form(chart, 1, std::move(c));
  }
  ExprVector c(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      c[Form::pair_index(i, j, n)] =
          differentiate(w.coefficients()[j], chart[i]) - differentiate(w.coefficients()[i], chart[j]);
    }
  }
  return Form(chart, 2, std::move(c));
}

Form wedge(const Form& a, const Form& b) {
  require_same_chart(a.chart(), b.chart());
  if (a.degree() + b.degree() > 2) throw DomainError("wedge product would exceed degree 2");
  if (a.degree() == 0) return a.coefficients()[0] * b;
  if (b.degree() == 0) return b.coefficients()[0] * a;
  const std::size_t n = a.chart().dim();
  if (n < 2) throw DomainError("wedge product would exceed chart dimension");
  ExprVector c(n * (n - 1) / 2);
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) c[Form::pair_index(i, j, n)] = x[i] * y[j] - x[j] * y[i];
  }
  return Form(a.chart(), 2, std::move(c));
}

// ---- distributions ----

Distribution::Distribution(Chart chart, std::vector<VectorField> fields)
    : chart_(std::move(chart)), fields_(std::move(fields)) {
  for (const auto& f : fields_) require_same_chart(chart_, f.chart());
}

std::string GrowthVector::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(ranks[i]);
  }
  return out + ")";
}

ExprMatrix coefficient_matrix(const std::vector<VectorField>& fields) {
  ExprMatrix m;
  m.reserve(fields.size());
  for (const auto& f : fields) m.push_back(f.components());
  return m;
}

RankCertificate generic_rank(const std::vector<VectorField>& fields) {
  if (fields.empty()) throw DomainError("generic_rank of an empty list");
  for (const auto& f : fields) require_same_chart(fields[0].chart(), f.chart());
  return generic_rank(coefficient_matrix(fields));
}

namespace {

void merge_certificate(std::vector<Expr>& into, const std::vector<Expr>& more) {
  for (const auto& e : more) {
    if (std::find(into.begin(), into.end(), e) == into.end()) into.push_back(e);
  }
}

std::vector<VectorField> select(const std::vector<VectorField>& fields, const std::vector<std::size_t>& rows) {
  std::vector<VectorField> out;
  out.reserve(rows.size());
  for (auto r : rows) out.push_back(fields[r]);
  return out;
}

}  // namespace

DerivedFlag derived_flag(const Distribution& d, int max_steps) {
  if (max_steps < 1) throw DomainError("max_steps must be at least 1");
  if (d.empty()) throw DomainError("derived_flag of an empty distribution");
  const std::size_t n = d.chart().dim();
  DerivedFlag out;
  RankCertificate rc = generic_rank(d.fields());
  std::vector<VectorField> basis = select(d.fields(), rc.pivot_rows);
  out.growth.ranks.push_back(rc.rank);
  merge_certificate(out.growth.certificate, rc.certificate);
  out.flag.emplace_back(d.chart(), basis);

  // Brackets among fields of the previous basis already lie in the current
  // span, so only pairs involving a newly added field are formed.
  std::size_t old_count = 0;
  for (int step = 0; step < max_steps && rc.rank < n; ++step) {
    std::vector<VectorField> candidates = basis;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = std::max(i + 1, old_count); j < basis.size(); ++j) {
        VectorField b = lie_bracket(basis[i], basis[j]);
        if (!b.is_zero()) candidates.push_back(std::move(b));
      }
    }
    RankCertificate next = generic_rank(candidates);
    if (next.rank == rc.rank) break;
    old_count = basis.size();
    // Pivot selection is earliest-first, so the old basis is kept in front.
    basis = select(candidates, next.pivot_rows);
    rc = std::move(next);
    out.growth.ranks.push_back(rc.rank);
    merge_certificate(out.growth.certificate, rc.certificate);
    out.flag.emplace_back(d.chart(), basis);
  }
  return out;
}

std::vector<Form> annihilator(const Distribution& d) {
  const std::size_t n = d.chart().dim();
  std::vector<Form> out;
  if (d.empty()) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(Form::differential(d.chart(), d.chart()[i]));
    return out;
  }
  for (auto& v : nullspace(coefficient_matrix(d.fields()), n)) out.emplace_back(d.chart(), 1, std::move(v));
  return out;
}

Distribution annihilated(const std::vector<Form>& forms) {
  if (forms.empty()) throw DomainError("annihilated() needs at least one form");
  const Chart& chart = forms[0].chart();
  ExprMatrix m;
  for (const auto& f : forms) {
    if (f.degree() != 1) throw DomainError("annihilated() needs 1-forms");
    require_same_chart(chart, f.chart());
    m.push_back(f.coefficients());
  }
  std::vector<VectorField> fields;
  for (auto& v : nullspace(m, chart.dim())) fields.emplace_back(chart, std::move(v));
  return Distribution(chart, std::move(fields));
}

Distribution cauchy_characteristics(const Distribution& d) {
  if (d.empty()) return d;
  const RankCertificate rc = generic_rank(d.fields());
  const std::vector<VectorField> basis = select(d.fields(), rc.pivot_rows);
  const std::vector<Form> theta = annihilator(Distribution(d.chart(), basis));
  const std::size_t r = basis.size();
  if (theta.empty()) return Distribution(d.chart(), basis);  // D is everything

  // Row (a, j), column i: theta_a([X_i, X_j]).
  std::vector<std::vector<VectorField>> br(r, std::vector<VectorField>(r, VectorField::zero(d.chart())));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = i + 1; j < r; ++j) {
      br[i][j] = lie_bracket(basis[i], basis[j]);
      br[j][i] = -br[i][j];
    }
  }
  ExprMatrix m;
  for (const auto& t : theta) {
    for (std::size_t j = 0; j < r; ++j) {
      ExprVector row(r);
      for (std::size_t i = 0; i < r; ++i) row[i] = t(br[i][j]);
      m.push_back(std::move(row));
    }
  }
  std::vector<VectorField> out;
  for (const auto& f : nullspace(m, r)) {
    VectorField v = VectorField::zero(d.chart());
    for (std::size_t i = 0; i < r; ++i) {
      if (!f[i].is_zero()) v = v + f[i] * basis[i];
    }
    out.emplace_back(d.chart(), normalize_vector(v.components()));
  }
  return Distribution(d.chart(), std::move(out));
}

std::vector<Form> derived_codistribution(const std::vector<Form>& forms) {
  if (forms.empty()) return {};
  const Chart& chart = forms[0].chart();
  const Distribution d = annihilated(forms);
  const auto& x = d.fields();
  std::vector<Form> dtheta;
  for (const auto& f : forms) dtheta.push_back(exterior_derivative(f));
  ExprMatrix m;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      ExprVector row;
      for (const auto& dt : dtheta) row.push_back(dt(x[i], x[j]));
      m.push_back(std::move(row));
    }
  }
  std::vector<Form> out;
  if (m.empty()) return forms;
  for (const auto& g : nullspace(m, forms.size())) {
    Form acc = Form::zero(chart, 1);
    for (std::size_t a = 0; a < forms.size(); ++a) {
      if (!g[a].is_zero()) acc = acc + g[a] * forms[a];
    }
    out.emplace_back(chart, 1, normalize_vector(acc.coefficients()));
  }
  return out;
}

namespace {

bool same_row_span(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.empty() || b.empty()) return is_zero(a) && is_zero(b);
  ExprMatrix both = a;
  both.insert(both.end(), b.begin(), b.end());
  const std::size_t ra = generic_rank(a).rank;
  return ra == generic_rank(b).rank && ra == generic_rank(both).rank;
}

}  // namespace

bool same_span(const std::vector<VectorField>& a, const std::vector<VectorField>& b) {
  return same_row_span(coefficient_matrix(a), coefficient_matrix(b));
}

bool same_span(const std::vector<Form>& a, const std::vector<Form>& b) {
  ExprMatrix ma, mb;
  for (const auto& f : a) ma.push_back(f.coefficients());
  for (const auto& f : b) mb.push_back(f.coefficients());
  return same_row_span(ma, mb);
}

bool in_span(const VectorField& v, const std::vector<VectorField>& fields) {
  if (v.is_zero()) return true;
  if (fields.empty()) return false;
  std::vector<VectorField> more = fields;
  more.push_back(v);
  return generic_rank(fields).rank == generic_rank(more).rank;
}

}  // namespace surfdist
