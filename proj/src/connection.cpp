#include "surfdist/connection.hpp"

#include <sstream>

#include "surfdist/errors.hpp"

namespace surfdist {

namespace {

void require_square(const ExprMatrix& m, std::size_t k, const char* what) {
  if (m.size() != k) throw DomainError(std::string(what) + " must be " + std::to_string(k) + "x" + std::to_string(k));
  for (const auto& row : m) {
    if (row.size() != k) {
      throw DomainError(std::string(what) + " must be " + std::to_string(k) + "x" + std::to_string(k));
    }
  }
}

void require_on_base(const ExprMatrix& m, const char* what) {
  for (const auto& row : m) {
    for (const auto& e : row) {
      for (SymbolId v : e.symbols()) {
        if (symbols().kind(v) == SymbolKind::fiber_coordinate) {
          throw DomainError(std::string(what) + " involves the fiber coordinate '" + symbols().name(v) + "'");
        }
      }
    }
  }
}

ExprVector times_fiber(const ExprMatrix& m, const std::vector<SymbolId>& e) {
  ExprVector out(m.size());
  for (std::size_t b = 0; b < m.size(); ++b) {
    for (std::size_t a = 0; a < e.size(); ++a) {
      if (!m[b][a].is_zero()) out[b] += m[b][a] * Expr::symbol(e[a]);
    }
  }
  return out;
}

// For a vertical field sum_beta c_beta d/de_beta with c linear in e, the
// matrix M with c_beta = sum_alpha e_alpha M[alpha][beta].
ExprMatrix read_vertical(const VectorField& v, const std::vector<SymbolId>& e, const char* what) {
  const std::size_t k = e.size();
  for (std::size_t i = 0; i < 2; ++i) {
    if (!v[i].is_zero()) throw ConsistencyError(std::string(what) + " has a horizontal component");
  }
  ExprMatrix m = zero_matrix(k, k);
  for (std::size_t b = 0; b < k; ++b) {
    const Expr& c = v[2 + b];
    Expr rebuilt;
    for (std::size_t a = 0; a < k; ++a) {
      m[a][b] = differentiate(c, e[a]);
      rebuilt += Expr::symbol(e[a]) * m[a][b];
    }
    if (rebuilt != c) throw ConsistencyError(std::string(what) + " is not linear in the fiber coordinates");
  }
  require_on_base(m, what);
  return m;
}

ExprMatrix mat_from_rows(std::initializer_list<std::initializer_list<Expr>> rows) {
  ExprMatrix m;
  for (const auto& r : rows) m.emplace_back(r);
  return m;
}

}  // namespace

std::string to_string(StructureGroup g) {
  switch (g) {
    case StructureGroup::general_linear:
      return "general-linear";
    case StructureGroup::parabolic:
      return "parabolic";
    case StructureGroup::scale_and_boost:
      return "scale-and-boost";
  }
  return "";
}

Connection::Connection(ExprMatrix dx_part, ExprMatrix dy_part, StructureGroup group)
    : a_(std::move(dx_part)), b_(std::move(dy_part)), group_(group) {
  const std::size_t k = a_.size();
  if (k == 0) throw DomainError("connection rank must be positive");
  require_square(a_, k, "dx part");
  require_square(b_, k, "dy part");
  require_on_base(a_, "connection");
  require_on_base(b_, "connection");
}

Connection Connection::zero(std::size_t k) { return Connection(zero_matrix(k, k), zero_matrix(k, k)); }

const Chart& Connection::base() {
  static const Chart chart(std::vector<SymbolId>{SymbolRegistry::x_id, SymbolRegistry::y_id});
  return chart;
}

Form Connection::entry(std::size_t i, std::size_t j) const { return Form(base(), 1, {a_.at(i).at(j), b_.at(i).at(j)}); }

std::string Connection::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rank(); ++i) {
    out << "[";
    for (std::size_t j = 0; j < rank(); ++j) out << (j ? ", " : "") << entry(i, j).str();
    out << "]\n";
  }
  return out.str();
}

std::vector<SymbolId> fiber_coordinates(std::size_t k) {
  static const std::vector<std::string> named = {"z", "p", "q", "s"};
  std::vector<SymbolId> out;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string name = (k == 3 || k == 4) ? named[i] : "e" + std::to_string(i + 1);
    out.push_back(symbols().coordinate(name));
  }
  return out;
}

Chart total_space(const Connection& c) {
  std::vector<SymbolId> coords = {SymbolRegistry::x_id, SymbolRegistry::y_id};
  for (SymbolId e : fiber_coordinates(c.rank())) coords.push_back(e);
  return Chart(std::move(coords));
}

Distribution horizontal_distribution(const Connection& c) {
  const Chart chart = total_space(c);
  const auto e = fiber_coordinates(c.rank());
  std::vector<VectorField> fields;
  for (std::size_t i = 0; i < 2; ++i) {
    ExprVector comps(chart.dim());
    comps[i] = 1;
    const ExprVector vert = times_fiber(i == 0 ? c.dx_part() : c.dy_part(), e);
    std::copy(vert.begin(), vert.end(), comps.begin() + 2);
    fields.emplace_back(chart, std::move(comps));
  }
  return Distribution(chart, std::move(fields));
}

std::vector<Form> connection_forms(const Connection& c) {
  const Chart chart = total_space(c);
  const auto e = fiber_coordinates(c.rank());
  const ExprVector ax = times_fiber(c.dx_part(), e);
  const ExprVector by = times_fiber(c.dy_part(), e);
  std::vector<Form> out;
  for (std::size_t b = 0; b < c.rank(); ++b) {
    ExprVector comps(chart.dim());
    comps[0] = -ax[b];
    comps[1] = -by[b];
    comps[2 + b] = 1;
    out.emplace_back(chart, 1, std::move(comps));
  }
  return out;
}

Curvature curvature(const Connection& c) {
  const ExprMatrix& a = c.dx_part();
  const ExprMatrix& b = c.dy_part();
  const ExprMatrix frame = differentiate(b, SymbolRegistry::x_id) - differentiate(a, SymbolRegistry::y_id) - (a * b - b * a);
  return Curvature{transpose(frame)};
}

CurvatureDerivatives covariant_curvature_derivatives(const Connection& c) {
  const auto e = fiber_coordinates(c.rank());
  const Distribution h = horizontal_distribution(c);
  const VectorField x3 = lie_bracket(h.fields()[0], h.fields()[1]);
  const Curvature r{read_vertical(x3, e, "[X1, X2]")};
  if (r != curvature(c)) throw ConsistencyError("bracket curvature differs from d omega - omega ^ omega");

  CurvatureDerivatives out;
  for (std::size_t k = 0; k < 2; ++k) {
    const Curvature dk{read_vertical(lie_bracket(h.fields()[k], x3), e, "[X_k, X3]")};
    const ExprMatrix ak = transpose(k == 0 ? c.dx_part() : c.dy_part());
    const ExprMatrix formula = differentiate(r.matrix, k == 0 ? SymbolRegistry::x_id : SymbolRegistry::y_id) +
                               ak * r.matrix - r.matrix * ak;
    if (formula != dk.matrix) throw ConsistencyError("covariant derivative of curvature: bracket and formula differ");
    (k == 0 ? out.d1 : out.d2) = dk;
  }
  return out;
}

Connection gauge_transform(const Connection& c, const ExprMatrix& g) {
  require_square(g, c.rank(), "gauge matrix");
  require_on_base(g, "gauge matrix");
  if (determinant(g).is_zero()) throw DomainError("gauge matrix has identically zero determinant");
  const ExprMatrix gi = inverse(g);
  ExprMatrix a = g * c.dx_part() * gi + differentiate(g, SymbolRegistry::x_id) * gi;
  ExprMatrix b = g * c.dy_part() * gi + differentiate(g, SymbolRegistry::y_id) * gi;
  return Connection(std::move(a), std::move(b), c.group());
}

std::string to_string(GrowthClass g) {
  switch (g) {
    case GrowthClass::integrable:
      return "integrable";
    case GrowthClass::g23:
      return "(2,3)";
    case GrowthClass::g234:
      return "(2,3,4)";
    case GrowthClass::g235:
      return "(2,3,5)";
  }
  return "";
}

namespace {

TensorClassification tensor_route(const Curvature& r, const CurvatureDerivatives& d) {
  TensorClassification out;
  if (r.is_zero()) {
    out.kind = GrowthClass::integrable;
    return out;
  }
  if (d.d1.is_zero() && d.d2.is_zero()) {
    out.kind = GrowthClass::g23;
    return out;
  }
  ExprMatrix m;
  for (std::size_t i = 0; i < r.matrix.size(); ++i) {
    for (std::size_t j = 0; j < r.matrix.size(); ++j) m.push_back({d.d1.matrix[i][j], d.d2.matrix[i][j]});
  }
  const auto kernel = nullspace(m, 2);
  if (kernel.empty()) {
    out.kind = GrowthClass::g235;
  } else {
    out.kind = GrowthClass::g234;
    out.witness = std::array<Expr, 2>{kernel[0][0], kernel[0][1]};
  }
  return out;
}

}  // namespace

TensorClassification tensor_classification(const Connection& c) {
  const Curvature r = curvature(c);
  if (r.is_zero()) return tensor_route(r, {});
  return tensor_route(r, covariant_curvature_derivatives(c));
}

GrowthClassification classify_growth(const Connection& c) {
  if (c.rank() != 3) throw DomainError("growth classification needs a rank-3 connection");
  GrowthClassification out;
  std::vector<std::size_t> expected;
  const Curvature r = curvature(c);
  if (r.is_zero()) {
    out.kind = out.tensor_kind = GrowthClass::integrable;
    expected = {2};
  } else {
    const auto d = covariant_curvature_derivatives(c);
    const auto t = tensor_route(r, d);
    out.tensor_kind = t.kind;
    out.witness = t.witness;

    const auto e = fiber_coordinates(3);
    ExprMatrix vertical;
    for (const auto* f : {&r, &d.d1, &d.d2}) {
      ExprVector row(3);
      for (std::size_t b = 0; b < 3; ++b) {
        for (std::size_t a = 0; a < 3; ++a) row[b] += Expr::symbol(e[a]) * f->matrix[a][b];
      }
      vertical.push_back(std::move(row));
    }
    const std::size_t rho = generic_rank(vertical).rank;
    out.kind = rho == 1 ? GrowthClass::g23 : rho == 2 ? GrowthClass::g234 : GrowthClass::g235;
    expected = {2, 3};
    if (rho > 1) expected.push_back(2 + rho);
  }
  out.growth = derived_flag(horizontal_distribution(c)).growth;
  const auto& got = out.growth.ranks;
  if (got.size() < expected.size() || !std::equal(expected.begin(), expected.end(), got.begin())) {
    throw ConsistencyError("curvature classification " + to_string(out.kind) + " disagrees with derived flag " +
                           out.growth.str());
  }
  return out;
}

Connection euclidean_connection(const Christoffel& g, const Expr& l, const Expr& m, const Expr& n) {
  ExprMatrix a = mat_from_rows({{0, 1, 0}, {l, g[0][0][0], g[1][0][0]}, {m, g[0][0][1], g[1][0][1]}});
  ExprMatrix b = mat_from_rows({{0, 0, 1}, {m, g[0][0][1], g[1][0][1]}, {n, g[0][1][1], g[1][1][1]}});
  return Connection(std::move(a), std::move(b));
}

}  // namespace surfdist
