#include "surfdist/projective.hpp"

#include "surfdist/errors.hpp"
#include "surfdist/parse.hpp"

namespace surfdist {

namespace {

constexpr SymbolId X = SymbolRegistry::x_id;
constexpr SymbolId Y = SymbolRegistry::y_id;

Expr dx(const Expr& e) { return differentiate(e, X); }
Expr dy(const Expr& e) { return differentiate(e, Y); }

SymbolId coord(const char* name) { return symbols().coordinate(name); }
Expr z_() { return Expr::symbol(coord("z")); }
Expr p_() { return Expr::symbol(coord("p")); }
Expr q_() { return Expr::symbol(coord("q")); }
Expr s_() { return Expr::symbol(coord("s")); }

void require_on_base(const CanonicalSystem& s) {
  for (const Expr* e : {&s.b, &s.c, &s.mu, &s.nu}) {
    for (SymbolId v : e->symbols()) {
      if (symbols().kind(v) == SymbolKind::fiber_coordinate) {
        throw DomainError("coefficient involves the fiber coordinate '" + symbols().name(v) + "'");
      }
    }
  }
}

// d_xy log f without logarithms.
Expr log_xy(const Expr& f) { return (dx(dy(f)) * f - dx(f) * dy(f)) / (f * f); }

ExprMatrix rows(std::initializer_list<std::initializer_list<Expr>> r) {
  ExprMatrix m;
  for (const auto& row : r) m.emplace_back(row);
  return m;
}

Expr r_of(const CanonicalSystem& s) { return s.b * q_() + s.mu * z_(); }
Expr t_of(const CanonicalSystem& s) { return s.c * p_() + s.nu * z_(); }

// Total derivatives on M6 of a function of (x, y, z, p, q) along solutions.
Expr total_x(const CanonicalSystem& s, const Expr& f) {
  if (f.contains(coord("s"))) throw DomainError("total derivative of an s-dependent function");
  return dx(f) + p_() * differentiate(f, coord("z")) + r_of(s) * differentiate(f, coord("p")) +
         s_() * differentiate(f, coord("q"));
}

Expr total_y(const CanonicalSystem& s, const Expr& f) {
  if (f.contains(coord("s"))) throw DomainError("total derivative of an s-dependent function");
  return dy(f) + q_() * differentiate(f, coord("z")) + s_() * differentiate(f, coord("p")) +
         t_of(s) * differentiate(f, coord("q"));
}

// Coefficients of a function linear in (z, p, q, s).
ExprVector linear_coefficients(const Expr& f) {
  ExprVector out;
  Expr rebuilt;
  for (const char* n : {"z", "p", "q", "s"}) {
    out.push_back(differentiate(f, coord(n)));
    rebuilt += out.back() * Expr::symbol(coord(n));
  }
  if (rebuilt != f) throw ConsistencyError("expected a function linear in the fiber coordinates");
  return out;
}

// (a, b) with w = a theta1 + b theta2 for 1-forms given by (dx, dy) coefficients.
std::array<Expr, 2> in_coframe(const std::array<Expr, 2>& w, const std::array<Expr, 2>& t1,
                               const std::array<Expr, 2>& t2) {
  const Expr det = t1[0] * t2[1] - t1[1] * t2[0];
  if (det.is_zero()) throw DomainError("degenerate coframe");
  return {(w[0] * t2[1] - w[1] * t2[0]) / det, (t1[0] * w[1] - t1[1] * w[0]) / det};
}

std::array<Expr, 2> parts(const Connection& c, std::size_t i, std::size_t j) {
  return {c.dx_part()[i][j], c.dy_part()[i][j]};
}

void require_constant_s0(const Expr& s0) {
  for (SymbolId v : s0.symbols()) {
    const SymbolKind k = symbols().kind(v);
    if (k != SymbolKind::parameter) {
      throw DomainError("s0 must be constant over the fibration; it involves '" + symbols().name(v) + "'");
    }
  }
}

void require_x_only(const Expr& e, const char* what) {
  for (SymbolId v : e.symbols()) {
    if (symbols().kind(v) == SymbolKind::fiber_coordinate) {
      throw DomainError(std::string(what) + " involves a fiber coordinate");
    }
  }
  if (!dy(e).is_zero()) throw DomainError(std::string(what) + " depends on y");
}

}  // namespace

CanonicalSystem CanonicalSystem::symbolic() {
  auto f = [](const char* n) { return Expr::symbol(symbols().function(n)); };
  return {f("b"), f("c"), f("mu"), f("nu")};
}

std::array<Expr, 3> integrability_residuals(const CanonicalSystem& s) {
  const Expr &b = s.b, &c = s.c, &mu = s.mu, &nu = s.nu;
  return {
      -2 * dy(b) * nu - b * dy(nu) - dy(dy(mu)) + dx(mu) * c + 2 * mu * dx(c) + dx(dx(nu)),
      -2 * dy(b) * c - b * dy(c) + dx(dx(c)) + 2 * dx(nu),
      -2 * dy(mu) - dy(dy(b)) + dx(b) * c + 2 * b * dx(c),
  };
}

Expr gaussian_curvature(const CanonicalSystem& s) {
  const Expr bc = s.b * s.c;
  if (bc.is_zero()) throw DomainError("Gaussian curvature needs bc != 0");
  return -log_xy(bc) / (8 * bc);
}

std::array<Expr, 3> applicability_residuals(const CanonicalSystem& s) {
  const Expr bc = s.b * s.c;
  if (bc.is_zero()) throw DomainError("applicability residuals need bc != 0");
  const Expr lb = log_xy(s.b);
  const Expr lc = log_xy(s.c);
  std::array<Expr, 3> out{lb - lc, dx(lc / bc), dy(lb / bc)};
  if (out[0].is_zero() && out[1].is_zero() && out[2].is_zero()) {
    const Expr k = gaussian_curvature(s);
    if (!dx(k).is_zero() || !dy(k).is_zero()) {
      throw ConsistencyError("applicability residuals vanish but K is not constant");
    }
  }
  return out;
}

InvariantsReport invariants(const CanonicalSystem& s) {
  require_on_base(s);
  InvariantsReport out;
  out.phi = 8 * s.b * s.c;
  out.cubic = {-2 * s.b, -2 * s.c};

  // Phi_ijk and h^ij as full arrays; the contraction runs over all indices.
  Expr phi3[2][2][2];
  phi3[0][0][0] = out.cubic[0];
  phi3[1][1][1] = out.cubic[1];
  const Expr hinv[2][2] = {{0, 1}, {1, 0}};
  for (std::size_t k = 0; k < 2; ++k) {
    Expr trace;
    for (std::size_t i = 0; i < 2; ++i) {
      for (std::size_t j = 0; j < 2; ++j) trace += hinv[i][j] * phi3[i][j][k];
    }
    if (!trace.is_zero()) throw ConsistencyError("cubic form is not apolar");
  }
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t a = 0; a < 2; ++a)
          for (std::size_t b = 0; b < 2; ++b)
            for (std::size_t c = 0; c < 2; ++c) {
              const Expr w = hinv[i][a] * hinv[j][b] * hinv[k][c];
              if (!w.is_zero()) out.fubini += phi3[i][j][k] * phi3[a][b][c] * w;
            }
  if (out.fubini != out.phi) throw ConsistencyError("Fubini contraction differs from 8bc");

  // Cartan extraction from the rank-4 connection; omega^a_b is stored at [b][a].
  const Connection w = rank4_connection(s);
  const auto t1 = parts(w, 0, 1);
  const auto t2 = parts(w, 0, 2);
  const SymmetricTensor2 h = h_from_connection(w);
  const Expr hm[2][2] = {{h.h11, h.h12}, {h.h12, h.h22}};
  Expr ell[2][2];
  for (std::size_t i = 0; i < 2; ++i) {
    std::array<Expr, 2> f;
    for (std::size_t k = 0; k < 2; ++k) {
      Expr acc = -(k == 0 ? w.dx_part() : w.dy_part())[i + 1][0];
      for (std::size_t j = 0; j < 2; ++j) acc += hm[i][j] * (k == 0 ? w.dx_part() : w.dy_part())[3][j + 1];
      f[k] = acc;
    }
    const auto coeffs = in_coframe(f, t1, t2);
    ell[i][0] = coeffs[0];
    ell[i][1] = coeffs[1];
  }
  if (ell[0][1] != ell[1][0]) throw ConsistencyError("extracted l is not symmetric");
  out.ell = {ell[0][0], ell[0][1], ell[1][1]};
  const auto r = in_coframe(parts(w, 3, 0), t1, t2);
  out.r = {-r[0], -r[1]};

  out.integrability = integrability_residuals(s);
  if (!(s.b * s.c).is_zero()) {
    out.gaussian_curvature = gaussian_curvature(s);
    out.applicability = applicability_residuals(s);
  }
  return out;
}

std::string to_string(Stratum s) {
  switch (s) {
    case Stratum::quadric:
      return "Quadric";
    case Stratum::ruled:
      return "Ruled";
    case Stratum::very_general:
      return "VeryGeneral";
  }
  return "";
}

std::string Classification::label() const {
  if (stratum == Stratum::ruled && flat_ruled) return "Ruled (two linear complexes)";
  return to_string(stratum);
}

namespace {

std::vector<std::size_t> growth_of(GrowthClass g) {
  switch (g) {
    case GrowthClass::integrable:
      return {2};
    case GrowthClass::g23:
      return {2, 3};
    case GrowthClass::g234:
      return {2, 3, 4};
    case GrowthClass::g235:
      break;
  }
  return {2, 3, 5};
}

}  // namespace

Classification classify(const CanonicalSystem& s) {
  require_on_base(s);
  Classification out;
  const bool bz = s.b.is_zero();
  const bool cz = s.c.is_zero();
  const Connection bar = bar_connection(s);
  const bool flat = curvature(bar).is_zero();
  if (bz && cz) {
    out.stratum = Stratum::quadric;
    out.applicable = true;
    out.normal_form = s.mu.is_zero() && s.nu.is_zero();
  } else if (bz || cz) {
    out.stratum = Stratum::ruled;
    out.ruling = cz ? 'y' : 'x';
    out.applicable = true;
    out.flat_ruled = flat;
    out.normal_form = cz ? s.nu.is_zero() : s.mu.is_zero();
  } else {
    out.stratum = Stratum::very_general;
    const auto res = applicability_residuals(s);
    out.applicable = res[0].is_zero() && res[1].is_zero() && res[2].is_zero();
  }
  if (out.normal_form) {
    out.predicted_growth = flat ? std::vector<std::size_t>{2} : std::vector<std::size_t>{2, 3, 4};
    return out;
  }
  const auto t = tensor_classification(bar);
  out.witness = t.witness;
  out.predicted_growth = growth_of(t.kind);
  return out;
}

Connection rank4_connection(const CanonicalSystem& s) {
  require_on_base(s);
  const Expr &b = s.b, &c = s.c, &mu = s.mu, &nu = s.nu;
  ExprMatrix a = rows({{0, 1, 0, 0}, {mu, 0, b, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}});
  ExprMatrix bb = rows({{0, 0, 1, 0}, {0, 0, 0, 1}, {nu, c, 0, 0}, {0, 0, 0, 0}});
  // z_xxy = D_y(r), z_xyy = D_x(t).
  const ExprVector row_x = linear_coefficients(total_y(s, r_of(s)));
  const ExprVector row_y = linear_coefficients(total_x(s, t_of(s)));
  a[3] = row_x;
  bb[3] = row_y;

  const ExprVector closed_x = {b * nu + dy(mu), b * c, mu + dy(b), 0};
  const ExprVector closed_y = {c * mu + dx(nu), dx(c) + nu, b * c, 0};
  if (row_x != closed_x || row_y != closed_y) throw ConsistencyError("rank-4 row 3 differs from its closed form");

  const ExprMatrix rbar = curvature(bar_connection(s)).matrix;
  for (std::size_t al = 0; al < 3; ++al) {
    if (row_x[al] != -rbar[al][1] || row_y[al] != rbar[al][2]) {
      throw ConsistencyError("rank-4 row 3 is not the contraction of the bar curvature");
    }
  }
  return Connection(std::move(a), std::move(bb), StructureGroup::parabolic);
}

const Chart& m6_chart() {
  static const Chart chart = Chart::of({"x", "y", "z", "p", "q", "s"});
  return chart;
}

const Chart& m5_chart() {
  static const Chart chart = Chart::of({"x", "y", "z", "p", "q"});
  return chart;
}

namespace {

Distribution level_fields(const CanonicalSystem& s, const Expr& sx, const Expr& sy) {
  const Chart& m6 = m6_chart();
  VectorField xf(m6, {1, 0, p_(), r_of(s), sx, 0});
  VectorField yf(m6, {0, 1, q_(), sy, t_of(s), 0});
  return Distribution(m6, {xf, yf, VectorField::coordinate(m6, coord("s"))});
}

}  // namespace

Distribution m6_distribution(const CanonicalSystem& s) {
  require_on_base(s);
  return level_fields(s, s_(), s_());
}

std::vector<Form> m6_forms(const CanonicalSystem& s) {
  require_on_base(s);
  const Chart& m6 = m6_chart();
  return {
      Form(m6, 1, {-p_(), -q_(), 1, 0, 0, 0}),
      Form(m6, 1, {-r_of(s), -s_(), 0, 1, 0, 0}),
      Form(m6, 1, {-s_(), -t_of(s), 0, 0, 1, 0}),
  };
}

std::vector<Form> rank4_forms(const CanonicalSystem& s) {
  auto out = m6_forms(s);
  out.emplace_back(m6_chart(), 1,
                   ExprVector{-total_y(s, r_of(s)), -total_x(s, t_of(s)), 0, 0, 0, 1});
  return out;
}

Distribution hat_distribution(const CanonicalSystem& s, const Expr& s0) {
  require_on_base(s);
  require_constant_s0(s0);
  return level_fields(s, s0, s0);
}

Distribution derived_reduction(const CanonicalSystem& s, const Expr& s0) {
  const Distribution hat = hat_distribution(s, s0);
  const VectorField& zf = hat.fields()[2];
  std::vector<VectorField> out;
  for (std::size_t i = 0; i < 2; ++i) {
    const VectorField& v = hat.fields()[i];
    if (!lie_bracket(zf, v).is_zero()) throw ConsistencyError("level-set field does not commute with d/ds");
    if (!v[5].is_zero()) throw ConsistencyError("level-set field has a d/ds component");
    out.emplace_back(m5_chart(), ExprVector(v.components().begin(), v.components().begin() + 5));
  }
  return Distribution(m5_chart(), std::move(out));
}

Connection bar_connection(const CanonicalSystem& s) {
  require_on_base(s);
  Connection c(rows({{0, 1, 0}, {s.mu, 0, s.b}, {0, 0, 0}}), rows({{0, 0, 1}, {0, 0, 0}, {s.nu, s.c, 0}}),
               StructureGroup::scale_and_boost);
  const Distribution h = horizontal_distribution(c);
  const Distribution red = derived_reduction(s, 0);
  if (h.chart() != red.chart() || h.fields() != red.fields()) {
    throw ConsistencyError("bar horizontal distribution differs from the reduction at s0 = 0");
  }
  return c;
}

DictionaryReport growth_dictionary(const CanonicalSystem& s) {
  DictionaryReport out;
  out.classification = classify(s);
  out.bar_growth = derived_flag(derived_reduction(s, 0)).growth;
  out.connection = classify_growth(bar_connection(s));
  if (out.connection.growth != out.bar_growth) {
    throw ConsistencyError("derived flag of the reduction differs from the bar connection's flag");
  }
  if (out.connection.kind == GrowthClass::g23 || out.connection.tensor_kind == GrowthClass::g23) {
    throw ConsistencyError("growth vector (2,3) for a projective connection");
  }
  out.prediction_holds = out.classification.predicted_growth == out.bar_growth.ranks;
  if (out.connection.witness) {
    const auto& w = *out.connection.witness;
    out.witness = VectorField(Connection::base(), {w[0], w[1]});
  }
  return out;
}

No23Certificate no_23_certificate() {
  const CanonicalSystem s = CanonicalSystem::symbolic();
  const Connection bar = bar_connection(s);
  const ExprMatrix r = curvature(bar).matrix;
  const auto d = covariant_curvature_derivatives(bar);
  std::vector<Expr> gens;
  std::vector<std::string> names;
  for (std::size_t k = 0; k < 2; ++k) {
    const ExprMatrix& m = (k == 0 ? d.d1 : d.d2).matrix;
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        gens.push_back(m[i][j]);
        names.push_back("D" + std::to_string(k + 1) + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
      }
    }
  }
  No23Certificate out;
  out.complete = true;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (r[i][j].is_zero()) continue;
      const auto comb = rational_combination(r[i][j], gens);
      if (!comb) {
        out.complete = false;
        continue;
      }
      No23Certificate::Row row{i, j, {}};
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if ((*comb)[g] != 0) row.combination.emplace_back((*comb)[g], names[g]);
      }
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

CanonicalSystem canonicalize(const PreCanonicalSystem& p) {
  const Expr& th = p.theta;
  if (dx(th) != p.alpha || dy(th) != p.delta) throw DomainError("theta is not a potential of alpha dx + delta dy");
  const Expr tx = dx(th), ty = dy(th);
  CanonicalSystem out{p.b, p.c, p.mu + p.b * ty / 2 + tx * tx / 4 - dx(tx) / 2,
                      p.nu + p.c * tx / 2 + ty * ty / 4 - dy(ty) / 2};
  require_on_base(out);
  return out;
}

SymmetricTensor2 extract_h(const GeneralSystem& g) {
  SymmetricTensor2 out{g.l, 1, g.m, g.l * g.m - 1, g.l.is_zero() && g.m.is_zero()};
  if (out.determinant.is_zero()) throw DomainError("degenerate h: lm - 1 vanishes identically");
  return out;
}

SymmetricTensor2 h_from_connection(const Connection& w) {
  if (w.rank() != 4) throw DomainError("h is read from a rank-4 connection");
  const auto t1 = parts(w, 0, 1);
  const auto t2 = parts(w, 0, 2);
  const auto r1 = in_coframe(parts(w, 1, 3), t1, t2);
  const auto r2 = in_coframe(parts(w, 2, 3), t1, t2);
  if (r1[1] != r2[0]) throw ConsistencyError("h read from the connection is not symmetric");
  SymmetricTensor2 out{r1[0], r1[1], r2[1], r1[0] * r2[1] - r1[1] * r2[0], false};
  out.asymptotic = out.h11.is_zero() && out.h22.is_zero();
  return out;
}

ExprMatrix wilczynski_gauge(const Expr& f, std::size_t rank) {
  if (f.is_zero()) throw DomainError("gauge function vanishes identically");
  if (rank != 3 && rank != 4) throw DomainError("Wilczynski gauge has rank 3 or 4");
  ExprMatrix g = rows({{f, 0, 0, 0}, {dx(f), f, 0, 0}, {dy(f), 0, f, 0}, {dx(dy(f)), dy(f), dx(f), f}});
  if (rank == 3) {
    g.pop_back();
    for (auto& row : g) row.pop_back();
  }
  return g;
}

bool wilczynski_covariance_check(const CanonicalSystem& s, const Expr& f) {
  const Connection w = rank4_connection(s);
  const Connection wt = gauge_transform(w, wilczynski_gauge(f, 4));
  const SymmetricTensor2 h = h_from_connection(w);
  const SymmetricTensor2 ht = h_from_connection(wt);
  const bool h_same = h.h11 == ht.h11 && h.h12 == ht.h12 && h.h22 == ht.h22;
  const bool flat_same = curvature(w).is_zero() == curvature(wt).is_zero();

  const Connection bar = bar_connection(s);
  const Connection bt = gauge_transform(bar, wilczynski_gauge(f, 3));
  const bool coframe_same = parts(bt, 0, 1) == parts(bar, 0, 1) && parts(bt, 0, 2) == parts(bar, 0, 2);
  return h_same && flat_same && coframe_same;
}

CanonicalSystem ruled_canonical(const Expr& alpha, const Expr& beta, const Expr& gamma, const Expr& delta) {
  require_x_only(alpha, "alpha");
  require_x_only(beta, "beta");
  require_x_only(gamma, "gamma");
  require_x_only(delta, "delta");
  const Expr y = Expr::symbol(Y);
  CanonicalSystem out{alpha * y * y + beta * y + gamma, 0, -alpha * y + delta, 0};
  for (const Expr& r : integrability_residuals(out)) {
    if (!r.is_zero()) throw ConsistencyError("ruled canonical system is not integrable");
  }
  return out;
}

ExprMatrix ruled_ode_matrix(const Expr& alpha, const Expr& beta, const Expr& gamma, const Expr& delta) {
  require_x_only(alpha, "alpha");
  require_x_only(beta, "beta");
  require_x_only(gamma, "gamma");
  require_x_only(delta, "delta");
  return rows({{delta, gamma}, {-alpha, beta + delta}});
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    Scope sc = Scope::standard();
    sc.parameter("k1").parameter("k2").parameter("k3");
    sc.function("ra", true, false).function("rb", true, false).function("rg", true, false).function("rd", true, false);
    auto e = [&](const char* text) { return parse(text, sc); };
    std::vector<CatalogEntry> out;
    out.push_back({"quadric", "b = c = mu = nu = 0", {0, 0, 0, 0}, "Quadric", {2}, "literature"});
    out.push_back({"ruled", "b = ra y^2 + rb y + rg, mu = -ra y + rd with ra..rd functions of x",
                   ruled_canonical(e("ra"), e("rb"), e("rg"), e("rd")), "Ruled", {2, 3, 4}, "literature"});
    out.push_back({"flat-ruled", "b = rb y + rg, mu = -rb with rb, rg functions of x",
                   ruled_canonical(0, e("rb"), e("rg"), -e("rb")), "Ruled (two linear complexes)", {2},
                   "literature"});
    out.push_back({"example-234", "b = 4 k1 (k1 y + k2)/(4x + k3)^2, c = (4x + k3)/(k1 y + k2)^2",
                   {e("4*k1*(k1*y + k2)/(4*x + k3)^2"), e("(4*x + k3)/(k1*y + k2)^2"), 0, 0}, "VeryGeneral",
                   {2, 3, 4}, "literature"});
    out.push_back({"unit-bc", "b = c = 1, mu = nu = 0", {1, 1, 0, 0}, "VeryGeneral", {2, 3, 5}, "hand-computed"});
    return out;
  }();
  return entries;
}

const CatalogEntry* find_catalog_entry(std::string_view name) {
  for (const auto& entry : catalog()) {
    if (entry.name == name) return &entry;
  }
  return nullptr;
}

}  // namespace surfdist
