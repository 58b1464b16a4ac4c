// Runs the ten acceptance criteria and prints one PASS/FAIL line each.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "../generators.hpp"
#include "surfdist/errors.hpp"
#include "surfdist/parse.hpp"
#include "surfdist/projective.hpp"

using namespace surfdist;
using surfdist::testing::Gen;

namespace {

// Collects the first failed check of a criterion.
struct Checks {
  bool ok = true;
  std::string first_failure;

  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      first_failure = what;
    }
  }
};

Scope scope() {
  Scope sc = Scope::standard();
  sc.parameter("k1").parameter("k2").parameter("k3");
  sc.function("b").function("c").function("mu").function("nu");
  sc.function("al", true, false).function("be", true, false).function("ga", true, false).function("de", true, false);
  return sc;
}

Expr e(const char* text) { return parse(text, scope()); }

CanonicalSystem example_family() {
  return {e("4*k1*(k1*y + k2)/(4*x + k3)^2"), e("(4*x + k3)/(k1*y + k2)^2"), 0, 0};
}

bool all_zero(const std::array<Expr, 3>& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

void criterion_1(Checks& c) {
  c.expect(all_zero(integrability_residuals(example_family())), "residuals of the k-family");
}

void criterion_2(Checks& c) {
  const CanonicalSystem s = CanonicalSystem::symbolic();
  const ExprMatrix want = {{0, e("-(b*nu + mu_y)"), e("c*mu + nu_x")},
                           {0, e("-b*c"), e("c_x + nu")},
                           {0, e("-(b_y + mu)"), e("b*c")}};
  c.expect(curvature(bar_connection(s)).matrix == want, "bar curvature entrywise");

  const auto res = integrability_residuals(s);
  const std::vector<Expr> rv(res.begin(), res.end());
  std::vector<Expr> comps;
  for (const auto& row : curvature(rank4_connection(s)).matrix) {
    for (const auto& x : row) {
      if (x.is_zero()) continue;
      comps.push_back(x);
      c.expect(rational_combination(x, rv).has_value(), "rank-4 component in residual span: " + x.str());
    }
  }
  for (const auto& r : rv) c.expect(rational_combination(r, comps).has_value(), "residual in curvature span");
}

void criterion_3(Checks& c) {
  auto growth = [](const CanonicalSystem& s) { return growth_dictionary(s); };
  c.expect(growth({0, 0, 0, 0}).bar_growth.str() == "(2)", "quadric");
  const auto flat = growth(ruled_canonical(0, e("be"), e("ga"), -e("be")));
  c.expect(flat.bar_growth.str() == "(2)" && flat.classification.flat_ruled, "flat-ruled");
  c.expect(growth(ruled_canonical(e("al"), e("be"), e("ga"), e("de"))).bar_growth.str() == "(2,3,4)", "ruled");

  const auto ex = growth(example_family());
  c.expect(ex.bar_growth.str() == "(2,3,4)", "k-family growth");
  c.expect(ex.witness.has_value(), "k-family witness");
  if (ex.witness) {
    c.expect((*ex.witness)[0] * e("k1*(k1*y + k2)") == (*ex.witness)[1] * e("4*x + k3"), "witness proportional");
  }
  const auto unit = growth({1, 1, 0, 0});
  c.expect(unit.bar_growth.str() == "(2,3,5)", "unit-bc growth");
  bool found = false;
  for (const auto& x : unit.bar_growth.certificate) found = found || x.str() == "2*p^3 - 2*q^3";
  c.expect(found, "unit-bc certificate");
  for (const auto* d : {&flat, &ex, &unit}) c.expect(d->prediction_holds, "prediction");
}

void criterion_4(Checks& c) {
  const No23Certificate cert = no_23_certificate();
  c.expect(cert.complete, "every curvature entry is a combination of D entries");
  // Re-evaluate each combination against the symbolic D1, D2 and R.
  const Connection bar = bar_connection(CanonicalSystem::symbolic());
  const auto d = covariant_curvature_derivatives(bar);
  const ExprMatrix r = curvature(bar).matrix;
  std::size_t nonzero = 0;
  for (const auto& row : r)
    for (const auto& x : row) nonzero += x.is_zero() ? 0 : 1;
  c.expect(cert.rows.size() == nonzero, "one row per nonzero entry");
  for (const auto& row : cert.rows) {
    Expr acc;
    for (const auto& [k, name] : row.combination) {
      const ExprMatrix& m = (name[1] == '1' ? d.d1 : d.d2).matrix;
      acc += Expr(k) * m[name[3] - '0'][name[6] - '0'];
    }
    c.expect(acc == r[row.i][row.j], "combination reproduces R entry");
  }
}

void criterion_5(Checks& c) {
  std::vector<CanonicalSystem> systems;
  for (const auto& entry : catalog()) systems.push_back(entry.system);
  systems.push_back(CanonicalSystem::symbolic());
  for (const auto& s : systems) {
    c.expect(derived_flag(m6_distribution(s)).growth.str() == "(3,5,6)", "M6 growth");
    const auto g0 = derived_flag(derived_reduction(s, 0)).growth;
    c.expect(derived_flag(derived_reduction(s, 1)).growth == g0, "s0 = 1");
    c.expect(derived_flag(derived_reduction(s, 7)).growth == g0, "s0 = 7");
  }
  const CanonicalSystem s = CanonicalSystem::symbolic();
  const DerivedFlag f = derived_flag(m6_distribution(s));
  const VectorField ds = VectorField::coordinate(m6_chart(), symbols().coordinate("s"));
  c.expect(cauchy_characteristics(f.flag[0]).empty(), "no Cauchy characteristics of Delta");
  const Distribution c1 = cauchy_characteristics(f.flag[1]);
  c.expect(c1.size() == 1 && same_span(c1.fields(), {ds}), "Cauchy of Delta' is d/ds");
  for (int s0 : {0, 1, 7}) {
    const Distribution hat = hat_distribution(s, s0);
    const Distribution ch = cauchy_characteristics(hat);
    c.expect(ch.size() == 1 && same_span(ch.fields(), {ds}), "Cauchy of hat-Delta is d/ds");
    c.expect(derived_flag(hat).growth.str() == "(3,4,6)", "hat-Delta growth");
  }
}

void criterion_6(Checks& c) {
  const CanonicalSystem s = CanonicalSystem::symbolic();
  const auto derived = derived_codistribution(rank4_forms(s));
  c.expect(derived.size() == 3 && same_span(derived, m6_forms(s)), "derived system of the rank-4 EDS");
}

void criterion_7(Checks& c) {
  const InvariantsReport r = invariants(CanonicalSystem::symbolic());
  c.expect(r.fubini == e("8*b*c"), "F = 8bc");
  c.expect(r.cubic[0] == e("-2*b") && r.cubic[1] == e("-2*c"), "cubic form");
  Expr phi[2][2][2];
  phi[0][0][0] = r.cubic[0];
  phi[1][1][1] = r.cubic[1];
  const Expr hinv[2][2] = {{0, 1}, {1, 0}};
  for (int k = 0; k < 2; ++k) {
    Expr trace;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) trace += hinv[i][j] * phi[i][j][k];
    c.expect(trace.is_zero(), "apolarity");
  }
  c.expect(r.ell[0] == e("b_y") && r.ell[1] == e("b*c") && r.ell[2] == e("c_x"), "l components");
  c.expect(r.r[0] == e("-(b*nu + mu_y)") && r.r[1] == e("-(c*mu + nu_x)"), "r components");

  const InvariantsReport k = invariants(example_family());
  c.expect(k.gaussian_curvature && k.gaussian_curvature->is_zero(), "K = 0 on the k-family");
  c.expect(k.applicability && all_zero(*k.applicability), "applicability residuals vanish on the k-family");
  const auto a = applicability_residuals({e("x + y"), 1, 0, 0});
  c.expect(!a[0].is_zero(), "first residual nonzero for b = x + y, c = 1");
}

ExprMatrix random_scale_boost(Gen& g) {
  const std::vector<SymbolId> xy = {SymbolRegistry::x_id, SymbolRegistry::y_id};
  const Expr u = g.nonzero_polynomial(xy, 2, 1);
  const Expr v = g.nonzero_polynomial(xy, 2, 1);
  return {{u, 0, 0}, {0, v, 0}, {0, 0, v.inverse()}};
}

void criterion_8(Checks& c) {
  Gen g(0xacce0008);
  std::vector<ExprMatrix> gauges;
  for (int i = 0; i < 5; ++i) gauges.push_back(random_scale_boost(g));
  for (const auto& entry : catalog()) {
    const Connection bar = bar_connection(entry.system);
    const GrowthVector base = derived_flag(horizontal_distribution(bar)).growth;
    for (const auto& gm : gauges) {
      const GrowthVector moved = derived_flag(horizontal_distribution(gauge_transform(bar, gm))).growth;
      c.expect(moved == base, "gauge changes the growth of " + entry.name);
    }
  }
}

void criterion_9(Checks& c) {
  Gen g(0xacce0009);
  const std::vector<SymbolId> xy = {SymbolRegistry::x_id, SymbolRegistry::y_id};
  for (int i = 0; i < 5; ++i) {
    const Expr f = g.nonzero_polynomial(xy);
    c.expect(wilczynski_covariance_check(CanonicalSystem::symbolic(), f), "symbolic, f = " + f.str());
    c.expect(wilczynski_covariance_check(example_family(), f), "k-family, f = " + f.str());
    c.expect(wilczynski_covariance_check({1, 1, 0, 0}, f), "unit-bc, f = " + f.str());
  }
}

VectorField random_field(Gen& g, const Chart& chart) {
  ExprVector comps;
  for (std::size_t i = 0; i < chart.dim(); ++i) comps.push_back(g.polynomial(chart.coords(), 3, 2));
  return VectorField(chart, std::move(comps));
}

void criterion_10(Checks& c) {
  Gen g(0xacce0010);
  const SymbolId x = SymbolRegistry::x_id, y = SymbolRegistry::y_id;
  const std::vector<SymbolId> vars = {x, y, symbols().coordinate("z"), *symbols().find("b"), *symbols().find("k1")};
  for (int i = 0; i < 100; ++i) {
    const Expr f = g.rational_function(vars);
    c.expect(differentiate(differentiate(f, x), y) == differentiate(differentiate(f, y), x), "mixed partials");
  }
  const Chart chart = Chart::of({"x", "y", "z"});
  for (int i = 0; i < 20; ++i) {
    const auto u = random_field(g, chart), v = random_field(g, chart), w = random_field(g, chart);
    c.expect(lie_bracket(u, v) == -lie_bracket(v, u), "antisymmetry");
    c.expect((lie_bracket(u, lie_bracket(v, w)) + lie_bracket(v, lie_bracket(w, u)) + lie_bracket(w, lie_bracket(u, v)))
                 .is_zero(),
             "Jacobi");
    const Expr h = g.polynomial(chart.coords(), 3, 2);
    c.expect(lie_bracket(h * v, w) == h * lie_bracket(v, w) - w.apply(h) * v, "Leibniz");
    const Form zero_form = Form::function(chart, g.polynomial(chart.coords(), 3, 3));
    c.expect(exterior_derivative(exterior_derivative(zero_form)).is_zero(), "d^2 = 0");
    const Form one_form(chart, 1, {g.polynomial(chart.coords()), g.polynomial(chart.coords()), g.polynomial(chart.coords())});
    const Form dw = exterior_derivative(one_form);
    c.expect(dw(u, v) == u.apply(one_form(v)) - v.apply(one_form(u)) - one_form(lie_bracket(u, v)), "d invariant formula");
  }

  // generic rank against exact evaluation at certificate-respecting points
  const DerivedFlag f = derived_flag(derived_reduction({1, 1, 0, 0}, 0));
  std::vector<VectorField> fields = f.flag.back().fields();
  const RankCertificate rc = generic_rank(fields);
  const ExprMatrix m = coefficient_matrix(fields);
  std::vector<SymbolId> pv;
  for (const auto& row : m)
    for (const auto& x : row)
      for (SymbolId s : x.symbols()) pv.push_back(s);
  int checked = 0;
  while (checked < 20) {
    const Point pt = g.point(pv);
    bool generic = true;
    try {
      for (const auto& cert : rc.certificate) generic = generic && eval_at(cert, pt) != 0;
      if (!generic) continue;
      c.expect(rank(evaluate(m, pt)) == rc.rank, "numeric rank");
    } catch (const EvaluationError&) {
      continue;
    }
    ++checked;
  }
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    double limit_ms;
    std::function<void(Checks&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "integrability of the k-family", 1000, criterion_1},
      {2, "curvature matrices and flatness ideal", 5000, criterion_2},
      {3, "growth-vector dictionary", 30000, criterion_3},
      {4, "no (2,3) stratum", 5000, criterion_4},
      {5, "M6 structure and reduction", 60000, criterion_5},
      {6, "derived system of the rank-4 EDS", 60000, criterion_6},
      {7, "invariants", 60000, criterion_7},
      {8, "gauge invariance of growth", 120000, criterion_8},
      {9, "Wilczynski covariance", 120000, criterion_9},
      {10, "kernel properties", 300000, criterion_10},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Checks checks;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(checks);
    } catch (const std::exception& ex) {
      checks.expect(false, std::string("exception: ") + ex.what());
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (checks.ok && ms > cr.limit_ms) checks.expect(false, "runtime limit exceeded");
    char line[160];
    std::snprintf(line, sizeof line, "criterion %2d  %-4s  %9.1f ms  %s", cr.id, checks.ok ? "PASS" : "FAIL", ms,
                  cr.title);
    std::cout << line;
    if (!checks.ok) std::cout << "  [" << checks.first_failure << "]";
    std::cout << std::endl;
    failed += checks.ok ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
