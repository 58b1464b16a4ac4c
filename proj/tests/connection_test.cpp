#include <gtest/gtest.h>

#include "generators.hpp"
#include "surfdist/connection.hpp"
#include "surfdist/errors.hpp"
#include "surfdist/parse.hpp"

using namespace surfdist;
using surfdist::testing::Gen;

namespace {

const Scope& scope() {
  static const Scope s = [] {
    Scope sc = Scope::standard();
    for (auto f : {"b", "c", "mu", "nu", "l", "m", "n", "u", "g111", "g112", "g122", "g211", "g212", "g222"}) {
      sc.function(f);
    }
    for (auto f : {"alpha", "beta", "gamma", "delta"}) sc.function(f, true, false);
    sc.parameter("k1").parameter("k2").parameter("k3").parameter("lambda");
    return sc;
  }();
  return s;
}

Expr P(std::string_view src) { return parse(src, scope()); }

ExprMatrix M(std::initializer_list<std::initializer_list<std::string_view>> rows) {
  ExprMatrix m;
  for (const auto& r : rows) {
    ExprVector row;
    for (auto s : r) row.push_back(P(s));
    m.push_back(std::move(row));
  }
  return m;
}

Connection omega_bar(std::string_view b, std::string_view c, std::string_view mu, std::string_view nu) {
  const Expr B = P(b), C = P(c), MU = P(mu), NU = P(nu);
  return Connection({{0, 1, 0}, {MU, 0, B}, {0, 0, 0}}, {{0, 0, 1}, {0, 0, 0}, {NU, C, 0}},
                    StructureGroup::scale_and_boost);
}

Connection example_family() {
  return omega_bar("4*k1*(k1*y + k2)/(4*x + k3)^2", "(4*x + k3)/(k1*y + k2)^2", "0", "0");
}

Christoffel christoffel_jets() {
  Christoffel g;
  g[0][0][0] = P("g111");
  g[0][0][1] = g[0][1][0] = P("g112");
  g[0][1][1] = P("g122");
  g[1][0][0] = P("g211");
  g[1][0][1] = g[1][1][0] = P("g212");
  g[1][1][1] = P("g222");
  return g;
}

Christoffel christoffel_zero() {
  Christoffel g;
  for (auto& a : g) {
    for (auto& b : a) {
      for (auto& e : b) e = 0;
    }
  }
  return g;
}

const Chart& m5() {
  static const Chart c = Chart::of({"x", "y", "z", "p", "q"});
  return c;
}

VectorField field(std::initializer_list<std::string_view> comps) {
  ExprVector c;
  for (auto s : comps) c.push_back(P(s));
  return VectorField(m5(), std::move(c));
}

Form form1(std::initializer_list<std::string_view> comps) {
  ExprVector c;
  for (auto s : comps) c.push_back(P(s));
  return Form(m5(), 1, std::move(c));
}

}  // namespace

TEST(HorizontalDistribution, ZeroConnection) {
  const auto h = horizontal_distribution(Connection::zero(3));
  EXPECT_EQ(h.fields()[0], VectorField::coordinate(m5(), 0));
  EXPECT_EQ(h.fields()[1], VectorField::coordinate(m5(), 1));
}

TEST(HorizontalDistribution, Euclidean) {
  const auto h = horizontal_distribution(euclidean_connection(christoffel_jets(), P("l"), P("m"), P("n")));
  EXPECT_EQ(h.fields()[0],
            field({"1", "0", "p", "l*z + p*g111 + q*g211", "m*z + p*g112 + q*g212"}));
  EXPECT_EQ(h.fields()[1],
            field({"0", "1", "q", "m*z + p*g112 + q*g212", "n*z + p*g122 + q*g222"}));
}

TEST(HorizontalDistribution, OmegaBar) {
  const auto h = horizontal_distribution(omega_bar("b", "c", "mu", "nu"));
  EXPECT_EQ(h.fields()[0], field({"1", "0", "p", "b*q + mu*z", "0"}));
  EXPECT_EQ(h.fields()[1], field({"0", "1", "q", "0", "c*p + nu*z"}));
}

TEST(HorizontalDistribution, AnnihilatorIsConnectionForms) {
  const Connection c = omega_bar("b", "c", "mu", "nu");
  const auto forms = connection_forms(c);
  const std::vector<Form> reduced = {form1({"-p", "-q", "1", "0", "0"}), form1({"-(b*q + mu*z)", "0", "0", "1", "0"}),
                                     form1({"0", "-(c*p + nu*z)", "0", "0", "1"})};
  EXPECT_EQ(forms, reduced);
  EXPECT_TRUE(same_span(annihilator(horizontal_distribution(c)), forms));
}

TEST(Connection, RejectsFiberCoordinates) {
  EXPECT_THROW(Connection({{P("z")}}, {{0}}), DomainError);
  EXPECT_THROW(Connection({{0, 0}}, {{0, 0}}), DomainError);
}

TEST(Curvature, ZeroConnection) { EXPECT_TRUE(curvature(Connection::zero(3)).is_zero()); }

TEST(Curvature, OmegaBarMatchesDisplay) {
  const Curvature r = curvature(omega_bar("b", "c", "mu", "nu"));
  EXPECT_EQ(r.matrix, M({{"0", "-(b*nu + mu_y)", "c*mu + nu_x"}, {"0", "-b*c", "c_x + nu"}, {"0", "-(b_y + mu)", "b*c"}}));
}

TEST(Curvature, EuclideanPlaneIsFlat) {
  EXPECT_TRUE(curvature(euclidean_connection(christoffel_zero(), 0, 0, 0)).is_zero());
  EXPECT_EQ(euclidean_connection(christoffel_zero(), 0, 0, 0).dy_part(), M({{"0", "0", "1"}, {"0", "0", "0"}, {"0", "0", "0"}}));
}

TEST(Curvature, EuclideanCodazziComponents) {
  const ExprMatrix r = curvature(euclidean_connection(christoffel_jets(), P("l"), P("m"), P("n"))).frame_matrix();
  // Each component is the difference of the two sides of a Codazzi equation,
  // with the Christoffel side entering with the opposite sign to the
  // printed display (the classical sign for the Gauss formula).
  const Expr rhs1 = P("l*g112 + m*(g212 - g111) - n*g211");
  const Expr rhs2 = P("l*g122 + m*(g222 - g112) - n*g212");
  EXPECT_EQ(r[1][0], P("m_x - l_y") + rhs1);
  EXPECT_EQ(r[2][0], P("n_x - m_y") + rhs2);
  EXPECT_NE(r[1][0], P("m_x - l_y") - rhs1);
}

TEST(CovariantDerivatives, FlatIsZero) {
  const auto d = covariant_curvature_derivatives(Connection::zero(3));
  EXPECT_TRUE(d.d1.is_zero());
  EXPECT_TRUE(d.d2.is_zero());
}

TEST(CovariantDerivatives, OmegaBarFirstColumnsHandOracle) {
  const Connection c = omega_bar("b", "c", "mu", "nu");
  const ExprMatrix r = curvature(c).matrix;
  const auto d = covariant_curvature_derivatives(c);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(d.d1.matrix[i][0], -r[i][1]);
    EXPECT_EQ(d.d2.matrix[i][0], -r[i][2]);
  }
}

TEST(CovariantDerivatives, ExampleFamilyWitness) {
  const auto d = covariant_curvature_derivatives(example_family());
  const Expr f1 = P("4*x + k3"), f2 = P("k1*(k1*y + k2)");
  EXPECT_TRUE(is_zero(scaled(d.d1.matrix, f1) + scaled(d.d2.matrix, f2)));
  EXPECT_FALSE(d.d1.is_zero());
}

TEST(CovariantDerivatives, RuledAlongRulings) {
  const auto d = covariant_curvature_derivatives(omega_bar("alpha*y^2 + beta*y + gamma", "0", "-alpha*y + delta", "0"));
  EXPECT_TRUE(d.d2.is_zero());
  EXPECT_FALSE(d.d1.is_zero());
}

TEST(GaugeTransform, Identity) {
  const Connection c = omega_bar("b", "c", "mu", "nu");
  EXPECT_EQ(gauge_transform(c, identity_matrix(3)), c);
}

TEST(GaugeTransform, ConstantDiagonalConjugatesCurvature) {
  const Connection c = omega_bar("b", "c", "mu", "nu");
  const ExprMatrix g = M({{"lambda", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1/lambda"}});
  const Curvature r = curvature(c), rt = curvature(gauge_transform(c, g));
  EXPECT_EQ(rt.frame_matrix(), g * r.frame_matrix() * inverse(g));
  // In the bracket layout the same statement reads g^-T R g^T; entrywise,
  // R[i][j] picks up g_j / g_i.
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(rt.matrix[i][j], r.matrix[i][j] * g[j][j] / g[i][i]);
  }
}

TEST(GaugeTransform, RationalDiagonalKeepsGrowth) {
  const ExprMatrix g = M({{"x + y + 1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1/(x + y + 1)"}});
  for (const auto& c : {omega_bar("1", "1", "0", "0"), omega_bar("y^2", "0", "-y", "0"), example_family()}) {
    EXPECT_EQ(derived_flag(horizontal_distribution(gauge_transform(c, g))).growth.ranks,
              derived_flag(horizontal_distribution(c)).growth.ranks);
  }
}

TEST(GaugeTransform, SingularRejected) {
  EXPECT_THROW(gauge_transform(Connection::zero(3), M({{"1", "x", "0"}, {"1", "x", "0"}, {"0", "0", "1"}})), DomainError);
  EXPECT_THROW(gauge_transform(Connection::zero(3), M({{"z", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}})), DomainError);
}

TEST(ClassifyGrowth, Examples) {
  EXPECT_EQ(classify_growth(Connection::zero(3)).kind, GrowthClass::integrable);

  const auto ex = classify_growth(example_family());
  EXPECT_EQ(ex.kind, GrowthClass::g234);
  ASSERT_TRUE(ex.witness.has_value());
  EXPECT_EQ((*ex.witness)[0], P("4*x + k3"));
  EXPECT_EQ((*ex.witness)[1], P("k1^2*y + k1*k2"));
  EXPECT_EQ(ex.growth.str(), "(2,3,4)");

  const auto unit = classify_growth(omega_bar("1", "1", "0", "0"));
  EXPECT_EQ(unit.kind, GrowthClass::g235);
  EXPECT_EQ(unit.growth.str(), "(2,3,5)");
  EXPECT_FALSE(unit.witness.has_value());

  EXPECT_EQ(classify_growth(omega_bar("y^2 + x", "0", "-y", "0")).kind, GrowthClass::g234);
  EXPECT_EQ(classify_growth(omega_bar("2*y + x", "0", "-2", "0")).kind, GrowthClass::integrable);
  EXPECT_THROW(classify_growth(Connection::zero(4)), DomainError);
}

TEST(ClassifyGrowth, CovariantlyConstantCurvature) {
  // A constant connection with [A, B] != 0 has constant curvature; here the
  // commutator is central in the Heisenberg algebra so D1 = D2 = 0.
  const Connection c(M({{"0", "0", "0"}, {"1", "0", "0"}, {"0", "0", "0"}}),
                     M({{"0", "0", "0"}, {"0", "0", "0"}, {"0", "1", "0"}}));
  const auto r = classify_growth(c);
  EXPECT_EQ(r.kind, GrowthClass::g23);
  EXPECT_EQ(r.growth.str(), "(2,3)");
}

TEST(EuclideanConnection, Examples) {
  const Connection plane = euclidean_connection(christoffel_zero(), 0, 0, 0);
  EXPECT_TRUE(curvature(plane).is_zero());
  EXPECT_EQ(classify_growth(plane).kind, GrowthClass::integrable);

  // The vertical fields [X1, X2], [X1, X3], [X2, X3] are q d/dp - p d/dq,
  // q d/dz + z d/dq, -p d/dz - z d/dp: an antisymmetric coefficient matrix,
  // hence pointwise rank 2, although D1 and D2 are independent over
  // functions of (x, y).
  const Connection c = euclidean_connection(christoffel_zero(), 1, 0, 1);
  EXPECT_FALSE(curvature(c).is_zero());
  const auto r = classify_growth(c);
  EXPECT_EQ(r.kind, GrowthClass::g234);
  EXPECT_EQ(r.growth.str(), "(2,3,4)");
  EXPECT_EQ(r.tensor_kind, GrowthClass::g235);
  EXPECT_FALSE(r.witness.has_value());
}

// ---- properties ----

namespace {

const std::vector<SymbolId>& base_vars() {
  static const std::vector<SymbolId> v = {SymbolRegistry::x_id, SymbolRegistry::y_id};
  return v;
}

ExprMatrix random_matrix(Gen& g, std::size_t k, int terms, int degree, double density) {
  ExprMatrix m = zero_matrix(k, k);
  std::bernoulli_distribution keep(density);
  for (auto& row : m) {
    for (auto& e : row) {
      if (keep(g.engine())) e = g.polynomial(base_vars(), terms, degree);
    }
  }
  return m;
}

ExprMatrix random_gauge(Gen& g, std::size_t k) {
  for (;;) {
    ExprMatrix m = random_matrix(g, k, 2, 1, 0.5);
    for (std::size_t i = 0; i < k; ++i) m[i][i] += 1;
    if (!determinant(m).is_zero()) return m;
  }
}

}  // namespace

TEST(ConnectionProperty, GaugeCovariance) {
  Gen g(21);
  for (int i = 0; i < 25; ++i) {
    const std::size_t k = static_cast<std::size_t>(g.integer(2, 3));
    const Connection c(random_matrix(g, k, 2, 2, 0.6), random_matrix(g, k, 2, 2, 0.6));
    const ExprMatrix gm = random_gauge(g, k);
    EXPECT_EQ(curvature(gauge_transform(c, gm)).frame_matrix(), gm * curvature(c).frame_matrix() * inverse(gm));
  }
}

TEST(ConnectionProperty, GrowthGaugeInvariance) {
  Gen g(22);
  for (int i = 0; i < 6; ++i) {
    const Connection c(random_matrix(g, 3, 1, 1, 0.4), random_matrix(g, 3, 1, 1, 0.4));
    ExprMatrix gm = zero_matrix(3, 3);
    for (std::size_t j = 0; j < 3; ++j) gm[j][j] = g.nonzero_polynomial(base_vars(), 2, 1);
    gm[0][1] = g.polynomial(base_vars(), 1, 1);
    EXPECT_EQ(derived_flag(horizontal_distribution(gauge_transform(c, gm))).growth.ranks,
              derived_flag(horizontal_distribution(c)).growth.ranks);
  }
}

TEST(ConnectionProperty, AnnihilatorDuality) {
  Gen g(23);
  for (int i = 0; i < 15; ++i) {
    const std::size_t k = static_cast<std::size_t>(g.integer(1, 4));
    const Connection c(random_matrix(g, k, 2, 2, 0.5), random_matrix(g, k, 2, 2, 0.5));
    const auto forms = connection_forms(c);
    const Distribution h = horizontal_distribution(c);
    for (const auto& th : forms) {
      for (const auto& v : h.fields()) EXPECT_TRUE(th(v).is_zero());
    }
    EXPECT_TRUE(same_span(annihilator(h), forms));
  }
}

TEST(ConnectionProperty, ClassificationAgreesWithDerivedFlag) {
  Gen g(24);
  int seen[4] = {0, 0, 0, 0};
  for (int i = 0; i < 30; ++i) {
    const Connection c(random_matrix(g, 3, 1, 1, 0.3), random_matrix(g, 3, 1, 1, 0.3));
    GrowthClassification r;
    ASSERT_NO_THROW(r = classify_growth(c));
    ++seen[static_cast<int>(r.kind)];
  }
  EXPECT_GT(seen[static_cast<int>(GrowthClass::g235)], 0);
}

TEST(ConnectionProperty, TensorConditionsAgreeOnSampledProjectiveFamilies) {
  // Samples from families whose coefficients satisfy the integrability
  // conditions: ruled and dual ruled, the k-family, constant b and c.
  Gen g(26);
  const std::vector<SymbolId> xs = {SymbolRegistry::x_id}, ys = {SymbolRegistry::y_id};
  const Expr x = Expr::symbol(SymbolRegistry::x_id), y = Expr::symbol(SymbolRegistry::y_id);
  int seen[4] = {0, 0, 0, 0};
  for (int i = 0; i < 32; ++i) {
    Expr b, c, mu, nu;
    switch (i % 4) {
      case 0: {
        const Expr al = g.polynomial(xs, 2, 1), be = g.polynomial(xs, 2, 1), ga = g.polynomial(xs, 2, 1);
        b = al * y * y + be * y + ga;
        mu = -al * y + g.polynomial(xs, 2, 1);
        break;
      }
      case 1: {
        const Expr al = g.polynomial(ys, 2, 1), be = g.polynomial(ys, 2, 1), ga = g.polynomial(ys, 2, 1);
        c = al * x * x + be * x + ga;
        nu = -al * x + g.polynomial(ys, 2, 1);
        break;
      }
      case 2: {
        const Expr k1 = g.nonzero_rational(), k2 = g.rational(), k3 = g.rational();
        b = 4 * k1 * (k1 * y + k2) / (4 * x + k3).pow(2);
        c = (4 * x + k3) / (k1 * y + k2).pow(2);
        break;
      }
      default:
        b = g.rational();
        c = g.rational();
    }
    const Connection w({{0, 1, 0}, {mu, 0, b}, {0, 0, 0}}, {{0, 0, 1}, {0, 0, 0}, {nu, c, 0}});
    const auto r = classify_growth(w);
    EXPECT_EQ(r.tensor_kind, r.kind) << w.str();
    ++seen[static_cast<int>(r.kind)];
  }
  EXPECT_EQ(seen[static_cast<int>(GrowthClass::g23)], 0);
  EXPECT_GT(seen[static_cast<int>(GrowthClass::g234)], 0);
  EXPECT_GT(seen[static_cast<int>(GrowthClass::g235)], 0);
}

TEST(ConnectionProperty, PureGaugeIsFlat) {
  Gen g(25);
  for (int i = 0; i < 15; ++i) {
    const Connection c = gauge_transform(Connection::zero(3), random_gauge(g, 3));
    EXPECT_TRUE(curvature(c).is_zero());
    const auto d = covariant_curvature_derivatives(c);
    EXPECT_TRUE(d.d1.is_zero());
    EXPECT_TRUE(d.d2.is_zero());
  }
}
