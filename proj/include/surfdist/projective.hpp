#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "surfdist/connection.hpp"

namespace surfdist {

/// z_xx = b z_y + mu z, z_yy = c z_x + nu z in asymptotic coordinates.
struct CanonicalSystem {
  Expr b, c, mu, nu;

  /// b, c, mu, nu as undetermined functions of (x, y).
  static CanonicalSystem symbolic();
  friend bool operator==(const CanonicalSystem&, const CanonicalSystem&) = default;
};

/// z_xx = alpha z_x + b z_y + mu z, z_yy = c z_x + delta z_y + nu z with a
/// potential theta of alpha dx + delta dy.
struct PreCanonicalSystem {
  Expr alpha, delta, b, c, mu, nu, theta;
};

/// z_xx = l z_xy + alpha z_x + b z_y + mu z, z_yy = m z_xy + c z_x + delta z_y + nu z.
struct GeneralSystem {
  Expr l, m, alpha, b, mu, c, delta, nu;
};

std::array<Expr, 3> integrability_residuals(const CanonicalSystem& s);

struct InvariantsReport {
  Expr phi;                 // phi = phi * (dx dy + dy dx)
  std::array<Expr, 2> cubic;  // Phi = cubic[0] dx^3 + cubic[1] dy^3
  Expr fubini;
  std::array<Expr, 3> ell;  // l11, l12 (= l21), l22
  std::array<Expr, 2> r;
  std::optional<Expr> gaussian_curvature;  // absent when bc = 0
  std::array<Expr, 3> integrability;
  std::optional<std::array<Expr, 3>> applicability;  // absent when bc = 0
};

/// F is the full contraction of Phi (x) Phi with h^-1 and is checked against
/// 8bc; l and r are read from the rank-4 connection. Throws ConsistencyError
/// if a check fails.
InvariantsReport invariants(const CanonicalSystem& s);

/// Gaussian curvature of the projective metric, log-free. Throws DomainError
/// if bc = 0.
Expr gaussian_curvature(const CanonicalSystem& s);

/// d_xy log(b/c), d_x(d_xy log c / bc), d_y(d_xy log b / bc) as rational
/// expressions. Throws DomainError if bc = 0, ConsistencyError if they all
/// vanish while K is not constant.
std::array<Expr, 3> applicability_residuals(const CanonicalSystem& s);

enum class Stratum { quadric, ruled, very_general };
std::string to_string(Stratum s);

struct Classification {
  Stratum stratum = Stratum::very_general;
  /// For ruled systems: 'y' when c = 0 (rulings are the y-lines), 'x' when b = 0.
  std::optional<char> ruling;
  /// Ruled with vanishing bar curvature: the ruling lies in two linear complexes.
  bool flat_ruled = false;
  /// Applicability residuals all vanish; quadrics and ruled surfaces count as
  /// applicable.
  bool applicable = false;
  /// The stratum's normal form applies: mu = nu = 0 for a quadric, nu = 0
  /// (c = 0) or mu = 0 (b = 0) for a ruled system. Outside it the prediction
  /// comes from the tensor conditions of the bar connection.
  bool normal_form = false;
  std::vector<std::size_t> predicted_growth;
  std::optional<std::array<Expr, 2>> witness;

  /// "Quadric", "Ruled", "Ruled (two linear complexes)" or "VeryGeneral".
  std::string label() const;
};

Classification classify(const CanonicalSystem& s);

/// The flat connection of the canonical system on the frame (z, z_x, z_y,
/// z_xy). Row 3 is built from total derivatives and cross-checked against the
/// closed form and against the bar curvature; ConsistencyError on mismatch.
Connection rank4_connection(const CanonicalSystem& s);

const Chart& m6_chart();
const Chart& m5_chart();

/// span{X, Y, Z = d/ds} on (x, y, z, p, q, s).
Distribution m6_distribution(const CanonicalSystem& s);
/// omega_z, omega_x, omega_y on M6.
std::vector<Form> m6_forms(const CanonicalSystem& s);
/// omega_z, omega_x, omega_y, omega_s = ds - D_y(r) dx - D_x(t) dy.
std::vector<Form> rank4_forms(const CanonicalSystem& s);

/// span{X_s0, Y_s0, d/ds} on M6.
Distribution hat_distribution(const CanonicalSystem& s, const Expr& s0);
/// X_s0, Y_s0 with the s coordinate dropped, on (x, y, z, p, q). Throws
/// DomainError if s0 involves a coordinate or a function jet.
Distribution derived_reduction(const CanonicalSystem& s, const Expr& s0);

/// The rank-3 connection whose horizontal distribution is
/// derived_reduction(s, 0) (checked).
Connection bar_connection(const CanonicalSystem& s);

struct DictionaryReport {
  Classification classification;
  GrowthClassification connection;
  GrowthVector bar_growth;
  /// Witness field f1 d/dx + f2 d/dy on the base, when present.
  std::optional<VectorField> witness;
  bool prediction_holds = false;
};

/// Runs the three routes (derived flag of bar-Delta, classify_growth of the
/// bar connection, classify). Throws ConsistencyError if the two flag
/// computations differ or (2,3) occurs; a failed prediction is reported in
/// `prediction_holds`.
DictionaryReport growth_dictionary(const CanonicalSystem& s);

/// For the symbolic system: each nonzero entry of the bar curvature as a
/// rational combination of entries of D1, D2, so D1 = D2 = 0 forces R = 0.
struct No23Certificate {
  struct Row {
    std::size_t i, j;                      // curvature entry
    std::vector<std::pair<Rational, std::string>> combination;  // coefficient, "D1[a][b]"
  };
  std::vector<Row> rows;
  bool complete = false;
};
No23Certificate no_23_certificate();

/// Throws DomainError unless theta_x = alpha and theta_y = delta.
CanonicalSystem canonicalize(const PreCanonicalSystem& p);

struct SymmetricTensor2 {
  Expr h11, h12, h22;
  Expr determinant;
  bool asymptotic = false;
};
/// Throws DomainError if lm - 1 vanishes identically.
SymmetricTensor2 extract_h(const GeneralSystem& g);

/// Coefficients of a rank-4 connection's h slots in its coframe.
SymmetricTensor2 h_from_connection(const Connection& omega);

/// The gauge matrix of z -> f z on the frame (z, z_x, z_y, z_xy); rank 3
/// truncates it.
ExprMatrix wilczynski_gauge(const Expr& f, std::size_t rank);

/// Gauge-transforms the rank-4 and bar connections by z -> f z and checks
/// that h and the bar coframe are unchanged. Throws DomainError if f = 0.
bool wilczynski_covariance_check(const CanonicalSystem& s, const Expr& f);

/// Throws DomainError if an input depends on y.
CanonicalSystem ruled_canonical(const Expr& alpha, const Expr& beta, const Expr& gamma, const Expr& delta);
ExprMatrix ruled_ode_matrix(const Expr& alpha, const Expr& beta, const Expr& gamma, const Expr& delta);

struct CatalogEntry {
  std::string name;
  std::string description;
  CanonicalSystem system;
  std::string expected_stratum;
  std::vector<std::size_t> expected_growth;
  /// "literature" or "hand-computed".
  std::string expectation_source;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* find_catalog_entry(std::string_view name);

}  // namespace surfdist
