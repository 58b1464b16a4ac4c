#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "surfdist/forms.hpp"

namespace surfdist {

enum class StructureGroup { general_linear, parabolic, scale_and_boost };

std::string to_string(StructureGroup g);

/// Linear connection on a trivial rank-k bundle over the (x, y) plane, given
/// by its k x k matrix of 1-forms omega = A dx + B dy.
///
/// Fiber coordinates e_1..e_k are attached only when a total space is built.
/// Row beta of omega lists the coefficients of e_alpha in the horizontal lift
/// of de_beta, so that de_beta = sum_alpha omega[beta][alpha] e_alpha along
/// horizontal curves.
class Connection {
 public:
  Connection() = default;
  /// Throws DomainError on shape mismatch or if an entry involves a
  /// coordinate other than x, y.
  Connection(ExprMatrix dx_part, ExprMatrix dy_part, StructureGroup group = StructureGroup::general_linear);
  static Connection zero(std::size_t k);

  std::size_t rank() const { return a_.size(); }
  const ExprMatrix& dx_part() const { return a_; }
  const ExprMatrix& dy_part() const { return b_; }
  StructureGroup group() const { return group_; }
  static const Chart& base();
  /// Entry omega[i][j] as a 1-form on the base.
  Form entry(std::size_t i, std::size_t j) const;

  friend bool operator==(const Connection& a, const Connection& b) { return a.a_ == b.a_ && a.b_ == b.b_; }

  /// Rows of entries, each entry printed like `mu*dx + b*dy`.
  std::string str() const;

 private:
  ExprMatrix a_;
  ExprMatrix b_;
  StructureGroup group_ = StructureGroup::general_linear;
};

/// dx^dy coefficients of R = d omega - omega ^ omega, in the layout where
/// [X_1, X_2] = sum e_alpha matrix[alpha][beta] d/de_beta.
struct Curvature {
  ExprMatrix matrix;

  bool is_zero() const { return surfdist::is_zero(matrix); }
  /// The literal dx^dy coefficient of d omega - omega ^ omega, i.e. the
  /// transpose of `matrix`. This is the form that conjugates as g R g^-1
  /// under gauge_transform.
  ExprMatrix frame_matrix() const { return transpose(matrix); }
  friend bool operator==(const Curvature&, const Curvature&) = default;
};

/// Default fiber names: z, p, q (k = 3); z, p, q, s (k = 4); e1..ek otherwise.
std::vector<SymbolId> fiber_coordinates(std::size_t k);
Chart total_space(const Connection& c);

Distribution horizontal_distribution(const Connection& c);
/// The connection 1-forms de_beta - sum_alpha omega[beta][alpha] e_alpha on
/// the total space.
std::vector<Form> connection_forms(const Connection& c);

Curvature curvature(const Connection& c);

struct CurvatureDerivatives {
  Curvature d1;  // along d/dx
  Curvature d2;  // along d/dy
};

/// Read off from the vertical brackets [X_k, [X_1, X_2]] and checked against
/// dR_k + A_k^T R - R A_k^T. Throws ConsistencyError if the two disagree or
/// a bracket is not linear in the fiber coordinates.
CurvatureDerivatives covariant_curvature_derivatives(const Connection& c);

/// omega -> g omega g^-1 + dg g^-1. Throws DomainError if det g vanishes
/// identically or g involves fiber coordinates.
Connection gauge_transform(const Connection& c, const ExprMatrix& g);

enum class GrowthClass { integrable, g23, g234, g235 };

std::string to_string(GrowthClass g);

struct GrowthClassification {
  /// From the rank of the vertical fields e R, e D1, e D2 over functions on
  /// the total space; always agrees with `growth`.
  GrowthClass kind = GrowthClass::g235;
  /// From the tensor conditions alone, tested in the order R = 0,
  /// D1 = D2 = 0, f1 D1 + f2 D2 = 0 for functions f on the base. Can report
  /// (2,3,5) where `kind` is (2,3,4): a pointwise dependence of the vertical
  /// fields is invisible to it (e.g. b = c = 0, mu = nu = 1).
  GrowthClass tensor_kind = GrowthClass::g235;
  /// Normalized (f1, f2) with f1 D1 + f2 D2 = 0, when such base functions
  /// exist and R, D are not both zero.
  std::optional<std::array<Expr, 2>> witness;
  /// Growth vector of the horizontal distribution from derived_flag.
  GrowthVector growth;
};

struct TensorClassification {
  GrowthClass kind = GrowthClass::g235;
  std::optional<std::array<Expr, 2>> witness;
};

/// The tensor conditions alone (no derived flag); any rank.
TensorClassification tensor_classification(const Connection& c);

/// Rank-3 only (DomainError otherwise). The result is compared with the
/// derived flag of the horizontal distribution; ConsistencyError on mismatch.
GrowthClassification classify_growth(const Connection& c);

/// christoffel[i][j][k] is Gamma^i_{jk} with indices 0, 1 for x, y.
using Christoffel = std::array<std::array<std::array<Expr, 2>, 2>, 2>;

/// Connection of the Gauss formula for a surface in Euclidean 3-space.
Connection euclidean_connection(const Christoffel& gamma, const Expr& l, const Expr& m, const Expr& n);

}  // namespace surfdist
