#pragma once

#include <set>
#include <string>
#include <string_view>

#include "surfdist/expr.hpp"

namespace surfdist {

/// Names an expression may use. Declaring registers the symbol globally;
/// the scope only controls what the parser accepts.
class Scope {
 public:
  /// x, y and the fiber coordinates z, p, q, s.
  static Scope standard();

  Scope& coordinate(std::string_view name);
  Scope& parameter(std::string_view name);
  /// A coefficient function; its jets (`b_x`, `b_xy`, ...) become usable too.
  Scope& function(std::string_view name, bool depends_on_x = true, bool depends_on_y = true);

  bool declares(std::string_view name) const;
  /// Symbol for an identifier, or nullopt if undeclared.
  std::optional<SymbolId> lookup(std::string_view name) const;

 private:
  std::set<std::string, std::less<>> names_;
  std::set<std::string, std::less<>> functions_;
};

/// Parses `expr := term (('+'|'-') term)*`, `term := factor (('*'|'/') factor)*`,
/// `factor := base ('^' integer)?`, `base := rational | identifier | '(' expr ')'`.
/// A leading '-' on a term and a signed exponent are also accepted.
Expr parse(std::string_view src, const Scope& scope);

}  // namespace surfdist
