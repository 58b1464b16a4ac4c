#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace surfdist {

using SymbolId = std::uint32_t;

enum class SymbolKind { base_coordinate, fiber_coordinate, parameter, function_jet };

/// Multi-index of a jet atom: the atom stands for d^dx/dx^dx d^dy/dy^dy f.
struct JetOrder {
  unsigned dx = 0;
  unsigned dy = 0;
  friend bool operator==(JetOrder, JetOrder) = default;
};

struct SymbolInfo {
  std::string name;
  SymbolKind kind = SymbolKind::parameter;
  int base_index = -1;  // 0 for x, 1 for y
  // function jets only
  std::string function;
  JetOrder order;
  bool depends_on_x = false;
  bool depends_on_y = false;
};

/// Process-wide, append-only table of symbols.
///
/// Every Expr refers to symbols by id in this table. The base coordinates are
/// always `x` (id 0) and `y` (id 1); the fiber coordinates `z, p, q, s` are
/// registered next so that the common charts have stable ids. Function jets
/// are created on demand when an atom is differentiated.
///
/// Printing uses a fixed precedence that does not depend on registration
/// order: coordinates (x, y, z, p, q, s, then others by name), then
/// parameters by name, then jets by function name and (dx+dy, dx descending).
class SymbolRegistry {
 public:
  static SymbolRegistry& global();

  static constexpr SymbolId x_id = 0;
  static constexpr SymbolId y_id = 1;

  /// Returns the coordinate with this name, registering a fiber coordinate if
  /// it does not exist yet. Throws std::invalid_argument on a kind clash.
  SymbolId coordinate(std::string_view name);
  SymbolId parameter(std::string_view name);
  /// Registers a base function and returns its undifferentiated jet atom.
  SymbolId function(std::string_view name, bool depends_on_x = true, bool depends_on_y = true);
  /// Jet atom of a registered function; nullopt if that derivative is
  /// identically zero because the function does not depend on the direction.
  std::optional<SymbolId> jet(std::string_view function, JetOrder order);

  std::optional<SymbolId> find(std::string_view name) const;
  /// Resolves jet spellings such as `b_xy` of a registered function `b`.
  std::optional<SymbolId> resolve(std::string_view name);
  bool is_function(std::string_view name) const;

  const SymbolInfo& info(SymbolId id) const;
  const std::string& name(SymbolId id) const { return info(id).name; }
  SymbolKind kind(SymbolId id) const { return info(id).kind; }
  bool is_coordinate(SymbolId id) const;

  /// d/d(base coordinate) of a jet atom; nullopt when it vanishes.
  std::optional<SymbolId> promote(SymbolId jet, int base_index);

  /// Strict weak order used for printing.
  bool print_less(SymbolId a, SymbolId b) const;

  std::size_t size() const;

 private:
  SymbolRegistry();

  struct PrintKey {
    int group;
    int sub;
    std::string name;
    unsigned total;
    unsigned dy;
    auto operator<=>(const PrintKey&) const = default;
  };

  struct FunctionInfo {
    bool depends_on_x;
    bool depends_on_y;
  };

  SymbolId add_locked(SymbolInfo info);
  std::optional<SymbolId> jet_locked(const std::string& function, JetOrder order);
  static std::string jet_name(std::string_view function, JetOrder order);
  static PrintKey make_key(const SymbolInfo& info);

  mutable std::shared_mutex mutex_;
  std::deque<SymbolInfo> symbols_;
  std::deque<PrintKey> keys_;
  std::unordered_map<std::string, SymbolId> by_name_;
  std::map<std::string, FunctionInfo, std::less<>> functions_;
};

inline SymbolRegistry& symbols() { return SymbolRegistry::global(); }

}  // namespace surfdist
