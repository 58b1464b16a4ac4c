#include "surfdist/symbol.hpp"

#include <array>
#include <mutex>
#include <stdexcept>

namespace surfdist {

namespace {

constexpr std::array<std::string_view, 6> kCoordinateOrder = {"x", "y", "z", "p", "q", "s"};

std::string kind_name(SymbolKind kind) {
  switch (kind) {
    case SymbolKind::base_coordinate: return "base coordinate";
    case SymbolKind::fiber_coordinate: return "fiber coordinate";
    case SymbolKind::parameter: return "parameter";
    case SymbolKind::function_jet: return "function jet";
  }
  return "symbol";
}

}  // namespace

SymbolRegistry& SymbolRegistry::global() {
  static SymbolRegistry registry;
  return registry;
}

SymbolRegistry::SymbolRegistry() {
  std::unique_lock lock(mutex_);
  add_locked({.name = "x", .kind = SymbolKind::base_coordinate, .base_index = 0});
  add_locked({.name = "y", .kind = SymbolKind::base_coordinate, .base_index = 1});
  for (auto name : {"z", "p", "q", "s"}) {
    add_locked({.name = name, .kind = SymbolKind::fiber_coordinate});
  }
}

SymbolRegistry::PrintKey SymbolRegistry::make_key(const SymbolInfo& info) {
  switch (info.kind) {
    case SymbolKind::base_coordinate:
    case SymbolKind::fiber_coordinate: {
      int sub = static_cast<int>(kCoordinateOrder.size());
      for (std::size_t i = 0; i < kCoordinateOrder.size(); ++i) {
        if (kCoordinateOrder[i] == info.name) sub = static_cast<int>(i);
      }
      return {0, sub, info.name, 0, 0};
    }
    case SymbolKind::parameter: return {1, 0, info.name, 0, 0};
    case SymbolKind::function_jet:
      return {2, 0, info.function, info.order.dx + info.order.dy, info.order.dy};
  }
  return {3, 0, info.name, 0, 0};
}

SymbolId SymbolRegistry::add_locked(SymbolInfo info) {
  const auto id = static_cast<SymbolId>(symbols_.size());
  by_name_.emplace(info.name, id);
  keys_.push_back(make_key(info));
  symbols_.push_back(std::move(info));
  return id;
}

SymbolId SymbolRegistry::coordinate(std::string_view name) {
  std::unique_lock lock(mutex_);
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
    const auto kind = symbols_[it->second].kind;
    if (kind != SymbolKind::base_coordinate && kind != SymbolKind::fiber_coordinate) {
      throw std::invalid_argument("symbol '" + std::string(name) + "' is already a " + kind_name(kind));
    }
    return it->second;
  }
  if (functions_.count(name) != 0) {
    throw std::invalid_argument("symbol '" + std::string(name) + "' is already a function");
  }
  return add_locked({.name = std::string(name), .kind = SymbolKind::fiber_coordinate});
}

SymbolId SymbolRegistry::parameter(std::string_view name) {
  std::unique_lock lock(mutex_);
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) {
    const auto kind = symbols_[it->second].kind;
    if (kind != SymbolKind::parameter) {
      throw std::invalid_argument("symbol '" + std::string(name) + "' is already a " + kind_name(kind));
    }
    return it->second;
  }
  if (functions_.count(name) != 0) {
    throw std::invalid_argument("symbol '" + std::string(name) + "' is already a function");
  }
  return add_locked({.name = std::string(name), .kind = SymbolKind::parameter});
}

SymbolId SymbolRegistry::function(std::string_view name, bool depends_on_x, bool depends_on_y) {
  std::unique_lock lock(mutex_);
  const std::string key(name);
  if (auto it = functions_.find(key); it != functions_.end()) {
    if (it->second.depends_on_x != depends_on_x || it->second.depends_on_y != depends_on_y) {
      throw std::invalid_argument("function '" + key + "' was declared with different arguments");
    }
  } else {
    if (by_name_.count(key) != 0) {
      throw std::invalid_argument("symbol '" + key + "' is already a " +
                                  kind_name(symbols_[by_name_.at(key)].kind));
    }
    functions_.emplace(key, FunctionInfo{depends_on_x, depends_on_y});
  }
  return *jet_locked(key, {});
}

std::string SymbolRegistry::jet_name(std::string_view function, JetOrder order) {
  std::string name(function);
  if (order.dx + order.dy == 0) return name;
  name += '_';
  name.append(order.dx, 'x');
  name.append(order.dy, 'y');
  return name;
}

std::optional<SymbolId> SymbolRegistry::jet_locked(const std::string& function, JetOrder order) {
  const auto fn = functions_.find(function);
  if (fn == functions_.end()) {
    throw std::invalid_argument("unknown function '" + function + "'");
  }
  if ((order.dx > 0 && !fn->second.depends_on_x) || (order.dy > 0 && !fn->second.depends_on_y)) {
    return std::nullopt;
  }
  const auto name = jet_name(function, order);
  if (auto it = by_name_.find(name); it != by_name_.end()) {
    if (symbols_[it->second].kind != SymbolKind::function_jet) {
      throw std::invalid_argument("jet name '" + name + "' clashes with an existing symbol");
    }
    return it->second;
  }
  return add_locked({.name = name,
                     .kind = SymbolKind::function_jet,
                     .function = function,
                     .order = order,
                     .depends_on_x = fn->second.depends_on_x,
                     .depends_on_y = fn->second.depends_on_y});
}

std::optional<SymbolId> SymbolRegistry::jet(std::string_view function, JetOrder order) {
  std::unique_lock lock(mutex_);
  return jet_locked(std::string(function), order);
}

std::optional<SymbolId> SymbolRegistry::find(std::string_view name) const {
  std::shared_lock lock(mutex_);
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) return it->second;
  return std::nullopt;
}

bool SymbolRegistry::is_function(std::string_view name) const {
  std::shared_lock lock(mutex_);
  return functions_.count(name) != 0;
}

std::optional<SymbolId> SymbolRegistry::resolve(std::string_view name) {
  if (auto id = find(name)) return id;
  const auto underscore = name.rfind('_');
  if (underscore == std::string_view::npos || underscore + 1 == name.size()) return std::nullopt;
  const auto function = name.substr(0, underscore);
  JetOrder order;
  for (char ch : name.substr(underscore + 1)) {
    if (ch == 'x') {
      ++order.dx;
    } else if (ch == 'y') {
      ++order.dy;
    } else {
      return std::nullopt;
    }
  }
  std::unique_lock lock(mutex_);
  if (functions_.count(function) == 0) return std::nullopt;
  auto id = jet_locked(std::string(function), order);
  if (!id) {
    throw std::invalid_argument("'" + std::string(name) + "' differentiates '" + std::string(function) +
                                "' in a direction it does not depend on");
  }
  return id;
}

const SymbolInfo& SymbolRegistry::info(SymbolId id) const {
  std::shared_lock lock(mutex_);
  return symbols_.at(id);
}

bool SymbolRegistry::is_coordinate(SymbolId id) const {
  const auto k = kind(id);
  return k == SymbolKind::base_coordinate || k == SymbolKind::fiber_coordinate;
}

std::optional<SymbolId> SymbolRegistry::promote(SymbolId jet, int base_index) {
  std::unique_lock lock(mutex_);
  const SymbolInfo& info = symbols_.at(jet);
  if (info.kind != SymbolKind::function_jet) {
    throw std::invalid_argument("'" + info.name + "' is not a function jet");
  }
  JetOrder order = info.order;
  if (base_index == 0) {
    ++order.dx;
  } else {
    ++order.dy;
  }
  return jet_locked(info.function, order);
}

bool SymbolRegistry::print_less(SymbolId a, SymbolId b) const {
  std::shared_lock lock(mutex_);
  return keys_.at(a) < keys_.at(b);
}

std::size_t SymbolRegistry::size() const {
  std::shared_lock lock(mutex_);
  return symbols_.size();
}

}  // namespace surfdist
