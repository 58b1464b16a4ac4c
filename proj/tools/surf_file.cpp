#include "surf_file.hpp"

#include <fstream>
#include <sstream>

#include "surfdist/errors.hpp"

namespace surfdist::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const std::string item = trim(s.substr(start, comma == std::string_view::npos ? s.npos : comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])))) return false;
  for (char ch : s) {
    if (!std::isalnum(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

}  // namespace

SurfaceSpec parse_surface_spec(std::string_view text) {
  SurfaceSpec spec;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  bool saw_surface = false;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string l = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (l.empty()) continue;
    if (l.front() == '[') {
      if (l.back() != ']') fail(line, "unterminated section header");
      section = trim(l.substr(1, l.size() - 2));
      if (section != "surface" && section != "params" && section != "precanonical" && section != "run") {
        fail(line, "unknown section [" + section + "]");
      }
      if (section == "surface") saw_surface = true;
      if (section == "precanonical" && !spec.precanonical) spec.precanonical.emplace();
      if (section == "run" && !spec.commands) spec.commands.emplace();
      continue;
    }
    const auto eq = l.find('=');
    if (eq == std::string::npos) fail(line, "expected 'key = value'");
    const std::string key = trim(l.substr(0, eq));
    const std::string value = trim(l.substr(eq + 1));
    if (section.empty()) fail(line, "entry outside a section");

    if (section == "surface") {
      if (key == "mode") {
        if (value == "concrete") {
          spec.mode = SurfaceSpec::Mode::concrete;
        } else if (value == "symbolic") {
          spec.mode = SurfaceSpec::Mode::symbolic;
        } else {
          fail(line, "mode must be concrete or symbolic");
        }
      } else if (key == "name") {
        spec.name = value;
      } else if (key == "b" || key == "c" || key == "mu" || key == "nu") {
        if (value.empty()) fail(line, "empty coefficient " + key);
        spec.coefficients[key] = value;
      } else if (key == "functions") {
        spec.functions = split_list(value);
      } else {
        fail(line, "unknown key '" + key + "' in [surface]");
      }
    } else if (section == "params") {
      if (key != "names") fail(line, "unknown key '" + key + "' in [params]");
      spec.parameters = split_list(value);
      for (const auto& p : spec.parameters) {
        if (!is_identifier(p)) fail(line, "bad parameter name '" + p + "'");
      }
    } else if (section == "precanonical") {
      if (key != "alpha" && key != "delta" && key != "theta") fail(line, "unknown key '" + key + "' in [precanonical]");
      (*spec.precanonical)[key] = value;
    } else {
      if (key == "commands") {
        spec.commands = split_list(value);
      } else if (key == "s0") {
        spec.s0 = value;
      } else {
        fail(line, "unknown key '" + key + "' in [run]");
      }
    }
  }
  if (!saw_surface) throw ParseError("missing [surface] section");
  if (spec.mode == SurfaceSpec::Mode::symbolic && !spec.coefficients.empty()) {
    throw ParseError("symbolic mode takes no coefficient texts");
  }
  if (spec.precanonical) {
    for (const char* k : {"alpha", "delta", "theta"}) {
      if (spec.precanonical->count(k) == 0) throw ParseError(std::string("[precanonical] needs ") + k);
    }
  }
  return spec;
}

SurfaceSpec load_surface_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  SurfaceSpec spec = parse_surface_spec(buf.str());
  if (spec.name.empty()) {
    const auto slash = path.find_last_of('/');
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const auto dot = base.rfind('.');
    spec.name = dot == std::string::npos ? base : base.substr(0, dot);
  }
  return spec;
}

Surface build_surface(const SurfaceSpec& spec) {
  Surface out{spec, Scope::standard(), {}, std::nullopt};
  try {
    for (const auto& p : spec.parameters) {
      if (symbols().find(p) && symbols().is_coordinate(*symbols().find(p))) {
        throw ParseError("parameter '" + p + "' clashes with a coordinate");
      }
      out.scope.parameter(p);
    }
    for (const auto& f : spec.functions) {
      std::string name = f;
      bool on_x = true, on_y = true;
      const auto paren = f.find('(');
      if (paren != std::string::npos) {
        name = trim(f.substr(0, paren));
        const std::string args = f.substr(paren);
        if (args == "(x)") {
          on_y = false;
        } else if (args == "(y)") {
          on_x = false;
        } else if (args != "(x,y)" && args != "(x, y)") {
          throw ParseError("bad function declaration '" + f + "'");
        }
      }
      if (!is_identifier(name)) throw ParseError("bad function name '" + name + "'");
      out.scope.function(name, on_x, on_y);
    }
    if (spec.mode == SurfaceSpec::Mode::symbolic) {
      for (const char* n : {"b", "c", "mu", "nu"}) out.scope.function(n);
      out.system = CanonicalSystem::symbolic();
    } else {
      auto coefficient = [&](const char* key) {
        const auto it = spec.coefficients.find(key);
        return it == spec.coefficients.end() ? Expr() : parse(it->second, out.scope);
      };
      out.system = {coefficient("b"), coefficient("c"), coefficient("mu"), coefficient("nu")};
    }
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const DomainError*>(&e)) throw;
    throw ParseError(e.what());
  }
  if (spec.precanonical) {
    const auto& pc = *spec.precanonical;
    PreCanonicalSystem p{parse(pc.at("alpha"), out.scope), parse(pc.at("delta"), out.scope), out.system.b,
                         out.system.c, out.system.mu, out.system.nu, parse(pc.at("theta"), out.scope)};
    out.precanonical = p;
    out.system = canonicalize(p);
  }
  return out;
}

std::optional<Surface> catalog_surface(std::string_view name) {
  const CatalogEntry* entry = find_catalog_entry(name);
  if (!entry) return std::nullopt;
  SurfaceSpec spec;
  spec.name = entry->name;
  spec.coefficients = {{"b", entry->system.b.str()},
                       {"c", entry->system.c.str()},
                       {"mu", entry->system.mu.str()},
                       {"nu", entry->system.nu.str()}};
  return Surface{spec, Scope::standard(), entry->system, std::nullopt};
}

}  // namespace surfdist::cli
