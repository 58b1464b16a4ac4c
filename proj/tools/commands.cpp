#include "commands.hpp"

#include <future>
#include <sstream>

#include "surfdist/errors.hpp"

namespace surfdist::cli {

namespace {

Json strings(const std::vector<Expr>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(e.str());
  return out;
}

template <std::size_t N>
Json strings(const std::array<Expr, N>& v) {
  return strings(std::vector<Expr>(v.begin(), v.end()));
}

Json matrix_json(const ExprMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(strings(row));
  return out;
}

bool all_zero(const std::array<Expr, 3>& v) { return v[0].is_zero() && v[1].is_zero() && v[2].is_zero(); }

Json check_section(const Surface& s, bool& ok) {
  const auto res = integrability_residuals(s.system);
  const bool pass = all_zero(res);
  ok = ok && pass;
  Json out;
  out["residuals"] = strings(res);
  out["status"] = pass ? "PASS" : "FAIL";
  return out;
}

Json invariants_section(const Surface& s, bool require_k) {
  if (require_k) gaussian_curvature(s.system);
  const InvariantsReport r = invariants(s.system);
  Json out;
  out["phi"] = r.phi.str();
  out["cubic"] = {{"dx3", r.cubic[0].str()}, {"dy3", r.cubic[1].str()}};
  out["fubini"] = r.fubini.str();
  out["ell"] = {{"l11", r.ell[0].str()}, {"l12", r.ell[1].str()}, {"l22", r.ell[2].str()}};
  out["r"] = strings(r.r);
  out["gaussian_curvature"] = r.gaussian_curvature ? Json(r.gaussian_curvature->str()) : Json(nullptr);
  out["applicability"] = r.applicability ? strings(*r.applicability) : Json(nullptr);
  return out;
}

Json ranks_json(const GrowthVector& g) {
  Json out = Json::array();
  for (auto r : g.ranks) out.push_back(r);
  return out;
}

Json sizes_json(const std::vector<std::size_t>& v) {
  Json out = Json::array();
  for (auto r : v) out.push_back(r);
  return out;
}

/// Classification keys, merged at the top level of a report.
Json classify_section(const Surface& s, bool& ok) {
  const DictionaryReport d = growth_dictionary(s.system);
  ok = ok && d.prediction_holds;
  Json out;
  out["classification"] = d.classification.label();
  out["ruling"] = d.classification.ruling ? Json(std::string(1, *d.classification.ruling)) : Json(nullptr);
  out["applicable"] = d.classification.applicable;
  out["predicted_growth"] = sizes_json(d.classification.predicted_growth);
  out["bar_growth"] = ranks_json(d.bar_growth);
  out["bar_certificate"] = strings(d.bar_growth.certificate);
  out["connection_kind"] = to_string(d.connection.kind);
  out["tensor_kind"] = to_string(d.connection.tensor_kind);
  out["witness"] = d.witness ? Json(d.witness->str()) : Json(nullptr);
  out["prediction_holds"] = d.prediction_holds;
  return out;
}

Expr level(const Surface& s, const Options& o) {
  if (o.s0) return parse(*o.s0, s.scope);
  if (s.spec.s0) return parse(*s.spec.s0, s.scope);
  return 0;
}

Json growth_section(const Surface& s, const std::string& space, const Options& o) {
  Json out;
  out["space"] = space;
  Distribution d;
  if (space == "m6") {
    d = m6_distribution(s.system);
  } else if (space == "m5" || space == "m6hat") {
    const Expr s0 = level(s, o);
    out["s0"] = s0.str();
    d = space == "m5" ? derived_reduction(s.system, s0) : hat_distribution(s.system, s0);
  } else {
    throw ParseError("unknown space '" + space + "' (m5, m6 or m6hat)");
  }
  const DerivedFlag f = derived_flag(d);
  out["growth"] = f.growth.str();
  out["ranks"] = ranks_json(f.growth);
  out["certificate"] = strings(f.growth.certificate);
  return out;
}

Json curvature_section(const Surface& s, const std::string& bundle) {
  Curvature r;
  if (bundle == "b3") {
    r = curvature(bar_connection(s.system));
  } else if (bundle == "e4") {
    r = curvature(rank4_connection(s.system));
  } else {
    throw ParseError("unknown bundle '" + bundle + "' (b3 or e4)");
  }
  Json out;
  out["bundle"] = bundle;
  out["matrix"] = matrix_json(r.matrix);
  out["flat"] = r.is_zero();
  return out;
}

Json metadata(const Surface& s) {
  Json out;
  out["tool"] = "surfdist";
  out["name"] = s.spec.name;
  out["mode"] = s.spec.mode == SurfaceSpec::Mode::symbolic ? "symbolic" : "concrete";
  out["system"] = {{"b", s.system.b.str()}, {"c", s.system.c.str()}, {"mu", s.system.mu.str()}, {"nu", s.system.nu.str()}};
  if (s.precanonical) {
    const auto& p = *s.precanonical;
    out["precanonical"] = {{"alpha", p.alpha.str()}, {"delta", p.delta.str()}, {"theta", p.theta.str()}};
  }
  return out;
}

void render(std::ostream& out, const std::string& prefix, const Json& j) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      render(out, prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
    }
  } else if (j.is_array() && !j.empty() && j.front().is_array()) {
    out << prefix << ":\n";
    for (const auto& row : j) {
      out << "  [";
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? ", " : "") << row[i].get<std::string>();
      out << "]\n";
    }
  } else if (j.is_array() && !j.empty() && j.front().is_string()) {
    for (std::size_t i = 0; i < j.size(); ++i) out << prefix << "[" << i + 1 << "]: " << j[i].get<std::string>() << "\n";
  } else if (j.is_array()) {
    out << prefix << ": (";
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? "," : "") << j[i].dump();
    out << ")\n";
  } else if (j.is_string()) {
    out << prefix << ": " << j.get<std::string>() << "\n";
  } else {
    out << prefix << ": " << j.dump() << "\n";
  }
}

std::string emit(const Json& j, bool json) {
  if (json) return j.dump(2) + "\n";
  std::ostringstream out;
  render(out, "", j);
  return out.str();
}

Surface load(const std::string& target) {
  constexpr std::string_view prefix = "catalog:";
  if (target.rfind(prefix, 0) == 0) {
    auto s = catalog_surface(std::string_view(target).substr(prefix.size()));
    if (!s) throw ParseError("no catalog entry '" + target.substr(prefix.size()) + "'");
    return *s;
  }
  return build_surface(load_surface_spec(target));
}

struct CatalogRow {
  Json json;
  bool pass = false;
};

CatalogRow catalog_row(const CatalogEntry& entry) {
  CatalogRow row;
  const DictionaryReport d = growth_dictionary(entry.system);
  const GrowthVector m6 = derived_flag(m6_distribution(entry.system)).growth;
  row.pass = d.bar_growth.ranks == entry.expected_growth && d.classification.label() == entry.expected_stratum &&
             d.prediction_holds && m6.str() == "(3,5,6)";
  GrowthVector expected;
  expected.ranks = entry.expected_growth;
  row.json["name"] = entry.name;
  row.json["description"] = entry.description;
  row.json["expected_stratum"] = entry.expected_stratum;
  row.json["computed_stratum"] = d.classification.label();
  row.json["expected_growth"] = expected.str();
  row.json["computed_growth"] = d.bar_growth.str();
  row.json["m6_growth"] = m6.str();
  row.json["witness"] = d.witness ? Json(d.witness->str()) : Json(nullptr);
  row.json["expectation_source"] = entry.expectation_source;
  row.json["status"] = row.pass ? "PASS" : "FAIL";
  return row;
}

Outcome run_catalog(const std::optional<std::string>& name, const Options& o) {
  std::vector<const CatalogEntry*> entries;
  if (name) {
    const CatalogEntry* e = find_catalog_entry(*name);
    if (!e) throw ParseError("no catalog entry '" + *name + "'");
    entries.push_back(e);
  } else {
    for (const auto& e : catalog()) entries.push_back(&e);
  }
  std::vector<std::future<CatalogRow>> jobs;
  for (const auto* e : entries) jobs.push_back(std::async(std::launch::async, catalog_row, std::cref(*e)));
  Json rows = Json::array();
  bool ok = true;
  for (auto& j : jobs) {
    CatalogRow row = j.get();
    ok = ok && row.pass;
    rows.push_back(std::move(row.json));
  }
  Outcome out;
  out.exit_code = ok ? exit_ok : exit_assertion_failed;
  if (o.json) {
    out.text = rows.dump(2) + "\n";
    return out;
  }
  std::ostringstream text;
  char line[256];
  std::snprintf(line, sizeof line, "%-12s %-30s %-10s %-10s %-14s %s\n", "name", "stratum", "expected", "computed",
                "source", "status");
  text << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-12s %-30s %-10s %-10s %-14s %s\n", r["name"].get<std::string>().c_str(),
                  r["computed_stratum"].get<std::string>().c_str(), r["expected_growth"].get<std::string>().c_str(),
                  r["computed_growth"].get<std::string>().c_str(),
                  r["expectation_source"].get<std::string>().c_str(), r["status"].get<std::string>().c_str());
    text << line;
  }
  out.text = text.str();
  return out;
}

Outcome run_unchecked(const std::string& command, const std::optional<std::string>& target, const Options& o) {
  if (command == "catalog") return run_catalog(target, o);
  if (!target) throw ParseError("command '" + command + "' needs a surface file");
  const Surface s = load(*target);
  bool ok = true;
  Json j;
  if (command == "check") {
    j = check_section(s, ok);
  } else if (command == "invariants") {
    j = invariants_section(s, true);
  } else if (command == "classify") {
    j = classify_section(s, ok);
  } else if (command == "growth") {
    j = growth_section(s, o.space, o);
  } else if (command == "curvature") {
    j = curvature_section(s, o.bundle);
  } else if (command == "report") {
    j = build_report(s, o, ok);
    return {ok ? exit_ok : exit_assertion_failed, j.dump(2) + "\n"};
  } else {
    throw ParseError("unknown command '" + command + "'");
  }
  return {ok ? exit_ok : exit_assertion_failed, emit(j, o.json)};
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"check", "invariants", "classify", "growth",
                                                 "curvature", "report", "catalog"};
  return names;
}

Json build_report(const Surface& s, const Options& o, bool& ok) {
  Json out = metadata(s);
  const std::vector<std::string> all = {"check", "invariants", "classify", "growth", "curvature"};
  const std::vector<std::string>& wanted = s.spec.commands ? *s.spec.commands : all;
  auto want = [&](const char* c) { return std::find(wanted.begin(), wanted.end(), c) != wanted.end(); };
  for (const auto& c : wanted) {
    if (std::find(all.begin(), all.end(), c) == all.end()) throw ParseError("unknown command '" + c + "' in [run]");
  }
  Json notes = Json::array();
  if (want("check")) out["check"] = check_section(s, ok);
  if (want("invariants")) {
    out["invariants"] = invariants_section(s, false);
    notes.push_back("phi = 8*b*c*(dx*dy + dy*dx) and Phi = -2*b*dx^3 - 2*c*dy^3");
    if ((s.system.b * s.system.c).is_zero()) notes.push_back("bc = 0: Gaussian curvature and applicability omitted");
  }
  if (want("classify")) {
    const Json c = classify_section(s, ok);
    for (auto it = c.begin(); it != c.end(); ++it) out[it.key()] = it.value();
    notes.push_back("bar_growth is the derived flag of the s0 = 0 reduction on (x,y,z,p,q)");
  }
  if (want("growth")) {
    Json g;
    for (const char* space : {"m6", "m5", "m6hat"}) g[space] = growth_section(s, space, o);
    out["growth"] = g;
  }
  if (want("curvature")) {
    out["curvature"] = {{"b3", curvature_section(s, "b3")}, {"e4", curvature_section(s, "e4")}};
    notes.push_back("curvature matrices use the layout [X1,X2] = sum e_a R[a][b] d/de_b");
  }
  if (!notes.empty()) out["notes"] = notes;
  return out;
}

Outcome run(const std::string& command, const std::optional<std::string>& target, const Options& options) {
  try {
    return run_unchecked(command, target, options);
  } catch (const ParseError& e) {
    return {exit_parse_failure, std::string("parse error: ") + e.what() + "\n"};
  } catch (const DomainError& e) {
    return {exit_precondition, std::string("precondition failed: ") + e.what() + "\n"};
  } catch (const EvaluationError& e) {
    return {exit_precondition, std::string("precondition failed: ") + e.what() + "\n"};
  } catch (const ConsistencyError& e) {
    return {exit_consistency, std::string("internal consistency failure: ") + e.what() + "\n"};
  } catch (const std::invalid_argument& e) {
    return {exit_parse_failure, std::string("parse error: ") + e.what() + "\n"};
  }
}

}  // namespace surfdist::cli
