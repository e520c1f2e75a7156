#include "isomono/problem.hpp"

#include <fstream>
#include <sstream>

#include "isomono/errors.hpp"
#include "isomono/expr.hpp"
#include "isomono/format.hpp"

namespace isomono {

namespace {

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw MalformedInput(where + ": missing '" + key + "'");
  return obj.at(key);
}

std::string text_of(const Json& v, const std::string& where) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw MalformedInput(where + ": expected an expression string");
}

std::vector<std::string> names_of(const Json& v, const std::string& where) {
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) throw MalformedInput(where + ": expected a name or a list of names");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) throw MalformedInput(where + ": names must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

RationalFunction registry_expr(const std::string& text, const std::string& principal) {
  return expr::parse_rf(text, [&](const std::string& name) {
    return RationalFunction::variable(var(name, name == principal ? VarKind::principal : VarKind::parametric));
  });
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open '" + path.string() + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(path.string() + ": " + e.what());
  }
}

std::shared_ptr<Tower> load_field(const Json& section) {
  if (!section.is_object()) throw MalformedInput("field: expected an object");
  auto t = std::make_shared<Tower>();
  if (section.contains("principal"))
    for (const auto& p : names_of(section.at("principal"), "field.principal")) t->add_coordinate(p, VarKind::principal);
  if (section.contains("parametric"))
    for (const auto& p : names_of(section.at("parametric"), "field.parametric"))
      t->add_coordinate(p, VarKind::parametric);
  if (!section.contains("generators")) return t;
  const Json& gens = section.at("generators");
  if (!gens.is_array()) throw MalformedInput("field.generators: expected a list");
  for (const auto& g : gens) {
    std::string name = require(g, "name", "field.generators").get<std::string>();
    std::string kind = g.value("kind", "free");
    if (kind != "free" && kind != "defined") throw MalformedInput("generator '" + name + "': kind must be free or defined");
    t->add_generator(name, kind == "free" ? GeneratorKind::free : GeneratorKind::defined);
  }
  for (const auto& g : gens) {
    std::string name = g.at("name").get<std::string>();
    if (!g.contains("rules")) continue;
    if (!g.at("rules").is_object()) throw MalformedInput("generator '" + name + "': rules must be an object");
    for (const auto& [sym, rule] : g.at("rules").items())
      t->set_rule(name, sym, t->parse(text_of(rule, "rule for " + name)));
  }
  t->validate(2);
  return t;
}

RMatrix parse_matrix(const Tower& field, const Json& rows) {
  if (!rows.is_array() || rows.empty()) throw MalformedInput("matrix: expected a non-empty list of rows");
  const std::size_t n = rows.size();
  RMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!rows[i].is_array() || rows[i].size() != n) throw MalformedInput("matrix: rows must form a square matrix");
    for (std::size_t j = 0; j < n; ++j) m(i, j) = field.parse(text_of(rows[i][j], "matrix entry"));
  }
  return m;
}

Json matrix_to_json(const RMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_rf(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

RMatrix dual_matrix(const RMatrix& m) {
  RMatrix out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = -m(i, j);
  return out;
}

std::map<std::string, Json> stored_form(const ConnectionSystem& s, bool dual) {
  std::map<std::string, Json> out;
  for (const auto& sym : s.symbols()) out[sym] = matrix_to_json(dual ? dual_matrix(s.matrix(sym)) : s.matrix(sym));
  return out;
}

CurveSpec parse_curve(const std::string& f, const std::string& x, const std::string& t) {
  Var xv = var(x, VarKind::principal);
  Var tv = var(t, VarKind::parametric);
  RationalFunction p = registry_expr(f, x);
  if (!p.is_polynomial()) throw MalformedInput("curve: f must be a polynomial");
  for (Var v : p.variables())
    if (v != xv && v != tv) throw MalformedInput("curve: f may only involve " + x + " and " + t);
  return CurveSpec::make(p.num() * (1 / p.den().constant_value()), xv, tv);
}

Integrand parse_integrand(const std::string& text, const std::string& x, const std::string& t) {
  Var xv = var(x, VarKind::principal), tv = var(t, VarKind::parametric);
  return Integrand{registry_expr(text, x), xv, tv};
}

Problem load_problem(const Json& doc) {
  if (!doc.is_object()) throw MalformedInput("problem: expected a JSON object");
  Problem p;
  p.doc = doc;
  p.field = doc.contains("field") ? load_field(doc.at("field")) : std::make_shared<Tower>();

  if (doc.contains("system")) {
    const Json& sys = doc.at("system");
    const Json& mats = require(sys, "matrices", "system");
    if (!mats.is_object() || mats.empty()) throw MalformedInput("system.matrices: expected an object keyed by derivation");
    p.dual = sys.value("dual", false);
    std::optional<std::size_t> n;
    if (sys.contains("size")) n = sys.at("size").get<std::size_t>();
    std::map<std::string, RMatrix> parsed;
    for (const auto& [sym, rows] : mats.items()) {
      if (!p.field->has_symbol(sym)) throw MalformedInput("system: unknown derivation '" + sym + "'");
      RMatrix m = parse_matrix(*p.field, rows);
      if (!n) n = m.rows();
      if (m.rows() != *n) throw MalformedInput("system: matrix for '" + sym + "' has the wrong size");
      p.stored_matrices[sym] = rows;
      parsed.emplace(sym, p.dual ? dual_matrix(m) : m);
    }
    ConnectionSystem s(p.field, *n);
    for (auto& [sym, m] : parsed) s.set(sym, std::move(m));
    p.system = std::move(s);
  }

  if (doc.contains("commutant")) {
    const Json& c = doc.at("commutant");
    if (!c.is_array()) throw MalformedInput("commutant: expected a list of matrices");
    std::vector<RMatrix> mats;
    for (const auto& m : c) mats.push_back(parse_matrix(*p.field, m));
    p.commutant = std::move(mats);
  }
  if (doc.contains("flatten") && doc.at("flatten").contains("order"))
    p.flatten_order = names_of(doc.at("flatten").at("order"), "flatten.order");

  if (doc.contains("curve")) {
    const Json& c = doc.at("curve");
    p.curve = parse_curve(text_of(require(c, "f", "curve"), "curve.f"), c.value("var", "x"), c.value("param", "t"));
    p.form = c.value("form", std::size_t{0});
  }

  if (doc.contains("integrand")) {
    const Json& in = doc.at("integrand");
    p.integrand = parse_integrand(text_of(require(in, "expression", "integrand"), "integrand"), in.value("var", "x"),
                                  in.value("param", "t"));
  }
  return p;
}

Problem load_problem_file(const std::filesystem::path& path) { return load_problem(read_json_file(path)); }

}  // namespace isomono
