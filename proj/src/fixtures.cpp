#include "isomono/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "isomono/errors.hpp"
#include "isomono/expr.hpp"
#include "isomono/format.hpp"
#include "isomono/galois.hpp"
#include "isomono/linsolve.hpp"
#include "isomono/report.hpp"

#ifndef ISOMONO_FIXTURE_DIR
#define ISOMONO_FIXTURE_DIR "fixtures"
#endif

namespace isomono {

namespace {

using Checks = std::vector<FixtureCheck>;

std::string text(const Json& e, const char* key) {
  if (!e.contains(key) || !e.at(key).is_string()) throw MalformedInput(std::string("expectation: missing '") + key + "'");
  return e.at(key).get<std::string>();
}

const ConnectionSystem& system_of(const Problem& p) {
  if (!p.system) throw MalformedInput("expectation needs a system section");
  return *p.system;
}

std::vector<std::string> names(const Json& j) { return j.get<std::vector<std::string>>(); }

Var coordinate_var(const Tower& field, const std::string& name) {
  const auto& sym = field.symbol(name);
  if (!sym.coordinate) throw MalformedInput("'" + name + "' is not a coordinate");
  return sym.expansion.begin()->first;
}

LinearDiffOperator parse_operator(const Tower& field, const Json& j) {
  Var param = coordinate_var(field, text(j, "param"));
  std::vector<RationalFunction> e;
  for (const auto& c : j.at("coefficients")) e.push_back(field.parse(c.get<std::string>()));
  if (e.empty() || e.back() != RationalFunction(1)) throw MalformedInput("operator: leading coefficient must be 1");
  return operator_from_dependence(param, e);
}

FixtureCheck make(const Json& e, std::string name, bool passed, std::string detail = {}, Json data = {}) {
  return {std::move(name), e.value("criterion", 0), passed, std::move(detail), std::move(data)};
}

/// Do two lists of matrices span the same space over the field?
bool same_span(const std::vector<RMatrix>& a, const std::vector<RMatrix>& b) {
  auto stack = [](const std::vector<RMatrix>& ms) {
    const std::size_t n = ms.empty() ? 0 : ms[0].rows() * ms[0].cols();
    RMatrix out(ms.size(), n);
    for (std::size_t k = 0; k < ms.size(); ++k)
      for (std::size_t i = 0; i < ms[k].rows(); ++i)
        for (std::size_t j = 0; j < ms[k].cols(); ++j) out(k, i * ms[k].cols() + j) = ms[k](i, j);
    return out;
  };
  std::vector<RMatrix> both = a;
  both.insert(both.end(), b.begin(), b.end());
  return rank(stack(a)) == a.size() && rank(stack(b)) == b.size() && rank(stack(both)) == a.size() &&
         a.size() == b.size();
}

Checks run_list(const Problem& p, const Json& list, Exec exec);

Checks check_defect(const Problem& p, const Json& e, Exec) {
  const auto& s = system_of(p);
  const std::string u = text(e, "u"), v = text(e, "v");
  RMatrix d = defect(s, u, v);
  RMatrix want = parse_matrix(s.field(), e.at("matrix"));
  return {make(e, "defect(" + u + ", " + v + ")", d == want, format_matrix(d), {{"defect", matrix_to_json(d)}})};
}

Checks check_integrable(const Problem& p, const Json& e, Exec exec) {
  const auto& s = system_of(p);
  const std::string mode = e.value("mode", "full");
  auto r = check_integrability(s, mode == "pairwise" ? CheckMode::pairwise : CheckMode::full, exec);
  Checks out{make(e, mode + " integrability", r.integrable() == e.at("integrable").get<bool>(),
                  r.integrable() ? "integrable" : "not integrable", to_json(r))};
  if (e.contains("failing")) {
    std::vector<std::vector<std::string>> got;
    for (const auto& pv : r.pairs)
      if (!pv.flat) got.push_back({pv.u, pv.v});
    auto want = e.at("failing").get<std::vector<std::vector<std::string>>>();
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    out.push_back(make(e, "failing pairs (" + mode + ")", got == want, Json(got).dump()));
  }
  return out;
}

Checks check_gauge(const Problem& p, const Json& e, Exec) {
  const auto& s = system_of(p);
  ConnectionSystem base(s.field_ptr(), s.size());
  for (const auto& [sym, rows] : e.at("base").items()) base.set(sym, parse_matrix(s.field(), rows));
  RMatrix g = parse_matrix(s.field(), e.at("gauge"));
  ConnectionSystem moved = gauge(base, g);
  return {make(e, "gauge of base system", moved == s, "", {{"gauged", to_json(moved, false)}})};
}

Checks check_centralizer(const Problem& p, const Json& e, Exec exec) {
  std::vector<RMatrix> gens, want;
  for (const auto& m : e.at("generators")) gens.push_back(parse_matrix(*p.field, m));
  for (const auto& m : e.at("span")) want.push_back(parse_matrix(*p.field, m));
  auto basis = centralizer(gens, exec);
  Json data = Json::array();
  for (const auto& b : basis) data.push_back(matrix_to_json(b));
  return {make(e, "centralizer", same_span(basis, want), "dimension " + std::to_string(basis.size()),
               {{"basis", data}})};
}

Checks check_flatten(const Problem& p, const Json& e, Exec exec) {
  const auto& s = system_of(p);
  std::vector<std::string> order = e.contains("order") ? names(e.at("order")) : p.flatten_order.value_or(std::vector<std::string>{});
  std::optional<std::vector<RMatrix>> constraint;
  if (e.value("use_commutant", false)) {
    if (!p.commutant) throw MalformedInput("flatten: fixture has no commutant");
    constraint = p.commutant;
  }
  FlattenBounds bounds{e.value("degree_bound", 4u)};
  auto r = flatten(s, order, constraint, bounds, exec);
  Json data = to_json(r, p.dual);
  Checks out{make(e, "flatten status", to_string(r.status) == text(e, "status"), to_string(r.status), data)};
  if (r.status == FlattenResult::Status::found)
    out.push_back(make(e, "flattened system is integrable",
                       r.flat && isomono::check_integrability(*r.flat, CheckMode::full, exec).integrable()));
  if (e.contains("coefficient"))
    out.push_back(make(e, "obstruction coefficient", r.coefficient == s.field().parse(text(e, "coefficient")),
                       format_rf(r.coefficient)));
  if (e.contains("residue")) {
    bool ok = r.exactness && r.exactness->status == Exact2FormResult::Status::unsolvable &&
              r.exactness->residue == s.field().parse(text(e, "residue")) && r.exactness->residue_class &&
              !r.exactness->residue_class->empty();
    out.push_back(make(e, "obstruction residue class", ok, r.exactness ? format_rf(r.exactness->residue) : "none"));
  }
  return out;
}

Checks check_picard_fuchs(const Problem& p, const Json& e, Exec exec) {
  if (!p.curve) throw MalformedInput("picard_fuchs: fixture has no curve");
  const CurveSpec& c = *p.curve;
  const std::size_t max_order = e.value("max_order", std::size_t{4});
  auto r = picard_fuchs(c, p.form, max_order, exec);
  if (!r) return {make(e, "picard-fuchs operator", false, "none up to order " + std::to_string(max_order))};
  Checks out;
  const std::size_t n = r->op.order();
  out.push_back(make(e, "operator order", n == e.at("order").get<std::size_t>(), std::to_string(n), to_json(*r)));
  if (e.contains("operator"))
    out.push_back(make(e, "operator text", r->op.to_string() == text(e, "operator"), r->op.to_string()));

  auto resolver = [](const std::string& name) {
    if (name == "z") return RationalFunction::variable(var("z", VarKind::parametric));
    return expr::resolve_registered(name);
  };
  const RationalFunction scale = expr::parse_rf(text(e, "scale"), resolver);
  std::vector<RationalFunction> scaled;
  for (std::size_t i = 0; i <= n; ++i) scaled.push_back(scale * r->op.coefficient(i));
  CurveElement cert{scale * r->certificate.even, scale * r->certificate.odd};
  Json data{{"scale", format_rf(scale)},
            {"scaled_operator", format_operator(r->op.param, scaled)},
            {"scaled_certificate", cert.to_string()}};

  if (e.contains("scaled_coefficients")) {
    const auto& want = e.at("scaled_coefficients");
    bool ok = want.size() == scaled.size();
    for (std::size_t i = 0; ok && i < scaled.size(); ++i)
      ok = scaled[i] == expr::parse_rf(want[i].get<std::string>(), resolver);
    out.push_back(make(e, "scaled coefficients", ok, format_operator(r->op.param, scaled), data));
  }
  if (e.contains("scaled_certificate")) {
    CurveElement want = curve_element(c, expr::parse_rf(text(e, "scaled_certificate"), resolver), var("z"));
    out.push_back(make(e, "scaled certificate", want == cert, cert.to_string()));
  }
  // sum scaled_i d_t^i omega - d_x(scaled certificate), modulo z^2 = f
  CurveElement lhs, term = r->integrand;
  for (std::size_t i = 0; i <= n; ++i) {
    lhs = lhs + CurveElement{scaled[i] * term.even, scaled[i] * term.odd};
    term = curve_derive(c, term, c.t);
  }
  CurveElement dx = curve_derive(c, cert, c.x);
  out.push_back(make(e, "certificate identity", lhs == dx));
  if (e.value("minimal", false)) {
    bool lower = false;
    for (std::size_t m = 0; m < n; ++m) lower = lower || curve_dependence_exists(r->classes, m);
    out.push_back(make(e, "no lower-order relation", !lower));
  }
  return out;
}

Checks check_tower(const Problem& p, const Json& e, Exec) {
  const Tower& field = *p.field;
  auto op = parse_operator(field, e.at("operator"));
  const TowerElement b = field.parse(text(e, "b")), a = field.parse(text(e, "a"));
  const std::string param = text(e.at("operator"), "param");
  auto principal = field.principal();
  if (!principal) throw MalformedInput("tower: field has no principal symbol");
  RationalFunction lhs = op.apply(b, [&](const RationalFunction& f) { return field.derive(f, param); });
  RationalFunction rhs = field.derive(a, *principal);
  Checks out{make(e, "tower identity " + op.to_string() + "(b) = d(a)", lhs == rhs, format_rf(lhs - rhs))};
  if (e.contains("verdict")) {
    auto d = galois_descriptor_tower(field, b, op, a);
    out.push_back(make(e, "descriptor verdict", to_string(d.verdict) == text(e, "verdict"), to_string(d.verdict),
                       to_json(d)));
    if (e.contains("rational_solutions"))
      out.push_back(make(e, "rational solution dimension",
                         d.solutions.size() == e.at("rational_solutions").get<std::size_t>(),
                         std::to_string(d.solutions.size())));
  }
  return out;
}

Checks check_descriptor(const Problem& p, const Json& e, Exec exec) {
  std::optional<GaloisDescriptor> d;
  if (p.curve)
    d = galois_descriptor_curve(*p.curve, p.form, e.value("max_order", std::size_t{4}), exec);
  else if (p.integrand)
    d = galois_descriptor_rational(p.integrand->expr, p.integrand->var, p.integrand->param,
                                   e.value("max_order", std::size_t{8}), exec);
  else
    throw MalformedInput("descriptor: fixture has neither a curve nor an integrand");
  if (!d) return {make(e, "descriptor verdict", false, "no operator within bounds")};
  return {make(e, "descriptor verdict", to_string(d->verdict) == text(e, "verdict"), to_string(d->verdict), to_json(*d))};
}

Checks check_horizontal(const Problem& p, const Json& e, Exec exec) {
  const auto& s = system_of(p);
  auto symbols = names(e.at("symbols"));
  const unsigned bound = e.value("degree_bound", 6u);
  auto h = horizontal_sections(s, symbols, bound, exec);
  std::string label = "horizontal sections for";
  for (const auto& sym : symbols) label += " " + sym;
  Json basis = Json::array();
  for (const auto& v : h.basis) {
    Json col = Json::array();
    for (const auto& x : v) col.push_back(format_rf(x));
    basis.push_back(std::move(col));
  }
  Json data{{"degree_bound", bound}, {"basis", basis}};
  Checks out{make(e, label, h.basis.empty() == e.at("empty").get<bool>(),
                  "dimension " + std::to_string(h.basis.size()), data)};
  if (e.contains("witness")) {
    std::vector<RationalFunction> y;
    for (const auto& w : e.at("witness")) y.push_back(s.field().parse(w.get<std::string>()));
    bool ok = y.size() == s.size();
    for (const auto& sym : symbols) {
      if (!ok) break;
      const RMatrix& a = s.matrix(sym);
      for (std::size_t i = 0; ok && i < y.size(); ++i) {
        RationalFunction rhs;
        for (std::size_t j = 0; j < y.size(); ++j) rhs += a(i, j) * y[j];
        ok = s.field().derive(y[i], sym) == rhs;
      }
    }
    out.push_back(make(e, label + ": witness is horizontal", ok));
  }
  return out;
}

Checks check_rebase(const Problem& p, const Json& e, Exec exec) {
  const auto& s = system_of(p);
  DerivationRebase r{names(e.at("from")), names(e.at("to")), {}};
  const std::size_t k = r.from.size();
  r.lambda = RMatrix(k, k);
  const auto& rows = e.at("lambda");
  if (rows.size() != k) throw MalformedInput("rebase: lambda has the wrong shape");
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) r.lambda(i, j) = s.field().parse(rows.at(i).at(j).get<std::string>());
  Problem q = p;
  q.system = rebase_derivations(s, r);
  Checks out;
  if (e.contains("matrices")) {
    bool ok = true;
    for (const auto& [sym, m] : e.at("matrices").items()) {
      RMatrix want = parse_matrix(q.system->field(), m);
      if (p.dual) want = dual_matrix(want);
      ok = ok && q.system->matrix(sym) == want;
    }
    out.push_back(make(e, "rebased matrices", ok, "", to_json(*q.system, p.dual)));
  }
  auto back = rebase_derivations(*q.system, r.inverse());
  bool round = true;
  for (const auto& sym : r.from) round = round && back.matrix(sym) == s.matrix(sym);
  out.push_back(make(e, "rebase round trip", round));
  if (e.contains("then")) {
    auto more = run_list(q, e.at("then"), exec);
    out.insert(out.end(), more.begin(), more.end());
  }
  return out;
}

Checks check_shift(const Problem& p, const Json& e, Exec exec) {
  const auto& s = system_of(p);
  const std::string sym = text(e, "symbol");
  RationalFunction c = s.field().parse(text(e, "scalar"));
  Problem q = p;
  q.system->set(sym, s.matrix(sym) + c * RMatrix::identity(s.size()));
  auto out = run_list(q, e.at("then"), exec);
  for (auto& ch : out) ch.name = sym + " shifted by " + format_rf(c) + ": " + ch.name;
  return out;
}

Checks run_one(const Problem& p, const Json& e, Exec exec) {
  static const std::map<std::string, std::function<Checks(const Problem&, const Json&, Exec)>> kinds{
      {"defect", check_defect},         {"integrability", check_integrable},
      {"gauge_of", check_gauge},        {"centralizer", check_centralizer},
      {"flatten", check_flatten},       {"picard_fuchs", check_picard_fuchs},
      {"tower", check_tower},           {"descriptor", check_descriptor},
      {"horizontal", check_horizontal}, {"rebase", check_rebase},
      {"shift", check_shift}};
  const std::string kind = text(e, "kind");
  auto it = kinds.find(kind);
  if (it == kinds.end()) throw MalformedInput("unknown expectation kind '" + kind + "'");
  try {
    return it->second(p, e, exec);
  } catch (const MalformedInput&) {
    throw;
  } catch (const Error& err) {
    return {make(e, kind, false, err.what())};
  }
}

Checks run_list(const Problem& p, const Json& list, Exec exec) {
  if (!list.is_array()) throw MalformedInput("expect: expected a list");
  Checks out;
  for (const auto& e : list) {
    auto c = run_one(p, e, exec);
    out.insert(out.end(), c.begin(), c.end());
  }
  return out;
}

/// Stored matrices -> internal convention -> stored again is the identity.
FixtureCheck round_trip(const Problem& p) {
  bool ok = true;
  auto again = stored_form(*p.system, p.dual);
  for (const auto& [sym, rows] : p.stored_matrices) {
    RMatrix m = parse_matrix(*p.field, rows);
    ok = ok && again.count(sym) && parse_matrix(*p.field, again.at(sym)) == m &&
         dual_matrix(dual_matrix(m)) == m;
  }
  return {"stored convention round trip", 0, ok, p.dual ? "dual" : "direct", {}};
}

}  // namespace

std::filesystem::path fixture_dir() {
  if (const char* env = std::getenv("ISOMONO_FIXTURES"); env && *env) return env;
  return ISOMONO_FIXTURE_DIR;
}

std::vector<std::string> fixture_names() {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(fixture_dir(), ec))
    if (entry.path().extension() == ".json") out.push_back(entry.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

Json load_fixture(const std::string& name) {
  auto path = fixture_dir() / (name + ".json");
  if (!std::filesystem::exists(path)) throw MalformedInput("unknown example '" + name + "'");
  return read_json_file(path);
}

FixtureOutcome run_fixture(const Json& doc, Exec exec) {
  FixtureOutcome out;
  out.name = doc.value("name", "");
  Problem p = load_problem(doc);
  if (p.system) out.checks.push_back(round_trip(p));
  auto checks = run_list(p, doc.value("expect", Json::array()), exec);
  out.checks.insert(out.checks.end(), checks.begin(), checks.end());
  for (const auto& c : out.checks) out.passed = out.passed && c.passed;
  return out;
}

Json to_json(const FixtureOutcome& o) {
  Json checks = Json::array();
  for (const auto& c : o.checks) {
    Json j{{"check", c.name}, {"passed", c.passed}};
    if (c.criterion) j["criterion"] = c.criterion;
    if (!c.detail.empty()) j["detail"] = c.detail;
    if (!c.data.is_null()) j["data"] = c.data;
    checks.push_back(std::move(j));
  }
  return {{"name", o.name}, {"passed", o.passed}, {"checks", std::move(checks)}};
}

}  // namespace isomono
