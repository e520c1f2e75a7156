#include "isomono/cli.hpp"

#include <algorithm>
#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "isomono/errors.hpp"
#include "isomono/fixtures.hpp"
#include "isomono/format.hpp"
#include "isomono/galois.hpp"
#include "isomono/report.hpp"

namespace isomono::cli {

namespace {

struct Outcome {
  int code = ok;
  Json report;
};

struct Settings {
  bool json = false;
  bool serial = false;
  Exec exec() const { return serial ? Exec::serial : Exec::parallel; }
};

const ConnectionSystem& need_system(const Problem& p, const std::string& file) {
  if (!p.system) throw MalformedInput(file + ": no system section");
  return *p.system;
}

/// A matrix file holds either a list of rows or {"matrix": rows}.
RMatrix load_matrix(const Tower& field, const std::string& file) {
  Json doc = read_json_file(file);
  if (doc.is_object()) {
    if (!doc.contains("matrix")) throw MalformedInput(file + ": missing 'matrix'");
    doc = doc.at("matrix");
  }
  return parse_matrix(field, doc);
}

/// A commutant file holds a list of matrices or {"commutant": [...]}.
std::vector<RMatrix> load_commutant(const Tower& field, const std::string& file) {
  Json doc = read_json_file(file);
  if (doc.is_object()) {
    if (!doc.contains("commutant")) throw MalformedInput(file + ": missing 'commutant'");
    doc = doc.at("commutant");
  }
  if (!doc.is_array()) throw MalformedInput(file + ": expected a list of matrices");
  std::vector<RMatrix> out;
  for (const auto& m : doc) out.push_back(parse_matrix(field, m));
  return out;
}

Outcome cmd_check(const std::string& file, const std::string& mode, const Settings& s) {
  Problem p = load_problem_file(file);
  auto r = check_integrability(need_system(p, file), mode == "pairwise" ? CheckMode::pairwise : CheckMode::full, s.exec());
  Json rep = to_json(r);
  rep["command"] = "check";
  return {r.integrable() ? ok : property_fails, rep};
}

Outcome cmd_gauge(const std::string& file, const std::string& matrix_file) {
  Problem p = load_problem_file(file);
  const auto& sys = need_system(p, file);
  RMatrix g = load_matrix(sys.field(), matrix_file);
  if (g.rows() != sys.size()) throw MalformedInput(matrix_file + ": gauge matrix has the wrong size");
  ConnectionSystem moved = gauge(sys, g);
  return {ok, {{"command", "gauge"}, {"dual", p.dual}, {"matrices", to_json(moved, p.dual)}}};
}

Outcome cmd_reduce(const std::string& integrand, const std::string& x) {
  Integrand in = parse_integrand(integrand, x);
  auto r = reduce(in.expr, in.var);
  Json rep = to_json(r);
  rep["command"] = "reduce";
  rep["integrand"] = format_rf(in.expr);
  rep["exact"] = r.cls.empty();
  return {ok, rep};
}

Outcome cmd_telescope(const std::string& integrand, const std::string& x, const std::string& t, std::size_t max_order,
                      const Settings& s) {
  Integrand in = parse_integrand(integrand, x, t);
  auto r = telescoper(in.expr, in.var, in.param, max_order, s.exec());
  if (!r) return {not_found, {{"command", "telescope"}, {"max_order", max_order}, {"found", false}}};
  Json rep = to_json(*r);
  rep["command"] = "telescope";
  rep["integrand"] = format_rf(in.expr);
  rep["found"] = true;
  bool lower = false;
  for (std::size_t m = 0; m < r->op.order(); ++m) lower = lower || dependence_exists(r->classes, m);
  rep["minimal"] = !lower;
  return {ok, rep};
}

Outcome cmd_picard_fuchs(const std::string& curve, std::size_t form, const std::string& x, const std::string& t,
                         std::size_t max_order, const Settings& s) {
  CurveSpec c = parse_curve(curve, x, t);
  if (form > c.degree() - 2) throw MalformedInput("form index must be at most " + std::to_string(c.degree() - 2));
  auto r = picard_fuchs(c, form, max_order, s.exec());
  if (!r) return {not_found, {{"command", "picard-fuchs"}, {"max_order", max_order}, {"found", false}}};
  Json rep = to_json(*r);
  rep["command"] = "picard-fuchs";
  rep["curve"] = format_poly(c.f);
  rep["found"] = true;
  return {ok, rep};
}

Outcome cmd_flatten(const std::string& file, unsigned degree_bound, const std::string& commutant_file,
                    const Settings& s) {
  Problem p = load_problem_file(file);
  const auto& sys = need_system(p, file);
  std::optional<std::vector<RMatrix>> constraint = p.commutant;
  if (!commutant_file.empty()) constraint = load_commutant(sys.field(), commutant_file);
  std::vector<std::string> order;
  if (p.flatten_order) {
    order = *p.flatten_order;
  } else {
    for (const auto& sym : sys.symbols())
      if (sym != sys.principal()) order.push_back(sym);
  }
  auto r = flatten(sys, order, constraint, FlattenBounds{degree_bound}, s.exec());
  Json rep = to_json(r, p.dual);
  rep["command"] = "flatten";
  rep["degree_bound"] = degree_bound;
  switch (r.status) {
    case FlattenResult::Status::found: return {ok, rep};
    case FlattenResult::Status::proven_obstruction: return {property_fails, rep};
    case FlattenResult::Status::not_found: break;
  }
  return {not_found, rep};
}

Outcome cmd_galois(const std::string& integrand, const std::string& curve, std::size_t form, const std::string& x,
                   const std::string& t, std::size_t max_order, const Settings& s) {
  if (integrand.empty() == curve.empty()) throw MalformedInput("galois: give exactly one of --integrand and --curve");
  std::optional<GaloisDescriptor> d;
  if (!integrand.empty()) {
    Integrand in = parse_integrand(integrand, x, t);
    d = galois_descriptor_rational(in.expr, in.var, in.param, max_order ? max_order : 8, s.exec());
  } else {
    d = galois_descriptor_curve(parse_curve(curve, x, t), form, max_order ? max_order : 4, s.exec());
  }
  if (!d) return {not_found, {{"command", "galois"}, {"found", false}}};
  Json rep = to_json(*d);
  rep["command"] = "galois";
  return {ok, rep};
}

Outcome cmd_examples(const std::string& which, const Settings& s) {
  std::vector<std::string> names = which == "all" ? fixture_names() : std::vector<std::string>{which};
  Json list = Json::array();
  bool passed = true;
  for (const auto& name : names) {
    auto o = run_fixture(load_fixture(name), s.exec());
    passed = passed && o.passed;
    list.push_back(to_json(o));
  }
  return {passed ? ok : property_fails, {{"command", "examples"}, {"passed", passed}, {"examples", list}}};
}

int exit_code_of(const std::exception& e) {
  if (dynamic_cast<const MalformedInput*>(&e) || dynamic_cast<const SyntaxError*>(&e) ||
      dynamic_cast<const UnknownIdentifier*>(&e) || dynamic_cast<const InconsistentTower*>(&e) ||
      dynamic_cast<const UnknownDerivation*>(&e) || dynamic_cast<const UnknownVariable*>(&e) ||
      dynamic_cast<const MissingRule*>(&e) || dynamic_cast<const SingularGauge*>(&e) ||
      dynamic_cast<const ZeroDenominator*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e))
    return malformed;
  if (dynamic_cast<const PreconditionFailed*>(&e)) return property_fails;
  return unsupported;
}

const char* kind_of(int code) {
  switch (code) {
    case malformed: return "malformed-input";
    case property_fails: return "precondition-failed";
    default: return "unsupported";
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact isomonodromy and telescoping toolkit", "isomono"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings settings;
  app.add_flag("--json", settings.json, "Machine-readable JSON report");
  app.add_flag("--serial", settings.serial, "Disable the parallel kernels");

  std::function<Outcome()> action;
  std::string file, mode = "full", matrix_file, integrand, var = "x", param = "t", curve, commutant_file, example;
  std::size_t tele_max = 8, pf_max = 4, galois_max = 0, form = 0;
  unsigned degree_bound = 4;

  auto* check = app.add_subcommand("check", "Integrability of a system file");
  check->add_option("file", file, "Problem file")->required();
  check->add_option("--mode", mode, "pairwise or full")->check(CLI::IsMember({"pairwise", "full"}));
  check->callback([&] { action = [&] { return cmd_check(file, mode, settings); }; });

  auto* gauge_cmd = app.add_subcommand("gauge", "Gauge transform of a system file");
  gauge_cmd->add_option("file", file, "Problem file")->required();
  gauge_cmd->add_option("--matrix", matrix_file, "Gauge matrix file")->required();
  gauge_cmd->callback([&] { action = [&] { return cmd_gauge(file, matrix_file); }; });

  auto* reduce_cmd = app.add_subcommand("reduce", "Hermite reduction of a rational integrand");
  reduce_cmd->add_option("--integrand", integrand, "Expression")->required();
  reduce_cmd->add_option("--var", var, "Integration variable");
  reduce_cmd->callback([&] { action = [&] { return cmd_reduce(integrand, var); }; });

  auto* tele = app.add_subcommand("telescope", "Minimal telescoper with certificate");
  tele->add_option("--integrand", integrand, "Expression")->required();
  tele->add_option("--var", var, "Integration variable");
  tele->add_option("--param", param, "Parameter");
  tele->add_option("--max-order", tele_max, "Order bound (default 8)");
  tele->callback([&] { action = [&] { return cmd_telescope(integrand, var, param, tele_max, settings); }; });

  auto* pf = app.add_subcommand("picard-fuchs", "Picard-Fuchs operator of x^i dx/z on z^2 = f");
  pf->add_option("--curve", curve, "Polynomial f")->required();
  pf->add_option("--form", form, "Basis form index i");
  pf->add_option("--var", var, "Curve variable");
  pf->add_option("--param", param, "Parameter");
  pf->add_option("--max-order", pf_max, "Order bound (default 4)");
  pf->callback([&] {
    action = [&] { return cmd_picard_fuchs(curve, form, var, param, pf_max, settings); };
  });

  auto* flat = app.add_subcommand("flatten", "Search for an equivalence move making a system flat");
  flat->add_option("file", file, "Problem file")->required();
  flat->add_option("--degree-bound", degree_bound, "Ansatz degree bound (default 4)");
  flat->add_option("--commutant", commutant_file, "Constraint matrices file");
  flat->callback([&] { action = [&] { return cmd_flatten(file, degree_bound, commutant_file, settings); }; });

  auto* gal = app.add_subcommand("galois", "Galois descriptor of an integrand or curve form");
  gal->add_option("--integrand", integrand, "Rational integrand");
  gal->add_option("--curve", curve, "Polynomial f of z^2 = f");
  gal->add_option("--form", form, "Basis form index for --curve");
  gal->add_option("--var", var, "Integration variable");
  gal->add_option("--param", param, "Parameter");
  gal->add_option("--max-order", galois_max, "Order bound (default 8 for integrands, 4 for curves)");
  gal->callback([&] {
    action = [&] { return cmd_galois(integrand, curve, form, var, param, galois_max, settings); };
  });

  auto* ex = app.add_subcommand("examples", "Built-in example fixtures");
  ex->require_subcommand(1);
  auto* ex_run = ex->add_subcommand("run", "Run a named fixture or all of them");
  ex_run->add_option("name", example, "Fixture name or 'all'")->required();
  ex_run->callback([&] { action = [&] { return cmd_examples(example, settings); }; });
  auto* ex_list = ex->add_subcommand("list", "List fixture names");
  ex_list->callback([&] {
    action = [&] { return Outcome{ok, {{"command", "examples"}, {"names", fixture_names()}}}; };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : malformed;
  }

  const ReportFormat format = settings.json ? ReportFormat::json : ReportFormat::human;
  Outcome result;
  try {
    result = action();
  } catch (const std::exception& e) {
    const int code = exit_code_of(e);
    Json rep{{"error", {{"kind", kind_of(code)}, {"message", e.what()}}}};
    if (settings.json)
      out << emit_report(rep, format);
    else
      err << "error: " << e.what() << "\n";
    return code;
  }
  out << emit_report(result.report, format);
  return result.code;
}

}  // namespace isomono::cli
