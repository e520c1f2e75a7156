#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "isomono/connection.hpp"
#include "isomono/curve.hpp"
#include "isomono/tower.hpp"

namespace isomono {

using Json = nlohmann::json;

struct Integrand {
  RationalFunction expr;
  Var var;
  Var param;
};

/// A problem document: field, and any of system, commutant, curve and
/// integrand sections.
struct Problem {
  std::shared_ptr<Tower> field;
  std::optional<ConnectionSystem> system;
  bool dual = false;
  std::map<std::string, Json> stored_matrices;  // system matrices as written
  std::optional<std::vector<RMatrix>> commutant;
  std::optional<std::vector<std::string>> flatten_order;
  std::optional<CurveSpec> curve;
  std::size_t form = 0;
  std::optional<Integrand> integrand;
  Json doc;
};

/// Throws MalformedInput on schema violations; expression errors surface as
/// SyntaxError or UnknownIdentifier.
Problem load_problem(const Json& doc);
Problem load_problem_file(const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);

/// Field from a "field" section: principal, parametric and generators.
std::shared_ptr<Tower> load_field(const Json& section);

/// Square matrix of expression strings evaluated in the field.
RMatrix parse_matrix(const Tower& field, const Json& rows);
Json matrix_to_json(const RMatrix& m);

/// Stored convention d e = -e A maps to d Y = A' Y with A' = -A^T. It is an
/// involution, so it also converts back.
RMatrix dual_matrix(const RMatrix& m);

/// Matrices of the system in the stored convention.
std::map<std::string, Json> stored_form(const ConnectionSystem& s, bool dual);

/// Integrand text with x registered as principal and every other name as a
/// parameter.
Integrand parse_integrand(const std::string& text, const std::string& x = "x", const std::string& t = "t");

/// Curve z^2 = f with f given as text; the principal and parameter names
/// default to x and t.
CurveSpec parse_curve(const std::string& f, const std::string& x = "x", const std::string& t = "t");

}  // namespace isomono
