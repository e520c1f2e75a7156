#include "isomono/report.hpp"

#include <sstream>

#include "isomono/format.hpp"

namespace isomono {

namespace {

bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

bool is_flat_list(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& e : j)
    if (!is_scalar(e)) return false;
  return true;
}

bool is_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& row : j)
    if (!is_flat_list(row) || row.size() != j.size()) return false;
  return true;
}

std::string flat_list(const Json& j) {
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + scalar_text(j[i]);
  return s + "]";
}

void render(std::ostringstream& out, const Json& j, const std::string& indent);

void render_value(std::ostringstream& out, const std::string& head, const Json& v, const std::string& indent) {
  const std::string block = head.substr(0, head.find_last_not_of(' ') + 1);
  if (is_scalar(v)) {
    out << indent << head << scalar_text(v) << "\n";
  } else if (is_matrix(v)) {
    out << indent << block << "\n";
    for (const auto& row : v) out << indent << "  " << flat_list(row) << "\n";
  } else if (is_flat_list(v)) {
    out << indent << head << flat_list(v) << "\n";
  } else if (v.empty()) {
    out << indent << head << (v.is_array() ? "[]" : "{}") << "\n";
  } else {
    out << indent << block << "\n";
    render(out, v, indent + "  ");
  }
}

void render(std::ostringstream& out, const Json& j, const std::string& indent) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render_value(out, k + ": ", v, indent);
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object() && !v.empty()) {
        out << indent << "-\n";
        render(out, v, indent + "  ");
      } else {
        render_value(out, "- ", v, indent);
      }
    }
  } else {
    out << indent << scalar_text(j) << "\n";
  }
}

const char* to_string(Exact2FormResult::Status s) {
  switch (s) {
    case Exact2FormResult::Status::solvable: return "solvable";
    case Exact2FormResult::Status::unsolvable: return "unsolvable";
    case Exact2FormResult::Status::unsupported: return "unsupported";
  }
  return "";
}

Json strings(const std::vector<RationalFunction>& v) {
  Json out = Json::array();
  for (const auto& e : v) out.push_back(format_rf(e));
  return out;
}

Json operator_json(const LinearDiffOperator& op) {
  std::vector<RationalFunction> coeffs;
  for (std::size_t i = 0; i <= op.order(); ++i) coeffs.push_back(op.coefficient(i));
  return {{"text", op.to_string()},
          {"order", op.order()},
          {"param", var_name(op.param)},
          {"coefficients", strings(coeffs)}};
}

}  // namespace

std::string emit_report(const Json& report, ReportFormat format) {
  if (report.is_null() || (report.is_object() && report.empty())) return "{}\n";
  if (format == ReportFormat::json) return report.dump(2) + "\n";
  std::ostringstream out;
  render(out, report, "");
  return out.str();
}

const char* to_string(CheckMode m) { return m == CheckMode::full ? "full" : "pairwise"; }

const char* to_string(FlattenResult::Status s) {
  switch (s) {
    case FlattenResult::Status::found: return "found";
    case FlattenResult::Status::proven_obstruction: return "proven-obstruction";
    case FlattenResult::Status::not_found: return "not-found";
  }
  return "";
}

Json to_json(const IntegrabilityReport& r) {
  Json pairs = Json::array();
  for (const auto& p : r.pairs) {
    Json e{{"u", p.u}, {"v", p.v}, {"flat", p.flat}};
    if (!p.flat) e["defect"] = matrix_to_json(p.defect);
    pairs.push_back(std::move(e));
  }
  return {{"mode", to_string(r.mode)}, {"integrable", r.integrable()}, {"pairs", std::move(pairs)}};
}

Json to_json(const H1Class& c) {
  Json residues = Json::array();
  for (const auto& [pole, res] : c.residues) residues.push_back({{"pole", format_rf(pole)}, {"residue", format_rf(res)}});
  return {{"var", var_name(c.var)}, {"residues", std::move(residues)}, {"representative", format_rf(c.representative())}};
}

Json to_json(const ReductionResult& r) {
  return {{"class", to_json(r.cls)}, {"certificate", format_rf(r.certificate)}};
}

Json to_json(const TelescoperResult& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) classes.push_back(to_json(c));
  return {{"operator", operator_json(r.op)}, {"certificate", format_rf(r.certificate)}, {"classes", std::move(classes)}};
}

Json to_json(const CurveClass& c) { return strings(c.coords); }

Json to_json(const PicardFuchsResult& r) {
  Json classes = Json::array();
  for (const auto& c : r.classes) classes.push_back(to_json(c));
  return {{"operator", operator_json(r.op)},
          {"integrand", r.integrand.to_string()},
          {"certificate", r.certificate.to_string()},
          {"classes", std::move(classes)}};
}

Json to_json(const GaloisDescriptor& d) {
  return {{"operator", operator_json(d.op)},
          {"verdict", to_string(d.verdict)},
          {"rational_solutions", strings(d.solutions)},
          {"source", d.source},
          {"minimality_certified", d.minimality_certified}};
}

Json to_json(const ConnectionSystem& s, bool dual) {
  Json out = Json::object();
  for (auto& [k, v] : stored_form(s, dual)) out[k] = v;
  return out;
}

Json to_json(const FlattenResult& r, bool dual) {
  Json out{{"status", to_string(r.status)}, {"explanation", r.explanation}};
  if (r.status == FlattenResult::Status::found) {
    Json moves = Json::object();
    for (const auto& [sym, m] : r.moves) moves[sym] = matrix_to_json(dual ? dual_matrix(m) : m);
    out["moves"] = std::move(moves);
    if (r.flat) out["flat_system"] = to_json(*r.flat, dual);
  }
  if (r.status == FlattenResult::Status::proven_obstruction) {
    Json w{{"u", r.u}, {"v", r.v}, {"coefficient", format_rf(r.coefficient)}};
    w["direction"] = r.direction ? matrix_to_json(*r.direction) : Json(nullptr);
    if (r.exactness) {
      const auto& e = *r.exactness;
      Json ex{{"status", to_string(e.status)}, {"message", e.message}};
      if (e.status == Exact2FormResult::Status::unsolvable) {
        ex["pole"] = format_rf(e.pole);
        ex["residue"] = format_rf(e.residue);
        if (e.residue_class) ex["residue_class"] = to_json(*e.residue_class);
      }
      w["exactness"] = std::move(ex);
    }
    out["witness"] = std::move(w);
  }
  return out;
}

}  // namespace isomono
