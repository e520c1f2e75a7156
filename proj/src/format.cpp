#include "isomono/format.hpp"

#include <algorithm>

#include "isomono/errors.hpp"
#include "isomono/factor.hpp"

namespace isomono {

std::string format_poly(const MultiPoly& p) {
  std::string s = p.to_string();
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

namespace {

// Factors of a univariate monic polynomial as (text, multiplicity), with a
// rational scale so that den = scale * prod(factor^m).
struct FactorText {
  std::string text;
  unsigned multiplicity;
  bool compound;
};

MultiPoly primitive(MultiPoly p) {
  p *= 1 / p.content();
  if (p.leading_coeff() < 0) p = -p;
  return p;
}

void push_factor(const MultiPoly& f, unsigned mult, std::vector<FactorText>& out, MultiPoly& rebuilt) {
  out.push_back({format_poly(f), mult, f.size() > 1});
  rebuilt *= pow(f, mult);
}

// Splits p into factors linear in one variable where possible, recursing
// into the content with respect to that variable.
void split(const MultiPoly& p, unsigned mult, std::vector<FactorText>& out, MultiPoly& rebuilt) {
  auto vars = p.variables();
  if (vars.empty()) return;
  Var v = vars.front();
  for (Var w : vars)
    if (VariableRegistry::global().kind(w) == VarKind::principal) {
      v = w;
      break;
    }
  MultiPoly c = content_in(p, v);
  if (!c.is_constant()) split(c, mult, out, rebuilt);
  for (const auto& [factor, m] : squarefree_factor(divide_exact(p, c), v)) {
    std::vector<RationalFunction> roots;
    try {
      roots = linear_roots(factor, v);
    } catch (const NonLinearFactor&) {
      push_factor(primitive(factor), mult * m, out, rebuilt);
      continue;
    }
    for (const auto& r : roots)
      push_factor(primitive(MultiPoly::variable(v) * r.den() - r.num()), mult * m, out, rebuilt);
  }
}

bool factor_denominator(const MultiPoly& den, Q& scale, std::vector<FactorText>& out) {
  MultiPoly rebuilt(1);
  try {
    split(den, 1, out, rebuilt);
  } catch (const Error&) {
    out.clear();
    return false;
  }
  scale = den.leading_coeff() / rebuilt.leading_coeff();
  if (rebuilt * scale != den) {
    out.clear();
    return false;
  }
  std::stable_sort(out.begin(), out.end(), [](const FactorText& a, const FactorText& b) { return a.text < b.text; });
  return true;
}

}  // namespace

std::string format_rf(const RationalFunction& f) {
  if (f.is_polynomial()) return format_poly(f.num() * (1 / f.den().constant_value()));
  // Pull rational content of the numerator into the denominator text.
  Q content = f.num().content();
  if (f.num().leading_coeff() < 0) content = -content;
  MultiPoly num = f.num() * (1 / content);
  Q num_int = content.get_num(), den_int = content.get_den();
  std::vector<FactorText> factors;
  Q scale = 1;
  std::string den_text;
  if (factor_denominator(f.den(), scale, factors)) {
    // den = scale * prod(factors); content/scale splits into integers.
    Q coef = content / scale;
    num_int = coef.get_num();
    den_int = coef.get_den();
    std::vector<std::string> parts;
    if (den_int != 1) parts.push_back(den_int.get_str());
    for (const auto& ft : factors) {
      std::string t = ft.compound ? "(" + ft.text + ")" : ft.text;
      if (ft.multiplicity > 1) t += "^" + std::to_string(ft.multiplicity);
      parts.push_back(t);
    }
    for (std::size_t i = 0; i < parts.size(); ++i) den_text += (i ? "*" : "") + parts[i];
    if (parts.size() > 1) den_text = "(" + den_text + ")";
  } else {
    std::string dt = format_poly(f.den());
    if (f.den().size() > 1) dt = "(" + dt + ")";
    if (den_int != 1) dt = den_int.get_str() + "*" + dt;
    den_text = dt.find('*') == std::string::npos ? dt : "(" + dt + ")";
  }
  MultiPoly n = num * num_int;
  std::string num_text = format_poly(n);
  if (n.size() > 1) num_text = "(" + num_text + ")";
  return num_text + "/" + den_text;
}

std::string format_matrix(const RMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + format_rf(m(i, j));
    s += "]";
  }
  return s + "]";
}

}  // namespace isomono
