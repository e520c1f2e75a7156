#include "isomono/operator.hpp"

#include "isomono/format.hpp"

namespace isomono {

RationalFunction LinearDiffOperator::coefficient(std::size_t i) const {
  if (i == c.size()) return RationalFunction(1);
  if (i > c.size()) return RationalFunction();
  return -c[i];
}

RationalFunction LinearDiffOperator::apply(const RationalFunction& f,
                                           const std::function<RationalFunction(const RationalFunction&)>& derive) const {
  RationalFunction acc, d = f;
  for (std::size_t i = 0; i <= c.size(); ++i) {
    if (i > 0) d = derive(d);
    RationalFunction k = coefficient(i);
    if (!k.is_zero()) acc += k * d;
  }
  return acc;
}

RationalFunction LinearDiffOperator::apply(const RationalFunction& f) const {
  return apply(f, [this](const RationalFunction& g) { return g.derivative(param); });
}

std::string format_operator(Var param, const std::vector<RationalFunction>& coeffs) {
  const std::string d = "D" + var_name(param);
  auto power = [&](std::size_t i) { return i == 1 ? d : d + "^" + std::to_string(i); };
  std::string s;
  for (std::size_t i = coeffs.size(); i-- > 0;) {
    RationalFunction k = coeffs[i];
    if (k.is_zero()) continue;
    bool negative = k.num().leading_coeff() < 0;
    if (negative) k = -k;
    std::string text = format_rf(k);
    if (s.empty())
      s = negative ? "-" : "";
    else
      s += negative ? " - " : " + ";
    if (i == 0) {
      s += k.is_polynomial() && k.num().size() > 1 ? "(" + text + ")" : text;
      continue;
    }
    if (k == RationalFunction(1)) {
      s += power(i);
      continue;
    }
    bool compound = text.find_first_of("+-/") != std::string::npos;
    s += (compound ? "(" + text + ")" : text) + "*" + power(i);
  }
  return s.empty() ? "0" : s;
}

std::string LinearDiffOperator::to_string() const {
  std::vector<RationalFunction> coeffs;
  for (std::size_t i = 0; i <= c.size(); ++i) coeffs.push_back(coefficient(i));
  return format_operator(param, coeffs);
}

LinearDiffOperator operator_from_dependence(Var param, const std::vector<RationalFunction>& e) {
  LinearDiffOperator op{param, {}};
  for (std::size_t j = 0; j + 1 < e.size(); ++j) op.c.push_back(-e[j]);
  return op;
}

}  // namespace isomono
