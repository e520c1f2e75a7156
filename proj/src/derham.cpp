#include "isomono/derham.hpp"

#include <set>
#include <stdexcept>

#include "isomono/errors.hpp"
#include "isomono/factor.hpp"
#include "isomono/format.hpp"
#include "isomono/linsolve.hpp"

namespace isomono {

RationalFunction H1Class::representative() const {
  RationalFunction acc;
  auto x = RationalFunction::variable(var);
  for (const auto& [pole, res] : residues) acc += res / (x - pole);
  return acc;
}

std::string H1Class::to_string() const {
  if (residues.empty()) return "0";
  std::string s;
  for (const auto& [pole, res] : residues) {
    if (!s.empty()) s += " + ";
    s += "(" + format_rf(res) + ")/(" + var_name(var) + " - (" + format_rf(pole) + "))";
  }
  return s;
}

namespace {

// Partial fractions over linear factors: poles of order k >= 2 integrate
// termwise, simple poles are the class.
std::optional<ReductionResult> reduce_split(const RationalFunction& f, Var x) {
  std::optional<PartialFractions> pf;
  try {
    pf.emplace(partial_fractions(f, x));
  } catch (const NonLinearFactor&) {
    return std::nullopt;
  }
  ReductionResult out{{x, {}}, pf->polynomial.integral().to_rf()};
  auto xr = RationalFunction::variable(x);
  for (const auto& term : pf->terms) {
    if (term.order == 1) {
      out.cls.residues.emplace(term.pole, term.coefficient);
      continue;
    }
    const int k = static_cast<int>(term.order) - 1;
    out.certificate -= term.coefficient / (RationalFunction(Q(k)) * pow(xr - term.pole, k));
  }
  return out;
}

}  // namespace

ReductionResult reduce(const RationalFunction& f, Var x) {
  ReductionResult out{{x, {}}, RationalFunction()};
  if (f.is_zero()) return out;
  if (auto split = reduce_split(f, x)) return *split;
  auto [num, den] = as_fraction(f, x);
  auto [poly, rem] = divmod(num, den);
  RationalFunction cert = poly.integral().to_rf();

  // Mack's linear-system form of Hermite reduction.
  UPoly a = rem;
  UPoly dm = gcd(den, den.derivative());
  UPoly ds = divmod(den, dm).first;
  while (dm.degree() > 0) {
    UPoly dm2 = gcd(dm, dm.derivative());
    UPoly dms = divmod(dm, dm2).first;
    auto [lhs, r] = divmod(ds * dm.derivative(), dm);
    if (!r.is_zero()) throw std::logic_error("reduce: inexact Hermite step");
    auto [b, c] = solve_bezout(-lhs, dms, a);
    a = c - divmod(b.derivative() * ds, dms).first;
    cert += b.to_rf() / dm.to_rf();
    dm = dm2;
  }
  if (a.degree() >= ds.degree()) {
    auto [q, r] = divmod(a, ds);
    cert += q.integral().to_rf();
    a = r;
  }
  if (!a.is_zero()) {
    // Factors where every residue vanishes need not split.
    UPoly g = gcd(a, ds);
    if (g.degree() > 0) {
      a = divmod(a, g).first;
      ds = divmod(ds, g).first;
    }
    UPoly dsd = ds.derivative();
    for (const auto& c : linear_roots(ds.to_primitive_multipoly(), x)) {
      RationalFunction res = a.evaluate(c) / dsd.evaluate(c);
      if (!res.is_zero()) out.cls.residues.emplace(c, res);
    }
  }
  out.certificate = cert;
  return out;
}

H1Class gm_derivative(const H1Class& c, Var t) {
  H1Class out{c.var, {}};
  for (const auto& [pole, res] : c.residues) {
    RationalFunction d = res.derivative(t);
    if (!d.is_zero()) out.residues.emplace(pole, d);
  }
  return out;
}

namespace {

std::vector<RationalFunction> pole_union(const std::vector<H1Class>& classes, std::size_t upto) {
  std::set<RationalFunction> poles;
  for (std::size_t j = 0; j <= upto; ++j)
    for (const auto& [p, r] : classes[j].residues) poles.insert(p);
  return {poles.begin(), poles.end()};
}

// Coefficients e_0..e_{m-1} with sum e_j r_j = -r_m, if any.
std::optional<std::vector<RationalFunction>> solve_dependence(const std::vector<H1Class>& classes, std::size_t m,
                                                              Exec exec) {
  auto poles = pole_union(classes, m);
  if (poles.empty()) return std::vector<RationalFunction>(m);
  RMatrix mat(poles.size(), m);
  std::vector<RationalFunction> rhs(poles.size());
  auto coord = [&](const H1Class& c, const RationalFunction& p) {
    auto it = c.residues.find(p);
    return it == c.residues.end() ? RationalFunction() : it->second;
  };
  for (std::size_t i = 0; i < poles.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) mat(i, j) = coord(classes[j], poles[i]);
    rhs[i] = -coord(classes[m], poles[i]);
  }
  auto sol = linear_solve(mat, rhs, exec);
  if (!sol.consistent) return std::nullopt;
  return sol.particular;
}

}  // namespace

bool dependence_exists(const std::vector<H1Class>& classes, std::size_t m) {
  if (m >= classes.size()) throw std::out_of_range("dependence_exists: order beyond computed classes");
  return solve_dependence(classes, m, Exec::serial).has_value();
}

std::optional<TelescoperResult> telescoper(const RationalFunction& b, Var x, Var t, std::size_t max_order, Exec exec) {
  auto first = reduce(b, x);
  std::vector<H1Class> classes{first.cls};
  std::vector<RationalFunction> certs{first.certificate};
  auto xr = RationalFunction::variable(x);
  for (std::size_t m = 0; m <= max_order; ++m) {
    if (m > 0) {
      // d_t of (d_x g + sum b_i/(x-c_i)) = d_x(d_t g - sum b_i c_i'/(x-c_i)) + GM part.
      RationalFunction cert = certs.back().derivative(t);
      for (const auto& [pole, res] : classes.back().residues) {
        RationalFunction dp = pole.derivative(t);
        if (!dp.is_zero()) cert -= res * dp / (xr - pole);
      }
      certs.push_back(cert);
      classes.push_back(gm_derivative(classes.back(), t));
    }
    auto e = solve_dependence(classes, m, exec);
    if (!e) continue;
    e->push_back(RationalFunction(1));
    RationalFunction a;
    for (std::size_t j = 0; j <= m; ++j)
      if (!(*e)[j].is_zero()) a += (*e)[j] * certs[j];
    TelescoperResult out{operator_from_dependence(t, *e), a, classes};
    if (out.op.apply(b) != a.derivative(x)) throw std::logic_error("telescoper: certificate identity failed");
    return out;
  }
  return std::nullopt;
}

Exact2FormResult exact2form_solvable(const RationalFunction& g, Var u, Var v) {
  Exact2FormResult out;
  if (g.is_zero()) {
    out.status = Exact2FormResult::Status::solvable;
    return out;
  }
  try {
    auto red = reduce(g, u);
    auto ur = RationalFunction::variable(u);
    RationalFunction f1;
    for (const auto& [pole, res] : red.cls.residues) {
      auto inner = reduce(res, v);
      if (!inner.cls.empty()) {
        out.status = Exact2FormResult::Status::unsolvable;
        out.pole = pole;
        out.residue = res;
        out.residue_class = inner.cls;
        out.message = "residue " + format_rf(res) + " at " + var_name(u) + " = " + format_rf(pole) +
                      " has a nonzero class in " + var_name(v);
        return out;
      }
      f1 += inner.certificate / (ur - pole);
    }
    auto rest = reduce(f1.derivative(v) - g, u);
    if (!rest.cls.empty()) throw std::logic_error("exact2form_solvable: residual class did not vanish");
    out.f1 = f1;
    out.f2 = rest.certificate;
    if (out.f1.derivative(v) - out.f2.derivative(u) != g)
      throw std::logic_error("exact2form_solvable: certificate identity failed");
    out.status = Exact2FormResult::Status::solvable;
  } catch (const NonLinearFactor& e) {
    out.status = Exact2FormResult::Status::unsupported;
    out.message = e.what();
  }
  return out;
}

}  // namespace isomono
