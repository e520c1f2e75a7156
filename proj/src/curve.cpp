#include "isomono/curve.hpp"

#include <stdexcept>

#include "isomono/derham.hpp"
#include "isomono/errors.hpp"
#include "isomono/format.hpp"
#include "isomono/linsolve.hpp"
#include "isomono/matrix.hpp"
#include "isomono/upoly.hpp"

namespace isomono {

CurveSpec CurveSpec::make(const MultiPoly& f, Var x, Var t) {
  CurveSpec c{f, x, t};
  unsigned d = f.degree(x);
  if (d != 3 && d != 4) throw Unsupported("curve degree in " + var_name(x) + " must be 3 or 4, got " + std::to_string(d));
  UPoly u = UPoly::from(f, x);
  if (gcd(u, u.derivative()).degree() > 0) throw Unsupported("curve polynomial is not squarefree: " + f.to_string());
  return c;
}

std::string CurveElement::to_string() const {
  if (odd.is_zero()) return format_rf(even);
  std::string o = odd == RationalFunction(1) ? "z" : "(" + format_rf(odd) + ")*z";
  if (even.is_zero()) return o;
  return format_rf(even) + " + " + o;
}

CurveElement multiply(const CurveSpec& c, const CurveElement& a, const CurveElement& b) {
  RationalFunction f(c.f);
  return {a.even * b.even + a.odd * b.odd * f, a.even * b.odd + a.odd * b.even};
}

CurveElement inverse(const CurveSpec& c, const CurveElement& a) {
  RationalFunction norm = a.even * a.even - a.odd * a.odd * RationalFunction(c.f);
  if (norm.is_zero()) throw ZeroDenominator();
  return {a.even / norm, -a.odd / norm};
}

namespace {

CurveElement eliminate(const CurveSpec& c, const MultiPoly& p, Var z) {
  CurveElement out;
  auto coeffs = p.coefficients_in(z);
  MultiPoly fk(1);  // f^(k/2)
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0 && k % 2 == 0) fk *= c.f;
    if (coeffs[k].is_zero()) continue;
    RationalFunction term(coeffs[k] * fk);
    if (k % 2 == 0)
      out.even += term;
    else
      out.odd += term;
  }
  return out;
}

}  // namespace

CurveElement curve_element(const CurveSpec& c, const RationalFunction& e, Var z) {
  return multiply(c, eliminate(c, e.num(), z), inverse(c, eliminate(c, e.den(), z)));
}

CurveElement curve_derive(const CurveSpec& c, const CurveElement& e, Var v) {
  // d(q z) = (dq + q * df/(2f)) z
  RationalFunction df(c.f.derivative(v));
  return {e.even.derivative(v), e.odd.derivative(v) + e.odd * df / (RationalFunction(2) * RationalFunction(c.f))};
}

bool CurveClass::is_zero() const {
  for (const auto& q : coords)
    if (!q.is_zero()) return false;
  return true;
}

CurveElement basis_form(const CurveSpec& c, std::size_t i) {
  if (i >= c.basis_size()) throw std::out_of_range("basis_form: index beyond the basis");
  MultiPoly xi = pow(MultiPoly::variable(c.x), static_cast<unsigned>(i));
  return {RationalFunction(), RationalFunction(xi, c.f)};
}

CurveElement representative(const CurveSpec& c, const CurveClass& cls) {
  CurveElement out;
  for (std::size_t i = 0; i < cls.coords.size(); ++i) out += cls.coords[i] * basis_form(c, i);
  return out;
}

namespace {

UPoly divide_exactly(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::logic_error("curve_reduce: inexact division");
  return q;
}

}  // namespace

CurveReduction curve_reduce(const CurveSpec& c, const CurveElement& omega) {
  const Var x = c.x;
  CurveReduction out;
  try {
    if (!omega.even.is_zero()) {
      auto red = reduce(omega.even, x);
      if (!red.cls.empty()) throw UnsupportedPoles("even part has residues: " + red.cls.to_string());
      out.certificate.even = red.certificate;
    }
  } catch (const NonLinearFactor& e) {
    throw UnsupportedPoles(e.what());
  }

  // Odd part as (N/D) dx/z.
  const UPoly F = UPoly::from(c.f, x);
  const UPoly dF = F.derivative();
  auto [num, den] = as_fraction(omega.odd * RationalFunction(c.f), x);

  // den | C * F^s with C coprime to F.
  UPoly C = den;
  unsigned s = 0;
  for (UPoly g = gcd(C, F); g.degree() > 0; g = gcd(C, F)) {
    C = divide_exactly(C, g);
    ++s;
  }
  UPoly Fs = pow(F, s);
  UPoly scaled = num * divide_exactly(C * Fs, den);
  UPoly A(x), P(x);
  if (C.degree() > 0) {
    auto [a, v] = solve_bezout(Fs, C, scaled);  // a/C + v/F^s
    A = a;
    P = v;
  } else {
    P = C.lc().inverse() * scaled;
  }

  UPoly poly(x);
  // Hermite steps at poles away from f = 0.
  if (C.degree() > 0) {
    UPoly dm = gcd(C, C.derivative());
    UPoly ds = divide_exactly(C, dm);
    RationalFunction fr(c.f);
    while (dm.degree() > 0) {
      UPoly dm2 = gcd(dm, dm.derivative());
      UPoly dms = divide_exactly(dm, dm2);
      UPoly lhs = divide_exactly(ds * dm.derivative(), dm);
      auto [B, q] = solve_bezout(F * lhs, dms, -A);
      // A/(ds dm) - d(B z/dm) = (-q - (B' F + B F'/2) ds/dms)/(ds dm2)
      A = -q - (B.derivative() * F + RationalFunction(Q(1, 2)) * B * dF) * divide_exactly(ds, dms);
      out.certificate.odd += B.to_rf() / dm.to_rf();
      dm = dm2;
    }
    auto [qq, r] = divmod(A, ds);
    if (!r.is_zero())
      throw UnsupportedPoles("form has simple poles away from the branch points: residue part " + r.to_rf().to_string() +
                             " over " + ds.to_rf().to_string());
    poly = qq;
  }

  // Pole order at the branch points: P dx/(z f^k) with
  // d(w z/f^k) = (w' f + (1/2 - k) w f') dx/(z f^k).
  for (unsigned k = s; k > 0; --k) {
    auto [w, u] = solve_bezout(dF, F, P);
    RationalFunction scale = RationalFunction(Q(1, 2)) - RationalFunction(static_cast<long>(k));
    out.certificate.odd += w.to_rf() / (scale * pow(F, k).to_rf());
    P = u - scale.inverse() * w.derivative();
  }
  poly = poly + P;

  // Degree: d(x^m z) = (m x^(m-1) f + x^m f'/2) dx/z.
  const int d = static_cast<int>(c.degree());
  while (poly.degree() >= d - 1) {
    int m = poly.degree() - (d - 1);
    UPoly xm = pow(UPoly::x(x), static_cast<unsigned>(m));
    UPoly rel = RationalFunction(Q(1, 2)) * xm * dF;
    if (m > 0) rel = rel + RationalFunction(m) * pow(UPoly::x(x), static_cast<unsigned>(m - 1)) * F;
    RationalFunction coef = poly.lc() / rel.lc();
    poly = poly - coef * rel;
    out.certificate.odd += coef * xm.to_rf();
  }
  out.cls.coords.assign(c.basis_size(), RationalFunction());
  for (int i = 0; i <= poly.degree(); ++i) out.cls.coords[static_cast<std::size_t>(i)] = poly.coeff(static_cast<std::size_t>(i));

  if (curve_derive(c, out.certificate, x) + representative(c, out.cls) != omega)
    throw std::logic_error("curve_reduce: reduction identity failed");
  return out;
}

namespace {

std::optional<std::vector<RationalFunction>> solve_dependence(const std::vector<CurveClass>& classes, std::size_t m,
                                                              Exec exec) {
  const std::size_t rows = classes[m].coords.size();
  if (m == 0) {
    if (classes[0].is_zero()) return std::vector<RationalFunction>{};
    return std::nullopt;
  }
  RMatrix mat(rows, m);
  std::vector<RationalFunction> rhs(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < m; ++j) mat(i, j) = classes[j].coords[i];
    rhs[i] = -classes[m].coords[i];
  }
  auto sol = linear_solve(mat, rhs, exec);
  if (!sol.consistent) return std::nullopt;
  return sol.particular;
}

}  // namespace

bool curve_dependence_exists(const std::vector<CurveClass>& classes, std::size_t m) {
  if (m >= classes.size()) throw std::out_of_range("curve_dependence_exists: order beyond computed classes");
  return solve_dependence(classes, m, Exec::serial).has_value();
}

std::optional<PicardFuchsResult> picard_fuchs(const CurveSpec& c, std::size_t form, std::size_t max_order,
                                              Exec exec) {
  CurveElement integrand = basis_form(c, form);
  std::vector<CurveElement> derivs{integrand};
  for (std::size_t j = 0; j < max_order; ++j) derivs.push_back(curve_derive(c, derivs.back(), c.t));
  std::vector<CurveReduction> reds(derivs.size());
  parallel_for(derivs.size(), exec, [&](std::size_t j) { reds[j] = curve_reduce(c, derivs[j]); });

  std::vector<CurveClass> classes;
  for (std::size_t m = 0; m <= max_order; ++m) {
    classes.push_back(reds[m].cls);
    auto e = solve_dependence(classes, m, exec);
    if (!e) continue;
    e->push_back(RationalFunction(1));
    CurveElement cert, lhs;
    for (std::size_t j = 0; j <= m; ++j) {
      if ((*e)[j].is_zero()) continue;
      cert += (*e)[j] * reds[j].certificate;
      lhs += (*e)[j] * derivs[j];
    }
    if (lhs != curve_derive(c, cert, c.x)) throw std::logic_error("picard_fuchs: certificate identity failed");
    return PicardFuchsResult{operator_from_dependence(c.t, *e), integrand, cert, classes};
  }
  return std::nullopt;
}

}  // namespace isomono
