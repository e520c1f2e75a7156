#include "isomono/upoly.hpp"

#include <stdexcept>

#include "isomono/errors.hpp"

namespace isomono {

UPoly::UPoly(Var v, std::vector<RationalFunction> coeffs) : var_(v), c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UPoly UPoly::from(const MultiPoly& p, Var v) {
  auto cs = p.coefficients_in(v);
  std::vector<RationalFunction> rc;
  rc.reserve(cs.size());
  for (auto& c : cs) rc.emplace_back(std::move(c));
  return UPoly(v, std::move(rc));
}

const RationalFunction& UPoly::coeff(std::size_t i) const {
  static const RationalFunction zero;
  return i < c_.size() ? c_[i] : zero;
}

RationalFunction UPoly::to_rf() const {
  RationalFunction acc;
  auto xv = RationalFunction::variable(var_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * xv + c_[i];
  return acc;
}

MultiPoly UPoly::to_primitive_multipoly() const {
  if (c_.empty()) return {};
  MultiPoly den(Q(1));
  for (const auto& c : c_) den = lcm(den, c.den());
  std::vector<MultiPoly> cs;
  for (const auto& c : c_) cs.push_back(c.num() * divide_exact(den, c.den()));
  MultiPoly p = MultiPoly::from_coefficients(var_, cs);
  return divide_exact(p, content_in(p, var_)).monic();
}

UPoly UPoly::derivative() const {
  std::vector<RationalFunction> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * RationalFunction(static_cast<long>(i)));
  return UPoly(var_, std::move(d));
}

UPoly UPoly::integral() const {
  std::vector<RationalFunction> d(c_.size() + 1);
  for (std::size_t i = 0; i < c_.size(); ++i) d[i + 1] = c_[i] * RationalFunction(Q(1, static_cast<long>(i + 1)));
  return UPoly(var_, std::move(d));
}

RationalFunction UPoly::evaluate(const RationalFunction& at) const {
  RationalFunction acc;
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * at + c_[i];
  return acc;
}

UPoly UPoly::shift(const RationalFunction& at) const {
  // Horner with the linear polynomial (var + at).
  UPoly lin(var_, {at, RationalFunction(1)});
  UPoly acc(var_);
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * lin + UPoly::constant(var_, c_[i]);
  return acc;
}

UPoly UPoly::monic() const {
  if (c_.empty()) return *this;
  return lc().inverse() * *this;
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<RationalFunction> r(std::max(a.c_.size(), b.c_.size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
  return UPoly(a.var_, std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly(a.var_);
  std::vector<RationalFunction> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j].is_zero()) continue;
      r[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return UPoly(a.var_, std::move(r));
}

UPoly operator*(const RationalFunction& s, const UPoly& a) {
  std::vector<RationalFunction> r;
  r.reserve(a.c_.size());
  for (const auto& c : a.c_) r.push_back(s * c);
  return UPoly(a.var_, std::move(r));
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw ZeroDenominator();
  std::vector<RationalFunction> r = a.coeffs();
  int db = b.degree();
  if (a.degree() < db) return {UPoly(a.var()), a};
  std::vector<RationalFunction> q(a.degree() - db + 1);
  RationalFunction inv = b.lc().inverse();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i].is_zero()) continue;
    RationalFunction f = r[i] * inv;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j)
      if (!b.coeff(j).is_zero()) r[i - db + j] -= f * b.coeff(j);
  }
  r.resize(db);
  return {UPoly(a.var(), std::move(q)), UPoly(a.var(), std::move(r))};
}

UPoly operator%(const UPoly& a, const UPoly& b) { return divmod(a, b).second; }

UPoly pow(const UPoly& p, unsigned e) {
  UPoly r = UPoly::constant(p.var(), RationalFunction(1));
  for (unsigned i = 0; i < e; ++i) r = r * p;
  return r;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  // Route through the multivariate gcd, which keeps coefficient growth down.
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  MultiPoly g = gcd(a.to_primitive_multipoly(), b.to_primitive_multipoly());
  return UPoly::from(g, a.var()).monic();
}

std::pair<UPoly, UPoly> solve_bezout(const UPoly& a, const UPoly& b, const UPoly& c) {
  Var v = a.var();
  auto exact_quotient = [](const UPoly& n, const UPoly& d) {
    auto [q, r] = divmod(n, d);
    if (!r.is_zero()) throw std::invalid_argument("solve_bezout: gcd does not divide the right-hand side");
    return q;
  };
  if (a.is_zero()) return {UPoly(v), exact_quotient(c, b)};
  // Half-extended Euclid with monic remainders, tracking s0 * a = r0 mod b.
  RationalFunction ia = a.lc().inverse();
  UPoly r0 = ia * a, s0 = UPoly::constant(v, ia), s1(v);
  UPoly r1 = b.is_zero() ? UPoly(v) : b.lc().inverse() * b;
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    UPoly s2 = s0 - q * s1;
    if (!r.is_zero()) {
      RationalFunction ir = r.lc().inverse();
      r = ir * r;
      s2 = ir * s2;
    }
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  UPoly s = s0 * exact_quotient(c, r0);
  if (b.is_zero()) return {s, UPoly(v)};
  s = divmod(s, b).second;
  return {s, exact_quotient(c - s * a, b)};
}

std::pair<UPoly, UPoly> as_fraction(const RationalFunction& f, Var v) {
  UPoly num = UPoly::from(f.num(), v);
  UPoly den = UPoly::from(f.den(), v);
  RationalFunction inv = den.lc().inverse();
  return {inv * num, inv * den};
}

}  // namespace isomono
