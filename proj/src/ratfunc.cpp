#include "isomono/ratfunc.hpp"

#include <algorithm>

#include "isomono/errors.hpp"

namespace isomono {

RationalFunction RationalFunction::make_reduced(MultiPoly num, MultiPoly den) {
  if (num.is_zero()) return {};
  Q lc = den.leading_coeff();
  if (lc != 1) {
    Q inv = 1 / lc;
    num *= inv;
    den *= inv;
  }
  return {Raw{}, std::move(num), std::move(den)};
}

RationalFunction::RationalFunction(const MultiPoly& num, const MultiPoly& den) : den_(Q(1)) {
  if (den.is_zero()) throw ZeroDenominator();
  if (num.is_zero()) return;
  MultiPoly g = gcd(num, den);
  if (g.is_constant()) {
    *this = make_reduced(num, den);
  } else {
    *this = make_reduced(divide_exact(num, g), divide_exact(den, g));
  }
}

RationalFunction normalize(const MultiPoly& num, const MultiPoly& den) { return {num, den}; }

std::vector<Var> RationalFunction::variables() const {
  auto a = num_.variables();
  auto b = den_.variables();
  std::vector<Var> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

RationalFunction RationalFunction::operator-() const { return {Raw{}, -num_, den_}; }

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) {
    if (a.den_.is_constant()) return {RationalFunction::Raw{}, a.num_ + b.num_, a.den_};
    return {a.num_ + b.num_, a.den_};
  }
  if (a.den_.is_constant() && b.den_.is_constant()) {
    return RationalFunction::make_reduced(a.num_ * b.den_.constant_value() + b.num_ * a.den_.constant_value(),
                                          MultiPoly(a.den_.constant_value() * b.den_.constant_value()));
  }
  MultiPoly g = gcd(a.den_, b.den_);
  if (g.is_constant()) {
    return RationalFunction::make_reduced(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  MultiPoly da = divide_exact(a.den_, g);
  MultiPoly db = divide_exact(b.den_, g);
  MultiPoly n = a.num_ * db + b.num_ * da;
  if (n.is_zero()) return {};
  // Common factors of n and the sum's denominator divide g, possibly to
  // higher powers.
  MultiPoly den = da * b.den_;
  for (MultiPoly h = gcd(n, g); !h.is_constant(); h = gcd(n, g)) {
    n = divide_exact(n, h);
    den = divide_exact(den, h);
    g = divide_exact(g, h);
  }
  return RationalFunction::make_reduced(std::move(n), std::move(den));
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.den_.is_constant() && b.den_.is_constant())
    return RationalFunction::make_reduced(a.num_ * b.num_, a.den_ * b.den_);
  MultiPoly g1 = gcd(a.num_, b.den_);
  MultiPoly g2 = gcd(b.num_, a.den_);
  MultiPoly n1 = g1.is_constant() ? a.num_ : divide_exact(a.num_, g1);
  MultiPoly d2 = g1.is_constant() ? b.den_ : divide_exact(b.den_, g1);
  MultiPoly n2 = g2.is_constant() ? b.num_ : divide_exact(b.num_, g2);
  MultiPoly d1 = g2.is_constant() ? a.den_ : divide_exact(a.den_, g2);
  return RationalFunction::make_reduced(n1 * n2, d1 * d2);
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw ZeroDenominator();
  return make_reduced(den_, num_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }

RationalFunction RationalFunction::derivative(Var v) const {
  if (!num_.contains(v) && !den_.contains(v)) return {};
  if (!den_.contains(v)) return {num_.derivative(v), den_};
  MultiPoly dd = den_.derivative(v);
  MultiPoly g = gcd(den_, dd);
  MultiPoly d_over_g = divide_exact(den_, g);
  MultiPoly m = num_.derivative(v) * d_over_g - num_ * divide_exact(dd, g);
  return {m, den_ * d_over_g};
}

RationalFunction RationalFunction::substitute(Var v, const RationalFunction& value) const {
  if (!contains(v)) return *this;
  if (value.is_polynomial()) {
    MultiPoly pv = value.num_ * (1 / value.den_.constant_value());
    return {num_.substitute(v, pv), den_.substitute(v, pv)};
  }
  auto horner = [&](const MultiPoly& p) {
    auto coeffs = p.coefficients_in(v);
    RationalFunction acc(coeffs.back());
    for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * value + RationalFunction(coeffs[i]);
    return acc;
  };
  return horner(num_) / horner(den_);
}

std::strong_ordering operator<=>(const RationalFunction& a, const RationalFunction& b) {
  if (auto c = a.num_ <=> b.num_; c != 0) return c;
  return a.den_ <=> b.den_;
}

std::string RationalFunction::to_string() const {
  if (den_.is_constant()) {
    if (num_.is_constant()) return num_.constant_value().get_str();
    if (den_.constant_value() == 1) return num_.size() == 1 ? num_.to_string() : "(" + num_.to_string() + ")";
  }
  auto wrap = [](const MultiPoly& p) {
    return (p.size() == 1 && (p.is_constant() || p.leading_coeff() == 1)) ? p.to_string() : "(" + p.to_string() + ")";
  };
  return wrap(num_) + "/" + wrap(den_);
}

RationalFunction pow(const RationalFunction& f, int e) {
  if (e < 0) return pow(f.inverse(), -e);
  return {pow(f.num(), static_cast<unsigned>(e)), pow(f.den(), static_cast<unsigned>(e))};
}

}  // namespace isomono
