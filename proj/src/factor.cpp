#include "isomono/factor.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "isomono/errors.hpp"

namespace isomono {

// ------------------------------------------------------ squarefree factors

std::vector<SquarefreeFactor> squarefree_factor(const MultiPoly& p, Var v) {
  if (p.is_zero()) throw ZeroPolynomial();
  std::vector<SquarefreeFactor> out;
  if (!p.contains(v)) return out;
  MultiPoly a = divide_exact(p, content_in(p, v));
  MultiPoly b = a.derivative(v);
  MultiPoly c = gcd(a, b);
  MultiPoly w = divide_exact(a, c);
  MultiPoly y = divide_exact(b, c);
  MultiPoly z = y - w.derivative(v);
  unsigned i = 1;
  while (w.contains(v)) {
    MultiPoly g = gcd(w, z);
    if (g.contains(v)) out.push_back({g.monic(), i});
    w = divide_exact(w, g);
    y = divide_exact(z, g);
    z = y - w.derivative(v);
    ++i;
  }
  return out;
}

// ---------------------------------------------------------- rational roots

namespace {

using QPoly = std::vector<Q>;  // index = degree

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Q eval(const QPoly& p, const Q& x) {
  Q acc = 0;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

int sign(const Q& q) { return sgn(q); }

QPoly qrem(QPoly a, const QPoly& b) {
  int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
    int da = static_cast<int>(a.size()) - 1;
    Q f = a.back() / b.back();
    for (int j = 0; j <= db; ++j) a[da - db + j] -= f * b[j];
    a.pop_back();
    trim(a);
  }
  return a;
}

QPoly qderiv(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

std::vector<QPoly> sturm_sequence(const QPoly& p) {
  std::vector<QPoly> seq{p, qderiv(p)};
  while (seq.back().size() > 1) {
    QPoly r = qrem(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  return seq;
}

int variations(const std::vector<QPoly>& seq, const Q& x) {
  int count = 0, last = 0;
  for (const auto& s : seq) {
    int sg = sign(eval(s, x));
    if (sg == 0) continue;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

QPoly deflate(const QPoly& p, const Q& r) {
  // Synthetic division by (y - r).
  QPoly q(p.size() - 1);
  Q carry = 0;
  for (std::size_t i = p.size(); i-- > 1;) {
    carry = carry * r + p[i];
    q[i - 1] = carry;
  }
  return q;
}

// One pass of root isolation; returns a root found exactly at a bisection
// point (caller deflates and restarts), or collects candidates.
std::optional<Q> isolate_pass(const QPoly& p, std::vector<Q>& roots) {
  Q lead = abs(p.back());
  Q bound = 0;
  for (std::size_t i = 0; i + 1 < p.size(); ++i) bound = std::max(bound, Q(abs(p[i]) / lead));
  bound += 1;
  // Denominators of rational roots divide the leading coefficient of the
  // primitive integer form.
  mpz_class den = 1;
  for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  mpz_class lc_int = abs(mpz_class(p.back() * den));
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_class ci = mpz_class(c * den);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ci.get_mpz_t());
  }
  lc_int /= g;
  Q resolution(1, 1);
  resolution = Q(mpz_class(1), lc_int);

  auto seq = sturm_sequence(p);
  struct Interval {
    Q lo, hi;
    int vlo, vhi;
  };
  std::vector<Interval> work{{-bound, bound, variations(seq, -bound), variations(seq, bound)}};
  while (!work.empty()) {
    Interval iv = work.back();
    work.pop_back();
    int n = iv.vlo - iv.vhi;
    if (n <= 0) continue;
    if (n > 1) {
      Q mid = (iv.lo + iv.hi) / 2;
      if (eval(p, mid) == 0) return mid;
      int vm = variations(seq, mid);
      work.push_back({iv.lo, mid, iv.vlo, vm});
      work.push_back({mid, iv.hi, vm, iv.vhi});
      continue;
    }
    Q lo = iv.lo, hi = iv.hi;
    int shi = sign(eval(p, hi));
    while (hi - lo >= resolution) {
      Q mid = (lo + hi) / 2;
      Q pm = eval(p, mid);
      if (pm == 0) return mid;
      if (sign(pm) == shi)
        hi = mid;
      else
        lo = mid;
    }
    mpz_class k;
    Q scaled = lo * Q(lc_int);
    mpz_cdiv_q(k.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    Q cand(k, lc_int);
    cand.canonicalize();
    if (cand == lo) cand += resolution;
    if (cand <= hi && eval(p, cand) == 0) roots.push_back(cand);
  }
  return std::nullopt;
}

}  // namespace

std::vector<Q> rational_roots(const std::vector<Q>& coeffs) {
  QPoly p = coeffs;
  trim(p);
  std::vector<Q> roots;
  if (p.size() <= 1) return roots;
  if (p[0] == 0) {
    roots.push_back(0);
    p.erase(p.begin());
  }
  while (p.size() > 1) {
    std::vector<Q> found;
    auto exact = isolate_pass(p, found);
    if (exact) {
      roots.push_back(*exact);
      p = deflate(p, *exact);
      continue;
    }
    roots.insert(roots.end(), found.begin(), found.end());
    break;
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ------------------------------------------------------------ linear roots

namespace {

Q evaluate_at(const MultiPoly& p, const std::map<Var, Q>& point) {
  Q acc = 0;
  for (const auto& t : p.terms()) {
    Q term = t.coeff;
    const auto& e = t.mono.exponents();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Q x = point.at(Var{static_cast<std::uint32_t>(i)});
      mpz_class num, den;
      mpz_pow_ui(num.get_mpz_t(), x.get_num_mpz_t(), e[i]);
      mpz_pow_ui(den.get_mpz_t(), x.get_den_mpz_t(), e[i]);
      term *= Q(num, den);
    }
    acc += term;
  }
  return acc;
}

bool squarefree_q(const QPoly& p) {
  QPoly a = p, b = qderiv(p);
  while (!b.empty()) {
    QPoly r = qrem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.size() == 1;
}

}  // namespace

std::vector<RationalFunction> linear_roots(const MultiPoly& p, Var v) {
  if (p.is_zero()) throw ZeroPolynomial();
  auto coeffs = p.coefficients_in(v);
  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return {};
  if (n == 1) return {RationalFunction(-coeffs[0], coeffs[1])};

  // Monic transform: roots of q(y) = lc^(n-1) p(y / lc) are polynomials in
  // the remaining variables.
  const MultiPoly& lc = coeffs[n];
  std::vector<MultiPoly> q(n + 1);
  for (std::size_t i = 0; i < n; ++i) q[i] = coeffs[i] * pow(lc, static_cast<unsigned>(n - 1 - i));
  q[n] = MultiPoly(Q(1));

  std::vector<Var> params;
  std::uint32_t bound = 0;
  for (const auto& c : q) {
    for (Var w : c.variables())
      if (std::find(params.begin(), params.end(), w) == params.end()) params.push_back(w);
    bound = std::max(bound, c.total_degree());
  }

  auto check = [&](const MultiPoly& r) {
    MultiPoly acc = q[n];
    for (std::size_t i = n; i-- > 0;) acc = acc * r + q[i];
    return acc.is_zero();
  };

  std::vector<RationalFunction> roots;
  std::mt19937 rng(0x5eed);
  bool specialized = false;
  for (int attempt = 0; attempt < 60 && !specialized; ++attempt) {
    int range = 5 + attempt * 3;
    std::uniform_int_distribution<int> dist(-range, range);
    std::map<Var, Q> point;
    for (Var w : params) point[w] = Q(dist(rng));
    QPoly qt(n + 1);
    for (std::size_t i = 0; i <= n; ++i) qt[i] = evaluate_at(q[i], point);
    if (!squarefree_q(qt)) continue;
    specialized = true;

    std::vector<MultiPoly> shifted = q;
    for (Var w : params)
      for (auto& c : shifted) c = c.substitute(w, MultiPoly::variable(w) + MultiPoly(point[w]));
    QPoly dq = qderiv(qt);

    for (const Q& r0 : rational_roots(qt)) {
      Q slope_inv = 1 / eval(dq, r0);
      MultiPoly r(r0);
      for (std::uint32_t k = 1; k <= bound; ++k) {
        MultiPoly acc = shifted[n];
        for (std::size_t i = n; i-- > 0;) acc = (acc * r).truncate(k) + shifted[i].truncate(k);
        MultiPoly h = acc.homogeneous_part(k);
        if (!h.is_zero()) r -= h * slope_inv;
      }
      for (Var w : params) r = r.substitute(w, MultiPoly::variable(w) - MultiPoly(point[w]));
      if (check(r)) roots.emplace_back(r, lc);
    }
  }
  if (!specialized) throw Error("linear_roots: polynomial is not squarefree in " + var_name(v));
  if (roots.size() < n) {
    UPoly rest = UPoly::from(p, v);
    for (const auto& c : roots) rest = divmod(rest, UPoly::linear(v, c)).first;
    throw NonLinearFactor(rest.to_primitive_multipoly().to_string());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ------------------------------------------------------- partial fractions

std::vector<RationalFunction> series_quotient(const UPoly& a, const UPoly& b, std::size_t terms) {
  std::vector<RationalFunction> s(terms);
  RationalFunction inv = b.coeff(0).inverse();
  for (std::size_t k = 0; k < terms; ++k) {
    RationalFunction acc = a.coeff(k);
    for (std::size_t j = 1; j <= k; ++j)
      if (!b.coeff(j).is_zero()) acc -= b.coeff(j) * s[k - j];
    s[k] = acc * inv;
  }
  return s;
}

PartialFractions partial_fractions(const RationalFunction& f, Var v) {
  auto [num, den] = as_fraction(f, v);
  auto [poly, rem] = divmod(num, den);
  PartialFractions out{v, poly, {}};
  if (rem.is_zero()) return out;
  for (const auto& [factor, mult] : squarefree_factor(f.den(), v)) {
    for (const auto& c : linear_roots(factor, v)) {
      auto [cofactor, r] = divmod(den, pow(UPoly::linear(v, c), mult));
      if (!r.is_zero()) throw Error("partial_fractions: inconsistent multiplicity");
      auto s = series_quotient(rem.shift(c), cofactor.shift(c), mult);
      for (std::size_t k = 0; k < mult; ++k)
        if (!s[k].is_zero()) out.terms.push_back({c, static_cast<unsigned>(mult - k), s[k]});
    }
  }
  std::sort(out.terms.begin(), out.terms.end(), [](const PoleTerm& a, const PoleTerm& b) {
    if (a.pole != b.pole) return a.pole < b.pole;
    return a.order < b.order;
  });
  return out;
}

RationalFunction PartialFractions::recombine() const {
  RationalFunction acc = polynomial.to_rf();
  auto x = RationalFunction::variable(var);
  for (const auto& t : terms) acc += t.coefficient / pow(x - t.pole, static_cast<int>(t.order));
  return acc;
}

}  // namespace isomono
