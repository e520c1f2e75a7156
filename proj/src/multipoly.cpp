#include "isomono/multipoly.hpp"

#include <algorithm>
#include <iterator>
#include <optional>
#include <sstream>
#include <type_traits>

#include "isomono/errors.hpp"

namespace isomono {

std::string to_string(const Q& q) { return q.get_str(); }

// ---------------------------------------------------------------- Monomial

Monomial Monomial::of(Var v, std::uint32_t exponent) {
  Monomial m;
  if (exponent == 0) return m;
  m.exps_.assign(v.id + 1, 0);
  m.exps_[v.id] = exponent;
  m.total_ = exponent;
  return m;
}

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  const auto& longer = exps_.size() >= other.exps_.size() ? exps_ : other.exps_;
  const auto& shorter = exps_.size() >= other.exps_.size() ? other.exps_ : exps_;
  r.exps_ = longer;
  for (std::size_t i = 0; i < shorter.size(); ++i) r.exps_[i] += shorter[i];
  r.total_ = total_ + other.total_;
  return r;
}

bool Monomial::divisible_by(const Monomial& other) const {
  if (other.total_ > total_ || other.exps_.size() > exps_.size()) return false;
  for (std::size_t i = 0; i < other.exps_.size(); ++i)
    if (other.exps_[i] > exps_[i]) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r;
  r.exps_ = exps_;
  for (std::size_t i = 0; i < other.exps_.size(); ++i) r.exps_[i] -= other.exps_[i];
  r.total_ = total_ - other.total_;
  r.trim();
  return r;
}

Monomial Monomial::with_exponent(Var v, std::uint32_t e) const {
  Monomial r = *this;
  if (r.exps_.size() <= v.id) r.exps_.resize(v.id + 1, 0);
  r.total_ = r.total_ - r.exps_[v.id] + e;
  r.exps_[v.id] = e;
  r.trim();
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  std::size_t n = std::min(a.exps_.size(), b.exps_.size());
  r.exps_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.exps_[i] = std::min(a.exps_[i], b.exps_[i]);
    r.total_ += r.exps_[i];
  }
  r.trim();
  return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.total_ != b.total_) return a.total_ <=> b.total_;
  std::size_t n = std::max(a.exps_.size(), b.exps_.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t ea = i < a.exps_.size() ? a.exps_[i] : 0;
    std::uint32_t eb = i < b.exps_.size() ? b.exps_[i] : 0;
    if (ea != eb) return ea <=> eb;
  }
  return std::strong_ordering::equal;
}

// --------------------------------------------------------------- MultiPoly

MultiPoly::MultiPoly(const Q& c) {
  if (c != 0) terms_.push_back({Monomial{}, c});
}

MultiPoly MultiPoly::variable(Var v) { return term(Monomial::of(v), Q(1)); }

MultiPoly MultiPoly::term(const Monomial& m, const Q& c) {
  MultiPoly p;
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

MultiPoly MultiPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono > b.mono; });
  MultiPoly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

Q MultiPoly::constant_value() const {
  if (terms_.empty()) return Q(0);
  return terms_[0].coeff;
}

Q MultiPoly::constant_term() const {
  if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
  return Q(0);
}

std::uint32_t MultiPoly::total_degree() const { return terms_.empty() ? 0 : terms_.front().mono.total_degree(); }

std::uint32_t MultiPoly::degree(Var v) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.exponent(v));
  return d;
}

bool MultiPoly::contains(Var v) const {
  for (const auto& t : terms_)
    if (t.mono.exponent(v) > 0) return true;
  return false;
}

std::vector<Var> MultiPoly::variables() const {
  std::size_t width = 0;
  for (const auto& t : terms_) width = std::max(width, t.mono.width());
  std::vector<bool> seen(width, false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < t.mono.width(); ++i)
      if (t.mono.exponents()[i] > 0) seen[i] = true;
  std::vector<Var> out;
  for (std::size_t i = 0; i < width; ++i)
    if (seen[i]) out.push_back(Var{static_cast<std::uint32_t>(i)});
  return out;
}

MultiPoly MultiPoly::derivative(Var v) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    auto e = t.mono.exponent(v);
    if (e == 0) continue;
    out.push_back({t.mono.with_exponent(v, e - 1), t.coeff * e});
  }
  return from_terms(std::move(out));
}

std::vector<MultiPoly> MultiPoly::coefficients_in(Var v) const {
  std::vector<std::vector<Term>> buckets(degree(v) + 1);
  for (const auto& t : terms_) {
    auto e = t.mono.exponent(v);
    buckets[e].push_back({t.mono.with_exponent(v, 0), t.coeff});
  }
  std::vector<MultiPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(std::move(b)));
  return out;
}

MultiPoly MultiPoly::from_coefficients(Var v, const std::vector<MultiPoly>& coeffs) {
  std::vector<Term> out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    auto m = Monomial::of(v, static_cast<std::uint32_t>(i));
    for (const auto& t : coeffs[i].terms_) out.push_back({t.mono * m, t.coeff});
  }
  return from_terms(std::move(out));
}

MultiPoly MultiPoly::substitute(Var v, const MultiPoly& value) const {
  if (!contains(v)) return *this;
  auto coeffs = coefficients_in(v);
  MultiPoly acc = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) {
    acc *= value;
    acc += coeffs[i];
  }
  return acc;
}

MultiPoly MultiPoly::truncate(std::uint32_t max_degree) const {
  MultiPoly p;
  for (const auto& t : terms_)
    if (t.mono.total_degree() <= max_degree) p.terms_.push_back(t);
  return p;
}

MultiPoly MultiPoly::homogeneous_part(std::uint32_t degree) const {
  MultiPoly p;
  for (const auto& t : terms_)
    if (t.mono.total_degree() == degree) p.terms_.push_back(t);
  return p;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

namespace {

// Merge of two descending term lists with sign applied to the second.
// Terms of a are moved out; terms of b are moved when B is an rvalue vector.
template <class B>
std::vector<MultiPoly::Term> merge(std::vector<MultiPoly::Term>&& a, B&& b, bool negate_b) {
  std::vector<MultiPoly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      if constexpr (std::is_rvalue_reference_v<B&&>)
        out.push_back(std::move(b[j++]));
      else
        out.push_back(b[j++]);
      if (negate_b) mpq_neg(out.back().coeff.get_mpq_t(), out.back().coeff.get_mpq_t());
    } else {
      if (negate_b)
        a[i].coeff -= b[j].coeff;
      else
        a[i].coeff += b[j].coeff;
      if (a[i].coeff != 0) out.push_back(std::move(a[i]));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  if (&o == this) return *this *= Q(2);
  terms_ = merge(std::move(terms_), o.terms_, false);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  if (o.terms_.empty()) return *this;
  if (&o == this) {
    terms_.clear();
    return *this;
  }
  terms_ = merge(std::move(terms_), o.terms_, true);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.size() == 1) return b.mul_monomial(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.size() == 1) return a.mul_monomial(b.terms_[0].mono, b.terms_[0].coeff);
  // Monomial shifts keep the order, so each row is sorted; merge pairwise.
  const MultiPoly& s = a.size() <= b.size() ? a : b;
  const MultiPoly& l = a.size() <= b.size() ? b : a;
  std::vector<std::vector<MultiPoly::Term>> rows;
  rows.reserve(s.size());
  for (const auto& t : s.terms_) rows.push_back(l.mul_monomial(t.mono, t.coeff).terms_);
  while (rows.size() > 1) {
    std::size_t k = 0;
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2)
      rows[k++] = merge(std::move(rows[i]), std::move(rows[i + 1]), false);
    if (rows.size() % 2 == 1) rows[k++] = std::move(rows.back());
    rows.resize(k);
  }
  MultiPoly out;
  out.terms_ = std::move(rows.front());
  return out;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Q& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

MultiPoly MultiPoly::mul_monomial(const Monomial& m, const Q& c) const {
  MultiPoly p;
  if (c == 0) return p;
  p.terms_.reserve(terms_.size());
  for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
  return p;
}

MultiPoly MultiPoly::monic() const {
  if (terms_.empty()) return *this;
  Q inv = 1 / terms_[0].coeff;
  MultiPoly p = *this;
  p *= inv;
  return p;
}

Q MultiPoly::content() const {
  if (terms_.empty()) return Q(0);
  mpz_class num = 0, den = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Q c(num, den);
  c.canonicalize();
  return c;
}

std::strong_ordering operator<=>(const MultiPoly& a, const MultiPoly& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].mono <=> b.terms_[i].mono; c != 0) return c;
    int k = cmp(a.terms_[i].coeff, b.terms_[i].coeff);
    if (k != 0) return k < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Q c = t.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    std::ostringstream mono;
    bool first_factor = true;
    const auto& e = t.mono.exponents();
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!first_factor) mono << '*';
      first_factor = false;
      mono << var_name(Var{static_cast<std::uint32_t>(i)});
      if (e[i] > 1) mono << '^' << e[i];
    }
    if (t.mono.is_one()) {
      os << c.get_str();
    } else if (c == 1) {
      os << mono.str();
    } else {
      os << c.get_str() << '*' << mono.str();
    }
  }
  return os.str();
}

MultiPoly pow(const MultiPoly& p, unsigned e) {
  MultiPoly result(Q(1));
  MultiPoly base = p;
  while (e > 0) {
    if (e & 1U) result *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return result;
}

// ---------------------------------------------------------------- division

bool try_divide(const MultiPoly& a, const MultiPoly& b, MultiPoly& quotient) {
  if (b.is_zero()) throw ZeroDenominator();
  std::vector<MultiPoly::Term> q;
  if (b.is_constant()) {
    quotient = a * (1 / b.constant_value());
    return true;
  }
  if (b.is_monomial()) {
    const auto& bm = b.leading().mono;
    Q inv = 1 / b.leading_coeff();
    for (const auto& t : a.terms()) {
      if (!t.mono.divisible_by(bm)) return false;
      q.push_back({t.mono / bm, t.coeff * inv});
    }
    quotient = MultiPoly::from_terms(std::move(q));
    return true;
  }
  const auto& bt = b.terms();
  const auto& at = a.terms();
  if (at.empty()) {
    quotient = MultiPoly();
    return true;
  }
  // Trailing terms multiply too, so they must divide.
  if (!at.back().mono.divisible_by(bt.back().mono) || at.front().mono.total_degree() < bt.front().mono.total_degree())
    return false;

  // Heap division: entry (i, j) stands for b_i * q_j; each quotient term walks down b.
  struct Entry {
    Monomial mono;
    std::size_t i, j;
  };
  auto less = [](const Entry& x, const Entry& y) { return x.mono < y.mono; };
  std::vector<Entry> heap;
  const auto& lb = bt.front();
  const Q inv = 1 / lb.coeff;
  std::size_t k = 0;
  Q c;
  while (k < at.size() || !heap.empty()) {
    const Monomial m = (heap.empty() || (k < at.size() && at[k].mono > heap.front().mono)) ? at[k].mono
                                                                                        : heap.front().mono;
    c = 0;
    if (k < at.size() && at[k].mono == m) c = at[k++].coeff;
    while (!heap.empty() && heap.front().mono == m) {
      std::pop_heap(heap.begin(), heap.end(), less);
      Entry e = std::move(heap.back());
      heap.pop_back();
      c -= bt[e.i].coeff * q[e.j].coeff;
      if (e.i + 1 < bt.size()) {
        e.mono = bt[e.i + 1].mono * q[e.j].mono;
        ++e.i;
        heap.push_back(std::move(e));
        std::push_heap(heap.begin(), heap.end(), less);
      }
    }
    if (c == 0) continue;
    if (!m.divisible_by(lb.mono)) return false;
    q.push_back({m / lb.mono, c * inv});
    heap.push_back({bt[1].mono * q.back().mono, 1, q.size() - 1});
    std::push_heap(heap.begin(), heap.end(), less);
  }
  quotient = MultiPoly::from_terms(std::move(q));
  return true;
}

MultiPoly divide_exact(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly q;
  if (!try_divide(a, b, q)) throw InexactDivision();
  return q;
}

// --------------------------------------------------------------------- gcd

namespace {

using UniMP = std::vector<MultiPoly>;  // coefficient i of v^i

int deg(const UniMP& p) {
  for (std::size_t i = p.size(); i-- > 0;)
    if (!p[i].is_zero()) return static_cast<int>(i);
  return -1;
}

void normalize(UniMP& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UniMP prem(UniMP a, const UniMP& b) {
  int n = deg(b);
  int e = deg(a) - n + 1;
  const MultiPoly& lb = b[n];
  while (deg(a) >= n) {
    int da = deg(a);
    MultiPoly la = a[da];
    for (auto& c : a) c *= lb;
    for (int i = 0; i <= n; ++i) a[i + da - n] -= la * b[i];
    normalize(a);
    --e;
  }
  if (e > 0) {
    auto f = pow(lb, static_cast<unsigned>(e));
    for (auto& c : a) c *= f;
  }
  normalize(a);
  return a;
}


// Evaluation-homomorphism coprimality test: maps every variable other than
// the main one to a fixed pseudo-random residue modulo a prime and runs
// Euclid there. A constant image gcd with nonvanishing leading coefficients
// proves the primitive parts coprime; anything else is inconclusive.
constexpr std::uint64_t kPrime = 2147483647ULL;

std::uint64_t mod_pow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  b %= kPrime;
  while (e) {
    if (e & 1U) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1U;
  }
  return r;
}

bool image_of(const Q& q, std::uint64_t& out) {
  std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), kPrime);
  if (d == 0) return false;
  std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), kPrime);
  out = n * mod_pow(d, kPrime - 2) % kPrime;
  return true;
}

bool image_of(const MultiPoly& p, std::uint64_t& out) {
  out = 0;
  for (const auto& t : p.terms()) {
    std::uint64_t c;
    if (!image_of(t.coeff, c)) return false;
    const auto& e = t.mono.exponents();
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) c = c * mod_pow(0x9E3779B1ULL * (i + 7) % kPrime, e[i]) % kPrime;
    out = (out + c) % kPrime;
  }
  return true;
}

bool image_of(const UniMP& p, std::vector<std::uint64_t>& out) {
  out.assign(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!image_of(p[i], out[i])) return false;
  return true;
}

void trim_mod(std::vector<std::uint64_t>& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Degree of the image gcd, or -1 when the image is unusable. With
// nonvanishing leading coefficients it bounds the true gcd degree from above.
int image_gcd_degree(const UniMP& a, const UniMP& b) {
  std::vector<std::uint64_t> x, y;
  if (!image_of(a, x) || !image_of(b, y)) return -1;
  std::size_t da = x.size(), db = y.size();
  trim_mod(x);
  trim_mod(y);
  if (x.size() != da || y.size() != db) return -1;  // leading coefficient vanished
  while (!y.empty()) {
    std::uint64_t inv = mod_pow(y.back(), kPrime - 2);
    while (x.size() >= y.size() && !x.empty()) {
      std::uint64_t f = x.back() * inv % kPrime;
      std::size_t shift = x.size() - y.size();
      for (std::size_t i = 0; i < y.size(); ++i) x[shift + i] = (x[shift + i] + kPrime - f * y[i] % kPrime) % kPrime;
      trim_mod(x);
    }
    std::swap(x, y);
  }
  return static_cast<int>(x.size()) - 1;
}

// Heuristic gcd over Z: evaluate one variable at a large integer, recurse,
// rebuild by balanced xi-adic expansion and confirm by trial division.
mpz_class max_norm(const MultiPoly& p) {
  mpz_class m = 0;
  for (const auto& t : p.terms()) m = std::max<mpz_class>(m, abs(t.coeff.get_num()));
  return m;
}

MultiPoly evaluate_at(const MultiPoly& p, Var v, const mpz_class& xi) {
  std::vector<MultiPoly::Term> out;
  out.reserve(p.size());
  mpz_class power;
  for (const auto& t : p.terms()) {
    mpz_pow_ui(power.get_mpz_t(), xi.get_mpz_t(), t.mono.exponent(v));
    out.push_back({t.mono.with_exponent(v, 0), Q(t.coeff.get_num() * power)});
  }
  return MultiPoly::from_terms(std::move(out));
}

MultiPoly rebuild(const MultiPoly& g, Var v, const mpz_class& xi) {
  std::vector<MultiPoly::Term> out;
  const mpz_class half = xi / 2;
  mpz_class r;
  for (const auto& t : g.terms()) {
    mpz_class c = t.coeff.get_num();
    for (std::uint32_t i = 0; c != 0; ++i) {
      mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
      if (r > half) r -= xi;
      if (r != 0) out.push_back({t.mono.with_exponent(v, i), Q(r)});
      c -= r;
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
    }
  }
  return MultiPoly::from_terms(std::move(out));
}

// Scaled by the lcm of the coefficient denominators.
MultiPoly integral(const MultiPoly& p) {
  mpz_class l = 1;
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  return l == 1 ? p : p * Q(l);
}

// Divides out the positive integer content and returns it.
mpz_class remove_content(MultiPoly& p) {
  mpz_class c = 0;
  for (const auto& t : p.terms()) {
    mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.coeff.get_num_mpz_t());
    if (c == 1) return c;
  }
  if (c != 1) p *= Q(1, c);
  return c;
}

// a and b have integer coefficients and are nonzero.
std::optional<MultiPoly> heuristic_gcd(MultiPoly a, MultiPoly b, const std::vector<Var>& vars, std::size_t k) {
  mpz_class ca = remove_content(a), cb = remove_content(b), c;
  mpz_gcd(c.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  if (a.is_constant() || b.is_constant() || k == vars.size()) return MultiPoly(Q(c));
  const Var v = vars[k];
  if (!a.contains(v) && !b.contains(v)) {
    auto g = heuristic_gcd(std::move(a), std::move(b), vars, k + 1);
    if (g && c != 1) *g *= Q(c);
    return g;
  }
  mpz_class xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  for (int attempt = 0; attempt < 6 && mpz_sizeinbase(xi.get_mpz_t(), 2) < 4000; ++attempt) {
    MultiPoly ea = evaluate_at(a, v, xi), eb = evaluate_at(b, v, xi);
    if (!ea.is_zero() && !eb.is_zero()) {
      if (auto g = heuristic_gcd(std::move(ea), std::move(eb), vars, k + 1)) {
        MultiPoly G = rebuild(*g, v, xi), q;
        if (!G.is_zero()) {
          remove_content(G);
          if (try_divide(a, G, q) && try_divide(b, G, q)) return c == 1 ? G : G * Q(c);
        }
      }
    }
    xi = xi * 73794 / 27011;
  }
  return std::nullopt;
}

MultiPoly gcd_of_coefficients(const std::vector<MultiPoly>& coeffs, MultiPoly start) {
  std::vector<const MultiPoly*> order;
  for (const auto& c : coeffs)
    if (!c.is_zero()) order.push_back(&c);
  std::sort(order.begin(), order.end(), [](const MultiPoly* a, const MultiPoly* b) { return a->size() < b->size(); });
  MultiPoly g = std::move(start);
  for (const auto* c : order) {
    g = gcd(g, *c);
    if (g.is_constant()) return MultiPoly(Q(1));
  }
  return g.monic();
}

}  // namespace

MultiPoly content_in(const MultiPoly& p, Var v) {
  if (p.is_zero()) return {};
  auto coeffs = p.coefficients_in(v);
  return gcd_of_coefficients(coeffs, MultiPoly());
}

MultiPoly pseudo_remainder(const MultiPoly& a, const MultiPoly& b, Var v) {
  auto r = prem(a.coefficients_in(v), b.coefficients_in(v));
  return MultiPoly::from_coefficients(v, r);
}

MultiPoly gcd(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MultiPoly(Q(1));
  if (a == b) return a.monic();
  if (a.is_monomial() || b.is_monomial()) {
    const MultiPoly& mono = a.is_monomial() ? a : b;
    const MultiPoly& other = a.is_monomial() ? b : a;
    Monomial g = mono.leading().mono;
    for (const auto& t : other.terms()) {
      g = Monomial::gcd(g, t.mono);
      if (g.is_one()) break;
    }
    return MultiPoly::term(g, Q(1));
  }

  {
    std::vector<Var> vars = a.variables(), vb = b.variables(), all;
    std::set_union(vars.begin(), vars.end(), vb.begin(), vb.end(), std::back_inserter(all));
    if (auto h = heuristic_gcd(integral(a), integral(b), all, 0)) return h->monic();
  }

  auto va = a.variables();
  auto vb = b.variables();
  for (Var v : va)
    if (!std::binary_search(vb.begin(), vb.end(), v)) return gcd_of_coefficients(a.coefficients_in(v), b);
  for (Var v : vb)
    if (!std::binary_search(va.begin(), va.end(), v)) return gcd_of_coefficients(b.coefficients_in(v), a);

  // Same variable set: subresultant PRS in the variable of least degree.
  Var v = va.front();
  std::uint32_t best = ~0U;
  for (Var w : va) {
    std::uint32_t d = std::max(a.degree(w), b.degree(w));
    if (d < best) {
      best = d;
      v = w;
    }
  }
  MultiPoly ca = content_in(a, v);
  MultiPoly cb = content_in(b, v);
  MultiPoly gc = gcd(ca, cb);
  MultiPoly pa = divide_exact(a, ca), pb = divide_exact(b, cb);
  pa *= 1 / pa.content();
  pb *= 1 / pb.content();
  UniMP A = pa.coefficients_in(v);
  UniMP B = pb.coefficients_in(v);
  const int image = image_gcd_degree(A, B);
  if (image == 0) return gc;
  if (deg(A) < deg(B)) {
    std::swap(A, B);
    std::swap(pa, pb);
  }
  // Common case in fraction arithmetic: the smaller one is the gcd.
  MultiPoly q;
  if (image == deg(B) && try_divide(pa, pb, q)) return (gc * pb).monic();

  MultiPoly g(Q(1)), h(Q(1));
  while (true) {
    int delta = deg(A) - deg(B);
    UniMP R = prem(A, B);
    if (R.empty()) break;
    if (deg(R) == 0) return gc;
    A = std::move(B);
    MultiPoly divisor = g * pow(h, static_cast<unsigned>(delta));
    for (auto& c : R) c = divide_exact(c, divisor);
    B = std::move(R);
    g = A[deg(A)];
    if (delta == 0) {
      // h unchanged
    } else if (delta == 1) {
      h = g;
    } else {
      h = divide_exact(pow(g, static_cast<unsigned>(delta)), pow(h, static_cast<unsigned>(delta - 1)));
    }
  }
  MultiPoly G = MultiPoly::from_coefficients(v, B);
  G = divide_exact(G, content_in(G, v));
  return (gc * G).monic();
}

MultiPoly lcm(const MultiPoly& a, const MultiPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return (divide_exact(a, gcd(a, b)) * b).monic();
}

}  // namespace isomono
