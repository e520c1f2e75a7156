#include "isomono/galois.hpp"

#include <algorithm>
#include <stdexcept>

#include "ansatz.hpp"
#include "isomono/derham.hpp"
#include "isomono/errors.hpp"
#include "isomono/factor.hpp"
#include "isomono/linsolve.hpp"
#include "isomono/upoly.hpp"

namespace isomono {

namespace {

// Dense polynomials over Q in an anonymous variable, index = degree.
using QPoly = std::vector<Q>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
  trim(d);
  return d;
}

// Quotient and remainder; b nonzero.
std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  QPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Q(0));
  while (!a.empty() && a.size() >= b.size()) {
    std::size_t shift = a.size() - b.size();
    Q c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
    trim(a);
  }
  trim(q);
  return {q, a};
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

QPoly mul(const QPoly& a, const QPoly& b) {
  if (a.empty() || b.empty()) return {};
  QPoly out(a.size() + b.size() - 1, Q(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// mu (mu - 1) ... (mu - i + 1)
QPoly falling(std::size_t i) {
  QPoly p{Q(1)};
  for (std::size_t j = 0; j < i; ++j) p = mul(p, QPoly{Q(-static_cast<long>(j)), Q(1)});
  return p;
}

std::vector<long> integer_roots(QPoly p) {
  trim(p);
  std::vector<long> out;
  if (p.size() <= 1) return out;
  QPoly g = gcd(p, derivative(p));
  QPoly sf = g.size() > 1 ? divmod(p, g).first : p;
  for (const Q& r : rational_roots(sf))
    if (r.get_den() == 1) out.push_back(r.get_num().get_si());
  return out;
}

QPoly coefficients(const MultiPoly& p, Var t) {
  QPoly out;
  for (const auto& c : p.coefficients_in(t)) out.push_back(c.is_zero() ? Q(0) : c.constant_value());
  trim(out);
  return out;
}

// Valuation of p at c with the lowest nonzero Taylor coefficient.
std::pair<std::size_t, Q> valuation(const QPoly& p, const Q& c) {
  QPoly cur = p;
  for (std::size_t v = 0;; ++v) {
    Q val = 0;
    for (auto it = cur.rbegin(); it != cur.rend(); ++it) val = val * c + *it;
    if (val != 0) return {v, val};
    // Divide by (y - c) with synthetic division.
    QPoly q(cur.size() - 1, Q(0));
    Q carry = 0;
    for (std::size_t i = cur.size(); i-- > 1;) {
      carry = cur[i] + carry * c;
      q[i - 1] = carry;
    }
    cur = std::move(q);
  }
}

}  // namespace

std::vector<RationalFunction> rational_solutions(const LinearDiffOperator& op) {
  const Var t = op.param;
  const std::size_t n = op.order();
  if (n == 0) return {};
  std::vector<RationalFunction> e(n + 1);
  MultiPoly common(1);
  for (std::size_t i = 0; i <= n; ++i) {
    e[i] = op.coefficient(i);
    for (Var v : e[i].variables())
      if (v != t) throw Unsupported("operator coefficient " + e[i].to_string() + " is outside Q(" + var_name(t) + ")");
    common = lcm(common, e[i].den());
  }
  std::vector<QPoly> a(n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    a[i] = coefficients(divide_exact(e[i].num() * common, e[i].den()), t);

  // Poles of solutions lie at roots of the leading coefficient.
  QPoly lead = a[n];
  QPoly g = gcd(lead, derivative(lead));
  QPoly sf = g.size() > 1 ? divmod(lead, g).first : lead;
  std::vector<Q> roots = rational_roots(sf);
  if (roots.size() + 1 < sf.size())
    throw Unsupported("leading coefficient of " + op.to_string() + " has non-rational roots");

  RationalFunction den(1);
  const RationalFunction tr = RationalFunction::variable(t);
  long den_degree = 0;
  for (const Q& c : roots) {
    long sigma = 0;
    bool first = true;
    std::vector<std::pair<std::size_t, std::pair<std::size_t, Q>>> vals;
    for (std::size_t i = 0; i <= n; ++i) {
      if (a[i].empty()) continue;
      auto v = valuation(a[i], c);
      long s = static_cast<long>(v.first) - static_cast<long>(i);
      if (first || s < sigma) sigma = s;
      first = false;
      vals.push_back({i, v});
    }
    QPoly ind;
    for (const auto& [i, v] : vals) {
      if (static_cast<long>(v.first) - static_cast<long>(i) != sigma) continue;
      QPoly term = falling(i);
      for (auto& q : term) q *= v.second;
      if (ind.size() < term.size()) ind.resize(term.size(), Q(0));
      for (std::size_t k = 0; k < term.size(); ++k) ind[k] += term[k];
    }
    long order = 0;
    for (long r : integer_roots(ind)) order = std::max(order, -r);
    if (order > 0) {
      den *= pow(tr - RationalFunction(c), static_cast<int>(order));
      den_degree += order;
    }
  }

  // Exponent at infinity.
  long delta = 0;
  bool first = true;
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i].empty()) continue;
    long s = static_cast<long>(a[i].size()) - 1 - static_cast<long>(i);
    if (first || s > delta) delta = s;
    first = false;
  }
  QPoly ind;
  for (std::size_t i = 0; i <= n; ++i) {
    if (a[i].empty() || static_cast<long>(a[i].size()) - 1 - static_cast<long>(i) != delta) continue;
    QPoly term = falling(i);
    for (auto& q : term) q *= a[i].back();
    if (ind.size() < term.size()) ind.resize(term.size(), Q(0));
    for (std::size_t k = 0; k < term.size(); ++k) ind[k] += term[k];
  }
  auto inf_roots = integer_roots(ind);
  if (inf_roots.empty()) return {};
  long bound = *std::max_element(inf_roots.begin(), inf_roots.end()) + den_degree;
  if (bound < 0) return {};

  // p / den with deg p <= bound.
  const std::size_t unknowns = static_cast<std::size_t>(bound) + 1;
  std::vector<RationalFunction> images(unknowns);
  MultiPoly lden(1);
  for (std::size_t k = 0; k < unknowns; ++k) {
    images[k] = op.apply(pow(tr, static_cast<int>(k)) / den);
    lden = lcm(lden, images[k].den());
  }
  std::map<Monomial, SparseQSystem::Row> rows;
  for (std::size_t k = 0; k < unknowns; ++k) {
    if (images[k].is_zero()) continue;
    MultiPoly scaled = images[k].num() * divide_exact(lden, images[k].den());
    for (const auto& term : scaled.terms()) rows[term.mono][k] = term.coeff;
  }
  SparseQSystem sys(unknowns);
  for (auto& [m, row] : rows) sys.add_equation(std::move(row), Q(0));
  auto sol = sys.solve();
  std::vector<RationalFunction> out;
  for (const auto& vec : sol.nullspace) {
    RationalFunction u;
    for (std::size_t k = 0; k < unknowns; ++k)
      if (vec[k] != 0) u += RationalFunction(vec[k]) * pow(tr, static_cast<int>(k));
    u /= den;
    if (!op.apply(u).is_zero()) throw std::logic_error("rational_solutions: returned solution fails");
    out.push_back(u);
  }
  return out;
}

ConnectionSystem companion_system(const LinearDiffOperator& op, const TowerElement& b, const TowerElement& a,
                                  std::shared_ptr<const Tower> field) {
  const std::size_t n = op.order();
  if (n == 0) throw std::invalid_argument("companion_system: operator of order 0");
  auto principal = field->principal();
  if (!principal) throw PreconditionFailed("companion_system: field has no principal derivation");
  const std::string tsym = var_name(op.param);
  field->symbol(tsym);
  RMatrix ax(n + 1, n + 1), at(n + 1, n + 1);
  TowerElement cur = b;
  for (std::size_t i = 1; i <= n; ++i) {
    ax(i, 0) = cur;
    if (i < n) cur = field->derive(cur, tsym);
  }
  for (std::size_t i = 1; i < n; ++i) at(i, i + 1) = RationalFunction(1);
  at(n, 0) = a;
  for (std::size_t j = 0; j < n; ++j) at(n, j + 1) = op.c[j];
  ConnectionSystem s(std::move(field), n + 1);
  s.set(*principal, std::move(ax));
  s.set(tsym, std::move(at));
  return s;
}

const char* to_string(GaloisDescriptor::Verdict v) {
  return v == GaloisDescriptor::Verdict::constant ? "constant" : "nonconstant-over-k";
}

GaloisDescriptor galois_descriptor(const LinearDiffOperator& op, std::string source, bool minimal) {
  GaloisDescriptor d;
  d.op = op;
  d.solutions = rational_solutions(op);
  d.verdict = d.solutions.size() == op.order() ? GaloisDescriptor::Verdict::constant
                                               : GaloisDescriptor::Verdict::nonconstant_over_k;
  d.source = std::move(source);
  d.minimality_certified = minimal;
  return d;
}

std::optional<GaloisDescriptor> galois_descriptor_rational(const RationalFunction& b, Var x, Var t,
                                                           std::size_t max_order, Exec exec) {
  auto tel = telescoper(b, x, t, max_order, exec);
  if (!tel) return std::nullopt;
  return galois_descriptor(tel->op, "rational", true);
}

std::optional<GaloisDescriptor> galois_descriptor_curve(const CurveSpec& c, std::size_t form, std::size_t max_order,
                                                        Exec exec) {
  auto pf = picard_fuchs(c, form, max_order, exec);
  if (!pf) return std::nullopt;
  return galois_descriptor(pf->op, "curve", true);
}

GaloisDescriptor galois_descriptor_tower(const Tower& field, const TowerElement& b, const LinearDiffOperator& op,
                                         const TowerElement& a) {
  auto principal = field.principal();
  if (!principal) throw PreconditionFailed("tower has no principal derivation");
  const std::string tsym = var_name(op.param);
  auto lhs = op.apply(b, [&](const RationalFunction& f) { return field.derive(f, tsym); });
  if (lhs != field.derive(a, *principal))
    throw PreconditionFailed("identity D(b) = d_x(a) does not hold in the tower");
  return galois_descriptor(op, "tower", false);
}

DerivationRebase DerivationRebase::inverse() const {
  auto inv = isomono::inverse(lambda);
  if (!inv) throw SingularRebase();
  return {to, from, *inv};
}

ConnectionSystem rebase_derivations(const ConnectionSystem& s, const DerivationRebase& r) {
  const std::size_t k = r.from.size();
  if (r.to.size() != k || r.lambda.rows() != k || r.lambda.cols() != k)
    throw std::invalid_argument("rebase_derivations: shape mismatch");
  if (!isomono::inverse(r.lambda)) throw SingularRebase();
  for (const auto& f : r.from) s.matrix(f);

  auto field = std::make_shared<Tower>(s.field());
  for (std::size_t i = 0; i < k; ++i) {
    std::map<Var, RationalFunction> expansion;
    std::map<std::string, TowerElement> coeffs;
    bool principal = true;
    for (std::size_t j = 0; j < k; ++j) {
      const RationalFunction& l = r.lambda(i, j);
      if (l.is_zero()) continue;
      coeffs.emplace(r.from[j], l);
      const auto& sym = field->symbol(r.from[j]);
      if (sym.kind != VarKind::principal) principal = false;
      for (const auto& [v, c] : sym.expansion) expansion[v] += l * c;
    }
    std::erase_if(expansion, [](const auto& kv) { return kv.second.is_zero(); });
    if (field->has_symbol(r.to[i])) {
      auto existing = field->symbol(r.to[i]).expansion;
      std::erase_if(existing, [](const auto& kv) { return kv.second.is_zero(); });
      if (existing != expansion)
        throw PreconditionFailed("derivation '" + r.to[i] + "' already exists with a different expansion");
    } else {
      field->add_combination(r.to[i], principal ? VarKind::principal : VarKind::parametric, coeffs);
    }
  }

  ConnectionSystem out(field, s.size());
  for (const auto& sym : s.symbols())
    if (std::find(r.from.begin(), r.from.end(), sym) == r.from.end()) out.set(sym, s.matrix(sym));
  for (std::size_t i = 0; i < k; ++i) {
    RMatrix m(s.size(), s.size());
    for (std::size_t j = 0; j < k; ++j)
      if (!r.lambda(i, j).is_zero()) m += r.lambda(i, j) * s.matrix(r.from[j]);
    out.set(r.to[i], std::move(m));
  }
  return out;
}

HorizontalSections horizontal_sections(const ConnectionSystem& s, const std::vector<std::string>& symbols,
                                       unsigned degree_bound, Exec exec) {
  const Tower& field = s.field();
  const std::size_t n = s.size();
  std::vector<Var> coords;
  for (const auto& name : field.coordinate_names()) coords.push_back(VariableRegistry::global().require(name));

  MultiPoly q(1);
  for (const auto& sym : symbols)
    for (const auto& e : s.matrix(sym).data()) q = lcm(q, detail::restricted_part(e.den(), coords));
  auto monos = detail::monomials_up_to(coords, degree_bound + q.total_degree());
  const std::size_t per = monos.size();
  const std::size_t unknowns = n * per;

  // images[u][s][r]: row r of (d_s - A_s) applied to unknown u.
  std::vector<std::vector<std::vector<RationalFunction>>> images(unknowns);
  parallel_for(unknowns, exec, [&](std::size_t u) {
    const std::size_t k = u / per;
    RationalFunction m(MultiPoly::term(monos[u % per], Q(1)), q);
    for (const auto& sym : symbols) {
      const RMatrix& A = s.matrix(sym);
      std::vector<RationalFunction> col(n);
      for (std::size_t r = 0; r < n; ++r) col[r] = -(A(r, k) * m);
      col[k] += field.derive(m, sym);
      images[u].push_back(std::move(col));
    }
  });

  SparseQSystem sys(unknowns);
  for (std::size_t si = 0; si < symbols.size(); ++si)
    for (std::size_t r = 0; r < n; ++r) {
      MultiPoly den(1);
      for (std::size_t u = 0; u < unknowns; ++u) den = lcm(den, images[u][si][r].den());
      std::map<Monomial, SparseQSystem::Row> rows;
      for (std::size_t u = 0; u < unknowns; ++u) {
        const RationalFunction& f = images[u][si][r];
        if (f.is_zero()) continue;
        const MultiPoly scaled = f.num() * divide_exact(den, f.den());
        for (const auto& term : scaled.terms()) rows[term.mono][u] = term.coeff;
      }
      for (auto& [m, row] : rows) sys.add_equation(std::move(row), Q(0));
    }
  auto sol = sys.solve();

  HorizontalSections out;
  out.degree_bound = degree_bound;
  for (const auto& vec : sol.nullspace) {
    std::vector<RationalFunction> y(n);
    for (std::size_t u = 0; u < unknowns; ++u)
      if (vec[u] != 0) y[u / per] += RationalFunction(MultiPoly::term(monos[u % per], vec[u]), q);
    for (const auto& sym : symbols) {
      const RMatrix& A = s.matrix(sym);
      for (std::size_t r = 0; r < n; ++r) {
        RationalFunction rhs;
        for (std::size_t c = 0; c < n; ++c) rhs += A(r, c) * y[c];
        if (field.derive(y[r], sym) != rhs) throw std::logic_error("horizontal_sections: section fails");
      }
    }
    out.basis.push_back(std::move(y));
  }
  return out;
}

}  // namespace isomono
