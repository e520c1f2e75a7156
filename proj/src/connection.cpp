#include "isomono/connection.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ansatz.hpp"
#include "isomono/errors.hpp"
#include "isomono/linsolve.hpp"

namespace isomono {

ConnectionSystem::ConnectionSystem(std::shared_ptr<const Tower> field, std::size_t n)
    : field_(std::move(field)), n_(n) {
  if (!field_) throw std::invalid_argument("connection system needs a field");
}

void ConnectionSystem::set(const std::string& symbol, RMatrix m) {
  field_->symbol(symbol);
  if (m.rows() != n_ || m.cols() != n_) throw std::invalid_argument("matrix for '" + symbol + "' has the wrong shape");
  mats_[symbol] = std::move(m);
}

const RMatrix& ConnectionSystem::matrix(const std::string& symbol) const {
  auto it = mats_.find(symbol);
  if (it == mats_.end()) throw UnknownDerivation(symbol);
  return it->second;
}

std::vector<std::string> ConnectionSystem::symbols() const {
  std::vector<std::string> out;
  for (const auto& name : field_->symbol_names())
    if (mats_.count(name)) out.push_back(name);
  return out;
}

std::optional<std::string> ConnectionSystem::principal() const {
  auto p = field_->principal();
  if (p && has(*p)) return p;
  return std::nullopt;
}

RMatrix ConnectionSystem::derive(const RMatrix& m, const std::string& symbol, Exec exec) const {
  return m.map([&](const RationalFunction& e) { return field_->derive(e, symbol); }, exec);
}

RMatrix defect(const ConnectionSystem& s, const std::string& u, const std::string& v) {
  const RMatrix& au = s.matrix(u);
  const RMatrix& av = s.matrix(v);
  return s.derive(av, u) - s.derive(au, v) - commutator(au, av);
}

bool IntegrabilityReport::integrable() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const PairVerdict& p) { return p.flat; });
}

const PairVerdict* IntegrabilityReport::find(const std::string& a, const std::string& b) const {
  for (const auto& p : pairs)
    if ((p.u == a && p.v == b) || (p.u == b && p.v == a)) return &p;
  return nullptr;
}

IntegrabilityReport check_integrability(const ConnectionSystem& s, CheckMode mode, Exec exec) {
  IntegrabilityReport report{mode, {}};
  auto syms = s.symbols();
  if (mode == CheckMode::pairwise) {
    auto p = s.principal();
    if (!p) throw PreconditionFailed("pairwise check needs a principal derivation in the system");
    for (const auto& sym : syms)
      if (sym != *p) report.pairs.push_back({sym, *p, false, {}});
  } else {
    for (std::size_t i = 0; i < syms.size(); ++i)
      for (std::size_t j = i + 1; j < syms.size(); ++j) report.pairs.push_back({syms[j], syms[i], false, {}});
  }
  parallel_for(report.pairs.size(), exec, [&](std::size_t k) {
    auto& pv = report.pairs[k];
    pv.defect = defect(s, pv.u, pv.v);
    pv.flat = pv.defect.is_zero();
  });
  return report;
}

ConnectionSystem gauge(const ConnectionSystem& s, const RMatrix& g) {
  if (g.rows() != s.size() || !g.is_square()) throw std::invalid_argument("gauge matrix has the wrong shape");
  auto gi = inverse(g);
  if (!gi) throw SingularGauge();
  ConnectionSystem out(s.field_ptr(), s.size());
  for (const auto& sym : s.symbols()) out.set(sym, g * s.matrix(sym) * *gi + s.derive(g, sym) * *gi);
  return out;
}

std::vector<RMatrix> centralizer(const std::vector<RMatrix>& mats, Exec exec) {
  if (mats.empty()) throw std::invalid_argument("centralizer of an empty list");
  const std::size_t n = mats.front().rows();
  const std::size_t unknowns = n * n;
  RMatrix sys(mats.size() * unknowns, unknowns);
  std::size_t row = 0;
  for (const auto& m : mats) {
    if (m.rows() != n || !m.is_square()) throw std::invalid_argument("centralizer: shape mismatch");
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c, ++row)
        for (std::size_t k = 0; k < n; ++k) {
          // (XM - MX)(r, c) = sum_k X(r,k) M(k,c) - M(r,k) X(k,c)
          sys(row, r * n + k) += m(k, c);
          sys(row, k * n + c) -= m(r, k);
        }
  }
  auto sol = linear_solve(sys, std::vector<RationalFunction>(sys.rows()), exec);
  RMatrix basis(sol.nullspace.size(), unknowns);
  for (std::size_t i = 0; i < sol.nullspace.size(); ++i)
    for (std::size_t j = 0; j < unknowns; ++j) basis(i, j) = sol.nullspace[i][j];
  auto pivots = rref(basis, exec);
  std::vector<RMatrix> out;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    RMatrix x(n, n);
    for (std::size_t j = 0; j < unknowns; ++j) x(j / n, j % n) = basis(i, j);
    out.push_back(std::move(x));
  }
  return out;
}

RMatrix bianchi_sum(const ConnectionSystem& s, const std::string& u, const std::string& v, const std::string& w) {
  for (const auto& [a, b] : {std::pair{u, v}, std::pair{v, w}, std::pair{w, u}})
    if (!s.field().symbols_commute(a, b)) throw PreconditionFailed("derivations " + a + " and " + b + " do not commute");
  RMatrix acc(s.size(), s.size());
  const std::string cyc[3][3] = {{u, v, w}, {v, w, u}, {w, u, v}};
  for (const auto& c : cyc) {
    RMatrix h = defect(s, c[1], c[2]);
    acc += s.derive(h, c[0]) - commutator(s.matrix(c[0]), h);
  }
  return acc;
}

ConnectionSystem equivalence_move(const ConnectionSystem& s, const EquivalenceMove& a) {
  ConnectionSystem out = s;
  for (const auto& [sym, m] : a) {
    if (!s.has(sym)) throw UnknownDerivation(sym);
    out.set(sym, s.matrix(sym) + m);
  }
  return out;
}

RMatrix moved_defect(const ConnectionSystem& s, const EquivalenceMove& a, const std::string& u, const std::string& v) {
  const std::size_t n = s.size();
  auto get = [&](const std::string& sym) {
    auto it = a.find(sym);
    return it == a.end() ? RMatrix(n, n) : it->second;
  };
  RMatrix au = get(u), av = get(v);
  return defect(s, u, v) + s.derive(av, u) - s.derive(au, v) - commutator(s.matrix(u), av) -
         commutator(au, s.matrix(v)) - commutator(au, av);
}

// ------------------------------------------------------------------ flatten

namespace {

std::vector<RMatrix> default_constraint(std::size_t n) {
  std::vector<RMatrix> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.push_back(RMatrix::unit(n, i, j));
  return out;
}

// Drops matrices dependent on earlier ones.
std::vector<RMatrix> independent(const std::vector<RMatrix>& mats) {
  std::vector<RMatrix> out;
  for (const auto& m : mats) {
    RMatrix stack(out.size() + 1, m.rows() * m.cols());
    for (std::size_t i = 0; i <= out.size(); ++i) {
      const RMatrix& src = i < out.size() ? out[i] : m;
      for (std::size_t k = 0; k < src.data().size(); ++k) stack(i, k) = src.data()[k];
    }
    if (rank(stack) == out.size() + 1) out.push_back(m);
  }
  return out;
}

std::optional<std::vector<RationalFunction>> coordinates_in(const std::vector<RMatrix>& basis, const RMatrix& h,
                                                             Exec exec) {
  const std::size_t n2 = h.rows() * h.cols();
  RMatrix sys(n2, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t k = 0; k < n2; ++k) sys(k, j) = basis[j].data()[k];
  auto sol = linear_solve(sys, h.data(), exec);
  if (!sol.consistent) return std::nullopt;
  return sol.particular;
}

bool only_coordinates(const RationalFunction& f, const Tower& field) {
  auto coords = field.coordinate_names();
  for (Var v : f.variables())
    if (std::find(coords.begin(), coords.end(), var_name(v)) == coords.end()) return false;
  return true;
}

// Finds a = sum c_i * (m_i / q) * C_j with d_p a + [a, A_p] = h_p for all p.
std::optional<RMatrix> ansatz_step(const ConnectionSystem& s, const std::string& sym,
                                   const std::vector<std::string>& prior, const std::vector<RMatrix>& basis,
                                   unsigned degree, Exec exec) {
  const Tower& field = s.field();
  std::vector<Var> params;
  for (const auto& name : field.coordinate_names())
    if (field.symbol(name).kind == VarKind::parametric) params.push_back(VariableRegistry::global().require(name));

  std::vector<RMatrix> targets;
  for (const auto& p : prior) targets.push_back(defect(s, sym, p));

  MultiPoly q(1);
  auto absorb = [&](const RMatrix& m) {
    for (const auto& e : m.data()) q = lcm(q, detail::restricted_part(e.den(), params));
  };
  for (const auto& t : targets) absorb(t);
  absorb(s.matrix(sym));
  for (const auto& p : prior) absorb(s.matrix(p));
  auto monos = detail::monomials_up_to(params, degree + q.total_degree());
  const std::size_t unknowns = basis.size() * monos.size();

  // Image of each unknown under a -> (d_p a + [a, A_p])_p.
  std::vector<std::vector<RMatrix>> images(unknowns);
  parallel_for(unknowns, exec, [&](std::size_t i) {
    const RMatrix& c = basis[i / monos.size()];
    RationalFunction coef(MultiPoly::term(monos[i % monos.size()], Q(1)), q);
    RMatrix a = coef * c;
    for (const auto& p : prior) images[i].push_back(s.derive(a, p, Exec::serial) + commutator(a, s.matrix(p)));
  });

  SparseQSystem sys(unknowns);
  const std::size_t n = s.size();
  for (std::size_t k = 0; k < prior.size(); ++k)
    for (std::size_t e = 0; e < n * n; ++e) {
      MultiPoly den = targets[k].data()[e].den();
      for (std::size_t i = 0; i < unknowns; ++i) den = lcm(den, images[i][k].data()[e].den());
      std::map<Monomial, SparseQSystem::Row> rows;
      std::map<Monomial, Q> rhs;
      auto scaled = [&](const RationalFunction& f) { return f.num() * divide_exact(den, f.den()); };
      const MultiPoly target = scaled(targets[k].data()[e]);
      for (const auto& t : target.terms()) {
        rhs[t.mono] = t.coeff;
        rows[t.mono];
      }
      for (std::size_t i = 0; i < unknowns; ++i) {
        const RationalFunction& f = images[i][k].data()[e];
        if (f.is_zero()) continue;
        const MultiPoly image = scaled(f);
        for (const auto& t : image.terms()) rows[t.mono][i] = t.coeff;
      }
      for (auto& [mono, row] : rows)
        if (!sys.add_equation(std::move(row), rhs[mono])) return std::nullopt;
    }
  auto sol = sys.solve();
  if (!sol.consistent) return std::nullopt;
  RMatrix a(n, n);
  for (std::size_t i = 0; i < unknowns; ++i) {
    if (sol.particular[i] == 0) continue;
    RationalFunction coef(MultiPoly::term(monos[i % monos.size()], sol.particular[i]), q);
    a += coef * basis[i / monos.size()];
  }
  return a;
}

FlattenResult found(const ConnectionSystem& s, EquivalenceMove moves) {
  FlattenResult r;
  ConnectionSystem flat = equivalence_move(s, moves);
  if (!check_integrability(flat, CheckMode::full).integrable()) {
    r.explanation = "candidate move did not produce a flat system";
    return r;
  }
  r.status = FlattenResult::Status::found;
  r.moves = std::move(moves);
  r.flat = std::move(flat);
  return r;
}

}  // namespace

FlattenResult flatten(const ConnectionSystem& s, const std::vector<std::string>& order,
                      const std::optional<std::vector<RMatrix>>& constraint, FlattenBounds bounds, Exec exec) {
  const Tower& field = s.field();
  auto principal = s.principal();
  for (const auto& sym : order) {
    s.matrix(sym);
    if (principal && sym == *principal) throw PreconditionFailed("flatten order may only list parametric symbols");
  }
  if (principal && !check_integrability(s, CheckMode::pairwise, exec).integrable())
    throw PreconditionFailed("system fails the pairwise conditions with the principal derivation");
  if (check_integrability(s, CheckMode::full, exec).integrable()) return found(s, {});

  std::vector<RMatrix> basis = independent(constraint ? *constraint : default_constraint(s.size()));
  const std::size_t n = s.size();

  // Exact path: two parametric symbols and a constant commuting constraint
  // that also commutes with every matrix of the system.
  std::vector<std::string> parametric;
  for (const auto& sym : s.symbols())
    if (!principal || sym != *principal) parametric.push_back(sym);
  bool abelian = order.size() == 2 && parametric.size() == 2 &&
                 std::is_permutation(order.begin(), order.end(), parametric.begin());
  for (std::size_t i = 0; abelian && i < basis.size(); ++i) {
    for (std::size_t j = i + 1; abelian && j < basis.size(); ++j)
      abelian = commutator(basis[i], basis[j]).is_zero();
    for (const auto& sym : s.symbols()) {
      if (!abelian) break;
      abelian = commutator(basis[i], s.matrix(sym)).is_zero() && s.derive(basis[i], sym).is_zero();
    }
  }
  if (abelian) {
    const std::string& u = order[0];
    const std::string& v = order[1];
    RMatrix h = defect(s, v, u);
    auto coords = coordinates_in(basis, h, exec);
    if (!coords) {
      FlattenResult r;
      r.status = FlattenResult::Status::proven_obstruction;
      r.u = v;
      r.v = u;
      r.explanation = "defect(" + v + ", " + u + ") lies outside the span of the constraint, which moves cannot leave";
      return r;
    }
    Var px = principal ? VariableRegistry::global().require(*principal) : Var{~0U};
    bool x_free = std::none_of(coords->begin(), coords->end(),
                               [&](const RationalFunction& g) { return principal && g.contains(px); });
    if (x_free) {
      if (!field.symbol(u).coordinate || !field.symbol(v).coordinate)
        throw UnsupportedField("obstruction theory needs coordinate derivations");
      Var uv = VariableRegistry::global().require(u), vv = VariableRegistry::global().require(v);
      EquivalenceMove moves{{u, RMatrix(n, n)}, {v, RMatrix(n, n)}};
      for (std::size_t j = 0; j < basis.size(); ++j) {
        const RationalFunction& g = (*coords)[j];
        if (g.is_zero()) continue;
        if (!only_coordinates(g, field))
          throw UnsupportedField("defect coefficient " + g.to_string() + " is outside the rational parameter field");
        auto ex = exact2form_solvable(g, uv, vv);
        if (ex.status == Exact2FormResult::Status::unsupported) throw UnsupportedField(ex.message);
        if (ex.status == Exact2FormResult::Status::unsolvable) {
          FlattenResult r;
          r.status = FlattenResult::Status::proven_obstruction;
          r.u = v;
          r.v = u;
          r.direction = basis[j];
          r.coefficient = g;
          r.explanation = ex.message;
          r.exactness = std::move(ex);
          return r;
        }
        // g + d_v a_u - d_u a_v = 0 with a_u = -f1 C, a_v = -f2 C.
        moves[u] -= ex.f1 * basis[j];
        moves[v] -= ex.f2 * basis[j];
      }
      return found(s, std::move(moves));
    }
  }

  // Sequential ansatz, one derivation at a time.
  ConnectionSystem current = s;
  EquivalenceMove moves;
  std::vector<std::string> prior;
  if (principal) prior.push_back(*principal);
  prior.push_back(order.front());
  for (std::size_t k = 1; k < order.size(); ++k) {
    auto a = ansatz_step(current, order[k], prior, basis, bounds.degree, exec);
    if (!a) {
      FlattenResult r;
      r.explanation = "no move for " + order[k] + " within degree bound " + std::to_string(bounds.degree);
      return r;
    }
    current = equivalence_move(current, {{order[k], *a}});
    auto it = moves.find(order[k]);
    if (it == moves.end())
      moves.emplace(order[k], *a);
    else
      it->second += *a;
    prior.push_back(order[k]);
  }
  FlattenResult r = found(s, std::move(moves));
  if (r.status != FlattenResult::Status::found && r.explanation.empty())
    r.explanation = "ansatz moves leave pairs outside the order unflattened";
  return r;
}

}  // namespace isomono
