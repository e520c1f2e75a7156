#include "isomono/tower.hpp"

#include <algorithm>
#include <iostream>

#include "isomono/errors.hpp"
#include "isomono/expr.hpp"

namespace isomono {

Tower::Tower(const Tower& other)
    : symbols_(other.symbols_),
      coordinates_(other.coordinates_),
      coordinate_symbols_(other.coordinate_symbols_),
      generators_(other.generators_),
      generator_of_var_(other.generator_of_var_) {
  std::lock_guard lock(other.jet_mutex_);
  jets_ = other.jets_;
}

Tower& Tower::operator=(const Tower& other) {
  if (this == &other) return *this;
  Tower copy(other);
  symbols_ = std::move(copy.symbols_);
  coordinates_ = std::move(copy.coordinates_);
  coordinate_symbols_ = std::move(copy.coordinate_symbols_);
  generators_ = std::move(copy.generators_);
  generator_of_var_ = std::move(copy.generator_of_var_);
  std::lock_guard lock(jet_mutex_);
  jets_ = std::move(copy.jets_);
  return *this;
}

std::shared_ptr<Tower> Tower::rational(const std::vector<std::string>& principal,
                                       const std::vector<std::string>& parametric) {
  auto t = std::make_shared<Tower>();
  for (const auto& p : principal) t->add_coordinate(p, VarKind::principal);
  for (const auto& p : parametric) t->add_coordinate(p, VarKind::parametric);
  return t;
}

Var Tower::add_coordinate(const std::string& name, VarKind kind) {
  if (has_symbol(name)) throw Error("duplicate derivation symbol '" + name + "'");
  if (kind == VarKind::principal && principal()) throw Error("tower already has a principal symbol");
  Var v = var(name, kind);
  symbols_.push_back({name, kind, {{v, RationalFunction(1)}}, true});
  coordinates_.push_back(v);
  coordinate_symbols_.push_back(name);
  return v;
}

void Tower::add_combination(const std::string& name, VarKind kind,
                            const std::map<std::string, TowerElement>& coeffs) {
  if (has_symbol(name)) throw Error("duplicate derivation symbol '" + name + "'");
  DerivationSymbol s{name, kind, {}, false};
  for (const auto& [sym, c] : coeffs) {
    for (const auto& [v, a] : symbol(sym).expansion) {
      auto& slot = s.expansion[v];
      slot += c * a;
    }
  }
  for (auto it = s.expansion.begin(); it != s.expansion.end();)
    it = it->second.is_zero() ? s.expansion.erase(it) : std::next(it);
  symbols_.push_back(std::move(s));
}

Var Tower::add_generator(const std::string& name, GeneratorKind kind) {
  for (const auto& g : generators_)
    if (g.name == name) throw Error("duplicate generator '" + name + "'");
  if (name.find("__") != std::string::npos) throw Error("generator names may not contain '__'");
  Var v = var(name, VarKind::generator);
  generator_of_var_[v] = generators_.size();
  generators_.push_back({name, v, kind, {}});
  return v;
}

void Tower::set_rule(const std::string& generator, const std::string& symbol, const TowerElement& derivative) {
  coordinate_position(symbol);
  generators_[generator_index(generator)].rules[symbol] = derivative;
}

bool Tower::has_symbol(const std::string& name) const {
  return std::any_of(symbols_.begin(), symbols_.end(), [&](const auto& s) { return s.name == name; });
}

const DerivationSymbol& Tower::symbol(const std::string& name) const {
  for (const auto& s : symbols_)
    if (s.name == name) return s;
  throw UnknownDerivation(name);
}

std::vector<std::string> Tower::symbol_names() const {
  std::vector<std::string> out;
  for (const auto& s : symbols_) out.push_back(s.name);
  return out;
}

std::vector<std::string> Tower::coordinate_names() const { return coordinate_symbols_; }

std::optional<std::string> Tower::principal() const {
  for (const auto& s : symbols_)
    if (s.kind == VarKind::principal) return s.name;
  return std::nullopt;
}

const GeneratorRule* Tower::generator(const std::string& name) const {
  for (const auto& g : generators_)
    if (g.name == name) return &g;
  return nullptr;
}

std::size_t Tower::coordinate_position(const std::string& symbol) const {
  for (std::size_t i = 0; i < coordinate_symbols_.size(); ++i)
    if (coordinate_symbols_[i] == symbol) return i;
  throw UnknownDerivation(symbol);
}

std::size_t Tower::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == name) return i;
  throw UnknownIdentifier(name);
}

std::string Tower::jet_name(std::size_t generator, const std::map<std::size_t, unsigned>& index) const {
  std::string name = generators_[generator].name;
  for (const auto& [pos, k] : index)
    for (unsigned i = 0; i < k; ++i) name += "__" + coordinate_symbols_[pos];
  return name;
}

TowerElement Tower::jet_value(std::size_t gi, std::map<std::size_t, unsigned> index) const {
  for (auto it = index.begin(); it != index.end();) it = it->second == 0 ? index.erase(it) : std::next(it);
  const GeneratorRule& g = generators_[gi];
  if (index.empty()) return RationalFunction::variable(g.var);
  // Prolongation: a ruled symbol in the multi-index is applied first; the
  // rest act on the rule.
  for (auto& [pos, k] : index) {
    auto rule = g.rules.find(coordinate_symbols_[pos]);
    if (rule == g.rules.end()) continue;
    --k;
    TowerElement value = rule->second;
    for (const auto& [q, m] : index)
      for (unsigned i = 0; i < m; ++i) value = derive(value, coordinate_symbols_[q]);
    return value;
  }
  if (g.kind == GeneratorKind::defined) throw MissingRule(g.name, coordinate_symbols_[index.begin()->first]);
  std::string name = jet_name(gi, index);
  Var v = var(name, VarKind::jet);
  std::lock_guard lock(jet_mutex_);
  jets_.try_emplace(v, Jet{gi, index});
  return RationalFunction::variable(v);
}

TowerElement Tower::derive_variable(Var v, const std::string& sym) const {
  const DerivationSymbol& s = symbol(sym);
  if (!s.coordinate) {
    TowerElement acc;
    for (const auto& [cv, c] : s.expansion) {
      auto pos = std::find(coordinates_.begin(), coordinates_.end(), cv) - coordinates_.begin();
      acc += c * derive_variable(v, coordinate_symbols_[pos]);
    }
    return acc;
  }
  std::size_t pos = coordinate_position(sym);
  if (auto c = std::find(coordinates_.begin(), coordinates_.end(), v); c != coordinates_.end())
    return RationalFunction(c == coordinates_.begin() + static_cast<std::ptrdiff_t>(pos) ? 1 : 0);
  if (auto g = generator_of_var_.find(v); g != generator_of_var_.end()) return jet_value(g->second, {{pos, 1}});
  Jet jet;
  {
    std::lock_guard lock(jet_mutex_);
    auto j = jets_.find(v);
    if (j == jets_.end()) throw UnknownVariable(var_name(v));
    jet = j->second;
  }
  ++jet.index[pos];
  return jet_value(jet.generator, jet.index);
}

namespace {

// Sum over variables of d(p)/dv * D(v), as a field element.
template <class DV>
RationalFunction derive_poly(const MultiPoly& p, const std::vector<Var>& vars, DV&& dv) {
  RationalFunction acc;
  for (Var v : vars) {
    if (!p.contains(v)) continue;
    const RationalFunction& d = dv(v);
    if (d.is_zero()) continue;
    acc += RationalFunction(p.derivative(v)) * d;
  }
  return acc;
}

}  // namespace

TowerElement Tower::derive(const TowerElement& e, const std::string& sym) const {
  symbol(sym);
  std::vector<Var> vars = e.variables();
  std::map<Var, RationalFunction> cache;
  for (Var v : vars) cache.emplace(v, derive_variable(v, sym));
  auto dv = [&](Var v) -> const RationalFunction& { return cache.at(v); };
  RationalFunction dn = derive_poly(e.num(), vars, dv);
  if (e.den().is_constant()) return dn * RationalFunction(Q(1) / e.den().constant_value());
  RationalFunction dd = derive_poly(e.den(), vars, dv);
  RationalFunction den(e.den());
  return (dn * den - RationalFunction(e.num()) * dd) / (den * den);
}

Var Tower::extend_jets(const std::string& generator, const std::map<std::string, unsigned>& multiindex) const {
  std::size_t gi = generator_index(generator);
  const GeneratorRule& g = generators_[gi];
  if (g.kind != GeneratorKind::free) throw NotFree(generator);
  std::map<std::size_t, unsigned> index;
  for (const auto& [sym, k] : multiindex) {
    if (k == 0) continue;
    if (g.rules.count(sym)) throw Error("derivative of '" + generator + "' along '" + sym + "' is fixed by a rule");
    index[coordinate_position(sym)] += k;
  }
  TowerElement e = jet_value(gi, index);
  return e.num().variables().front();
}

TowerElement Tower::resolve(const std::string& id) const {
  for (std::size_t i = 0; i < coordinates_.size(); ++i)
    if (coordinate_symbols_[i] == id) return RationalFunction::variable(coordinates_[i]);
  auto split = id.find("__");
  std::string head = id.substr(0, split);
  std::size_t gi = generators_.size();
  for (std::size_t i = 0; i < generators_.size(); ++i)
    if (generators_[i].name == head) gi = i;
  if (gi == generators_.size()) throw UnknownIdentifier(id);
  std::map<std::size_t, unsigned> index;
  while (split != std::string::npos) {
    std::size_t start = split + 2;
    split = id.find("__", start);
    std::string sym = id.substr(start, split == std::string::npos ? std::string::npos : split - start);
    auto it = std::find(coordinate_symbols_.begin(), coordinate_symbols_.end(), sym);
    if (it == coordinate_symbols_.end()) throw UnknownIdentifier(id);
    ++index[static_cast<std::size_t>(it - coordinate_symbols_.begin())];
  }
  return jet_value(gi, index);
}

TowerElement Tower::parse(const std::string& text) const {
  return expr::parse_rf(text, [this](const std::string& id) { return resolve(id); });
}

std::vector<CommutativityWitness> Tower::check_commutativity(unsigned depth) const {
  if (depth == 0) throw std::invalid_argument("check_commutativity: depth must be at least 1");
  std::vector<CommutativityWitness> out;
  const std::size_t nc = coordinate_symbols_.size();
  for (std::size_t gi = 0; gi < generators_.size(); ++gi) {
    const GeneratorRule& g = generators_[gi];
    if (g.kind == GeneratorKind::free && g.rules.empty()) continue;
    // Free positions spawn jets; prolongation makes the rest derived.
    std::vector<std::size_t> free_pos;
    for (std::size_t p = 0; p < nc; ++p)
      if (!g.rules.count(coordinate_symbols_[p])) free_pos.push_back(p);
    std::vector<std::map<std::size_t, unsigned>> indices{{}};
    std::vector<std::map<std::size_t, unsigned>> frontier{{}};
    for (unsigned level = 1; level < depth && g.kind == GeneratorKind::free; ++level) {
      std::vector<std::map<std::size_t, unsigned>> next;
      for (const auto& idx : frontier)
        for (std::size_t p : free_pos) {
          if (!idx.empty() && p < idx.rbegin()->first) continue;
          auto n = idx;
          ++n[p];
          next.push_back(n);
        }
      indices.insert(indices.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    for (const auto& idx : indices) {
      TowerElement e = jet_value(gi, idx);
      for (std::size_t a = 0; a < nc; ++a)
        for (std::size_t b = a + 1; b < nc; ++b) {
          const auto& d = coordinate_symbols_[a];
          const auto& f = coordinate_symbols_[b];
          TowerElement lhs = derive(derive(e, f), d);
          TowerElement rhs = derive(derive(e, d), f);
          if (lhs != rhs) out.push_back({jet_name(gi, idx), d, f, lhs, rhs});
        }
    }
  }
  return out;
}

bool Tower::symbols_commute(const std::string& a, const std::string& b) const {
  const auto& sa = symbol(a);
  const auto& sb = symbol(b);
  std::map<Var, RationalFunction> bracket;
  for (const auto& [v, c] : sb.expansion) bracket[v] += derive(c, a);
  for (const auto& [v, c] : sa.expansion) bracket[v] -= derive(c, b);
  return std::all_of(bracket.begin(), bracket.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

void Tower::validate(unsigned depth, TowerPolicy policy) const {
  std::string problems;
  for (const auto& g : generators_)
    if (g.kind == GeneratorKind::defined)
      for (const auto& c : coordinate_symbols_)
        if (!g.rules.count(c)) problems += "generator " + g.name + " has no rule for " + c + "; ";
  for (const auto& w : check_commutativity(depth))
    problems += "mixed partials of " + w.generator + " along (" + w.d + ", " + w.e + ") disagree: " +
                w.de.to_string() + " vs " + w.ed.to_string() + "; ";
  if (problems.empty()) return;
  if (policy == TowerPolicy::refuse) throw InconsistentTower("inconsistent tower: " + problems);
  std::cerr << "warning: inconsistent tower: " << problems << "\n";
}

}  // namespace isomono
