#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "isomono/ratfunc.hpp"

namespace isomono {

/// Elements of a tower are rational functions in coordinates, generators and
/// jet symbols; derivations act through the tower's rules.
using TowerElement = RationalFunction;

/// A derivation symbol: a coordinate partial derivative or a linear
/// combination sum_j c_j * d/d(coordinate_j) with coefficients in the field.
struct DerivationSymbol {
  std::string name;
  VarKind kind;  // principal or parametric
  std::map<Var, RationalFunction> expansion;
  bool coordinate = false;
};

enum class GeneratorKind { free, defined };

struct GeneratorRule {
  std::string name;
  Var var;
  GeneratorKind kind;
  /// Derivative of the generator per coordinate symbol name. Defined
  /// generators need one for every coordinate; free generators may carry a
  /// subset, the remaining derivatives becoming jets.
  std::map<std::string, TowerElement> rules;
};

struct CommutativityWitness {
  std::string generator;  // generator or jet the check was run on
  std::string d, e;
  TowerElement de;  // d(e(g))
  TowerElement ed;  // e(d(g))
};

enum class TowerPolicy { refuse, warn };

/// Differential field: Q(coordinates) extended by generators with rules.
///
/// Construction and lazy jet creation are guarded internally; once built the
/// tower can be shared read-only across threads.
class Tower {
 public:
  Tower() = default;
  Tower(const Tower& other);
  Tower& operator=(const Tower& other);

  /// Field Q(principal, parametric...) without generators.
  static std::shared_ptr<Tower> rational(const std::vector<std::string>& principal,
                                         const std::vector<std::string>& parametric);

  Var add_coordinate(const std::string& name, VarKind kind);
  /// New symbol sum coeffs[s] * s over existing symbols s.
  void add_combination(const std::string& name, VarKind kind, const std::map<std::string, TowerElement>& coeffs);
  Var add_generator(const std::string& name, GeneratorKind kind);
  void set_rule(const std::string& generator, const std::string& symbol, const TowerElement& derivative);

  bool has_symbol(const std::string& name) const;
  const DerivationSymbol& symbol(const std::string& name) const;
  /// Symbols in declaration order.
  std::vector<std::string> symbol_names() const;
  std::vector<std::string> coordinate_names() const;
  std::optional<std::string> principal() const;
  const std::vector<GeneratorRule>& generators() const noexcept { return generators_; }
  const GeneratorRule* generator(const std::string& name) const;

  /// Applies a derivation symbol.
  TowerElement derive(const TowerElement& e, const std::string& symbol) const;
  /// Derivative of one tower variable (coordinate, generator or jet).
  TowerElement derive_variable(Var v, const std::string& symbol) const;

  /// Canonical jet symbol for a free generator; multiindex maps coordinate
  /// symbol names to orders. Idempotent.
  Var extend_jets(const std::string& generator, const std::map<std::string, unsigned>& multiindex) const;

  /// Resolves an identifier in expression text: coordinates, generators and
  /// jet names of the form gen__sym__sym (any order of symbols).
  TowerElement resolve(const std::string& identifier) const;
  TowerElement parse(const std::string& text) const;

  /// Mixed-partial witnesses for generators with rules (and their jets up to
  /// depth - 1 further derivatives). Empty means consistent to that depth.
  std::vector<CommutativityWitness> check_commutativity(unsigned depth) const;

  /// True when [a, b] = 0 as derivations of the coordinate field.
  bool symbols_commute(const std::string& a, const std::string& b) const;

  /// Throws InconsistentTower (refuse) or reports to stderr (warn).
  void validate(unsigned depth, TowerPolicy policy = TowerPolicy::refuse) const;

 private:
  struct Jet {
    std::size_t generator;
    std::map<std::size_t, unsigned> index;  // coordinate position -> order
  };
  std::size_t coordinate_position(const std::string& symbol) const;
  std::size_t generator_index(const std::string& name) const;
  TowerElement jet_value(std::size_t generator, std::map<std::size_t, unsigned> index) const;
  std::string jet_name(std::size_t generator, const std::map<std::size_t, unsigned>& index) const;

  std::vector<DerivationSymbol> symbols_;
  std::vector<Var> coordinates_;  // coordinate variable per coordinate position
  std::vector<std::string> coordinate_symbols_;
  std::vector<GeneratorRule> generators_;
  std::map<Var, std::size_t> generator_of_var_;

  mutable std::mutex jet_mutex_;
  mutable std::map<Var, Jet> jets_;
};

}  // namespace isomono
