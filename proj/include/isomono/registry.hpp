#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace isomono {

enum class VarKind { principal, parametric, generator, jet };

const char* to_string(VarKind kind);

/// Handle to a registered variable. Ordering of handles is the registration
/// order, which is also the variable order used by the term ordering.
struct Var {
  std::uint32_t id = 0;
  friend auto operator<=>(Var, Var) = default;
};

/// Process-wide table of variable names.
///
/// Names are unique and indices never change once assigned, so polynomials
/// can refer to variables by index. Registration is guarded by a lock;
/// lookups of already-registered variables are safe from any thread.
class VariableRegistry {
 public:
  static VariableRegistry& global();

  /// Returns the existing handle when `name` is already registered; the
  /// kind recorded at first registration is kept.
  Var intern(const std::string& name, VarKind kind);
  std::optional<Var> find(const std::string& name) const;
  Var require(const std::string& name) const;

  const std::string& name(Var v) const;
  VarKind kind(Var v) const;
  std::size_t size() const;

 private:
  struct Entry {
    std::string name;
    VarKind kind;
  };
  mutable std::shared_mutex mutex_;
  std::deque<Entry> entries_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

/// Shorthands against the global registry.
Var var(const std::string& name, VarKind kind = VarKind::parametric);
const std::string& var_name(Var v);

}  // namespace isomono
