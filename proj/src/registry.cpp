#include "isomono/registry.hpp"

#include <mutex>

#include "isomono/errors.hpp"

namespace isomono {

const char* to_string(VarKind kind) {
  switch (kind) {
    case VarKind::principal:
      return "principal";
    case VarKind::parametric:
      return "parametric";
    case VarKind::generator:
      return "tower-generator";
    case VarKind::jet:
      return "jet";
  }
  return "?";
}

VariableRegistry& VariableRegistry::global() {
  static VariableRegistry registry;
  return registry;
}

Var VariableRegistry::intern(const std::string& name, VarKind kind) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = index_.find(name); it != index_.end()) return Var{it->second};
  }
  std::unique_lock lock(mutex_);
  if (auto it = index_.find(name); it != index_.end()) return Var{it->second};
  auto id = static_cast<std::uint32_t>(entries_.size());
  entries_.push_back({name, kind});
  index_.emplace(name, id);
  return Var{id};
}

std::optional<Var> VariableRegistry::find(const std::string& name) const {
  std::shared_lock lock(mutex_);
  if (auto it = index_.find(name); it != index_.end()) return Var{it->second};
  return std::nullopt;
}

Var VariableRegistry::require(const std::string& name) const {
  if (auto v = find(name)) return *v;
  throw UnknownVariable(name);
}

const std::string& VariableRegistry::name(Var v) const {
  std::shared_lock lock(mutex_);
  return entries_.at(v.id).name;
}

VarKind VariableRegistry::kind(Var v) const {
  std::shared_lock lock(mutex_);
  return entries_.at(v.id).kind;
}

std::size_t VariableRegistry::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

Var var(const std::string& name, VarKind kind) { return VariableRegistry::global().intern(name, kind); }

const std::string& var_name(Var v) { return VariableRegistry::global().name(v); }

}  // namespace isomono
