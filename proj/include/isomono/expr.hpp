#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "isomono/ratfunc.hpp"

namespace isomono::expr {

/// Expression tree for the text grammar: integers, identifiers, + - * / ^
/// with integer exponents, parentheses and unary minus.
struct Node {
  enum class Kind { integer, identifier, add, sub, mul, div, pow, neg };
  Kind kind;
  mpz_class value;         // integer literal (non-negative)
  std::string name;        // identifier
  long exponent = 0;       // pow
  std::vector<std::shared_ptr<const Node>> kids;
  std::size_t offset = 0;  // source position, not part of equality

  friend bool operator==(const Node& a, const Node& b);
};

using Tree = std::shared_ptr<const Node>;

/// Throws SyntaxError with the byte offset of the failure.
Tree parse(std::string_view text);

/// Prints with the fewest parentheses that parse back to the same tree.
std::string print(const Tree& tree);

/// Maps identifiers to field elements; throws UnknownIdentifier for names it
/// does not know.
using Resolver = std::function<RationalFunction(const std::string&)>;

RationalFunction evaluate(const Tree& tree, const Resolver& resolve);

/// Resolver for names already present in the global variable registry.
RationalFunction resolve_registered(const std::string& name);

/// Parses and evaluates against the registry.
RationalFunction parse_rf(std::string_view text, const Resolver& resolve = resolve_registered);

}  // namespace isomono::expr
