#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace isomono {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// exactalg
class ZeroDenominator : public Error {
 public:
  ZeroDenominator() : Error("zero denominator") {}
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name) : Error("unknown variable '" + name + "'") {}
};

class ZeroPolynomial : public Error {
 public:
  ZeroPolynomial() : Error("zero polynomial") {}
};

/// An irreducible factor of degree >= 2 in the distinguished variable remained.
class NonLinearFactor : public Error {
 public:
  explicit NonLinearFactor(const std::string& factor)
      : Error("non-linear irreducible factor remains: " + factor), factor_(factor) {}
  const std::string& factor() const noexcept { return factor_; }

 private:
  std::string factor_;
};

class InexactDivision : public Error {
 public:
  InexactDivision() : Error("polynomial division is not exact") {}
};

// difftower
class MissingRule : public Error {
 public:
  MissingRule(const std::string& generator, const std::string& symbol)
      : Error("generator '" + generator + "' has no rule for derivation '" + symbol + "'") {}
};

class NotFree : public Error {
 public:
  explicit NotFree(const std::string& generator)
      : Error("generator '" + generator + "' is not free") {}
};

class InconsistentTower : public Error {
 public:
  using Error::Error;
};

// connection
class UnknownDerivation : public Error {
 public:
  explicit UnknownDerivation(const std::string& name)
      : Error("unknown derivation '" + name + "'") {}
};

class SingularGauge : public Error {
 public:
  SingularGauge() : Error("gauge matrix is singular") {}
};

class UnsupportedField : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

// curve / galois
class UnsupportedPoles : public Error {
 public:
  using Error::Error;
};

class Unsupported : public Error {
 public:
  using Error::Error;
};

class SingularRebase : public Error {
 public:
  SingularRebase() : Error("derivation rebase matrix is singular") {}
};

// cli
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t offset)
      : Error("syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnknownIdentifier : public Error {
 public:
  explicit UnknownIdentifier(const std::string& name)
      : Error("unknown identifier '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class MalformedInput : public Error {
 public:
  using Error::Error;
};

}  // namespace isomono
