#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fuzzy_placer {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name) : Error("unknown variable '" + name + "'") {}
};

class UnknownTerm : public Error {
 public:
  UnknownTerm(const std::string& variable, const std::string& term)
      : Error("unknown term '" + term + "' in variable '" + variable + "'") {}
};

class MissingInput : public Error {
 public:
  explicit MissingInput(const std::string& variable) : Error("no crisp input for variable '" + variable + "'") {}
};

class EmptyRuleSet : public Error {
 public:
  EmptyRuleSet() : Error("no rule outputs to aggregate") {}
};

/// No rule fired, so the aggregated output has zero area.
class DegenerateOutput : public Error {
 public:
  DegenerateOutput() : Error("aggregated output has zero area") {}
};

/// A value or structure violates a documented invariant.
class InvalidConfig : public Error {
 public:
  using Error::Error;
};
using ValidationError = InvalidConfig;

class DuplicateResourceId : public Error {
 public:
  explicit DuplicateResourceId(const std::string& id) : Error("duplicate resource id '" + id + "'") {}
};

class UnknownResource : public Error {
 public:
  explicit UnknownResource(const std::string& id) : Error("unknown resource '" + id + "'") {}
};

class EmptyScoreSet : public Error {
 public:
  EmptyScoreSet() : Error("no scores to select from") {}
};

/// Every score is zero; there is no distribution to sample.
class ZeroMass : public Error {
 public:
  ZeroMass() : Error("scores sum to zero") {}
};

/// A document failed to parse or validate. `line` and `column` are 1-based;
/// `field` is a dotted path into the document when known.
class DocumentError : public Error {
 public:
  DocumentError(std::string source, int line, int column, std::string field, const std::string& what)
      : Error(format(source, line, column, field, what)),
        source_(std::move(source)),
        line_(line),
        column_(column),
        field_(std::move(field)) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& field() const { return field_; }

 private:
  static std::string format(const std::string& source, int line, int column, const std::string& field,
                            const std::string& what) {
    std::string out = source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": ";
    if (!field.empty()) out += field + ": ";
    return out + what;
  }

  std::string source_;
  int line_;
  int column_;
  std::string field_;
};

}  // namespace fuzzy_placer
