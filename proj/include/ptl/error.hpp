#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ptl/rational.hpp"

namespace ptl {

struct SourceSpan {
  std::string file;
  int line = 0;    // 1-based; 0 means unknown
  int column = 0;  // 1-based
  int length = 0;

  bool known() const { return line > 0; }
  std::string str() const;
};

/// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(SourceSpan span, std::string message);
  const SourceSpan& span() const { return span_; }
  const std::string& message() const { return message_; }

 private:
  SourceSpan span_;
  std::string message_;
};

class TypeError : public Error {
 public:
  enum class Code { Mismatch, UnboundSymbol, Unenumerable, Ambiguous, NotAFormula };

  TypeError(Code code, SourceSpan span, std::string message);
  Code code() const { return code_; }
  const SourceSpan& span() const { return span_; }

 private:
  Code code_;
  SourceSpan span_;
};

class ModelError : public Error {
 public:
  enum class Code {
    DuplicateDeclaration,
    ProbabilitySum,
    ProbabilityRange,
    UnknownState,
    UnknownObject,
    UnknownAction,
    UnknownPredicate,
    DuplicateTransition,
    NoInitialState,
    NameClash,
    UnknownOutcome,
    InvalidSpace,
  };

  ModelError(Code code, std::string message, std::optional<Rational> value = std::nullopt);
  Code code() const { return code_; }
  /// The offending quantity, e.g. the actual probability sum.
  const std::optional<Rational>& value() const { return value_; }

 private:
  Code code_;
  std::optional<Rational> value_;
};

class EvalError : public Error {
 public:
  enum class Code {
    UnboundVariable,
    UnenumerableQuantifier,
    DisabledAction,
    DivisionByZero,
    LengthMismatch,
    NotApplicable,
    Unsupported,
  };

  EvalError(Code code, std::string message);
  Code code() const { return code_; }

 private:
  Code code_;
};

const char* to_string(ModelError::Code code);
const char* to_string(EvalError::Code code);
const char* to_string(TypeError::Code code);

}  // namespace ptl
