#include "ptl/error.hpp"

namespace ptl {

std::string SourceSpan::str() const {
  std::string out = file.empty() ? "<input>" : file;
  if (known()) out += ":" + std::to_string(line) + ":" + std::to_string(column);
  return out;
}

ParseError::ParseError(SourceSpan span, std::string message)
    : Error(span.str() + ": parse error: " + message), span_(std::move(span)), message_(std::move(message)) {}

TypeError::TypeError(Code code, SourceSpan span, std::string message)
    : Error((span.known() ? span.str() + ": " : std::string()) + to_string(code) + ": " + message),
      code_(code),
      span_(std::move(span)) {}

ModelError::ModelError(Code code, std::string message, std::optional<Rational> value)
    : Error(std::string(to_string(code)) + ": " + message), code_(code), value_(std::move(value)) {}

EvalError::EvalError(Code code, std::string message)
    : Error(std::string(to_string(code)) + ": " + message), code_(code) {}

const char* to_string(ModelError::Code code) {
  switch (code) {
    case ModelError::Code::DuplicateDeclaration: return "DuplicateDeclaration";
    case ModelError::Code::ProbabilitySum: return "ProbabilitySumError";
    case ModelError::Code::ProbabilityRange: return "ProbabilityRangeError";
    case ModelError::Code::UnknownState: return "UnknownState";
    case ModelError::Code::UnknownObject: return "UnknownObject";
    case ModelError::Code::UnknownAction: return "UnknownAction";
    case ModelError::Code::UnknownPredicate: return "UnknownPredicate";
    case ModelError::Code::DuplicateTransition: return "DuplicateTransition";
    case ModelError::Code::NoInitialState: return "NoInitialState";
    case ModelError::Code::NameClash: return "NameClash";
    case ModelError::Code::UnknownOutcome: return "UnknownOutcome";
    case ModelError::Code::InvalidSpace: return "InvalidSpace";
  }
  return "ModelError";
}

const char* to_string(EvalError::Code code) {
  switch (code) {
    case EvalError::Code::UnboundVariable: return "UnboundVariable";
    case EvalError::Code::UnenumerableQuantifier: return "UnenumerableQuantifier";
    case EvalError::Code::DisabledAction: return "DisabledAction";
    case EvalError::Code::DivisionByZero: return "DivisionByZero";
    case EvalError::Code::LengthMismatch: return "LengthMismatch";
    case EvalError::Code::NotApplicable: return "NotApplicable";
    case EvalError::Code::Unsupported: return "Unsupported";
  }
  return "EvalError";
}

const char* to_string(TypeError::Code code) {
  switch (code) {
    case TypeError::Code::Mismatch: return "TypeMismatch";
    case TypeError::Code::UnboundSymbol: return "UnboundSymbol";
    case TypeError::Code::Unenumerable: return "UnenumerableQuantifier";
    case TypeError::Code::Ambiguous: return "AmbiguousType";
    case TypeError::Code::NotAFormula: return "NotAFormula";
  }
  return "TypeError";
}

}  // namespace ptl
