#pragma once

#include <stdexcept>
#include <string>

namespace fuzzobj {

/// Absolute comparison tolerance used everywhere degrees, support values or
/// spacings are compared.
inline constexpr double kTol = 1e-9;

inline bool approx_eq(double a, double b) {
  return (a > b ? a - b : b - a) <= kTol;
}

enum class Errc {
  // fuzzy sets
  EmptySet,
  BadDegree,
  BadExponent,
  BadValue,
  DuplicateValue,
  // expressions / evaluation
  ParseError,
  EvalError,
  GuardFailed,
  MultiFuzzyOperands,
  UnboundParameter,
  // model
  KindMismatch,
  UnknownProperty,
  ArityMismatch,
  // class algebra
  DuplicateId,
  EmptyCore,
  EmptyResult,
  IdCollision,
  // modifiers
  ReflectionViolation,
  UnknownTarget,
  KindViolation,
  // persistence
  SchemaError,
  ValidationError,
  // lookups
  UnknownId,
  UnknownMethod,
};

const char* errc_name(Errc code);

/// True for errors caused by a malformed document rather than a domain
/// operation; the CLI maps these to exit code 2.
bool is_document_error(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::string path = {})
      : std::runtime_error(path.empty() ? std::string(errc_name(code)) + ": " + message
                                        : std::string(errc_name(code)) + " at " + path + ": " + message),
        code_(code),
        path_(std::move(path)) {}

  Errc code() const { return code_; }

  /// Document path of the offending element ("/objects/A/spec/2"), empty
  /// when the error did not originate from a document.
  const std::string& path() const { return path_; }

 private:
  Errc code_;
  std::string path_;
};

/// Canonical decimal rendering: the shortest fixed-point form with at most
/// nine fractional digits that parses back to the same double, falling back
/// to nine digits with trailing zeros stripped. Deterministic; never emits
/// scientific notation or a negative zero.
std::string format_number(double v);

}  // namespace fuzzobj
