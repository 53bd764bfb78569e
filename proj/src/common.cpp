#include "fuzzobj/common.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace fuzzobj {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::EmptySet: return "EmptySet";
    case Errc::BadDegree: return "BadDegree";
    case Errc::BadExponent: return "BadExponent";
    case Errc::BadValue: return "BadValue";
    case Errc::DuplicateValue: return "DuplicateValue";
    case Errc::ParseError: return "ParseError";
    case Errc::EvalError: return "EvalError";
    case Errc::GuardFailed: return "GuardFailed";
    case Errc::MultiFuzzyOperands: return "MultiFuzzyOperands";
    case Errc::UnboundParameter: return "UnboundParameter";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::UnknownProperty: return "UnknownProperty";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::DuplicateId: return "DuplicateId";
    case Errc::EmptyCore: return "EmptyCore";
    case Errc::EmptyResult: return "EmptyResult";
    case Errc::IdCollision: return "IdCollision";
    case Errc::ReflectionViolation: return "ReflectionViolation";
    case Errc::UnknownTarget: return "UnknownTarget";
    case Errc::KindViolation: return "KindViolation";
    case Errc::SchemaError: return "SchemaError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::UnknownId: return "UnknownId";
    case Errc::UnknownMethod: return "UnknownMethod";
  }
  return "Error";
}

bool is_document_error(Errc code) {
  return code == Errc::SchemaError || code == Errc::ValidationError || code == Errc::ParseError;
}

std::string format_number(double v) {
  if (!std::isfinite(v)) throw Error(Errc::BadValue, "non-finite number");
  char buf[512];
  for (int precision = 0; precision <= 9; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    if (std::strtod(buf, nullptr) == v) {
      std::string s(buf);
      if (s == "-0") s = "0";
      return s;
    }
  }
  // Quantize to nine fractional digits and strip trailing zeros.
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  std::string s(buf);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0" || s.empty()) s = "0";
  return s;
}

}  // namespace fuzzobj
