#pragma once

#include <map>
#include <string>
#include <variant>

#include "fuzzobj/model.hpp"

namespace fuzzobj {

/// A parameter binding: a bare (dimensionless) scalar or a property value,
/// which carries its unit along.
using Binding = std::variant<double, PropertyValue>;
using Bindings = std::map<std::string, Binding>;

/// Checks a guard against the object's verification properties; throws
/// GuardFailed naming the first conjunct that does not hold.
void check_guard(const MethodDef& method, const FuzzyObject& subject);

/// Non-throwing form of check_guard.
bool guard_holds(const MethodDef& method, const FuzzyObject& subject);

/// Evaluates a method body on a subject. Crisp subexpressions fold
/// numerically; at most one fuzzy operand may reach any binary operator
/// (it is threaded through the extension principle), two raise
/// MultiFuzzyOperands. Units carry through symbolically as a single base
/// unit with an integer exponent; the result unit renders as e.g. "cm^2".
/// The guard is checked first; unbound parameters raise UnboundParameter.
PropertyValue evaluate(const MethodDef& method, const FuzzyObject& subject, const Bindings& bindings);

}  // namespace fuzzobj
