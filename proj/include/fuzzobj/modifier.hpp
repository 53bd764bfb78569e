#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fuzzobj/model.hpp"

namespace fuzzobj {

enum class ModifierKind { Complete, Partial, Generating, Destroying, Replacing };

const char* modifier_kind_name(ModifierKind kind);
ModifierKind modifier_kind_from_name(const std::string& name);

struct SetValueAction {
  PropertyValue value;
};
struct DiluteAction {
  int k = 1;
};
struct ConcentrateAction {
  int n = 1;
};
/// Maps every scalar (or primary value) of a quantitative property through
/// an expression in one free variable.
struct MapValuesAction {
  std::string var;
  ExprPtr expr;
};
struct RemoveAction {};
struct AddAction {
  PropertyValue value;
};

using ModAction =
    std::variant<SetValueAction, DiluteAction, ConcentrateAction, MapValuesAction, RemoveAction, AddAction>;

struct ModifierStep {
  std::string target;
  ModAction action;
};

/// A modifier is an ordered list of property actions constrained by its
/// kind: partial touches a strict subset of the properties and complete
/// all of them (both value-preserving in kind), generating only adds new
/// properties, destroying only removes existing ones, and replacing swaps
/// values for ones of a different kind.
struct Modifier {
  ModifierKind kind = ModifierKind::Partial;
  std::vector<ModifierStep> actions;
};

// ---------------------------------------------------------------------------
// Reflection-principle dependency rules

/// Dependent degree is 1 exactly when all components of the sources are
/// mutually equal.
struct AllEqualCheck {};
/// Dependent degree is 1 exactly when every (crisp) component equals the
/// constant.
struct EqualConstantCheck {
  double constant = 0.0;
};
/// Dependent degree must lie within [lo, hi].
struct DegreeBoundCheck {
  double lo = 0.0;
  double hi = 1.0;
};

using RuleCheck = std::variant<AllEqualCheck, EqualConstantCheck, DegreeBoundCheck>;

struct DependencyRule {
  std::string dependent;
  std::vector<std::string> sources;
  RuleCheck check;
};

std::string describe(const DependencyRule& rule);
const char* rule_check_name(const RuleCheck& check);

struct Violation {
  std::string rule;       // rendered rule description
  std::string dependent;  // property that breaks the rule
  std::string observed;
  std::string required;
};

/// Evaluates every applicable rule (all of whose property names resolve on
/// the object); violations are data, not errors.
std::vector<Violation> check_consistency(const FuzzyObject& obj, const std::vector<DependencyRule>& rules);

// ---------------------------------------------------------------------------
// Application

enum class ReflectionMode { Strict, AutoReflect };

struct ModifyResult {
  FuzzyObject successor;
  FuzzyClass successor_class;
  bool new_class = false;
  std::vector<std::string> dropped_methods;
  std::vector<std::string> auto_adjusted;  // dependents recomputed in auto mode
};

/// Applies a modifier to an object, leaving the input untouched. Actions
/// apply in order; dependency rules are then enforced (strict mode aborts
/// with ReflectionViolation, auto-reflect recomputes verification
/// dependents from their sources); method guards are re-evaluated and
/// failing methods dropped; a new class is registered under
/// `generated_class_name` only when the values or the retained signature
/// actually changed.
ModifyResult apply_modifier(const FuzzyObject& obj, const FuzzyClass& cls, const Modifier& m,
                            const std::vector<DependencyRule>& rules, ReflectionMode mode,
                            const std::string& successor_id, const std::string& generated_class_name);

/// Single-action partial modifier for dilution/concentration of one fuzzy
/// or verification property.
ModifyResult apply_fuzzy_modifier(const FuzzyObject& obj, const FuzzyClass& cls,
                                  const std::string& target, const ModAction& action,
                                  const std::vector<DependencyRule>& rules, ReflectionMode mode,
                                  const std::string& successor_id,
                                  const std::string& generated_class_name);

}  // namespace fuzzobj
