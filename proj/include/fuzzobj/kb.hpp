#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuzzobj/algebra.hpp"
#include "fuzzobj/evaluate.hpp"
#include "fuzzobj/modifier.hpp"

namespace fuzzobj {

struct Derivation {
  std::string operation;
  std::vector<std::string> inputs;
  std::string output;
  bool operator==(const Derivation&) const = default;
};

/// Registry of classes, objects, dependency rules and the derivation log.
/// Lookups are unrestricted; registrations funnel through the add_*
/// methods, which validate and reject collisions (single-writer contract:
/// concurrent mutation is the caller's responsibility).
class KnowledgeBase {
 public:
  void add_class(FuzzyClass cls);
  void add_object(FuzzyObject obj);
  void add_rule(DependencyRule rule);
  void add_derivation(Derivation d);

  const FuzzyClass* find_class(const std::string& name) const;
  const FuzzyObject* find_object(const std::string& id) const;
  const FuzzyClass& class_named(const std::string& name) const;
  const FuzzyObject& object_named(const std::string& id) const;
  const FuzzyClass& class_of(const FuzzyObject& obj) const;

  const std::map<std::string, FuzzyClass>& classes() const { return classes_; }
  const std::map<std::string, FuzzyObject>& objects() const { return objects_; }
  const std::vector<DependencyRule>& rules() const { return rules_; }
  const std::vector<Derivation>& derivations() const { return derivations_; }

  bool operator==(const KnowledgeBase&) const = default;

  /// Cross-reference validation: object classes resolve (homogeneous,
  /// shape-compatible), rule names appear in at least one class, rule
  /// bounds are sane, derivation outputs resolve.
  void validate_references() const;

  /// Runs every dependency rule over every object; returns (object id,
  /// violation) pairs in id order.
  std::vector<std::pair<std::string, Violation>> check_all() const;

  /// Deterministic generated class names: `<op>(<class1>,<class2>)#<k>`
  /// with k derived from the derivation count, bumped past collisions.
  std::string next_class_name(const std::string& op, const std::vector<std::string>& operand_classes) const;

  /// Next free successor id following the subscript convention
  /// (A -> A_1 -> A_2 ...).
  std::string next_successor_id(const std::string& id) const;

  /// Resolves a method on an object's class. When the method is absent but
  /// an ancestor along the modify/clone derivation chain defines it, the
  /// error is GuardFailed (the method became undefined for this object);
  /// otherwise UnknownMethod.
  const MethodDef& resolve_method(const FuzzyObject& obj, const std::string& name) const;

  // Orchestrated operations: run the algebra, register generated classes
  // and objects, and append a derivation record.

  struct UnionOutcome {
    ObjectSet set;
    std::string class_name;
  };
  UnionOutcome run_union(const std::string& a, const std::string& b);
  const FuzzyClass& run_intersection(const std::string& a, const std::string& b);
  const FuzzyClass& run_difference(const std::string& a, const std::string& b);
  const FuzzyClass& run_symmetric_difference(const std::string& a, const std::string& b);
  const FuzzyObject& run_clone(const std::string& id, int n);

  PropertyValue run_eval(const std::string& object_id, const std::string& method,
                         const Bindings& bindings) const;

  struct ModifyOutcome {
    std::string successor_id;
    std::string class_name;
    bool new_class = false;
    std::vector<std::string> dropped_methods;
    std::vector<std::string> auto_adjusted;
  };
  ModifyOutcome run_modify(const std::string& object_id, const Modifier& m, ReflectionMode mode);
  ModifyOutcome run_fuzzy_modify(const std::string& object_id, const std::string& target,
                                 const ModAction& action, ReflectionMode mode);

 private:
  Operand operand(const std::string& id) const;
  ModifyOutcome record_modification(ModifyResult&& result, const std::string& input_id);

  std::map<std::string, FuzzyClass> classes_;
  std::map<std::string, FuzzyObject> objects_;
  std::vector<DependencyRule> rules_;
  std::vector<Derivation> derivations_;
};

}  // namespace fuzzobj
