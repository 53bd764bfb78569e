#include "fuzzobj/kb.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace fuzzobj {

void KnowledgeBase::add_class(FuzzyClass cls) {
  if (classes_.count(cls.name()))
    throw Error(Errc::IdCollision, "class '" + cls.name() + "' already exists");
  std::string name = cls.name();
  classes_.emplace(std::move(name), std::move(cls));
}

void KnowledgeBase::add_object(FuzzyObject obj) {
  if (objects_.count(obj.id)) throw Error(Errc::IdCollision, "object '" + obj.id + "' already exists");
  const FuzzyClass* cls = find_class(obj.class_name);
  if (!cls)
    throw Error(Errc::ValidationError,
                "object '" + obj.id + "' references missing class '" + obj.class_name + "'");
  validate_object_against_class(obj, *cls);
  std::string id = obj.id;
  objects_.emplace(std::move(id), std::move(obj));
}

void KnowledgeBase::add_rule(DependencyRule rule) {
  if (rule.dependent.empty()) throw Error(Errc::ValidationError, "rule dependent must not be empty");
  for (const auto& s : rule.sources)
    if (s == rule.dependent)
      throw Error(Errc::ValidationError,
                  "rule dependent '" + rule.dependent + "' cannot be one of its sources");
  if (const auto* b = std::get_if<DegreeBoundCheck>(&rule.check)) {
    if (!(b->lo >= 0.0 && b->hi <= 1.0 && b->lo <= b->hi))
      throw Error(Errc::ValidationError, "degree bound [" + format_number(b->lo) + ", " +
                                             format_number(b->hi) + "] is not a sub-range of [0,1]");
  }
  rules_.push_back(std::move(rule));
}

void KnowledgeBase::add_derivation(Derivation d) { derivations_.push_back(std::move(d)); }

const FuzzyClass* KnowledgeBase::find_class(const std::string& name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : &it->second;
}

const FuzzyObject* KnowledgeBase::find_object(const std::string& id) const {
  auto it = objects_.find(id);
  return it == objects_.end() ? nullptr : &it->second;
}

const FuzzyClass& KnowledgeBase::class_named(const std::string& name) const {
  const FuzzyClass* c = find_class(name);
  if (!c) throw Error(Errc::UnknownId, "no class named '" + name + "'");
  return *c;
}

const FuzzyObject& KnowledgeBase::object_named(const std::string& id) const {
  const FuzzyObject* o = find_object(id);
  if (!o) throw Error(Errc::UnknownId, "no object with id '" + id + "'");
  return *o;
}

const FuzzyClass& KnowledgeBase::class_of(const FuzzyObject& obj) const {
  return class_named(obj.class_name);
}

void KnowledgeBase::validate_references() const {
  for (const auto& [id, obj] : objects_) {
    const FuzzyClass* cls = find_class(obj.class_name);
    if (!cls)
      throw Error(Errc::ValidationError,
                  "object '" + id + "' references missing class '" + obj.class_name + "'",
                  "/objects/" + id + "/class");
    validate_object_against_class(obj, *cls);
  }
  std::set<std::string> known_props;
  for (const auto& [_, cls] : classes_)
    for (const auto& name : cls.property_names()) known_props.insert(name);
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    auto check_name = [&](const std::string& name) {
      if (!known_props.count(name))
        throw Error(Errc::ValidationError,
                    "rule references property '" + name + "' that no class declares",
                    "/rules/" + std::to_string(i));
    };
    check_name(rules_[i].dependent);
    for (const auto& s : rules_[i].sources) check_name(s);
  }
  for (std::size_t i = 0; i < derivations_.size(); ++i) {
    const std::string& out = derivations_[i].output;
    if (!classes_.count(out) && !objects_.count(out))
      throw Error(Errc::ValidationError, "derivation output '" + out + "' does not resolve",
                  "/derivations/" + std::to_string(i) + "/output");
  }
}

std::vector<std::pair<std::string, Violation>> KnowledgeBase::check_all() const {
  std::vector<std::pair<std::string, Violation>> out;
  for (const auto& [id, obj] : objects_)
    for (auto& v : check_consistency(obj, rules_)) out.emplace_back(id, std::move(v));
  return out;
}

std::string KnowledgeBase::next_class_name(const std::string& op,
                                           const std::vector<std::string>& operand_classes) const {
  std::string base = op + "(";
  for (std::size_t i = 0; i < operand_classes.size(); ++i) {
    if (i) base += ",";
    base += operand_classes[i];
  }
  base += ")#";
  for (std::size_t k = derivations_.size() + 1;; ++k) {
    std::string candidate = base + std::to_string(k);
    if (!classes_.count(candidate)) return candidate;
  }
}

std::string KnowledgeBase::next_successor_id(const std::string& id) const {
  // Strip one trailing _<digits> so A_1's successor is A_2, not A_1_1.
  std::string stem = id;
  auto pos = stem.rfind('_');
  if (pos != std::string::npos && pos + 1 < stem.size()) {
    bool digits = std::all_of(stem.begin() + static_cast<long>(pos) + 1, stem.end(),
                              [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    if (digits) stem.resize(pos);
  }
  for (int n = 1;; ++n) {
    std::string candidate = clone_id(stem, n);
    if (!objects_.count(candidate)) return candidate;
  }
}

const MethodDef& KnowledgeBase::resolve_method(const FuzzyObject& obj, const std::string& name) const {
  const FuzzyClass& cls = class_of(obj);
  if (cls.is_homogeneous()) {
    if (const MethodDef* m = cls.homogeneous_body().sig.find(name)) return *m;
  }
  // Walk the modify/clone derivation chain: an ancestor class defining the
  // method means it became undefined for this object.
  std::string current = obj.id;
  std::set<std::string> seen{current};
  while (true) {
    auto it = std::find_if(derivations_.begin(), derivations_.end(), [&](const Derivation& d) {
      return d.output == current && (d.operation == "modify" || d.operation == "clone") &&
             !d.inputs.empty();
    });
    if (it == derivations_.end()) break;
    current = it->inputs.front();
    if (!seen.insert(current).second) break;
    const FuzzyObject* ancestor = find_object(current);
    if (!ancestor) break;
    const FuzzyClass* acls = find_class(ancestor->class_name);
    if (!acls || !acls->is_homogeneous()) continue;
    if (const MethodDef* m = acls->homogeneous_body().sig.find(name)) {
      check_guard(*m, obj);  // pinpoints the failing conjunct when one exists
      throw Error(Errc::GuardFailed, "method '" + name + "' became undefined for '" + obj.id +
                                         "' when its class was regenerated");
    }
  }
  throw Error(Errc::UnknownMethod,
              "no method '" + name + "' on class '" + obj.class_name + "' of '" + obj.id + "'");
}

Operand KnowledgeBase::operand(const std::string& id) const {
  const FuzzyObject& obj = object_named(id);
  return Operand{&obj, &class_of(obj)};
}

KnowledgeBase::UnionOutcome KnowledgeBase::run_union(const std::string& a, const std::string& b) {
  Operand oa = operand(a);
  Operand ob = operand(b);
  std::string name = next_class_name("union", {oa.cls->name(), ob.cls->name()});
  UnionResult result = object_union({oa, ob}, name);
  add_class(std::move(result.generated));
  add_derivation({"union", {a, b}, name});
  return {std::move(result.set), name};
}

const FuzzyClass& KnowledgeBase::run_intersection(const std::string& a, const std::string& b) {
  Operand oa = operand(a);
  Operand ob = operand(b);
  std::string name = next_class_name("intersect", {oa.cls->name(), ob.cls->name()});
  add_class(object_intersection(oa, ob, name));
  add_derivation({"intersect", {a, b}, name});
  return class_named(name);
}

const FuzzyClass& KnowledgeBase::run_difference(const std::string& a, const std::string& b) {
  Operand oa = operand(a);
  Operand ob = operand(b);
  std::string name = next_class_name("diff", {oa.cls->name(), ob.cls->name()});
  add_class(object_difference(oa, ob, name));
  add_derivation({"diff", {a, b}, name});
  return class_named(name);
}

const FuzzyClass& KnowledgeBase::run_symmetric_difference(const std::string& a, const std::string& b) {
  Operand oa = operand(a);
  Operand ob = operand(b);
  std::string name = next_class_name("symdiff", {oa.cls->name(), ob.cls->name()});
  add_class(object_symmetric_difference(oa, ob, name));
  add_derivation({"symdiff", {a, b}, name});
  return class_named(name);
}

const FuzzyObject& KnowledgeBase::run_clone(const std::string& id, int n) {
  const FuzzyObject& source = object_named(id);
  if (objects_.count(clone_id(id, n)))
    throw Error(Errc::IdCollision, "object '" + clone_id(id, n) + "' already exists");
  FuzzyObject copy = clone_object(source, n);
  std::string new_id = copy.id;
  add_object(std::move(copy));
  add_derivation({"clone", {id}, new_id});
  return object_named(new_id);
}

PropertyValue KnowledgeBase::run_eval(const std::string& object_id, const std::string& method,
                                      const Bindings& bindings) const {
  const FuzzyObject& obj = object_named(object_id);
  return evaluate(resolve_method(obj, method), obj, bindings);
}

KnowledgeBase::ModifyOutcome KnowledgeBase::record_modification(ModifyResult&& result,
                                                                const std::string& input_id) {
  ModifyOutcome outcome{result.successor.id, result.successor_class.name(), result.new_class,
                        std::move(result.dropped_methods), std::move(result.auto_adjusted)};
  if (result.new_class) add_class(std::move(result.successor_class));
  add_object(std::move(result.successor));
  add_derivation({"modify", {input_id}, outcome.successor_id});
  return outcome;
}

KnowledgeBase::ModifyOutcome KnowledgeBase::run_modify(const std::string& object_id, const Modifier& m,
                                                       ReflectionMode mode) {
  const FuzzyObject& obj = object_named(object_id);
  const FuzzyClass& cls = class_of(obj);
  ModifyResult result = apply_modifier(obj, cls, m, rules_, mode, next_successor_id(object_id),
                                       next_class_name("modify", {cls.name()}));
  return record_modification(std::move(result), object_id);
}

KnowledgeBase::ModifyOutcome KnowledgeBase::run_fuzzy_modify(const std::string& object_id,
                                                             const std::string& target,
                                                             const ModAction& action,
                                                             ReflectionMode mode) {
  const FuzzyObject& obj = object_named(object_id);
  const FuzzyClass& cls = class_of(obj);
  ModifyResult result = apply_fuzzy_modifier(obj, cls, target, action, rules_, mode,
                                             next_successor_id(object_id),
                                             next_class_name("modify", {cls.name()}));
  return record_modification(std::move(result), object_id);
}

}  // namespace fuzzobj
