#include "fuzzobj/modifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fuzzobj/evaluate.hpp"

namespace fuzzobj {

const char* modifier_kind_name(ModifierKind kind) {
  switch (kind) {
    case ModifierKind::Complete: return "complete";
    case ModifierKind::Partial: return "partial";
    case ModifierKind::Generating: return "generating";
    case ModifierKind::Destroying: return "destroying";
    case ModifierKind::Replacing: return "replacing";
  }
  return "?";
}

ModifierKind modifier_kind_from_name(const std::string& name) {
  if (name == "complete") return ModifierKind::Complete;
  if (name == "partial") return ModifierKind::Partial;
  if (name == "generating") return ModifierKind::Generating;
  if (name == "destroying") return ModifierKind::Destroying;
  if (name == "replacing") return ModifierKind::Replacing;
  throw Error(Errc::SchemaError, "unknown modifier kind '" + name + "'");
}

const char* rule_check_name(const RuleCheck& check) {
  switch (check.index()) {
    case 0: return "all-equal-components";
    case 1: return "all-components-equal-constant";
    default: return "custom-degree-bound";
  }
}

std::string describe(const DependencyRule& rule) {
  std::string srcs;
  for (const auto& s : rule.sources) {
    if (!srcs.empty()) srcs += ", ";
    srcs += s;
  }
  std::string out = rule.dependent + " depends on [" + srcs + "] via " + rule_check_name(rule.check);
  if (const auto* c = std::get_if<EqualConstantCheck>(&rule.check))
    out += "(" + format_number(c->constant) + ")";
  else if (const auto* b = std::get_if<DegreeBoundCheck>(&rule.check))
    out += "(" + format_number(b->lo) + ", " + format_number(b->hi) + ")";
  return out;
}

// ---------------------------------------------------------------------------
// Rule evaluation

namespace {

// Either a single crisp number or a whole fuzzy set counts as one component.
struct Components {
  std::vector<double> crisp;
  std::vector<const Type1FuzzySet*> t1;
  std::vector<const Type2FuzzySet*> t2;
};

Components gather_components(const FuzzyObject& obj, const std::vector<std::string>& sources) {
  Components c;
  for (const auto& name : sources) {
    const Property* p = obj.spec.find(name);
    if (!p) continue;  // applicability was checked by the caller
    switch (kind_of(p->value)) {
      case PropertyKind::CrispScalar:
        c.crisp.push_back(std::get<CrispScalarValue>(p->value).value);
        break;
      case PropertyKind::CrispTuple:
        for (double v : std::get<CrispTupleValue>(p->value).values) c.crisp.push_back(v);
        break;
      case PropertyKind::Fuzzy1:
        c.t1.push_back(&std::get<Fuzzy1Value>(p->value).set);
        break;
      case PropertyKind::Fuzzy2:
        c.t2.push_back(&std::get<Fuzzy2Value>(p->value).set);
        break;
      case PropertyKind::FuzzyTuple: {
        const auto& ft = std::get<FuzzyTupleValue>(p->value);
        if (ft.is_type1())
          for (const auto& s : std::get<0>(ft.sets)) c.t1.push_back(&s);
        else
          for (const auto& s : std::get<1>(ft.sets)) c.t2.push_back(&s);
        break;
      }
      case PropertyKind::Verification:
        c.crisp.push_back(std::get<VerificationValue>(p->value).degree.value());
        break;
    }
  }
  return c;
}

bool components_all_equal(const Components& c) {
  // Mixing crisp and fuzzy components never counts as equal.
  int kinds = (!c.crisp.empty()) + (!c.t1.empty()) + (!c.t2.empty());
  if (kinds > 1) return false;
  for (std::size_t i = 1; i < c.crisp.size(); ++i)
    if (!approx_eq(c.crisp[0], c.crisp[i])) return false;
  for (std::size_t i = 1; i < c.t1.size(); ++i)
    if (!set_identical(*c.t1[0], *c.t1[i])) return false;
  for (std::size_t i = 1; i < c.t2.size(); ++i)
    if (!set_identical(*c.t2[0], *c.t2[i])) return false;
  return true;
}

bool components_equal_constant(const Components& c, double constant) {
  if (!c.t1.empty() || !c.t2.empty()) return false;  // crisp sources only
  if (c.crisp.empty()) return false;
  return std::all_of(c.crisp.begin(), c.crisp.end(),
                     [&](double v) { return approx_eq(v, constant); });
}

bool rule_applicable(const FuzzyObject& obj, const DependencyRule& rule) {
  if (!obj.spec.has(rule.dependent)) return false;
  return std::all_of(rule.sources.begin(), rule.sources.end(),
                     [&](const std::string& s) { return obj.spec.has(s); });
}

struct RuleVerdict {
  bool holds = true;
  double expected = 1.0;  // recomputation target for auto-reflect
  std::string observed;
  std::string required;
};

RuleVerdict judge(const FuzzyObject& obj, const DependencyRule& rule) {
  RuleVerdict v;
  const Property* dep = obj.spec.find(rule.dependent);
  const auto* deg = std::get_if<VerificationValue>(&dep->value);
  if (!deg) {
    v.holds = false;
    v.observed = std::string("'") + rule.dependent + "' is a " + property_kind_name(kind_of(dep->value)) +
                 " property";
    v.required = "a verification property";
    return v;
  }
  double d = deg->degree.value();
  if (const auto* bound = std::get_if<DegreeBoundCheck>(&rule.check)) {
    v.holds = d >= bound->lo - kTol && d <= bound->hi + kTol;
    v.expected = std::clamp(d, bound->lo, bound->hi);
    v.observed = format_number(d);
    v.required = "degree in [" + format_number(bound->lo) + ", " + format_number(bound->hi) + "]";
    return v;
  }
  Components c = gather_components(obj, rule.sources);
  bool condition = std::holds_alternative<AllEqualCheck>(rule.check)
                       ? components_all_equal(c)
                       : components_equal_constant(c, std::get<EqualConstantCheck>(rule.check).constant);
  v.expected = condition ? 1.0 : 0.0;
  v.holds = condition == approx_eq(d, 1.0);
  v.observed = format_number(d) + (condition ? " with equal sources" : " with unequal sources");
  v.required = condition ? "degree 1 (sources are equal)" : "degree below 1 (sources differ)";
  return v;
}

}  // namespace

std::vector<Violation> check_consistency(const FuzzyObject& obj,
                                         const std::vector<DependencyRule>& rules) {
  std::vector<Violation> out;
  for (const auto& rule : rules) {
    if (!rule_applicable(obj, rule)) continue;
    RuleVerdict v = judge(obj, rule);
    if (!v.holds) out.push_back({describe(rule), rule.dependent, v.observed, v.required});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Actions

namespace {

double eval_scalar_expr(const ExprPtr& e, const std::string& var, double x) {
  if (const auto* n = std::get_if<NumberLit>(&e->node)) return n->value;
  if (const auto* r = std::get_if<NameRef>(&e->node)) {
    if (r->name != var || r->index)
      throw Error(Errc::EvalError, "map expression may only reference '" + var + "'");
    return x;
  }
  if (const auto* u = std::get_if<UnaryExpr>(&e->node)) {
    double a = eval_scalar_expr(u->arg, var, x);
    switch (u->fn) {
      case UnaryFn::Neg: return -a;
      case UnaryFn::Sqrt:
        if (a < 0.0) throw Error(Errc::EvalError, "sqrt of a negative value");
        return std::sqrt(a);
      case UnaryFn::Sin: return std::sin(a);
      case UnaryFn::Cos: return std::cos(a);
    }
  }
  const auto& b = std::get<BinaryExpr>(e->node);
  double l = eval_scalar_expr(b.lhs, var, x);
  double r = eval_scalar_expr(b.rhs, var, x);
  double result = 0.0;
  switch (b.op) {
    case BinaryOp::Add: result = l + r; break;
    case BinaryOp::Sub: result = l - r; break;
    case BinaryOp::Mul: result = l * r; break;
    case BinaryOp::Div:
      if (r == 0.0) throw Error(Errc::EvalError, "division by zero");
      result = l / r;
      break;
    case BinaryOp::Pow: result = std::pow(l, r); break;
  }
  if (!std::isfinite(result)) throw Error(Errc::EvalError, "map produced a non-finite value");
  return result;
}

// Kind classes for replacement checks: the two fuzzy arities count as one
// kind each regardless of type-1/type-2 depth.
int kind_class(const PropertyValue& v) {
  switch (kind_of(v)) {
    case PropertyKind::CrispScalar: return 0;
    case PropertyKind::CrispTuple: return 1;
    case PropertyKind::Fuzzy1:
    case PropertyKind::Fuzzy2: return 2;
    case PropertyKind::FuzzyTuple: return 3;
    case PropertyKind::Verification: return 4;
  }
  return -1;
}

PropertyValue dilute_value(const PropertyValue& v, int k, const std::string& target) {
  switch (kind_of(v)) {
    case PropertyKind::Fuzzy1: {
      auto out = std::get<Fuzzy1Value>(v);
      out.set = dilution(out.set, k);
      return out;
    }
    case PropertyKind::Fuzzy2: {
      auto out = std::get<Fuzzy2Value>(v);
      out.set = dilution(out.set, k);
      return out;
    }
    case PropertyKind::FuzzyTuple: {
      auto out = std::get<FuzzyTupleValue>(v);
      if (out.is_type1())
        for (auto& s : std::get<0>(out.sets)) s = dilution(s, k);
      else
        for (auto& s : std::get<1>(out.sets)) s = dilution(s, k);
      return out;
    }
    case PropertyKind::Verification:
      return VerificationValue{dilution(std::get<VerificationValue>(v).degree, k)};
    default:
      throw Error(Errc::KindViolation, "dilution targets fuzzy or verification properties, '" +
                                           target + "' is " + property_kind_name(kind_of(v)));
  }
}

PropertyValue concentrate_value(const PropertyValue& v, int n, const std::string& target) {
  switch (kind_of(v)) {
    case PropertyKind::Fuzzy1: {
      auto out = std::get<Fuzzy1Value>(v);
      out.set = concentration(out.set, n);
      return out;
    }
    case PropertyKind::Fuzzy2: {
      auto out = std::get<Fuzzy2Value>(v);
      out.set = concentration(out.set, n);
      return out;
    }
    case PropertyKind::FuzzyTuple: {
      auto out = std::get<FuzzyTupleValue>(v);
      if (out.is_type1())
        for (auto& s : std::get<0>(out.sets)) s = concentration(s, n);
      else
        for (auto& s : std::get<1>(out.sets)) s = concentration(s, n);
      return out;
    }
    case PropertyKind::Verification:
      return VerificationValue{concentration(std::get<VerificationValue>(v).degree, n)};
    default:
      throw Error(Errc::KindViolation, "concentration targets fuzzy or verification properties, '" +
                                           target + "' is " + property_kind_name(kind_of(v)));
  }
}

PropertyValue map_value(const PropertyValue& v, const MapValuesAction& action, const std::string& target) {
  auto f = [&](double x) { return eval_scalar_expr(action.expr, action.var, x); };
  switch (kind_of(v)) {
    case PropertyKind::CrispScalar: {
      auto out = std::get<CrispScalarValue>(v);
      out.value = f(out.value);
      if (!std::isfinite(out.value)) throw Error(Errc::EvalError, "map produced a non-finite value");
      return out;
    }
    case PropertyKind::CrispTuple: {
      auto out = std::get<CrispTupleValue>(v);
      for (double& x : out.values) x = f(x);
      return out;
    }
    case PropertyKind::Fuzzy1: {
      auto out = std::get<Fuzzy1Value>(v);
      out.set = map_unary(out.set, f);
      return out;
    }
    case PropertyKind::Fuzzy2: {
      auto out = std::get<Fuzzy2Value>(v);
      out.set = map_unary_type2(out.set, f);
      return out;
    }
    case PropertyKind::FuzzyTuple: {
      auto out = std::get<FuzzyTupleValue>(v);
      if (out.is_type1())
        for (auto& s : std::get<0>(out.sets)) s = map_unary(s, f);
      else
        for (auto& s : std::get<1>(out.sets)) s = map_unary_type2(s, f);
      return out;
    }
    default:
      throw Error(Errc::KindViolation,
                  "map targets quantitative properties, '" + target + "' is verification");
  }
}

void check_kind_invariants(const FuzzyObject& obj, const Modifier& m) {
  std::set<std::string> touched;
  for (const auto& step : m.actions) touched.insert(step.target);

  auto require_action = [&](const ModifierStep& step, bool ok, const char* allowed) {
    if (!ok)
      throw Error(Errc::KindViolation, std::string(modifier_kind_name(m.kind)) +
                                           " modifier allows only " + allowed + " actions, '" +
                                           step.target + "' uses another");
  };

  switch (m.kind) {
    case ModifierKind::Complete:
    case ModifierKind::Partial: {
      for (const auto& step : m.actions) {
        require_action(step,
                       !std::holds_alternative<AddAction>(step.action) &&
                           !std::holds_alternative<RemoveAction>(step.action),
                       "value-changing");
        if (const auto* set = std::get_if<SetValueAction>(&step.action)) {
          const Property* p = obj.spec.find(step.target);
          if (p && kind_class(p->value) != kind_class(set->value))
            throw Error(Errc::KindViolation,
                        "set on '" + step.target + "' changes the value kind from " +
                            property_kind_name(kind_of(p->value)) + " to " +
                            property_kind_name(kind_of(set->value)) + "; use a replacing modifier");
        }
      }
      if (m.kind == ModifierKind::Partial) {
        if (touched.size() >= obj.spec.size())
          throw Error(Errc::KindViolation,
                      "partial modifier must touch a strict subset of the properties");
      } else if (touched.size() != obj.spec.size()) {
        throw Error(Errc::KindViolation, "complete modifier must touch every property");
      }
      break;
    }
    case ModifierKind::Generating:
      for (const auto& step : m.actions)
        require_action(step, std::holds_alternative<AddAction>(step.action), "add");
      break;
    case ModifierKind::Destroying:
      for (const auto& step : m.actions)
        require_action(step, std::holds_alternative<RemoveAction>(step.action), "remove");
      break;
    case ModifierKind::Replacing:
      for (const auto& step : m.actions) {
        require_action(step, std::holds_alternative<SetValueAction>(step.action), "set");
        const Property* p = obj.spec.find(step.target);
        if (p && kind_class(p->value) == kind_class(std::get<SetValueAction>(step.action).value))
          throw Error(Errc::KindViolation, "replacing modifier must swap '" + step.target +
                                               "' for a value of a different kind");
      }
      break;
  }
}

std::vector<Property> apply_actions(const FuzzyObject& obj, const Modifier& m) {
  std::vector<Property> props = obj.spec.properties();
  auto find = [&](const std::string& name) {
    return std::find_if(props.begin(), props.end(),
                        [&](const Property& p) { return p.name == name; });
  };
  for (const auto& step : m.actions) {
    auto it = find(step.target);
    if (std::holds_alternative<AddAction>(step.action)) {
      if (it != props.end())
        throw Error(Errc::DuplicateId, "add target '" + step.target + "' already exists");
      const auto& value = std::get<AddAction>(step.action).value;
      validate_property_value(value);
      props.push_back({step.target, value});
      continue;
    }
    if (it == props.end())
      throw Error(Errc::UnknownTarget, "no property '" + step.target + "' on '" + obj.id + "'");
    if (std::holds_alternative<RemoveAction>(step.action)) {
      props.erase(it);
    } else if (const auto* set = std::get_if<SetValueAction>(&step.action)) {
      validate_property_value(set->value);
      it->value = set->value;
    } else if (const auto* dil = std::get_if<DiluteAction>(&step.action)) {
      it->value = dilute_value(it->value, dil->k, step.target);
    } else if (const auto* con = std::get_if<ConcentrateAction>(&step.action)) {
      it->value = concentrate_value(it->value, con->n, step.target);
    } else {
      it->value = map_value(it->value, std::get<MapValuesAction>(step.action), step.target);
    }
  }
  return props;
}

bool method_usable(const MethodDef& m, const FuzzyObject& obj) {
  if (!guard_holds(m, obj)) return false;
  try {
    validate_method_refs(m, obj.spec.properties());
  } catch (const Error&) {
    return false;  // body references a property the modification removed
  }
  return true;
}

}  // namespace

ModifyResult apply_modifier(const FuzzyObject& obj, const FuzzyClass& cls, const Modifier& m,
                            const std::vector<DependencyRule>& rules, ReflectionMode mode,
                            const std::string& successor_id, const std::string& generated_class_name) {
  if (!cls.is_homogeneous())
    throw Error(Errc::KindMismatch, "modified objects must be typed by homogeneous classes");
  check_kind_invariants(obj, m);

  std::vector<Property> props = apply_actions(obj, m);
  if (props.empty()) throw Error(Errc::EmptyResult, "modification removed every property");

  FuzzyObject successor{successor_id, cls.name(), Specification::make(std::move(props))};
  std::vector<std::string> auto_adjusted;

  auto first_violation = [&]() -> std::optional<Violation> {
    auto v = check_consistency(successor, rules);
    if (v.empty()) return std::nullopt;
    return v.front();
  };

  if (mode == ReflectionMode::Strict) {
    if (auto v = first_violation())
      throw Error(Errc::ReflectionViolation,
                  v->rule + " — observed " + v->observed + ", required " + v->required);
  } else {
    // Recompute verification dependents until the rule set stabilizes.
    for (std::size_t round = 0; round <= rules.size(); ++round) {
      bool changed = false;
      for (const auto& rule : rules) {
        if (!rule_applicable(successor, rule)) continue;
        RuleVerdict v = judge(successor, rule);
        if (v.holds) continue;
        const Property* dep = successor.spec.find(rule.dependent);
        if (!std::holds_alternative<VerificationValue>(dep->value))
          throw Error(Errc::ReflectionViolation,
                      describe(rule) + " — quantitative dependents need explicit actions");
        std::vector<Property> updated = successor.spec.properties();
        for (auto& p : updated)
          if (p.name == rule.dependent) p.value = VerificationValue{Degree(v.expected)};
        successor.spec = Specification::make(std::move(updated));
        if (std::find(auto_adjusted.begin(), auto_adjusted.end(), rule.dependent) ==
            auto_adjusted.end())
          auto_adjusted.push_back(rule.dependent);
        changed = true;
      }
      if (!changed) break;
    }
    if (auto v = first_violation())
      throw Error(Errc::ReflectionViolation,
                  v->rule + " — observed " + v->observed + ", required " + v->required);
  }

  // Re-evaluate guards; the successor class keeps only the methods that
  // remain defined.
  const Signature& sig = cls.homogeneous_body().sig;
  std::vector<MethodDef> retained;
  std::vector<std::string> dropped;
  bool guard_flip = false;
  for (const auto& method : sig.methods()) {
    bool before = method_usable(method, obj);
    bool after = method_usable(method, successor);
    if (before != after) guard_flip = true;
    if (after) retained.push_back(method);
    else dropped.push_back(method.name);
  }

  bool values_changed = !(successor.spec == obj.spec);
  if (!values_changed && !guard_flip) {
    successor.class_name = cls.name();
    return {std::move(successor), cls, false, {}, std::move(auto_adjusted)};
  }

  FuzzyClass generated = FuzzyClass::homogeneous(generated_class_name, successor.spec,
                                                 Signature::make(std::move(retained)));
  successor.class_name = generated.name();
  return {std::move(successor), std::move(generated), true, std::move(dropped), std::move(auto_adjusted)};
}

ModifyResult apply_fuzzy_modifier(const FuzzyObject& obj, const FuzzyClass& cls,
                                  const std::string& target, const ModAction& action,
                                  const std::vector<DependencyRule>& rules, ReflectionMode mode,
                                  const std::string& successor_id,
                                  const std::string& generated_class_name) {
  if (!std::holds_alternative<DiluteAction>(action) && !std::holds_alternative<ConcentrateAction>(action))
    throw Error(Errc::KindViolation, "fuzzy modifier expects a dilute or concentrate action");
  Modifier m{ModifierKind::Partial, {{target, action}}};
  return apply_modifier(obj, cls, m, rules, mode, successor_id, generated_class_name);
}

}  // namespace fuzzobj
