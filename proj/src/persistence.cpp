#include "fuzzobj/persistence.hpp"

#include <fstream>
#include <sstream>

namespace fuzzobj {

namespace {

// --------------------------------------------------------------------------
// Schema helpers: every accessor carries the document path for diagnostics.

[[noreturn]] void schema_fail(const std::string& path, const std::string& message) {
  throw Error(Errc::SchemaError, message, path);
}

const json& need(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_fail(path, std::string("missing key '") + key + "'");
  return *it;
}

std::string need_string(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_string()) schema_fail(path + "/" + key, "expected a string");
  return v.get<std::string>();
}

double need_number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_fail(path, "expected a number");
  return j.get<double>();
}

const json& need_array(const json& j, const char* key, const std::string& path) {
  const json& v = need(j, key, path);
  if (!v.is_array()) schema_fail(path + "/" + key, "expected an array");
  return v;
}

std::string opt_string(const json& j, const char* key, const std::string& fallback,
                       const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_string()) schema_fail(path + "/" + key, "expected a string");
  return it->get<std::string>();
}

// Domain invariants raised while decoding become ValidationError at the
// document path; parse errors keep their kind but gain the path.
template <typename Fn>
auto at_path(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (!e.path().empty()) throw;
    if (e.code() == Errc::ParseError || e.code() == Errc::SchemaError)
      throw Error(e.code(), e.what(), path);
    throw Error(Errc::ValidationError, e.what(), path);
  }
}

// --------------------------------------------------------------------------
// Property values

Type1FuzzySet t1_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array of value/membership pairs");
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    std::string epath = path + "/" + std::to_string(i);
    pairs.emplace_back(need_number(need(e, "value", epath), epath + "/value"),
                       need_number(need(e, "membership", epath), epath + "/membership"));
  }
  return at_path(path, [&] { return Type1FuzzySet::make(std::move(pairs)); });
}

Type2FuzzySet t2_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array of value/grades pairs");
  std::vector<Type2Element> elems;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& e = j[i];
    std::string epath = path + "/" + std::to_string(i);
    double value = need_number(need(e, "value", epath), epath + "/value");
    Type1FuzzySet grades = t1_from_json(need(e, "grades", epath), epath + "/grades");
    elems.push_back({value, std::move(grades)});
  }
  return at_path(path, [&] { return Type2FuzzySet::make(std::move(elems)); });
}

PropertyValue value_from_json(const json& j, const std::string& path) {
  if (j.is_number())
    return at_path(path, [&] { return PropertyValue{VerificationValue{Degree(j.get<double>())}}; });
  if (!j.is_object()) schema_fail(path, "expected a number (verification degree) or an object");
  std::string type = need_string(j, "type", path);
  std::string unit = opt_string(j, "unit", "", path);
  if (type == "scalar") {
    return CrispScalarValue{need_number(need(j, "value", path), path + "/value"), unit};
  }
  if (type == "tuple") {
    const json& values = need_array(j, "values", path);
    std::vector<double> out;
    for (std::size_t i = 0; i < values.size(); ++i)
      out.push_back(need_number(values[i], path + "/values/" + std::to_string(i)));
    auto value = CrispTupleValue{std::move(out), unit};
    at_path(path, [&] { validate_property_value(value); return 0; });
    return value;
  }
  if (type == "fuzzy1") return Fuzzy1Value{t1_from_json(need(j, "set", path), path + "/set"), unit};
  if (type == "fuzzy2") return Fuzzy2Value{t2_from_json(need(j, "set", path), path + "/set"), unit};
  if (type == "tuple_fuzzy1" || type == "tuple_fuzzy2") {
    const json& sets = need_array(j, "sets", path);
    if (sets.empty()) schema_fail(path + "/sets", "fuzzy tuple must not be empty");
    if (type == "tuple_fuzzy1") {
      std::vector<Type1FuzzySet> out;
      for (std::size_t i = 0; i < sets.size(); ++i)
        out.push_back(t1_from_json(sets[i], path + "/sets/" + std::to_string(i)));
      return FuzzyTupleValue{std::move(out), unit};
    }
    std::vector<Type2FuzzySet> out;
    for (std::size_t i = 0; i < sets.size(); ++i)
      out.push_back(t2_from_json(sets[i], path + "/sets/" + std::to_string(i)));
    return FuzzyTupleValue{std::move(out), unit};
  }
  schema_fail(path + "/type", "unknown value type '" + type + "'");
}

json t1_to_json(const Type1FuzzySet& set) {
  json out = json::array();
  for (const auto& e : set.elements()) out.push_back({{"value", e.value}, {"membership", e.membership}});
  return out;
}

json t2_to_json(const Type2FuzzySet& set) {
  json out = json::array();
  for (const auto& e : set.elements())
    out.push_back({{"value", e.value}, {"grades", t1_to_json(e.grades)}});
  return out;
}

// --------------------------------------------------------------------------
// Specifications / signatures / classes / rules

std::vector<Property> properties_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array of properties");
  std::vector<Property> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string ppath = path + "/" + std::to_string(i);
    const json& p = j[i];
    std::string name = need_string(p, "name", ppath);
    out.push_back({name, value_from_json(need(p, "value", ppath), ppath + "/value")});
  }
  return out;
}

MethodDef method_from_json(const json& j, const std::string& path) {
  MethodDef m;
  m.name = need_string(j, "name", path);
  const json& params = need_array(j, "params", path);
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!params[i].is_string()) schema_fail(path + "/params/" + std::to_string(i), "expected a string");
    m.params.push_back(params[i].get<std::string>());
  }
  m.body = at_path(path + "/body", [&] { return parse_expr(need_string(j, "body", path)); });
  std::string guard = opt_string(j, "guard", "", path);
  m.guard = at_path(path + "/guard", [&] { return parse_guard(guard); });
  m.kind = at_path(path + "/kind",
                   [&] { return method_kind_from_name(need_string(j, "kind", path)); });
  return m;
}

std::vector<MethodDef> methods_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array of methods");
  std::vector<MethodDef> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(method_from_json(j[i], path + "/" + std::to_string(i)));
  return out;
}

ClassPart part_from_json(const json& j, const std::string& path) {
  ClassPart part;
  part.properties = properties_from_json(need(j, "spec", path), path + "/spec");
  part.methods = methods_from_json(need(j, "signature", path), path + "/signature");
  return part;
}

FuzzyClass class_from_json(const std::string& name, const json& j, const std::string& path) {
  std::string kind = need_string(j, "kind", path);
  if (kind == "homogeneous") {
    auto props = properties_from_json(need(j, "spec", path), path + "/spec");
    auto methods = methods_from_json(need(j, "signature", path), path + "/signature");
    return at_path(path, [&] {
      return FuzzyClass::homogeneous(name, Specification::make(std::move(props)),
                                     Signature::make(std::move(methods)));
    });
  }
  if (kind == "heterogeneous") {
    ClassPart core = part_from_json(need(j, "core", path), path + "/core");
    const json& projections = need_array(j, "projections", path);
    std::vector<LabeledPart> parts;
    for (std::size_t i = 0; i < projections.size(); ++i) {
      std::string ppath = path + "/projections/" + std::to_string(i);
      std::string label = need_string(projections[i], "label", ppath);
      parts.push_back({label, part_from_json(projections[i], ppath)});
    }
    return at_path(path, [&] {
      return FuzzyClass::heterogeneous(name, std::move(core), std::move(parts));
    });
  }
  schema_fail(path + "/kind", "class kind must be 'homogeneous' or 'heterogeneous'");
}

DependencyRule rule_from_json(const json& j, const std::string& path) {
  DependencyRule rule;
  rule.dependent = need_string(j, "dependent", path);
  const json& sources = need_array(j, "sources", path);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    if (!sources[i].is_string()) schema_fail(path + "/sources/" + std::to_string(i), "expected a string");
    rule.sources.push_back(sources[i].get<std::string>());
  }
  std::string check = need_string(j, "check", path);
  if (check == "all-equal-components") {
    rule.check = AllEqualCheck{};
  } else if (check == "all-components-equal-constant") {
    rule.check = EqualConstantCheck{need_number(need(j, "constant", path), path + "/constant")};
  } else if (check == "custom-degree-bound") {
    rule.check = DegreeBoundCheck{need_number(need(j, "min", path), path + "/min"),
                                  need_number(need(j, "max", path), path + "/max")};
  } else {
    schema_fail(path + "/check", "unknown check '" + check + "'");
  }
  return rule;
}

}  // namespace

// --------------------------------------------------------------------------
// Whole documents

KnowledgeBase load_kb(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::SchemaError, std::string("not valid JSON: ") + e.what(), "/");
  }
  if (!doc.is_object()) schema_fail("/", "document root must be an object");
  const json& version = need(doc, "format_version", "/");
  if (!version.is_number_integer() || version.get<int>() != 1)
    schema_fail("/format_version", "unsupported format version (expected 1)");

  KnowledgeBase kb;
  const json& classes = need(doc, "classes", "/");
  if (!classes.is_object()) schema_fail("/classes", "expected an object keyed by class name");
  for (const auto& [name, body] : classes.items()) {
    std::string path = "/classes/" + name;
    at_path(path, [&] {
      kb.add_class(class_from_json(name, body, path));
      return 0;
    });
  }
  const json& objects = need(doc, "objects", "/");
  if (!objects.is_object()) schema_fail("/objects", "expected an object keyed by object id");
  for (const auto& [id, body] : objects.items()) {
    std::string path = "/objects/" + id;
    std::string class_name = need_string(body, "class", path);
    auto props = properties_from_json(need(body, "spec", path), path + "/spec");
    at_path(path, [&] {
      kb.add_object(FuzzyObject{id, class_name, Specification::make(std::move(props))});
      return 0;
    });
  }
  const json& rules = need_array(doc, "rules", "/");
  for (std::size_t i = 0; i < rules.size(); ++i) {
    std::string path = "/rules/" + std::to_string(i);
    at_path(path, [&] {
      kb.add_rule(rule_from_json(rules[i], path));
      return 0;
    });
  }
  const json& derivations = need_array(doc, "derivations", "/");
  for (std::size_t i = 0; i < derivations.size(); ++i) {
    std::string path = "/derivations/" + std::to_string(i);
    const json& d = derivations[i];
    Derivation out;
    out.operation = need_string(d, "operation", path);
    const json& inputs = need_array(d, "inputs", path);
    for (std::size_t k = 0; k < inputs.size(); ++k) {
      if (!inputs[k].is_string()) schema_fail(path + "/inputs/" + std::to_string(k), "expected a string");
      out.inputs.push_back(inputs[k].get<std::string>());
    }
    out.output = need_string(d, "output", path);
    kb.add_derivation(std::move(out));
  }
  kb.validate_references();
  return kb;
}

KnowledgeBase load_kb_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::SchemaError, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_kb(buffer.str());
}

json property_value_to_json(const PropertyValue& value) {
  switch (kind_of(value)) {
    case PropertyKind::CrispScalar: {
      const auto& v = std::get<CrispScalarValue>(value);
      return {{"type", "scalar"}, {"value", v.value}, {"unit", v.unit}};
    }
    case PropertyKind::CrispTuple: {
      const auto& v = std::get<CrispTupleValue>(value);
      return {{"type", "tuple"}, {"values", v.values}, {"unit", v.unit}};
    }
    case PropertyKind::Fuzzy1: {
      const auto& v = std::get<Fuzzy1Value>(value);
      return {{"type", "fuzzy1"}, {"set", t1_to_json(v.set)}, {"unit", v.unit}};
    }
    case PropertyKind::Fuzzy2: {
      const auto& v = std::get<Fuzzy2Value>(value);
      return {{"type", "fuzzy2"}, {"set", t2_to_json(v.set)}, {"unit", v.unit}};
    }
    case PropertyKind::FuzzyTuple: {
      const auto& v = std::get<FuzzyTupleValue>(value);
      json sets = json::array();
      if (v.is_type1())
        for (const auto& s : std::get<0>(v.sets)) sets.push_back(t1_to_json(s));
      else
        for (const auto& s : std::get<1>(v.sets)) sets.push_back(t2_to_json(s));
      return {{"type", v.is_type1() ? "tuple_fuzzy1" : "tuple_fuzzy2"},
              {"sets", std::move(sets)},
              {"unit", v.unit}};
    }
    case PropertyKind::Verification:
      return std::get<VerificationValue>(value).degree.value();
  }
  return nullptr;
}

json method_to_json(const MethodDef& method) {
  json out{{"name", method.name},
           {"params", method.params},
           {"body", to_string(method.body)},
           {"kind", method_kind_name(method.kind)}};
  if (!method.guard.empty()) out["guard"] = guard_to_string(method.guard);
  return out;
}

namespace {

json properties_to_json(const std::vector<Property>& props) {
  json out = json::array();
  for (const auto& p : props)
    out.push_back({{"name", p.name}, {"value", property_value_to_json(p.value)}});
  return out;
}

json methods_to_json(const std::vector<MethodDef>& methods) {
  json out = json::array();
  for (const auto& m : methods) out.push_back(method_to_json(m));
  return out;
}

}  // namespace

json class_to_json(const FuzzyClass& cls) {
  if (cls.is_homogeneous()) {
    const auto& b = cls.homogeneous_body();
    return {{"kind", "homogeneous"},
            {"spec", properties_to_json(b.spec.properties())},
            {"signature", methods_to_json(b.sig.methods())}};
  }
  const auto& b = cls.heterogeneous_body();
  json projections = json::array();
  for (const auto& pr : b.projections)
    projections.push_back({{"label", pr.label},
                           {"spec", properties_to_json(pr.part.properties)},
                           {"signature", methods_to_json(pr.part.methods)}});
  return {{"kind", "heterogeneous"},
          {"core", {{"spec", properties_to_json(b.core.properties)},
                    {"signature", methods_to_json(b.core.methods)}}},
          {"projections", std::move(projections)}};
}

json object_to_json(const FuzzyObject& obj) {
  return {{"class", obj.class_name}, {"spec", properties_to_json(obj.spec.properties())}};
}

json kb_to_json(const KnowledgeBase& kb) {
  json classes = json::object();
  for (const auto& [name, cls] : kb.classes()) classes[name] = class_to_json(cls);
  json objects = json::object();
  for (const auto& [id, obj] : kb.objects()) objects[id] = object_to_json(obj);
  json rules = json::array();
  for (const auto& rule : kb.rules()) {
    json r{{"dependent", rule.dependent}, {"sources", rule.sources},
           {"check", rule_check_name(rule.check)}};
    if (const auto* c = std::get_if<EqualConstantCheck>(&rule.check)) r["constant"] = c->constant;
    if (const auto* b = std::get_if<DegreeBoundCheck>(&rule.check)) {
      r["min"] = b->lo;
      r["max"] = b->hi;
    }
    rules.push_back(std::move(r));
  }
  json derivations = json::array();
  for (const auto& d : kb.derivations())
    derivations.push_back({{"operation", d.operation}, {"inputs", d.inputs}, {"output", d.output}});
  return {{"format_version", 1},
          {"classes", std::move(classes)},
          {"objects", std::move(objects)},
          {"rules", std::move(rules)},
          {"derivations", std::move(derivations)}};
}

// --------------------------------------------------------------------------
// Canonical dump

namespace {

void dump_rec(const json& j, std::string& out, int indent) {
  switch (j.type()) {
    case json::value_t::null: out += "null"; break;
    case json::value_t::boolean: out += j.get<bool>() ? "true" : "false"; break;
    case json::value_t::number_integer: out += std::to_string(j.get<long long>()); break;
    case json::value_t::number_unsigned: out += std::to_string(j.get<unsigned long long>()); break;
    case json::value_t::number_float: out += format_number(j.get<double>()); break;
    case json::value_t::string: out += j.dump(); break;
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out.append(static_cast<std::size_t>(indent) + 2, ' ');
        dump_rec(j[i], out, indent + 2);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out.append(static_cast<std::size_t>(indent), ' ');
      out += "]";
      break;
    }
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t i = 0;
      for (const auto& [key, value] : j.items()) {
        out.append(static_cast<std::size_t>(indent) + 2, ' ');
        out += json(key).dump();
        out += ": ";
        dump_rec(value, out, indent + 2);
        if (++i < j.size()) out += ",";
        out += "\n";
      }
      out.append(static_cast<std::size_t>(indent), ' ');
      out += "}";
      break;
    }
    default:
      throw Error(Errc::BadValue, "cannot serialize binary/discarded JSON");
  }
}

}  // namespace

std::string canonical_dump(const json& j) {
  std::string out;
  dump_rec(j, out, 0);
  out += "\n";
  return out;
}

std::string save_kb(const KnowledgeBase& kb) { return canonical_dump(kb_to_json(kb)); }

void save_kb_file(const KnowledgeBase& kb, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::SchemaError, "cannot write '" + path + "'");
  out << save_kb(kb);
}

// --------------------------------------------------------------------------
// Modifier documents

Modifier load_modifier(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::SchemaError, std::string("not valid JSON: ") + e.what(), "/");
  }
  Modifier m;
  m.kind = at_path("/kind", [&] { return modifier_kind_from_name(need_string(doc, "kind", "/")); });
  const json& actions = need_array(doc, "actions", "/");
  for (std::size_t i = 0; i < actions.size(); ++i) {
    std::string path = "/actions/" + std::to_string(i);
    const json& a = actions[i];
    ModifierStep step;
    step.target = need_string(a, "target", path);
    std::string action = need_string(a, "action", path);
    if (action == "set") {
      step.action = SetValueAction{value_from_json(need(a, "value", path), path + "/value")};
    } else if (action == "add") {
      step.action = AddAction{value_from_json(need(a, "value", path), path + "/value")};
    } else if (action == "remove") {
      step.action = RemoveAction{};
    } else if (action == "dilute") {
      double k = need_number(need(a, "k", path), path + "/k");
      if (k < 1 || k != static_cast<int>(k)) schema_fail(path + "/k", "k must be a positive integer");
      step.action = DiluteAction{static_cast<int>(k)};
    } else if (action == "concentrate") {
      double n = need_number(need(a, "n", path), path + "/n");
      if (n < 1 || n != static_cast<int>(n)) schema_fail(path + "/n", "n must be a positive integer");
      step.action = ConcentrateAction{static_cast<int>(n)};
    } else if (action == "map") {
      MapValuesAction map;
      map.var = need_string(a, "var", path);
      map.expr = at_path(path + "/expr", [&] { return parse_expr(need_string(a, "expr", path)); });
      for_each_ref(map.expr, [&](const NameRef& ref) {
        if (ref.name != map.var || ref.index)
          throw Error(Errc::ValidationError,
                      "map expression may only reference '" + map.var + "'", path + "/expr");
      });
      step.action = std::move(map);
    } else {
      schema_fail(path + "/action", "unknown action '" + action + "'");
    }
    m.actions.push_back(std::move(step));
  }
  return m;
}

Modifier load_modifier_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::SchemaError, "cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_modifier(buffer.str());
}

}  // namespace fuzzobj
