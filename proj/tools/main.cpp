#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fuzzobj/persistence.hpp"
#include "fuzzobj/render.hpp"

namespace {

using fuzzobj::json;

// Exit codes: 0 success, 1 domain error, 2 usage or document error.
constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

int exit_code_for(const fuzzobj::Error& e) {
  return fuzzobj::is_document_error(e.code()) ? kUsageError : kDomainError;
}

void emit_error(const fuzzobj::Error& e, bool machine) {
  if (machine) {
    json out{{"error", fuzzobj::errc_name(e.code())}, {"message", e.what()}};
    if (!e.path().empty()) out["path"] = e.path();
    std::cout << fuzzobj::canonical_dump(out);
  } else {
    std::cerr << "error: " << e.what() << "\n";
  }
}

// Binding values: a bare number, or a property of the subject, optionally
// indexed (side_length[0]).
fuzzobj::Binding parse_binding_value(const std::string& text, const fuzzobj::FuzzyObject& subject) {
  using namespace fuzzobj;
  if (text.empty()) throw Error(Errc::EvalError, "empty binding value");
  char* end = nullptr;
  double number = std::strtod(text.c_str(), &end);
  if (end && *end == '\0') return number;

  std::string name = text;
  std::optional<std::size_t> index;
  auto bracket = text.find('[');
  if (bracket != std::string::npos) {
    if (text.back() != ']')
      throw Error(Errc::EvalError, "malformed binding value '" + text + "'");
    name = text.substr(0, bracket);
    std::string digits = text.substr(bracket + 1, text.size() - bracket - 2);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error(Errc::EvalError, "malformed index in binding value '" + text + "'");
    index = static_cast<std::size_t>(std::stoul(digits));
  }
  const Property* p = subject.spec.find(name);
  if (!p)
    throw Error(Errc::UnboundParameter,
                "binding value '" + text + "' is neither a number nor a property of '" + subject.id + "'");
  if (!index) return p->value;
  switch (kind_of(p->value)) {
    case PropertyKind::CrispTuple: {
      const auto& t = std::get<CrispTupleValue>(p->value);
      if (*index >= t.values.size())
        throw Error(Errc::EvalError, "index out of range in '" + text + "'");
      return PropertyValue{CrispScalarValue{t.values[*index], t.unit}};
    }
    case PropertyKind::FuzzyTuple: {
      const auto& ft = std::get<FuzzyTupleValue>(p->value);
      if (*index >= ft.arity()) throw Error(Errc::EvalError, "index out of range in '" + text + "'");
      if (ft.is_type1()) return PropertyValue{Fuzzy1Value{std::get<0>(ft.sets)[*index], ft.unit}};
      return PropertyValue{Fuzzy2Value{std::get<1>(ft.sets)[*index], ft.unit}};
    }
    default:
      throw Error(Errc::EvalError, "'" + name + "' is not a tuple");
  }
}

struct CommonArgs {
  std::string kb_path;
  std::string out_path;
  bool machine = false;
};

void require_distinct_out(const CommonArgs& args) {
  if (args.out_path == args.kb_path)
    throw CLI::ValidationError("--out", "refusing to overwrite the input knowledge base");
}

int cmd_validate(const CommonArgs& args) {
  fuzzobj::KnowledgeBase kb = fuzzobj::load_kb_file(args.kb_path);
  auto violations = kb.check_all();
  if (args.machine) {
    json out{{"classes", kb.classes().size()},
             {"objects", kb.objects().size()},
             {"violations", json::array()}};
    for (const auto& [id, v] : violations)
      out["violations"].push_back({{"object", id},
                                   {"rule", v.rule},
                                   {"dependent", v.dependent},
                                   {"observed", v.observed},
                                   {"required", v.required}});
    std::cout << fuzzobj::canonical_dump(out);
  } else {
    std::cout << kb.classes().size() << " classes, " << kb.objects().size() << " objects, "
              << violations.size() << " violations\n";
    for (const auto& [id, v] : violations)
      std::cout << "  " << id << ": " << v.rule << " — observed " << v.observed << ", required "
                << v.required << "\n";
  }
  return violations.empty() ? kOk : kDomainError;
}

int cmd_op(const CommonArgs& args, const std::string& op, const std::vector<std::string>& ids) {
  using namespace fuzzobj;
  require_distinct_out(args);
  KnowledgeBase kb = load_kb_file(args.kb_path);

  json report{{"operation", op}, {"inputs", ids}};
  std::string human;
  if (op == "clone") {
    if (ids.size() != 2)
      throw CLI::ValidationError("op", "clone takes an object id and a copy index");
    int n = 0;
    try {
      std::size_t used = 0;
      n = std::stoi(ids[1], &used);
      if (used != ids[1].size()) throw std::invalid_argument(ids[1]);
    } catch (const std::exception&) {
      throw CLI::ValidationError("op", "copy index must be a positive integer");
    }
    const FuzzyObject& copy = kb.run_clone(ids[0], n);
    report["inputs"] = std::vector<std::string>{ids[0]};
    report["output"] = copy.id;
    report["object"] = object_to_json(copy);
    human = "cloned " + ids[0] + " -> " + copy.id + " : class " + copy.class_name + "\n";
  } else {
    if (ids.size() != 2) throw CLI::ValidationError("op", op + " takes exactly two object ids");
    if (op == "union") {
      auto outcome = kb.run_union(ids[0], ids[1]);
      const FuzzyClass& cls = kb.class_named(outcome.class_name);
      report["output"] = outcome.class_name;
      report["class"] = class_to_json(cls);
      report["set"] = {{"members", outcome.set.member_ids}, {"class", outcome.set.class_name}};
      human = "set {";
      for (std::size_t i = 0; i < outcome.set.member_ids.size(); ++i)
        human += (i ? ", " : "") + outcome.set.member_ids[i];
      human += "} : " + outcome.class_name + "\n" + render_class(cls);
    } else {
      const FuzzyClass* cls = nullptr;
      if (op == "intersect") cls = &kb.run_intersection(ids[0], ids[1]);
      else if (op == "diff") cls = &kb.run_difference(ids[0], ids[1]);
      else if (op == "symdiff") cls = &kb.run_symmetric_difference(ids[0], ids[1]);
      else throw CLI::ValidationError("op", "unknown operation '" + op + "'");
      report["output"] = cls->name();
      report["class"] = class_to_json(*cls);
      human = render_class(*cls);
    }
  }
  save_kb_file(kb, args.out_path);
  report["written"] = args.out_path;
  if (args.machine) std::cout << canonical_dump(report);
  else std::cout << human << "wrote " << args.out_path << "\n";
  return kOk;
}

int cmd_eval(const CommonArgs& args, const std::string& object_id, const std::string& method,
             const std::vector<std::string>& binding_args) {
  using namespace fuzzobj;
  KnowledgeBase kb = load_kb_file(args.kb_path);
  const FuzzyObject& subject = kb.object_named(object_id);
  Bindings bindings;
  for (const auto& text : binding_args) {
    auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CLI::ValidationError("--bind", "expected name=value, got '" + text + "'");
    bindings[text.substr(0, eq)] = parse_binding_value(text.substr(eq + 1), subject);
  }
  PropertyValue result = kb.run_eval(object_id, method, bindings);
  if (args.machine) {
    std::cout << canonical_dump(json{{"object", object_id},
                                     {"method", method},
                                     {"value", property_value_to_json(result)},
                                     {"rendered", render_value(result)}});
  } else {
    std::cout << render_value(result) << "\n";
  }
  return kOk;
}

int cmd_modify(const CommonArgs& args, const std::string& object_id, const std::string& modifier_path,
               const std::string& mode_name) {
  using namespace fuzzobj;
  require_distinct_out(args);
  KnowledgeBase kb = load_kb_file(args.kb_path);
  Modifier modifier = load_modifier_file(modifier_path);
  ReflectionMode mode = mode_name == "strict" ? ReflectionMode::Strict : ReflectionMode::AutoReflect;
  auto outcome = kb.run_modify(object_id, modifier, mode);
  save_kb_file(kb, args.out_path);
  if (args.machine) {
    std::cout << canonical_dump(json{{"object", object_id},
                                     {"successor", outcome.successor_id},
                                     {"class", outcome.class_name},
                                     {"new_class", outcome.new_class},
                                     {"dropped", outcome.dropped_methods},
                                     {"auto_adjusted", outcome.auto_adjusted},
                                     {"written", args.out_path}});
  } else {
    std::cout << "successor: " << outcome.successor_id << "\n";
    std::cout << "dropped:";
    if (outcome.dropped_methods.empty()) std::cout << " (none)";
    for (const auto& m : outcome.dropped_methods) std::cout << " " << m;
    std::cout << "\n";
    if (outcome.new_class) std::cout << "generated class: " << outcome.class_name << "\n";
    else std::cout << "class unchanged: " << outcome.class_name << "\n";
    for (const auto& dep : outcome.auto_adjusted) std::cout << "recomputed: " << dep << "\n";
    std::cout << "wrote " << args.out_path << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzy object knowledge-base engine"};
  app.require_subcommand(1);

  CommonArgs common;

  auto* validate = app.add_subcommand("validate", "load a knowledge base and check consistency");
  validate->add_option("--kb", common.kb_path, "knowledge-base file")->required();
  validate->add_flag("--machine", common.machine, "machine-readable output");

  auto* op = app.add_subcommand("op", "run a set-theoretic operation over objects");
  std::string op_name;
  std::vector<std::string> op_args;
  op->add_option("operation", op_name, "union|intersect|diff|symdiff|clone")->required();
  op->add_option("args", op_args, "object ids (clone: id and copy index)")->required();
  op->add_option("--kb", common.kb_path, "knowledge-base file")->required();
  op->add_option("--out", common.out_path, "output knowledge-base file")->required();
  op->add_flag("--machine", common.machine, "machine-readable output");

  auto* eval = app.add_subcommand("eval", "evaluate a method on an object");
  std::string eval_object, eval_method;
  std::vector<std::string> eval_bindings;
  eval->add_option("object", eval_object, "object id")->required();
  eval->add_option("method", eval_method, "method name")->required();
  eval->add_option("--bind", eval_bindings, "parameter binding name=value (value: number, property, or property[i])");
  eval->add_option("--kb", common.kb_path, "knowledge-base file")->required();
  eval->add_flag("--machine", common.machine, "machine-readable output");

  auto* modify = app.add_subcommand("modify", "apply a modifier to an object");
  std::string modify_object, modifier_path, mode_name = "strict";
  modify->add_option("object", modify_object, "object id")->required();
  modify->add_option("--modifier", modifier_path, "modifier spec file")->required();
  modify->add_option("--mode", mode_name, "strict|auto")
      ->check(CLI::IsMember({"strict", "auto"}));
  modify->add_option("--kb", common.kb_path, "knowledge-base file")->required();
  modify->add_option("--out", common.out_path, "output knowledge-base file")->required();
  modify->add_flag("--machine", common.machine, "machine-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (app.got_subcommand(validate)) return cmd_validate(common);
    if (app.got_subcommand(op)) return cmd_op(common, op_name, op_args);
    if (app.got_subcommand(eval)) return cmd_eval(common, eval_object, eval_method, eval_bindings);
    return cmd_modify(common, modify_object, modifier_path, mode_name);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  } catch (const fuzzobj::Error& e) {
    emit_error(e, common.machine);
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }
}
