#include "fuzzobj/algebra.hpp"

#include <algorithm>
#include <set>

namespace fuzzobj {

CoreSplit core_and_projections(const std::vector<LabeledPart>& parts) {
  if (parts.empty()) throw Error(Errc::EmptySet, "core_and_projections needs at least one part");

  auto property_common = [&](const Property& p) {
    return std::all_of(parts.begin() + 1, parts.end(), [&](const LabeledPart& lp) {
      return std::any_of(lp.part.properties.begin(), lp.part.properties.end(),
                         [&](const Property& q) { return eq_property(p, q); });
    });
  };
  auto method_common = [&](const MethodDef& m) {
    return std::all_of(parts.begin() + 1, parts.end(), [&](const LabeledPart& lp) {
      return std::any_of(lp.part.methods.begin(), lp.part.methods.end(), [&](const MethodDef& n) {
        return m.name == n.name && alpha_equivalent(m, n);
      });
    });
  };

  CoreSplit split;
  std::set<std::string> core_props, core_methods;
  for (const auto& p : parts.front().part.properties)
    if (property_common(p)) {
      split.core.properties.push_back(p);
      core_props.insert(p.name);
    }
  for (const auto& m : parts.front().part.methods)
    if (method_common(m)) {
      split.core.methods.push_back(m);
      core_methods.insert(m.name);
    }

  for (const auto& lp : parts) {
    LabeledPart residue{lp.label, {}};
    for (const auto& p : lp.part.properties)
      if (!core_props.count(p.name)) residue.part.properties.push_back(p);
    for (const auto& m : lp.part.methods)
      if (!core_methods.count(m.name)) residue.part.methods.push_back(m);
    split.projections.push_back(std::move(residue));
  }
  return split;
}

LabeledPart class_part_of(const Operand& op) {
  if (!op.object || !op.cls) throw Error(Errc::ValidationError, "operand missing object or class");
  if (!op.cls->is_homogeneous())
    throw Error(Errc::KindMismatch,
                "operand '" + op.object->id + "' is typed by a heterogeneous class");
  const auto& body = op.cls->homogeneous_body();
  return LabeledPart{op.object->id, ClassPart{body.spec.properties(), body.sig.methods()}};
}

namespace {

std::vector<LabeledPart> parts_of(const std::vector<Operand>& operands) {
  std::vector<LabeledPart> parts;
  parts.reserve(operands.size());
  for (const auto& op : operands) parts.push_back(class_part_of(op));
  return parts;
}

bool all_same_type(const std::vector<Operand>& operands) {
  const auto& first = operands.front();
  return std::all_of(operands.begin() + 1, operands.end(), [&](const Operand& op) {
    return same_type(*first.object, first.cls->homogeneous_body().sig, *op.object,
                     op.cls->homogeneous_body().sig);
  });
}

}  // namespace

UnionResult object_union(const std::vector<Operand>& operands, const std::string& class_name) {
  if (operands.size() < 2) throw Error(Errc::ValidationError, "union needs at least two objects");
  std::set<std::string> ids;
  for (const auto& op : operands)
    if (!ids.insert(op.object->id).second)
      throw Error(Errc::DuplicateId, "object '" + op.object->id + "' appears twice in the union");

  std::vector<LabeledPart> parts = parts_of(operands);
  CoreSplit split = core_and_projections(parts);

  ObjectSet set;
  for (const auto& op : operands) set.member_ids.push_back(op.object->id);
  set.class_name = class_name;

  bool projections_empty = std::all_of(split.projections.begin(), split.projections.end(),
                                       [](const LabeledPart& lp) { return lp.part.empty(); });
  if (all_same_type(operands)) {
    // Same-type inputs: the generated class is homogeneous (empty
    // projections collapse away) and repeats the first operand's class.
    const auto& part = parts.front().part;
    return {std::move(set), FuzzyClass::homogeneous(class_name, Specification::make(part.properties),
                                                    Signature::make(part.methods))};
  }
  if (projections_empty) {
    return {std::move(set),
            FuzzyClass::homogeneous(class_name, Specification::make(split.core.properties),
                                    Signature::make(split.core.methods))};
  }
  return {std::move(set),
          FuzzyClass::heterogeneous(class_name, std::move(split.core), std::move(split.projections))};
}

FuzzyClass object_intersection(const Operand& a, const Operand& b, const std::string& class_name) {
  CoreSplit split = core_and_projections({class_part_of(a), class_part_of(b)});
  if (split.core.properties.empty()) {
    std::string detail = split.core.methods.empty() ? "no common properties or methods"
                                                    : "no common properties (methods alone cannot "
                                                      "form a class)";
    throw Error(Errc::EmptyCore, detail + " between '" + a.object->id + "' and '" + b.object->id + "'");
  }
  return FuzzyClass::homogeneous(class_name, Specification::make(split.core.properties),
                                 Signature::make(split.core.methods));
}

FuzzyClass object_difference(const Operand& a, const Operand& b, const std::string& class_name) {
  CoreSplit split = core_and_projections({class_part_of(a), class_part_of(b)});
  const ClassPart& residue = split.projections.front().part;
  if (residue.empty())
    throw Error(Errc::EmptyResult,
                "'" + a.object->id + "' and '" + b.object->id + "' are of the same type");
  if (residue.properties.empty())
    throw Error(Errc::EmptyResult, "nothing peculiar to '" + a.object->id +
                                       "' beyond methods, which alone cannot form a class");
  return FuzzyClass::homogeneous(class_name, Specification::make(residue.properties),
                                 Signature::make(residue.methods));
}

FuzzyClass object_symmetric_difference(const Operand& a, const Operand& b,
                                       const std::string& class_name) {
  CoreSplit split = core_and_projections({class_part_of(a), class_part_of(b)});
  bool both_empty = std::all_of(split.projections.begin(), split.projections.end(),
                                [](const LabeledPart& lp) { return lp.part.empty(); });
  if (both_empty)
    throw Error(Errc::EmptyResult,
                "'" + a.object->id + "' and '" + b.object->id + "' are of the same type");
  return FuzzyClass::heterogeneous(class_name, ClassPart{}, std::move(split.projections));
}

std::string clone_id(const std::string& base_id, int n) { return base_id + "_" + std::to_string(n); }

FuzzyObject clone_object(const FuzzyObject& a, int n) {
  if (n < 1) throw Error(Errc::ValidationError, "copy index must be a positive integer");
  FuzzyObject copy = a;
  copy.id = clone_id(a.id, n);
  return copy;
}

}  // namespace fuzzobj
