#include "fuzzobj/render.hpp"

namespace fuzzobj {

std::string render_set(const Type1FuzzySet& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : set.elements()) {
    if (!first) out += " + ";
    first = false;
    out += format_number(e.value) + "/" + format_number(e.membership);
  }
  return out + "}";
}

std::string render_set(const Type2FuzzySet& set) {
  std::string out = "{";
  bool first = true;
  for (const auto& e : set.elements()) {
    if (!first) out += " + ";
    first = false;
    out += format_number(e.value) + "/" + render_set(e.grades);
  }
  return out + "}";
}

namespace {

std::string with_unit(std::string body, const std::string& unit) {
  if (unit.empty()) return body;
  return body + ", " + unit;
}

}  // namespace

std::string render_value(const PropertyValue& value) {
  switch (kind_of(value)) {
    case PropertyKind::CrispScalar: {
      const auto& v = std::get<CrispScalarValue>(value);
      return with_unit(format_number(v.value), v.unit);
    }
    case PropertyKind::CrispTuple: {
      const auto& v = std::get<CrispTupleValue>(value);
      std::string out = "(";
      for (std::size_t i = 0; i < v.values.size(); ++i) {
        if (i) out += ", ";
        out += format_number(v.values[i]);
      }
      return with_unit(out + ")", v.unit);
    }
    case PropertyKind::Fuzzy1: {
      const auto& v = std::get<Fuzzy1Value>(value);
      return with_unit(render_set(v.set), v.unit);
    }
    case PropertyKind::Fuzzy2: {
      const auto& v = std::get<Fuzzy2Value>(value);
      return with_unit(render_set(v.set), v.unit);
    }
    case PropertyKind::FuzzyTuple: {
      const auto& v = std::get<FuzzyTupleValue>(value);
      std::string out = "(";
      if (v.is_type1()) {
        const auto& sets = std::get<0>(v.sets);
        for (std::size_t i = 0; i < sets.size(); ++i) {
          if (i) out += ", ";
          out += render_set(sets[i]);
        }
      } else {
        const auto& sets = std::get<1>(v.sets);
        for (std::size_t i = 0; i < sets.size(); ++i) {
          if (i) out += ", ";
          out += render_set(sets[i]);
        }
      }
      return with_unit(out + ")", v.unit);
    }
    case PropertyKind::Verification:
      return format_number(std::get<VerificationValue>(value).degree.value());
  }
  return "?";
}

std::string render_method(const MethodDef& method) {
  std::string out = method.name + "(";
  for (std::size_t i = 0; i < method.params.size(); ++i) {
    if (i) out += ", ";
    out += method.params[i];
  }
  out += ") = " + to_string(method.body);
  out += std::string(" [") + method_kind_name(method.kind);
  if (!method.guard.empty()) out += ", if " + guard_to_string(method.guard);
  return out + "]";
}

namespace {

void render_part(std::string& out, const std::vector<Property>& props,
                 const std::vector<MethodDef>& methods, const std::string& indent) {
  if (props.empty() && methods.empty()) {
    out += indent + "(empty)\n";
    return;
  }
  for (const auto& p : props) out += indent + "property " + p.name + " = " + render_value(p.value) + "\n";
  for (const auto& m : methods) out += indent + "method " + render_method(m) + "\n";
}

}  // namespace

std::string render_class(const FuzzyClass& cls) {
  std::string out = "class " + cls.name() +
                    (cls.is_homogeneous() ? " (homogeneous)\n" : " (heterogeneous)\n");
  if (cls.is_homogeneous()) {
    const auto& b = cls.homogeneous_body();
    render_part(out, b.spec.properties(), b.sig.methods(), "  ");
    return out;
  }
  const auto& b = cls.heterogeneous_body();
  out += "  core:\n";
  render_part(out, b.core.properties, b.core.methods, "    ");
  for (const auto& pr : b.projections) {
    out += "  projection " + pr.label + ":\n";
    render_part(out, pr.part.properties, pr.part.methods, "    ");
  }
  return out;
}

}  // namespace fuzzobj
