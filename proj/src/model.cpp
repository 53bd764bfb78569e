#include "fuzzobj/model.hpp"

#include <algorithm>
#include <set>

namespace fuzzobj {

std::size_t FuzzyTupleValue::arity() const {
  return is_type1() ? std::get<0>(sets).size() : std::get<1>(sets).size();
}

PropertyKind kind_of(const PropertyValue& value) {
  switch (value.index()) {
    case 0: return PropertyKind::CrispScalar;
    case 1: return PropertyKind::CrispTuple;
    case 2: return PropertyKind::Fuzzy1;
    case 3: return PropertyKind::Fuzzy2;
    case 4: return PropertyKind::FuzzyTuple;
    default: return PropertyKind::Verification;
  }
}

const char* property_kind_name(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::CrispScalar: return "scalar";
    case PropertyKind::CrispTuple: return "tuple";
    case PropertyKind::Fuzzy1: return "fuzzy1";
    case PropertyKind::Fuzzy2: return "fuzzy2";
    case PropertyKind::FuzzyTuple: return "fuzzy tuple";
    case PropertyKind::Verification: return "verification";
  }
  return "?";
}

bool is_quantitative(const PropertyValue& value) {
  return kind_of(value) != PropertyKind::Verification;
}

void validate_property_value(const PropertyValue& value) {
  if (const auto* t = std::get_if<CrispTupleValue>(&value)) {
    if (t->values.empty()) throw Error(Errc::EmptySet, "crisp tuple must not be empty");
    for (double v : t->values)
      if (!std::isfinite(v)) throw Error(Errc::BadValue, "non-finite tuple component");
  } else if (const auto* s = std::get_if<CrispScalarValue>(&value)) {
    if (!std::isfinite(s->value)) throw Error(Errc::BadValue, "non-finite scalar");
  } else if (const auto* ft = std::get_if<FuzzyTupleValue>(&value)) {
    if (ft->arity() == 0) throw Error(Errc::EmptySet, "fuzzy tuple must not be empty");
  }
  // Fuzzy sets and degrees enforce their own invariants on construction.
}

// ---------------------------------------------------------------------------
// Specification / Signature / FuzzyClass

Specification Specification::make(std::vector<Property> properties) {
  if (properties.empty()) throw Error(Errc::EmptySet, "specification must hold at least one property");
  std::set<std::string> seen;
  for (const auto& p : properties) {
    if (p.name.empty()) throw Error(Errc::ValidationError, "property name must not be empty");
    if (!seen.insert(p.name).second)
      throw Error(Errc::DuplicateId, "duplicate property name '" + p.name + "'");
    validate_property_value(p.value);
  }
  Specification s;
  s.props_ = std::move(properties);
  return s;
}

const Property* Specification::find(const std::string& name) const {
  for (const auto& p : props_)
    if (p.name == name) return &p;
  return nullptr;
}

Signature Signature::make(std::vector<MethodDef> methods) {
  std::set<std::string> seen;
  for (const auto& m : methods) {
    if (m.name.empty()) throw Error(Errc::ValidationError, "method name must not be empty");
    if (!seen.insert(m.name).second)
      throw Error(Errc::DuplicateId, "duplicate method name '" + m.name + "'");
    if (!m.body) throw Error(Errc::ValidationError, "method '" + m.name + "' has no body");
  }
  Signature s;
  s.methods_ = std::move(methods);
  return s;
}

const MethodDef* Signature::find(const std::string& name) const {
  for (const auto& m : methods_)
    if (m.name == name) return &m;
  return nullptr;
}

void validate_method_refs(const MethodDef& method, const std::vector<Property>& visible) {
  auto find_visible = [&](const std::string& name) -> const Property* {
    for (const auto& p : visible)
      if (p.name == name) return &p;
    return nullptr;
  };
  for_each_ref(method.body, [&](const NameRef& ref) {
    if (std::find(method.params.begin(), method.params.end(), ref.name) != method.params.end()) {
      if (ref.index)
        throw Error(Errc::ValidationError,
                    "method '" + method.name + "': parameter '" + ref.name + "' cannot be indexed");
      return;
    }
    const Property* p = find_visible(ref.name);
    if (!p)
      throw Error(Errc::UnknownProperty,
                  "method '" + method.name + "' references unknown name '" + ref.name + "'");
    if (ref.index) {
      std::size_t arity = 0;
      if (const auto* t = std::get_if<CrispTupleValue>(&p->value)) arity = t->values.size();
      else if (const auto* ft = std::get_if<FuzzyTupleValue>(&p->value)) arity = ft->arity();
      else
        throw Error(Errc::KindMismatch,
                    "method '" + method.name + "': property '" + ref.name + "' is not a tuple");
      if (*ref.index >= arity)
        throw Error(Errc::ArityMismatch, "method '" + method.name + "': index " +
                                             std::to_string(*ref.index) + " out of range for '" +
                                             ref.name + "'");
    }
  });
  for (const auto& atom : method.guard) {
    const Property* p = find_visible(atom.property);
    if (!p)
      throw Error(Errc::UnknownProperty,
                  "guard of '" + method.name + "' references unknown property '" + atom.property + "'");
    if (kind_of(p->value) != PropertyKind::Verification)
      throw Error(Errc::KindMismatch,
                  "guard of '" + method.name + "' references non-verification property '" +
                      atom.property + "'");
  }
}

namespace {

void check_part_names(const ClassPart& core, const std::vector<LabeledPart>& projections) {
  std::set<std::string> core_props, core_methods;
  for (const auto& p : core.properties) core_props.insert(p.name);
  for (const auto& m : core.methods) core_methods.insert(m.name);
  for (const auto& pr : projections) {
    std::set<std::string> seen_props, seen_methods;
    for (const auto& p : pr.part.properties) {
      if (core_props.count(p.name))
        throw Error(Errc::DuplicateId,
                    "property '" + p.name + "' appears in both core and projection '" + pr.label + "'");
      if (!seen_props.insert(p.name).second)
        throw Error(Errc::DuplicateId, "duplicate property '" + p.name + "' in projection '" + pr.label + "'");
      validate_property_value(p.value);
    }
    for (const auto& m : pr.part.methods) {
      if (core_methods.count(m.name))
        throw Error(Errc::DuplicateId,
                    "method '" + m.name + "' appears in both core and projection '" + pr.label + "'");
      if (!seen_methods.insert(m.name).second)
        throw Error(Errc::DuplicateId, "duplicate method '" + m.name + "' in projection '" + pr.label + "'");
    }
  }
}

}  // namespace

FuzzyClass FuzzyClass::homogeneous(std::string name, Specification spec, Signature sig) {
  if (name.empty()) throw Error(Errc::ValidationError, "class name must not be empty");
  for (const auto& m : sig.methods()) validate_method_refs(m, spec.properties());
  return FuzzyClass(std::move(name), HomogeneousBody{std::move(spec), std::move(sig)});
}

FuzzyClass FuzzyClass::heterogeneous(std::string name, ClassPart core,
                                     std::vector<LabeledPart> projections) {
  if (name.empty()) throw Error(Errc::ValidationError, "class name must not be empty");
  if (projections.empty())
    throw Error(Errc::ValidationError, "heterogeneous class needs at least one projection");
  for (const auto& p : core.properties) validate_property_value(p.value);
  check_part_names(core, projections);
  // Method names may resolve against any slice of the class; objects carry
  // the full property set at evaluation time.
  std::vector<Property> visible = core.properties;
  for (const auto& pr : projections)
    visible.insert(visible.end(), pr.part.properties.begin(), pr.part.properties.end());
  for (const auto& m : core.methods) validate_method_refs(m, visible);
  for (const auto& pr : projections)
    for (const auto& m : pr.part.methods) validate_method_refs(m, visible);
  return FuzzyClass(std::move(name), HeterogeneousBody{std::move(core), std::move(projections)});
}

std::vector<std::string> FuzzyClass::property_names() const {
  std::vector<std::string> out;
  if (is_homogeneous()) {
    for (const auto& p : homogeneous_body().spec.properties()) out.push_back(p.name);
  } else {
    const auto& b = heterogeneous_body();
    for (const auto& p : b.core.properties) out.push_back(p.name);
    for (const auto& pr : b.projections)
      for (const auto& p : pr.part.properties) out.push_back(p.name);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence predicates

namespace {

// Aligned memberships and aligned consecutive spacings, both within
// tolerance; absolute support values play no part.
bool t1_equivalent(const Type1FuzzySet& a, const Type1FuzzySet& b) {
  if (a.size() != b.size()) return false;
  const auto& ea = a.elements();
  const auto& eb = b.elements();
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (!approx_eq(ea[i].membership, eb[i].membership)) return false;
  for (std::size_t i = 0; i + 1 < ea.size(); ++i)
    if (!approx_eq(ea[i + 1].value - ea[i].value, eb[i + 1].value - eb[i].value)) return false;
  return true;
}

bool t2_equivalent(const Type2FuzzySet& a, const Type2FuzzySet& b) {
  if (a.size() != b.size()) return false;
  const auto& ea = a.elements();
  const auto& eb = b.elements();
  for (std::size_t i = 0; i < ea.size(); ++i)
    if (!set_identical(ea[i].grades, eb[i].grades)) return false;
  for (std::size_t i = 0; i + 1 < ea.size(); ++i)
    if (!approx_eq(ea[i + 1].value - ea[i].value, eb[i + 1].value - eb[i].value)) return false;
  return true;
}

}  // namespace

bool set_identical(const Type1FuzzySet& a, const Type1FuzzySet& b) {
  if (a.size() != b.size()) return false;
  const auto& ea = a.elements();
  const auto& eb = b.elements();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (!approx_eq(ea[i].value, eb[i].value)) return false;
    if (!approx_eq(ea[i].membership, eb[i].membership)) return false;
  }
  return true;
}

bool set_identical(const Type2FuzzySet& a, const Type2FuzzySet& b) {
  if (a.size() != b.size()) return false;
  const auto& ea = a.elements();
  const auto& eb = b.elements();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (!approx_eq(ea[i].value, eb[i].value)) return false;
    if (!set_identical(ea[i].grades, eb[i].grades)) return false;
  }
  return true;
}

bool eq_quantitative(const Property& p, const Property& q) {
  if (!is_quantitative(p.value) || !is_quantitative(q.value))
    throw Error(Errc::KindMismatch, "eq_quantitative applied to a verification property");
  if (kind_of(p.value) != kind_of(q.value)) return false;
  switch (kind_of(p.value)) {
    case PropertyKind::CrispScalar: {
      const auto& a = std::get<CrispScalarValue>(p.value);
      const auto& b = std::get<CrispScalarValue>(q.value);
      return a.unit == b.unit && approx_eq(a.value, b.value);
    }
    case PropertyKind::CrispTuple: {
      const auto& a = std::get<CrispTupleValue>(p.value);
      const auto& b = std::get<CrispTupleValue>(q.value);
      if (a.unit != b.unit || a.values.size() != b.values.size()) return false;
      for (std::size_t i = 0; i < a.values.size(); ++i)
        if (!approx_eq(a.values[i], b.values[i])) return false;
      return true;
    }
    case PropertyKind::Fuzzy1: {
      const auto& a = std::get<Fuzzy1Value>(p.value);
      const auto& b = std::get<Fuzzy1Value>(q.value);
      return a.unit == b.unit && t1_equivalent(a.set, b.set);
    }
    case PropertyKind::Fuzzy2: {
      const auto& a = std::get<Fuzzy2Value>(p.value);
      const auto& b = std::get<Fuzzy2Value>(q.value);
      return a.unit == b.unit && t2_equivalent(a.set, b.set);
    }
    case PropertyKind::FuzzyTuple: {
      const auto& a = std::get<FuzzyTupleValue>(p.value);
      const auto& b = std::get<FuzzyTupleValue>(q.value);
      if (a.unit != b.unit || a.is_type1() != b.is_type1() || a.arity() != b.arity()) return false;
      if (a.is_type1()) {
        const auto& sa = std::get<0>(a.sets);
        const auto& sb = std::get<0>(b.sets);
        for (std::size_t i = 0; i < sa.size(); ++i)
          if (!t1_equivalent(sa[i], sb[i])) return false;
      } else {
        const auto& sa = std::get<1>(a.sets);
        const auto& sb = std::get<1>(b.sets);
        for (std::size_t i = 0; i < sa.size(); ++i)
          if (!t2_equivalent(sa[i], sb[i])) return false;
      }
      return true;
    }
    default:
      return false;
  }
}

bool eq_qualitative(const Property& p, const Property& q) {
  const auto* a = std::get_if<VerificationValue>(&p.value);
  const auto* b = std::get_if<VerificationValue>(&q.value);
  if (!a || !b) throw Error(Errc::KindMismatch, "eq_qualitative applied to a quantitative property");
  return approx_eq(a->degree.value(), b->degree.value());
}

bool eq_property(const Property& p, const Property& q) {
  if (p.name != q.name) return false;
  bool pq = is_quantitative(p.value);
  bool qq = is_quantitative(q.value);
  if (pq != qq) return false;
  return pq ? eq_quantitative(p, q) : eq_qualitative(p, q);
}

bool same_type(const FuzzyObject& a, const Signature& sig_a, const FuzzyObject& b,
               const Signature& sig_b) {
  if (a.spec.size() != b.spec.size()) return false;
  for (const auto& p : a.spec.properties()) {
    const Property* q = b.spec.find(p.name);
    if (!q || !eq_property(p, *q)) return false;
  }
  if (sig_a.size() != sig_b.size()) return false;
  for (const auto& m : sig_a.methods()) {
    const MethodDef* n = sig_b.find(m.name);
    if (!n || !alpha_equivalent(m, *n)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Instantiation

namespace {

Type2FuzzySet lift_set(const Type1FuzzySet& set, const std::vector<Type1FuzzySet>* grades,
                       const std::string& property) {
  const auto& elems = set.elements();
  if (grades && grades->size() != elems.size())
    throw Error(Errc::ArityMismatch, "property '" + property + "': " + std::to_string(grades->size()) +
                                         " grade sets for " + std::to_string(elems.size()) +
                                         " primary values");
  std::vector<Type2Element> out;
  out.reserve(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    Type1FuzzySet g = grades ? (*grades)[i] : Type1FuzzySet::make({{elems[i].membership, 1.0}});
    out.push_back({elems[i].value, std::move(g)});
  }
  return Type2FuzzySet::make(std::move(out));
}

}  // namespace

FuzzyObject instantiate(const FuzzyClass& cls, const std::string& id,
                        const std::map<std::string, std::vector<Type1FuzzySet>>& secondary) {
  if (!cls.is_homogeneous())
    throw Error(Errc::KindMismatch, "objects can only be instantiated from homogeneous classes");
  if (id.empty()) throw Error(Errc::ValidationError, "object id must not be empty");
  const Specification& spec = cls.homogeneous_body().spec;
  for (const auto& [name, _] : secondary) {
    const Property* p = spec.find(name);
    if (!p)
      throw Error(Errc::UnknownProperty, "secondary grades name unknown property '" + name + "'");
    PropertyKind k = kind_of(p->value);
    bool type1 = k == PropertyKind::Fuzzy1 ||
                 (k == PropertyKind::FuzzyTuple && std::get<FuzzyTupleValue>(p->value).is_type1());
    if (!type1)
      throw Error(Errc::KindMismatch, "secondary grades target non-type-1 property '" + name + "'");
  }
  std::vector<Property> props;
  props.reserve(spec.size());
  for (const auto& p : spec.properties()) {
    auto it = secondary.find(p.name);
    const std::vector<Type1FuzzySet>* grades = it == secondary.end() ? nullptr : &it->second;
    if (const auto* f1 = std::get_if<Fuzzy1Value>(&p.value)) {
      props.push_back({p.name, Fuzzy2Value{lift_set(f1->set, grades, p.name), f1->unit}});
    } else if (const auto* ft = std::get_if<FuzzyTupleValue>(&p.value); ft && ft->is_type1()) {
      std::vector<Type2FuzzySet> lifted;
      for (const auto& component : std::get<0>(ft->sets))
        lifted.push_back(lift_set(component, grades, p.name));
      props.push_back({p.name, FuzzyTupleValue{std::move(lifted), ft->unit}});
    } else {
      props.push_back(p);
    }
  }
  return FuzzyObject{id, cls.name(), Specification::make(std::move(props))};
}

// ---------------------------------------------------------------------------
// Object / class shape check

namespace {

bool kinds_compatible(const PropertyValue& cls_value, const PropertyValue& obj_value) {
  PropertyKind ck = kind_of(cls_value);
  PropertyKind ok = kind_of(obj_value);
  if (ck == ok) {
    if (ck == PropertyKind::CrispTuple)
      return std::get<CrispTupleValue>(cls_value).values.size() ==
             std::get<CrispTupleValue>(obj_value).values.size();
    if (ck == PropertyKind::FuzzyTuple) {
      const auto& c = std::get<FuzzyTupleValue>(cls_value);
      const auto& o = std::get<FuzzyTupleValue>(obj_value);
      return c.arity() == o.arity() && (c.is_type1() || !o.is_type1());
    }
    return true;
  }
  // A type-1 class property may appear lifted to type-2 on the object.
  if (ck == PropertyKind::Fuzzy1 && ok == PropertyKind::Fuzzy2) return true;
  return false;
}

const std::string* unit_of(const PropertyValue& value) {
  switch (value.index()) {
    case 0: return &std::get<CrispScalarValue>(value).unit;
    case 1: return &std::get<CrispTupleValue>(value).unit;
    case 2: return &std::get<Fuzzy1Value>(value).unit;
    case 3: return &std::get<Fuzzy2Value>(value).unit;
    case 4: return &std::get<FuzzyTupleValue>(value).unit;
    default: return nullptr;
  }
}

}  // namespace

void validate_object_against_class(const FuzzyObject& obj, const FuzzyClass& cls) {
  if (!cls.is_homogeneous())
    throw Error(Errc::ValidationError,
                "object '" + obj.id + "' is typed by heterogeneous class '" + cls.name() + "'");
  const Specification& cspec = cls.homogeneous_body().spec;
  if (obj.spec.size() != cspec.size())
    throw Error(Errc::ValidationError, "object '" + obj.id + "' has " + std::to_string(obj.spec.size()) +
                                           " properties, class '" + cls.name() + "' declares " +
                                           std::to_string(cspec.size()));
  for (std::size_t i = 0; i < cspec.size(); ++i) {
    const Property& cp = cspec.properties()[i];
    const Property& op = obj.spec.properties()[i];
    if (cp.name != op.name)
      throw Error(Errc::ValidationError, "object '" + obj.id + "' property #" + std::to_string(i) +
                                             " is '" + op.name + "', class declares '" + cp.name + "'");
    if (!kinds_compatible(cp.value, op.value))
      throw Error(Errc::ValidationError,
                  "object '" + obj.id + "' property '" + op.name + "' has kind " +
                      property_kind_name(kind_of(op.value)) + ", incompatible with class kind " +
                      property_kind_name(kind_of(cp.value)));
    const std::string* cu = unit_of(cp.value);
    const std::string* ou = unit_of(op.value);
    if (cu && ou && *cu != *ou)
      throw Error(Errc::ValidationError, "object '" + obj.id + "' property '" + op.name + "' has unit '" +
                                             *ou + "', class declares '" + *cu + "'");
  }
}

}  // namespace fuzzobj
