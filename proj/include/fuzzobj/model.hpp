#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fuzzobj/expr.hpp"
#include "fuzzobj/fuzzy_set.hpp"

namespace fuzzobj {

// ---------------------------------------------------------------------------
// Property values

struct CrispScalarValue {
  double value = 0.0;
  std::string unit;
  bool operator==(const CrispScalarValue&) const = default;
};

struct CrispTupleValue {
  std::vector<double> values;  // non-empty
  std::string unit;
  bool operator==(const CrispTupleValue&) const = default;
};

struct Fuzzy1Value {
  Type1FuzzySet set;
  std::string unit;
  bool operator==(const Fuzzy1Value&) const = default;
};

struct Fuzzy2Value {
  Type2FuzzySet set;
  std::string unit;
  bool operator==(const Fuzzy2Value&) const = default;
};

/// Tuple of fuzzy sets sharing one unit and one kind (all type-1 or all
/// type-2); the variant keeps the kinds from mixing.
struct FuzzyTupleValue {
  std::variant<std::vector<Type1FuzzySet>, std::vector<Type2FuzzySet>> sets;
  std::string unit;
  bool operator==(const FuzzyTupleValue&) const = default;

  bool is_type1() const { return sets.index() == 0; }
  std::size_t arity() const;
};

/// Verification degree of a qualitative property.
struct VerificationValue {
  Degree degree;
  bool operator==(const VerificationValue&) const = default;
};

using PropertyValue = std::variant<CrispScalarValue, CrispTupleValue, Fuzzy1Value, Fuzzy2Value,
                                   FuzzyTupleValue, VerificationValue>;

enum class PropertyKind { CrispScalar, CrispTuple, Fuzzy1, Fuzzy2, FuzzyTuple, Verification };

PropertyKind kind_of(const PropertyValue& value);
const char* property_kind_name(PropertyKind kind);
bool is_quantitative(const PropertyValue& value);

/// Enforces the per-value invariants (tuples non-empty, uniform kind).
void validate_property_value(const PropertyValue& value);

struct Property {
  std::string name;
  PropertyValue value;
  bool operator==(const Property&) const = default;
};

// ---------------------------------------------------------------------------
// Specifications, signatures, objects, classes

/// Ordered property vector with pairwise-distinct, non-empty names.
class Specification {
 public:
  static Specification make(std::vector<Property> properties);

  const std::vector<Property>& properties() const { return props_; }
  std::size_t size() const { return props_.size(); }
  const Property* find(const std::string& name) const;
  bool has(const std::string& name) const { return find(name) != nullptr; }

  bool operator==(const Specification&) const = default;

 private:
  friend class SpecificationBuilder;
  Specification() = default;
  std::vector<Property> props_;
};

/// Ordered method vector with pairwise-distinct names. May be empty.
class Signature {
 public:
  static Signature make(std::vector<MethodDef> methods);

  const std::vector<MethodDef>& methods() const { return methods_; }
  std::size_t size() const { return methods_.size(); }
  const MethodDef* find(const std::string& name) const;

  bool operator==(const Signature&) const = default;

 private:
  Signature() = default;
  std::vector<MethodDef> methods_;
};

struct FuzzyObject {
  std::string id;
  std::string class_name;
  Specification spec;
  bool operator==(const FuzzyObject&) const = default;
};

/// Properties and methods of one slice of a class (the core, or one
/// object's projection). Unlike Specification, a part may be empty.
struct ClassPart {
  std::vector<Property> properties;
  std::vector<MethodDef> methods;
  bool operator==(const ClassPart&) const = default;

  bool empty() const { return properties.empty() && methods.empty(); }
};

struct LabeledPart {
  std::string label;
  ClassPart part;
  bool operator==(const LabeledPart&) const = default;
};

struct HomogeneousBody {
  Specification spec;
  Signature sig;
  bool operator==(const HomogeneousBody&) const = default;
};

struct HeterogeneousBody {
  ClassPart core;  // may be empty (symmetric difference leaves no core)
  std::vector<LabeledPart> projections;
  bool operator==(const HeterogeneousBody&) const = default;
};

class FuzzyClass {
 public:
  static FuzzyClass homogeneous(std::string name, Specification spec, Signature sig);
  static FuzzyClass heterogeneous(std::string name, ClassPart core, std::vector<LabeledPart> projections);

  const std::string& name() const { return name_; }
  bool is_homogeneous() const { return body_.index() == 0; }
  const HomogeneousBody& homogeneous_body() const { return std::get<HomogeneousBody>(body_); }
  const HeterogeneousBody& heterogeneous_body() const { return std::get<HeterogeneousBody>(body_); }

  /// Every property name visible anywhere in the class.
  std::vector<std::string> property_names() const;

  bool operator==(const FuzzyClass&) const = default;

 private:
  FuzzyClass(std::string name, std::variant<HomogeneousBody, HeterogeneousBody> body)
      : name_(std::move(name)), body_(std::move(body)) {}
  std::string name_;
  std::variant<HomogeneousBody, HeterogeneousBody> body_;
};

// ---------------------------------------------------------------------------
// Equivalence predicates

/// Structural equality within tolerance: aligned values and memberships
/// all approximately equal. Unlike eq_quantitative this is not translation
/// invariant.
bool set_identical(const Type1FuzzySet& a, const Type1FuzzySet& b);
bool set_identical(const Type2FuzzySet& a, const Type2FuzzySet& b);

/// Equivalence of two quantitative properties: equal units, equal
/// cardinality with aligned memberships equal within tolerance, and aligned
/// consecutive support spacings equal within tolerance. Absolute support
/// values do not matter for fuzzy values (equivalence is translation
/// invariant); crisp values compare as degenerate singletons whose values
/// must themselves be equal. Throws KindMismatch when either side is a
/// verification property.
bool eq_quantitative(const Property& p, const Property& q);

/// Equivalence of two verification properties: degrees equal within
/// tolerance. Throws KindMismatch when either side is quantitative.
bool eq_qualitative(const Property& p, const Property& q);

/// Name-aware dispatcher: false when names or kinds differ, otherwise
/// eq_quantitative or eq_qualitative.
bool eq_property(const Property& p, const Property& q);

/// Objects are of the same type when their specifications align name for
/// name under eq_property and their signatures align name for name under
/// alpha_equivalent. Signatures live on classes, so callers pass them in.
bool same_type(const FuzzyObject& a, const Signature& sig_a, const FuzzyObject& b, const Signature& sig_b);

/// Creates an object of a homogeneous class. Fuzzy type-1 class properties
/// are lifted to type-2 in the object: either with the grade sets supplied
/// in `secondary` (one per primary value, keyed by property name) or with
/// the default singleton grade set {membership/1} per value. Tuple
/// components share the per-property grade sets. Crisp and verification
/// properties copy through unchanged.
FuzzyObject instantiate(const FuzzyClass& cls, const std::string& id,
                        const std::map<std::string, std::vector<Type1FuzzySet>>& secondary = {});

/// Checks that a method's free names resolve against the visible properties
/// and that its guard references verification properties among them.
void validate_method_refs(const MethodDef& method, const std::vector<Property>& visible);

/// Checks the object's spec against its declared class shape: same property
/// names in the same order, equal units, and compatible value kinds (a
/// type-1 class property may be type-2 on the object).
void validate_object_against_class(const FuzzyObject& obj, const FuzzyClass& cls);

}  // namespace fuzzobj
