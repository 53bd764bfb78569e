#pragma once

#include <string>
#include <vector>

#include "fuzzobj/model.hpp"

namespace fuzzobj {

/// Set of objects produced by union, typed by a generated class.
struct ObjectSet {
  std::vector<std::string> member_ids;
  std::string class_name;
  bool operator==(const ObjectSet&) const = default;
};

struct CoreSplit {
  ClassPart core;
  std::vector<LabeledPart> projections;  // one per input part, same order
};

/// Splits the parts into the mutually common core and per-part residues.
/// A property is common when every part holds an eq_property-equivalent
/// one; a method is common when every part holds an alpha-equivalent one
/// of the same name. The core carries the first part's values and order;
/// core and projection reconstitute each part exactly (as multisets by
/// name).
CoreSplit core_and_projections(const std::vector<LabeledPart>& parts);

/// One operand of a set-theoretic operation: an object together with its
/// class, whose class-level specification and signature feed the core
/// computation.
struct Operand {
  const FuzzyObject* object = nullptr;
  const FuzzyClass* cls = nullptr;
};

struct UnionResult {
  ObjectSet set;
  FuzzyClass generated;
};

/// Union over two or more objects. The generated class is heterogeneous
/// with one projection per object; when all inputs are of the same type it
/// collapses to a homogeneous class. Duplicate ids are rejected.
UnionResult object_union(const std::vector<Operand>& operands, const std::string& class_name);

/// Intersection: a homogeneous class holding exactly the common core.
/// Raises EmptyCore when no common properties remain.
FuzzyClass object_intersection(const Operand& a, const Operand& b, const std::string& class_name);

/// Difference: a homogeneous class holding exactly a's projection.
/// Raises EmptyResult when nothing peculiar to a remains.
FuzzyClass object_difference(const Operand& a, const Operand& b, const std::string& class_name);

/// Symmetric difference: a heterogeneous class made of both projections
/// with an empty core. Raises EmptyResult when both projections are empty.
FuzzyClass object_symmetric_difference(const Operand& a, const Operand& b, const std::string& class_name);

/// Deep copy with the id suffixed by `n` (A -> A_1). Collision checking
/// against the knowledge base is the caller's job.
FuzzyObject clone_object(const FuzzyObject& a, int n);

/// Clone id scheme, exposed for collision checks.
std::string clone_id(const std::string& base_id, int n);

/// Class-level part of an operand (specification plus signature, labeled
/// with the object id).
LabeledPart class_part_of(const Operand& op);

}  // namespace fuzzobj
