#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzobj/common.hpp"

namespace fuzzobj {

/// A single truth degree in [0,1].
class Degree {
 public:
  explicit Degree(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0))
      throw Error(Errc::BadDegree, "degree " +
                                       (std::isfinite(value) ? format_number(value) : std::string("(non-finite)")) +
                                       " outside [0,1]");
  }

  double value() const { return value_; }
  bool operator==(const Degree&) const = default;

 private:
  double value_;
};

struct FuzzyElement {
  double value = 0.0;
  double membership = 0.0;
  bool operator==(const FuzzyElement&) const = default;
};

/// Discrete type-1 fuzzy set: value/membership pairs with strictly
/// increasing values, memberships in [0,1], never empty. Unit-free; the
/// measurement unit lives on the enclosing property.
class Type1FuzzySet {
 public:
  /// Builds a set from arbitrary pairs. Values are sorted; duplicates
  /// (within tolerance) merge by maximum membership unless `strict`, in
  /// which case they are rejected.
  static Type1FuzzySet make(std::vector<std::pair<double, double>> pairs, bool strict = false);

  const std::vector<FuzzyElement>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }

  std::vector<double> values() const;
  std::vector<double> memberships() const;

  bool operator==(const Type1FuzzySet&) const = default;

 private:
  friend Type1FuzzySet map_unary(const Type1FuzzySet&, const std::function<double(double)>&);
  friend Type1FuzzySet dilution(const Type1FuzzySet&, int);
  friend Type1FuzzySet concentration(const Type1FuzzySet&, int);
  Type1FuzzySet() = default;
  std::vector<FuzzyElement> elems_;
};

struct Type2Element {
  double value = 0.0;
  Type1FuzzySet grades;  // support restricted to [0,1]
  bool operator==(const Type2Element&) const = default;
};

/// Discrete type-2 fuzzy set: each primary value carries a type-1 grade set
/// whose support values are themselves degrees in [0,1].
class Type2FuzzySet {
 public:
  static Type2FuzzySet make(std::vector<Type2Element> elements, bool strict = false);

  const std::vector<Type2Element>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }

  bool operator==(const Type2FuzzySet&) const = default;

 private:
  friend Type2FuzzySet map_unary_type2(const Type2FuzzySet&, const std::function<double(double)>&);
  friend Type2FuzzySet dilution(const Type2FuzzySet&, int);
  friend Type2FuzzySet concentration(const Type2FuzzySet&, int);
  Type2FuzzySet() = default;
  std::vector<Type2Element> elems_;
};

/// Extension principle for a unary map: values become f(v), memberships are
/// carried over; values colliding under f merge by maximum membership.
/// Non-finite results from f surface as EvalError.
Type1FuzzySet map_unary(const Type1FuzzySet& set, const std::function<double(double)>& f);

/// Same over primary values of a type-2 set; colliding primaries merge
/// their grade sets by pointwise maximum over the union of grade values.
Type2FuzzySet map_unary_type2(const Type2FuzzySet& set, const std::function<double(double)>& f);

/// Dilution: every membership becomes its k-th root. k >= 1.
Degree dilution(const Degree& d, int k);
Type1FuzzySet dilution(const Type1FuzzySet& set, int k);
/// For type-2 sets the membership layer is the grade-set support, so the
/// root applies to grade values.
Type2FuzzySet dilution(const Type2FuzzySet& set, int k);

/// Concentration: every membership raised to the n-th power. n >= 1.
Degree concentration(const Degree& d, int n);
Type1FuzzySet concentration(const Type1FuzzySet& set, int n);
Type2FuzzySet concentration(const Type2FuzzySet& set, int n);

}  // namespace fuzzobj
