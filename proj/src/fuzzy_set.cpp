#include "fuzzobj/fuzzy_set.hpp"

#include <algorithm>
#include <cmath>

namespace fuzzobj {

namespace {

void check_membership(double m) {
  if (!(m >= 0.0 && m <= 1.0))
    throw Error(Errc::BadDegree, "membership " +
                                     (std::isfinite(m) ? format_number(m) : std::string("(non-finite)")) +
                                     " outside [0,1]");
}

void check_value(double v) {
  if (!std::isfinite(v)) throw Error(Errc::BadValue, "non-finite support value");
}

void check_exponent(int k) {
  if (k < 1) throw Error(Errc::BadExponent, "exponent must be a positive integer, got " + std::to_string(k));
}

// Sorts pairs by value and merges duplicates (within tolerance) by maximum
// membership. The normalized form satisfies every Type1FuzzySet invariant.
std::vector<FuzzyElement> normalize(std::vector<std::pair<double, double>> pairs, bool strict) {
  if (pairs.empty()) throw Error(Errc::EmptySet, "a fuzzy set needs at least one element");
  for (const auto& [v, m] : pairs) {
    check_value(v);
    check_membership(m);
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<FuzzyElement> out;
  out.reserve(pairs.size());
  for (const auto& [v, m] : pairs) {
    if (!out.empty() && approx_eq(out.back().value, v)) {
      if (strict)
        throw Error(Errc::DuplicateValue, "duplicate support value " + format_number(v));
      out.back().membership = std::max(out.back().membership, m);
    } else {
      out.push_back({v, m});
    }
  }
  return out;
}

}  // namespace

Type1FuzzySet Type1FuzzySet::make(std::vector<std::pair<double, double>> pairs, bool strict) {
  Type1FuzzySet s;
  s.elems_ = normalize(std::move(pairs), strict);
  return s;
}

std::vector<double> Type1FuzzySet::values() const {
  std::vector<double> out;
  out.reserve(elems_.size());
  for (const auto& e : elems_) out.push_back(e.value);
  return out;
}

std::vector<double> Type1FuzzySet::memberships() const {
  std::vector<double> out;
  out.reserve(elems_.size());
  for (const auto& e : elems_) out.push_back(e.membership);
  return out;
}

Type2FuzzySet Type2FuzzySet::make(std::vector<Type2Element> elements, bool strict) {
  if (elements.empty()) throw Error(Errc::EmptySet, "a type-2 fuzzy set needs at least one element");
  for (const auto& e : elements) {
    check_value(e.value);
    for (const auto& g : e.grades.elements())
      if (!(g.value >= 0.0 && g.value <= 1.0))
        throw Error(Errc::BadDegree, "grade value " + format_number(g.value) + " outside [0,1]");
  }
  std::stable_sort(elements.begin(), elements.end(),
                   [](const auto& a, const auto& b) { return a.value < b.value; });
  std::vector<Type2Element> out;
  out.reserve(elements.size());
  for (auto& e : elements) {
    if (!out.empty() && approx_eq(out.back().value, e.value)) {
      if (strict)
        throw Error(Errc::DuplicateValue, "duplicate primary value " + format_number(e.value));
      // Pointwise maximum over the union of grade values.
      std::vector<std::pair<double, double>> merged;
      for (const auto& g : out.back().grades.elements()) merged.emplace_back(g.value, g.membership);
      for (const auto& g : e.grades.elements()) merged.emplace_back(g.value, g.membership);
      out.back().grades = Type1FuzzySet::make(std::move(merged));
    } else {
      out.push_back(std::move(e));
    }
  }
  Type2FuzzySet s;
  s.elems_ = std::move(out);
  return s;
}

namespace {

double apply_checked(const std::function<double(double)>& f, double v) {
  double r = f(v);
  if (!std::isfinite(r))
    throw Error(Errc::EvalError, "map produced a non-finite value at " + format_number(v));
  return r;
}

}  // namespace

Type1FuzzySet map_unary(const Type1FuzzySet& set, const std::function<double(double)>& f) {
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(set.size());
  for (const auto& e : set.elements()) pairs.emplace_back(apply_checked(f, e.value), e.membership);
  return Type1FuzzySet::make(std::move(pairs));
}

Type2FuzzySet map_unary_type2(const Type2FuzzySet& set, const std::function<double(double)>& f) {
  std::vector<Type2Element> elems;
  elems.reserve(set.size());
  for (const auto& e : set.elements()) elems.push_back({apply_checked(f, e.value), e.grades});
  return Type2FuzzySet::make(std::move(elems));
}

// k = 1 and n = 1 are exact identities, not just within tolerance.

Degree dilution(const Degree& d, int k) {
  check_exponent(k);
  if (k == 1) return d;
  return Degree(std::pow(d.value(), 1.0 / k));
}

Type1FuzzySet dilution(const Type1FuzzySet& set, int k) {
  check_exponent(k);
  if (k == 1) return set;
  Type1FuzzySet out = set;
  for (auto& e : out.elems_) e.membership = std::pow(e.membership, 1.0 / k);
  return out;
}

Type2FuzzySet dilution(const Type2FuzzySet& set, int k) {
  check_exponent(k);
  if (k == 1) return set;
  Type2FuzzySet out = set;
  for (auto& e : out.elems_)
    e.grades = map_unary(e.grades, [k](double g) { return std::pow(g, 1.0 / k); });
  return out;
}

Degree concentration(const Degree& d, int n) {
  check_exponent(n);
  if (n == 1) return d;
  return Degree(std::pow(d.value(), n));
}

Type1FuzzySet concentration(const Type1FuzzySet& set, int n) {
  check_exponent(n);
  if (n == 1) return set;
  Type1FuzzySet out = set;
  for (auto& e : out.elems_) e.membership = std::pow(e.membership, n);
  return out;
}

Type2FuzzySet concentration(const Type2FuzzySet& set, int n) {
  check_exponent(n);
  if (n == 1) return set;
  Type2FuzzySet out = set;
  for (auto& e : out.elems_)
    e.grades = map_unary(e.grades, [n](double g) { return std::pow(g, n); });
  return out;
}

}  // namespace fuzzobj
