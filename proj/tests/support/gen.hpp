#pragma once

// Seeded random generators for property-style tests. Numeric values live on
// decimal grids (k/100) so canonical serialization round-trips exactly.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fuzzobj/algebra.hpp"
#include "fuzzobj/model.hpp"

namespace testgen {

using namespace fuzzobj;

struct Rng {
  explicit Rng(unsigned seed) : engine(seed) {}
  std::mt19937 engine;

  int int_in(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }
  bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(engine) < p; }
  // Decimal grid value: k/100 with k in [lo*100, hi*100].
  double grid(double lo, double hi) { return int_in(static_cast<int>(lo * 100), static_cast<int>(hi * 100)) / 100.0; }

  template <typename T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(int_in(0, static_cast<int>(xs.size()) - 1))];
  }
};

inline std::string gen_unit(Rng& rng) {
  static const std::vector<std::string> units{"", "cm", "kg", "deg", "s"};
  return rng.pick(units);
}

inline std::vector<double> distinct_grid_values(Rng& rng, int n, double lo, double hi) {
  std::set<double> vals;
  while (static_cast<int>(vals.size()) < n) vals.insert(rng.grid(lo, hi));
  return {vals.begin(), vals.end()};
}

inline Type1FuzzySet gen_t1(Rng& rng, int max_n = 5) {
  int n = rng.int_in(1, max_n);
  auto values = distinct_grid_values(rng, n, -10, 10);
  std::vector<std::pair<double, double>> pairs;
  for (double v : values) pairs.emplace_back(v, rng.grid(0, 1));
  return Type1FuzzySet::make(std::move(pairs));
}

inline Type1FuzzySet gen_grades(Rng& rng, int max_n = 3) {
  int n = rng.int_in(1, max_n);
  auto values = distinct_grid_values(rng, n, 0, 1);
  std::vector<std::pair<double, double>> pairs;
  for (double v : values) pairs.emplace_back(v, rng.grid(0, 1));
  return Type1FuzzySet::make(std::move(pairs));
}

inline Type2FuzzySet gen_t2(Rng& rng, int max_n = 4) {
  int n = rng.int_in(1, max_n);
  auto values = distinct_grid_values(rng, n, -10, 10);
  std::vector<Type2Element> elems;
  for (double v : values) elems.push_back({v, gen_grades(rng)});
  return Type2FuzzySet::make(std::move(elems));
}

inline PropertyValue gen_value(Rng& rng) {
  switch (rng.int_in(0, 5)) {
    case 0: return CrispScalarValue{rng.grid(-10, 10), gen_unit(rng)};
    case 1: {
      int n = rng.int_in(1, 4);
      std::vector<double> vals;
      for (int i = 0; i < n; ++i) vals.push_back(rng.grid(-10, 10));
      return CrispTupleValue{std::move(vals), gen_unit(rng)};
    }
    case 2: return Fuzzy1Value{gen_t1(rng), gen_unit(rng)};
    case 3: return Fuzzy2Value{gen_t2(rng), gen_unit(rng)};
    case 4: {
      int n = rng.int_in(1, 3);
      if (rng.chance(0.5)) {
        std::vector<Type1FuzzySet> sets;
        for (int i = 0; i < n; ++i) sets.push_back(gen_t1(rng));
        return FuzzyTupleValue{std::move(sets), gen_unit(rng)};
      }
      std::vector<Type2FuzzySet> sets;
      for (int i = 0; i < n; ++i) sets.push_back(gen_t2(rng));
      return FuzzyTupleValue{std::move(sets), gen_unit(rng)};
    }
    default: return VerificationValue{Degree(rng.grid(0, 1))};
  }
}

inline MethodDef gen_method(Rng& rng, const std::string& name,
                            const std::vector<std::string>& verification_props = {}) {
  static const std::vector<std::string> bodies{"4*p", "p^2", "p+1", "sqrt(p)*2", "p/2-3", "-p",
                                               "sin(p)+cos(p)", "2^p"};
  std::string param = std::string(1, static_cast<char>('a' + rng.int_in(0, 25)));
  std::string body = rng.pick(bodies);
  for (auto pos = body.find('p'); pos != std::string::npos; pos = body.find('p', pos + param.size()))
    body.replace(pos, 1, param);
  MethodDef m;
  m.name = name;
  m.params = {param};
  m.body = parse_expr(body);
  m.kind = rng.chance(0.8) ? MethodKind::Exploiter : MethodKind::Modifier;
  if (!verification_props.empty() && rng.chance(0.4))
    m.guard = {{rng.pick(verification_props), rng.grid(0, 1)}};
  return m;
}

// Parts over a shared name pool: properties and methods are either shared
// (value-identical across all parts) or peculiar to each part.
inline std::vector<LabeledPart> gen_parts(Rng& rng, int n_parts, int max_props = 6) {
  int n_props = rng.int_in(1, max_props);
  int n_methods = rng.int_in(0, 3);
  std::vector<LabeledPart> parts;
  for (int i = 0; i < n_parts; ++i) parts.push_back({"part" + std::to_string(i), {}});

  for (int p = 0; p < n_props; ++p) {
    std::string name = "p" + std::to_string(p);
    if (rng.chance(0.5)) {
      PropertyValue shared = gen_value(rng);
      for (auto& part : parts) part.part.properties.push_back({name, shared});
    } else {
      for (auto& part : parts) part.part.properties.push_back({name, gen_value(rng)});
    }
  }
  for (int m = 0; m < n_methods; ++m) {
    std::string name = "f" + std::to_string(m);
    if (rng.chance(0.5)) {
      MethodDef shared = gen_method(rng, name);
      for (auto& part : parts) part.part.methods.push_back(shared);
    } else {
      for (auto& part : parts) part.part.methods.push_back(gen_method(rng, name));
    }
  }
  return parts;
}

// Brute-force oracle for core_and_projections: tests every property/method
// pair for equivalence directly, no shortcuts shared with the
// implementation's loop structure.
inline CoreSplit oracle_core(const std::vector<LabeledPart>& parts) {
  CoreSplit out;
  std::set<std::string> core_props, core_methods;
  for (const auto& p : parts.front().part.properties) {
    bool in_all = true;
    for (std::size_t i = 1; i < parts.size() && in_all; ++i) {
      bool found = false;
      for (const auto& q : parts[i].part.properties)
        if (eq_property(p, q)) found = true;
      in_all = found;
    }
    if (in_all) {
      out.core.properties.push_back(p);
      core_props.insert(p.name);
    }
  }
  for (const auto& m : parts.front().part.methods) {
    bool in_all = true;
    for (std::size_t i = 1; i < parts.size() && in_all; ++i) {
      bool found = false;
      for (const auto& n : parts[i].part.methods)
        if (m.name == n.name && alpha_equivalent(m, n)) found = true;
      in_all = found;
    }
    if (in_all) {
      out.core.methods.push_back(m);
      core_methods.insert(m.name);
    }
  }
  for (const auto& part : parts) {
    LabeledPart residue{part.label, {}};
    for (const auto& p : part.part.properties)
      if (!core_props.count(p.name)) residue.part.properties.push_back(p);
    for (const auto& m : part.part.methods)
      if (!core_methods.count(m.name)) residue.part.methods.push_back(m);
    out.projections.push_back(std::move(residue));
  }
  return out;
}

// Object + class pair whose object mirrors the class values (the shape
// every loader-accepted object has).
struct Individual {
  FuzzyObject object;
  FuzzyClass cls;
};

inline Individual individual_from_part(const LabeledPart& part, const std::string& class_name) {
  Specification spec = Specification::make(part.part.properties);
  Signature sig = Signature::make(part.part.methods);
  FuzzyClass cls = FuzzyClass::homogeneous(class_name, spec, sig);
  return {FuzzyObject{part.label, class_name, spec}, std::move(cls)};
}

}  // namespace testgen
