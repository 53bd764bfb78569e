#include "doctest.h"
#include "fuzzobj/model.hpp"
#include "support/gen.hpp"

using namespace fuzzobj;

namespace {

Property fuzzy1_prop(const std::string& name, std::vector<std::pair<double, double>> pairs,
                     const std::string& unit) {
  return {name, Fuzzy1Value{Type1FuzzySet::make(std::move(pairs)), unit}};
}

Property degree_prop(const std::string& name, double d) {
  return {name, VerificationValue{Degree(d)}};
}

}  // namespace

TEST_CASE("eq_quantitative on the square and rhombus side sets") {
  // memberships 0.95 vs 0.85 differ and spacings (0.1, 0.4) vs (0.3, 0.1) differ
  Property a = fuzzy1_prop("side_length", {{2.9, 0.95}, {3, 1}, {3.4, 0.75}}, "cm");
  Property b = fuzzy1_prop("side_length", {{1.7, 0.85}, {2, 1}, {2.1, 0.95}}, "cm");
  CHECK_FALSE(eq_quantitative(a, b));
  CHECK(eq_quantitative(a, a));
}

TEST_CASE("eq_quantitative is blind to uniform translation") {
  Property p = fuzzy1_prop("w", {{10, 0.8}, {11, 0.9}, {12, 1}}, "cm");
  Property q = fuzzy1_prop("w", {{20, 0.8}, {21, 0.9}, {22, 1}}, "cm");
  // direct check of the three conditions: same unit, aligned memberships,
  // aligned spacings — values differ only by translation
  CHECK(eq_quantitative(p, q));

  Property other_unit = fuzzy1_prop("w", {{20, 0.8}, {21, 0.9}, {22, 1}}, "kg");
  CHECK_FALSE(eq_quantitative(p, other_unit));
  Property other_spacing = fuzzy1_prop("w", {{20, 0.8}, {21.5, 0.9}, {22, 1}}, "cm");
  CHECK_FALSE(eq_quantitative(p, other_spacing));
  Property other_card = fuzzy1_prop("w", {{20, 0.8}, {21, 0.9}}, "cm");
  CHECK_FALSE(eq_quantitative(p, other_card));
}

TEST_CASE("eq_quantitative compares crisp values as degenerate singletons") {
  Property four_sides{"sides_count", CrispScalarValue{4, "sd."}};
  Property four_sides_too{"sides_count", CrispScalarValue{4, "sd."}};
  Property five{"sides_count", CrispScalarValue{5, "sd."}};
  CHECK(eq_quantitative(four_sides, four_sides_too));
  CHECK_FALSE(eq_quantitative(four_sides, five));

  Property angles_a{"angle_measure", CrispTupleValue{{90, 90, 90, 90}, "deg"}};
  Property angles_b{"angle_measure", CrispTupleValue{{95, 85, 95, 85}, "deg"}};
  CHECK_FALSE(eq_quantitative(angles_a, angles_b));
  CHECK(eq_quantitative(angles_a, angles_a));

  CHECK_THROWS_AS(eq_quantitative(four_sides, degree_prop("sides_count", 1)), Error);
}

TEST_CASE("eq_qualitative compares verification degrees") {
  CHECK(eq_qualitative(degree_prop("p5", 1), degree_prop("p5", 1)));
  CHECK_FALSE(eq_qualitative(degree_prop("p6", 1), degree_prop("p6", 0.8)));
  CHECK(eq_qualitative(degree_prop("p6", 0.8), degree_prop("p6", 0.8)));
  CHECK_THROWS_AS(eq_qualitative(degree_prop("p", 1),
                                 Property{"p", CrispScalarValue{1, ""}}),
                  Error);
}

TEST_CASE("eq_property dispatches over names and kinds") {
  Property quant{"p1", CrispScalarValue{4, "sd."}};
  Property verif = degree_prop("p1", 1);
  CHECK_FALSE(eq_property(quant, verif));
  CHECK(eq_property(quant, quant));
  CHECK(eq_property(Property{"p1", CrispScalarValue{4, "sd."}},
                    Property{"p1", CrispScalarValue{4, "sd."}}));
  CHECK_FALSE(eq_property(Property{"p1", CrispScalarValue{4, "sd."}},
                          Property{"p2", CrispScalarValue{4, "sd."}}));
  // crisp against fuzzy is a kind difference, not an error, through eq_property
  CHECK_FALSE(eq_property(Property{"p", CrispScalarValue{4, "cm"}},
                          fuzzy1_prop("p", {{4, 1}}, "cm")));
}

TEST_CASE("equivalence predicates are reflexive and symmetric") {
  testgen::Rng rng(90210);
  for (int i = 0; i < 300; ++i) {
    Property p{"p", testgen::gen_value(rng)};
    Property q{"p", rng.chance(0.5) ? p.value : testgen::gen_value(rng)};
    CHECK(eq_property(p, p));
    CHECK(eq_property(q, q));
    CHECK(eq_property(p, q) == eq_property(q, p));
    if (is_quantitative(p.value) && is_quantitative(q.value))
      CHECK(eq_quantitative(p, q) == eq_quantitative(q, p));
  }
}

TEST_CASE("translation invariance holds for random fuzzy properties") {
  testgen::Rng rng(112233);
  for (int i = 0; i < 300; ++i) {
    auto set = testgen::gen_t1(rng);
    double offset = rng.int_in(-50, 50);
    std::vector<std::pair<double, double>> moved;
    for (const auto& e : set.elements()) moved.emplace_back(e.value + offset, e.membership);
    Property p{"p", Fuzzy1Value{set, "cm"}};
    Property q{"p", Fuzzy1Value{Type1FuzzySet::make(std::move(moved)), "cm"}};
    CHECK(eq_quantitative(p, q));
  }
}

TEST_CASE("same_type holds for clones and separates square from rhombus") {
  testgen::Rng rng(777);
  auto parts = testgen::gen_parts(rng, 2, 5);
  auto a = testgen::individual_from_part(parts[0], "ca");
  auto b = testgen::individual_from_part(parts[1], "cb");

  CHECK(same_type(a.object, a.cls.homogeneous_body().sig, a.object, a.cls.homogeneous_body().sig));

  FuzzyObject clone = a.object;
  clone.id = "clone";
  CHECK(same_type(clone, a.cls.homogeneous_body().sig, a.object, a.cls.homogeneous_body().sig));

  // square vs rhombus from the worked figures: different specs
  Property sa = fuzzy1_prop("side_length", {{2.9, 0.95}, {3, 1}, {3.4, 0.75}}, "cm");
  Property sb = fuzzy1_prop("side_length", {{1.7, 0.85}, {2, 1}, {2.1, 0.95}}, "cm");
  FuzzyObject square{"A", "square", Specification::make({sa, degree_prop("all_angles_equal", 1)})};
  FuzzyObject rhombus{"B", "rhombus", Specification::make({sb, degree_prop("all_angles_equal", 0.8)})};
  Signature empty = Signature::make({});
  CHECK_FALSE(same_type(square, empty, rhombus, empty));
}

TEST_CASE("instantiate lifts type-1 class properties with supplied grade sets") {
  // the worked example: side set {2.9/0.95, 3/1, 3.4/0.75} with explicit grades
  Specification spec = Specification::make(
      {fuzzy1_prop("side_length", {{2.9, 0.95}, {3, 1}, {3.4, 0.75}}, "cm"),
       Property{"sides_count", CrispScalarValue{4, "sd."}}, degree_prop("all_sides_equal", 1)});
  FuzzyClass cls = FuzzyClass::homogeneous("square", spec, Signature::make({}));

  std::map<std::string, std::vector<Type1FuzzySet>> grades{
      {"side_length",
       {Type1FuzzySet::make({{0.8, 0.9}, {0.9, 0.95}, {0.95, 1}}),
        Type1FuzzySet::make({{0.85, 0.85}, {0.9, 0.9}, {1, 1}}),
        Type1FuzzySet::make({{0.6, 0.8}, {0.7, 0.95}, {0.75, 1}})}}};
  FuzzyObject obj = instantiate(cls, "A", grades);

  const auto& lifted = std::get<Fuzzy2Value>(obj.spec.find("side_length")->value);
  CHECK(lifted.unit == "cm");
  REQUIRE(lifted.set.size() == 3);
  CHECK(lifted.set.elements()[0].value == 2.9);
  CHECK(lifted.set.elements()[0].grades == grades["side_length"][0]);
  CHECK(lifted.set.elements()[2].grades == grades["side_length"][2]);
  // crisp and verification properties copy through
  CHECK(obj.spec.find("sides_count")->value == spec.find("sides_count")->value);
  CHECK(obj.spec.find("all_sides_equal")->value == spec.find("all_sides_equal")->value);
  CHECK(obj.class_name == "square");

  SUBCASE("wrong grade-set count") {
    grades["side_length"].pop_back();
    CHECK_THROWS_AS(instantiate(cls, "A2", grades), Error);
  }
  SUBCASE("unknown property") {
    grades["nope"] = {Type1FuzzySet::make({{1, 1}})};
    try {
      instantiate(cls, "A3", grades);
      FAIL("expected UnknownProperty");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::UnknownProperty);
    }
  }
  SUBCASE("secondary cannot target crisp properties") {
    std::map<std::string, std::vector<Type1FuzzySet>> bad{
        {"sides_count", {Type1FuzzySet::make({{1, 1}})}}};
    CHECK_THROWS_AS(instantiate(cls, "A4", bad), Error);
  }
}

TEST_CASE("instantiate default-lifts each membership to a singleton grade set") {
  Specification spec =
      Specification::make({fuzzy1_prop("w", {{2, 0.9}, {2.2, 1}}, "cm")});
  FuzzyClass cls = FuzzyClass::homogeneous("c", spec, Signature::make({}));
  FuzzyObject obj = instantiate(cls, "x");
  const auto& lifted = std::get<Fuzzy2Value>(obj.spec.find("w")->value);
  REQUIRE(lifted.set.size() == 2);
  CHECK(lifted.set.elements()[0].grades == Type1FuzzySet::make({{0.9, 1}}));
  CHECK(lifted.set.elements()[1].grades == Type1FuzzySet::make({{1, 1}}));
}

TEST_CASE("instantiate of a crisp-only class copies the spec") {
  Specification spec = Specification::make({Property{"n", CrispScalarValue{4, ""}},
                                            Property{"t", CrispTupleValue{{1, 2}, "s"}}});
  FuzzyClass cls = FuzzyClass::homogeneous("c", spec, Signature::make({}));
  FuzzyObject obj = instantiate(cls, "x");
  CHECK(obj.spec == spec);
}

TEST_CASE("default lift erases back to the class property") {
  // erasing = primary with the grade value of maximal membership
  testgen::Rng rng(3141);
  for (int i = 0; i < 200; ++i) {
    auto set = testgen::gen_t1(rng);
    Specification spec = Specification::make({Property{"p", Fuzzy1Value{set, "cm"}}});
    FuzzyClass cls = FuzzyClass::homogeneous("c", spec, Signature::make({}));
    FuzzyObject obj = instantiate(cls, "x");
    const auto& lifted = std::get<Fuzzy2Value>(obj.spec.find("p")->value);
    std::vector<std::pair<double, double>> erased;
    for (const auto& e : lifted.set.elements()) {
      double best_grade = 0, best_membership = -1;
      for (const auto& g : e.grades.elements())
        if (g.membership > best_membership) {
          best_membership = g.membership;
          best_grade = g.value;
        }
      erased.emplace_back(e.value, best_grade);
    }
    CHECK(Type1FuzzySet::make(std::move(erased)) == set);
  }
}

TEST_CASE("specification and signature invariants") {
  CHECK_THROWS_AS(Specification::make({}), Error);
  CHECK_THROWS_AS(Specification::make({Property{"p", CrispScalarValue{1, ""}},
                                       Property{"p", CrispScalarValue{2, ""}}}),
                  Error);
  CHECK_THROWS_AS(Specification::make({Property{"", CrispScalarValue{1, ""}}}), Error);
  CHECK_THROWS_AS(Specification::make({Property{"t", CrispTupleValue{{}, ""}}}), Error);
  CHECK_NOTHROW(Signature::make({}));
  MethodDef m{"f", {"x"}, parse_expr("x"), {}, MethodKind::Exploiter};
  CHECK_THROWS_AS(Signature::make({m, m}), Error);
}

TEST_CASE("class construction checks name disjointness and method references") {
  Specification spec = Specification::make({Property{"p", CrispScalarValue{1, "cm"}},
                                            degree_prop("ok", 1)});
  MethodDef good{"f", {"x"}, parse_expr("x*p"), parse_guard("ok = 1"), MethodKind::Exploiter};
  CHECK_NOTHROW(FuzzyClass::homogeneous("c", spec, Signature::make({good})));

  MethodDef dangling{"f", {"x"}, parse_expr("x*q"), {}, MethodKind::Exploiter};
  CHECK_THROWS_AS(FuzzyClass::homogeneous("c", spec, Signature::make({dangling})), Error);

  MethodDef bad_guard{"f", {"x"}, parse_expr("x"), parse_guard("p = 1"), MethodKind::Exploiter};
  CHECK_THROWS_AS(FuzzyClass::homogeneous("c", spec, Signature::make({bad_guard})), Error);

  ClassPart core{{Property{"shared", CrispScalarValue{1, ""}}}, {}};
  std::vector<LabeledPart> projections{{"a", ClassPart{{Property{"shared", CrispScalarValue{2, ""}}}, {}}}};
  CHECK_THROWS_AS(FuzzyClass::heterogeneous("h", core, projections), Error);
  CHECK_THROWS_AS(FuzzyClass::heterogeneous("h", core, {}), Error);
  CHECK_NOTHROW(FuzzyClass::heterogeneous(
      "h", core, {{"a", ClassPart{{Property{"own", CrispScalarValue{2, ""}}}, {}}}}));
}

TEST_CASE("objects validate against their class shape") {
  Specification cls_spec = Specification::make(
      {fuzzy1_prop("w", {{2, 0.9}, {2.2, 1}}, "cm"), degree_prop("v", 1)});
  FuzzyClass cls = FuzzyClass::homogeneous("c", cls_spec, Signature::make({}));

  CHECK_NOTHROW(validate_object_against_class(instantiate(cls, "x"), cls));
  CHECK_NOTHROW(validate_object_against_class(FuzzyObject{"y", "c", cls_spec}, cls));

  SUBCASE("missing property") {
    FuzzyObject bad{"z", "c", Specification::make({degree_prop("v", 1)})};
    CHECK_THROWS_AS(validate_object_against_class(bad, cls), Error);
  }
  SUBCASE("wrong kind") {
    FuzzyObject bad{"z", "c",
                    Specification::make({Property{"w", CrispScalarValue{2, "cm"}}, degree_prop("v", 1)})};
    CHECK_THROWS_AS(validate_object_against_class(bad, cls), Error);
  }
  SUBCASE("wrong unit") {
    FuzzyObject bad{"z", "c",
                    Specification::make({fuzzy1_prop("w", {{2, 0.9}, {2.2, 1}}, "kg"), degree_prop("v", 1)})};
    CHECK_THROWS_AS(validate_object_against_class(bad, cls), Error);
  }
}
