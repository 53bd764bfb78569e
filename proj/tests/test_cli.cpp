// End-to-end tests over the built binary: exit codes, report shapes,
// determinism, and the out-file discipline.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "fuzzobj/persistence.hpp"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr combined
};

RunResult run_cli(const std::string& args) {
  std::string command = std::string(FUZZOBJ_CLI_PATH) + " " + args + " 2>&1";
  std::array<char, 4096> buffer{};
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buffer.data(), buffer.size(), pipe)) result.output += buffer.data();
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string fixture(const std::string& name) { return std::string(FUZZOBJ_FIXTURE_DIR "/") + name; }

std::string temp_path(const std::string& name) {
  return std::string(FUZZOBJ_TMP_DIR "/") + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("validate reports counts and exits 0 on the figures fixture") {
  auto result = run_cli("validate --kb " + fixture("figures.json"));
  CHECK(result.exit_code == 0);
  CHECK(result.output == "2 classes, 2 objects, 0 violations\n");
}

TEST_CASE("validate exits 0 on an empty knowledge base") {
  std::string path = temp_path("empty.json");
  std::ofstream(path) << R"({"format_version":1,"classes":{},"objects":{},"rules":[],"derivations":[]})";
  auto result = run_cli("validate --kb " + path);
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("0 classes, 0 objects, 0 violations") == 0);
}

TEST_CASE("validate exits 1 and lists the violation for an inconsistent object") {
  // figures fixture with A's angles bent but all_angles_equal left at 1
  fuzzobj::json doc = fuzzobj::json::parse(slurp(fixture("figures.json")));
  REQUIRE(doc["objects"]["A"]["spec"][3]["name"] == "angle_measure");
  doc["objects"]["A"]["spec"][3]["value"]["values"] = {95.0, 85.0, 95.0, 85.0};
  std::string path = temp_path("bent.json");
  std::ofstream(path) << doc.dump();

  auto result = run_cli("validate --kb " + path);
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("1 violations") != std::string::npos);
  CHECK(result.output.find("all_angles_equal") != std::string::npos);
}

TEST_CASE("validate exits 2 on schema problems") {
  std::string path = temp_path("broken.json");
  std::ofstream(path) << "{\"format_version\": 1}";
  CHECK(run_cli("validate --kb " + path).exit_code == 2);
  CHECK(run_cli("validate --kb " + temp_path("missing-file.json")).exit_code == 2);
}

TEST_CASE("op union writes the updated knowledge base and reports the class") {
  std::string out = temp_path("union.json");
  auto result =
      run_cli("op union A B --kb " + fixture("figures.json") + " --out " + out);
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("set {A, B} : union(square,rhombus)#1") != std::string::npos);
  CHECK(result.output.find("core:") != std::string::npos);
  CHECK(result.output.find("projection A:") != std::string::npos);
  CHECK(result.output.find("method perimeter(a) = 4*a") != std::string::npos);

  // the input file is untouched, the out-file resolves and validates
  CHECK(fuzzobj::load_kb_file(fixture("figures.json")).derivations().empty());
  fuzzobj::KnowledgeBase updated = fuzzobj::load_kb_file(out);
  CHECK(updated.classes().count("union(square,rhombus)#1") == 1);
  REQUIRE(updated.derivations().size() == 1);
  CHECK(updated.derivations()[0].operation == "union");
}

TEST_CASE("op clone registers the numbered copy") {
  std::string out = temp_path("clone.json");
  auto result = run_cli("op clone A 1 --kb " + fixture("figures.json") + " --out " + out);
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("cloned A -> A_1") != std::string::npos);
  fuzzobj::KnowledgeBase updated = fuzzobj::load_kb_file(out);
  CHECK(updated.objects().count("A_1") == 1);
  CHECK(updated.object_named("A_1").class_name == "square");
}

TEST_CASE("op diff of an object with itself exits 1 naming EmptyResult") {
  auto result = run_cli("op diff A A --kb " + fixture("figures.json") + " --out " +
                        temp_path("never.json"));
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("EmptyResult") != std::string::npos);
}

TEST_CASE("op refuses to overwrite the input file") {
  auto result = run_cli("op union A B --kb " + fixture("figures.json") + " --out " +
                        fixture("figures.json"));
  CHECK(result.exit_code == 2);
}

TEST_CASE("eval prints the worked area with its unit") {
  auto result =
      run_cli("eval A area --bind a=side_size --kb " + fixture("square_simple.json"));
  CHECK(result.exit_code == 0);
  CHECK(result.output == "{4/0.9 + 4.84/1 + 5.76/0.9}, cm^2\n");
}

TEST_CASE("eval of a crisp singleton perimeter") {
  std::string path = temp_path("singleton.json");
  std::ofstream(path) << R"({"format_version":1,"classes":{
    "c":{"kind":"homogeneous","spec":[
      {"name":"side","value":{"type":"fuzzy1","unit":"cm","set":[{"value":3,"membership":1}]}}],
      "signature":[{"name":"perimeter","params":["a"],"body":"4*a","kind":"exploiter"}]}},
    "objects":{"X":{"class":"c","spec":[
      {"name":"side","value":{"type":"fuzzy1","unit":"cm","set":[{"value":3,"membership":1}]}}]}},
    "rules":[],"derivations":[]})";
  auto result = run_cli("eval X perimeter --bind a=side --kb " + path);
  CHECK(result.exit_code == 0);
  CHECK(result.output == "{12/1}, cm\n");
}

TEST_CASE("eval failure paths exit 1") {
  SUBCASE("guard failure after modification") {
    std::string out = temp_path("modified.json");
    REQUIRE(run_cli("modify A --modifier " + fixture("rhombus_modifier.json") +
                    " --mode strict --kb " + fixture("figures.json") + " --out " + out)
                .exit_code == 0);
    auto result = run_cli("eval A_1 area --bind a=side_length[0] --kb " + out);
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("GuardFailed") != std::string::npos);
  }
  SUBCASE("unbound parameter") {
    auto result = run_cli("eval A area --kb " + fixture("square_simple.json"));
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("UnboundParameter") != std::string::npos);
  }
  SUBCASE("two fuzzy operands") {
    std::string path = temp_path("twofuzzy.json");
    std::ofstream(path) << R"({"format_version":1,"classes":{
      "c":{"kind":"homogeneous","spec":[
        {"name":"p","value":{"type":"fuzzy1","unit":"","set":[{"value":1,"membership":1}]}}],
        "signature":[{"name":"f","params":["a","b"],"body":"a*b","kind":"exploiter"}]}},
      "objects":{"X":{"class":"c","spec":[
        {"name":"p","value":{"type":"fuzzy1","unit":"","set":[{"value":1,"membership":1}]}}]}},
      "rules":[],"derivations":[]})";
    auto result = run_cli("eval X f --bind a=p --bind b=p --kb " + path);
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("MultiFuzzyOperands") != std::string::npos);
  }
}

TEST_CASE("modify applies the square-to-rhombus modifier end to end") {
  std::string out = temp_path("modify.json");
  auto result = run_cli("modify A --modifier " + fixture("rhombus_modifier.json") +
                        " --mode strict --kb " + fixture("figures.json") + " --out " + out);
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("successor: A_1") != std::string::npos);
  CHECK(result.output.find("dropped: area") != std::string::npos);
  CHECK(result.output.find("generated class: modify(square)#1") != std::string::npos);

  fuzzobj::KnowledgeBase updated = fuzzobj::load_kb_file(out);
  CHECK(updated.objects().count("A_1") == 1);
  CHECK(updated.classes().count("modify(square)#1") == 1);
}

TEST_CASE("modify with an empty modifier keeps the class") {
  std::string mod = temp_path("noop_modifier.json");
  std::ofstream(mod) << R"({"kind":"partial","actions":[]})";
  std::string out = temp_path("noop.json");
  auto result = run_cli("modify B --modifier " + mod + " --mode strict --kb " +
                        fixture("figures.json") + " --out " + out);
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("successor: B_1") != std::string::npos);
  CHECK(result.output.find("dropped: (none)") != std::string::npos);
  CHECK(result.output.find("class unchanged: rhombus") != std::string::npos);
}

TEST_CASE("modify dilution reproduces the diluted degree") {
  std::string mod = temp_path("dilute_modifier.json");
  std::ofstream(mod) << R"({"kind":"partial","actions":[{"target":"all_angles_equal","action":"dilute","k":2}]})";
  std::string out = temp_path("diluted.json");
  auto result = run_cli("modify B --modifier " + mod + " --mode strict --kb " +
                        fixture("figures.json") + " --out " + out);
  CHECK(result.exit_code == 0);
  fuzzobj::KnowledgeBase updated = fuzzobj::load_kb_file(out);
  double degree = std::get<fuzzobj::VerificationValue>(
                      updated.object_named("B_1").spec.find("all_angles_equal")->value)
                      .degree.value();
  CHECK(std::abs(degree - 0.894427191) <= 1e-9);
}

TEST_CASE("modify in strict mode exits 1 naming the violated rule") {
  std::string mod = temp_path("bad_modifier.json");
  std::ofstream(mod) << R"({"kind":"partial","actions":[
    {"target":"angle_measure","action":"set","value":{"type":"tuple","values":[10,20,30,40],"unit":"deg"}}]})";
  auto result = run_cli("modify A --modifier " + mod + " --mode strict --kb " +
                        fixture("figures.json") + " --out " + temp_path("never2.json"));
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("ReflectionViolation") != std::string::npos);
  CHECK(result.output.find("all_angles_equal") != std::string::npos);

  SUBCASE("auto mode recomputes instead") {
    std::string out = temp_path("auto.json");
    auto ok = run_cli("modify A --modifier " + mod + " --mode auto --kb " +
                      fixture("figures.json") + " --out " + out);
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("recomputed: all_angles_equal") != std::string::npos);
  }
}

TEST_CASE("machine-mode output is loadable and byte-deterministic") {
  std::string base = "validate --machine --kb " + fixture("figures.json");
  auto first = run_cli(base);
  auto second = run_cli(base);
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK_NOTHROW(fuzzobj::json::parse(first.output));

  std::string out1 = temp_path("machine1.json");
  std::string out2 = temp_path("machine2.json");
  auto op1 = run_cli("op union A B --machine --kb " + fixture("figures.json") + " --out " + out1);
  auto op2 = run_cli("op union A B --machine --kb " + fixture("figures.json") + " --out " + out2);
  CHECK(op1.exit_code == 0);
  auto normalize = [](std::string s, const std::string& from) {
    for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from)) s.erase(pos, from.size());
    return s;
  };
  CHECK(normalize(op1.output, out1) == normalize(op2.output, out2));
  CHECK(slurp(out1) == slurp(out2));

  auto eval1 = run_cli("eval A area --machine --bind a=side_size --kb " + fixture("square_simple.json"));
  CHECK(eval1.exit_code == 0);
  fuzzobj::json report = fuzzobj::json::parse(eval1.output);
  CHECK(report["rendered"] == "{4/0.9 + 4.84/1 + 5.76/0.9}, cm^2");
  CHECK(report["value"]["unit"] == "cm^2");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("op teleport A B --kb x --out y").exit_code == 2);
  CHECK(run_cli("op union A --kb " + fixture("figures.json") + " --out " + temp_path("x.json"))
            .exit_code == 2);
  CHECK(run_cli("op clone A one --kb " + fixture("figures.json") + " --out " + temp_path("x.json"))
            .exit_code == 2);
  CHECK(run_cli("modify A --mode sideways --modifier x --kb y --out z").exit_code == 2);
  CHECK(run_cli("eval").exit_code == 2);
}

TEST_CASE("unknown ids are domain errors, not usage errors") {
  auto result = run_cli("eval GHOST area --kb " + fixture("figures.json"));
  CHECK(result.exit_code == 1);
  CHECK(result.output.find("UnknownId") != std::string::npos);
  auto op = run_cli("op union A GHOST --kb " + fixture("figures.json") + " --out " +
                    temp_path("never3.json"));
  CHECK(op.exit_code == 1);
  auto method = run_cli("eval A nothing --kb " + fixture("figures.json"));
  CHECK(method.exit_code == 1);
  CHECK(method.output.find("UnknownMethod") != std::string::npos);
}
