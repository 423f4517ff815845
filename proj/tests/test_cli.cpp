#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

// End-to-end tests against the installed binary. TGA_CLI_PATH and
// TGA_DOCS_DIR come from the build system.

namespace {

using json = nlohmann::ordered_json;

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  REQUIRE_MESSAGE(bool(f), ("cannot open " + path));
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const std::string errfile = "/tmp/tga_cli_stderr_" + std::to_string(++counter);
  std::string cmd = env.empty() ? std::string() : env + " ";
  cmd += std::string(TGA_CLI_PATH) + " " + args + " 2>" + errfile;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(errfile);
  std::remove(errfile.c_str());
  return r;
}

json error_of(const RunResult& r) {
  const json e = json::parse(r.err);
  REQUIRE(e.contains("error"));
  return e.at("error");
}

}  // namespace

TEST_CASE("analyze shortcut matches the reference run") {
  const RunResult r =
      run_cli("analyze --p 3 --exponents 1,1 --e-gen \"[[2,0],[0,2]]\"");
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  const json rep = json::parse(r.out);
  CHECK(rep.at("schema_version") == "1.0");
  CHECK(rep.at("algebra_dim") == 18);
  CHECK(rep.at("hh1_dim") == 8);
  CHECK(rep.at("solvable") == false);
  CHECK(rep.at("multiplicity_free") == false);
  CHECK(rep.at("theorem_verdicts").size() == 4);
  for (const json& v : rep.at("theorem_verdicts")) {
    CHECK(v.at("status") == "CONFIRMED");
    CHECK(v.at("converse_status") == "CONFIRMED");
  }
}

TEST_CASE("exit codes separate usage, validation and violations") {
  SUBCASE("malformed inline JSON is a usage-level failure") {
    const RunResult r = run_cli("analyze --input '{bad'");
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(error_of(r).at("code") == "MalformedJson");
  }
  SUBCASE("a composite characteristic is a validation failure") {
    const RunResult r = run_cli("analyze --p 4 --exponents 1");
    CHECK(r.code == 2);
    const json e = error_of(r);
    CHECK(e.at("code") == "NonPrime");
    CHECK(std::string(e.at("message")).find("not prime") != std::string::npos);
  }
  SUBCASE("an action of order divisible by p is a validation failure") {
    // x -> x^4 on C9 has order 3 = p.
    const RunResult r = run_cli("analyze --p 3 --exponents 2 --e-gen \"[[4]]\"");
    CHECK(r.code == 2);
    CHECK(std::string(error_of(r).at("message")).find("divisible by p") != std::string::npos);
  }
  SUBCASE("missing input and unknown flags are usage errors") {
    CHECK(run_cli("analyze").code == 1);
    CHECK(run_cli("").code == 1);
    CHECK(run_cli("analyze --p 3 --exponents 1 --frobnicate").code == 1);
    CHECK(run_cli("gallery --only nope").code == 2);
  }
  SUBCASE("help exits cleanly") {
    CHECK(run_cli("--help").code == 0);
  }
}

TEST_CASE("hh1 facts match the pinned examples") {
  SUBCASE("the symmetric group S3 over F_3") {
    const RunResult r = run_cli("hh1 --p 3 --exponents 1 --e-gen \"[[2]]\"");
    CHECK(r.code == 0);
    const json h = json::parse(r.out);
    CHECK(h.at("dim") == 1);
    CHECK(h.at("structure_constants").empty());
    CHECK(h.at("solvable") == true);
    CHECK(h.at("representatives_in_radical") == true);
  }
  SUBCASE("F_2 C2 is solvable but not nilpotent") {
    const RunResult r = run_cli("hh1 --p 2 --exponents 1");
    const json h = json::parse(r.out);
    CHECK(h.at("dim") == 2);
    CHECK(h.at("solvable") == true);
    CHECK(h.at("nilpotent") == false);
    CHECK(!h.at("structure_constants").empty());
  }
  SUBCASE("F_3 C3 carries the Witt algebra") {
    const RunResult r = run_cli("hh1 --p 3 --exponents 1");
    const json h = json::parse(r.out);
    CHECK(h.at("dim") == 3);
    CHECK(h.at("simplicity") == "Simple");
  }
}

TEST_CASE("input files, inline JSON and flag overrides agree") {
  const RunResult direct =
      run_cli("analyze --p 3 --exponents 1,1 --e-gen \"[[2,0],[0,2]]\"");
  REQUIRE(direct.code == 0);
  const json echoed = json::parse(direct.out).at("input");

  const std::string spec_file = "/tmp/tga_cli_input.json";
  {
    std::ofstream f(spec_file);
    f << echoed.dump();
  }
  const RunResult from_file = run_cli("analyze --input " + spec_file);
  CHECK(from_file.code == 0);
  CHECK(from_file.out == direct.out);

  const RunResult inline_json = run_cli("analyze --input '" + echoed.dump() + "'");
  CHECK(inline_json.code == 0);
  CHECK(inline_json.out == direct.out);

  SUBCASE("HH1_SEED overrides the seed everywhere") {
    const RunResult seeded =
        run_cli("analyze --input " + spec_file + " --seed 5", "HH1_SEED=777");
    CHECK(seeded.code == 0);
    CHECK(json::parse(seeded.out).at("input").at("flags").at("seed") == 777);
    const RunResult bad = run_cli("analyze --input " + spec_file, "HH1_SEED=xyz");
    CHECK(bad.code == 1);
    CHECK(error_of(bad).at("code") == "Usage");
  }
  SUBCASE("--input excludes the shortcut flags") {
    CHECK(run_cli("analyze --input " + spec_file + " --p 3").code == 1);
  }
  std::remove(spec_file.c_str());
}

TEST_CASE("reports conform to the published schema") {
  const json schema = json::parse(slurp(std::string(TGA_DOCS_DIR) + "/schema.json"));
  const json defs = schema.at("definitions");

  const RunResult a = run_cli("analyze --p 2 --exponents 1,1");
  REQUIRE(a.code == 0);
  const json rep = json::parse(a.out);
  for (const json& key : defs.at("analysis_report").at("required"))
    CHECK_MESSAGE(rep.contains(key.get<std::string>()), ("missing " + key.get<std::string>()));
  CHECK(rep.at("schema_version") ==
        defs.at("analysis_report").at("properties").at("schema_version").at("const"));
  const json simp_enum =
      defs.at("analysis_report").at("properties").at("simplicity").at("enum");
  CHECK(std::find(simp_enum.begin(), simp_enum.end(), rep.at("simplicity")) != simp_enum.end());
  for (const json& v : rep.at("theorem_verdicts")) {
    for (const json& key : defs.at("theorem_verdict").at("required"))
      CHECK(v.contains(key.get<std::string>()));
    const json st_enum = defs.at("theorem_verdict").at("properties").at("status").at("enum");
    CHECK(std::find(st_enum.begin(), st_enum.end(), v.at("status")) != st_enum.end());
  }
  for (const json& key : defs.at("input_spec").at("required"))
    CHECK(rep.at("input").contains(key.get<std::string>()));

  const RunResult h = run_cli("hh1 --p 2 --exponents 1,1");
  REQUIRE(h.code == 0);
  const json facts = json::parse(h.out);
  for (const json& key : defs.at("hh1_facts").at("required"))
    CHECK_MESSAGE(facts.contains(key.get<std::string>()), ("missing " + key.get<std::string>()));

  SUBCASE("output is byte-deterministic across runs") {
    const RunResult again = run_cli("analyze --p 2 --exponents 1,1");
    CHECK(again.out == a.out);
  }
}

TEST_CASE("gallery subcommand runs clean and the manifest doc is current") {
  const RunResult full = run_cli("gallery");
  CHECK(full.code == 0);
  CHECK(full.err.empty());
  int passes = 0;
  std::istringstream lines(full.out);
  for (std::string line; std::getline(lines, line);) {
    CHECK(line.rfind("PASS ", 0) == 0);
    ++passes;
  }
  CHECK(passes == 25);

  SUBCASE("filters and forced oracle runs") {
    const RunResult one = run_cli("gallery --only qci");
    CHECK(one.code == 0);
    CHECK(one.out.find("PASS qci") != std::string::npos);
    const RunResult oracled = run_cli("gallery --only d10 --oracle");
    CHECK(oracled.code == 0);
    CHECK(oracled.out.find("oracle checked") != std::string::npos);
    const RunResult as_json = run_cli("gallery --only kc2 --json");
    const json j = json::parse(as_json.out);
    CHECK(j.at("ok") == true);
    CHECK(j.at("reports").size() == 1);
    CHECK(j.at("reports").at(0).at("name") == "kc2");
    CHECK(j.at("reports").at(0).at("pass") == true);
  }
  SUBCASE("the generated manifest matches docs/gallery_manifest.json") {
    const RunResult m = run_cli("gallery --manifest");
    CHECK(m.code == 0);
    CHECK(m.out == slurp(std::string(TGA_DOCS_DIR) + "/gallery_manifest.json"));
  }
}

TEST_CASE("validate-cocycle accepts genuine cocycles and reports the twist") {
  const RunResult bichar = run_cli(
      "validate-cocycle --p 3 --exponents 1,1 --e-gen \"[[2,0],[0,1]]\" "
      "--e-gen \"[[1,0],[0,2]]\" --alpha bicharacter --pairing \"[[0,1],[0,0]]\" "
      "--root-order 2");
  CHECK(bichar.code == 0);
  const json v = json::parse(bichar.out);
  CHECK(v.at("valid") == true);
  CHECK(v.at("algebra_dim") == 36);
  CHECK(v.at("e_order") == 4);
  CHECK(v.at("alpha_trivial") == false);

  const RunResult table = run_cli(
      "validate-cocycle --p 3 --exponents 1 --e-gen \"[[2]]\" "
      "--alpha-table '[[\"1\",\"1\"],[\"1\",\"1\"]]'");
  CHECK(table.code == 0);
  CHECK(json::parse(table.out).at("alpha_trivial") == true);

  // alpha(e, e) = -1 is a 2-cocycle on C2 but not a coboundary over F_3,
  // since -1 is not a square there.
  const RunResult twisted = run_cli(
      "validate-cocycle --p 3 --exponents 1 --e-gen \"[[2]]\" "
      "--alpha-table '[[\"1\",\"1\"],[\"1\",\"2\"]]'");
  CHECK(twisted.code == 0);
  CHECK(json::parse(twisted.out).at("alpha_trivial") == false);

  const RunResult bad = run_cli(
      "validate-cocycle --p 3 --exponents 1 --e-gen \"[[2]]\" "
      "--alpha-table '[[\"1\",\"2\"],[\"1\",\"1\"]]'");
  CHECK(bad.code == 2);
  CHECK(error_of(bad).at("code") == "NotNormalized");
}
