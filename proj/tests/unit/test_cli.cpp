#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + std::string(PSBM_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

const std::string kData = PSBM_DATA_DIR;

}  // namespace

TEST_CASE("cli: ball") {
  const auto r = run("ball --space builtin:quintic_ray --center 1 --radius 3");
  CHECK(r.status == 0);
  CHECK(r.out.find("members: {1}") != std::string::npos);
}

TEST_CASE("cli: certify and case table") {
  CHECK(run("certify --space builtin:quintic_gap --spec paper --samples 200 --seed 0").status == 0);
  CHECK(run("certify --space builtin:quintic_gap --spec paper --matkowski --grid 10").status == 0);
  CHECK(run("certify --space builtin:quintic_gap --fn file:" + kData + "/tiny.json --grid 5").status == 1);
  CHECK(run("certify --space builtin:quintic_gap --exponents 0.25,0.25,0.25,0.25").status == 2);
  const auto table = run("case-table --space builtin:quintic_gap --format json");
  CHECK(table.status == 0);
  const auto j = nlohmann::json::parse(table.out);
  CHECK(j["rows"].size() == 15);
}

TEST_CASE("cli: exit codes") {
  CHECK(run("verify-axioms --space file:missing.psb").status == 2);
  CHECK(run("verify-axioms --space builtin:nope").status == 2);
  CHECK(run("verify-axioms --space nowhere").status == 2);
  CHECK(run("ball --space builtin:two_point_a").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("verify-axioms --space builtin:two_point_b").status == 0);
  CHECK(run("verify-axioms --space file:" + kData + "/two_point_b.psb").status == 0);
  CHECK(run("verify-axioms --space file:" + kData + "/two_point_b_mutated.psb").status == 1);
  CHECK(run("topology --space builtin:quintic_ray").status == 2);
  CHECK(run("fixpoint --space builtin:two_point_b --map identity --start 1").status == 0);
  CHECK(run("check-comparison --fn identity --kind matkowski").status == 1);
  CHECK(run("check-comparison --fn half --kind matkowski").status == 0);
  CHECK(run("cover-witness --space builtin:quintic_ray --subfamily 3,5").status == 0);
  CHECK(run("cover-witness --space builtin:two_point_a --subfamily 1").status == 1);
}

TEST_CASE("cli: text and json agree") {
  const auto text = run("separation --space builtin:two_point_a");
  const auto json = nlohmann::json::parse(run("separation --space builtin:two_point_a --format json").out);
  CHECK(text.out.find("t1: false") != std::string::npos);
  CHECK(json["t1"] == false);
  CHECK(json["t0"] == true);

  const auto fp = nlohmann::json::parse(run("fixpoint --space builtin:quintic_gap --start 7 --format json").out);
  CHECK(fp["gaps"] == nlohmann::json::array({34100.0, 486.0, 0.0}));
  const auto fpt = run("fixpoint --space builtin:quintic_gap --start 7");
  CHECK(fpt.out.find("gaps: {34100,486,0}") != std::string::npos);
  CHECK(run("fixpoint --space builtin:quintic_gap --start 7 --format csv").out ==
        "k,a_k,gap_k\n0,7,34100\n1,3,486\n2,0,0\n3,0,\n");
}

TEST_CASE("cli: seed handling") {
  const std::string sample = "ball --space builtin:quintic_ray --center 1 --radius 1e9 --samples 5 --format json";
  CHECK(run(sample + " --seed 4").out == run(sample + " --seed 4").out);
  CHECK(run(sample).out != run(sample + " --seed 3").out);
  CHECK(run(sample, "PSBM_SEED=3 ").out == run(sample + " --seed 3").out);
  CHECK(run(sample + " --seed 0", "PSBM_SEED=3 ").out == run(sample).out);
}

TEST_CASE("cli: repro with a mutated table fails the axiom item") {
  const auto r = run("repro --format json --override two_point_b=" + kData + "/two_point_b_mutated.psb");
  CHECK(r.status == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["items"][0]["id"] == "axioms");
  CHECK(j["items"][0]["passed"] == false);
  CHECK(run("repro --override nope=" + kData + "/two_point_b.psb").status == 2);
}

TEST_CASE("cli: scalar and SIMD kernels give identical reports") {
  const auto simd = run("repro --format json");
  const auto scalar = run("repro --format json", "PSBM_SIMD=scalar ");
  CHECK(simd.status == 0);
  CHECK(simd.out == scalar.out);
}
