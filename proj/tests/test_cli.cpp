#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace {

struct RunResult {
  std::string out;
  int code = -1;
};

// Runs the installed binary through the shell, capturing stdout only.
RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env;
  if (!cmd.empty()) cmd += " ";
  cmd += std::string(ZETALAB_BIN) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

using json = nlohmann::json;

}  // namespace

TEST_CASE("count subcommand") {
  const RunResult circle = run("count -e \"x^2 + y^2 - 1\" -p 5");
  REQUIRE(circle.code == 0);
  REQUIRE(circle.out == "{\"N\":4}\n");

  const RunResult csv = run("count -e \"x^2 + y^2 - 1\" -p 5 --format csv");
  REQUIRE(csv.code == 0);
  REQUIRE(csv.out == "N\n4\n");

  const RunResult proj = run("count --projective -e \"x0^2 + x1^2 + x2^2\" -p 3");
  REQUIRE(proj.code == 0);
  REQUIRE(proj.out == "{\"N\":4}\n");

  const RunResult ext = run("count -e \"x^2 + y^2 - 1\" -p 2 -n 2");
  REQUIRE(ext.code == 0);
  REQUIRE(ext.out == "{\"N\":4}\n");
}

TEST_CASE("count rejects bad input with usage exit code") {
  REQUIRE(run("count -e \"x^2 + y^2 - 1\" -p 4").code == 1);
  REQUIRE(run("count -e \"2x\" -p 5").code == 1);
  REQUIRE(run("count -p 5").code == 1);  // no polynomial given
}

TEST_CASE("weil subcommand emits the full report") {
  const RunResult e = run("weil -e \"x^3 - x\" -p 7 --format json");
  REQUIRE(e.code == 0);
  const json rep = json::parse(e.out);
  REQUIRE(rep["p"] == 7);
  REQUIRE(rep["g"] == 1);
  REQUIRE(rep["counts"] == json({8, 64, 344, 2304}));
  REQUIRE(rep["zeta"]["num"] == json({"1", "0", "7"}));
  REQUIRE(rep["zeta"]["den"] == json({"1", "-8", "7"}));
  REQUIRE(rep["epsilon"] == 1);
  REQUIRE(rep["verdicts"]["rational"] == true);
  REQUIRE(rep["verdicts"]["functional_eq"] == true);
  REQUIRE(rep["verdicts"]["rh"] == true);
  REQUIRE(rep["verdicts"]["schmidt"] == true);
  REQUIRE(rep["verdicts"]["hasse"] == true);
  REQUIRE(rep["failure"] == "");

  const RunResult g2 = run("weil -e \"x^5 - x\" -p 5 -B 6 --format json");
  REQUIRE(g2.code == 0);
  const json rep2 = json::parse(g2.out);
  REQUIRE(rep2["g"] == 2);
  REQUIRE(rep2["zeta"]["num"] == json({"1", "0", "-10", "0", "25"}));

  // text format is the indented rendering of the same document
  const RunResult text = run("weil -e \"x^3 - x\" -p 7");
  REQUIRE(text.code == 0);
  REQUIRE(json::parse(text.out) == rep);

  REQUIRE(run("weil -e \"x^2\" -p 5").code == 1);
  REQUIRE(run("weil -e \"x^3 - x\" -p 7 --format csv").code == 1);
}

TEST_CASE("gauss subcommand sweeps p = 1 mod 4") {
  const RunResult r = run("gauss --max 50 --format json");
  REQUIRE(r.code == 0);
  const json rep = json::parse(r.out);
  REQUIRE(rep["records"].size() == 6);
  REQUIRE(rep["summary"]["total"] == 6);
  REQUIRE(rep["summary"]["passed"] == 6);
  REQUIRE(rep["summary"]["failed"] == 0);
  REQUIRE(rep["records"][0]["p"] == 5);
  REQUIRE(rep["records"][0]["a"] == -1);
  REQUIRE(rep["records"][0]["b"] == 2);
}

TEST_CASE("tau subcommand") {
  REQUIRE(run("tau -B 100 --all-checks").code == 0);
  const RunResult csv = run("tau -B 12 --format csv");
  REQUIRE(csv.code == 0);
  REQUIRE(csv.out.find("1,1\n") != std::string::npos);
  REQUIRE(csv.out.find("12,-370944\n") != std::string::npos);
  const RunResult js = run("tau -B 30 --all-checks --format json");
  REQUIRE(js.code == 0);
  const json rep = json::parse(js.out);
  REQUIRE(rep["B"] == 30);
  REQUIRE(rep["tau_head"][0] == "1");
  REQUIRE(rep["tau_head"][1] == "-24");
  REQUIRE(rep["all_ok"] == true);
}

TEST_CASE("expsum subcommand") {
  const RunResult r = run("expsum -e \"x^3 + x\" -p 11 --format json");
  REQUIRE(r.code == 0);
  const json rep = json::parse(r.out);
  REQUIRE(rep["p"] == 11);
  REQUIRE(rep["ok"] == true);
  REQUIRE(std::stod(rep["abs_sum"].get<std::string>()) ==
          Catch::Approx(4.89036746713).margin(1e-8));
  // hypothesis failure surfaces as a usage error
  REQUIRE(run("expsum -e \"x^3\" -p 3").code == 1);
}

TEST_CASE("diagonal subcommand") {
  const RunResult r = run("diagonal --coeffs 1 1 --exps 4 2 --rhs 1 -p 13");
  REQUIRE(r.code == 0);
  REQUIRE(r.out == "{\"N\":6}\n");
  REQUIRE(run("diagonal --exps 2 -p 5").code == 1);
}

TEST_CASE("budget limits map to the resource exit code") {
  REQUIRE(run("count -e \"x^2 + y^2 - 1\" -p 5 --budget 10").code == 2);
  REQUIRE(run("count -e \"x^2 + y^2 - 1\" -p 5", "ZETALAB_BUDGET=10").code == 2);
  // explicit flag beats the environment
  REQUIRE(run("count -e \"x^2 + y^2 - 1\" -p 5 --budget 1000000",
              "ZETALAB_BUDGET=10").code == 0);
}

TEST_CASE("global option validation") {
  REQUIRE(run("count -e \"x + 1\" -p 5 --tol 0.5").code == 1);
  REQUIRE(run("").code == 1);                 // a subcommand is required
  REQUIRE(run("count --bogus -p 5").code == 1);
  REQUIRE(run("count -e x -p 5 --format yaml").code == 1);
  REQUIRE(run("--help").code == 0);
  REQUIRE(run("count --help").code == 0);
}
