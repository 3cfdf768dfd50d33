#include "latlab/common.hpp"
#include "latlab/runner.hpp"

#include <doctest.h>

#include <string>

using namespace latlab;
using namespace latlab::cli;

namespace {

RunConfig config(const std::string& command, std::map<std::string, std::string> params = {}) {
  RunConfig c;
  c.command = command;
  c.params = std::move(params);
  return c;
}

}  // namespace

TEST_CASE("every subcommand runs with its defaults and names its anchor") {
  for (const auto& cmd : subcommands()) {
    CAPTURE(cmd);
    CHECK_FALSE(anchor(cmd).empty());
    const auto report = run(config(cmd));
    CHECK(report["command"] == cmd);
    CHECK(report["anchor"] == anchor(cmd));
    CHECK(report.contains("result"));
    CHECK_FALSE(report.contains("elapsed_seconds"));
  }
}

TEST_CASE("reports are byte-identical across runs and execution paths") {
  const auto a = render(run(config("thickthin", {{"samples", "300"}})), "json");
  const auto b = render(run(config("thickthin", {{"samples", "300"}})), "json");
  CHECK(a == b);
  const auto s = run(config("thickthin", {{"samples", "300"}, {"exec", "serial"}}));
  const auto p = run(config("thickthin", {{"samples", "300"}, {"exec", "parallel"}}));
  CHECK(s["result"] == p["result"]);
  const auto t1 = render(run(config("presentation", {{"seed", "3"}})), "json");
  const auto t2 = render(run(config("presentation", {{"seed", "3"}})), "json");
  CHECK(t1 == t2);
}

TEST_CASE("config files") {
  const std::string dir = LATLAB_TEST_DATA;
  const auto c = apply_config_file(dir + "/thickthin.cfg", config("thickthin"));
  CHECK(c.params.at("samples") == "400");
  CHECK(c.params.at("seed") == "7");
  CHECK(render(run(c), "json") == render(run(apply_config_file(dir + "/thickthin.cfg", config("thickthin"))), "json"));
  CHECK_THROWS_AS(apply_config_file(dir + "/malformed.cfg", config("classify")), PreconditionError);
  CHECK_THROWS_AS(apply_config_file(dir + "/missing.cfg", config("classify")), PreconditionError);
}

TEST_CASE("bad input is rejected") {
  CHECK_THROWS_AS(run(config("frobnicate")), PreconditionError);
  CHECK_THROWS_AS(run(config("classify", {{"bogus", "1"}})), PreconditionError);
  CHECK_THROWS_AS(run(config("thickthin", {{"epsilon", "abc"}})), PreconditionError);
  CHECK_THROWS_AS(run(config("thickthin", {{"word-ball", "0"}})), PreconditionError);
  CHECK_THROWS_AS(run(config("solvable", {{"primes", "5,9"}})), PreconditionError);
  CHECK_THROWS_AS(run(config("classify", {{"matrix", "1.00001,0,0,0.99999"}})), BorderlineError);
  CHECK(exit_code("borderline") == 3);
  CHECK(exit_code("precondition") == 2);
}

TEST_CASE("csv output") {
  const auto csv = render(run(config("count-presentations")), "csv");
  CHECK(csv.rfind("v,count,log_ratio\n", 0) == 0);
  CHECK(csv.find("\n4,") != std::string::npos);
  const auto flat = render(run(config("jordan")), "csv");
  CHECK(flat.find("group_order,60") != std::string::npos);
}

TEST_CASE("timing is opt-in") {
  auto c = config("span");
  c.timing = true;
  CHECK(run(c).contains("elapsed_seconds"));
}

TEST_CASE("error reports") {
  const auto r = error_report(config("classify"), "borderline", "trace near 2", {"parabolic", "hyperbolic"});
  CHECK(r.dump().find("parabolic") != std::string::npos);
  CHECK(r.dump().find("trace near 2") != std::string::npos);
}
