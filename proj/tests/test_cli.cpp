#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "fefflab/cli.hpp"

using nlohmann::json;
using namespace fefflab;

namespace {

constexpr double pi = std::numbers::pi;

struct Run {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

bool rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

}  // namespace

TEST_CASE("default invocation prints the schema id") {
  const Run r = run({});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "fefferman-lab/v1\n");
}

TEST_CASE("schema text") {
  const Run r = run({"schema"});
  REQUIRE(r.code == kExitOk);
  const json s = r.doc();
  CHECK(s["$id"] == "fefferman-lab/v1");
  const auto& req = s["$defs"]["measure"]["required"];
  CHECK(std::find(req.begin(), req.end(), "err_est") != req.end());
  CHECK(s["properties"]["command"]["enum"].size() == 11);
}

TEST_CASE("measure sphere") {
  const Run r = run({"measure", "--surface", "sphere", "--radius", "1"});
  REQUIRE(r.code == kExitOk);
  const json d = r.doc();
  CHECK(d["schema"] == "fefferman-lab/v1");
  CHECK(d["command"] == "measure");
  CHECK(d["ok"] == true);
  CHECK(d["config"]["seed"].is_number_integer());
  CHECK(d["config"]["n"] == 32);
  CHECK(rel(d["result"]["fefferman"], std::cbrt(16.0) * pi * pi, 1e-6));
  CHECK(rel(d["result"]["volume"], pi * pi / 2, 1e-10));
  CHECK(rel(d["result"]["quotient"], 8 * pi, 1e-6));
  CHECK(d["result"]["err_est"].get<double>() >= 0);
  for (const auto& [name, value] : d["contracts"].items()) CHECK_MESSAGE(value == true, name);
}

TEST_CASE("ball-caps minimize") {
  const Run r = run({"ball-caps", "--minimize"});
  REQUIRE(r.code == kExitOk);
  const json res = r.doc()["result"];
  CHECK(std::abs(res["R"].get<double>()) < 1e-3);
  CHECK(std::abs(res["theta"].get<double>() - 1.9473) < 1e-3);
  CHECK(std::abs(res["q"].get<double>() - 17.0297) < 1e-3);
}

TEST_CASE("validate-quadrature passes") {
  const Run r = run({"validate-quadrature", "--n", "32"});
  CHECK(r.code == kExitOk);
  CHECK(r.doc()["ok"] == true);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({"measure", "--no-such-flag"}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"measure", "--n", "1"}).code == kExitUsage);
  CHECK(run({"measure", "--surface", "torus"}).code == kExitUsage);
  CHECK(run({"measure", "--surface", "polynomial", "--poly", "z^"}).code == kExitUsage);
  CHECK(run({"jl", "--poly", "1", "--format", "csv"}).code == kExitUsage);
  CHECK(run({"--format", "xml", "measure"}).code == kExitUsage);
  const Run r = run({"measure", "--n", "1"});
  CHECK(r.out.empty());
  CHECK(!r.err.empty());
}

TEST_CASE("contract violations exit 2 with an error envelope") {
  const Run r = run({"measure", "--surface", "polynomial", "--poly", "z^2*zb^2 - w^2*wb^2", "--scale", "-40", "--circular",
                     "--n", "8"});
  CHECK(r.code == kExitContract);
  const json d = r.doc();
  CHECK(d["ok"] == false);
  CHECK(d["error"].is_string());
  CHECK(d["result"].is_null());
}

TEST_CASE("CSV output") {
  const Run sweep = run({"--format", "csv", "ball-caps", "--sweep", "--sweep-n", "4"});
  REQUIRE(sweep.code == kExitOk);
  CHECK(sweep.out.rfind("R,theta,q\n", 0) == 0);
  CHECK(std::count(sweep.out.begin(), sweep.out.end(), '\n') == 17);
  const Run m = run({"--format", "csv", "measure", "--n", "8"});
  REQUIRE(m.code == kExitOk);
  CHECK(m.out.rfind("surface,fefferman,volume,quotient,err_est\n", 0) == 0);
}

TEST_CASE("reports are byte-deterministic and record the seed") {
  const std::vector<std::string> args{"--seed", "123", "hl", "--random", "3", "--n", "16"};
  const Run a = run(args), b = run(args);
  REQUIRE(a.code == kExitOk);
  CHECK(a.out == b.out);
  CHECK(a.doc()["config"]["seed"] == 123);
  const Run c = run({"--seed", "124", "hl", "--random", "3", "--n", "16"});
  CHECK(c.out != a.out);
}

TEST_CASE("output file") {
  const auto path = std::filesystem::temp_directory_path() / "fefflab_cli_test.json";
  std::filesystem::remove(path);
  const Run r = run({"--output", path.string(), "tube", "--curve", "ellipse"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream f(path);
  const json d = json::parse(f);
  CHECK(d["command"] == "tube");
  CHECK(d["contracts"]["ellipse_equality"] == true);
  std::filesystem::remove(path);
}

TEST_CASE("standalone binary") {
  const char* exe = FEFFLAB_CLI;
  std::array<char, 4096> buf{};
  std::string text;
  FILE* p = popen((std::string("\"") + exe + "\" measure --surface sphere --n 8").c_str(), "r");
  REQUIRE(p != nullptr);
  for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), p)) > 0;) text.append(buf.data(), n);
  const int status = pclose(p);
  CHECK(status == 0);
  CHECK(json::parse(text)["ok"] == true);

  FILE* q = popen((std::string("\"") + exe + "\" frobnicate 2>/dev/null").c_str(), "r");
  REQUIRE(q != nullptr);
  while (fread(buf.data(), 1, buf.size(), q) > 0) {
  }
  CHECK(WEXITSTATUS(pclose(q)) == kExitUsage);
}
