// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(LINREP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) out.append(buf, n);
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "linrep_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("build writes a set that re-verifies") {
  const fs::path dir = scratch();
  const fs::path set = dir / "b.json";
  const fs::path trace = dir / "b.jsonl";
  const Run r = run("build --form 1,1 --steps 20 --out " + set.string() + " --trace " +
                    trace.string());
  CHECK(r.code == 0);
  const Json report = Json::parse(r.out);
  CHECK(report["size"] == 41);
  CHECK(report["summary"] == "all counts <= 1");
  CHECK(Json::parse(slurp(set)).size() == 41);
  const Run v = run("verify --form 1,1 --set " + set.string());
  CHECK(v.code == 0);
}

TEST_CASE("verify reports the violation") {
  const fs::path bad = scratch() / "bad.json";
  write(bad, R"(["0","1","2"])");
  const Run r = run("verify --form 1,1 --set " + bad.string());
  CHECK(r.code == 1);
  const Json report = Json::parse(r.out);
  REQUIRE(report["violations"].size() == 1);
  CHECK(report["violations"][0]["n"] == "2");
  CHECK(report["violations"][0]["count"] == 2);
}

TEST_CASE("extract") {
  const fs::path a = scratch() / "A.json";
  write(a, R"(["0","1","10","11","100","101"])");
  const Run r = run("extract --set " + a.string() + " --form 1,-1 --n 1 --length 2");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["sequence"] == Json::array({"10", "90"}));
  CHECK(run("extract --set " + a.string() + " --form 1,1 --n 1 --length 2").code == 3);
}

TEST_CASE("analyze") {
  Json a = Json::parse(run("analyze --form 1,-1").out);
  CHECK(a["partition_regular"] == false);
  CHECK(a["zero_sum_certificate"]["coefficients"] == Json::array({"1", "-1"}));
  CHECK(a["automorphism"].is_string());
  a = Json::parse(run("analyze --form 1,1").out);
  CHECK(a["primitive"] == true);
  CHECK(a["partition_regular"] == true);
  CHECK(a["ordered_unique_obstruction"] == true);
  a = Json::parse(run("analyze --form 2,4").out);
  CHECK(a["primitive"] == false);
  const Run text = run("analyze --form 1,2 --format text");
  CHECK(text.out.find("primitive: true") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run("analyze --form 1,0").code == 2);
  CHECK(run("build --form 1,1").code == 2);
  CHECK(run("build --form 2,4 --steps 2").code == 3);
  CHECK(run("build --form 2,3 --steps 2 --half-line 0").code == 3);
  CHECK(run("build --form 1,1,1 --steps 3 --budget 5").code == 4);
  CHECK(run("build --form 1,1 --steps 6 --M0 1 --retry-cap 0").code == 5);
  CHECK(run("verify --form 1,1 --set /nonexistent/file.json").code == 3);
}

TEST_CASE("realize and diff-realize") {
  const fs::path dir = scratch();
  const fs::path target = dir / "t.json";
  write(target, R"({"window":[-9,5],"default":1,"zeros":["5","-9"]})");
  const fs::path set = dir / "r.json";
  Run r = run("realize --form 1,1,1 --target " + target.string() + " --steps 6 --out " +
              set.string());
  CHECK(r.code == 0);
  CHECK(run("verify --form 1,1,1 --set " + set.string() + " --target " + target.string()).code ==
        0);

  r = run("diff-realize --constant inf --window 0,0 --default inf --steps 10");
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["case"] == "infinite");
  r = run("diff-realize --constant 1 --window 0,0 --default 1 --steps 2");
  CHECK(r.code == 3);
}

TEST_CASE("identical runs give identical bytes") {
  const fs::path dir = scratch();
  const Run a = run("build --form 1,2,-3 --steps 8 --out " + (dir / "x1.json").string());
  const Run b = run("build --form 1,2,-3 --steps 8 --out " + (dir / "x2.json").string());
  CHECK(a.out == b.out);
  CHECK(slurp(dir / "x1.json") == slurp(dir / "x2.json"));
}
