#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(TROPENUM_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n = 0;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("polygon invariants") {
  const Run r = run("polygon --vertices \"0,0;3,0;0,3\"");
  CHECK(r.status == 0);
  CHECK(r.out.find("boundary=9") != std::string::npos);
  CHECK(r.out.find("interior=1") != std::string::npos);
  const Run j = run("polygon --degree-triangle 4 --genus 1 --json");
  REQUIRE(j.status == 0);
  const auto doc = nlohmann::json::parse(j.out);
  CHECK(doc.at("dim") == 12);
  CHECK(doc.at("delta") == 2);
  CHECK(doc.at("boundary") == 12);
}

TEST_CASE("bad input exits with 2") {
  CHECK(run("polygon --vertices \"0,0;3\"").status == 2);
  CHECK(run("polygon --vertices \"0,0;1,1;2,2\"").status == 2);
  CHECK(run("count --degree-triangle 1 --genus -5").status == 2);
  CHECK(run("recursion ch --d 2 --delta 0 --beta 1").status == 2);
  CHECK(run("no-such-command").status == 2);
  CHECK(run("").status == 2);
}

TEST_CASE("count output is byte-stable for a fixed seed") {
  const Run a = run("count --degree-triangle 3 --irreducible --seed 4 --format json");
  const Run b = run("count --degree-triangle 3 --irreducible --seed 4 --format json");
  REQUIRE(a.status == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out).at("total") == 12);
  const Run t = run("count --degree-triangle 3 --irreducible");
  CHECK(t.out.rfind("total 12", 0) == 0);
  REQUIRE(run("count --degree-triangle 2 --irreducible --format json -o cli_count.json").status == 0);
  CHECK(nlohmann::json::parse(slurp("cli_count.json")).at("total") == 1);
}

TEST_CASE("svg files are written per curve") {
  std::filesystem::remove_all("cli_svg");
  REQUIRE(run("count --degree-triangle 3 --irreducible --svg-dir cli_svg").status == 0);
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator("cli_svg")) {
    CHECK(entry.path().extension() == ".svg");
    CHECK(slurp(entry.path().string()).rfind("<svg", 0) == 0);
    ++files;
  }
  CHECK(files > 0);
}

TEST_CASE("recursions") {
  const Run k = run("recursion kontsevich --max-d 4");
  CHECK(k.status == 0);
  CHECK(k.out.find("4\t620") != std::string::npos);
  const Run ch = run("recursion ch --d 3 --delta 1");
  CHECK(ch.out.find("12") != std::string::npos);
  const Run t = run("recursion table --max-d 2 --format json");
  CHECK(nlohmann::json::parse(t.out).size() == 3);
}

TEST_CASE("component bounds") {
  const Run r = run("components --vertices \"0,0;1,0;-16,105\" --genus 1");
  CHECK(r.status == 0);
  CHECK(r.out.find('7') != std::string::npos);
  const Run k = run("components --kite 2 3 --genus 2 --json");
  REQUIRE(k.status == 0);
  CHECK(nlohmann::json::parse(k.out).at("bound") == 2);
}

TEST_CASE("baby example tropicalization") {
  const Run r = run("tropicalize --baby-example --mu-valuation 1");
  REQUIRE(r.status == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("vertices").size() == 2);
  REQUIRE(doc.at("edges").size() == 1);
  CHECK(doc.at("edges")[0].at("length") == "1/1");
  CHECK(run("tropicalize --baby-example --mu-valuation 1").out == r.out);
}

TEST_CASE("non-immersion points") {
  const Run f3 = run("nonimmersion --example-4-3 --char 3");
  CHECK(f3.status == 0);
  CHECK(f3.out.find("t=-1") != std::string::npos);
  CHECK(run("nonimmersion --example-4-3 --char 0").out.find("none") != std::string::npos);
  CHECK(run("nonimmersion --example-4-3 --char 5").out.find("none") != std::string::npos);
  CHECK(run("nonimmersion --example-4-3 --char 4").status == 2);
}

TEST_CASE("audit") {
  const Run r = run("audit --degree-triangle 2");
  CHECK(r.status == 0);
  CHECK(r.out.find("passed") != std::string::npos);
}
