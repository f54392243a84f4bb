#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "hypsurf/cli.hpp"

using namespace hypsurf;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult exec(const RunConfig& cfg) {
  std::ostringstream out, err;
  int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  fs::path p = fs::temp_directory_path() / "hypsurf-cli-tests";
  fs::create_directories(p);
  return p;
}

// minimal DOT well-formedness check: braces balance, every statement is a
// node or an edge, node names are declared before use
bool dot_parses(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "graph gluing_complex {") return false;
  std::set<std::string> nodes;
  bool closed = false;
  while (std::getline(in, line)) {
    if (line == "}") {
      closed = true;
      break;
    }
    auto first = line.find_first_not_of(' ');
    if (first == std::string::npos) return false;
    std::string body = line.substr(first);
    auto edge = body.find(" -- ");
    if (edge != std::string::npos) {
      std::string a = body.substr(0, edge);
      std::string b = body.substr(edge + 4, body.find(' ', edge + 4) - edge - 4);
      if (!nodes.count(a) || !nodes.count(b)) return false;
    } else {
      auto sp = body.find(' ');
      if (sp == std::string::npos || body.back() != ';') return false;
      nodes.insert(body.substr(0, sp));
    }
  }
  return closed;
}

}  // namespace

TEST_CASE("classify command") {
  RunConfig cfg;
  cfg.command = "classify";
  cfg.endspace = "w^1*1+1";
  cfg.group = "countable";
  auto r = exec(cfg);
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"]["answer"] == "Realizable");
  CHECK(j["ends"] == "w + 1");
  CHECK(j.contains("seed"));

  cfg.endspace = "w^{w}*2+1";
  cfg.group = "vc";
  r = exec(cfg);
  CHECK(r.code == 0);
  j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"]["answer"] == "NotRealizable");
  auto cit = j["verdict"]["citations"].dump();
  CHECK(cit.find("Thm4.16(ii)") != std::string::npos);

  cfg.endspace = "w^1*1+1";
  cfg.group = "builtin:S3";
  r = exec(cfg);
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["verdict"]["answer"] == "Realizable");
}

TEST_CASE("classify exit codes") {
  RunConfig cfg;
  cfg.command = "classify";
  cfg.endspace = "garbage!!";
  cfg.group = "countable";
  CHECK(exec(cfg).code == 2);

  cfg.endspace = R"({"type":"union","parts":[{"type":"cantor"},{"type":"singleton"}]})";
  CHECK(exec(cfg).code == 4);

  cfg.endspace = "w^1*1+1";
  cfg.group = "builtin:NoSuchGroup";
  CHECK(exec(cfg).code == 2);

  cfg.command = "bogus";
  CHECK(exec(cfg).code == 2);
}

TEST_CASE("build then verify round-trips with exit 0") {
  auto dir = scratch();
  RunConfig b;
  b.command = "build";
  b.endspace = "w^1*1+1";
  b.group = "builtin:Z2";
  b.truncation_M = 2;
  b.seed = 7;
  b.output = (dir / "z2.json").string();
  CHECK(exec(b).code == 0);

  RunConfig v;
  v.command = "verify";
  v.input = b.output;
  auto r = exec(v);
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out)["ok"] == true);
}

TEST_CASE("build determinism is byte-exact") {
  RunConfig b;
  b.command = "build";
  b.endspace = "cantor";
  b.group = "builtin:Z3";
  b.seed = 99;
  auto r1 = exec(b);
  auto r2 = exec(b);
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  b.seed = 100;
  CHECK(exec(b).out != r1.out);
}

TEST_CASE("verify rejects tampered files with exit 3") {
  auto dir = scratch();
  RunConfig b;
  b.command = "build";
  b.endspace = "w^1*1+1";
  b.group = "builtin:Z2";
  b.output = (dir / "tamper.json").string();
  CHECK(exec(b).code == 0);

  std::ifstream in(b.output);
  auto j = nlohmann::ordered_json::parse(in);
  in.close();
  double l = std::stod(j["pieces"][0]["ports"][0]["length"].get<std::string>());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", l + 1e-6);
  j["pieces"][0]["ports"][0]["length"] = std::string(buf);
  {
    std::ofstream f(b.output);
    f << j.dump(2) << "\n";
  }
  RunConfig v;
  v.command = "verify";
  v.input = b.output;
  auto r = exec(v);
  CHECK(r.code == 3);
  CHECK(nlohmann::json::parse(r.out)["ok"] == false);
}

TEST_CASE("out-of-scope builders exit 4") {
  RunConfig b;
  b.command = "build";
  b.endspace = "2";  // two points: not self-similar
  b.group = "builtin:Z2";
  b.construction = "y";
  CHECK(exec(b).code == 4);

  b.endspace = "w^{w}*2+1";  // limit rank, degree 2
  b.construction = "x_gamma";
  CHECK(exec(b).code == 4);
}

TEST_CASE("dot export") {
  auto dir = scratch();
  RunConfig b;
  b.command = "build";
  b.endspace = "w^1*1+1";
  b.group = "builtin:Z2";
  b.output = (dir / "fordot.json").string();
  CHECK(exec(b).code == 0);

  RunConfig e;
  e.command = "export";
  e.input = b.output;
  e.format = "dot";
  auto r = exec(e);
  CHECK(r.code == 0);
  CHECK(dot_parses(r.out));

  // direct dot from build
  RunConfig bd = b;
  bd.output.clear();
  bd.format = "dot";
  auto rd = exec(bd);
  CHECK(rd.code == 0);
  CHECK(dot_parses(rd.out));
  CHECK(rd.out == r.out);
}

TEST_CASE("x_gamma and x_infinite constructions through the cli") {
  RunConfig b;
  b.command = "build";
  b.endspace = "w^1*2+1";
  b.construction = "x_gamma";
  b.ball_radius_R = 3;
  auto r = exec(b);
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["recipe"]["kind"] == "x_gamma");

  RunConfig i;
  i.command = "build";
  i.endspace = "1";
  i.construction = "x_infinite";
  i.ball_radius_R = 2;
  i.truncation_M = 1;
  auto ri = exec(i);
  CHECK(ri.code == 0);
  CHECK(nlohmann::json::parse(ri.out)["recipe"]["kind"] == "x_infinite");
}

TEST_CASE("group table files load through the cli") {
  auto dir = scratch();
  auto csv = dir / "z2.csv";
  {
    std::ofstream f(csv);
    f << "e,a\ne,a\na,e\n";
  }
  RunConfig b;
  b.command = "build";
  b.endspace = "w^1*1+1";
  b.group = csv.string();
  CHECK(exec(b).code == 0);
}
