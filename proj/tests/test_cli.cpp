#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef QPV_CLI_PATH
#error "QPV_CLI_PATH must point at the qpv binary"
#endif

using nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
  json parsed() const { return json::parse(out); }
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QPV_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("qpv_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST_CASE("classify the split base point") {
  const auto w = temp_file("e7w.json", R"({"n":3,
    "x1":[[0,0,0],[0,1,0],[0,0,-1]],
    "x2":[[1,0,0],[0,-1,0],[0,0,0]]})");
  const auto r = run("classify --input " + w);
  CHECK(r.status == 0);
  const auto j = r.parsed();
  CHECK(j["splitting_type"] == "(1,1,1)");
  CHECK(j["semistable"] == true);
}

TEST_CASE("rep output round-trips through classify") {
  const auto r = run(R"(rep --type split --params '{"p":[1,1,1]}')");
  REQUIRE(r.status == 0);
  const auto f = temp_file("rep.json", r.out);
  const auto c = run("classify --input " + f);
  CHECK(c.status == 0);
  CHECK(c.parsed()["splitting_type"] == "(1,1,1)");

  const auto cubic = run(R"(rep --type cubic --field Fp:3 --params '{"L":[2,2,0,1],"delta":[1,0,0]}')");
  REQUIRE(cubic.status == 0);
  CHECK(cubic.parsed()["splitting_type"] == "(3)");
  const auto cc = run("classify --input " + temp_file("cubic.json", cubic.out));
  CHECK(cc.parsed()["splitting_type"] == "(3)");
  CHECK(cc.parsed()["field"] == json{{"base", "Fp"}, {"p", 3}});
}

TEST_CASE("verify identities over F_5") {
  const auto r = run("verify --suite identities --field Fp:5 --samples 30 --seed 3");
  CHECK(r.status == 0);
  CHECK(r.parsed()["all_passed"] == true);
  CHECK(r.parsed()["seed"] == 3);
  // byte-identical reruns
  CHECK(run("verify --suite identities --field Fp:5 --samples 30 --seed 3").out == r.out);
}

TEST_CASE("census at q = 3") {
  const auto r = run("census --q 3 --n 2");
  CHECK(r.status == 0);
  const auto j = r.parsed();
  CHECK(j["orbit_count"] == 2);
  CHECK(j["vss_size"] == 353808);
  CHECK(j["consistent"] == true);
  CHECK(!j.contains("group_order"));
  CHECK(run("census --q 3 --n 2 --emit-orbit-sizes").parsed().contains("group_order"));
  const auto lim = run(R"(census --q 5 --n 2 --limits '{"max_points":1000}')");
  CHECK(lim.status == 2);
  CHECK(lim.parsed()["error"]["code"] == "ResourceLimit");
  CHECK(run(R"(census --q 3 --limits '{"max_points":0}')").status == 1);
  const auto e7 = run("census --q 3 --n 3 --samples 500 --seed 9");
  CHECK(e7.status == 0);
  CHECK(e7.out == run("census --q 3 --n 3 --samples 500 --seed 9").out);
}

TEST_CASE("params") {
  const auto r = run(R"(params --L "-1,-3,0,1" --B "-1,-1")");
  CHECK(r.status == 0);
  CHECK(r.parsed()["class_count"] == 2);
  CHECK(r.parsed().contains("external_assumption"));
  const auto f = run(R"(params --L "1,2,0,1" --field Fp:3)");
  CHECK(f.status == 0);
  CHECK(f.parsed()["class_count"] == 1);
  CHECK(f.parsed()["modulus"] == json::array({1, 2, 0, 1}));
  const auto bad = run(R"(params --L "-1,-3,0,1" --B "1,1")");
  CHECK(bad.status == 2);
  CHECK(bad.parsed()["error"]["code"] == "NotDefinite");
}

TEST_CASE("reduce round trip") {
  const auto x = temp_file("xa.json", R"({"case":"a","field":{"base":"Fp","p":5},
    "x1":[[1,0,0],[0,0,2],[0,1,0]],"x2":[[0,0,0],[0,1,0],[0,0,1]]})");
  const auto r = run("reduce --case a --target W --input " + x + " --seed 4");
  REQUIRE(r.status == 0);
  const auto j = r.parsed();
  CHECK(j["seed"] == 4);
  CHECK(j["eta_applied"] == false);
  const auto w = temp_file("wa.json", j["w_or_u"].dump());
  const auto again = run("reduce --case a --target W --input " + w);
  CHECK(again.status == 0);
  CHECK(again.parsed()["w_or_u"] == j["w_or_u"]);
  CHECK(again.parsed()["g"]["g2"] == json::array({json::array({1, 0}), json::array({0, 1})}));
  // W^(2) is not W^(1)
  const auto u = run("reduce --case a --target U --input " + w);
  CHECK(u.status == 2);
  CHECK(u.parsed()["error"]["code"] == "NotLevelV1");

  const auto c = temp_file("wc.json", R"({"case":"c","field":{"base":"Q"},"B":{"a":"-1","b":"-1"},
    "x1":[[0,0,0],[0,1,[1,-1,0,0]],[0,[1,1,0,0],0]],
    "x2":[[3,0,0],[0,-1,[-1,1,0,0]],[0,[-1,-1,0,0],-2]]})");
  const auto rc = run("reduce --case c --target U --input " + c);
  CHECK(rc.status == 0);
  if (rc.status == 0) {
    const auto uc = temp_file("uc.json", rc.parsed()["w_or_u"].dump());
    CHECK(run("reduce --case c --target U --input " + uc).parsed()["g"]["g2"] ==
          json::array({json::array({"1/1", "0/1"}), json::array({"0/1", "1/1"})}));
  }
}

TEST_CASE("malformed input and error objects") {
  const auto bad = temp_file("bad.json", R"({"n":2,"x1":[[1,0],[0,1]]})");
  const auto r = run("classify --input " + bad);
  CHECK(r.status == 1);
  const auto e = r.parsed()["error"];
  CHECK(e["code"] == "MalformedInput");
  CHECK(e["offending_path"] == "/x2");
  CHECK(e.contains("message"));

  const auto nh = temp_file("nh.json", R"({"n":2,"x1":[[1,2],[3,1]],"x2":[[1,0],[0,1]]})");
  CHECK(run("classify --input " + nh).parsed()["error"]["offending_path"] == "/x1");
  CHECK(run("classify --input " + temp_file("junk.json", "{not json")).status == 1);
  CHECK(run("reduce --case d --target W --input " + bad).status == 1);
  CHECK(run("").status == 1);
  CHECK(run("rep --type split --params '{\"p\":[1,0,1]}'").status == 2);
  CHECK(run("rep --type split --params '{\"p\":[1,0,1]}'").parsed()["error"]["code"] == "NonUnitParameter");
  CHECK(run("verify --field Fp:4").status == 1);
}
