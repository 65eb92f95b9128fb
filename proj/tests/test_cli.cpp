#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "wlab/lattice/kb.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result wlab_cmd(const std::string& args) {
  std::string cmd = std::string("'") + WLAB_CLI_PATH + "' " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

nlohmann::json load_json(const std::string& path) { return nlohmann::json::parse(wlab::lattice::read_file(path)); }

// Enough of JSON Schema for the shipped report schema: oneOf, type, enum,
// required, properties and items.
bool valid(const nlohmann::json& v, const nlohmann::json& s) {
  if (s.contains("oneOf")) {
    int hits = 0;
    for (const auto& b : s["oneOf"]) hits += valid(v, b);
    return hits == 1;
  }
  if (s.contains("enum")) {
    bool found = false;
    for (const auto& e : s["enum"]) found = found || e == v;
    if (!found) return false;
  }
  if (s.contains("type")) {
    const std::string t = s["type"];
    if (t == "object" && !v.is_object()) return false;
    if (t == "array" && !v.is_array()) return false;
    if (t == "string" && !v.is_string()) return false;
    if (t == "integer" && !v.is_number_integer()) return false;
    if (t == "number" && !v.is_number()) return false;
  }
  if (s.contains("required"))
    for (const auto& k : s["required"])
      if (!v.contains(k.get<std::string>())) return false;
  if (s.contains("properties") && v.is_object())
    for (const auto& [k, sub] : s["properties"].items())
      if (v.contains(k) && !valid(v[k], sub)) return false;
  if (s.contains("items") && v.is_array())
    for (const auto& x : v)
      if (!valid(x, s["items"])) return false;
  return true;
}

}  // namespace

TEST_CASE("query exit codes") {
  Result yes = wlab_cmd("query 'WBWT_2 <=W bar(C_N)'");
  CHECK(yes.code == 0);
  CHECK(yes.out.find("Weak Bolzano-Weierstrass") != std::string::npos);

  Result no = wlab_cmd("query 'C_2N <=W bar(PC_2N)'");
  CHECK(no.code == 1);
  CHECK(no.out.find("false") != std::string::npos);

  CHECK(wlab_cmd("query 'bar(C_N) !<=W C_N'").code == 0);
  CHECK(wlab_cmd("query 'C_N <=W LPO'\"'\"").code == 2);
  CHECK(wlab_cmd("query 'FOO <=W C_N'").code == 3);
  CHECK(wlab_cmd("query 'C_N <=Q C_N'").code == 3);
  CHECK(wlab_cmd("query").code == 3);
  CHECK(wlab_cmd("").code == 3);
  CHECK(wlab_cmd("--kb /nonexistent.kb query 'C_N <=W C_N'").code == 3);
}

TEST_CASE("derive and facts") {
  Result d = wlab_cmd("derive");
  CHECK(d.code == 0);
  CHECK(d.out.find("0 contradictions") != std::string::npos);

  std::string bad = temp("wlab-test-contra.kb");
  std::ofstream(bad) << "pos W C_N C_2 ; \"a\"\nneg W C_N C_2 ; \"b\"\n";
  Result c = wlab_cmd("--kb " + bad + " derive");
  CHECK(c.code == 3);
  CHECK(c.out.find("contradiction") != std::string::npos);
  std::filesystem::remove(bad);

  Result f = wlab_cmd("facts WBWT_2");
  CHECK(f.code == 0);
  CHECK(f.out.find("WBWT_2 <=W bar(C_N)") != std::string::npos);
  CHECK(wlab_cmd("facts no-such-text").code == 1);
}

TEST_CASE("hasse and matrix") {
  std::string dot = temp("wlab-test-fig2.dot");
  Result h = wlab_cmd("hasse --nodes fig2 --out " + dot);
  CHECK(h.code == 0);
  std::string g = wlab::lattice::read_file(dot);
  CHECK(g.find("digraph") == 0);
  std::filesystem::remove(dot);
  CHECK(wlab_cmd("hasse --nodes fig2 --out /nonexistent/dir/x.dot").code == 3);

  Result chain = wlab_cmd("hasse --nodes 'C_N,bar(C_N),T(C_N)'");
  CHECK(chain.out.find("cluster_0") != std::string::npos);

  Result m = wlab_cmd("matrix --orders W,TW --diff");
  CHECK(m.code == 0);
  CHECK(m.out.find("classified differently by W and TW: 4") != std::string::npos);
  CHECK(wlab_cmd("matrix --orders W --diff").code == 3);
}

TEST_CASE("run") {
  Result r = wlab_cmd("run retraction_Nbar --input '0,0,5;1' --steps 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("raw output after 5 input digits: 0,0,R,4,4,4") != std::string::npos);
  CHECK(r.out.find("committed: 4,4,4") != std::string::npos);
  CHECK(r.out.find("resets: 1") != std::string::npos);

  Result lim = wlab_cmd("run sort_machine --input '1,0;1' --steps 3");
  CHECK(lim.code == 0);
  CHECK(lim.out.find("limit: 0;1") != std::string::npos);

  CHECK(wlab_cmd("run project_lift --input '0;1|1;0' --steps 30").code == 0);
  CHECK(wlab_cmd("run no_such_machine --input '1;0'").code == 3);
  CHECK(wlab_cmd("run minus_one --input '1;x'").code == 3);
}

TEST_CASE("verify writes schema-valid, reproducible reports") {
  const nlohmann::json schema = load_json(WLAB_SCHEMA_PATH);
  std::string a = temp("wlab-test-a.json"), b = temp("wlab-test-b.json"), s = temp("wlab-test-s.json");

  CHECK(wlab_cmd("verify choice_retraction_finite --seed 3 --all-samples --json " + a).code == 0);
  CHECK(wlab_cmd("verify choice_retraction_finite --seed 3 --all-samples --json " + b).code == 0);
  nlohmann::json ja = load_json(a);
  CHECK(valid(ja, schema));
  CHECK(ja == load_json(b));
  CHECK_FALSE(ja["per-sample"].empty());

  CHECK(wlab_cmd("verify \"LPO' <=sW INF\" --json " + b).code == 0);
  CHECK(valid(load_json(b), schema));

  CHECK(wlab_cmd("verify adversary --json " + s).code == 0);
  nlohmann::json js = load_json(s);
  CHECK(valid(js, schema));
  CHECK(js["verdict"] == "pass");

  nlohmann::json broken = ja;
  broken.erase("summary");
  CHECK_FALSE(valid(broken, schema));

  CHECK(wlab_cmd("verify no-such-suite").code == 3);
  for (const auto& p : {a, b, s}) std::filesystem::remove(p);
}

TEST_CASE("adversary") {
  Result r = wlab_cmd("adversary cn_fmc_solver --budget 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("forced resets: 4 (budget 3)") != std::string::npos);
  Result silent = wlab_cmd("adversary never_committing --budget 1");
  CHECK(silent.code == 2);
  CHECK(silent.out.find("never commits") != std::string::npos);
  CHECK(wlab_cmd("adversary nope --budget 1").code == 3);
  CHECK(wlab_cmd("adversary cn_fmc_solver").code == 3);
}
