#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "flowcat/cli.hpp"
#include "flowcat/error.hpp"
#include "flowcat/io.hpp"

using namespace flowcat;

namespace {

std::string data(const std::string& name) { return std::string(FLOWCAT_TEST_DATA) + "/" + name; }

struct Run {
  int code;
  std::string out, err;
  Json json() const { return Json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "flowcat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

using EdgeSet = std::set<std::tuple<std::string, std::string, std::string>>;
EdgeSet edges_of(const Json& g) {
  EdgeSet s;
  for (const auto& e : g["edges"]) s.insert({e["id"].get<std::string>(), e["src"].get<std::string>(), e["tgt"].get<std::string>()});
  return s;
}
std::set<std::string> vertices_of(const Json& g) {
  return g["vertices"].get<std::set<std::string>>();
}

}  // namespace

TEST_CASE("validate") {
  CHECK(run({"validate", data("vw.json")}).code == kExitOk);
  auto bad = run({"validate", data("bad_dangling.json")});
  CHECK(bad.code == kExitFailed);
  CHECK_FALSE(bad.json()["valid"].get<bool>());
  CHECK(run({"validate", data("bad_syntax.json")}).code == kExitUsage);
  CHECK(run({"validate", data("missing.json")}).code == kExitUsage);
  CHECK(run({"nonsense"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
}

TEST_CASE("invariants") {
  auto r = run({"invariants", data("loop2.json")});
  REQUIRE(r.code == kExitOk);
  auto j = r.json();
  CHECK(j["ps"] == -1);
  CHECK(j["bf"]["free_rank"] == 0);
  CHECK(j["bf"]["torsion"].empty());
  CHECK(j["irreducible"] == true);
  CHECK(j["nontrivial"] == true);
  CHECK(j["cohereditary_irreducible_count"] == 1);
  CHECK(run({"invariants", data("cuntzH.json")}).json()["ps"] == 1);
  // Keys come out sorted.
  CHECK(r.out.find("\"bf\"") < r.out.find("\"cohereditary_irreducible_count\""));
  CHECK(r.out.find("\"nontrivial\"") < r.out.find("\"ps\""));
}

TEST_CASE("move reproduces the vw example graphs") {
  auto in = run({"move", data("vw.json"), data("vw_in_delay.json")}).json();
  CHECK(vertices_of(in) == std::set<std::string>{"(v,0)", "(w,0)", "(w,1)", "(w,2)"});
  CHECK(edges_of(in) == EdgeSet{{"e", "(v,0)", "(w,1)"},
                                {"f", "(w,0)", "(v,0)"},
                                {"g", "(w,0)", "(w,2)"},
                                {"e_{w,1}", "(w,1)", "(w,0)"},
                                {"e_{w,2}", "(w,2)", "(w,1)"}});
  auto os = run({"move", data("vw.json"), data("vw_out_split.json")}).json();
  CHECK(vertices_of(os) == std::set<std::string>{"(v,0)", "(w,0)", "(w,1)"});
  CHECK(edges_of(os) == EdgeSet{{"(e,0)", "(v,0)", "(w,0)"},
                                {"(e,1)", "(v,0)", "(w,1)"},
                                {"(f,0)", "(w,1)", "(v,0)"},
                                {"(g,0)", "(w,0)", "(w,0)"},
                                {"(g,1)", "(w,0)", "(w,1)"}});
  auto is = run({"move", data("vw.json"), data("vw_in_split.json")}).json();
  CHECK(edges_of(is) == EdgeSet{{"(e,0)", "(v,0)", "(w,1)"},
                                {"(f,0)", "(w,0)", "(v,0)"},
                                {"(f,1)", "(w,1)", "(v,0)"},
                                {"(g,0)", "(w,0)", "(w,0)"},
                                {"(g,1)", "(w,1)", "(w,0)"}});
}

TEST_CASE("move -o output parses back to the same graph") {
  auto path = (std::filesystem::temp_directory_path() / "flowcat_move_out.json").string();
  REQUIRE(run({"move", data("vw.json"), data("vw_in_delay.json"), "-o", path}).code == kExitOk);
  auto g = load_graph(path);
  auto vw = load_graph(data("vw.json"));
  CHECK(g == in_delay(vw, InDelaySpec{{{"e", 1}, {"f", 0}, {"g", 2}}}));
  std::filesystem::remove(path);
}

TEST_CASE("move spec errors") {
  auto dir = std::filesystem::temp_directory_path();
  auto write = [&](const std::string& name, const std::string& text) {
    auto p = (dir / name).string();
    write_file(p, text);
    return p;
  };
  auto missing = write("flowcat_spec1.json", R"({"move": "in_delay", "d": {"e": 1}})");
  CHECK(run({"move", data("vw.json"), missing}).code == kExitUsage);
  auto unknown = write("flowcat_spec2.json", R"({"move": "twist"})");
  CHECK(run({"move", data("vw.json"), unknown}).code == kExitUsage);
  auto stray = write("flowcat_spec3.json", R"({"move": "in_delay", "d": {"e": 1, "f": 0, "g": 0, "q": 1}})");
  auto r = run({"move", data("vw.json"), stray});
  CHECK(r.code == kExitUsage);
  CHECK(r.err.find("\"q\"") != std::string::npos);
  auto heads = write("flowcat_spec4.json", R"({"move": "add_tails", "depth": 2})");
  auto t = run({"move", data("acyclic2.json"), heads});
  CHECK(t.code == kExitOk);
  CHECK(t.err.find("truncated") != std::string::npos);
  for (auto* n : {"flowcat_spec1.json", "flowcat_spec2.json", "flowcat_spec3.json", "flowcat_spec4.json"})
    std::filesystem::remove(dir / n);
}

TEST_CASE("franks") {
  auto j = run({"franks", data("loop2.json"), data("cuntzH.json")}).json();
  CHECK(j["verdict"] == "not_equivalent");
  CHECK(j["reason"] == "PS -1 != 1");
}

TEST_CASE("diagrams") {
  auto j = run({"diagrams", data("acyclic2.json"), "--category", "poset:chain2"}).json();
  CHECK(j["count"] == 4);
  auto l = run({"diagrams", data("H.json"), "--category", "poset:chain2", "--list"}).json();
  CHECK(l["count"] == 2);
  CHECK(l["diagrams"].size() == 2);
  CHECK(run({"diagrams", data("vw.json"), "--category", "mat:2:3"}).json()["count"] == 1);
  CHECK(run({"diagrams", data("vw.json"), "--category", "bogus"}).code == kExitUsage);
}

TEST_CASE("diagram enumeration past the node cap exits with 3") {
  setenv("FLOWCAT_MAX_NODES", "10", 1);
  auto r = run({"diagrams", data("cuntzH.json"), "--category", "finset:4"});
  unsetenv("FLOWCAT_MAX_NODES");
  CHECK(r.code == kExitCap);
}

TEST_CASE("verify") {
  auto r = run({"verify", data("vw.json"), data("vw_in_delay.json"), "--category", "poset:chain2",
                "--samples", "8", "--seed", "4"});
  CHECK(r.code == kExitOk);
  auto j = r.json();
  CHECK(j["passed"] == true);
  CHECK(j["seed"] == 4);
  CHECK(j["hom_exhaustive"] == true);
  auto s = run({"verify", data("vw.json"), data("vw_out_split.json"), "--category", "finset:4",
                "--serial"});
  CHECK(s.code == kExitOk);
  auto m = run({"verify", data("acyclic2.json"), data("acyclic2_remove_sink.json"), "--category",
                "mat:2:3", "--threads", "2"});
  CHECK(m.code == kExitOk);
  auto heads = (std::filesystem::temp_directory_path() / "flowcat_heads.json").string();
  write_file(heads, R"({"move": "add_heads", "depth": 1})");
  CHECK(run({"verify", data("vw.json"), heads, "--category", "poset:chain2"}).code == kExitUsage);
  std::filesystem::remove(heads);
}

TEST_CASE("lpa-check") {
  auto ok = run({"lpa-check", data("loop1.json"), "--field", "2", "--diagram", data("loop1_d1.json")});
  CHECK(ok.code == kExitOk);
  CHECK(ok.json()["total_dim"] == 1);
  auto big = run({"lpa-check", data("acyclic2.json"), "--field", "3", "--diagram",
                  data("acyclic2_d123.json")});
  CHECK(big.code == kExitOk);
  CHECK(big.json()["relations"][4]["checked"] == 1);
  auto bad = run({"lpa-check", data("loop1.json"), "--field", "2", "--diagram", data("loop1_bad.json")});
  CHECK(bad.code == kExitFailed);
  CHECK(bad.json()["coproduct_condition"]["vertex"] == "u");
  CHECK(run({"lpa-check", data("loop1.json"), "--field", "4", "--diagram", data("loop1_d1.json")})
            .code == kExitUsage);
}

TEST_CASE("report") {
  auto c = run({"report", "cuntz"});
  CHECK(c.code == kExitOk);
  CHECK(c.json()["verdict"] == "open question — not decided by this tool");
  auto d = run({"report", "desing", "--category", "poset:chain2"}).json();
  CHECK(d["verdict"] == "categories not equivalent");
  auto a = run({"report", "acyclic", data("acyclic2.json")});
  CHECK(a.code == kExitOk);
  auto p = run({"report", "poset", data("loop2.json"), "--text"});
  CHECK(p.code == kExitOk);
  CHECK(p.out.find("verdict: pass") != std::string::npos);
  CHECK(run({"report", "poset"}).code == kExitUsage);
  CHECK(run({"report", "poset", data("loop2.json"), "--category", "finset:2"}).code == kExitUsage);
}

TEST_CASE("render") {
  auto r = run({"render", data("H.json"), "--dot"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("digraph") == 0);
  CHECK(r.out.find("\"lo\" -> \"hi\" [label=\"∞\"]") != std::string::npos);
  auto v = run({"render", data("vw.json")});
  CHECK(v.out.find("\"w\" -> \"w\" [label=\"g\"]") != std::string::npos);
}

TEST_CASE("graph JSON round trip") {
  for (const auto& g : {fixtures::vw(), fixtures::cuntz_h(), fixtures::h_graph()})
    CHECK(graph_from_json(graph_to_json(g)) == g);
}
