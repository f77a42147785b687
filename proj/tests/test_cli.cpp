#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "decomp/cli.hpp"
#include "decomp/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace decomp;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("mu on the documented inputs") {
  CHECK(run({"mu", "posets", R"({"n":2,"covers":[[0,1]]})"}).out == "{\"mu\":\"0\"}\n");
  CHECK(run({"mu", "forests", R"({"parent":[null,null,null]})"}).out == "{\"mu\":\"-1\"}\n");
  CHECK(run({"mu", "sets", R"({"n":4})"}).out == "{\"mu\":\"1\"}\n");
  CHECK(run({"mu", "--instance", "ptrees", R"("edge")"}).out == "{\"mu\":\"1\"}\n");
  CHECK(run({"mu", "ptrees", "--signature", "mixed", R"({"op":"h","children":[]})"}).out == "{\"mu\":\"-1\"}\n");
  CHECK(run({"mu", "ptrees", R"({"op":"m","children":["edge",{"op":"m","children":["edge","edge"]}]})"}).out ==
        "{\"mu\":\"0\"}\n");
}

TEST_CASE("inputs may come from files") {
  const std::string path = "cli_test_poset.json";
  std::ofstream(path) << R"({"n": 3, "covers": []})";
  const Run r = run({"mu", "posets", path});
  CHECK(r.code == 0);
  CHECK(r.out == "{\"mu\":\"-1\"}\n");
  std::remove(path.c_str());
  CHECK(run({"mu", "posets", "no_such_file.json"}).code == 2);
}

TEST_CASE("coproduct and phi output") {
  const Run d = run({"coproduct", "sets", R"({"n":2})"});
  CHECK(d.code == 0);
  const auto j = nlohmann::json::parse(d.out);
  REQUIRE(j["coproduct"].size() == 3);
  CHECK(j["coproduct"][1]["coeff"] == "2");
  const Run csv = run({"coproduct", "posets", R"({"n":2,"covers":[]})", "--format", "csv"});
  CHECK(csv.out.rfind("left,right,coeff\n", 0) == 0);
  // Keys with commas are quoted.
  CHECK(csv.out.find("\"P2^1[1,1]{}\"") != std::string::npos);
  CHECK(run({"phi", "posets", R"({"n":2,"covers":[]})", "--format", "csv"}).out == "k,phi\n0,0\n1,1\n2,2\n");
}

TEST_CASE("enumerate and the Möbius table") {
  const Run e = run({"enumerate", "posets", "--max-size", "2"});
  CHECK(nlohmann::json::parse(e.out)["count"] == 4);
  const Run f = run({"enumerate", "forests", "--max-size", "4", "--format", "csv"});
  CHECK(std::count(f.out.begin(), f.out.end(), '\n') == 1 + 1 + 1 + 2 + 4 + 9);
  const Run m = run({"mu", "posets", "--max-size", "3", "--format", "csv"});
  CHECK(m.out.rfind("class,mu,closed_form\n", 0) == 0);
  CHECK(std::count(m.out.begin(), m.out.end(), '\n') == 1 + 1 + 1 + 2 + 5);
}

TEST_CASE("input errors exit 2 with the JSON path") {
  const Run cyc = run({"mu", "posets", R"({"n":3,"covers":[[0,1],[1,2],[2,0]]})"});
  CHECK(cyc.code == 2);
  CHECK(cyc.err.find("$.covers[2]") != std::string::npos);
  CHECK(run({"mu", "posets", R"({"n":2,"covers":[[0,5]]})"}).err.find("$.covers[0][1]") != std::string::npos);
  CHECK(run({"mu", "posets", R"({"n":2,"covers":[[0,1]])"}).err.find("malformed JSON") != std::string::npos);
  CHECK(run({"mu", "posets", R"({"n":8,"covers":[]})"}).err.find("bound exceeded") != std::string::npos);
  CHECK(run({"mu", "forests", R"({"parent":[null,"x"]})"}).err.find("$.parent[1]") != std::string::npos);
  CHECK(run({"mu", "ptrees", R"({"op":"q","children":[]})"}).err.find("$.op") != std::string::npos);
  CHECK(run({"mu", "ptrees", R"({"op":"m","children":["edge",{"op":"m","children":[]}]})"})
            .err.find("$.children[1].children") != std::string::npos);
  CHECK(run({"enumerate", "posets", "--max-size", "8"}).code == 2);
  CHECK(run({"enumerate", "posets", "--max-degree", "4"}).code == 2);
  CHECK(run({"verify", "abacus", "--max-size", "7"}).code == 2);
  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"verify", "coalgebra", "--mutate", "ordinal-sum"}).code == 2);
  CHECK(run({"mu", "--format", "xml"}).code == 2);
  CHECK(run({}).code == 2);
}

TEST_CASE("parsers") {
  const Poset p = poset_from_json(parse_json(R"({"n":3,"covers":[[0,1],[1,2]]})"));
  CHECK(p.less(0, 2));
  CHECK(set_from_json(parse_json(R"({"n":5})")).n == 5);
  CHECK(error_of([] { set_from_json(parse_json(R"({"n":-1})")); }).find("$.n") == 0);
  CHECK(error_of([] { poset_from_json(parse_json(R"({"n":2})")); }).find("covers") != std::string::npos);
  CHECK(error_of([] { forest_from_json(parse_json(R"({"parent":[1,0]})")); }).find("cycle") != std::string::npos);
  const Signature s = signature_from_json(parse_json(R"({"colors":["a"],"ops":[{"name":"u","out":"a","in":["a"]}]})"));
  CHECK(s.ops.size() == 1);
  CHECK(error_of([] { signature_from_json(parse_json(R"({"colors":["a"],"ops":[{"name":"u","out":"b","in":[]}]})")); })
            .find("$.ops[0].out") == 0);
  auto mixed = std::make_shared<const Signature>(mixed_signature());
  const PForest f = ptree_from_json(parse_json(R"([{"edge":"b"},{"op":"g","children":["edge"]}])"), mixed);
  CHECK(f.component_count() == 2);
  CHECK(error_of([&] { ptree_from_json(parse_json(R"("edge")"), mixed); }).find("needs a colour") != std::string::npos);
  CHECK(error_of([&] {
          ptree_from_json(parse_json(R"({"op":"f","children":["edge",{"op":"f","children":["edge","edge"]}]})"), mixed);
        }).find("$.children[1]") == 0);
}

TEST_CASE("verification verbs pass, and every mutation flips the exit status") {
  struct Case {
    std::vector<std::string> base;
    std::string mutation;
  };
  const std::vector<Case> cases = {
      {{"verify", "coalgebra", "--max-size", "4"}, "drop-cut"},
      {{"verify", "decomposition-space", "--max-size", "3"}, "drop-class"},
      {{"verify", "segal", "--instance", "sets", "--max-size", "3"}, "drop-class"},
      {{"verify", "complete"}, "duplicate-s0"},
      {{"verify", "culf", "--instance", "forests", "--max-size", "3"}, "forget-order"},
      {{"verify", "abacus", "--max-size", "3"}, "ordinal-sum"},
      {{"verify", "abacus", "--max-size", "3"}, "unmodified-top-face"},
      {{"verify", "bisimplicial", "--max-size", "3"}, "ordinal-sum"},
      {{"verify", "bisimplicial", "--max-size", "3"}, "unmodified-top-face"},
      {{"verify", "mobius-bicomodule", "--max-size", "3"}, "ordinal-sum"},
      {{"verify", "mobius-bicomodule", "--max-size", "3"}, "unmodified-top-face"},
      {{"verify", "rota", "--max-size", "4"}, "zeta-for-mu-I"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.base[1]);
    CAPTURE(c.mutation);
    CHECK(run(c.base).code == 0);
    std::vector<std::string> m = c.base;
    m.push_back("--mutate");
    m.push_back(c.mutation);
    CHECK(run(m).code == 1);
  }
}

TEST_CASE("verify segal on C reports the failure with exit 1") {
  const Run r = run({"verify", "segal", "--max-size", "3", "--format", "csv"});
  CHECK(r.code == 1);
  CHECK(r.out.rfind("id,pass,checked,witness,error\n", 0) == 0);
  CHECK(r.out.find("P1^1[1]{}") != std::string::npos);
}

TEST_CASE("verify rota is byte-identical across thread counts") {
  setenv("DECOMP_MOBIUS_THREADS", "1", 1);
  const Run a = run({"verify", "rota", "--max-size", "5"});
  setenv("DECOMP_MOBIUS_THREADS", "4", 1);
  const Run b = run({"verify", "rota", "--max-size", "5"});
  const Run csv = run({"verify", "rota", "--max-size", "5", "--format", "csv"});
  setenv("DECOMP_MOBIUS_THREADS", "zero", 1);
  const Run bad = run({"verify", "rota", "--max-size", "2"});
  unsetenv("DECOMP_MOBIUS_THREADS");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["rows"].size() == 88);
  CHECK(csv.out.rfind("key,lhs,rhs,closed_form,equal\n", 0) == 0);
  CHECK(csv.out.find("false") == std::string::npos);
  CHECK(bad.code == 2);
}
