#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "support.hpp"

#include "a1/cli.hpp"
#include "a1/corpus.hpp"

using namespace a1;
using namespace testing;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("milnor number of the cusp") {
  Run r = run({"milnor", "--field", "Q", "--f", "x2^2 - x1^3", "--point", "0,0"});
  CHECK(r.code == 0);
  CHECK(r.out == "<1> + <-1>\n");
}

TEST_CASE("exit codes follow the three-valued answer") {
  CHECK(run({"gw-equal", "--field", "F5", "<1> + <-1>", "<2> + <-2>"}).out == "True\n");
  CHECK(run({"gw-equal", "--field", "F5", "<1> + <-1>", "<2> + <-2>"}).code == 0);
  CHECK(run({"gw-equal", "--field", "Q", "<1>", "<2>"}).code == 2);
  CHECK(run({"gw-equal", "--field", "Q(z)", "<1> + <1>", "<z> + <z>"}).code == 3);
  CHECK(run({"milnor", "--field", "Q", "--f", "x1 + x2^2", "--point", "0,0"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"milnor", "--field", "Q"}).code == 1);
}

TEST_CASE("parse errors carry positions in JSON") {
  Run r = run({"milnor", "--field", "Q", "--f", "x2^2 - x1^^3", "--json"});
  CHECK(r.code == 1);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["error"]["code"] == "SyntaxError");
  CHECK(j["error"]["position"] == 10);
  CHECK(r.err.find("position 10") != std::string::npos);
}

TEST_CASE("identical invocations give identical bytes") {
  std::vector<std::string> args = {"verify-cor45", "--field", "F7", "--f", "x2^2 - x1^3", "--samples", "10",
                                   "--rng-seed", "3", "--json"};
  Run a = run(args), b = run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(nlohmann::json::parse(a.out)["schema"] == 1);
}

TEST_CASE("rendered classes re-parse to equal classes") {
  for (auto [field, cls] : {std::pair{"Q", "<3> + <12> + <-5> + <1/5>"}, std::pair{"F7", "<3> + <5> + <6>"},
                            std::pair{"F25", "<w> + <2> - <3>"}}) {
    Run r = run({"gw-simplify", "--field", field, cls});
    REQUIRE(r.code == 0);
    std::string text = r.out.substr(0, r.out.size() - 1);
    Field k = parse_field(field);
    CHECK(same(parse_gw(text, k), parse_gw(cls, k)));
  }
}

TEST_CASE("bifurcate infers the ramification from the seeds") {
  Run r = run({"bifurcate", "--field", "Q", "--f", "x2^2 - x1^3", "--g", "3*x1 + 2*x2 + 2*x1^3 - t*x1^3", "--seed",
               "x1: t^(1/2)*1; x2: -t", "--seed", "x1: t^(1/2)*-1; x2: -t", "--precision", "16", "--json"});
  CHECK(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["series_field"] == "Q((t;2;16))");
  CHECK(j["result"] == "True");
  CHECK(j["branches"][1]["conjugate_of"] == 1);
}

TEST_CASE("degree subcommands") {
  CHECK(run({"degree-local", "--field", "F5", "--system", "z^2", "--point", "0"}).out == "2<1>\n");
  Run p1 = run({"degree-p1", "--field", "Q", "--num", "z^2", "--den", "1"});
  CHECK(p1.out == "<1> + <-1>\n");
  Run g = run({"degree-global", "--field", "F5", "--system", "z^2"});
  CHECK(g.code == 0);
  CHECK(g.out.find("rejected (0)") == 0);
  Run la = run({"local-algebra", "--field", "Q", "--system", "x1^2, x2^3", "--point", "0,0"});
  CHECK(la.out.find("dimension: 6") == 0);
}

TEST_CASE("corpus exit status reflects its rows") {
  Run r = run({"corpus", "--json"});
  auto j = nlohmann::json::parse(r.out);
  auto rows = run_corpus();
  bool all = true;
  for (const auto& row : rows) all = all && row.pass;
  CHECK(j["rows"].size() == rows.size());
  CHECK((r.code == 0) == all);
  CHECK(rows.size() >= 35);
}
}
