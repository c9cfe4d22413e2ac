#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "twq/cli.hpp"
#include "twq/jsonio.hpp"
#include "twq/rmatrix.hpp"

using namespace twq;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  const int s = run_cli(args, o, e);
  return {s, o.str(), e.str()};
}

std::vector<Json> json_lines(const std::string& text) {
  std::vector<Json> v;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) v.push_back(Json::parse(line));
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

/// required keys and the schema/version constants of the versioned schema file
void check_schema(const Json& o) {
  const std::string name = o.at("schema").get<std::string>().substr(4);
  const Json s = Json::parse(slurp(std::string(TWQ_SCHEMA_DIR) + "/" + name + ".v1.json"));
  CHECK(s["properties"]["schema"]["const"] == o["schema"]);
  CHECK(s["properties"]["version"]["const"] == o["version"]);
  for (const auto& k : s["required"]) CHECK_MESSAGE(o.contains(k.get<std::string>()), name, " lacks ", k);
  for (const auto& [k, v] : o.items()) CHECK_MESSAGE(s["properties"].contains(k), name, " has undeclared key ", k);
}

std::string temp_path(const char* name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_SUITE("cli_io") {
  TEST_CASE("rep and rmatrix summaries") {
    auto e6 = run({"rep", "--type", "E6t2"});
    REQUIRE(e6.status == 0);
    CHECK(e6.err.find("d=27") != std::string::npos);
    auto j = json_lines(e6.out);
    REQUIRE(j.size() == 1);
    CHECK(j[0]["d"] == 27);
    CHECK(j[0]["generators"].size() == 5);
    check_schema(j[0]);

    auto a = run({"rmatrix", "--type", "A2t2", "--r", "5", "--form", "matrix-unit"});
    REQUIRE(a.status == 0);
    auto ja = json_lines(a.out);
    CHECK(ja[0]["d"] == 11);
    CHECK(ja[0]["type"] == "A2t2even");
    CHECK(ja[0]["form"] == "matrix-unit");
    check_schema(ja[0]);
  }

  TEST_CASE("rmatrix --out writes a file that re-imports") {
    const std::string path = temp_path("twq_cli_d4t3.json");
    auto r = run({"rmatrix", "--type", "D4t3", "--form", "projector", "--out", path});
    REQUIRE(r.status == 0);
    CHECK(r.out.find("64 rows") != std::string::npos);
    const std::string text = slurp(path);
    std::remove(path.c_str());
    RCheck back = rcheck_from_json(text.substr(0, text.size() - 1));
    CHECK(back.d == 8);
    RCheck rc = build_rcheck_projector_form(AlgebraType::parse("D4t3"));
    CHECK(back.N == rc.N);
    check_schema(json_lines(text)[0]);
  }

  TEST_CASE("float export round-trips doubles") {
    auto r = run({"rmatrix", "--type", "A2t2odd", "--r", "3", "--q0", "1.7", "--z0", "0.3"});
    REQUIRE(r.status == 0);
    auto j = json_lines(r.out)[0];
    check_schema(j);
    RCheck rc = build_rcheck_projector_form(AlgebraType::parse("A2t2odd", 3));
    auto f = evaluate_float(rc, 1.7, 0.3);
    for (const auto& e : j["entries"]) CHECK(e[2].get<double>() == f.get(e[0].get<int>(), e[1].get<int>()));
    CHECK(run({"rmatrix", "--type", "A2t2", "--q0", "2"}).status == 2);
  }

  TEST_CASE("qchar and pole tables") {
    auto a = run({"qchar", "--type", "A2t1odd", "--r", "3"});
    REQUIRE(a.status == 0);
    auto ja = json_lines(a.out);
    REQUIRE(ja.size() == 1);
    CHECK(ja[0]["terms"].size() == 6);
    check_schema(ja[0]);

    auto d = run({"qchar", "--type", "D4t3", "--poles"});
    REQUIRE(d.status == 0);
    auto jd = json_lines(d.out);
    REQUIRE(jd.size() == 3);
    for (const auto& x : jd) check_schema(x);
    std::set<std::string> poles;
    for (const auto& row : jd[2]["rows"]) poles.insert(row["pole"].get<std::string>());
    CHECK(poles == std::set<std::string>{"q^2", "jq^4", "j^2q^4", "q^6"});

    auto e = run({"qchar", "--type", "E6t2", "--poles", "--format", "text"});
    REQUIRE(e.status == 0);
    CHECK(e.out.find("# poles of R(z)") != std::string::npos);
    CHECK(e.err.find("4 pole rows") != std::string::npos);
  }

  TEST_CASE("verify: reports, summary table and exit status") {
    auto p = run({"verify", "--type", "Dt2", "--r", "2", "--prop", "poles"});
    REQUIRE(p.status == 0);
    auto jp = json_lines(p.out);
    REQUIRE(jp.size() == 1);
    check_schema(jp[0]);
    CHECK(jp[0]["pass"] == true);
    CHECK(jp[0]["seed"] == 1);
    CHECK(jp[0]["detail"]["rows"].size() >= 2);
    CHECK(p.err.find("property") != std::string::npos);

    // the Dt2 limit is not the rational R-matrix; the check fails and the exit status says so
    auto lim = run({"verify", "--type", "Dt2", "--r", "2", "--prop", "rational-limit"});
    CHECK(lim.status == 1);
    CHECK(json_lines(lim.out)[0]["pass"] == false);
    CHECK(lim.err.find("FAIL") != std::string::npos);
  }

  TEST_CASE("output is deterministic and independent of --jobs") {
    const std::vector<std::string> base{"verify", "--type", "A2t2odd", "--r", "3", "--mode", "exact-point",
                                        "--samples", "2", "--seed", "42"};
    auto a = run(base);
    auto b = run(base);
    auto args = base;
    args.insert(args.end(), {"--jobs", "2"});
    auto c = run(args);
    REQUIRE(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    for (const auto& j : json_lines(a.out)) {
      check_schema(j);
      CHECK(j["seed"] == 42);
    }
  }

  TEST_CASE("bad configuration exits with status 2") {
    const std::vector<std::vector<std::string>> bad{
        {},
        {"frobnicate"},
        {"rep"},
        {"rep", "--type", "X"},
        {"rep", "--type", "Dt2"},
        {"rep", "--type", "A2t2odd", "--r", "2"},
        {"rep", "--type", "E6t2", "--r", "3"},
        {"rmatrix", "--type", "Dt2", "--r", "2", "--form", "matrix-unit"},
        {"rmatrix", "--type", "A2t2", "--form", "block"},
        {"verify", "--type", "A2t2", "--prop", "bogus"},
        {"verify", "--type", "A2t2", "--mode", "fast"},
        {"verify", "--type", "A2t2", "--jobs", "0"},
        {"verify", "--type", "A2t2", "--samples", "-1"},
        {"qchar", "--type", "A2t2", "--format", "xml"},
        {"rep", "--type", "A2t2", "--out", "/nonexistent-dir/x.json"},
    };
    for (const auto& args : bad) {
      auto r = run(args);
      std::string joined;
      for (const auto& a : args) joined += a + " ";
      CHECK_MESSAGE(r.status == 2, joined);
      CHECK(!r.err.empty());
    }
    CHECK(run({"--help"}).status == 0);
  }

  TEST_CASE("type resolution and the job-count environment variable") {
    CHECK(resolve_type("A2t2", 0) == AlgebraType::parse("A2t2"));
    CHECK(resolve_type("A2t2", 4) == AlgebraType::parse("A2t2even", 4));
    CHECK(resolve_type("D4t3", 2) == AlgebraType::parse("D4t3"));
    CHECK_THROWS_AS(resolve_type("Dt2", 0), UsageError);
    ::setenv("TWQ_JOBS", "3", 1);
    CHECK(default_jobs() == 3);
    ::setenv("TWQ_JOBS", "zero", 1);
    CHECK(default_jobs() == 1);
    ::unsetenv("TWQ_JOBS");
    CHECK(default_jobs() == 1);
  }
}
