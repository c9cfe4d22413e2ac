#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "twq/qchar.hpp"

using namespace twq;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<AlgebraType> table_types() {
  std::vector<AlgebraType> ts = {AlgebraType::parse("A2t2"), AlgebraType::parse("E6t2"), AlgebraType::parse("D4t3")};
  for (int r = 3; r <= 6; ++r) ts.push_back(AlgebraType::parse("A2t2odd", r));
  for (int r = 2; r <= 6; ++r) {
    ts.push_back(AlgebraType::parse("A2t2even", r));
    ts.push_back(AlgebraType::parse("Dt2", r));
  }
  return ts;
}

}  // namespace

TEST_SUITE("qchar_engine") {
  TEST_CASE("term counts, multiplicity one, weight-zero counts") {
    struct Case {
      AlgebraType t;
      std::size_t terms;
      int zero;
    };
    std::vector<Case> cases = {{AlgebraType::parse("A2t2"), 3, 1},       {AlgebraType::parse("E6t2"), 27, 3},
                               {AlgebraType::parse("D4t3"), 8, 2}};
    for (int r = 3; r <= 7; ++r) cases.push_back({AlgebraType::parse("A2t2odd", r), std::size_t(2 * r), 0});
    for (int r = 2; r <= 7; ++r) cases.push_back({AlgebraType::parse("A2t2even", r), std::size_t(2 * r + 1), 1});
    for (int r = 2; r <= 7; ++r) cases.push_back({AlgebraType::parse("Dt2", r), std::size_t(2 * r + 2), 2});
    for (const auto& c : cases) {
      auto ch = fundamental_character(c.t, SpectralPoint(1, 3));
      CHECK(ch.size() == c.terms);
      CHECK(ch.terms().size() == c.terms);
      CHECK(weight_zero_count(ch) == c.zero);
      CHECK(c.t.dim() == static_cast<int>(c.terms));
      CHECK(ch.dominant().size() == 1);
    }
  }

  TEST_CASE("reference examples") {
    auto t = AlgebraType::parse("A2t2");
    QCharacter expect(t);
    for (const char* s : {"1_{a}", "1_{aq^2}^{-1} 1_{-aq}", "1_{-aq^3}^{-1}"}) expect.add(YMonomial::parse(t, s));
    CHECK(fundamental_character(t).terms() == expect.terms());
    auto g = AlgebraType::parse("D4t3");
    CHECK(fundamental_character(g).multiplicity(YMonomial::parse(g, "1_{j^2aq^4}^{-1} 1_{jaq^2}")) == 1);
  }

  TEST_CASE("every term descends from an earlier one by some inverse simple root") {
    for (const auto& t : table_types()) {
      auto ch = fundamental_character(t);
      std::vector<YMonomial> seen;
      int top = 0;
      for (const auto& [m, c] : ch.terms()) {
        if (is_dominant(m)) {
          seen.push_back(m);
          ++top;
        }
      }
      CHECK(top == 1);
      bool grew = true;
      std::size_t target = ch.terms().size();
      while (grew && seen.size() < target) {
        grew = false;
        for (const auto& [m, c] : ch.terms()) {
          if (std::find(seen.begin(), seen.end(), m) != seen.end()) continue;
          bool ok = false;
          for (const auto& prev : seen) {
            const YMonomial ratio = prev * m.inverse();
            for (const auto& f : ratio.factors()) {
              if (f.exp <= 0) continue;
              SpectralPoint b = f.p * SpectralPoint(0, -1);
              for (int s = 0; s < 6 && !ok; ++s) ok = simple_lroot(t, f.node, b * SpectralPoint(s, 0)) == ratio;
            }
          }
          if (ok) {
            seen.push_back(m);
            grew = true;
          }
        }
      }
      CHECK_MESSAGE(seen.size() == target, t.display());
    }
  }

  TEST_CASE("dominant monomials of products") {
    auto t = AlgebraType::parse("A2t2odd", 3);
    auto d = dominant_monomials_of_product(t, {0, 2});
    REQUIRE(d.size() == 2);
    std::vector<YMonomial> ms = {d[0].m, d[1].m};
    CHECK(std::count(ms.begin(), ms.end(), YMonomial::parse(t, "1_{a} 1_{aq^{-2}}")) == 1);
    CHECK(std::count(ms.begin(), ms.end(), YMonomial::parse(t, "2_{aq^{-1}}")) == 1);
    CHECK(dominant_monomials_of_product(t, {0, 3}).size() == 1);
    auto e6 = AlgebraType::parse("E6t2");
    auto de = dominant_monomials_of_product(e6, {3, 6});
    REQUIRE(de.size() == 2);
    bool has4 = false;
    for (const auto& x : de) has4 = has4 || x.m.str(true) == "4_{a^2q^{-6}}";
    CHECK(has4);
  }

  TEST_CASE("elimination criterion") {
    auto t = AlgebraType::parse("A2t2odd", 3);
    const SpectralPoint z{0, 2};
    QCharacter prod = fundamental_character(t) * fundamental_character(t, z.inverse());
    // 2_{aq^{-1}} = m A_{1,c}^{-1} with m = 1_a 1_{aq^{-2}} (c = aq^{-1}); m is 1-dominant
    YMonomial m = YMonomial::parse(t, "1_{a} 1_{aq^{-2}}");
    YMonomial target = YMonomial::parse(t, "2_{aq^{-1}}");
    CHECK(m * simple_lroot(t, 1, {0, -1}).inverse() == target);
    CHECK(qchar_arg_check(prod, m, 1, {0, -1}));
    // condition (2) fails once m A_{1,c} is present
    QCharacter bigger = prod;
    bigger.add(m * simple_lroot(t, 1, {0, 5}));
    CHECK_FALSE(qchar_arg_check(bigger, m, 1, {0, -1}));
    // condition (1): Y_{i,bq^{-1}} power exceeding Y_{i,bq} power
    QCharacter c1(t);
    YMonomial m1 = YMonomial::parse(t, "1_{aq^{-2}}^{2}");
    c1.add(m1);
    CHECK_FALSE(qchar_arg_check(c1, m1, 1, {0, -1}));
    CHECK_THROWS_AS(qchar_arg_check(c1, YMonomial::parse(t, "1_{a}^{-1}"), 1, {0, 0}), std::invalid_argument);
  }

  TEST_CASE("derived pole tables equal the transcribed ones, r <= 6") {
    for (const auto& t : table_types()) {
      auto derived = derive_pole_table(t);
      auto ref = reference_pole_table(t);
      std::string why;
      CHECK_MESSAGE(same_table(derived, ref, &why), t.display(), ": ", why);
      for (const auto& row : derived.rows) {
        CHECK(row.pole.k > 0);
        CHECK(row.quot_mult == 1);
        CHECK(dimension(t, row.sub_parts) + dimension(t, row.quot_parts) == long(t.dim()) * t.dim());
      }
      std::string path = std::string(TWQ_GOLDEN_DIR) + "/poles_" + t.tag() + "_r" + std::to_string(t.rank()) + ".txt";
      CHECK_MESSAGE(derived.to_text() == slurp(path), path);
    }
  }

  TEST_CASE("worked pole tables") {
    auto a5 = derive_pole_table(AlgebraType::parse("A2t2odd", 3));
    REQUIRE(a5.rows.size() == 2);
    CHECK(a5.rows[0].pole_str() == "q^2");
    CHECK(a5.rows[1].pole_str() == "-q^6");
    CHECK(dimension(a5.type, a5.rows[0].sub_parts) == 21);
    CHECK(a5.rows[0].kernel_dim == 15);
    auto g = derive_pole_table(AlgebraType::parse("D4t3"));
    std::vector<std::string> poles;
    for (const auto& r : g.rows) poles.push_back(r.pole_str());
    CHECK(poles == std::vector<std::string>{"q^2", "jq^4", "j^2q^4", "q^6"});
    auto e6 = derive_pole_table(AlgebraType::parse("E6t2"));
    CHECK(e6.rows[2].pole_str() == "q^8");
    CHECK(e6.rows[2].kernel_dim == 27);
    auto d = derive_pole_table(AlgebraType::parse("Dt2", 3));
    CHECK(d.rows[0].pole_str() == "\xC2\xB1q^2");
    for (const auto& r : e6.rows) CHECK(r.certified);
  }

  TEST_CASE("json export") {
    auto tab = derive_pole_table(AlgebraType::parse("E6t2"));
    auto j = nlohmann::json::parse(tab.to_json());
    CHECK(j["schema"] == "twq.poles");
    CHECK(j["version"] == 1);
    CHECK(j["rows"].size() == 4);
    CHECK(j["rows"][1]["quotient"] == "4_{a^2q^{-6}}");
    CHECK(j["rows"][3]["kernel_dim"] == 1);
  }

  TEST_CASE("Weyl dimensions") {
    CHECK(AlgebraType::parse("E6t2").weyl_dimension({1, 0, 0, 0}) == 26);
    CHECK(AlgebraType::parse("E6t2").weyl_dimension({0, 1, 0, 0}) == 273);
    CHECK(AlgebraType::parse("E6t2").weyl_dimension({0, 0, 0, 1}) == 52);
    CHECK(AlgebraType::parse("D4t3").weyl_dimension({0, 1}) == 14);
    CHECK(AlgebraType::parse("D4t3").weyl_dimension({2, 0}) == 27);
    CHECK(AlgebraType::parse("A2t2").weyl_dimension({4}) == 5);
    CHECK(AlgebraType::parse("A2t2odd", 3).weyl_dimension({0, 1, 0}) == 14);
  }
}
