#include "doctest.h"

#include <stdexcept>

#include "twq/monomial.hpp"

using namespace twq;

namespace {

std::vector<AlgebraType> all_small_types() {
  return {AlgebraType::parse("A2t2"),         AlgebraType::parse("A2t2odd", 3), AlgebraType::parse("A2t2odd", 5),
          AlgebraType::parse("A2t2even", 2), AlgebraType::parse("A2t2even", 4), AlgebraType::parse("Dt2", 2),
          AlgebraType::parse("Dt2", 4),      AlgebraType::parse("E6t2"),         AlgebraType::parse("D4t3")};
}

}  // namespace

TEST_SUITE("spectral_monomials") {
  TEST_CASE("type tags") {
    CHECK(AlgebraType::parse("A2t1odd", 4) == AlgebraType::parse("A2t2odd", 4));
    CHECK(AlgebraType::parse("A2t2even", 1).family() == Family::A2t2);
    CHECK_THROWS_AS(AlgebraType::parse("A2t2odd", 2), std::invalid_argument);
    CHECK_THROWS_AS(AlgebraType::parse("B3"), std::invalid_argument);
    CHECK(AlgebraType::parse("E6t2").dim() == 27);
    CHECK(AlgebraType::parse("Dt2", 3).display() == "D4(2)");
  }

  TEST_CASE("spectral point group law") {
    SpectralPoint x(5, 3), y(4, -7);
    CHECK(x * y == SpectralPoint(3, -4));
    CHECK(x * x.inverse() == SpectralPoint());
    CHECK(SpectralPoint(-1, 0).e == 5);
    CHECK(SpectralPoint(3, 2).str() == "-aq^2");
    CHECK(SpectralPoint(4, -12).str() == "j^2aq^{-12}");
    CHECK(SpectralPoint(0, 1).str() == "aq");
  }

  TEST_CASE("simple roots, worked cases") {
    auto d43 = AlgebraType::parse("D4t3");
    CHECK(simple_lroot(d43, 1) == YMonomial::parse(d43, "1_{aq} 1_{aq^{-1}} 2_{a}^{-1}"));
    CHECK(simple_lroot(d43, 2) ==
          YMonomial::parse(d43, "2_{aq} 2_{aq^{-1}} 1_{a}^{-1} 1_{ja}^{-1} 1_{j^2a}^{-1}"));
    auto a22 = AlgebraType::parse("A2t2");
    CHECK(simple_lroot(a22, 1) == YMonomial::parse(a22, "1_{aq} 1_{aq^{-1}} 1_{-a}^{-1}"));
    auto a5 = AlgebraType::parse("A2t2odd", 3);
    CHECK(simple_lroot(a5, 3) == YMonomial::parse(a5, "3_{aq} 3_{aq^{-1}} 2_{a}^{-1} 2_{-a}^{-1}"));
    CHECK_THROWS_AS(simple_lroot(a5, 4), std::invalid_argument);
    CHECK_THROWS_AS(simple_lroot(a5, 0), std::invalid_argument);
  }

  TEST_CASE("simple root weights follow the Cartan columns") {
    for (const auto& t : all_small_types()) {
      for (int i = 1; i <= t.rank(); ++i) {
        auto w = weight_of(simple_lroot(t, i, SpectralPoint(1, 5)));
        for (int j = 1; j <= t.rank(); ++j) {
          int expect = t.cartan()[j - 1][i - 1];
          if (j == t.half_weight_node()) expect /= 2;
          CHECK_MESSAGE(w[j - 1] == expect, t.tag(), " r=", t.rank(), " i=", i, " j=", j);
        }
      }
    }
  }

  TEST_CASE("dominance and weights") {
    auto t = AlgebraType::parse("A2t2odd", 3);
    CHECK(is_dominant(YMonomial::parse(t, "1_{a} 1_{aq^{-2}}")));
    CHECK_FALSE(is_dominant(YMonomial::parse(t, "1_{aq^2}^{-1} 2_{aq}")));
    CHECK(is_dominant(YMonomial(t)));
    CHECK(weight_of(YMonomial::parse(t, "1_{aq^2}^{-1} 2_{aq}")) == std::vector<int>{-1, 1, 0});
    CHECK(weight_of(YMonomial::single(t, 1, {})) == std::vector<int>{1, 0, 0});
    auto d3 = AlgebraType::parse("Dt2", 2);
    CHECK(weight_of(YMonomial::parse(d3, "2_{-aq^3}^{-1} 2_{aq}")) == std::vector<int>{0, 0});
  }

  TEST_CASE("twisting relation on fixed nodes") {
    auto e6 = AlgebraType::parse("E6t2");
    CHECK(YMonomial::single(e6, 3, {0, 2}) == YMonomial::single(e6, 3, {3, 2}));
    CHECK_FALSE(YMonomial::single(e6, 2, {0, 2}) == YMonomial::single(e6, 2, {3, 2}));
    auto g = AlgebraType::parse("D4t3");
    CHECK(YMonomial::single(g, 2, {1, 0}) == YMonomial::single(g, 2, {5, 0}));
    CHECK(YMonomial::single(g, 2, {1, 0}) == YMonomial::single(g, 2, {3, 0}));
    CHECK_FALSE(YMonomial::single(g, 1, {0, 0}) == YMonomial::single(g, 1, {2, 0}));
    auto m = YMonomial::single(e6, 4, {5, -3}) * YMonomial::single(e6, 4, {2, -3}).inverse();
    CHECK(m.is_one());
  }

  TEST_CASE("canonicalization idempotence and round trips") {
    for (const auto& t : all_small_types()) {
      YMonomial m(t);
      for (int i = 1; i <= t.rank(); ++i) m = m * simple_lroot(t, i, SpectralPoint(i, 2 * i - 3)).pow(i % 2 ? 1 : -2);
      CHECK(m.canonicalized().canonicalized() == m.canonicalized());
      CHECK(YMonomial::parse(t, m.str()) == m);
      CHECK(YMonomial::parse(t, m.str(true)) == m);
      CHECK((m * m.inverse()).is_one());
      CHECK(m.shifted({1, 1}).shifted({5, -1}) == m);
    }
  }

  TEST_CASE("rendering") {
    auto t = AlgebraType::parse("A2t2odd", 3);
    CHECK(YMonomial::parse(t, "2_{aq} 1_{aq^2}^{-1}").str() == "1_{aq^2}^{-1} 2_{aq}");
    auto e6 = AlgebraType::parse("E6t2");
    auto x = YMonomial::single(e6, 4, {0, -3});
    CHECK(x.str() == "4_{aq^{-3}}");
    CHECK(x.str(true) == "4_{a^2q^{-6}}");
    auto g = AlgebraType::parse("D4t3");
    CHECK(YMonomial::single(g, 2, {0, -1}).str(true) == "2_{a^3q^{-3}}");
    CHECK(YMonomial::single(g, 2, {1, 1}).str(true) == "2_{-a^3q^3}");
    CHECK(YMonomial(g).str() == "1");
    CHECK_THROWS_AS(YMonomial::parse(g, "1_{a^2}"), std::invalid_argument);
    CHECK_THROWS_AS(YMonomial::parse(g, "3_{a}"), std::invalid_argument);
  }

  TEST_CASE("character convolution") {
    auto t = AlgebraType::parse("A2t2");
    QCharacter c(t);
    c.add(YMonomial::single(t, 1, {}));
    c.add(YMonomial::single(t, 1, {0, 2}, -1));
    QCharacter sq = c * c;
    CHECK(sq.size() == 4);
    CHECK(sq.multiplicity(YMonomial::single(t, 1, {}) * YMonomial::single(t, 1, {0, 2}, -1)) == 2);
    CHECK(sq.dominant().size() == 1);
  }
}
