#include "doctest.h"

#include <cmath>
#include <fstream>
#include <sstream>

#include "twq/jsonio.hpp"
#include "twq/rmatrix.hpp"

using namespace twq;

namespace {

AlgebraType T(const char* tag, int r = 0) { return AlgebraType::parse(tag, r); }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Scalar ratio(const Laurent& a, const Laurent& b) { return Scalar::fraction(a, b); }

ZPoly poly(std::vector<Scalar> c) { return ZPoly(std::move(c)); }

}  // namespace

TEST_SUITE("rmatrix_builder") {
  TEST_CASE("sl_n base matrix") {
    auto m = sl_base_rmatrix(3);
    const Scalar q = Scalar::q_pow(1), qi = Scalar::q_pow(-1);
    const ZPoly den(std::vector<Scalar>{q, -qi});
    CHECK(m.get(0, 0) == ZRational(1));
    // v_2 (x) v_1 -> v_1 (x) v_2 with (1 - z)/(q - q^{-1} z)
    CHECK(m.get(1, 3) == ZRational(poly({Scalar(1), Scalar(-1)}), den));
    CHECK(m.get(1, 1) == ZRational(ZPoly::z_pow(1, q - qi), den));
    CHECK(m.get(3, 3) == ZRational(ZPoly(q - qi), den));
    CHECK(m.nnz() == 3 + 2 * 6);
    CHECK_THROWS_AS(sl_base_rmatrix(1), std::invalid_argument);
  }

  TEST_CASE("matrix-unit form: R(1) is the identity") {
    for (auto [tag, r] : std::vector<std::pair<const char*, int>>{{"A2t2", 0}, {"A2t2odd", 3}, {"A2t2even", 2}}) {
      RCheck rc = build_rcheck_matrix_unit(T(tag, r));
      CHECK(rc.route == Route::MatrixUnit);
      const Scalar d1 = rc.D().eval(Scalar(1));
      for (int i = 0; i < rc.N.rows(); ++i)
        for (const auto& [j, p] : rc.N.row(i)) CHECK(p.eval(Scalar(1)) == (i == j ? d1 : Scalar()));
    }
    CHECK_THROWS_AS(build_rcheck_matrix_unit(T("Dt2", 2)), std::invalid_argument);
  }

  TEST_CASE("A2t2even at r = 1 is A2t2") {
    CHECK(T("A2t2even", 1) == T("A2t2"));
    RCheck a = build_rcheck_matrix_unit(T("A2t2even", 1)), b = build_rcheck_matrix_unit(T("A2t2"));
    CHECK(a.N == b.N);
    CHECK(a.D() == b.D());
  }

  TEST_CASE("matrix-unit and projector forms agree") {
    for (auto [tag, r] : std::vector<std::pair<const char*, int>>{
             {"A2t2", 0}, {"A2t2odd", 3}, {"A2t2odd", 4}, {"A2t2even", 2}, {"A2t2even", 3}}) {
      auto cv = cross_validate(T(tag, r));
      CHECK_MESSAGE(cv.equal, tag, " r=", r, " first difference at (", cv.row, ",", cv.col, "): ", cv.lhs, " vs ",
                    cv.rhs);
    }
  }

  TEST_CASE("constants and block entries") {
    auto B = [](long n, long k = 1) { return bracket(n, 2 * k); };
    auto Bi = [](long n, long k = 1) { return bracket_i(n, 2 * k); };
    auto e6 = reference_constants(T("E6t2"));
    const Scalar zeta = ratio(Bi(2) * B(2) * B(7), B(3));
    CHECK(e6.at("zeta") == zeta);
    CHECK(e6.values.size() == 7);
    auto g = block_functions(T("E6t2"));
    REQUIRE(g.size() == 5);
    CHECK(g[4].label == "w0");
    const Scalar xi = e6.at("xi");
    const ZPoly f00 = poly({Scalar::q_pow(-12), Scalar::q_pow(-6) * zeta, xi, -(Scalar::q_pow(6) * zeta), Scalar::q_pow(12)});
    CHECK(g[4].num[0][0] == f00);
    CHECK(g[4].den.size() == 4);
    auto d4 = reference_constants(T("D4t3"));
    CHECK(d4.at("xi") == Scalar(Bi(2) * Bi(2, 3) * B(2, 4)));
    CHECK(d4.values.size() == 8);
    CHECK_THROWS(d4.at("nope"));
    auto dt = reference_constants(T("Dt2", 3));
    CHECK(dt.at("beta") == Scalar(B(2) * Bi(2)));
    CHECK(reference_constants(T("A2t2")).values.empty());
  }

  TEST_CASE("denominators are normalized products of the pole factors") {
    for (auto [tag, r] : std::vector<std::pair<const char*, int>>{{"A2t2", 0}, {"A2t2odd", 3}, {"Dt2", 2}, {"D4t3", 0}}) {
      RCheck rc = build_rcheck_projector_form(T(tag, r));
      for (const auto& f : rc.den) CHECK(f[0] == Scalar(1));
      CHECK(rc.D()[0] == Scalar(1));
      CHECK(rc.degree() >= rc.D().degree());
    }
    RCheck d4 = build_rcheck_projector_form(T("D4t3"));
    REQUIRE(d4.den.size() == 3);
    // (1 - q^{-2} z)(1 - q^{-6} z)(1 + q^{-4} z + q^{-8} z^2)
    CHECK(d4.D() == poly({Scalar(1), -Scalar::q_pow(-2)}) * poly({Scalar(1), -Scalar::q_pow(-6)}) *
                        poly({Scalar(1), Scalar::q_pow(-4), Scalar::q_pow(-8)}));
  }

  TEST_CASE("block count mismatch is rejected") {
    auto pd = projector_data(T("A2t2"));
    auto g = block_functions(T("A2t2"));
    g.pop_back();
    CHECK_THROWS_AS(assemble_projector_form(*pd, g), DecompositionError);
    g = block_functions(T("A2t2"));
    g[1].label = "w9";
    CHECK_THROWS_AS(assemble_projector_form(*pd, g), DecompositionError);
  }

  TEST_CASE("evaluation: exact, float, and poles") {
    RCheck rc = build_rcheck_projector_form(T("A2t2"));
    PointField F(mpq_class(17, 13));
    const mpq_class z0(3, 7);
    PointMatrix m = evaluate(rc, F, F.constant(z0));
    auto f = evaluate_float(rc, (17.0 / 13) * (17.0 / 13), 3.0 / 7);
    for (int i = 0; i < m.rows(); ++i)
      for (const auto& [j, x] : m.row(i)) CHECK(std::fabs(x.to_double() - f.get(i, j)) < 1e-12);
    // z = q^2 is a root of 1 - q^{-2} z
    const mpq_class s0(17, 13);
    CHECK_THROWS_AS(evaluate(rc, F, F.constant(s0 * s0 * s0 * s0)), PoleError);
    CHECK_THROWS_AS(evaluate_float(rc, 4.0, 16.0), PoleError);
  }

  TEST_CASE("z = 0 eigenvalue on the exterior square") {
    // A2t2: R(0) acts on L_{2w1} by -q^{-2}
    RCheck rc = build_rcheck_matrix_unit(T("A2t2"));
    auto pd = projector_data(T("A2t2"));
    const auto& b = pd->dec.blocks[1];
    REQUIRE(b.label == "2w1");
    ScalarMatrix R0 = rc.N.map([](const ZPoly& p) { return p[0]; });
    CHECK(act(R0, b.seeds[0].v) == scaled(b.seeds[0].v, -Scalar::q_pow(-2)));
  }

  TEST_CASE("JSON export: goldens and round trip") {
    for (const char* tag : {"A2t2", "D4t3"}) {
      RCheck rc = build_rcheck_projector_form(T(tag));
      const std::string text = rcheck_to_json(rc);
      std::string golden = slurp(std::string(TWQ_GOLDEN_DIR) + "/rmatrix_" + tag + ".json");
      while (!golden.empty() && golden.back() == '\n') golden.pop_back();
      CHECK_MESSAGE(text == golden, tag);
      RCheck back = rcheck_from_json(text);
      CHECK(back.N == rc.N);
      CHECK(back.den == rc.den);
      CHECK(back.route == rc.route);
      CHECK(back.type == rc.type);
      CHECK(rcheck_to_json(back) == text);
    }
    RCheck mu = build_rcheck_matrix_unit(T("A2t2odd", 3));
    CHECK(rcheck_from_json(rcheck_to_json(mu)).N == mu.N);
    CHECK_THROWS(rcheck_from_json("{\"schema\":\"other\",\"version\":1}"));
    CHECK_THROWS(rcheck_from_json("not json"));
  }

  TEST_CASE("float export uses 17 significant digits") {
    RCheck rc = build_rcheck_projector_form(T("A2t2"));
    const std::string s = rcheck_float_json(rc, 1.21, 0.5);
    auto j = nlohmann::json::parse(s);
    CHECK(j["schema"] == "twq.rmatrix-float");
    CHECK(j["q0"].get<double>() == 1.21);
    auto f = evaluate_float(rc, 1.21, 0.5);
    for (const auto& e : j["entries"]) CHECK(e[2].get<double>() == f.get(e[0].get<int>(), e[1].get<int>()));
    CHECK(s.find("1.21") != std::string::npos);
    CHECK(s == rcheck_float_json(rc, 1.21, 0.5));
  }

  TEST_CASE("rational limit of the A families") {
    for (auto [tag, r] : std::vector<std::pair<const char*, int>>{{"A2t2", 0}, {"A2t2odd", 3}, {"A2t2even", 2}}) {
      RCheck rc = build_rcheck_projector_form(T(tag, r));
      auto lim = rational_limit(rc, 1.0 / 3, {1e-3, 1e-4});
      CHECK(lim.ratio() <= 0.15);
      CHECK(lim.deviation[1] <= 1e-2);
      CHECK(lim.residual_rank == 0);
    }
    auto Tm = limit_basis_map(T("Dt2", 3));
    CHECK(Tm.size() == 8);
    CHECK(Tm[3][7] == std::complex<double>(0, 1));  // T(v8) = i v4 - (i/2) v5
  }
}
