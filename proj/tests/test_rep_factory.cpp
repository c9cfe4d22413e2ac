#include "doctest.h"

#include <fstream>
#include <sstream>

#include "twq/rep.hpp"

using namespace twq;

namespace {

std::vector<AlgebraType> relation_types() {
  std::vector<AlgebraType> ts = {AlgebraType::parse("A2t2"), AlgebraType::parse("E6t2"), AlgebraType::parse("D4t3")};
  for (int r = 3; r <= 4; ++r) ts.push_back(AlgebraType::parse("A2t2odd", r));
  for (int r = 2; r <= 4; ++r) ts.push_back(AlgebraType::parse("A2t2even", r));
  for (int r = 2; r <= 3; ++r) ts.push_back(AlgebraType::parse("Dt2", r));
  return ts;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("rep_factory") {
  TEST_CASE("defining relations hold exactly") {
    for (const auto& t : relation_types()) {
      auto rep = build_rep(t);
      CHECK(rep.dim == t.dim());
      auto rr = relation_suite(rep);
      std::string why;
      for (const auto& f : rr.failures) why += f + "; ";
      CHECK_MESSAGE(rr.ok(), t.display(), ": ", why);
      CHECK(rr.shift[0][0] > 0);
      int linked = 0;
      for (int i = 1; i <= t.rank(); ++i) {
        CHECK(rr.shift[i][0] <= 0);
        linked += rr.shift[i][0] < 0;
      }
      CHECK(linked >= 1);
    }
  }

  TEST_CASE("worked module data") {
    auto a2 = build_rep(AlgebraType::parse("A2t2"));
    CHECK(a2.F[0].get(1, 0) == Scalar::sqrt_atom(Atom::H2));
    CHECK(a2.kexp[0] == std::vector<Exp>{-4, 0, 4});
    CHECK(a2.E0.get(2, 0) == Scalar(1));
    CHECK(a2.E0.nnz() == 1);

    auto g = build_rep(AlgebraType::parse("D4t3"));
    CHECK(g.F[0].get(3, 2) == Scalar::sqrt_atom(Atom::B2));
    CHECK(g.F[0].get(4, 3) == Scalar::sqrt_atom(Atom::B2));
    CHECK(g.weight_zero(3));
    CHECK(g.weight_zero(7));
    int zeros = 0;
    for (int v = 0; v < g.dim; ++v) zeros += g.weight_zero(v);
    CHECK(zeros == 2);

    auto e6 = build_rep(AlgebraType::parse("E6t2"));
    const Scalar c = Scalar::sqrt_atom(Atom::B4) / Scalar::sqrt_atom(Atom::B3);
    CHECK(e6.E0.get(26, 0) == c);
    CHECK(e6.E0.get(25, 26) == c);
    zeros = 0;
    for (int v = 0; v < e6.dim; ++v) zeros += e6.weight_zero(v);
    CHECK(zeros == 3);
  }

  TEST_CASE("graph file: embedded copy, checksum, grammar") {
    const std::string disk = slurp(std::string(TWQ_DATA_DIR) + "/e6t2_graph.txt");
    CHECK(disk == e6t2_graph_text());
    auto g = parse_graph(disk);
    CHECK(g.dim == 27);
    CHECK(g.F.size() == 34);
    CHECK(g.E0.size() == 12);
    std::string tampered = disk;
    auto at = tampered.find("F 1 1 2 1");
    REQUIRE(at != std::string::npos);
    tampered.replace(at, 9, "F 1 1 2 2");
    CHECK_THROWS_AS(parse_graph(tampered), ConstructionError);
    CHECK(parse_radical_coeff("sqrt[b3]/sqrt[b2]") * Scalar::sqrt_atom(Atom::B2) == Scalar::sqrt_atom(Atom::B3));
    CHECK(parse_radical_coeff("1/sqrt[h2]") == Scalar::sqrt_atom(Atom::H2).inverse());
    CHECK_THROWS_AS(parse_radical_coeff("sqrt[b9]"), ConstructionError);
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  }

  TEST_CASE("bar involution") {
    auto t5 = build_bar_involution(build_rep(AlgebraType::parse("A2t2odd", 3)));
    for (int v = 0; v < 6; ++v) CHECK(t5(v) == 5 - v);
    auto d3 = build_bar_involution(build_rep(AlgebraType::parse("Dt2", 2)));
    CHECK(d3.t == std::vector<int>{4, 3, 2, 1, 0, 5});
    auto e6 = build_bar_involution(build_rep(AlgebraType::parse("E6t2")));
    CHECK(e6(12) == 12);
    CHECK(e6(13) == 13);
    CHECK(e6(26) == 26);
    for (const auto& t : relation_types()) {
      auto rep = build_rep(t);
      BarInvolution bar = build_bar_involution(rep);
      for (int v = 0; v < rep.dim; ++v) {
        CHECK(bar(bar(v)) == v);
        auto w = rep.weight[v];
        for (int& x : w) x = -x;
        CHECK(rep.weight[bar(v)] == w);
      }
    }
  }

  TEST_CASE("a corrupted module is rejected") {
    auto rep = build_rep(AlgebraType::parse("A2t2odd", 3));
    rep.F[0].add(1, 0, Scalar(1));  // F_1 v_1 = 2 v_2
    rep.E[0] = rep.F[0].transpose();
    CHECK_FALSE(relation_suite(rep).ef);
    CHECK_THROWS_AS(build_bar_involution(rep), ConstructionError);
    auto rep2 = build_rep(AlgebraType::parse("Dt2", 2));
    rep2.kexp[0][0] += 2;
    CHECK_FALSE(relation_suite(rep2).k_conjugation);
  }

  TEST_CASE("coproduct") {
    auto rep = build_rep(AlgebraType::parse("A2t2"));
    auto dk = coproduct_action(rep, Gen::K, 0, 1, 0);
    CHECK(dk.shift == 0);
    CHECK(dk.m.get(0, 0) == ZPoly(Scalar::s_pow(-8)));
    auto de = coproduct_action(rep, Gen::E, 0, 1, 0);
    CHECK(de.shift == 0);
    // E_0(z) (x) K_0^{1/2} sends v1 (x) v3 to z q v3 (x) v3
    CHECK(de.m.get(8, 2) == ZPoly::z_pow(1, Scalar::s_pow(2)));
    CHECK(de.m.get(2 * 3 + 2, 0 * 3 + 2) == ZPoly::z_pow(1, Scalar::s_pow(2)));
    auto df = coproduct_action(rep, Gen::F, 0, 1, 0);
    CHECK(df.shift == -1);
    // z^{-1} E_0^T (x) K_0^{1/2} on v3 (x) v1 gives z^{-1} q^{-1} v1 (x) v1
    CHECK(df.m.get(0, 6) == ZPoly(Scalar::s_pow(-2)));
    // Delta respects [E_i, F_i] on V (x) V for a finite node
    auto t = AlgebraType::parse("Dt2", 2);
    auto d = build_rep(t);
    for (int i = 1; i <= 2; ++i) {
      auto E = coproduct_finite(d, Gen::E, i), F = coproduct_finite(d, Gen::F, i), K = coproduct_finite(d, Gen::K, i);
      auto lhs = E * F - F * E;
      // (K - K^{-1}) / (q_i - q_i^{-1}) evaluated diagonal-wise
      ScalarMatrix rhs(E.rows(), E.cols());
      for (int v = 0; v < K.rows(); ++v) {
        Scalar k = K.get(v, v);
        Laurent kl = k.as_laurent();
        Exp e = kl.low();
        rhs.add(v, v, Scalar(bracket(long(e / d.twice_d(i)), d.twice_d(i))));
      }
      CHECK(lhs == rhs);
    }
  }

  TEST_CASE("Shapovalov form") {
    for (const auto& t : relation_types()) {
      auto rep = build_rep(t);
      auto s = shapovalov_gram(rep);
      CHECK(s.adjoint);
      CHECK(s.gram == ScalarMatrix::identity(rep.dim, Scalar(1)));
      // (E_i u, v) = (u, F_i v) on sparse random-ish vectors
      std::vector<Scalar> u(rep.dim), v(rep.dim);
      for (int k = 0; k < rep.dim; ++k) {
        u[k] = Scalar((k * 7) % 5 - 2);
        v[k] = Scalar((k * 3) % 4 - 1);
      }
      for (int i = 0; i <= t.rank(); ++i) {
        auto Eu = rep.e(i).apply(u, Scalar(0));
        auto Fv = rep.f(i).apply(v, Scalar(0));
        Scalar a(0), b(0);
        for (int k = 0; k < rep.dim; ++k) {
          a += Eu[k] * v[k];
          b += u[k] * Fv[k];
        }
        CHECK(a == b);
      }
    }
  }

  TEST_CASE("sparse export") {
    auto rep = build_rep(AlgebraType::parse("Dt2", 2));
    auto rows = export_sparse(rep.F[1]);
    REQUIRE(rows.size() == 2);
    CHECK(std::get<0>(rows[0]) == 2);
    CHECK(std::get<1>(rows[0]) == 1);
    CHECK(Scalar::parse(std::get<2>(rows[0])) == Scalar::sqrt_atom(Atom::B2));
    CHECK_THROWS_AS(AlgebraType::parse("Dt2", 1), std::invalid_argument);
  }
}
