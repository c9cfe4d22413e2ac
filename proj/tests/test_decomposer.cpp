#include "doctest.h"

#include <cmath>

#include "twq/decomposer.hpp"

using namespace twq;

namespace {

TensorSquare square(const char* tag, int r = 0) { return make_tensor_square(build_rep(AlgebraType::parse(tag, r))); }

std::vector<std::pair<const char*, int>> small_types() {
  return {{"A2t2", 0}, {"A2t2odd", 3}, {"A2t2odd", 4}, {"A2t2even", 2}, {"A2t2even", 3},
          {"Dt2", 2},  {"Dt2", 3},     {"D4t3", 0}};
}

Scalar trace(const ScalarMatrix& m) {
  Scalar t;
  for (int i = 0; i < m.rows(); ++i)
    if (const Scalar* x = m.find(i, i)) t += *x;
  return t;
}

ScalarMatrix flip(int d) {
  ScalarMatrix p(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) p.add(j * d + i, i * d + j, Scalar(1));
  return p;
}

}  // namespace

TEST_SUITE("decomposer") {
  TEST_CASE("singular vectors by kernel computation") {
    auto e6 = square("E6t2");
    CHECK(find_singular_vectors(e6, {1, 0, 0, 0}).size() == 3);
    auto a5 = square("A2t2odd", 3);
    auto k = find_singular_vectors(a5, {2, 0, 0});
    REQUIRE(k.size() == 1);
    CHECK(k[0].v.size() == 1);
    CHECK(k[0].v.begin()->first == 0);
    auto g = square("D4t3");
    auto k0 = find_singular_vectors(g, {0, 0});
    CHECK(k0.size() == 2);
    std::vector<SVec> span;
    for (const auto& s : k0) span.push_back(s.v);
    for (const auto& s : explicit_singular_basis(g, "w0")) CHECK(in_span(span, s.v));
    auto k1 = find_singular_vectors(g, {1, 0});
    CHECK(k1.size() == 3);
    span.clear();
    for (const auto& s : k1) span.push_back(s.v);
    for (const auto& s : explicit_singular_basis(g, "w1")) CHECK(in_span(span, s.v));
    CHECK_FALSE(in_span(span, tensor_vector(g, {{Scalar(1), 1, 2}})));
  }

  TEST_CASE("explicit singular vectors") {
    auto g = square("D4t3");
    auto w = explicit_singular_basis(g, "w0");
    REQUIRE(w.size() == 2);
    CHECK(w[0].v.at(g.index(0, 6)) == Scalar::q_pow(5));
    CHECK(w[0].v.at(g.index(3, 3)) == Scalar(-1));
    CHECK(w[0].v.at(g.index(6, 0)) == Scalar::q_pow(-5));
    auto e6 = square("E6t2");
    auto u = explicit_singular_basis(e6, "w1");
    REQUIRE(u.size() == 3);
    CHECK(u[1].v == tensor_vector(e6, {{Scalar(1), 1, 27}}));
    CHECK(u[2].v == tensor_vector(e6, {{Scalar(1), 27, 1}}));
    auto a4 = square("A2t2even", 2);
    auto v0 = explicit_singular_basis(a4, "w0");
    CHECK(v0[0].v.at(a4.index(2, 2)) == Scalar(1));
    CHECK(v0[0].v.at(a4.index(0, 4)) == Scalar::s_pow(3));
    CHECK_THROWS_AS(explicit_singular_basis(a4, "w7"), std::invalid_argument);
  }

  TEST_CASE("norm ratios") {
    auto e6 = square("E6t2");
    CHECK(norm_ratios(e6, "w0")[0] == Scalar(bracket(2, 8) * bracket_i(3, 6) * bracket(13, 2)));
    CHECK(norm_ratios(e6, "w1")[0] ==
          Scalar::fraction(bracket(2, 2) * bracket(2, 12) * bracket(7, 2), bracket(4, 2)));
    CHECK(norm_ratios(square("D4t3"), "w1")[0] == Scalar(bracket(2, 8)));
    // equals gamma/beta of the w0 block function, [2]_{2r-1}[2]^i_{2r+1} / ([2][2]^i)
    for (int r = 2; r <= 4; ++r) {
      Scalar ratio = norm_ratios(square("Dt2", r), "w0")[0];
      CHECK(ratio == Scalar::fraction(bracket(2, 4 * r - 2) * bracket_i(2, 4 * r + 2), bracket(2, 2) * bracket_i(2, 2)));
      CHECK(ratio != Scalar::fraction(bracket(2, 4 * r - 2) * bracket(2, 4 * r + 2), bracket(2, 2)));
    }
  }

  TEST_CASE("lowering-word copies") {
    auto a2 = square("A2t2");
    auto spec = explicit_blocks(a2);
    CHECK(generate_copies(a2, spec[0].label, spec[0].seeds).dim() == 5);
    auto d3 = square("Dt2", 2);
    auto top = generate_copies(d3, "2w2", explicit_singular_basis(d3, "2w2"));
    CHECK(top.dim() == 10);
    CHECK(top.kweight == Weight{0, 2});
    auto e6 = square("E6t2");
    auto b = generate_copies(e6, "w1", explicit_singular_basis(e6, "w1"));
    CHECK(b.mult() == 3);
    CHECK(b.dim() == 26);
    for (const auto& copy : b.copies) CHECK(copy.size() == 26);
    // a repeated seed makes the copies dependent
    auto seeds = explicit_singular_basis(e6, "w1");
    seeds[2] = seeds[1];
    CHECK_THROWS_AS(generate_copies(e6, "w1", seeds), DecompositionError);
  }

  TEST_CASE("decompositions are complete") {
    struct Case {
      const char* tag;
      int r;
      std::vector<std::pair<int, int>> blocks;  // (mult, dim)
    };
    std::vector<Case> cases = {
        {"A2t2", 0, {{1, 5}, {1, 3}, {1, 1}}},
        {"A2t2odd", 3, {{1, 21}, {1, 14}, {1, 1}}},
        {"A2t2even", 2, {{1, 14}, {1, 10}, {1, 1}}},
        {"Dt2", 2, {{1, 14}, {1, 10}, {2, 5}, {2, 1}}},
        {"Dt2", 3, {{1, 27}, {1, 21}, {2, 7}, {2, 1}}},
        {"D4t3", 0, {{1, 27}, {1, 14}, {3, 7}, {2, 1}}},
        {"E6t2", 0, {{1, 324}, {1, 273}, {1, 52}, {3, 26}, {2, 1}}},
    };
    for (const auto& c : cases) {
      auto ts = square(c.tag, c.r);
      auto dec = decompose(ts);
      REQUIRE(dec.blocks.size() == c.blocks.size());
      for (std::size_t k = 0; k < c.blocks.size(); ++k) {
        CHECK(dec.blocks[k].mult() == c.blocks[k].first);
        CHECK(dec.blocks[k].dim() == c.blocks[k].second);
      }
      CHECK(dec.total_dim() == ts.d * ts.d);
    }
  }

  TEST_CASE("orthogonality and projectors") {
    for (auto [tag, r] : small_types()) {
      auto ts = square(tag, r);
      auto dec = decompose(ts);
      const int dd = ts.d * ts.d;
      // distinct blocks are Shapovalov-orthogonal
      for (std::size_t x = 0; x < dec.blocks.size(); ++x)
        for (std::size_t y = x + 1; y < dec.blocks.size(); ++y)
          for (const auto& u : dec.blocks[x].copies)
            for (const auto& v : dec.blocks[y].copies)
              for (std::size_t i = 0; i < u.size(); ++i)
                for (std::size_t j = 0; j < v.size(); ++j) CHECK(dot(u[i], v[j]).is_zero());
      ScalarMatrix total(dd, dd);
      for (const auto& b : dec.blocks) {
        auto bt = transport_operators(ts, b);
        for (int a = 0; a < b.mult(); ++a) {
          total = total + bt.theta[a][a];
          for (int c = 0; c < b.mult(); ++c)
            for (int e = 0; e < b.mult(); ++e) {
              // Theta_ac Theta_ce = Theta_ae, and Theta_ac maps u_c to u_a
              CHECK(bt.theta[a][c] * bt.theta[c][e] == bt.theta[a][e]);
            }
          for (int c = 0; c < b.mult(); ++c) CHECK(act(bt.theta[a][c], b.seeds[c].v) == b.seeds[a].v);
        }
        if (b.mult() == 1) {
          auto P = multiplicity_one_projector(ts, b);
          CHECK(P * P == P);
          CHECK(P.transpose() == P);
          CHECK(trace(P) == Scalar(b.dim()));
        }
      }
      CHECK_MESSAGE(total == ScalarMatrix::identity(dd, Scalar(1)), tag, " r=", r);
    }
  }

  TEST_CASE("projector worked cases") {
    auto a5 = square("A2t2odd", 3);
    auto dec = decompose(a5);
    auto P0 = multiplicity_one_projector(a5, dec.blocks[2]);
    CHECK(trace(P0) == Scalar(1));
    auto P2 = multiplicity_one_projector(a5, dec.blocks[0]);
    SVec top = tensor_vector(a5, {{Scalar(1), 1, 1}});
    CHECK(act(P2, top) == top);
    CHECK_THROWS_AS(multiplicity_one_projector(a5, [&] {
                      auto d = decompose(square("Dt2", 2));
                      return d.blocks[2];
                    }()),
                    std::invalid_argument);
    auto e6 = square("E6t2");
    auto w2 = generate_copies(e6, "w2", explicit_singular_basis(e6, "w2"));
    CHECK(trace(multiplicity_one_projector(e6, w2)) == Scalar(273));
  }

  TEST_CASE("classical limit: flip symmetry of the projectors") {
    // sign of the flip on L_lambda at q -> 1: symmetric square gets +1, exterior square -1
    struct Case {
      const char* tag;
      int r;
      std::vector<int> sign;
    };
    std::vector<Case> cases = {{"A2t2", 0, {1, -1, 1}}, {"A2t2odd", 3, {1, -1, -1}}, {"A2t2even", 2, {1, -1, 1}},
                               {"Dt2", 3, {1, -1}},     {"D4t3", 0, {1, -1}}};
    const double s = std::sqrt(1.0 + 1e-6);
    for (const auto& c : cases) {
      auto ts = square(c.tag, c.r);
      auto dec = decompose(ts);
      const int dd = ts.d * ts.d;
      ScalarMatrix Pf = flip(ts.d);
      for (std::size_t k = 0; k < c.sign.size(); ++k) {
        REQUIRE(dec.blocks[k].mult() == 1);
        ScalarMatrix P = multiplicity_one_projector(ts, dec.blocks[k]);
        ScalarMatrix PF = Pf * P, FP = P * Pf;
        double comm = 0, ev = 0;
        for (int i = 0; i < dd; ++i)
          for (int j = 0; j < dd; ++j) {
            double x = PF.get(i, j).eval(s), y = FP.get(i, j).eval(s);
            comm = std::max(comm, std::fabs(x - y));
            ev = std::max(ev, std::fabs(x - c.sign[k] * P.get(i, j).eval(s)));
          }
        CHECK_MESSAGE(comm < 1e-5, c.tag, " ", dec.blocks[k].label);
        CHECK_MESSAGE(ev < 1e-5, c.tag, " ", dec.blocks[k].label);
      }
    }
  }
}
