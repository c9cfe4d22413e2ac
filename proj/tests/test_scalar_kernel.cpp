#include "doctest.h"
#include "twq/pointfield.hpp"

#include <random>

using namespace twq;

namespace {
Laurent q(Exp e) { return Laurent::q_pow(e); }
Scalar sq(Atom a) { return Scalar::sqrt_atom(a); }
}  // namespace

TEST_SUITE("scalar_kernel") {
  TEST_CASE("brackets") {
    CHECK(bracket(2, 2) == q(1) + q(-1));
    CHECK(bracket(2, 1) == Laurent::s_pow(1) + Laurent::s_pow(-1));
    CHECK(bracket(3, 4) == q(4) + Laurent(1) + q(-4));
    CHECK(bracket_i(2, 2) == q(1) - q(-1));
    CHECK(bracket_i(3, 2) == q(2) - Laurent(1) + q(-2));
    CHECK(bracket_i(3, 4) == q(4) - Laurent(1) + q(-4));
    CHECK_THROWS_AS(bracket(2, 0), std::invalid_argument);
    CHECK_THROWS_AS(bracket_i(2, 0), std::invalid_argument);
    for (long n = 1; n < 9; ++n)
      for (long tk = 1; tk < 7; ++tk) {
        CHECK(bracket(n, tk) * (Laurent::s_pow(tk) - Laurent::s_pow(-tk)) ==
              Laurent::s_pow(tk * n) - Laurent::s_pow(-tk * n));
        // q -> 1 limits of the twisted bracket
        CHECK(bracket_i(n, tk).eval(mpq_class(1)) == (n % 2 ? 1 : 0));
      }
  }

  TEST_CASE("radical reduction and inverse") {
    CHECK(sq(Atom::B2) * sq(Atom::B2) == Scalar(bracket(2, 2)));
    Scalar a = sq(Atom::B2) / sq(Atom::B3), b = sq(Atom::B3) / sq(Atom::B4);
    Scalar expect = Scalar::sqrt_of(atom_bit(Atom::B2) | atom_bit(Atom::B4)) *
                    Scalar::fraction(Laurent(1), bracket(4, 2));
    CHECK(a * b == expect);
    CHECK(sq(Atom::B3).inverse() == sq(Atom::B3) * Scalar::fraction(1, bracket(3, 2)));
    CHECK_THROWS_AS(Scalar().inverse(), std::domain_error);
    Scalar m = Scalar(q(1)) + sq(Atom::B2) * Scalar(q(-2)) + sq(Atom::B3) + Scalar::sqrt_of(6);
    CHECK((m * m.inverse()).is_one());
  }

  TEST_CASE("ring axioms on random operands") {
    std::mt19937 rng(7);
    auto rnd = [&] {
      Scalar x;
      for (int k = 0; k < 3; ++k) {
        Mask m = static_cast<Mask>(rng() % 16);
        Laurent l = Laurent::monomial(mpq_class(long(rng() % 7) - 3, 1 + rng() % 3), Exp(rng() % 9) - 4);
        x += Scalar(l) * Scalar::sqrt_of(m);
      }
      if (rng() % 2) x = x / Scalar(bracket(2 + rng() % 3, 2));
      return x;
    };
    for (int it = 0; it < 30; ++it) {
      Scalar a = rnd(), b = rnd(), c = rnd();
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
  }

  TEST_CASE("string round trip") {
    Scalar x = (Scalar(q(3)) - sq(Atom::H2) * Scalar(mpq_class(2, 3))) / Scalar(bracket(3, 2));
    CHECK(Scalar::parse(x.str()) == x);
    CHECK(Laurent::parse(bracket_i(5, 3).str()) == bracket_i(5, 3));
    ZRational f(ZPoly({Scalar(1), Scalar(-1)}), ZPoly({Scalar(q(1)), -Scalar(q(-1))}));
    CHECK(ZRational::parse(f.str()) == f);
  }

  TEST_CASE("rational functions in z") {
    // (1-z)/(q - q^{-1} z)
    ZRational f(ZPoly({Scalar(1), Scalar(-1)}), ZPoly({Scalar(q(1)), -Scalar(q(-1))}));
    CHECK(f.evaluate_at(Scalar(1)).is_zero());
    // denominator normalized: lowest coefficient 1
    CHECK(f.den()[0].is_one());
    ZRational g = f.subs_inverse_z();
    ZRational expect(ZPoly({Scalar(-1), Scalar(1)}), ZPoly({-Scalar(q(-1)), Scalar(q(1))}));
    CHECK(g == expect);
    // unitarity factor -q^{-2}(1-q^2 z)/(1-q^{-2} z)
    ZRational u(ZPoly({-Scalar(q(-2)), Scalar(1)}), ZPoly({Scalar(1), -Scalar(q(-2))}));
    CHECK((u * u.subs_inverse_z()) == ZRational(1));
    CHECK(u.evaluate_at(Scalar(1)) == Scalar(1));
    CHECK_THROWS_AS(u.evaluate_at(Scalar(q(2))), PoleError);
    try {
      u.evaluate_at(Scalar(q(2)));
    } catch (const PoleError& e) {
      CHECK(e.root() == Scalar(q(2)));
    }
    // gcd reduction
    ZPoly a({Scalar(1), -Scalar(q(2))}), b({Scalar(1), Scalar(q(3))});
    ZRational h(a * b, a * ZPoly({Scalar(2), Scalar(q(1))}));
    CHECK(h.den().degree() == 1);
    CHECK(h.den()[0].is_one());
    // evaluation commutes with ring operations
    Scalar z0 = Scalar(mpq_class(3, 7));
    CHECK((u * f).evaluate_at(z0) == u.evaluate_at(z0) * f.evaluate_at(z0));
    CHECK((u + f).evaluate_at(z0) == u.evaluate_at(z0) + f.evaluate_at(z0));
  }

  TEST_CASE("point field") {
    PointField pf(mpq_class(3, 2));
    Scalar x = sq(Atom::B2) * Scalar(q(2)) + Scalar(bracket(3, 2)) / sq(Atom::B4);
    Scalar y = sq(Atom::B3) + Scalar(1);
    CHECK(pf.eval(x * y) == pf.eval(x) * pf.eval(y));
    CHECK(pf.eval(x + y) == pf.eval(x) + pf.eval(y));
    auto v = pf.eval(y);
    CHECK((v * v.inverse()) == pf.constant(1));
    CHECK(std::abs(pf.eval(x).to_double() - x.eval(1.5)) < 1e-12);
    CHECK_FALSE(PointField::admissible(mpq_class(1), 0xF));
  }
}
