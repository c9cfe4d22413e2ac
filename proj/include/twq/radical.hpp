/**
 * @file radical.hpp
 * @brief The scalar field: Q(s) extended by square roots of four bracket atoms.
 *
 * A value is  sum_m N_m(s) * sqrt(prod_{a in m} a)  /  D(s)  where m runs over
 * subsets of the atom set, N_m are Laurent polynomials and D is one common
 * denominator kept primitive with lowest exponent 0 and positive leading
 * coefficient.  Most values met in practice have D = 1.
 */
#pragma once

#include "twq/laurent.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace twq {

// [2]_{1/2}, [2], [3], [4]
enum class Atom : std::uint8_t { H2 = 0, B2 = 1, B3 = 2, B4 = 3 };
constexpr int kAtomCount = 4;
using Mask = std::uint8_t;

constexpr Mask atom_bit(Atom a) { return static_cast<Mask>(1u << static_cast<unsigned>(a)); }
const Laurent& atom_value(Atom a);
const char* atom_tag(Atom a);  // "h2", "b2", "b3", "b4"

/// [n]_k = (q^{kn} - q^{-kn}) / (q^k - q^{-k}); k given as 2k (an integer).
Laurent bracket(long n, long twice_k);
/// [n]_k^i = (q^{kn} + (-1)^{n-1} q^{-kn}) / (q^k + q^{-k}).
Laurent bracket_i(long n, long twice_k);

class RadicalScalar {
 public:
  using Part = std::pair<Mask, Laurent>;

  RadicalScalar() : den_(1) {}
  RadicalScalar(long c) : RadicalScalar(Laurent(c)) {}  // NOLINT
  RadicalScalar(const Laurent& l);                      // NOLINT
  explicit RadicalScalar(const mpq_class& c) : RadicalScalar(Laurent(c)) {}
  static RadicalScalar sqrt_of(Mask m);                 // sqrt(prod atoms in m)
  static RadicalScalar sqrt_atom(Atom a) { return sqrt_of(atom_bit(a)); }
  static RadicalScalar fraction(const Laurent& num, const Laurent& den);
  static RadicalScalar s_pow(Exp e) { return RadicalScalar(Laurent::s_pow(e)); }
  static RadicalScalar q_pow(Exp e) { return RadicalScalar(Laurent::q_pow(e)); }

  const std::vector<Part>& parts() const { return num_; }
  const Laurent& den() const { return den_; }
  bool is_zero() const { return num_.empty(); }
  bool is_one() const;
  bool is_rational_function() const { return num_.empty() || (num_.size() == 1 && num_[0].first == 0); }
  bool is_laurent() const { return is_rational_function() && den_.is_one(); }
  // the rational (mask 0) numerator part as a Laurent, only meaningful when is_laurent()
  Laurent as_laurent() const;
  Mask radicals_used() const;

  RadicalScalar operator-() const;
  RadicalScalar& operator+=(const RadicalScalar& o);
  RadicalScalar& operator-=(const RadicalScalar& o);
  RadicalScalar& operator*=(const RadicalScalar& o);
  RadicalScalar& operator/=(const RadicalScalar& o) { return *this *= o.inverse(); }
  friend RadicalScalar operator+(RadicalScalar a, const RadicalScalar& b) { return a += b; }
  friend RadicalScalar operator-(RadicalScalar a, const RadicalScalar& b) { return a -= b; }
  friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b);
  friend RadicalScalar operator/(const RadicalScalar& a, const RadicalScalar& b) { return a * b.inverse(); }
  friend bool operator==(const RadicalScalar& a, const RadicalScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RadicalScalar& a, const RadicalScalar& b) { return !(a == b); }

  RadicalScalar inverse() const;  // throws std::domain_error on zero
  RadicalScalar shifted(Exp k) const;  // * s^k
  RadicalScalar invert_s() const;      // s -> 1/s (atoms are invariant)
  RadicalScalar conjugate(Atom a) const;  // sqrt(a) -> -sqrt(a)

  double eval(double s) const;
  std::string str() const;
  static RadicalScalar parse(const std::string& text);

 private:
  std::vector<Part> num_;  // sorted by mask, no zero parts
  Laurent den_;
  void normalize();
  static RadicalScalar raw_mul(const RadicalScalar& a, const RadicalScalar& b);
  static RadicalScalar add_impl(const RadicalScalar& a, const RadicalScalar& b, bool negate);
};

std::ostream& operator<<(std::ostream& os, const RadicalScalar& x);

using Scalar = RadicalScalar;

/// radicand of a mask as a Laurent polynomial (product of atom values)
Laurent radicand_value(Mask m);

}  // namespace twq
