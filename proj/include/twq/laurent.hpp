/**
 * @file laurent.hpp
 * @brief Sparse Laurent polynomials in s = q^{1/2} with rational coefficients.
 *
 * Terms are kept sorted by exponent with no zero coefficients, so structural
 * equality is value equality.
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace twq {

using Exp = std::int64_t;

class Laurent {
 public:
  using Term = std::pair<Exp, mpq_class>;

  Laurent() = default;
  Laurent(long c);  // NOLINT: constants convert implicitly
  explicit Laurent(const mpq_class& c);

  static Laurent monomial(const mpq_class& c, Exp e);
  static Laurent s_pow(Exp e) { return monomial(1, e); }
  static Laurent q_pow(Exp e);  // q^e = s^{2e}
  static Laurent from_terms(std::vector<Term> t);  // sorts and merges

  const std::vector<Term>& terms() const { return t_; }
  std::size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_one() const;
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first == 0); }
  bool is_monomial() const { return t_.size() == 1; }
  Exp low() const { return t_.front().first; }
  Exp high() const { return t_.back().first; }
  mpq_class coeff(Exp e) const;
  mpq_class constant_term() const { return coeff(0); }

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  Laurent& operator*=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.t_ == b.t_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
  // total order, only for use as map keys
  friend bool operator<(const Laurent& a, const Laurent& b);

  Laurent shifted(Exp k) const;  // * s^k
  Laurent scaled(const mpq_class& c) const;
  Laurent invert_s() const;      // s -> s^{-1}
  Laurent pow(unsigned n) const;

  // exact quotient in Q[s,1/s]; throws std::domain_error if b does not divide
  Laurent divexact(const Laurent& b) const;
  bool divides_into(const Laurent& a, Laurent* quot) const;  // does *this divide a

  mpq_class eval(const mpq_class& s) const;
  double eval(double s) const;

  std::string str() const;  // "c*s^e" terms, "0" for zero
  static Laurent parse(const std::string& text);

 private:
  std::vector<Term> t_;
  void trim();
};

std::ostream& operator<<(std::ostream& os, const Laurent& l);

/// gcd in Q[s,1/s]: normalized to lowest exponent 0, primitive over Z, positive leading coefficient.
Laurent gcd(const Laurent& a, const Laurent& b);

/// Split a = c * s^k * p with p primitive integer, low(p)=0, lc(p)>0. Returns p.
Laurent primitive_part(const Laurent& a, mpq_class* unit_coeff = nullptr, Exp* unit_shift = nullptr);

Exp checked_add(Exp a, Exp b);

}  // namespace twq
