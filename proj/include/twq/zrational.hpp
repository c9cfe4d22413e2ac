/**
 * @file zrational.hpp
 * @brief Polynomials and rational functions in the spectral ratio z over the scalar field.
 */
#pragma once

#include "twq/radical.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace twq {

class ZPoly {
 public:
  ZPoly() = default;
  ZPoly(const Scalar& c);  // NOLINT
  ZPoly(long c) : ZPoly(Scalar(c)) {}  // NOLINT
  explicit ZPoly(std::vector<Scalar> coeffs);
  static ZPoly z_pow(int k, const Scalar& c = Scalar(1));
  static ZPoly z();  // the variable

  const std::vector<Scalar>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  int low_degree() const;
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const Scalar& operator[](int k) const;
  const Scalar& lead() const { return c_.back(); }

  ZPoly operator-() const;
  ZPoly& operator+=(const ZPoly& o);
  ZPoly& operator-=(const ZPoly& o);
  friend ZPoly operator+(ZPoly a, const ZPoly& b) { return a += b; }
  friend ZPoly operator-(ZPoly a, const ZPoly& b) { return a -= b; }
  friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
  ZPoly& operator*=(const ZPoly& o) { return *this = *this * o; }
  friend bool operator==(const ZPoly& a, const ZPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ZPoly& a, const ZPoly& b) { return !(a == b); }

  ZPoly scaled(const Scalar& x) const;
  ZPoly shifted(int k) const;           // * z^k, k >= 0
  ZPoly reversed(int n) const;          // z^n p(1/z), requires n >= degree
  ZPoly invert_s() const;
  Scalar eval(const Scalar& z0) const;
  double eval(double s, double z) const;

  // division over the field; throws on zero divisor
  void divmod(const ZPoly& b, ZPoly* q, ZPoly* r) const;
  bool divides_into(const ZPoly& a, ZPoly* quot) const;
  ZPoly monic() const;

  std::string str() const;  // "k:<scalar>" terms joined by " ; ", "0" for zero
  static ZPoly parse(const std::string& text);

 private:
  std::vector<Scalar> c_;  // index = degree, trimmed
  void trim();
};

ZPoly gcd(const ZPoly& a, const ZPoly& b);  // monic

class PoleError : public std::domain_error {
 public:
  PoleError(const std::string& what, Scalar root) : std::domain_error(what), root_(std::move(root)) {}
  const Scalar& root() const { return root_; }

 private:
  Scalar root_;
};

class ZRational {
 public:
  ZRational() : den_(Scalar(1)) {}
  ZRational(const Scalar& c) : num_(c), den_(Scalar(1)) {}  // NOLINT
  ZRational(long c) : ZRational(Scalar(c)) {}                // NOLINT
  ZRational(const ZPoly& n) : num_(n), den_(Scalar(1)) {}   // NOLINT
  ZRational(const ZPoly& n, const ZPoly& d);                 // reduces
  /// numerator over a product of known coprime irreducible factors; cancels by trial division
  static ZRational over_factors(const ZPoly& n, const std::vector<ZPoly>& factors);

  const ZPoly& num() const { return num_; }
  const ZPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  ZRational operator-() const;
  friend ZRational operator+(const ZRational& a, const ZRational& b);
  friend ZRational operator-(const ZRational& a, const ZRational& b);
  friend ZRational operator*(const ZRational& a, const ZRational& b);
  friend ZRational operator/(const ZRational& a, const ZRational& b) { return a * b.inverse(); }
  ZRational& operator+=(const ZRational& o) { return *this = *this + o; }
  ZRational& operator-=(const ZRational& o) { return *this = *this - o; }
  ZRational& operator*=(const ZRational& o) { return *this = *this * o; }
  friend bool operator==(const ZRational& a, const ZRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const ZRational& a, const ZRational& b) { return !(a == b); }

  ZRational inverse() const;
  Scalar evaluate_at(const Scalar& z0) const;  // throws PoleError
  ZRational subs_inverse_z() const;            // z -> 1/z
  ZRational invert_s() const;                  // s -> 1/s
  double eval(double s, double z) const;

  std::string str() const;
  static ZRational parse(const std::string& text);

 private:
  ZPoly num_, den_;
  void normalize();
};

std::ostream& operator<<(std::ostream& os, const ZPoly& p);
std::ostream& operator<<(std::ostream& os, const ZRational& f);

}  // namespace twq
