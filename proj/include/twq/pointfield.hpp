/**
 * @file pointfield.hpp
 * @brief Exact evaluation at a rational point s = s0: values live in the
 *        multiquadratic field Q(sqrt(atom(s0)) ...).
 *
 * The point is rejected when some product of atom values is a rational
 * square, since the formal radicals would then collide.
 */
#pragma once

#include "twq/zrational.hpp"

#include <array>
#include <string>
#include <vector>

namespace twq {

class PointField;

class PointScalar {
 public:
  using Part = std::pair<Mask, mpq_class>;
  PointScalar() = default;
  PointScalar(const PointField* f, mpq_class c);

  bool is_zero() const { return p_.empty(); }
  const std::vector<Part>& parts() const { return p_; }
  const PointField* field() const { return f_; }

  PointScalar operator-() const;
  PointScalar& operator+=(const PointScalar& o);
  PointScalar& operator-=(const PointScalar& o);
  friend PointScalar operator+(PointScalar a, const PointScalar& b) { return a += b; }
  friend PointScalar operator-(PointScalar a, const PointScalar& b) { return a -= b; }
  friend PointScalar operator*(const PointScalar& a, const PointScalar& b);
  PointScalar& operator*=(const PointScalar& o) { return *this = *this * o; }
  friend bool operator==(const PointScalar& a, const PointScalar& b) { return a.p_ == b.p_; }
  friend bool operator!=(const PointScalar& a, const PointScalar& b) { return !(a == b); }
  PointScalar inverse() const;
  /// fused a += b*c
  void add_mul(const PointScalar& b, const PointScalar& c);

  double to_double() const;
  std::string str() const;

 private:
  friend class PointField;
  const PointField* f_ = nullptr;
  std::vector<Part> p_;  // sorted by mask, nonzero
};

class PointField {
 public:
  /// throws std::invalid_argument when atoms collide at s0 (for atoms in `used`)
  PointField(mpq_class s0, Mask used = 0xF);

  const mpq_class& s() const { return s0_; }
  const mpq_class& atom(int a) const { return atoms_[a]; }
  const mpq_class& radicand(Mask m) const { return rad_[m & 15u]; }

  mpq_class eval(const Laurent& l) const;
  PointScalar eval(const Scalar& x) const;
  PointScalar eval(const ZPoly& p, const PointScalar& z) const;
  /// throws PoleError when the denominator vanishes
  PointScalar eval(const ZRational& f, const PointScalar& z) const;
  PointScalar constant(const mpq_class& c) const { return PointScalar(this, c); }

  /// true when s0 makes the formal atoms multiplicatively independent mod squares
  static bool admissible(const mpq_class& s0, Mask used);

 private:
  mpq_class s0_;
  std::array<mpq_class, kAtomCount> atoms_;
  std::array<mpq_class, 16> rad_;
  std::vector<mpq_class> pow_;  // s0^k for k in [-kPow, kPow]
  static constexpr Exp kPow = 256;
};

}  // namespace twq
