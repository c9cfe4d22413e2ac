#include "twq/pointfield.hpp"

#include <cmath>
#include <sstream>

namespace twq {

PointScalar::PointScalar(const PointField* f, mpq_class c) : f_(f) {
  if (sgn(c) != 0) p_.emplace_back(0, std::move(c));
}

PointScalar PointScalar::operator-() const {
  PointScalar r = *this;
  for (auto& x : r.p_) x.second = -x.second;
  return r;
}

static void merge(std::vector<PointScalar::Part>& a, const std::vector<PointScalar::Part>& b, bool neg) {
  if (b.empty()) return;
  if (a.empty()) {
    a = b;
    if (neg)
      for (auto& x : a) x.second = -x.second;
    return;
  }
  std::vector<PointScalar::Part> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, neg ? mpq_class(-b[j].second) : b[j].second);
      ++j;
    } else {
      mpq_class c = neg ? mpq_class(a[i].second - b[j].second) : mpq_class(a[i].second + b[j].second);
      if (sgn(c) != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  a = std::move(out);
}

PointScalar& PointScalar::operator+=(const PointScalar& o) {
  if (!f_) f_ = o.f_;
  merge(p_, o.p_, false);
  return *this;
}

PointScalar& PointScalar::operator-=(const PointScalar& o) {
  if (!f_) f_ = o.f_;
  merge(p_, o.p_, true);
  return *this;
}

PointScalar operator*(const PointScalar& a, const PointScalar& b) {
  PointScalar r;
  r.f_ = a.f_ ? a.f_ : b.f_;
  if (a.p_.empty() || b.p_.empty()) return r;
  if (a.p_.size() == 1 && b.p_.size() == 1) {
    Mask c = a.p_[0].first & b.p_[0].first;
    mpq_class v = a.p_[0].second * b.p_[0].second;
    if (c) v *= r.f_->radicand(c);
    r.p_.emplace_back(static_cast<Mask>(a.p_[0].first ^ b.p_[0].first), std::move(v));
    return r;
  }
  std::array<mpq_class, 16> acc;
  bool any[16] = {};
  mpq_class t;
  for (const auto& x : a.p_)
    for (const auto& y : b.p_) {
      Mask c = x.first & y.first;
      mpq_mul(t.get_mpq_t(), x.second.get_mpq_t(), y.second.get_mpq_t());
      if (c) t *= r.f_->radicand(c);
      Mask m = x.first ^ y.first;
      acc[m] += t;
      any[m] = true;
    }
  for (int m = 0; m < 16; ++m)
    if (any[m] && sgn(acc[m]) != 0) r.p_.emplace_back(static_cast<Mask>(m), std::move(acc[m]));
  return r;
}

void PointScalar::add_mul(const PointScalar& b, const PointScalar& c) {
  if (b.p_.empty() || c.p_.empty()) return;
  *this += b * c;
}

PointScalar PointScalar::inverse() const {
  if (p_.empty()) throw std::domain_error("division by zero (point field)");
  PointScalar acc(f_, 1), x = *this;
  for (int a = 0; a < kAtomCount; ++a) {
    Mask used = 0;
    for (const auto& p : x.p_) used |= p.first;
    if (!(used & (1u << a))) continue;
    PointScalar c = x;
    for (auto& p : c.p_)
      if (p.first & (1u << a)) p.second = -p.second;
    acc = acc * c;
    x = x * c;
  }
  mpq_class inv = 1 / x.p_.at(0).second;
  for (auto& p : acc.p_) p.second *= inv;
  return acc;
}

double PointScalar::to_double() const {
  double v = 0;
  for (const auto& p : p_) {
    double c = p.second.get_d();
    if (p.first) c *= std::sqrt(f_->radicand(p.first).get_d());
    v += c;
  }
  return v;
}

std::string PointScalar::str() const {
  if (p_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& p : p_) {
    if (!first) os << " + ";
    os << p.second.get_str();
    if (p.first) {
      os << "*sqrt[";
      bool f2 = true;
      for (int a = 0; a < kAtomCount; ++a)
        if (p.first & (1u << a)) {
          if (!f2) os << ',';
          os << atom_tag(static_cast<Atom>(a));
          f2 = false;
        }
      os << ']';
    }
    first = false;
  }
  return os.str();
}

static bool is_rational_square(const mpq_class& x) {
  if (sgn(x) < 0) return false;
  return mpz_perfect_square_p(x.get_num_mpz_t()) && mpz_perfect_square_p(x.get_den_mpz_t());
}

bool PointField::admissible(const mpq_class& s0, Mask used) {
  if (sgn(s0) <= 0) return false;
  std::array<mpq_class, kAtomCount> at;
  for (int a = 0; a < kAtomCount; ++a) at[a] = atom_value(static_cast<Atom>(a)).eval(s0);
  for (int m = 1; m < 16; ++m) {
    if ((m & used) != m) continue;
    mpq_class p = 1;
    for (int a = 0; a < kAtomCount; ++a)
      if (m & (1 << a)) p *= at[a];
    if (is_rational_square(p)) return false;
  }
  return true;
}

PointField::PointField(mpq_class s0, Mask used) : s0_(std::move(s0)) {
  s0_.canonicalize();
  if (!admissible(s0_, used)) throw std::invalid_argument("inadmissible evaluation point s0 = " + s0_.get_str());
  for (int a = 0; a < kAtomCount; ++a) atoms_[a] = atom_value(static_cast<Atom>(a)).eval(s0_);
  for (int m = 0; m < 16; ++m) {
    rad_[m] = 1;
    for (int a = 0; a < kAtomCount; ++a)
      if (m & (1 << a)) rad_[m] *= atoms_[a];
  }
  pow_.resize(2 * kPow + 1);
  pow_[kPow] = 1;
  mpq_class inv = 1 / s0_;
  for (Exp k = 1; k <= kPow; ++k) {
    pow_[kPow + k] = pow_[kPow + k - 1] * s0_;
    pow_[kPow - k] = pow_[kPow - k + 1] * inv;
  }
}

mpq_class PointField::eval(const Laurent& l) const {
  if (l.is_zero()) return 0;
  if (l.low() < -kPow || l.high() > kPow) return l.eval(s0_);
  mpq_class acc = 0, t;
  for (const auto& x : l.terms()) {
    mpq_mul(t.get_mpq_t(), x.second.get_mpq_t(), pow_[kPow + x.first].get_mpq_t());
    acc += t;
  }
  return acc;
}

PointScalar PointField::eval(const Scalar& x) const {
  PointScalar r;
  r.f_ = this;
  for (const auto& p : x.parts()) {
    mpq_class v = eval(p.second);
    if (sgn(v) != 0) r.p_.emplace_back(p.first, std::move(v));
  }
  if (!x.den().is_one()) {
    mpq_class d = eval(x.den());
    if (sgn(d) == 0) throw std::domain_error("scalar denominator vanishes at s0");
    for (auto& p : r.p_) p.second /= d;
  }
  return r;
}

PointScalar PointField::eval(const ZPoly& p, const PointScalar& z) const {
  PointScalar acc(this, 0);
  for (int k = p.degree(); k >= 0; --k) {
    acc = acc * z;
    acc += eval(p[k]);
  }
  return acc;
}

PointScalar PointField::eval(const ZRational& f, const PointScalar& z) const {
  PointScalar d = eval(f.den(), z);
  if (d.is_zero()) throw PoleError("evaluation at a pole (exact point)", Scalar());
  return eval(f.num(), z) * d.inverse();
}

}  // namespace twq
