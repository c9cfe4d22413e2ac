#include "twq/zrational.hpp"

#include <ostream>
#include <sstream>

namespace twq {

static const Scalar& zero_scalar() {
  static const Scalar z;
  return z;
}

ZPoly::ZPoly(const Scalar& c) {
  if (!c.is_zero()) c_.push_back(c);
}

ZPoly::ZPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

ZPoly ZPoly::z_pow(int k, const Scalar& c) {
  ZPoly p;
  if (c.is_zero()) return p;
  p.c_.assign(static_cast<std::size_t>(k) + 1, Scalar());
  p.c_[k] = c;
  return p;
}

ZPoly ZPoly::z() { return z_pow(1); }

void ZPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

int ZPoly::low_degree() const {
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero()) return static_cast<int>(k);
  return -1;
}

const Scalar& ZPoly::operator[](int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero_scalar();
  return c_[k];
}

ZPoly ZPoly::operator-() const {
  ZPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

ZPoly& ZPoly::operator+=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k)
    if (!o.c_[k].is_zero()) c_[k] += o.c_[k];
  trim();
  return *this;
}

ZPoly& ZPoly::operator-=(const ZPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k)
    if (!o.c_[k].is_zero()) c_[k] -= o.c_[k];
  trim();
  return *this;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
  ZPoly r;
  if (a.is_zero() || b.is_zero()) return r;
  r.c_.assign(a.c_.size() + b.c_.size() - 1, Scalar());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      if (!b.c_[j].is_zero()) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  r.trim();
  return r;
}

ZPoly ZPoly::scaled(const Scalar& x) const {
  if (x.is_zero()) return {};
  if (x.is_one()) return *this;
  ZPoly r = *this;
  for (auto& c : r.c_)
    if (!c.is_zero()) c *= x;
  return r;
}

ZPoly ZPoly::shifted(int k) const {
  if (is_zero() || k == 0) return *this;
  ZPoly r;
  r.c_.assign(static_cast<std::size_t>(k), Scalar());
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

ZPoly ZPoly::reversed(int n) const {
  if (n < degree()) throw std::invalid_argument("reversed: n below degree");
  std::vector<Scalar> v(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= degree(); ++k) v[n - k] = c_[k];
  return ZPoly(std::move(v));
}

ZPoly ZPoly::invert_s() const {
  ZPoly r = *this;
  for (auto& c : r.c_) c = c.invert_s();
  return r;
}

Scalar ZPoly::eval(const Scalar& z0) const {
  Scalar acc;
  for (std::size_t k = c_.size(); k-- > 0;) {
    acc *= z0;
    acc += c_[k];
  }
  return acc;
}

double ZPoly::eval(double s, double z) const {
  double acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k].eval(s);
  return acc;
}

void ZPoly::divmod(const ZPoly& b, ZPoly* q, ZPoly* r) const {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  ZPoly rem = *this;
  std::vector<Scalar> quo(c_.size() >= b.c_.size() ? c_.size() - b.c_.size() + 1 : 0);
  Scalar inv = b.lead().inverse();
  const int db = b.degree();
  while (!rem.is_zero() && rem.degree() >= db) {
    int k = rem.degree() - db;
    Scalar c = rem.lead() * inv;
    quo[k] = c;
    for (int j = 0; j <= db; ++j)
      if (!b.c_[j].is_zero()) rem.c_[k + j] -= c * b.c_[j];
    rem.c_.pop_back();  // leading term cancels exactly
    rem.trim();
  }
  if (q) *q = ZPoly(std::move(quo));
  if (r) *r = std::move(rem);
}

bool ZPoly::divides_into(const ZPoly& a, ZPoly* quot) const {
  ZPoly q, r;
  a.divmod(*this, &q, &r);
  if (!r.is_zero()) return false;
  if (quot) *quot = std::move(q);
  return true;
}

ZPoly ZPoly::monic() const {
  if (is_zero()) return {};
  return scaled(lead().inverse());
}

ZPoly gcd(const ZPoly& a, const ZPoly& b) {
  ZPoly x = a, y = b;
  while (!y.is_zero()) {
    ZPoly r;
    x.divmod(y, nullptr, &r);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::string ZPoly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!first) os << " ; ";
    os << k << ':' << c_[k].str();
    first = false;
  }
  return os.str();
}

ZPoly ZPoly::parse(const std::string& text) {
  std::string t = text;
  if (t == "0") return {};
  std::vector<Scalar> v;
  std::size_t pos = 0;
  while (pos < t.size()) {
    std::size_t end = t.find(" ; ", pos);
    std::string item = t.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad z-polynomial: " + text);
    std::size_t k = std::stoul(item.substr(0, colon));
    if (v.size() <= k) v.resize(k + 1);
    v[k] = Scalar::parse(item.substr(colon + 1));
    if (end == std::string::npos) break;
    pos = end + 3;
  }
  return ZPoly(std::move(v));
}

std::ostream& operator<<(std::ostream& os, const ZPoly& p) { return os << p.str(); }

// ---- ZRational ----

ZRational::ZRational(const ZPoly& n, const ZPoly& d) : num_(n), den_(d) {
  if (d.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void ZRational::normalize() {
  if (num_.is_zero()) {
    den_ = ZPoly(Scalar(1));
    return;
  }
  if (!den_.is_constant()) {
    ZPoly g = gcd(num_, den_);
    if (!g.is_constant()) {
      ZPoly q;
      g.divides_into(num_, &q);
      num_ = std::move(q);
      g.divides_into(den_, &q);
      den_ = std::move(q);
    }
  }
  const Scalar& lowc = den_[den_.low_degree()];
  if (!lowc.is_one()) {
    Scalar inv = lowc.inverse();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

ZRational ZRational::over_factors(const ZPoly& n, const std::vector<ZPoly>& factors) {
  ZRational r;
  r.num_ = n;
  ZPoly den(Scalar(1));
  if (n.is_zero()) return r;
  for (const auto& f : factors) {
    ZPoly q;
    if (f.divides_into(r.num_, &q))
      r.num_ = std::move(q);
    else
      den *= f;
  }
  r.den_ = std::move(den);
  const Scalar& lowc = r.den_[r.den_.low_degree()];
  if (!lowc.is_one()) {
    Scalar inv = lowc.inverse();
    r.num_ = r.num_.scaled(inv);
    r.den_ = r.den_.scaled(inv);
  }
  return r;
}

ZRational ZRational::operator-() const {
  ZRational r = *this;
  r.num_ = -r.num_;
  return r;
}

ZRational operator+(const ZRational& a, const ZRational& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return ZRational(a.num_ + b.num_, a.den_);
  return ZRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

ZRational operator-(const ZRational& a, const ZRational& b) { return a + (-b); }

ZRational operator*(const ZRational& a, const ZRational& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_polynomial() && b.is_polynomial()) {
    ZRational r;
    r.num_ = a.num_ * b.num_;
    return r;  // both denominators are exactly 1 after normalization
  }
  return ZRational(a.num_ * b.num_, a.den_ * b.den_);
}

ZRational ZRational::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return ZRational(den_, num_);
}

Scalar ZRational::evaluate_at(const Scalar& z0) const {
  Scalar d = den_.eval(z0);
  if (d.is_zero()) throw PoleError("evaluation at a pole z0 = " + z0.str(), z0);
  return num_.eval(z0) / d;
}

ZRational ZRational::subs_inverse_z() const {
  int n = std::max(num_.degree(), den_.degree());
  return ZRational(num_.reversed(n), den_.reversed(n));
}

ZRational ZRational::invert_s() const { return ZRational(num_.invert_s(), den_.invert_s()); }

double ZRational::eval(double s, double z) const { return num_.eval(s, z) / den_.eval(s, z); }

std::string ZRational::str() const {
  if (den_.is_constant() && den_[0].is_one()) return "{" + num_.str() + "}";
  return "{" + num_.str() + "}/{" + den_.str() + "}";
}

ZRational ZRational::parse(const std::string& text) {
  if (text.size() < 2 || text.front() != '{') throw std::invalid_argument("bad rational: " + text);
  auto mid = text.find("}/{");
  if (mid == std::string::npos) return ZRational(ZPoly::parse(text.substr(1, text.size() - 2)));
  return ZRational(ZPoly::parse(text.substr(1, mid - 1)), ZPoly::parse(text.substr(mid + 3, text.size() - mid - 4)));
}

std::ostream& operator<<(std::ostream& os, const ZRational& f) { return os << f.str(); }

}  // namespace twq
