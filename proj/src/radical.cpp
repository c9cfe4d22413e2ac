#include "twq/radical.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace twq {

const Laurent& atom_value(Atom a) {
  static const std::array<Laurent, kAtomCount> v = {
      Laurent::from_terms({{1, 1}, {-1, 1}}),
      Laurent::from_terms({{2, 1}, {-2, 1}}),
      Laurent::from_terms({{4, 1}, {0, 1}, {-4, 1}}),
      Laurent::from_terms({{6, 1}, {2, 1}, {-2, 1}, {-6, 1}}),
  };
  return v[static_cast<int>(a)];
}

const char* atom_tag(Atom a) {
  static const char* tags[kAtomCount] = {"h2", "b2", "b3", "b4"};
  return tags[static_cast<int>(a)];
}

Laurent radicand_value(Mask m) {
  Laurent r(1);
  for (int a = 0; a < kAtomCount; ++a)
    if (m & (1u << a)) r *= atom_value(static_cast<Atom>(a));
  return r;
}

static const Laurent& radicand_cached(Mask m) {
  static const std::array<Laurent, 16> cache = [] {
    std::array<Laurent, 16> c;
    for (int m2 = 0; m2 < 16; ++m2) c[m2] = radicand_value(static_cast<Mask>(m2));
    return c;
  }();
  return cache[m & 15u];
}

Laurent bracket(long n, long twice_k) {
  if (twice_k == 0) throw std::invalid_argument("bracket: k = 0");
  Laurent num = Laurent::s_pow(Exp(twice_k) * n) - Laurent::s_pow(-Exp(twice_k) * n);
  Laurent den = Laurent::s_pow(twice_k) - Laurent::s_pow(-twice_k);
  return num.divexact(den);
}

Laurent bracket_i(long n, long twice_k) {
  if (twice_k == 0) throw std::invalid_argument("bracket_i: k = 0");
  const long sign = ((n - 1) % 2 == 0) ? 1 : -1;
  Laurent num = Laurent::s_pow(Exp(twice_k) * n) + Laurent::s_pow(-Exp(twice_k) * n).scaled(sign);
  Laurent den = Laurent::s_pow(twice_k) + Laurent::s_pow(-twice_k);
  return num.divexact(den);
}

RadicalScalar::RadicalScalar(const Laurent& l) : den_(1) {
  if (!l.is_zero()) num_.emplace_back(0, l);
}

RadicalScalar RadicalScalar::sqrt_of(Mask m) {
  RadicalScalar r;
  r.num_.emplace_back(m, Laurent(1));
  return r;
}

RadicalScalar RadicalScalar::fraction(const Laurent& num, const Laurent& den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  RadicalScalar r;
  if (num.is_zero()) return r;
  r.num_.emplace_back(0, num);
  r.den_ = den;
  r.normalize();
  return r;
}

bool RadicalScalar::is_one() const {
  return num_.size() == 1 && num_[0].first == 0 && num_[0].second.is_one() && den_.is_one();
}

Laurent RadicalScalar::as_laurent() const {
  if (!is_laurent()) throw std::domain_error("scalar is not a Laurent polynomial");
  return num_.empty() ? Laurent() : num_[0].second;
}

Mask RadicalScalar::radicals_used() const {
  Mask m = 0;
  for (const auto& p : num_) m |= p.first;
  return m;
}

void RadicalScalar::normalize() {
  std::erase_if(num_, [](const Part& p) { return p.second.is_zero(); });
  if (num_.empty()) {
    den_ = Laurent(1);
    return;
  }
  if (den_.is_one()) return;
  if (!den_.is_monomial()) {
    Laurent g = den_;
    for (const auto& p : num_) {
      g = gcd(g, p.second);
      if (g.is_one()) break;
    }
    if (!g.is_one()) {
      den_ = den_.divexact(g);
      for (auto& p : num_) p.second = p.second.divexact(g);
    }
  }
  // den = c * s^k * primitive
  mpq_class c;
  Exp k;
  Laurent prim = primitive_part(den_, &c, &k);
  if (!(c == 1 && k == 0)) {
    mpq_class ic = 1 / c;
    for (auto& p : num_) p.second = p.second.shifted(-k).scaled(ic);
  }
  den_ = std::move(prim);
}

RadicalScalar RadicalScalar::operator-() const {
  RadicalScalar r = *this;
  for (auto& p : r.num_) p.second = -p.second;
  return r;
}

static void merge_parts(std::vector<RadicalScalar::Part>& out, const std::vector<RadicalScalar::Part>& a,
                        const std::vector<RadicalScalar::Part>& b, const Laurent* fa, const Laurent* fb,
                        bool negate) {
  std::size_t i = 0, j = 0;
  auto term = [](const Laurent& x, const Laurent* f) { return f ? x * *f : x; };
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.emplace_back(a[i].first, term(a[i].second, fa));
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      Laurent y = term(b[j].second, fb);
      out.emplace_back(b[j].first, negate ? -y : y);
      ++j;
    } else {
      Laurent x = term(a[i].second, fa);
      if (negate)
        x -= term(b[j].second, fb);
      else
        x += term(b[j].second, fb);
      if (!x.is_zero()) out.emplace_back(a[i].first, std::move(x));
      ++i;
      ++j;
    }
  }
}

RadicalScalar& RadicalScalar::operator+=(const RadicalScalar& o) { return *this = add_impl(*this, o, false); }
RadicalScalar& RadicalScalar::operator-=(const RadicalScalar& o) { return *this = add_impl(*this, o, true); }

RadicalScalar RadicalScalar::raw_mul(const RadicalScalar& a, const RadicalScalar& b) {
  RadicalScalar r;
  if (a.num_.empty() || b.num_.empty()) return r;
  if (a.num_.size() == 1 && b.num_.size() == 1) {
    Mask m1 = a.num_[0].first, m2 = b.num_[0].first;
    Laurent c = a.num_[0].second * b.num_[0].second;
    if (m1 & m2) c *= radicand_cached(m1 & m2);
    r.num_.emplace_back(static_cast<Mask>(m1 ^ m2), std::move(c));
  } else {
    std::array<Laurent, 16> acc;
    Mask used = 0;
    bool any[16] = {};
    for (const auto& x : a.num_)
      for (const auto& y : b.num_) {
        Laurent c = x.second * y.second;
        Mask common = x.first & y.first;
        if (common) c *= radicand_cached(common);
        Mask m = x.first ^ y.first;
        acc[m] += c;
        any[m] = true;
        used |= m;
      }
    for (int m = 0; m < 16; ++m)
      if (any[m] && !acc[m].is_zero()) r.num_.emplace_back(static_cast<Mask>(m), std::move(acc[m]));
  }
  if (a.den_.is_one())
    r.den_ = b.den_;
  else if (b.den_.is_one())
    r.den_ = a.den_;
  else
    r.den_ = a.den_ * b.den_;
  return r;
}

RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
  RadicalScalar r = RadicalScalar::raw_mul(a, b);
  if (!r.den_.is_one()) r.normalize();
  return r;
}

RadicalScalar& RadicalScalar::operator*=(const RadicalScalar& o) { return *this = *this * o; }

RadicalScalar RadicalScalar::add_impl(const RadicalScalar& a, const RadicalScalar& b, bool negate) {
  if (b.is_zero()) return a;
  if (a.is_zero()) return negate ? -b : b;
  RadicalScalar r;
  if (a.den_ == b.den_) {
    merge_parts(r.num_, a.num_, b.num_, nullptr, nullptr, negate);
    r.den_ = a.den_;
    if (!r.den_.is_one()) r.normalize();
    else if (r.num_.empty()) r.den_ = Laurent(1);
    return r;
  }
  // a/D + b/E = (a E' + b D') / (g D' E'),  g = gcd(D,E)
  Laurent g = gcd(a.den_, b.den_);
  Laurent dp = a.den_.divexact(g), ep = b.den_.divexact(g);
  merge_parts(r.num_, a.num_, b.num_, &ep, &dp, negate);
  r.den_ = g * dp * ep;
  r.normalize();
  return r;
}

RadicalScalar RadicalScalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  // rationalize one atom at a time: x * conj_a(x) is free of sqrt(a)
  RadicalScalar acc(1), x = *this;
  x.den_ = Laurent(1);  // handle the denominator at the end
  for (int a = 0; a < kAtomCount; ++a) {
    if (!(x.radicals_used() & (1u << a))) continue;
    RadicalScalar c = x.conjugate(static_cast<Atom>(a));
    acc = raw_mul(acc, c);
    x = raw_mul(x, c);
  }
  // x is now L (pure Laurent); 1/this = den * acc / L
  Laurent l = x.num_.at(0).second;
  RadicalScalar r = raw_mul(acc, RadicalScalar(den_));
  r.den_ = l;
  r.normalize();
  return r;
}

RadicalScalar RadicalScalar::conjugate(Atom a) const {
  RadicalScalar r = *this;
  for (auto& p : r.num_)
    if (p.first & atom_bit(a)) p.second = -p.second;
  return r;
}

RadicalScalar RadicalScalar::shifted(Exp k) const {
  RadicalScalar r = *this;
  for (auto& p : r.num_) p.second = p.second.shifted(k);
  return r;
}

RadicalScalar RadicalScalar::invert_s() const {
  RadicalScalar r;
  for (const auto& p : num_) r.num_.emplace_back(p.first, p.second.invert_s());
  r.den_ = den_.invert_s();
  r.normalize();
  return r;
}

double RadicalScalar::eval(double s) const {
  double acc = 0;
  for (const auto& p : num_) {
    double c = p.second.eval(s);
    if (p.first) c *= std::sqrt(radicand_cached(p.first).eval(s));
    acc += c;
  }
  return acc / den_.eval(s);
}

std::string RadicalScalar::str() const {
  if (num_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& p : num_) {
    if (!first) os << " + ";
    os << '(' << p.second.str() << ')';
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
  if (den_.is_one()) return os.str();
  return "[" + os.str() + "]/(" + den_.str() + ")";
}

static Mask parse_tags(const std::string& tags) {
  Mask m = 0;
  std::stringstream ss(tags);
  std::string t;
  while (std::getline(ss, t, ',')) {
    bool found = false;
    for (int a = 0; a < kAtomCount; ++a)
      if (t == atom_tag(static_cast<Atom>(a))) {
        m |= static_cast<Mask>(1u << a);
        found = true;
      }
    if (!found) throw std::invalid_argument("unknown atom tag: " + t);
  }
  return m;
}

RadicalScalar RadicalScalar::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "0") return {};
  Laurent den(1);
  if (!s.empty() && s[0] == '[') {
    auto close = s.rfind("]/(");
    if (close == std::string::npos || s.back() != ')') throw std::invalid_argument("bad scalar: " + text);
    den = Laurent::parse(s.substr(close + 3, s.size() - close - 4));
    s = s.substr(1, close - 1);
  }
  RadicalScalar r;
  std::size_t pos = 0;
  std::vector<Part> parts;
  while (pos < s.size()) {
    if (s[pos] == '+') ++pos;
    if (s[pos] != '(') throw std::invalid_argument("bad scalar: " + text);
    auto close = s.find(')', pos);
    Laurent l = Laurent::parse(s.substr(pos + 1, close - pos - 1));
    pos = close + 1;
    Mask m = 0;
    if (s.compare(pos, 6, "*sqrt[") == 0) {
      auto cl = s.find(']', pos);
      m = parse_tags(s.substr(pos + 6, cl - pos - 6));
      pos = cl + 1;
    }
    parts.emplace_back(m, l);
  }
  RadicalScalar acc;
  for (auto& p : parts) acc += RadicalScalar(p.second) * sqrt_of(p.first);
  if (!den.is_one()) acc = acc * fraction(Laurent(1), den);
  return acc;
}

std::ostream& operator<<(std::ostream& os, const RadicalScalar& x) { return os << x.str(); }

}  // namespace twq
