#include "twq/monomial.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace twq {

namespace {

const char* zeta_prefix(int e) {
  static const char* tab[6] = {"", "-j^2", "j", "-", "j^2", "-j"};
  return tab[((e % 6) + 6) % 6];
}

std::string q_part(int64_t k) {
  if (k == 0) return "";
  if (k == 1) return "q";
  if (k >= 2 && k <= 9) return "q^" + std::to_string(k);
  return "q^{" + std::to_string(k) + "}";
}

// storage order: node, then power of q, then root of unity
bool factor_less(const YMonomial::Factor& x, const YMonomial::Factor& y) {
  if (x.node != y.node) return x.node < y.node;
  if (x.p.k != y.p.k) return x.p.k < y.p.k;
  return x.p.e < y.p.e;
}

bool same_slot(const YMonomial::Factor& x, const YMonomial::Factor& y) { return x.node == y.node && x.p == y.p; }

}  // namespace

std::string SpectralPoint::str() const { return std::string(zeta_prefix(e)) + "a" + q_part(k); }

YMonomial::YMonomial(const AlgebraType& t)
    : fam_(t.family()), r_(t.rank()), omega_e_(t.omega_e()), m_(t.m()) {
  for (int i = 1; i <= t.rank(); ++i)
    if (t.sigma_fixed(i)) fixed_ |= uint64_t(1) << i;
}

SpectralPoint YMonomial::canonical(int node, SpectralPoint p) const {
  if (fixed_ >> node & 1) p.e %= omega_e_;
  return p;
}

void YMonomial::mul_in(int node, SpectralPoint p, int exp) {
  if (node < 1 || node > r_) throw std::invalid_argument("node out of range");
  if (exp == 0) return;
  Factor f{node, canonical(node, p), exp};
  auto it = std::lower_bound(f_.begin(), f_.end(), f, factor_less);
  if (it != f_.end() && same_slot(*it, f)) {
    it->exp += exp;
    if (it->exp == 0) f_.erase(it);
  } else {
    f_.insert(it, f);
  }
}

YMonomial YMonomial::single(const AlgebraType& t, int node, SpectralPoint p, int exp) {
  YMonomial m(t);
  m.mul_in(node, p, exp);
  return m;
}

int YMonomial::exponent(int node, SpectralPoint p) const {
  Factor f{node, canonical(node, p), 0};
  auto it = std::lower_bound(f_.begin(), f_.end(), f, factor_less);
  return (it != f_.end() && same_slot(*it, f)) ? it->exp : 0;
}

YMonomial YMonomial::operator*(const YMonomial& o) const {
  if (fam_ != o.fam_ || r_ != o.r_) throw std::invalid_argument("monomials of different types");
  YMonomial r = *this;
  r.f_.clear();
  r.f_.reserve(f_.size() + o.f_.size());
  std::size_t i = 0, j = 0;
  while (i < f_.size() || j < o.f_.size()) {
    if (j == o.f_.size() || (i < f_.size() && factor_less(f_[i], o.f_[j]))) {
      r.f_.push_back(f_[i++]);
    } else if (i == f_.size() || factor_less(o.f_[j], f_[i])) {
      r.f_.push_back(o.f_[j++]);
    } else {
      Factor f = f_[i++];
      f.exp += o.f_[j++].exp;
      if (f.exp != 0) r.f_.push_back(f);
    }
  }
  return r;
}

YMonomial YMonomial::inverse() const { return pow(-1); }

YMonomial YMonomial::pow(int n) const {
  YMonomial r = *this;
  if (n == 0) {
    r.f_.clear();
    return r;
  }
  for (auto& f : r.f_) f.exp *= n;
  return r;
}

YMonomial YMonomial::shifted(SpectralPoint p) const {
  YMonomial r = *this;
  r.f_.clear();
  for (const auto& f : f_) r.mul_in(f.node, f.p * p, f.exp);
  return r;
}

std::string YMonomial::str(bool power_form) const {
  if (f_.empty()) return "1";
  std::string out;
  for (const auto& f : f_) {
    if (!out.empty()) out += ' ';
    out += std::to_string(f.node) + "_{";
    if (power_form && (fixed_ >> f.node & 1)) {
      out += zeta_prefix(m_ * f.p.e);
      out += "a^" + std::to_string(m_) + q_part(m_ * f.p.k);
    } else {
      out += f.p.str();
    }
    out += '}';
    if (f.exp != 1) out += "^{" + std::to_string(f.exp) + "}";
  }
  return out;
}

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("monomial parse error at " + std::to_string(i) + ": " + what + " in '" + s + "'");
  }
  bool eat(char c) {
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  long integer() {
    std::size_t st = i;
    if (i < s.size() && s[i] == '-') ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == st || (i == st + 1 && s[st] == '-')) fail("expected integer");
    return std::stol(s.substr(st, i - st));
  }
  // "^7", "^{-12}"
  long power() {
    expect('^');
    if (eat('{')) {
      long v = integer();
      expect('}');
      return v;
    }
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) return s[i++] - '0';
    fail("expected exponent");
  }
};

}  // namespace

YMonomial YMonomial::parse(const AlgebraType& t, const std::string& text) {
  YMonomial m(t);
  Cursor c{text};
  auto skip = [&] {
    while (c.i < text.size() && (text[c.i] == ' ' || text[c.i] == '*')) ++c.i;
  };
  skip();
  if (text.substr(c.i) == "1") return m;
  while (c.i < text.size()) {
    long node = c.integer();
    c.expect('_');
    c.expect('{');
    int x = 0;  // zeta exponent of the prefix
    if (c.eat('-')) x += 3;
    if (c.eat('j')) {
      if (c.i + 1 < text.size() && text[c.i] == '^' && text[c.i + 1] == '2') {
        c.i += 2;
        x += 4;
      } else {
        x += 2;
      }
    }
    c.expect('a');
    long apow = 1;
    if (c.i < text.size() && text[c.i] == '^') apow = c.power();
    long k = 0;
    if (c.eat('q')) k = (c.i < text.size() && text[c.i] == '^') ? c.power() : 1;
    c.expect('}');
    int exp = 1;
    if (c.i < text.size() && text[c.i] == '^') exp = static_cast<int>(c.power());
    SpectralPoint p;
    if (apow == 1) {
      p = SpectralPoint(x, k);
    } else {
      if (!t.sigma_fixed(static_cast<int>(node)) || apow != t.m()) c.fail("power form on a non-fixed node");
      if (x % apow != 0 || k % apow != 0) c.fail("power form not on the lattice");
      p = SpectralPoint(x / static_cast<int>(apow), k / apow);
    }
    if (node < 1 || node > t.rank()) c.fail("node out of range");
    m.mul_in(static_cast<int>(node), p, exp);
    skip();
  }
  return m;
}

bool is_dominant(const YMonomial& m) {
  for (const auto& f : m.factors())
    if (f.exp < 0) return false;
  return true;
}

std::vector<int> weight_of(const YMonomial& m) {
  std::vector<int> w(m.rank(), 0);
  for (const auto& f : m.factors()) w[f.node - 1] += f.exp;
  return w;
}

YMonomial simple_lroot(const AlgebraType& t, int i, SpectralPoint a) {
  const int r = t.rank();
  if (i < 1 || i > r) throw std::invalid_argument("simple_lroot: node out of range");
  YMonomial m(t);
  auto put = [&](int node, SpectralPoint p, int exp) { m = m * YMonomial::single(t, node, a * p, exp); };
  const SpectralPoint one{}, q{0, 1}, qi{0, -1}, neg{3, 0};
  put(i, q, 1);
  put(i, qi, 1);
  switch (t.family()) {
    case Family::A2t2:
      put(1, neg, -1);
      break;
    case Family::A2t2even:
    case Family::A2t2odd:
    case Family::Dt2:
      if (i > 1) put(i - 1, one, -1);
      if (i < r - 1) {
        put(i + 1, one, -1);
      } else if (i == r - 1) {
        put(r, one, -1);
        if (t.family() == Family::Dt2) put(r, neg, -1);
      } else if (t.family() == Family::A2t2even) {
        put(r, neg, -1);
      } else if (t.family() == Family::A2t2odd) {
        put(r - 1, neg, -1);
      }
      break;
    case Family::E6t2:
      if (i == 1) put(2, one, -1);
      if (i == 2) {
        put(1, one, -1);
        put(3, one, -1);
      }
      if (i == 3) {
        put(2, one, -1);
        put(2, neg, -1);
        put(4, one, -1);
      }
      if (i == 4) put(3, one, -1);
      break;
    case Family::D4t3:
      if (i == 1) put(2, one, -1);
      if (i == 2) {
        put(1, one, -1);
        put(1, SpectralPoint(2, 0), -1);
        put(1, SpectralPoint(4, 0), -1);
      }
      break;
  }
  return m;
}

void QCharacter::add(const YMonomial& m, int mult) {
  if (mult == 0) return;
  int& v = terms_[m];
  v += mult;
  if (v == 0) terms_.erase(m);
}

int QCharacter::multiplicity(const YMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0 : it->second;
}

std::size_t QCharacter::size() const {
  std::size_t n = 0;
  for (const auto& [m, c] : terms_) n += static_cast<std::size_t>(c);
  return n;
}

QCharacter QCharacter::operator*(const QCharacter& o) const {
  QCharacter r(t_);
  for (const auto& [x, cx] : terms_)
    for (const auto& [y, cy] : o.terms_) r.add(x * y, cx * cy);
  return r;
}

QCharacter QCharacter::shifted(SpectralPoint p) const {
  QCharacter r(t_);
  for (const auto& [x, c] : terms_) r.add(x.shifted(p), c);
  return r;
}

std::vector<YMonomial> QCharacter::dominant() const {
  std::vector<YMonomial> out;
  for (const auto& [x, c] : terms_)
    if (is_dominant(x)) out.push_back(x);
  return out;
}

}  // namespace twq
