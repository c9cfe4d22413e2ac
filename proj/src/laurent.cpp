#include "twq/laurent.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace twq {

Exp checked_add(Exp a, Exp b) {
  Exp r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("s-exponent overflow");
  return r;
}

Laurent::Laurent(long c) {
  if (c != 0) t_.emplace_back(0, mpq_class(c));
}

Laurent::Laurent(const mpq_class& c) {
  if (sgn(c) != 0) {
    t_.emplace_back(0, c);
    t_[0].second.canonicalize();
  }
}

Laurent Laurent::monomial(const mpq_class& c, Exp e) {
  Laurent l;
  if (sgn(c) != 0) {
    l.t_.emplace_back(e, c);
    l.t_[0].second.canonicalize();
  }
  return l;
}

Laurent Laurent::q_pow(Exp e) {
  Exp e2;
  if (__builtin_mul_overflow(e, Exp(2), &e2)) throw std::overflow_error("s-exponent overflow");
  return s_pow(e2);
}

Laurent Laurent::from_terms(std::vector<Term> t) {
  std::sort(t.begin(), t.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  Laurent l;
  for (auto& x : t) {
    x.second.canonicalize();
    if (!l.t_.empty() && l.t_.back().first == x.first)
      l.t_.back().second += x.second;
    else
      l.t_.push_back(std::move(x));
  }
  l.trim();
  return l;
}

void Laurent::trim() {
  t_.erase(std::remove_if(t_.begin(), t_.end(), [](const Term& x) { return sgn(x.second) == 0; }),
           t_.end());
}

bool Laurent::is_one() const { return t_.size() == 1 && t_[0].first == 0 && t_[0].second == 1; }

mpq_class Laurent::coeff(Exp e) const {
  auto it = std::lower_bound(t_.begin(), t_.end(), e,
                             [](const Term& x, Exp v) { return x.first < v; });
  if (it != t_.end() && it->first == e) return it->second;
  return 0;
}

Laurent Laurent::operator-() const {
  Laurent r = *this;
  for (auto& x : r.t_) x.second = -x.second;
  return r;
}

// merge of two sorted term lists, sign = +1 or -1 on the right operand
static void merge_into(std::vector<Laurent::Term>& out, const std::vector<Laurent::Term>& a,
                       const std::vector<Laurent::Term>& b, bool negate) {
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, negate ? mpq_class(-b[j].second) : b[j].second);
      ++j;
    } else {
      mpq_class c = negate ? mpq_class(a[i].second - b[j].second) : mpq_class(a[i].second + b[j].second);
      if (sgn(c) != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
}

Laurent& Laurent::operator+=(const Laurent& o) {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return *this = o;
  std::vector<Term> out;
  merge_into(out, t_, o.t_, false);
  t_ = std::move(out);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
  if (o.t_.empty()) return *this;
  std::vector<Term> out;
  merge_into(out, t_, o.t_, true);
  t_ = std::move(out);
  return *this;
}

Laurent operator*(const Laurent& a, const Laurent& b) {
  Laurent r;
  if (a.t_.empty() || b.t_.empty()) return r;
  if (a.t_.size() == 1 || b.t_.size() == 1) {
    const Laurent& m = a.t_.size() == 1 ? a : b;
    const Laurent& p = a.t_.size() == 1 ? b : a;
    const Exp e = m.t_[0].first;
    const mpq_class& c = m.t_[0].second;
    r.t_.reserve(p.t_.size());
    const bool unit = (c == 1);
    for (const auto& x : p.t_)
      r.t_.emplace_back(checked_add(x.first, e), unit ? x.second : mpq_class(x.second * c));
    return r;
  }
  const Exp lo = checked_add(a.low(), b.low());
  const Exp hi = checked_add(a.high(), b.high());
  const std::size_t nprod = a.t_.size() * b.t_.size();
  const unsigned long long span = static_cast<unsigned long long>(hi - lo) + 1;
  if (span <= 4 * nprod + 16) {
    std::vector<mpq_class> dense(span);
    mpq_class tmp;
    for (const auto& x : a.t_)
      for (const auto& y : b.t_) {
        mpq_mul(tmp.get_mpq_t(), x.second.get_mpq_t(), y.second.get_mpq_t());
        dense[x.first + y.first - lo] += tmp;
      }
    for (std::size_t k = 0; k < span; ++k)
      if (sgn(dense[k]) != 0) r.t_.emplace_back(lo + Exp(k), std::move(dense[k]));
    return r;
  }
  std::vector<Laurent::Term> all;
  all.reserve(nprod);
  for (const auto& x : a.t_)
    for (const auto& y : b.t_) all.emplace_back(x.first + y.first, x.second * y.second);
  return Laurent::from_terms(std::move(all));
}

Laurent& Laurent::operator*=(const Laurent& o) { return *this = *this * o; }

bool operator<(const Laurent& a, const Laurent& b) {
  if (a.t_.size() != b.t_.size()) return a.t_.size() < b.t_.size();
  for (std::size_t i = 0; i < a.t_.size(); ++i) {
    if (a.t_[i].first != b.t_[i].first) return a.t_[i].first < b.t_[i].first;
    int c = cmp(a.t_[i].second, b.t_[i].second);
    if (c != 0) return c < 0;
  }
  return false;
}

Laurent Laurent::shifted(Exp k) const {
  Laurent r = *this;
  for (auto& x : r.t_) x.first = checked_add(x.first, k);
  return r;
}

Laurent Laurent::scaled(const mpq_class& c) const {
  if (sgn(c) == 0) return {};
  Laurent r = *this;
  for (auto& x : r.t_) x.second *= c;
  return r;
}

Laurent Laurent::invert_s() const {
  Laurent r;
  r.t_.reserve(t_.size());
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) r.t_.emplace_back(-it->first, it->second);
  return r;
}

Laurent Laurent::pow(unsigned n) const {
  Laurent r(1), b = *this;
  while (n) {
    if (n & 1u) r *= b;
    n >>= 1;
    if (n) b *= b;
  }
  return r;
}

// dense rational division helper: a = q*b exactly, both dense from degree 0
static bool dense_divexact(const std::vector<mpq_class>& a, const std::vector<mpq_class>& b,
                           std::vector<mpq_class>& q) {
  if (a.size() < b.size()) return false;
  std::vector<mpq_class> rem = a;
  const std::size_t db = b.size() - 1;
  q.assign(a.size() - db, 0);
  mpq_class inv = 1 / b.back();
  for (std::size_t k = a.size(); k-- > db;) {
    if (sgn(rem[k]) == 0) continue;
    mpq_class c = rem[k] * inv;
    q[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] -= c * b[j];
  }
  for (const auto& x : rem)
    if (sgn(x) != 0) return false;
  return true;
}

static std::vector<mpq_class> to_dense(const Laurent& l) {
  std::vector<mpq_class> d(static_cast<std::size_t>(l.high() - l.low()) + 1);
  for (const auto& x : l.terms()) d[x.first - l.low()] = x.second;
  return d;
}

bool Laurent::divides_into(const Laurent& a, Laurent* quot) const {
  if (is_zero()) throw std::domain_error("division by zero Laurent");
  if (a.is_zero()) {
    if (quot) *quot = Laurent();
    return true;
  }
  if (is_monomial()) {
    if (quot) *quot = a.shifted(-low()).scaled(1 / t_[0].second);
    return true;
  }
  std::vector<mpq_class> q;
  if (!dense_divexact(to_dense(a), to_dense(*this), q)) return false;
  if (quot) {
    Laurent r;
    for (std::size_t k = 0; k < q.size(); ++k)
      if (sgn(q[k]) != 0) r.t_.emplace_back(a.low() - low() + Exp(k), q[k]);
    *quot = std::move(r);
  }
  return true;
}

Laurent Laurent::divexact(const Laurent& b) const {
  Laurent q;
  if (!b.divides_into(*this, &q)) throw std::domain_error("inexact Laurent division");
  return q;
}

mpq_class Laurent::eval(const mpq_class& s) const {
  if (t_.empty()) return 0;
  // Horner from the top over the dense range, then shift by s^low
  mpq_class acc = 0;
  Exp prev = high();
  mpq_class p;
  for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
    Exp gap = prev - it->first;
    if (gap > 0) {
      mpz_class nu, de;
      mpz_pow_ui(nu.get_mpz_t(), s.get_num_mpz_t(), static_cast<unsigned long>(gap));
      mpz_pow_ui(de.get_mpz_t(), s.get_den_mpz_t(), static_cast<unsigned long>(gap));
      p = mpq_class(nu, de);
      p.canonicalize();
      acc *= p;
    }
    acc += it->second;
    prev = it->first;
  }
  Exp lo = low();
  if (lo != 0) {
    unsigned long g = static_cast<unsigned long>(lo > 0 ? lo : -lo);
    mpz_class nu, de;
    mpz_pow_ui(nu.get_mpz_t(), s.get_num_mpz_t(), g);
    mpz_pow_ui(de.get_mpz_t(), s.get_den_mpz_t(), g);
    p = lo > 0 ? mpq_class(nu, de) : mpq_class(de, nu);
    p.canonicalize();
    acc *= p;
  }
  return acc;
}

double Laurent::eval(double s) const {
  double acc = 0;
  for (const auto& x : t_) acc += x.second.get_d() * std::pow(s, static_cast<double>(x.first));
  return acc;
}

std::string Laurent::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& x : t_) {
    if (!first && sgn(x.second) > 0) os << '+';
    os << x.second.get_str() << "*s^" << x.first;
    first = false;
  }
  return os.str();
}

Laurent Laurent::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s == "0" || s.empty()) return {};
  static const std::regex term(R"(([+-]?[0-9]+(?:/[0-9]+)?)\*s\^(-?[0-9]+))");
  std::vector<Term> t;
  std::size_t consumed = 0;
  for (auto it = std::sregex_iterator(s.begin(), s.end(), term); it != std::sregex_iterator(); ++it) {
    if (static_cast<std::size_t>(it->position()) != consumed)
      throw std::invalid_argument("bad Laurent string: " + text);
    std::string c = (*it)[1];
    if (c[0] == '+') c = c.substr(1);
    mpq_class q(c);
    q.canonicalize();
    t.emplace_back(std::stoll((*it)[2]), q);
    consumed += it->length();
  }
  if (consumed != s.size()) throw std::invalid_argument("bad Laurent string: " + text);
  return from_terms(std::move(t));
}

std::ostream& operator<<(std::ostream& os, const Laurent& l) { return os << l.str(); }

// ---- gcd over Z[s] (heuristic gcd with primitive-PRS fallback) ----

namespace {

using ZPolyD = std::vector<mpz_class>;  // dense, index = degree, no leading zeros

void strip(ZPolyD& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

mpz_class content(const ZPolyD& p) {
  mpz_class g = 0;
  for (const auto& c : p) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void make_primitive(ZPolyD& p) {
  strip(p);
  if (p.empty()) return;
  mpz_class g = content(p);
  if (sgn(p.back()) < 0) g = -g;
  if (g != 1)
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// exact division test over Z
bool zdivides(const ZPolyD& b, const ZPolyD& a) {
  if (a.empty()) return true;
  if (b.size() > a.size()) return false;
  ZPolyD r = a;
  const std::size_t db = b.size() - 1;
  mpz_class c;
  for (std::size_t k = r.size(); k-- > db;) {
    if (sgn(r[k]) == 0) continue;
    if (!mpz_divisible_p(r[k].get_mpz_t(), b.back().get_mpz_t())) return false;
    mpz_divexact(c.get_mpz_t(), r[k].get_mpz_t(), b.back().get_mpz_t());
    for (std::size_t j = 0; j <= db; ++j) r[k - db + j] -= c * b[j];
  }
  for (const auto& x : r)
    if (sgn(x) != 0) return false;
  return true;
}

mpz_class eval_at(const ZPolyD& p, const mpz_class& x) {
  mpz_class acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

mpz_class maxnorm(const ZPolyD& p) {
  mpz_class m = 0;
  for (const auto& c : p)
    if (abs(c) > m) m = abs(c);
  return m;
}

ZPolyD prs_gcd(ZPolyD a, ZPolyD b) {
  make_primitive(a);
  make_primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    // pseudo-remainder of a by b
    ZPolyD r = a;
    const std::size_t db = b.size() - 1;
    const mpz_class lb = b.back();
    while (!r.empty() && r.size() >= b.size()) {
      mpz_class lr = r.back();
      std::size_t sh = r.size() - b.size();
      for (auto& c : r) c *= lb;
      for (std::size_t j = 0; j <= db; ++j) r[sh + j] -= lr * b[j];
      strip(r);
    }
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  make_primitive(a);
  return a;
}

ZPolyD heu_gcd(const ZPolyD& a, const ZPolyD& b) {
  mpz_class xi = 2 * std::min(maxnorm(a), maxnorm(b)) + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * std::max(a.size(), b.size()) > 200000) break;
    mpz_class ga = eval_at(a, xi), gb = eval_at(b, xi), h;
    mpz_gcd(h.get_mpz_t(), ga.get_mpz_t(), gb.get_mpz_t());
    ZPolyD g;
    mpz_class half = xi / 2;
    while (sgn(h) != 0) {
      mpz_class digit;
      mpz_fdiv_r(digit.get_mpz_t(), h.get_mpz_t(), xi.get_mpz_t());
      if (digit > half) digit -= xi;
      g.push_back(digit);
      h = (h - digit) / xi;
    }
    make_primitive(g);
    if (!g.empty() && zdivides(g, a) && zdivides(g, b)) return g;
    xi = xi * 73794 / 27011;
  }
  return prs_gcd(a, b);
}

ZPolyD to_zpoly(const Laurent& l) {
  // clear denominators, shift to degree 0
  mpz_class den = 1;
  for (const auto& x : l.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.second.get_den_mpz_t());
  ZPolyD p(static_cast<std::size_t>(l.high() - l.low()) + 1);
  for (const auto& x : l.terms()) p[x.first - l.low()] = x.second.get_num() * (den / x.second.get_den());
  make_primitive(p);
  return p;
}

Laurent from_zpoly(const ZPolyD& p) {
  std::vector<Laurent::Term> t;
  for (std::size_t k = 0; k < p.size(); ++k)
    if (sgn(p[k]) != 0) t.emplace_back(Exp(k), mpq_class(p[k]));
  return Laurent::from_terms(std::move(t));
}

}  // namespace

Laurent primitive_part(const Laurent& a, mpq_class* unit_coeff, Exp* unit_shift) {
  if (a.is_zero()) throw std::domain_error("primitive part of zero");
  Laurent p = from_zpoly(to_zpoly(a));
  if (unit_coeff) *unit_coeff = a.terms().back().second / p.terms().back().second;
  if (unit_shift) *unit_shift = a.low();
  return p;
}

Laurent gcd(const Laurent& a, const Laurent& b) {
  if (a.is_zero() && b.is_zero()) return Laurent(0);
  if (a.is_zero()) return primitive_part(b);
  if (b.is_zero()) return primitive_part(a);
  if (a.is_monomial() || b.is_monomial()) return Laurent(1);
  ZPolyD pa = to_zpoly(a), pb = to_zpoly(b);
  if (pa.size() == 1 || pb.size() == 1) return Laurent(1);
  if (pa == pb) return from_zpoly(pa);
  ZPolyD g = heu_gcd(pa, pb);
  return from_zpoly(g);
}

}  // namespace twq
