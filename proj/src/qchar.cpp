#include "twq/qchar.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace twq {

namespace {

struct Term {
  int node;
  int e;
  int k;
  int exp;
};
using Row = std::vector<Term>;

// literal tables for the two exceptional types, in reference order
const char* const kE6Table[27] = {
    "1_{a}",
    "1_{aq^2}^{-1} 2_{aq}",
    "2_{aq^3}^{-1} 3_{aq^2}",
    "2_{-aq^3} 3_{aq^4}^{-1} 4_{aq^3}",
    "2_{-aq^3} 4_{aq^5}^{-1}",
    "1_{-aq^4} 2_{-aq^5}^{-1} 4_{aq^3}",
    "1_{-aq^6}^{-1} 4_{aq^3}",
    "1_{-aq^4} 2_{-aq^5}^{-1} 3_{aq^4} 4_{aq^5}^{-1}",
    "1_{-aq^6}^{-1} 3_{aq^4} 4_{aq^5}^{-1}",
    "1_{-aq^4} 2_{aq^5} 3_{aq^6}^{-1}",
    "1_{-aq^6}^{-1} 2_{aq^5} 2_{-aq^5} 3_{aq^6}^{-1}",
    "1_{aq^6} 1_{-aq^4} 2_{aq^7}^{-1}",
    "1_{-aq^6}^{-1} 1_{aq^6} 2_{aq^7}^{-1} 2_{-aq^5}",
    "1_{aq^8}^{-1} 1_{-aq^4}",
    "2_{-aq^7}^{-1} 2_{aq^5}",
    "1_{aq^8}^{-1} 1_{-aq^6}^{-1} 2_{-aq^5}",
    "1_{aq^6} 2_{aq^7}^{-1} 2_{-aq^7}^{-1} 3_{aq^6}",
    "1_{aq^8}^{-1} 2_{-aq^7}^{-1} 3_{aq^6}",
    "1_{aq^6} 3_{aq^8}^{-1} 4_{aq^7}",
    "1_{aq^8}^{-1} 2_{aq^7} 3_{aq^8}^{-1} 4_{aq^7}",
    "1_{aq^6} 4_{aq^9}^{-1}",
    "1_{aq^8}^{-1} 2_{aq^7} 4_{aq^9}^{-1}",
    "2_{aq^9}^{-1} 4_{aq^7}",
    "2_{aq^9}^{-1} 3_{aq^8} 4_{aq^9}^{-1}",
    "2_{-aq^9} 3_{aq^{10}}^{-1}",
    "1_{-aq^{10}} 2_{-aq^{11}}^{-1}",
    "1_{-aq^{12}}^{-1}",
};

const char* const kD4t3Table[8] = {
    "1_{a}",
    "1_{aq^2}^{-1} 2_{aq}",
    "1_{jaq^2} 1_{j^2aq^2} 2_{aq^3}^{-1}",
    "1_{j^2aq^4}^{-1} 1_{jaq^2}",
    "1_{jaq^4}^{-1} 1_{j^2aq^2}",
    "1_{jaq^4}^{-1} 1_{j^2aq^4}^{-1} 2_{aq^3}",
    "1_{aq^4} 2_{aq^5}^{-1}",
    "1_{aq^6}^{-1}",
};

// the A and D families follow the "..." patterns of the reference tables; boundary terms are explicit
std::vector<Row> family_rows(const AlgebraType& t) {
  const int r = t.rank();
  std::vector<Row> rows;
  rows.push_back({{1, 0, 0, 1}});
  switch (t.family()) {
    case Family::A2t2odd:
      for (int i = 2; i <= r; ++i) rows.push_back({{i - 1, 0, i, -1}, {i, 0, i - 1, 1}});
      rows.push_back({{r - 1, 3, r, 1}, {r, 0, r + 1, -1}});
      for (int j = r - 2; j >= 1; --j) rows.push_back({{j, 3, 2 * r - 1 - j, 1}, {j + 1, 3, 2 * r - j, -1}});
      rows.push_back({{1, 3, 2 * r, -1}});
      break;
    case Family::A2t2:
    case Family::A2t2even:
      for (int i = 2; i <= r; ++i) rows.push_back({{i - 1, 0, i, -1}, {i, 0, i - 1, 1}});
      rows.push_back({{r, 0, r + 1, -1}, {r, 3, r, 1}});
      for (int j = r - 1; j >= 1; --j) rows.push_back({{j, 3, 2 * r - j, 1}, {j + 1, 3, 2 * r + 1 - j, -1}});
      rows.push_back({{1, 3, 2 * r + 1, -1}});
      break;
    case Family::Dt2:
      for (int i = 2; i <= r - 1; ++i) rows.push_back({{i - 1, 0, i, -1}, {i, 0, i - 1, 1}});
      rows.push_back({{r - 1, 0, r, -1}, {r, 0, r - 1, 1}, {r, 3, r - 1, 1}});
      rows.push_back({{r, 3, r + 1, -1}, {r, 0, r - 1, 1}});
      rows.push_back({{r, 0, r + 1, -1}, {r, 3, r - 1, 1}});
      rows.push_back({{r - 1, 0, r, 1}, {r, 0, r + 1, -1}, {r, 3, r + 1, -1}});
      for (int j = r - 2; j >= 1; --j) rows.push_back({{j, 0, 2 * r - 1 - j, 1}, {j + 1, 0, 2 * r - j, -1}});
      rows.push_back({{1, 0, 2 * r, -1}});
      break;
    default:
      break;
  }
  return rows;
}

std::string pole_prefix(int e, bool pm) {
  static const char* tab[6] = {"", "-j^2", "j", "-", "j^2", "-j"};
  if (pm && (e == 0 || e == 3)) return "\xC2\xB1";
  return tab[e];
}

// K-weight of a label coefficient c at node i
std::vector<int> label_weight(const AlgebraType& t, int c, int node) {
  std::vector<int> w(t.rank(), 0);
  if (node == 0) return w;
  if (t.family() == Family::A2t2even && node == t.rank()) c *= 2;
  w[node - 1] = c;
  return w;
}

// "2w1" or "w0" with multiplicity prefix "2L" handled by caller
IrrPart part(const AlgebraType& t, int mult, const std::string& label) {
  std::size_t p = label.find('w');
  int c = p == 0 ? 1 : std::stoi(label.substr(0, p));
  int node = std::stoi(label.substr(p + 1));
  return {mult, label_weight(t, c, node), label};
}

std::vector<IrrPart> parts(const AlgebraType& t, const std::string& spec) {
  // "2w1+w2+2*w1+w0"
  std::vector<IrrPart> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, '+')) {
    int mult = 1;
    auto star = tok.find('*');
    if (star != std::string::npos) {
      mult = std::stoi(tok.substr(0, star));
      tok = tok.substr(star + 1);
    }
    out.push_back(part(t, mult, tok));
  }
  return out;
}

}  // namespace

QCharacter fundamental_character(const AlgebraType& t, SpectralPoint a) {
  QCharacter c(t);
  if (t.family() == Family::E6t2) {
    for (const char* s : kE6Table) c.add(YMonomial::parse(t, s).shifted(a));
  } else if (t.family() == Family::D4t3) {
    for (const char* s : kD4t3Table) c.add(YMonomial::parse(t, s).shifted(a));
  } else {
    for (const auto& row : family_rows(t)) {
      YMonomial m(t);
      for (const auto& x : row) m = m * YMonomial::single(t, x.node, a * SpectralPoint(x.e, x.k), x.exp);
      c.add(m);
    }
  }
  return c;
}

int weight_zero_count(const QCharacter& c) {
  int n = 0;
  for (const auto& [m, mult] : c.terms()) {
    auto w = weight_of(m);
    if (std::all_of(w.begin(), w.end(), [](int x) { return x == 0; })) n += mult;
  }
  return n;
}

std::vector<DominantTerm> dominant_monomials_of_product(const AlgebraType& t, SpectralPoint ratio) {
  const QCharacter ca = fundamental_character(t);
  const QCharacter cb = fundamental_character(t, ratio.inverse());
  std::map<YMonomial, int> dom;
  for (const auto& [x, cx] : ca.terms())
    for (const auto& [y, cy] : cb.terms()) {
      YMonomial p = x * y;
      if (is_dominant(p)) dom[p] += cx * cy;
    }
  std::vector<DominantTerm> out;
  for (auto& [m, c] : dom) out.push_back({m, c});
  return out;
}

namespace {

// finds c with ratio == A_{i,c}; candidate c comes from positive i-factors at c q
bool is_lroot(const YMonomial& ratio, int i, const AlgebraType& t, SpectralPoint* c_out) {
  for (const auto& f : ratio.factors()) {
    if (f.node != i || f.exp <= 0) continue;
    SpectralPoint base = f.p * SpectralPoint(0, -1);
    // for sigma-fixed nodes the stored point is only a representative of its orbit
    for (int s = 0; s < 6; s += (t.sigma_fixed(i) ? t.omega_e() : 6)) {
      SpectralPoint c = base * SpectralPoint(s, 0);
      if (simple_lroot(t, i, c) == ratio) {
        if (c_out) *c_out = c;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

bool qchar_arg_check(const QCharacter& chi, const YMonomial& m, int i, SpectralPoint b) {
  const AlgebraType& t = chi.type();
  if (chi.multiplicity(m) != 1) throw std::invalid_argument("qchar_arg_check: m must have multiplicity one");
  for (const auto& f : m.factors())
    if (f.node == i && f.exp < 0) throw std::invalid_argument("qchar_arg_check: m is not i-dominant");
  const YMonomial A = simple_lroot(t, i, b);
  const YMonomial m_minus = m * A.inverse();
  // (1)
  if (m.exponent(i, b * SpectralPoint(0, -1)) > m.exponent(i, b * SpectralPoint(0, 1))) return false;
  // (2) and (3)
  for (const auto& [x, cx] : chi.terms()) {
    if (is_lroot(x * m.inverse(), i, t, nullptr)) return false;
    YMonomial ratio = x * m_minus.inverse();
    if (ratio == A) continue;
    for (int j = 1; j <= t.rank(); ++j)
      if (is_lroot(ratio, j, t, nullptr)) return false;
  }
  // (4)
  return chi.multiplicity(m_minus) <= 1;
}

long dimension(const AlgebraType& t, const std::vector<IrrPart>& ps) {
  long d = 0;
  for (const auto& p : ps) d += p.mult * t.weyl_dimension(p.kweight);
  return d;
}

std::string render_parts(const std::vector<IrrPart>& ps) {
  std::string out;
  for (const auto& p : ps) {
    if (!out.empty()) out += " + ";
    if (p.mult != 1) out += std::to_string(p.mult);
    out += "L_{" + p.label + "}";
  }
  return out;
}

std::string PoleRecord::pole_str() const {
  std::string s = pole_prefix(pole.e, sign_orbit);
  if (pole.k == 0) return s.empty() ? "1" : s + "1";
  s += "q";
  if (pole.k != 1) s += "^" + (pole.k >= 2 && pole.k <= 9 ? std::to_string(pole.k) : "{" + std::to_string(pole.k) + "}");
  return s;
}

int scan_bound(const AlgebraType& t) { return std::max(2 * t.rank() + 2, 14); }

PoleTable reference_pole_table(const AlgebraType& t) {
  const int r = t.rank();
  PoleTable tab{t, {}};
  auto add = [&](SpectralPoint z, bool pm, const std::string& quot, const std::string& sub_parts,
                 const std::string& quot_parts) {
    PoleRecord rec(t);
    rec.pole = z;
    rec.sign_orbit = pm;
    rec.sub = YMonomial::single(t, 1, {}) * YMonomial::single(t, 1, z.inverse());
    rec.quot = YMonomial::parse(t, quot);
    rec.sub_parts = parts(t, sub_parts);
    rec.quot_parts = parts(t, quot_parts);
    rec.kernel_dim = dimension(t, rec.quot_parts);
    tab.rows.push_back(rec);
  };
  switch (t.family()) {
    case Family::A2t2odd:
      add({0, 2}, false, "2_{aq^{-1}}", "2w1", "w2+w0");
      add({3, 2 * r}, false, "1", "2w1+w2", "w0");
      break;
    case Family::A2t2:
      add({0, 2}, false, "1_{-aq^{-1}}", "4w1+w0", "2w1");
      add({3, 3}, false, "1", "4w1+2w1", "w0");
      break;
    case Family::A2t2even:
      add({0, 2}, false, "2_{aq^{-1}}", "2w1+w0", "w2");
      add({3, 2 * r + 1}, false, "1", "2w1+w2", "w0");
      break;
    case Family::Dt2:
      if (r == 2) {
        add({0, 2}, true, "2_{aq^{-1}} 2_{-aq^{-1}}", "2w1+w1+w0", "2w2+w1+w0");
        add({0, 4}, true, "1", "2w1+2w2+2*w1+w0", "w0");
      } else {
        add({0, 2}, true, "2_{aq^{-1}}", "2w1+w1+w0", "w2+w1+w0");
        add({0, 2 * r}, true, "1", "2w1+w2+2*w1+w0", "w0");
      }
      break;
    case Family::E6t2:
      add({0, 2}, false, "2_{aq^{-1}}", "2w1+w1+w0", "w2+w4+2*w1+w0");
      add({3, 6}, false, "4_{a^2q^{-6}}", "2w1+w2+2*w1+w0", "w4+w1+w0");
      add({0, 8}, false, "1_{-aq^{-4}}", "2w1+w2+w4+2*w1+w0", "w1+w0");
      add({3, 12}, false, "1", "2w1+w2+w4+3*w1+w0", "w0");
      break;
    case Family::D4t3:
      // rows keyed by z0 = a/b computed from the submodule monomial 1_a 1_b
      add({0, 2}, false, "2_{a^3q^{-3}}", "2w1+w1+w0", "w2+2*w1+w0");
      add({4, 4}, false, "1_{j^2aq^{-2}}", "2w1+w2+2*w1+w0", "w1+w0");
      add({2, 4}, false, "1_{jaq^{-2}}", "2w1+w2+2*w1+w0", "w1+w0");
      add({0, 6}, false, "1", "2w1+w2+3*w1+w0", "w0");
      break;
  }
  return tab;
}

PoleTable derive_pole_table(const AlgebraType& t) {
  const PoleTable ref = reference_pole_table(t);
  const bool pm = t.sigma_fixed(1);  // 1_b = 1_{omega b}: z and omega z are the same point
  const int K = scan_bound(t);
  PoleTable tab{t, {}};
  for (int k = 1; k <= K; ++k) {
    for (int e = 0; e < 6; ++e) {
      if (pm && e >= t.omega_e()) continue;
      SpectralPoint z(e, k);
      auto dom = dominant_monomials_of_product(t, z);
      YMonomial sub = YMonomial::single(t, 1, {}) * YMonomial::single(t, 1, z.inverse());
      for (const auto& d : dom) {
        if (d.m == sub) continue;
        PoleRecord rec(t);
        rec.pole = z;
        rec.sign_orbit = pm;
        rec.sub = sub;
        rec.quot = d.m;
        rec.quot_mult = d.mult;
        for (const auto& rr : ref.rows)
          if (rr.pole == z && rr.quot == d.m) {
            rec.sub_parts = rr.sub_parts;
            rec.quot_parts = rr.quot_parts;
            rec.kernel_dim = rr.kernel_dim;
          }
        // elimination certificate: m = quot * A_{i,c} inside the product
        if (d.mult == 1) {
          QCharacter prod = fundamental_character(t) * fundamental_character(t, z.inverse());
          for (const auto& [x, cx] : prod.terms()) {
            if (cx != 1 || rec.certified) continue;
            YMonomial ratio = x * d.m.inverse();
            for (int i = 1; i <= t.rank() && !rec.certified; ++i) {
              SpectralPoint c;
              if (!is_lroot(ratio, i, t, &c)) continue;
              bool idom = true;
              for (const auto& f : x.factors()) idom = idom && !(f.node == i && f.exp < 0);
              if (idom && qchar_arg_check(prod, x, i, c)) rec.certified = true;
            }
          }
        }
        tab.rows.push_back(rec);
      }
    }
  }
  return tab;
}

bool same_table(const PoleTable& a, const PoleTable& b, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (a.rows.size() != b.rows.size())
    return fail("row count " + std::to_string(a.rows.size()) + " vs " + std::to_string(b.rows.size()));
  for (const auto& x : a.rows) {
    auto it = std::find_if(b.rows.begin(), b.rows.end(), [&](const PoleRecord& y) { return y.pole == x.pole; });
    if (it == b.rows.end()) return fail("pole " + x.pole_str() + " missing");
    if (!(it->sub == x.sub)) return fail("submodule differs at " + x.pole_str());
    if (!(it->quot == x.quot)) return fail("quotient differs at " + x.pole_str() + ": " + x.quot.str(true) + " vs " + it->quot.str(true));
    if (!(it->sub_parts == x.sub_parts) || !(it->quot_parts == x.quot_parts))
      return fail("decomposition differs at " + x.pole_str());
    if (it->sign_orbit != x.sign_orbit) return fail("sign orbit differs at " + x.pole_str());
  }
  return true;
}

std::string PoleTable::to_text() const {
  std::ostringstream os;
  os << "# poles of R(z) for " << type.display() << " (r=" << type.rank() << ")\n";
  os << "pole | submodule | quotient | ker R(1/z0)\n";
  // b^m labels are used for the exceptional types only
  const bool pf = type.family() == Family::E6t2 || type.family() == Family::D4t3;
  for (const auto& r : rows) {
    os << r.pole_str() << " | L(" << r.sub.str() << ") = " << render_parts(r.sub_parts) << " | L("
       << r.quot.str(pf) << ") = " << render_parts(r.quot_parts) << " | " << r.kernel_dim << "\n";
  }
  return os.str();
}

std::string PoleTable::to_json() const {
  nlohmann::ordered_json j;
  j["schema"] = "twq.poles";
  j["version"] = 1;
  j["type"] = type.tag();
  j["r"] = type.rank();
  j["rows"] = nlohmann::ordered_json::array();
  auto jp = [](const std::vector<IrrPart>& ps) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const auto& p : ps) a.push_back({{"mult", p.mult}, {"label", p.label}, {"kweight", p.kweight}});
    return a;
  };
  for (const auto& r : rows) {
    nlohmann::ordered_json x;
    x["pole"] = r.pole_str();
    x["e"] = r.pole.e;
    x["k"] = r.pole.k;
    x["sign_orbit"] = r.sign_orbit;
    x["submodule"] = r.sub.str();
    x["submodule_parts"] = jp(r.sub_parts);
    x["quotient"] = r.quot.str(type.family() == Family::E6t2 || type.family() == Family::D4t3);
    x["quotient_parts"] = jp(r.quot_parts);
    x["quotient_multiplicity"] = r.quot_mult;
    x["kernel_dim"] = r.kernel_dim;
    x["certified"] = r.certified;
    j["rows"].push_back(x);
  }
  return j.dump();
}

}  // namespace twq
