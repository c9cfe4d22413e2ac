#include "twq/rep.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace twq {

namespace {

#include "e6t2_graph.inc"

struct RawRep {
  std::vector<std::tuple<int, int, int, Scalar>> F;  // color, from, to, coeff (1-based)
  std::vector<Exp> K0;
  std::vector<std::tuple<int, int, Scalar>> E0;      // E_0(1) v_from = coeff v_to
  std::vector<int> trivial;                          // 1-based
  int dim = 0;
};

RawRep raw_family(const AlgebraType& t) {
  RawRep R;
  const int r = t.rank();
  const Scalar one(1);
  auto edge = [&](int i, int a, int b, const Scalar& c = Scalar(1)) { R.F.emplace_back(i, a, b, c); };
  switch (t.family()) {
    case Family::A2t2: {
      const Scalar h = Scalar::sqrt_atom(Atom::H2);
      R.dim = 3;
      edge(1, 1, 2, h);
      edge(1, 2, 3, h);
      R.K0 = {-4, 0, 4};
      R.E0 = {{1, 3, one}};
      break;
    }
    case Family::A2t2odd: {
      R.dim = 2 * r;
      for (int i = 1; i <= r; ++i) {
        edge(i, i, i + 1);
        if (i < r) edge(i, 2 * r - i, 2 * r + 1 - i);
      }
      R.K0.assign(R.dim, 0);
      R.K0[0] = R.K0[1] = -2;
      R.K0[R.dim - 2] = R.K0[R.dim - 1] = 2;
      R.E0 = {{1, 2 * r - 1, one}, {2, 2 * r, one}};
      break;
    }
    case Family::A2t2even:
    case Family::Dt2: {
      const bool d_type = t.family() == Family::Dt2;
      const Scalar h = Scalar::sqrt_atom(d_type ? Atom::B2 : Atom::H2);
      R.dim = d_type ? 2 * r + 2 : 2 * r + 1;
      for (int i = 1; i < r; ++i) {
        edge(i, i, i + 1);
        edge(i, 2 * r + 1 - i, 2 * r + 2 - i);
      }
      edge(r, r, r + 1, h);
      edge(r, r + 1, r + 2, h);
      R.K0.assign(R.dim, 0);
      R.K0[0] = -4;
      R.K0[2 * r] = 4;
      if (d_type) {
        R.E0 = {{1, 2 * r + 2, h}, {2 * r + 2, 2 * r + 1, h}};
        R.trivial = {2 * r + 2};
      } else {
        R.E0 = {{1, 2 * r + 1, one}};
      }
      break;
    }
    case Family::D4t3: {
      const Scalar r2 = Scalar::sqrt_atom(Atom::B2), r3 = Scalar::sqrt_atom(Atom::B3);
      R.dim = 8;
      edge(1, 1, 2);
      edge(1, 6, 7);
      edge(2, 2, 3);
      edge(2, 5, 6);
      edge(1, 3, 4, r2);
      edge(1, 4, 5, r2);
      R.K0 = {-4, -2, -2, 0, 2, 2, 4, 0};
      const Scalar a = r2.inverse(), b = r3 / r2;
      R.E0 = {{1, 4, a}, {4, 7, a}, {1, 8, b}, {8, 7, b}, {2, 5, one}, {3, 6, one}};
      R.trivial = {8};
      break;
    }
    case Family::E6t2: {
      GraphData g = parse_graph(e6t2_graph_text());
      if (g.type_tag != "E6t2") throw ConstructionError("E6t2 graph file has type " + g.type_tag);
      R.dim = g.dim;
      R.F = g.F;
      R.K0 = g.K0;
      R.E0 = g.E0;
      R.trivial = g.trivial;
      break;
    }
  }
  return R;
}

std::vector<int> alpha(const AlgebraType& t, int i) {
  std::vector<int> a(t.rank());
  for (int j = 0; j < t.rank(); ++j) a[j] = t.cartan()[j][i - 1];
  return a;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Scalar coeff_product(const std::string& text) {
  Scalar acc(1);
  std::stringstream ss(text);
  std::string f;
  while (std::getline(ss, f, '*')) {
    f = trim(f);
    if (f.rfind("sqrt[", 0) == 0 && f.back() == ']') {
      std::string tag = f.substr(5, f.size() - 6);
      bool found = false;
      for (int a = 0; a < kAtomCount; ++a)
        if (tag == atom_tag(static_cast<Atom>(a))) {
          acc *= Scalar::sqrt_atom(static_cast<Atom>(a));
          found = true;
        }
      if (!found) throw ConstructionError("unknown radical atom: " + tag);
    } else {
      try {
        std::size_t pos = 0;
        long c = std::stol(f, &pos);
        if (pos != f.size()) throw std::invalid_argument(f);
        acc *= Scalar(c);
      } catch (const std::exception&) {
        throw ConstructionError("bad coefficient factor: " + f);
      }
    }
  }
  return acc;
}

Laurent qbinomial(long n, long k, long twice_d) {
  Laurent num(1), den(1);
  for (long m = 1; m <= k; ++m) {
    num *= bracket(n - k + m, twice_d);
    den *= bracket(m, twice_d);
  }
  return num.divexact(den);
}

ScalarMatrix power(const ScalarMatrix& m, long n) {
  ScalarMatrix p = ScalarMatrix::identity(m.rows(), Scalar(1));
  for (long k = 0; k < n; ++k) p = p * m;
  return p;
}

}  // namespace

bool Representation::weight_zero(int v) const {
  for (int x : weight[v])
    if (x != 0) return false;
  return true;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

Scalar parse_radical_coeff(const std::string& text) {
  const std::string s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return coeff_product(s);
  Scalar den = coeff_product(s.substr(slash + 1));
  if (den.is_zero()) throw ConstructionError("zero denominator in coefficient " + text);
  return coeff_product(s.substr(0, slash)) / den;
}

GraphData parse_graph(const std::string& text) {
  GraphData g;
  std::size_t pos = 0, body_end = std::string::npos;
  std::string declared;
  bool have_format = false;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::size_t next = nl == std::string::npos ? text.size() : nl + 1;
    std::string line = trim(text.substr(pos, next - pos));
    if (line.empty() || line[0] == '#') {
      pos = next;
      continue;
    }
    std::stringstream ss(line);
    std::string key;
    ss >> key;
    if (body_end != std::string::npos) throw ConstructionError("graph file: content after checksum");
    if (key == "format") {
      std::string name;
      int version = 0;
      ss >> name >> version;
      if (name != "twq-graph" || version != 1) throw ConstructionError("graph file: unsupported format " + line);
      have_format = true;
    } else if (key == "type") {
      ss >> g.type_tag;
    } else if (key == "dim") {
      ss >> g.dim;
    } else if (key == "trivial") {
      int v;
      while (ss >> v) g.trivial.push_back(v);
    } else if (key == "F") {
      int i, a, b;
      std::string c;
      if (!(ss >> i >> a >> b >> c)) throw ConstructionError("graph file: bad F line: " + line);
      g.F.emplace_back(i, a, b, parse_radical_coeff(c));
    } else if (key == "K0") {
      Exp k;
      while (ss >> k) g.K0.push_back(k);
    } else if (key == "E0") {
      int a, b;
      std::string c;
      if (!(ss >> a >> b >> c)) throw ConstructionError("graph file: bad E0 line: " + line);
      g.E0.emplace_back(a, b, parse_radical_coeff(c));
    } else if (key == "checksum") {
      std::string algo;
      ss >> algo >> declared;
      if (algo != "fnv1a64") throw ConstructionError("graph file: unknown checksum " + algo);
      body_end = pos;
    } else {
      throw ConstructionError("graph file: unknown record " + key);
    }
    pos = next;
  }
  if (!have_format) throw ConstructionError("graph file: missing format line");
  if (body_end == std::string::npos) throw ConstructionError("graph file: missing checksum");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(text.substr(0, body_end))));
  if (declared != buf) throw ConstructionError("graph file: checksum mismatch (file " + declared + ", computed " + buf + ")");
  if (g.dim <= 0 || static_cast<int>(g.K0.size()) != g.dim) throw ConstructionError("graph file: K0 length differs from dim");
  auto in_range = [&](int v) { return v >= 1 && v <= g.dim; };
  for (const auto& [i, a, b, c] : g.F)
    if (!in_range(a) || !in_range(b)) throw ConstructionError("graph file: F index out of range");
  for (const auto& [a, b, c] : g.E0)
    if (!in_range(a) || !in_range(b)) throw ConstructionError("graph file: E0 index out of range");
  return g;
}

const std::string& e6t2_graph_text() {
  static const std::string text(kE6t2Graph);
  return text;
}

Representation build_rep(const AlgebraType& t) {
  RawRep raw = raw_family(t);
  const int n = t.rank(), d = raw.dim;
  if (d != t.dim()) throw ConstructionError("module dimension " + std::to_string(d) + " differs from " + std::to_string(t.dim()));
  Representation rep{t, d, {}, {}, {}, {}, {}, {}};
  rep.F.assign(n, ScalarMatrix(d, d));
  for (const auto& [i, a, b, c] : raw.F) {
    if (i < 1 || i > n) throw ConstructionError("edge colour out of range");
    rep.F[i - 1].add(b - 1, a - 1, c);
  }
  for (const auto& f : rep.F) rep.E.push_back(f.transpose());
  rep.E0 = ScalarMatrix(d, d);
  for (const auto& [a, b, c] : raw.E0) rep.E0.add(b - 1, a - 1, c);
  for (int v : raw.trivial) rep.trivial.push_back(v - 1);

  // weights by propagation along F edges from v_1 and the trivial vectors
  std::vector<std::vector<int>> w(d);
  std::vector<bool> known(d, false);
  w[0].assign(n, 0);
  w[0][0] = t.half_weight_node() == 1 ? 2 : 1;
  known[0] = true;
  for (int v : rep.trivial) {
    w[v].assign(n, 0);
    known[v] = true;
  }
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& [i, a, b, c] : raw.F) {
      auto al = alpha(t, i);
      if (known[a - 1] && !known[b - 1]) {
        w[b - 1] = w[a - 1];
        for (int j = 0; j < n; ++j) w[b - 1][j] -= al[j];
        known[b - 1] = grew = true;
      } else if (known[b - 1] && !known[a - 1]) {
        w[a - 1] = w[b - 1];
        for (int j = 0; j < n; ++j) w[a - 1][j] += al[j];
        known[a - 1] = grew = true;
      }
    }
  }
  for (int v = 0; v < d; ++v)
    if (!known[v]) throw ConstructionError("basis vector v" + std::to_string(v + 1) + " is not connected");
  rep.weight = w;
  rep.kexp.assign(n + 1, std::vector<Exp>(d));
  rep.kexp[0] = raw.K0;
  for (int i = 1; i <= n; ++i)
    for (int v = 0; v < d; ++v) rep.kexp[i][v] = Exp(t.twice_d()[i - 1]) * w[v][i - 1];
  for (const auto& row : rep.kexp)
    for (Exp e : row)
      if (e % 2) throw ConstructionError("odd K exponent: K^{1/2} would leave Z[s, 1/s]");
  return rep;
}

ScalarMatrix BarInvolution::matrix() const {
  ScalarMatrix m(static_cast<int>(t.size()), static_cast<int>(t.size()));
  for (std::size_t v = 0; v < t.size(); ++v) m.add(t[v], static_cast<int>(v), Scalar(1));
  return m;
}

BarInvolution build_bar_involution(const Representation& rep) {
  std::map<std::vector<int>, std::vector<int>> by_weight;
  for (int v = 0; v < rep.dim; ++v) by_weight[rep.weight[v]].push_back(v);
  BarInvolution bar;
  bar.t.resize(rep.dim);
  for (int v = 0; v < rep.dim; ++v) {
    if (rep.weight_zero(v)) {
      bar.t[v] = v;
      continue;
    }
    std::vector<int> neg = rep.weight[v];
    for (int& x : neg) x = -x;
    auto it = by_weight.find(neg);
    if (it == by_weight.end() || it->second.size() != 1 || by_weight[rep.weight[v]].size() != 1)
      throw ConstructionError("bar involution: weight of v" + std::to_string(v + 1) + " has no unique opposite");
    bar.t[v] = it->second.front();
  }
  const ScalarMatrix T = bar.matrix();
  for (int j = 1; j <= rep.rank(); ++j)
    if (T * rep.E[j - 1] * T != rep.F[j - 1])
      throw ConstructionError("bar involution: t E_" + std::to_string(j) + " t differs from F_" + std::to_string(j));
  return bar;
}

std::vector<std::vector<Exp>> expected_shift(const AlgebraType& t) {
  const int n = t.rank();
  std::vector<std::vector<Exp>> s(n + 1, std::vector<Exp>(n + 1, 0));
  s[0][0] = 2 * t.twice_d0();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) s[i][j] = Exp(t.twice_d()[i - 1]) * t.cartan()[i - 1][j - 1];
  return s;
}

RelationReport relation_suite(const Representation& rep) {
  RelationReport rr;
  const int n = rep.rank(), d = rep.dim;
  auto fail = [&](bool& flag, const std::string& why) {
    flag = false;
    rr.failures.push_back(why);
  };
  for (int i = 1; i <= n; ++i)
    if (rep.E[i - 1].transpose() != rep.F[i - 1]) fail(rr.transpose, "E_" + std::to_string(i) + "^T != F_" + std::to_string(i));

  for (int i = 1; i <= n; ++i) {
    auto al = alpha(rep.type, i);
    for (int b = 0; b < d; ++b)
      for (const auto& [a, x] : rep.E[i - 1].row(b)) {
        for (int j = 0; j < n; ++j)
          if (rep.weight[b][j] != rep.weight[a][j] + al[j]) {
            fail(rr.grading, "E_" + std::to_string(i) + " does not raise v" + std::to_string(a + 1) + " by alpha");
            break;
          }
      }
  }

  // K-homogeneity of every E_j, shift matrix symmetric and equal to the Cartan data
  rr.shift.assign(n + 1, std::vector<Exp>(n + 1, 0));
  const auto expect = expected_shift(rep.type);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      const ScalarMatrix& Ej = rep.e(j);
      bool first = true;
      for (int b = 0; b < d; ++b)
        for (const auto& [a, x] : Ej.row(b)) {
          Exp c = rep.kexp[i][b] - rep.kexp[i][a];
          if (first) {
            rr.shift[i][j] = c;
            first = false;
          } else if (c != rr.shift[i][j]) {
            fail(rr.k_conjugation, "E_" + std::to_string(j) + " is not K_" + std::to_string(i) + "-homogeneous");
          }
        }
      if (first) fail(rr.k_conjugation, "E_" + std::to_string(j) + " is zero");
    }
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      if (rr.shift[i][j] != rr.shift[j][i]) fail(rr.k_conjugation, "shift matrix not symmetric");
      bool checked = (i > 0 && j > 0) || (i == 0 && j == 0);
      if (checked && rr.shift[i][j] != expect[i][j])
        fail(rr.k_conjugation, "K_" + std::to_string(i) + " E_" + std::to_string(j) + " shift differs from the Cartan data");
      if (i != j && rr.shift[i][j] > 0) fail(rr.k_conjugation, "positive off-diagonal shift");
    }

  // [E_i, F_j] on the concrete matrices, E_0 and F_0 at matched spectral parameter
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      ScalarMatrix Fj = rep.f(j);
      ScalarMatrix c = rep.e(i) * Fj - Fj * rep.e(i);
      ScalarMatrix want(d, d);
      if (i == j) {
        const int tk = rep.twice_d(i);
        for (int v = 0; v < d; ++v) {
          if (rep.kexp[i][v] % tk) {
            fail(rr.ef, "K_" + std::to_string(i) + " eigenvalue is not a power of q_i");
            continue;
          }
          want.add(v, v, Scalar(bracket(long(rep.kexp[i][v] / tk), tk)));
        }
      }
      if (c != want) fail(rr.ef, "[E_" + std::to_string(i) + ", F_" + std::to_string(j) + "] relation");
    }

  // quantum Serre relations for the finite part
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const long m = 1 - rep.type.cartan()[i - 1][j - 1];
      const long tk = rep.twice_d(i);
      for (int lower = 0; lower < 2; ++lower) {
        const ScalarMatrix Ei = lower ? rep.F[i - 1] : rep.E[i - 1];
        const ScalarMatrix Ej = lower ? rep.F[j - 1] : rep.E[j - 1];
        ScalarMatrix sum(d, d);
        for (long k = 0; k <= m; ++k) {
          Scalar c(qbinomial(m, k, tk));
          if (k % 2) c = -c;
          sum = sum + (power(Ei, m - k) * Ej * power(Ei, k)).scaled(c);
        }
        if (!sum.is_zero())
          fail(rr.serre, std::string(lower ? "F" : "E") + "-Serre relation (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  return rr;
}

ScalarMatrix k_half(const Representation& rep, int i, int sign) {
  std::vector<Scalar> diag;
  diag.reserve(rep.dim);
  for (Exp e : rep.kexp[i]) diag.push_back(Scalar::s_pow(sign * e / 2));
  return ScalarMatrix::diagonal(diag);
}

ScalarMatrix coproduct_finite(const Representation& rep, Gen g, int i) {
  if (i < 1 || i > rep.rank()) throw std::invalid_argument("coproduct_finite: node out of range");
  if (g == Gen::K) {
    std::vector<Scalar> diag;
    for (Exp e : rep.kexp[i]) diag.push_back(Scalar::s_pow(e));
    ScalarMatrix K = ScalarMatrix::diagonal(diag);
    return kron(K, K);
  }
  const ScalarMatrix& X = g == Gen::E ? rep.E[i - 1] : rep.F[i - 1];
  return kron(X, k_half(rep, i, 1)) + kron(k_half(rep, i, -1), X);
}

ZMatrix to_z(const ScalarMatrix& m) {
  return m.map([](const Scalar& x) { return ZPoly(x); });
}

ZLaurentMatrix coproduct_action(const Representation& rep, Gen g, int i, int a_deg, int b_deg) {
  if (i < 0 || i > rep.rank()) throw std::invalid_argument("coproduct_action: node out of range");
  if (i > 0 || g == Gen::K) {
    if (i > 0) return {to_z(coproduct_finite(rep, g, i)), 0};
    std::vector<Scalar> diag;
    for (Exp e : rep.kexp[0]) diag.push_back(Scalar::s_pow(e));
    ScalarMatrix K = ScalarMatrix::diagonal(diag);
    return {to_z(kron(K, K)), 0};
  }
  const ScalarMatrix X = g == Gen::E ? rep.E0 : rep.E0.transpose();
  const int da = g == Gen::E ? a_deg : -a_deg;
  const int db = g == Gen::E ? b_deg : -b_deg;
  const int lo = std::min(da, db);
  ZMatrix left = to_z(kron(X, k_half(rep, 0, 1)));
  ZMatrix right = to_z(kron(k_half(rep, 0, -1), X));
  auto shift = [](const ZMatrix& m, int k) { return m.map([k](const ZPoly& p) { return p.shifted(k); }); };
  return {shift(left, da - lo) + shift(right, db - lo), lo};
}

ShapovalovReport shapovalov_gram(const Representation& rep) {
  ShapovalovReport s;
  s.gram = ScalarMatrix::identity(rep.dim, Scalar(1));
  for (int i = 0; i <= rep.rank(); ++i)
    if (rep.e(i).transpose() != rep.f(i)) s.adjoint = false;
  return s;
}

std::vector<std::tuple<int, int, std::string>> export_sparse(const ScalarMatrix& m) {
  std::vector<std::tuple<int, int, std::string>> out;
  for (int r = 0; r < m.rows(); ++r)
    for (const auto& [c, x] : m.row(r)) out.emplace_back(r, c, x.str());
  return out;
}

}  // namespace twq
