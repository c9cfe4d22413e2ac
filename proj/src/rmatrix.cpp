#include "twq/rmatrix.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "json.hpp"
#include "twq/jsonio.hpp"

namespace twq {

namespace {

Scalar qp(Exp k) { return Scalar::q_pow(k); }
Scalar sp(Exp k) { return Scalar::s_pow(k); }
Scalar sign(long k) { return Scalar(k % 2 ? -1 : 1); }
Scalar ratio(const Laurent& a, const Laurent& b) { return Scalar::fraction(a, b); }

ZPoly poly(std::vector<Scalar> c) { return ZPoly(std::move(c)); }
// c0 + c1 z^k
ZPoly binom(const Scalar& c0, const Scalar& c1, int k = 1) { return ZPoly(c0) + ZPoly::z_pow(k, c1); }
ZPoly prod(const std::vector<ZPoly>& f) {
  ZPoly p(Scalar(1));
  for (const auto& x : f) p *= x;
  return p;
}

BlockFunction scalar_block(const std::string& label, const Scalar& pre, const ZPoly& num, std::vector<ZPoly> den) {
  return {label, pre, {{num}}, std::move(den)};
}

}  // namespace

bool ConstantTable::has(const std::string& name) const {
  return std::any_of(values.begin(), values.end(), [&](const auto& p) { return p.first == name; });
}

const Scalar& ConstantTable::at(const std::string& name) const {
  for (const auto& p : values)
    if (p.first == name) return p.second;
  throw std::invalid_argument("no constant named " + name);
}

void ConstantTable::set(const std::string& name, const Scalar& x) {
  for (auto& p : values)
    if (p.first == name) {
      p.second = x;
      return;
    }
  throw std::invalid_argument("no constant named " + name);
}

ConstantTable reference_constants(const AlgebraType& t) {
  ConstantTable c;
  auto B = [](long n, long k = 1) { return bracket(n, 2 * k); };
  auto Bi = [](long n, long k = 1) { return bracket_i(n, 2 * k); };
  switch (t.family()) {
    case Family::Dt2: {
      const long r = t.rank();
      c.values = {{"alpha", Scalar(B(2, 2 * r + 2) - B(2, 2 * r) - B(2, 2 * r - 2))},
                  {"beta", Scalar(B(2) * Bi(2))},
                  {"gamma", Scalar(B(2, 2 * r - 1) * Bi(2, 2 * r + 1))}};
      break;
    }
    case Family::D4t3:
      c.values = {{"alpha", ratio(Bi(2) * Bi(2, 3), B(2))},
                  {"beta", ratio(Bi(2, 3), B(2))},
                  {"gamma", ratio(Bi(2, 3) * B(2, 4), B(2))},
                  {"kappa", ratio(B(2, 2), B(2))},
                  {"zeta", ratio(B(2, 4), B(2))},
                  {"eta", ratio(Bi(2, 3), B(2))},
                  {"rho", ratio(Bi(2, 3) * Bi(3, 2) * B(7), B(2))},
                  {"xi", Scalar(Bi(2) * Bi(2, 3) * B(2, 4))}};
      break;
    case Family::E6t2:
      c.values = {{"alpha", ratio(Bi(2) * (B(3) - B(2, 6)), B(3))},
                  {"beta", ratio(Bi(2) * B(4), B(3))},
                  {"gamma", ratio(Bi(2) * B(2) * B(2, 6) * B(7), B(3))},
                  {"zeta", ratio(Bi(2) * B(2) * B(7), B(3))},
                  {"eta", ratio(Bi(2) * B(4), B(3))},
                  {"rho", ratio(Bi(2) * Bi(3, 3) * B(2, 4) * B(4) * B(13), B(3))},
                  {"xi", Scalar(B(2, 14) - B(2, 12) - B(2, 6) + B(2, 4) - Laurent(2))}};
      break;
    default:
      break;
  }
  return c;
}

ZRational BlockFunction::entry(int a, int b) const {
  return ZRational(num[a][b].scaled(prefactor), prod(den));
}

std::vector<BlockFunction> block_functions(const AlgebraType& t) { return block_functions(t, reference_constants(t)); }

std::vector<BlockFunction> block_functions(const AlgebraType& t, const ConstantTable& c) {
  const int r = t.rank();
  const ZPoly one(Scalar(1));
  const ZPoly z = ZPoly::z();
  const ZPoly pole2 = binom(1, -qp(-2));  // 1 - q^{-2} z
  const ZPoly zero2 = binom(1, -qp(2));   // 1 - q^2 z
  std::vector<BlockFunction> out;
  auto wedge = [&](const std::string& label) { out.push_back(scalar_block(label, -qp(-2), zero2, {pole2})); };
  switch (t.family()) {
    case Family::A2t2odd:
      out.push_back(scalar_block("2w1", 1, one, {}));
      wedge("w2");
      out.push_back(scalar_block("w0", -qp(-2 * r - 2), zero2 * binom(1, qp(2 * r)), {pole2, binom(1, qp(-2 * r))}));
      break;
    case Family::A2t2:
      out.push_back(scalar_block("4w1", 1, one, {}));
      wedge("2w1");
      out.push_back(scalar_block("w0", qp(-3), binom(1, qp(3)), {binom(1, qp(-3))}));
      break;
    case Family::A2t2even:
      out.push_back(scalar_block("2w1", 1, one, {}));
      wedge("w2");
      out.push_back(scalar_block("w0", qp(-2 * r - 1), binom(1, qp(2 * r + 1)), {binom(1, qp(-2 * r - 1))}));
      break;
    case Family::Dt2: {
      const Scalar &al = c.at("alpha"), &be = c.at("beta"), &ga = c.at("gamma");
      const ZPoly p4 = binom(1, -qp(-4), 2), p4r = binom(1, -qp(-4 * r), 2);
      const ZPoly omz2 = binom(1, -1, 2);  // 1 - z^2
      out.push_back(scalar_block("2w1", 1, one, {}));
      out.push_back(scalar_block(r == 2 ? "2w2" : "w2", -qp(-4), binom(1, -qp(4), 2), {p4}));
      out.push_back({"w1", qp(-2), {{z.scaled(be), omz2}, {omz2, z.scaled(be)}}, {p4}});
      const ZPoly d1 = poly({qp(-2 * r), 0, al, 0, qp(2 * r)});
      const ZPoly d2 = poly({qp(2 * r), 0, al, 0, qp(-2 * r)});
      out.push_back({"w0", qp(-2 * r - 2), {{d1, (z * omz2).scaled(be)}, {(z * omz2).scaled(ga), d2}}, {p4, p4r}});
      break;
    }
    case Family::D4t3: {
      const Scalar &al = c.at("alpha"), &be = c.at("beta"), &ga = c.at("gamma"), &ka = c.at("kappa");
      const Scalar &ze = c.at("zeta"), &et = c.at("eta"), &rho = c.at("rho"), &xi = c.at("xi");
      const ZPoly cyc = poly({1, qp(-4), qp(-8)});  // 1 + q^{-4} z + q^{-8} z^2
      const ZPoly omz = binom(1, -1), omz2 = binom(1, -1, 2);
      out.push_back(scalar_block("2w1", 1, one, {}));
      wedge("w2");
      const ZPoly a11 = poly({-qp(-3), -(qp(-2) * al), qp(2) * al, qp(3)});
      const ZPoly off = (z * omz).scaled(be), low = (z * omz).scaled(ga);
      const ZPoly dg = (z * binom(qp(3), qp(-3))).scaled(be);
      const ZPoly sw = omz * poly({qp(3), ka, qp(-3)});
      out.push_back({"w1", qp(-5), {{a11, off, off}, {low, dg, sw}, {low, sw, dg}}, {pole2, cyc}});
      const ZPoly b11 = poly({qp(-6), -(qp(-3) * ze), xi, -(qp(3) * ze), qp(6)});
      const ZPoly b22 = poly({qp(6), -(qp(3) * ze), xi, -(qp(-3) * ze), qp(-6)});
      out.push_back({"w0", qp(-8), {{b11, (z * omz2).scaled(et)}, {(z * omz2).scaled(rho), b22}},
                     {pole2, binom(1, -qp(-6)), cyc}});
      break;
    }
    case Family::E6t2: {
      const Scalar &al = c.at("alpha"), &be = c.at("beta"), &ga = c.at("gamma"), &ze = c.at("zeta");
      const Scalar &et = c.at("eta"), &rho = c.at("rho"), &xi = c.at("xi");
      const ZPoly p6 = binom(1, qp(-6)), p8 = binom(1, -qp(-8)), p12 = binom(1, qp(-12));
      const ZPoly omz = binom(1, -1), omz2 = binom(1, -1, 2);
      out.push_back(scalar_block("2w1", 1, one, {}));
      wedge("w2");
      out.push_back(scalar_block("w4", -qp(-8), zero2 * binom(1, qp(6)), {pole2, p6}));
      const ZPoly a11 = binom(qp(-3), -qp(3)) * poly({qp(-3), al, -qp(3)});
      const ZPoly off = (z * omz).scaled(be), low = (z * omz).scaled(ga);
      const ZPoly dg = (z * binom(qp(6), -qp(-6))).scaled(be);
      const ZPoly sw = omz * poly({qp(6), be, -qp(-6)});
      out.push_back({"w1", qp(-8), {{a11, off, off}, {low, dg, sw}, {low, sw, dg}}, {pole2, p6, p8}});
      const ZPoly b11 = poly({qp(-12), qp(-6) * ze, xi, -(qp(6) * ze), qp(12)});
      const ZPoly b22 = poly({qp(12), -(qp(6) * ze), xi, qp(-6) * ze, qp(-12)});
      out.push_back({"w0", qp(-14), {{b11, (z * omz2).scaled(et)}, {(z * omz2).scaled(rho), b22}}, {pole2, p6, p8, p12}});
      break;
    }
  }
  return out;
}

const char* route_name(Route r) { return r == Route::MatrixUnit ? "matrix-unit" : "projector"; }

ZPoly RCheck::D() const { return prod(den); }

int RCheck::degree() const {
  int k = D().degree();
  for (int i = 0; i < N.rows(); ++i)
    for (const auto& [j, p] : N.row(i)) k = std::max(k, p.degree());
  return k;
}

ZRational RCheck::entry(int i, int j) const {
  const ZPoly* p = N.find(i, j);
  return p ? ZRational(*p, D()) : ZRational();
}

RationalMatrix RCheck::rational() const {
  const ZPoly d = D();
  RationalMatrix m(N.rows(), N.cols());
  for (int i = 0; i < N.rows(); ++i)
    for (const auto& [j, p] : N.row(i)) m.add(i, j, ZRational(p, d));
  return m;
}

// ---------------------------------------------------------------- matrix units

RationalMatrix sl_base_rmatrix(int n) {
  if (n < 2) throw std::invalid_argument("sl_base_rmatrix: n < 2");
  const Scalar q = qp(1), qi = qp(-1);
  const ZPoly den = binom(q, -qi);  // q - q^{-1} z
  const ZRational lower(ZPoly(q - qi), den), upper(ZPoly::z_pow(1, q - qi), den), swap(binom(1, -1), den);
  RationalMatrix m(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int ij = i * n + j;
      if (i == j) {
        m.add(ij, ij, ZRational(1));
        continue;
      }
      m.add(ij, ij, i < j ? upper : lower);
      m.add(ij, j * n + i, swap);  // E_ij (x) E_ji maps v_j (x) v_i to v_i (x) v_j
    }
  return m;
}

namespace {

ZMatrix times_denominator(const RationalMatrix& m, const ZPoly& D) {
  ZMatrix out(m.rows(), m.cols());
  const ZRational d(D);
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& [j, f] : m.row(i)) {
      ZRational g = f * d;
      if (!g.is_polynomial()) throw std::logic_error("matrix-unit entry has a pole outside D(z)");
      out.add(i, j, g.num().scaled(g.den()[0].inverse()));
    }
  return out;
}

}  // namespace

RCheck build_rcheck_matrix_unit(const AlgebraType& t) {
  const Family fam = t.family();
  if (fam != Family::A2t2odd && fam != Family::A2t2 && fam != Family::A2t2even)
    throw std::invalid_argument("matrix-unit form exists only for the A families");
  const int d = t.dim(), r = t.rank();
  const Scalar q = qp(1), qi = qp(-1);
  const Scalar half = Scalar::fraction(Laurent(1), Laurent::s_pow(1) + Laurent::s_pow(-1));  // 1/(s + 1/s)
  RationalMatrix Q(d * d, d * d);
  auto put = [&](int i, int j, const ZRational& c) {  // c E_ij (x) E_{bar i, bar j}, 1-based
    const int bi = d + 1 - i, bj = d + 1 - j;
    Q.add((i - 1) * d + (bi - 1), (j - 1) * d + (bj - 1), c);
  };
  RCheck rc{t, d, Route::MatrixUnit, {}, {}};
  ZRational corr;  // coefficient of Q
  if (fam == Family::A2t2odd) {
    std::vector<Scalar> eps(d + 1);
    for (int i = 1; i <= r; ++i) {
      eps[i] = sign(r + 1 - i) * qp(r + 1 - i);
      eps[2 * r + 1 - i] = -(sign(r + 1 - i) * qp(-(r + 1 - i)));
    }
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) {
        if (i + j < d + 1)
          put(i, j, ZRational(ZPoly::z_pow(1, eps[i] * eps[j] * qp(-r))));
        else if (i + j > d + 1)
          put(i, j, ZRational(-(eps[i] * eps[j] * qp(r))));
        else
          put(i, j, ZRational(binom(sp(2 * r - 1), -sp(-(2 * r - 1))).scaled(half)));
      }
    rc.den = {binom(1, -qp(-2)), binom(1, qp(-2 * r))};
    corr = -ZRational(binom(q - qi, -(q - qi)), binom(q, -qi) * binom(qp(r), qp(-r)));
  } else {
    const int rr = r;  // A2t2 has rank 1
    const Exp h2 = 2 * rr + 1;  // 2h in s-exponents of q^h
    std::vector<Scalar> eps(d + 1);
    eps[rr + 1] = Scalar(1);
    for (int i = 1; i <= rr; ++i) {
      eps[i] = sign(rr + 1 - i) * sp(2 * rr - 2 * i + 1);
      eps[2 * rr + 2 - i] = sign(rr + 1 - i) * sp(-(2 * rr - 2 * i + 1));
    }
    for (int i = 1; i <= d; ++i)
      for (int j = 1; j <= d; ++j) {
        if (i + j < d + 1)
          put(i, j, ZRational(ZPoly::z_pow(1, eps[i] * eps[j] * sp(-h2))));
        else if (i + j > d + 1)
          put(i, j, ZRational(-(eps[i] * eps[j] * sp(h2))));
        else {
          const int k = i == rr + 1 ? rr + 1 : rr;
          put(i, j, ZRational(binom(qp(k), -qp(-k)).scaled(-half)));
        }
      }
    rc.den = {binom(1, -qp(-2)), binom(1, sp(-2 * h2))};
    corr = ZRational(binom(q - qi, -(q - qi)), binom(q, -qi) * binom(sp(h2), sp(-h2)));
  }
  RationalMatrix R = sl_base_rmatrix(d);
  for (int i = 0; i < Q.rows(); ++i)
    for (const auto& [j, c] : Q.row(i)) R.add(i, j, c * corr);
  rc.N = times_denominator(R, rc.D());
  return rc;
}

}  // namespace twq

namespace twq {

// ---------------------------------------------------------------- projector form

std::shared_ptr<const ProjectorData> projector_data(const AlgebraType& t) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const ProjectorData>> cache;
  const std::pair<int, int> key(static_cast<int>(t.family()), t.rank());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto pd = std::make_shared<ProjectorData>(ProjectorData{make_tensor_square(build_rep(t)), {}, {}});
  pd->dec = decompose(pd->ts);
  for (const auto& b : pd->dec.blocks) pd->transport.push_back(transport_operators(pd->ts, b));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, pd).first->second;
}

RCheck assemble_projector_form(const ProjectorData& pd, const std::vector<BlockFunction>& g) {
  const auto& blocks = pd.dec.blocks;
  if (g.size() != blocks.size())
    throw DecompositionError("block function count " + std::to_string(g.size()) + " != block count " +
                             std::to_string(blocks.size()));
  // D is the least common multiple of the block denominators, as a factor multiset
  std::vector<ZPoly> D;
  for (const auto& fn : g) {
    std::vector<ZPoly> seen = D;
    for (const auto& f : fn.den) {
      auto it = std::find(seen.begin(), seen.end(), f);
      if (it != seen.end())
        seen.erase(it);
      else
        D.push_back(f);
    }
  }
  const int dd = pd.ts.d * pd.ts.d;
  RCheck rc{pd.ts.rep.type, pd.ts.d, Route::ProjectorForm, ZMatrix(dd, dd), D};
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const auto& fn = g[k];
    const auto& b = blocks[k];
    if (fn.label != b.label || fn.mult() != b.mult())
      throw DecompositionError("block " + b.label + " does not match block function " + fn.label);
    std::vector<ZPoly> rest = D;
    for (const auto& f : fn.den) rest.erase(std::find(rest.begin(), rest.end(), f));
    const ZPoly cof = prod(rest).scaled(fn.prefactor);
    for (int a = 0; a < b.mult(); ++a)
      for (int c = 0; c < b.mult(); ++c) {
        const ZPoly coeff = fn.num[a][c] * cof;
        if (coeff.is_zero()) continue;
        const ScalarMatrix& th = pd.transport[k].theta[a][c];
        for (int i = 0; i < th.rows(); ++i)
          for (const auto& [j, x] : th.row(i)) rc.N.add(i, j, coeff.scaled(x));
      }
  }
  return rc;
}

RCheck build_rcheck_projector_form(const AlgebraType& t) {
  return assemble_projector_form(*projector_data(t), block_functions(t));
}

CrossValidation cross_validate(const AlgebraType& t) {
  const RCheck mu = build_rcheck_matrix_unit(t);
  const RCheck pf = build_rcheck_projector_form(t);
  CrossValidation cv;
  const ZPoly d1 = mu.D(), d2 = pf.D();
  // N1 / D1 == N2 / D2  <=>  N1 D2 == N2 D1
  for (int i = 0; i < mu.N.rows(); ++i) {
    std::map<int, ZPoly> diff;
    for (const auto& [j, p] : mu.N.row(i)) diff[j] += p * d2;
    for (const auto& [j, p] : pf.N.row(i)) diff[j] -= p * d1;
    for (const auto& [j, p] : diff)
      if (!p.is_zero()) {
        cv.row = i;
        cv.col = j;
        cv.lhs = mu.entry(i, j).str();
        cv.rhs = pf.entry(i, j).str();
        return cv;
      }
  }
  cv.equal = true;
  return cv;
}

// ---------------------------------------------------------------- evaluation

PointMatrix evaluate(const RCheck& rc, const PointField& f, const PointScalar& z0) {
  const PointScalar dz = f.eval(rc.D(), z0);
  if (dz.is_zero()) throw PoleError("R(z) evaluated at a pole: " + z0.str(), Scalar());
  const PointScalar inv = dz.inverse();
  PointMatrix m(rc.N.rows(), rc.N.cols());
  for (int i = 0; i < rc.N.rows(); ++i)
    for (const auto& [j, p] : rc.N.row(i)) m.add(i, j, f.eval(p, z0) * inv);
  return m;
}

SparseMatrix<double> evaluate_float(const RCheck& rc, double q0, double z0) {
  const double s = std::sqrt(q0);
  const ZPoly D = rc.D();
  const double dz = D.eval(s, z0);
  // cancellation down to rounding level means z0 sits on a root of D
  double scale = 0;
  for (int k = 0; k <= D.degree(); ++k) scale += std::fabs(D[k].eval(s) * std::pow(z0, k));
  if (!std::isfinite(dz) || std::fabs(dz) <= 1e-14 * scale) throw PoleError("R(z) evaluated at a pole", Scalar());
  SparseMatrix<double> m(rc.N.rows(), rc.N.cols());
  for (int i = 0; i < rc.N.rows(); ++i)
    for (const auto& [j, p] : rc.N.row(i)) m.add(i, j, p.eval(s, z0) / dz);
  return m;
}

namespace {

// long double evaluation; N and D both vanish to second order near q = 1, z = 1
using LD = long double;

LD eval_ld(const Laurent& l, LD s) {
  LD acc = 0;
  for (const auto& [e, c] : l.terms()) acc += static_cast<LD>(c.get_d()) * std::pow(s, static_cast<LD>(e));
  return acc;
}

LD eval_ld(const Scalar& x, LD s) {
  LD acc = 0;
  for (const auto& [m, l] : x.parts()) {
    LD c = eval_ld(l, s);
    if (m) c *= std::sqrt(eval_ld(radicand_value(m), s));
    acc += c;
  }
  return acc / eval_ld(x.den(), s);
}

LD eval_ld(const ZPoly& p, LD s, LD z) {
  LD acc = 0;
  for (int k = p.degree(); k >= 0; --k) acc = acc * z + (p[k].is_zero() ? 0 : eval_ld(p[k], s));
  return acc;
}

using Cx = std::complex<double>;
using CMat = std::vector<std::vector<Cx>>;

CMat invert(CMat a) {
  const int n = static_cast<int>(a.size());
  CMat inv(n, std::vector<Cx>(n));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int i = c + 1; i < n; ++i)
      if (std::abs(a[i][c]) > std::abs(a[p][c])) p = i;
    if (std::abs(a[p][c]) < 1e-14) throw std::domain_error("limit basis map is singular");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    const Cx piv = a[c][c];
    for (int j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (int i = 0; i < n; ++i) {
      if (i == c || a[i][c] == Cx(0)) continue;
      const Cx f = a[i][c];
      for (int j = 0; j < n; ++j) {
        a[i][j] -= f * a[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

int numerical_rank(CMat a, double tol) {
  const int n = static_cast<int>(a.size());
  int rank = 0;
  std::vector<bool> used(n, false);
  for (int c = 0; c < n && rank < n; ++c) {
    int p = -1;
    for (int i = 0; i < n; ++i)
      if (!used[i] && (p < 0 || std::abs(a[i][c]) > std::abs(a[p][c]))) p = i;
    if (p < 0 || std::abs(a[p][c]) <= tol) continue;
    used[p] = true;
    ++rank;
    for (int i = 0; i < n; ++i) {
      if (used[i] || a[i][c] == Cx(0)) continue;
      const Cx f = a[i][c] / a[p][c];
      for (int j = c; j < n; ++j) a[i][j] -= f * a[p][j];
    }
  }
  return rank;
}

}  // namespace

std::vector<std::vector<std::complex<double>>> limit_basis_map(const AlgebraType& t) {
  const int d = t.dim(), r = t.rank();
  CMat T(d, std::vector<Cx>(d));
  // T(v_src) += c v_dst, 1-based
  auto put = [&](int src, int dst, Cx c = 1.0) { T[dst - 1][src - 1] += c; };
  const Cx I(0, 1);
  switch (t.family()) {
    case Family::Dt2:
      for (int i = 1; i <= r; ++i) put(i, i);
      for (int i = r + 2; i <= 2 * r + 1; ++i) put(i, i + 1);
      put(r + 1, r + 1);
      put(r + 1, r + 2, 0.5);
      {
        const Cx c = r % 2 == 0 ? Cx(1) : I;
        put(2 * r + 2, r + 1, c);
        put(2 * r + 2, r + 2, -c / 2.0);
      }
      break;
    case Family::D4t3:
      for (int i = 1; i <= 3; ++i) put(i, i);
      for (int i = 5; i <= 7; ++i) put(i, i + 1);
      put(4, 4);
      put(4, 5, 0.5);
      put(8, 4, I);
      put(8, 5, -I / 2.0);
      break;
    case Family::E6t2: {
      for (int i = 1; i <= 12; ++i)
        if (i != 7 && i != 8) put(i, i);
      put(7, 8);
      put(8, 7);
      for (int i = 15; i <= 26; ++i)
        if (i != 19 && i != 20) put(i, i + 1);
      put(19, 21);
      put(20, 20);
      const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
      put(13, 13, 1 / r2);
      put(13, 14, 1 / r2);
      put(14, 13, -1 / r6);
      put(14, 14, 1 / r6);
      put(14, 15, 2 / r6);
      put(27, 13, -1 / r3);
      put(27, 14, 1 / r3);
      put(27, 15, -1 / r3);
      break;
    }
    default:
      for (int i = 1; i <= d; ++i) put(i, i);
  }
  return T;
}

LimitReport rational_limit(const RCheck& rc, double u, const std::vector<double>& eps) {
  const int d = rc.d, dd = d * d;
  const CMat T = limit_basis_map(rc.type), Ti = invert(T);
  LimitReport rep;
  rep.u = u;
  rep.eps = eps;
  CMat prev;
  for (double e : eps) {
    const LD q = 1.0L + static_cast<LD>(e), s = std::sqrt(q), z = std::pow(q, 2.0L * static_cast<LD>(u));
    const LD dz = eval_ld(rc.D(), s, z);
    // M = R (T^-1 (x) T^-1)
    CMat M(dd, std::vector<Cx>(dd));
    for (int i = 0; i < dd; ++i)
      for (const auto& [k, p] : rc.N.row(i)) {
        const double x = static_cast<double>(eval_ld(p, s, z) / dz);
        const int k1 = k / d, k2 = k % d;
        for (int c1 = 0; c1 < d; ++c1) {
          const Cx a = Ti[k1][c1];
          if (a == Cx(0)) continue;
          for (int c2 = 0; c2 < d; ++c2)
            if (Ti[k2][c2] != Cx(0)) M[i][c1 * d + c2] += x * a * Ti[k2][c2];
        }
      }
    // L = (T (x) T) M
    CMat L(dd, std::vector<Cx>(dd));
    for (int i1 = 0; i1 < d; ++i1)
      for (int k1 = 0; k1 < d; ++k1) {
        if (T[i1][k1] == Cx(0)) continue;
        for (int i2 = 0; i2 < d; ++i2)
          for (int k2 = 0; k2 < d; ++k2) {
            if (T[i2][k2] == Cx(0)) continue;
            const Cx f = T[i1][k1] * T[i2][k2];
            auto& dst = L[i1 * d + i2];
            const auto& src = M[k1 * d + k2];
            for (int c = 0; c < dd; ++c) dst[c] += f * src[c];
          }
      }
    double dev = 0;
    CMat E(dd, std::vector<Cx>(dd));
    for (int i = 0; i < dd; ++i)
      for (int j = 0; j < dd; ++j) {
        const int ti = i / d, tj = i % d;
        double target = (i == j ? 1.0 : 0.0) - (j == tj * d + ti ? u : 0.0);
        E[i][j] = L[i][j] - target / (1 - u);
        dev = std::max(dev, std::abs(E[i][j]));
      }
    rep.deviation.push_back(dev);
    // only a residual that survives the limit has a meaningful rank; pivots below 1% of it are O(eps) noise
    if (rep.deviation.size() == eps.size() && dev > 1e-2) rep.residual_rank = numerical_rank(std::move(E), 1e-2 * dev);
    if (!prev.empty()) {
      double dr = 0;
      for (int i = 0; i < dd; ++i)
        for (int j = 0; j < dd; ++j) dr = std::max(dr, std::abs(L[i][j] - prev[i][j]));
      rep.drift.push_back(dr);
    }
    prev = std::move(L);
  }
  return rep;
}

// ---------------------------------------------------------------- JSON

std::string rcheck_to_json(const RCheck& rc) {
  Json j;
  j["schema"] = "twq.rmatrix";
  j["version"] = 1;
  j["type"] = rc.type.tag();
  j["r"] = rc.type.rank();
  j["d"] = rc.d;
  j["form"] = route_name(rc.route);
  j["denominator"] = rc.D().str();
  Json f = Json::array();
  for (const auto& p : rc.den) f.push_back(p.str());
  j["denominator_factors"] = f;
  Json e = Json::array();
  for (int i = 0; i < rc.N.rows(); ++i)
    for (const auto& [c, p] : rc.N.row(i)) e.push_back(Json::array({i, c, p.str()}));
  j["nnz"] = e.size();
  j["entries"] = std::move(e);
  return dump17(j);
}

RCheck rcheck_from_json(const std::string& text) {
  const Json j = Json::parse(text);
  if (j.at("schema") != "twq.rmatrix" || j.at("version") != 1)
    throw std::invalid_argument("not a twq.rmatrix version 1 document");
  const AlgebraType t = AlgebraType::parse(j.at("type").get<std::string>(), j.at("r").get<int>());
  const std::string form = j.at("form").get<std::string>();
  if (form != "matrix-unit" && form != "projector") throw std::invalid_argument("unknown form " + form);
  const int d = j.at("d").get<int>();
  if (d != t.dim()) throw std::invalid_argument("dimension does not match the type");
  RCheck rc{t, d, form == "projector" ? Route::ProjectorForm : Route::MatrixUnit, ZMatrix(d * d, d * d), {}};
  for (const auto& f : j.at("denominator_factors")) rc.den.push_back(ZPoly::parse(f.get<std::string>()));
  for (const auto& e : j.at("entries"))
    rc.N.add(e.at(0).get<int>(), e.at(1).get<int>(), ZPoly::parse(e.at(2).get<std::string>()));
  if (rc.D().str() != j.at("denominator").get<std::string>())
    throw std::invalid_argument("denominator does not match its factors");
  return rc;
}

std::string rcheck_float_json(const RCheck& rc, double q0, double z0) {
  const SparseMatrix<double> m = evaluate_float(rc, q0, z0);
  Json j;
  j["schema"] = "twq.rmatrix-float";
  j["version"] = 1;
  j["type"] = rc.type.tag();
  j["r"] = rc.type.rank();
  j["d"] = rc.d;
  j["form"] = route_name(rc.route);
  j["q0"] = q0;
  j["z0"] = z0;
  Json e = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& [c, x] : m.row(i)) e.push_back(Json::array({i, c, x}));
  j["entries"] = std::move(e);
  return dump17(j);
}

}  // namespace twq
