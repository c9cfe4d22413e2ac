#include "twq/decomposer.hpp"

#include <deque>

namespace twq {

namespace {

using Terms = std::vector<std::tuple<Scalar, int, int>>;

Scalar qp(Exp k) { return Scalar::q_pow(k); }
Scalar sp(Exp k) { return Scalar::s_pow(k); }
Scalar sq(Atom a) { return Scalar::sqrt_atom(a); }
Scalar sign(long k) { return Scalar(k % 2 ? -1 : 1); }

struct RawBlock {
  std::string label;
  std::vector<std::pair<std::string, Terms>> seeds;
};

// sum_i eps_i v_i (x) v_{n+1-i}
Terms pairing(const std::vector<Scalar>& eps) {
  Terms t;
  const int n = static_cast<int>(eps.size());
  for (int i = 1; i <= n; ++i)
    if (!eps[i - 1].is_zero()) t.emplace_back(eps[i - 1], i, n + 1 - i);
  return t;
}

std::vector<RawBlock> raw_blocks(const AlgebraType& t) {
  const int r = t.rank();
  std::vector<RawBlock> out;
  auto top = [&](const std::string& label) { out.push_back({label, {{"u", {{Scalar(1), 1, 1}}}}}); };
  auto wedge = [&](const std::string& label, const Scalar& b) {
    out.push_back({label, {{"u", {{qp(1), 1, 2}, {-b, 2, 1}}}}});
  };
  switch (t.family()) {
    case Family::A2t2odd: {
      std::vector<Scalar> eps(2 * r);
      for (int i = 1; i <= r; ++i) {
        eps[i - 1] = sign(r + 1 - i) * qp(r + 1 - i);          // (-q)^{r+1-i}
        eps[2 * r - i] = -(sign(r + 1 - i) * qp(-(r + 1 - i)));  // -(-q^{-1})^{r+1-i}
      }
      top("2w1");
      wedge("w2", Scalar(1));
      out.push_back({"w0", {{"u", pairing(eps)}}});
      break;
    }
    case Family::A2t2:
    case Family::A2t2even: {
      const int rr = r;
      std::vector<Scalar> eps(2 * rr + 1);
      eps[rr] = Scalar(1);
      for (int i = 1; i <= rr; ++i) {
        eps[i - 1] = sign(rr + 1 - i) * sp(2 * rr - 2 * i + 1);
        eps[2 * rr + 1 - i] = sign(rr + 1 - i) * sp(-(2 * rr - 2 * i + 1));
      }
      const bool a2 = t.family() == Family::A2t2;
      top(a2 ? "4w1" : "2w1");
      wedge(a2 ? "2w1" : "w2", Scalar(1));
      out.push_back({"w0", {{"u", pairing(eps)}}});
      break;
    }
    case Family::Dt2: {
      std::vector<Scalar> eps(2 * r + 1);
      eps[r] = sign(r);
      for (int i = 1; i <= r; ++i) {
        eps[i - 1] = sign(i - 1) * qp(2 * r - 2 * i + 1);
        eps[2 * r + 1 - i] = sign(i - 1) * qp(-(2 * r - 2 * i + 1));
      }
      const int tv = 2 * r + 2;
      top("2w1");
      out.push_back({r == 2 ? "2w2" : "w2", {{"u", {{qp(1), 1, 2}, {-qp(-1), 2, 1}}}}});
      out.push_back({"w1", {{"u1", {{Scalar(1), 1, tv}}}, {"u2", {{Scalar(1), tv, 1}}}}});
      out.push_back({"w0", {{"w1", pairing(eps)}, {"w2", {{Scalar(1), tv, tv}}}}});
      break;
    }
    case Family::D4t3: {
      const Scalar r2 = sq(Atom::B2), r3 = sq(Atom::B3), ir3 = r3.inverse();
      Terms u1 = {{qp(3) * ir3, 1, 4}, {-(sp(3) * r2 * ir3), 2, 3}, {sp(-3) * r2 * ir3, 3, 2}, {-(qp(-3) * ir3), 4, 1}};
      std::vector<Scalar> p = {qp(5), -qp(4), qp(1), Scalar(-1), qp(-1), -qp(-4), qp(-5)};
      top("2w1");
      wedge("w2", Scalar(1));
      out.push_back({"w1", {{"u1", u1}, {"u2", {{Scalar(1), 1, 8}}}, {"u3", {{Scalar(1), 8, 1}}}}});
      out.push_back({"w0", {{"w1", pairing(p)}, {"w2", {{Scalar(1), 8, 8}}}}});
      break;
    }
    case Family::E6t2: {
      auto pf = [](int i, int sgn) -> Scalar {
        static const int e[] = {11, 10, 9, 7, 5, 6, 5, 4, 3, 2, 1, 1, 0};
        static const int m[] = {1, -1, 1, -1, 1, 1, -1, -1, 1, 1, -1, -1, 0};
        return Scalar(m[i - 1]) * qp(sgn * e[i - 1]);
      };
      Terms w1;
      for (int i = 1; i <= 26; ++i) {
        Scalar c = i <= 13 ? pf(i, 1) : pf(27 - i, -1);
        if (!c.is_zero()) w1.emplace_back(c, i, 27 - i);
      }
      w1.emplace_back(Scalar(1), 13, 13);
      w1.emplace_back(Scalar(1), 14, 14);
      const Scalar c = sq(Atom::B3) / sq(Atom::B4), ca = sq(Atom::B2) / sq(Atom::B4);
      Terms u1 = {{ca * qp(6), 1, 14},   {-(c * sp(9)), 2, 12}, {c * sp(7), 3, 10},   {-(c * sp(3)), 4, 8},
                  {c * sp(-1), 5, 6},    {c * sp(1), 6, 5},     {-(c * sp(-3)), 8, 4}, {c * sp(-7), 10, 3},
                  {-(c * sp(-9)), 12, 2}, {ca * qp(-6), 14, 1}};
      Terms w4 = {{qp(3), 1, 7}, {-qp(2), 2, 6}, {qp(1), 3, 4}, {-qp(-1), 4, 3}, {qp(-2), 6, 2}, {-qp(-3), 7, 1}};
      top("2w1");
      wedge("w2", Scalar(1));
      out.push_back({"w4", {{"u", w4}}});
      out.push_back({"w1", {{"u1", u1}, {"u2", {{Scalar(1), 1, 27}}}, {"u3", {{Scalar(1), 27, 1}}}}});
      out.push_back({"w0", {{"w1", w1}, {"w2", {{Scalar(1), 27, 27}}}}});
      break;
    }
  }
  return out;
}

using PVec = std::map<int, PointScalar>;

PVec lift(const SVec& v) {
  PVec p;
  for (const auto& [k, x] : v) p.emplace(k, probe_field().eval(x));
  return p;
}

// incremental echelon basis of point vectors (pivot entries normalized to 1)
class Echelon {
 public:
  bool insert(PVec v) {
    for (const auto& [piv, row] : rows_) {
      auto it = v.find(piv);
      if (it == v.end()) continue;
      const PointScalar c = it->second;
      for (const auto& [k, x] : row) {
        auto& y = v[k];
        y -= c * x;
      }
      for (auto jt = v.begin(); jt != v.end();) jt = jt->second.is_zero() ? v.erase(jt) : std::next(jt);
    }
    if (v.empty()) return false;
    const int piv = v.begin()->first;
    const PointScalar inv = v.begin()->second.inverse();
    for (auto& [k, x] : v) x = x * inv;
    rows_.emplace_back(piv, std::move(v));
    return true;
  }
  std::size_t size() const { return rows_.size(); }

 private:
  std::vector<std::pair<int, PVec>> rows_;
};

Dense<Scalar> gram(const std::vector<const SVec*>& a, const std::vector<const SVec*>& b) {
  Dense<Scalar> g(static_cast<int>(a.size()), static_cast<int>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) g(static_cast<int>(i), static_cast<int>(j)) = dot(*a[i], *b[j]);
  return g;
}

}  // namespace

const PointField& probe_field() {
  static const PointField f = [] {
    for (int num = 17;; ++num) {
      mpq_class s0(num, 13);
      if (PointField::admissible(s0, 0xF)) return PointField(s0, 0xF);
    }
  }();
  return f;
}

TensorSquare make_tensor_square(const Representation& rep) {
  TensorSquare ts{rep, rep.dim, {}, {}, {}, {}};
  for (int i = 1; i <= rep.rank(); ++i) {
    ts.dE.push_back(coproduct_finite(rep, Gen::E, i));
    ts.dF.push_back(coproduct_finite(rep, Gen::F, i));
  }
  const int n = rep.rank();
  ts.weight.resize(static_cast<std::size_t>(ts.d) * ts.d);
  for (int i = 0; i < ts.d; ++i)
    for (int j = 0; j < ts.d; ++j) {
      Weight w(n);
      for (int k = 0; k < n; ++k) w[k] = rep.weight[i][k] + rep.weight[j][k];
      ts.weight[ts.index(i, j)] = w;
      ts.space[w].push_back(ts.index(i, j));
    }
  return ts;
}

SVec act(const ScalarMatrix& m, const SVec& v) {
  // column access through the transpose would need a copy; rows are scanned instead
  SVec out;
  for (int r = 0; r < m.rows(); ++r) {
    const auto& row = m.row(r);
    Scalar acc;
    bool any = false;
    for (const auto& [c, x] : row) {
      auto it = v.find(c);
      if (it == v.end()) continue;
      acc += x * it->second;
      any = true;
    }
    if (any && !acc.is_zero()) out.emplace(r, std::move(acc));
  }
  return out;
}

Scalar dot(const SVec& a, const SVec& b) {
  Scalar acc;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first)
      ++i;
    else if (j->first < i->first)
      ++j;
    else {
      acc += i->second * j->second;
      ++i;
      ++j;
    }
  }
  return acc;
}

SVec scaled(const SVec& v, const Scalar& c) {
  SVec out;
  for (const auto& [k, x] : v) out.emplace(k, x * c);
  return out;
}

SVec tensor_vector(const TensorSquare& ts, const std::vector<std::tuple<Scalar, int, int>>& terms) {
  SVec v;
  for (const auto& [c, i, j] : terms) {
    if (i < 1 || i > ts.d || j < 1 || j > ts.d) throw std::out_of_range("tensor_vector: basis index");
    auto& x = v[ts.index(i - 1, j - 1)];
    x += c;
  }
  for (auto it = v.begin(); it != v.end();) it = it->second.is_zero() ? v.erase(it) : std::next(it);
  return v;
}

Weight weight_of(const TensorSquare& ts, const SVec& v) {
  if (v.empty()) throw DecompositionError("weight of the zero vector");
  const Weight& w = ts.weight[v.begin()->first];
  for (const auto& [k, x] : v)
    if (ts.weight[k] != w) throw DecompositionError("vector is not a weight vector");
  return w;
}

bool is_singular(const TensorSquare& ts, const SVec& v) {
  for (const auto& e : ts.dE)
    if (!act(e, v).empty()) return false;
  return true;
}

std::vector<SingularVector> find_singular_vectors(const TensorSquare& ts, const Weight& lambda) {
  auto it = ts.space.find(lambda);
  if (it == ts.space.end()) return {};
  const std::vector<int>& cols = it->second;
  // stack the restrictions of all Delta(E_i) to the lambda weight space
  std::map<int, int> row_of;
  std::vector<std::vector<std::pair<int, Scalar>>> rows;
  for (std::size_t i = 0; i < ts.dE.size(); ++i) {
    ScalarMatrix Et = ts.dE[i].transpose();  // row c of Et is column c of Delta(E_i)
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (const auto& [r, x] : Et.row(cols[c])) {
        const int key = static_cast<int>(i) * ts.d * ts.d + r;
        auto [pos, fresh] = row_of.emplace(key, static_cast<int>(rows.size()));
        if (fresh) rows.emplace_back();
        rows[pos->second].emplace_back(static_cast<int>(c), x);
      }
  }
  Dense<Scalar> m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, x] : rows[r]) m(static_cast<int>(r), c) += x;
  std::vector<SingularVector> out;
  int k = 0;
  for (auto& x : nullspace(m, Scalar(1))) {
    SingularVector s;
    s.name = "k" + std::to_string(++k);
    for (std::size_t c = 0; c < cols.size(); ++c)
      if (!x[c].is_zero()) s.v.emplace(cols[c], x[c]);
    s.weight = lambda;
    s.source = SingularVector::Source::Kernel;
    s.norm = dot(s.v, s.v);
    out.push_back(std::move(s));
  }
  return out;
}

bool in_span(const std::vector<SVec>& basis, const SVec& v) {
  std::map<int, int> col_of;
  for (const auto& b : basis)
    for (const auto& [k, x] : b) col_of.emplace(k, 0);
  for (const auto& [k, x] : v) col_of.emplace(k, 0);
  int c = 0;
  for (auto& [k, idx] : col_of) idx = c++;
  auto rank_of = [&](bool with_v) {
    Dense<Scalar> m(static_cast<int>(basis.size()) + (with_v ? 1 : 0), c);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (const auto& [k, x] : basis[i]) m(static_cast<int>(i), col_of[k]) = x;
    if (with_v)
      for (const auto& [k, x] : v) m(static_cast<int>(basis.size()), col_of[k]) = x;
    return rank(m);
  };
  return rank_of(true) == rank_of(false);
}

std::vector<BlockSpec> explicit_blocks(const TensorSquare& ts) {
  std::vector<BlockSpec> out;
  for (const auto& rb : raw_blocks(ts.rep.type)) {
    BlockSpec b{rb.label, {}};
    for (const auto& [name, terms] : rb.seeds) {
      SingularVector s;
      s.name = name;
      s.v = tensor_vector(ts, terms);
      s.weight = weight_of(ts, s.v);
      s.source = SingularVector::Source::Explicit;
      s.norm = dot(s.v, s.v);
      if (!is_singular(ts, s.v))
        throw DecompositionError("chosen vector " + name + " of block " + rb.label + " is not singular");
      if (!b.seeds.empty() && s.weight != b.seeds.front().weight)
        throw DecompositionError("seeds of block " + rb.label + " have different weights");
      b.seeds.push_back(std::move(s));
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<SingularVector> explicit_singular_basis(const TensorSquare& ts, const std::string& label) {
  for (auto& b : explicit_blocks(ts))
    if (b.label == label) return b.seeds;
  throw std::invalid_argument("no block labelled " + label);
}

std::vector<Scalar> norm_ratios(const TensorSquare& ts, const std::string& label) {
  auto seeds = explicit_singular_basis(ts, label);
  std::vector<Scalar> out;
  for (std::size_t k = 1; k < seeds.size(); ++k) out.push_back(seeds[0].norm / seeds[k].norm);
  return out;
}

IsotypicBlock generate_copies(const TensorSquare& ts, const std::string& label, const std::vector<SingularVector>& seeds) {
  if (seeds.empty()) throw DecompositionError("block " + label + " has no seeds");
  IsotypicBlock b;
  b.label = label;
  b.seeds = seeds;
  b.kweight = seeds.front().weight;
  const int n = ts.rep.rank();
  std::map<Weight, Echelon> echelon;
  std::vector<SVec> first;
  b.words.push_back({});
  b.word_weight.push_back(b.kweight);
  first.push_back(seeds.front().v);
  echelon[b.kweight].insert(lift(seeds.front().v));
  std::deque<int> queue = {0};
  while (!queue.empty()) {
    const int src = queue.front();
    queue.pop_front();
    for (int i = 1; i <= n; ++i) {
      SVec v = act(ts.dF[i - 1], first[src]);
      if (v.empty()) continue;
      Weight w = ts.weight[v.begin()->first];
      if (!echelon[w].insert(lift(v))) continue;
      std::vector<int> word = b.words[src];
      word.push_back(i);
      b.words.push_back(word);
      b.word_weight.push_back(w);
      first.push_back(std::move(v));
      queue.push_back(static_cast<int>(first.size()) - 1);
    }
  }
  b.copies.push_back(std::move(first));
  for (std::size_t a = 1; a < seeds.size(); ++a) {
    if (seeds[a].weight != b.kweight) throw DecompositionError("block " + label + ": seed weights differ");
    std::vector<SVec> copy;
    copy.reserve(b.words.size());
    for (const auto& word : b.words) {
      SVec v = seeds[a].v;
      for (int i : word) v = act(ts.dF[i - 1], v);
      copy.push_back(std::move(v));
    }
    b.copies.push_back(std::move(copy));
  }
  // joint independence of all copies, weight space by weight space
  std::map<Weight, Echelon> joint;
  for (const auto& copy : b.copies)
    for (std::size_t w = 0; w < copy.size(); ++w)
      if (copy[w].empty() || !joint[b.word_weight[w]].insert(lift(copy[w])))
        throw DecompositionError("block " + label + ": copies are linearly dependent");
  return b;
}

int Decomposition::total_dim() const {
  int n = 0;
  for (const auto& b : blocks) n += b.mult() * b.dim();
  return n;
}

Decomposition decompose(const TensorSquare& ts) {
  Decomposition dec;
  for (const auto& spec : explicit_blocks(ts)) {
    IsotypicBlock b = generate_copies(ts, spec.label, spec.seeds);
    const long expect = ts.rep.type.weyl_dimension(b.kweight);
    if (b.dim() != expect)
      throw DecompositionError("block " + b.label + " has dimension " + std::to_string(b.dim()) + ", expected " +
                               std::to_string(expect));
    dec.blocks.push_back(std::move(b));
  }
  if (dec.total_dim() != ts.d * ts.d)
    throw DecompositionError("blocks span " + std::to_string(dec.total_dim()) + " of " + std::to_string(ts.d * ts.d));
  std::map<Weight, Echelon> all;
  for (const auto& b : dec.blocks)
    for (const auto& copy : b.copies)
      for (std::size_t w = 0; w < copy.size(); ++w)
        if (!all[b.word_weight[w]].insert(lift(copy[w])))
          throw DecompositionError("blocks are not jointly independent at weight space of " + b.label);
  return dec;
}

BlockTransport transport_operators(const TensorSquare& ts, const IsotypicBlock& block) {
  const int n = block.mult();
  const int dd = ts.d * ts.d;
  BlockTransport bt;
  std::vector<const SVec*> seeds;
  for (const auto& s : block.seeds) seeds.push_back(&s.v);
  bt.N = gram(seeds, seeds);
  const Dense<Scalar> Ninv = inverse(bt.N, Scalar(1));
  bt.theta.assign(n, std::vector<ScalarMatrix>(n, ScalarMatrix(dd, dd)));

  std::map<Weight, std::vector<int>> by_weight;
  for (int w = 0; w < block.dim(); ++w) by_weight[block.word_weight[w]].push_back(w);
  for (const auto& [mu, ws] : by_weight) {
    const std::vector<int>& coords = ts.space.at(mu);
    std::map<int, int> pos;
    for (std::size_t c = 0; c < coords.size(); ++c) pos[coords[c]] = static_cast<int>(c);
    const int m = static_cast<int>(coords.size()), k = static_cast<int>(ws.size());
    std::vector<Dense<Scalar>> B(n, Dense<Scalar>(m, k));
    for (int a = 0; a < n; ++a)
      for (int j = 0; j < k; ++j)
        for (const auto& [idx, x] : block.copies[a][ws[j]]) B[a](pos.at(idx), j) = x;
    // G^{-1} with G = B_1^T B_1 / N_11; Gram of copies a, c is N_ac G
    Dense<Scalar> H = inverse(B[0].transpose() * B[0], Scalar(1));
    for (auto& x : H.a) x = x * bt.N(0, 0);
    std::vector<Dense<Scalar>> HBt;
    for (int c = 0; c < n; ++c) HBt.push_back(H * B[c].transpose());
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        Dense<Scalar> pi = B[a] * HBt[c];  // maps W u_d to N_cd W u_a
        for (int b = 0; b < n; ++b) {
          const Scalar f = Ninv(b, c);
          if (f.is_zero()) continue;
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
              if (!pi(i, j).is_zero()) bt.theta[a][b].add(coords[i], coords[j], pi(i, j) * f);
        }
      }
  }
  return bt;
}

ScalarMatrix multiplicity_one_projector(const TensorSquare& ts, const IsotypicBlock& block) {
  if (block.mult() != 1) throw std::invalid_argument("multiplicity_one_projector: block has multiplicity " + std::to_string(block.mult()));
  return transport_operators(ts, block).theta[0][0];
}

}  // namespace twq
