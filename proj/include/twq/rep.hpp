/**
 * @file rep.hpp
 * @brief The first fundamental module: generator matrices, bar involution,
 *        coproduct on V (x) V and the defining-relation suite.
 *
 * Generator index i runs over 0..rank, with 0 the affine node.  Matrices act
 * on column vectors, basis index 0-based internally (v_k is index k-1).
 * K_i is diagonal and stored as s-exponents.  E_0(a) = a E_0(1) and
 * F_0(a) = a^{-1} E_0(1)^T.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "twq/algebra_type.hpp"
#include "twq/radical.hpp"
#include "twq/sparse.hpp"
#include "twq/zrational.hpp"

namespace twq {

using ScalarMatrix = SparseMatrix<Scalar>;
using ZMatrix = SparseMatrix<ZPoly>;

/// raised when hand-entered module data fails its own consistency checks
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Representation {
  AlgebraType type;
  int dim = 0;
  std::vector<ScalarMatrix> E;            // E[i-1] for finite node i
  std::vector<ScalarMatrix> F;            // F[i-1] = E[i-1]^T
  ScalarMatrix E0;                        // E_0(1)
  std::vector<std::vector<Exp>> kexp;     // kexp[i][v]: K_i v = s^{kexp} v, i = 0..rank
  std::vector<std::vector<int>> weight;   // finite weight of each basis vector (K-convention)
  std::vector<int> trivial;               // 0-based indices spanning the trivial summand

  int rank() const { return type.rank(); }
  int twice_d(int i) const { return i == 0 ? type.twice_d0() : type.twice_d()[i - 1]; }
  /// E_i (E_0 at a = 1) and F_i (F_0 at a = 1)
  const ScalarMatrix& e(int i) const { return i == 0 ? E0 : E[i - 1]; }
  ScalarMatrix f(int i) const { return i == 0 ? E0.transpose() : F[i - 1]; }
  bool weight_zero(int v) const;
};

/// parsed adjacency file for a module given as a coloured graph
struct GraphData {
  std::string type_tag;
  int dim = 0;
  std::vector<int> trivial;                          // 1-based
  std::vector<std::tuple<int, int, int, Scalar>> F;  // color, from, to, coeff (1-based)
  std::vector<Exp> K0;
  std::vector<std::tuple<int, int, Scalar>> E0;      // from, to, coeff
};

/// FNV-1a 64-bit hash of a byte string
std::uint64_t fnv1a64(const std::string& bytes);
/// parses a graph file; throws ConstructionError on a bad format or checksum
GraphData parse_graph(const std::string& text);
/// "sqrt[b3]/sqrt[b2]" style coefficient
Scalar parse_radical_coeff(const std::string& text);
/// the embedded E6t2 graph file
const std::string& e6t2_graph_text();

/// builds and validates (grading, K-homogeneity); throws ConstructionError on inconsistency
Representation build_rep(const AlgebraType& t);

struct BarInvolution {
  std::vector<int> t;  // 0-based permutation
  int operator()(int v) const { return t[v]; }
  ScalarMatrix matrix() const;
};

/// pairs opposite weights, fixes weight zero, then checks t E_j t = F_j
BarInvolution build_bar_involution(const Representation& rep);

struct RelationReport {
  bool transpose = true;
  bool grading = true;       // E_i raises the weight by alpha_i
  bool k_conjugation = true;
  bool ef = true;            // [E_i, F_j] = delta_ij (K_i - K_i^{-1})/(q_i - q_i^{-1})
  bool serre = true;
  std::vector<std::vector<Exp>> shift;  // s-exponent c with K_i E_j K_i^{-1} = s^c E_j
  std::vector<std::string> failures;
  bool ok() const { return transpose && grading && k_conjugation && ef && serre; }
};
RelationReport relation_suite(const Representation& rep);

/// the symmetrized Cartan shift 2 d_i a_ij expected in K_i E_j K_i^{-1}, in s-exponents
std::vector<std::vector<Exp>> expected_shift(const AlgebraType& t);

enum class Gen { E, F, K };

/// K_i^{+1/2} or K_i^{-1/2} as a diagonal of s-powers
ScalarMatrix k_half(const Representation& rep, int i, int sign);
/// Delta(E_i), Delta(F_i), Delta(K_i) for a finite node (i >= 1) on V (x) V
ScalarMatrix coproduct_finite(const Representation& rep, Gen g, int i);

/// z^shift * m
struct ZLaurentMatrix {
  ZMatrix m;
  int shift = 0;
};
/// Delta(g_i) with spectral parameters a = z^{a_deg}, b = z^{b_deg} in the two slots
ZLaurentMatrix coproduct_action(const Representation& rep, Gen g, int i, int a_deg, int b_deg);

struct ShapovalovReport {
  ScalarMatrix gram;    // identity: the chosen basis is orthonormal
  bool adjoint = true;  // E_i^T = F_i for all i, including E_0(a)^T = a^2 F_0(a) at a = 1
};
ShapovalovReport shapovalov_gram(const Representation& rep);

/// (row, col, scalar string) triples, 0-based
std::vector<std::tuple<int, int, std::string>> export_sparse(const ScalarMatrix& m);

ZMatrix to_z(const ScalarMatrix& m);

}  // namespace twq
