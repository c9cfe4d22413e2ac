/**
 * @file decomposer.hpp
 * @brief Isotypic decomposition of V (x) V: singular vectors, lowering-word
 *        copies, Gram data and copy-transport operators.
 *
 * Tensor index of v_i (x) v_j is i*d + j (0-based).  Copies of one isotypic
 * block are generated by the same lowering words, so W u_b -> W u_a is a
 * well defined module map (the transport operator Theta_ab).
 */
#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "twq/linalg.hpp"
#include "twq/rep.hpp"

namespace twq {

using SVec = std::map<int, Scalar>;
using Weight = std::vector<int>;

class DecompositionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TensorSquare {
  Representation rep;
  int d = 0;                     // dim V
  std::vector<ScalarMatrix> dE;  // Delta(E_i), index i-1
  std::vector<ScalarMatrix> dF;  // Delta(F_i)
  std::vector<Weight> weight;    // weight of each tensor index
  std::map<Weight, std::vector<int>> space;  // weight -> tensor indices, increasing

  int index(int i, int j) const { return i * d + j; }
};
TensorSquare make_tensor_square(const Representation& rep);

SVec act(const ScalarMatrix& m, const SVec& v);
Scalar dot(const SVec& a, const SVec& b);
SVec scaled(const SVec& v, const Scalar& c);
/// sum_k c_k v_{i_k} (x) v_{j_k} from 1-based (coefficient, i, j) terms
SVec tensor_vector(const TensorSquare& ts, const std::vector<std::tuple<Scalar, int, int>>& terms);
/// throws DecompositionError when v is not a weight vector
Weight weight_of(const TensorSquare& ts, const SVec& v);
bool is_singular(const TensorSquare& ts, const SVec& v);

struct SingularVector {
  enum class Source { Explicit, Kernel };
  std::string name;  // "u1", "w2", ...
  SVec v;
  Weight weight;
  Source source = Source::Explicit;
  Scalar norm;       // Shapovalov norm (v, v)
};

/// basis of the joint kernel of all Delta(E_i) on the weight space lambda
std::vector<SingularVector> find_singular_vectors(const TensorSquare& ts, const Weight& lambda);
/// true when v lies in the span of the given vectors (exact)
bool in_span(const std::vector<SVec>& basis, const SVec& v);

struct BlockSpec {
  std::string label;                    // "2w1", "w0", ...
  std::vector<SingularVector> seeds;    // reference order
};
/// the chosen singular vectors of every isotypic block, verified singular
std::vector<BlockSpec> explicit_blocks(const TensorSquare& ts);
std::vector<SingularVector> explicit_singular_basis(const TensorSquare& ts, const std::string& label);
/// (u_1, u_1) / (u_k, u_k) for k = 2..n
std::vector<Scalar> norm_ratios(const TensorSquare& ts, const std::string& label);

struct IsotypicBlock {
  std::string label;
  Weight kweight;
  std::vector<SingularVector> seeds;
  std::vector<std::vector<int>> words;   // lowering words, nodes applied left to right
  std::vector<Weight> word_weight;
  std::vector<std::vector<SVec>> copies; // copies[a][w] = W_w u_a
  int mult() const { return static_cast<int>(seeds.size()); }
  int dim() const { return static_cast<int>(words.size()); }
};

/// breadth-first lowering from the first seed; throws DecompositionError on dependency
IsotypicBlock generate_copies(const TensorSquare& ts, const std::string& label, const std::vector<SingularVector>& seeds);

struct Decomposition {
  std::vector<IsotypicBlock> blocks;
  int total_dim() const;
};
/// all explicit blocks; checks dimensions against the Weyl formula and completeness
Decomposition decompose(const TensorSquare& ts);

/// Theta_ab for one block (Theta_ab W u_c = delta_bc W u_a), with the norm matrix N_ab = (u_a, u_b)
struct BlockTransport {
  Dense<Scalar> N;
  std::vector<std::vector<ScalarMatrix>> theta;
};
BlockTransport transport_operators(const TensorSquare& ts, const IsotypicBlock& block);
/// Theta_11 for a multiplicity-one block
ScalarMatrix multiplicity_one_projector(const TensorSquare& ts, const IsotypicBlock& block);

/// a fixed admissible evaluation point used for independence tests
const PointField& probe_field();

}  // namespace twq
