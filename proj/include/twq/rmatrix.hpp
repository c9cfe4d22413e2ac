/**
 * @file rmatrix.hpp
 * @brief The normalized R-matrix R(z) on V (x) V in two independent forms:
 *        matrix-unit formulas (A families) and block functions acting on
 *        isotypic copies (all families).
 *
 * R(z) is stored factored as N(z) / D(z): N a sparse polynomial matrix, D the
 * product of the pole factors, each normalized to constant term 1.
 */
#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "twq/decomposer.hpp"
#include "twq/pointfield.hpp"
#include "twq/zrational.hpp"

namespace twq {

using RationalMatrix = SparseMatrix<ZRational>;
using PointMatrix = SparseMatrix<PointScalar>;

/// named constants of the multiplicity blocks, in print order
struct ConstantTable {
  std::vector<std::pair<std::string, Scalar>> values;

  bool has(const std::string& name) const;
  const Scalar& at(const std::string& name) const;
  void set(const std::string& name, const Scalar& x);
};
/// empty for the A families
ConstantTable reference_constants(const AlgebraType& t);

/// g(z) = prefactor * num(z) / prod(den) on one isotypic block
struct BlockFunction {
  std::string label;
  Scalar prefactor;
  std::vector<std::vector<ZPoly>> num;  // mult x mult
  std::vector<ZPoly> den;               // pole factors, constant term 1

  int mult() const { return static_cast<int>(num.size()); }
  ZRational entry(int a, int b) const;
};
std::vector<BlockFunction> block_functions(const AlgebraType& t, const ConstantTable& c);
std::vector<BlockFunction> block_functions(const AlgebraType& t);

enum class Route { MatrixUnit, ProjectorForm };
const char* route_name(Route r);

struct RCheck {
  AlgebraType type;
  int d = 0;
  Route route = Route::ProjectorForm;
  ZMatrix N;               // d^2 x d^2
  std::vector<ZPoly> den;  // pole factors; D = product

  ZPoly D() const;
  /// max(deg N, deg D): the reversal degree used for z -> 1/z
  int degree() const;
  ZRational entry(int i, int j) const;
  /// every entry as a reduced rational function (small d only)
  RationalMatrix rational() const;
};

/// the sl_n part shared by the A-type matrix-unit formulas
RationalMatrix sl_base_rmatrix(int n);
/// A2t2odd, A2t2, A2t2even only; throws std::invalid_argument otherwise
RCheck build_rcheck_matrix_unit(const AlgebraType& t);

/// the decomposition and transport operators, computed once per type
struct ProjectorData {
  TensorSquare ts;
  Decomposition dec;
  std::vector<BlockTransport> transport;
};
std::shared_ptr<const ProjectorData> projector_data(const AlgebraType& t);

/// R = sum over blocks of sum_ab g_ab(z) Theta_ab; throws DecompositionError on a block mismatch
RCheck assemble_projector_form(const ProjectorData& pd, const std::vector<BlockFunction>& g);
RCheck build_rcheck_projector_form(const AlgebraType& t);

struct CrossValidation {
  bool equal = false;
  int row = -1, col = -1;  // first differing entry
  std::string lhs, rhs;
};
CrossValidation cross_validate(const AlgebraType& t);

/// R(z0) at s = s0; throws PoleError when D(z0) = 0
PointMatrix evaluate(const RCheck& rc, const PointField& f, const PointScalar& z0);
/// R(z0) with q = q0 in double precision
SparseMatrix<double> evaluate_float(const RCheck& rc, double q0, double z0);

/// the q -> 1 change of basis T on V (identity for the A families)
std::vector<std::vector<std::complex<double>>> limit_basis_map(const AlgebraType& t);

struct LimitReport {
  double u = 0;
  std::vector<double> eps;
  std::vector<double> deviation;  // sup norm against (I - uP)/(1 - u)
  std::vector<double> drift;      // sup norm of L(eps_k) - L(eps_{k-1}), k >= 1
  int residual_rank = 0;          // numerical rank of L - target at the last eps, 0 when below 1e-2
  double ratio() const { return deviation.size() >= 2 ? deviation[1] / deviation[0] : 0; }
};
LimitReport rational_limit(const RCheck& rc, double u, const std::vector<double>& eps);

/// JSON text of the factored form (schema twq.rmatrix, version 1)
std::string rcheck_to_json(const RCheck& rc);
RCheck rcheck_from_json(const std::string& text);
/// JSON text of R(z0) at q0 in double precision, 17 significant digits
std::string rcheck_float_json(const RCheck& rc, double q0, double z0);

}  // namespace twq
