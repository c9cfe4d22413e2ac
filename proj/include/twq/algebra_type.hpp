/**
 * @file algebra_type.hpp
 * @brief Type tags and finite Dynkin data for the six twisted families.
 *
 * Nodes are 1-based throughout (node 0 is the affine node).  Symmetrizers
 * are stored doubled so that K-eigenvalues stay integral powers of s.
 */
#pragma once

#include <string>
#include <vector>

namespace twq {

enum class Family { A2t2odd, A2t2even, A2t2, Dt2, E6t2, D4t3 };

class AlgebraType {
 public:
  /// validates the rank; E6t2 and D4t3 ignore r, A2t2even with r=1 is A2t2
  static AlgebraType make(Family f, int r = 0);
  /// accepts A2t2odd (alias A2t1odd), A2t2even, A2t2, Dt2, E6t2, D4t3
  static AlgebraType parse(const std::string& tag, int r = 0);

  Family family() const { return f_; }
  int rank() const { return r_; }  // |I^sigma|
  std::string tag() const;
  std::string display() const;  // e.g. "A5(2)"
  int m() const { return f_ == Family::D4t3 ? 3 : 2; }
  int omega_e() const { return f_ == Family::D4t3 ? 2 : 3; }  // omega = zeta_6^omega_e
  bool sigma_fixed(int node) const;
  int dim() const;  // dimension of the first fundamental module
  bool has_trivial_summand() const { return f_ == Family::Dt2 || f_ == Family::E6t2 || f_ == Family::D4t3; }

  /// finite Cartan matrix C[i-1][j-1]; simple root alpha_j is column j
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  /// 2 d_i for i = 1..rank, and 2 d_0
  const std::vector<int>& twice_d() const { return twice_d_; }
  int twice_d0() const;
  /// the node whose Y-weight is half of its K-weight (A_{2r}^{(2)} short node), 0 if none
  int half_weight_node() const;

  /// dimension of the finite-type irreducible with highest weight given in K-convention
  long weyl_dimension(const std::vector<int>& kweight) const;

  friend bool operator==(const AlgebraType& a, const AlgebraType& b) { return a.f_ == b.f_ && a.r_ == b.r_; }

 private:
  AlgebraType(Family f, int r);
  Family f_;
  int r_;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> twice_d_;
};

}  // namespace twq
