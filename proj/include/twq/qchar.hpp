/**
 * @file qchar.hpp
 * @brief q-characters of the first fundamental module, products, and pole tables.
 */
#pragma once

#include <string>
#include <vector>

#include "twq/monomial.hpp"

namespace twq {

/// chi_q(1_a) with all parameters relative to a
QCharacter fundamental_character(const AlgebraType& t, SpectralPoint a = {});
/// number of weight-zero monomials of chi_q(1_a)
int weight_zero_count(const QCharacter& c);

struct DominantTerm {
  YMonomial m;
  int mult;
};
/// dominant monomials of chi_q(1_a) chi_q(1_b) with a/b = ratio, with multiplicity
std::vector<DominantTerm> dominant_monomials_of_product(const AlgebraType& t, SpectralPoint ratio);

/// conditions (1)-(4) of the elimination criterion for m_- = m A_{i,b}^{-1}, checked against `chi`
bool qchar_arg_check(const QCharacter& chi, const YMonomial& m, int i, SpectralPoint b);

/// finite-type summand: multiplicity, highest weight in K-convention, label
struct IrrPart {
  int mult;
  std::vector<int> kweight;
  std::string label;  // "2w1", "w0", ...
  bool operator==(const IrrPart& o) const { return mult == o.mult && kweight == o.kweight; }
};
long dimension(const AlgebraType& t, const std::vector<IrrPart>& parts);
std::string render_parts(const std::vector<IrrPart>& parts);

struct PoleRecord {
  explicit PoleRecord(const AlgebraType& t) : sub(t), quot(t) {}
  SpectralPoint pole;          // ratio z0 = a/b
  bool sign_orbit = false;     // z0 and -z0 give the same modules ("±")
  YMonomial sub;               // 1_a 1_b
  std::vector<IrrPart> sub_parts;
  YMonomial quot;              // the extra dominant monomial
  std::vector<IrrPart> quot_parts;
  int quot_mult = 1;           // multiplicity of quot in the product
  long kernel_dim = 0;         // expected dim ker R(1/z0) = dim of the quotient
  bool certified = false;      // an elimination certificate exists

  std::string pole_str() const;
};

struct PoleTable {
  AlgebraType type;
  std::vector<PoleRecord> rows;
  std::string to_text() const;
  std::string to_json() const;  // one JSON object
};

/// the scan over ratios zeta^e q^k, 0 < k <= max(2r+2, 14)
PoleTable derive_pole_table(const AlgebraType& t);
/// transcription of the reference tables (no derivation)
PoleTable reference_pole_table(const AlgebraType& t);
/// same poles, same submodule and quotient monomials and decompositions
bool same_table(const PoleTable& a, const PoleTable& b, std::string* why = nullptr);

int scan_bound(const AlgebraType& t);

}  // namespace twq
