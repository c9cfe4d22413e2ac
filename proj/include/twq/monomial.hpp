/**
 * @file monomial.hpp
 * @brief Spectral points zeta^e q^k, Y-monomials and q-characters as multisets.
 *
 * zeta is a primitive 6th root of unity, so -1 = zeta^3 and j = zeta^2.
 * All spectral parameters are measured relative to the formal parameter a.
 */
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twq/algebra_type.hpp"

namespace twq {

struct SpectralPoint {
  int e = 0;       // mod 6
  int64_t k = 0;   // power of q

  SpectralPoint() = default;
  SpectralPoint(int e_, int64_t k_) : e(((e_ % 6) + 6) % 6), k(k_) {}
  static SpectralPoint q_pow(int64_t k) { return {0, k}; }
  static SpectralPoint minus() { return {3, 0}; }
  static SpectralPoint j() { return {2, 0}; }

  SpectralPoint operator*(const SpectralPoint& o) const { return {e + o.e, k + o.k}; }
  SpectralPoint inverse() const { return {-e, -k}; }
  auto operator<=>(const SpectralPoint&) const = default;

  /// "a", "-aq^2", "jaq^{-3}", ...
  std::string str() const;
};

class YMonomial {
 public:
  struct Factor {
    int node;
    SpectralPoint p;
    int exp;
    auto operator<=>(const Factor&) const = default;
  };

  explicit YMonomial(const AlgebraType& t);
  /// Y_{i,p}^{exp}, already canonical
  static YMonomial single(const AlgebraType& t, int node, SpectralPoint p, int exp = 1);
  /// parses the rendering, accepting the a^m form for sigma-fixed nodes
  static YMonomial parse(const AlgebraType& t, const std::string& text);

  const std::vector<Factor>& factors() const { return f_; }
  bool is_one() const { return f_.empty(); }
  int exponent(int node, SpectralPoint p) const;
  SpectralPoint canonical(int node, SpectralPoint p) const;

  YMonomial operator*(const YMonomial& o) const;
  YMonomial inverse() const;
  YMonomial pow(int n) const;
  /// replaces a by a*p everywhere
  YMonomial shifted(SpectralPoint p) const;
  /// canonical form, idempotent (values are always stored canonically)
  YMonomial canonicalized() const { return *this; }

  /// rendering "1_{aq^2}^{-1} 2_{aq}"; with power_form, sigma-fixed nodes use b^m ("4_{a^2q^{-6}}")
  std::string str(bool power_form = false) const;

  bool operator==(const YMonomial& o) const { return f_ == o.f_; }
  bool operator<(const YMonomial& o) const { return f_ < o.f_; }

  Family family() const { return fam_; }
  int rank() const { return r_; }

 private:
  void mul_in(int node, SpectralPoint p, int exp);
  Family fam_;
  int r_;
  int omega_e_;
  uint64_t fixed_ = 0;  // bit i set iff node i is sigma-fixed
  int m_;
  std::vector<Factor> f_;  // sorted by (node, p), no zero exponents
};

bool is_dominant(const YMonomial& m);
/// component i-1 = total exponent at node i
std::vector<int> weight_of(const YMonomial& m);
/// A_{i,a}
YMonomial simple_lroot(const AlgebraType& t, int node, SpectralPoint a = {});

class QCharacter {
 public:
  explicit QCharacter(const AlgebraType& t) : t_(t) {}
  void add(const YMonomial& m, int mult = 1);
  const std::map<YMonomial, int>& terms() const { return terms_; }
  int multiplicity(const YMonomial& m) const;
  std::size_t size() const;  // total dimension
  QCharacter operator*(const QCharacter& o) const;
  QCharacter shifted(SpectralPoint p) const;
  std::vector<YMonomial> dominant() const;
  const AlgebraType& type() const { return t_; }

 private:
  AlgebraType t_;
  std::map<YMonomial, int> terms_;
};

}  // namespace twq
