/**
 * @file verifier.hpp
 * @brief Property checks on a built R(z): R(1) = id, unitarity, flip and
 *        bar-involution symmetry, self-adjointness, affine intertwining,
 *        QYBE, pole kernels, z = 0 spectra, constant equations and the
 *        rational limit.
 *
 * Symbolic checks compare numerator matrices exactly.  Exact-point checks
 * evaluate in a multiquadratic field at sampled rational s0, z0, w0.  Float
 * checks use doubles with a relative threshold of 1e-9.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twq/jsonio.hpp"
#include "twq/qchar.hpp"
#include "twq/rmatrix.hpp"

namespace twq {

enum class Mode { Auto, Symbolic, ExactPoint, Float };
const char* mode_name(Mode m);
/// "auto", "symbolic", "exact-point", "float"; throws std::invalid_argument
Mode parse_mode(const std::string& s);

struct CheckOptions {
  Mode mode = Mode::Auto;
  int samples = 0;  // 0 selects the property default
  std::uint64_t seed = 1;
};

/// a failing report always carries a witness
struct VerificationReport {
  std::string property;
  std::string type;
  int r = 0;
  std::string form;
  std::string mode;
  std::uint64_t seed = 0;
  std::vector<std::string> points;
  bool pass = false;
  std::string witness;
  Json detail = Json::object();

  Json to_json() const;
};

VerificationReport check_r_at_one(const RCheck& rc);
VerificationReport check_unitarity(const RCheck& rc, const CheckOptions& opt = {});
/// R(z) = (t (x) t) P R(z) P (t (x) t); pass the identity permutation to test P alone
VerificationReport check_flip_conjugation(const RCheck& rc, const BarInvolution& t);
VerificationReport check_self_adjoint(const RCheck& rc);
/// R(z) Delta X(z,1) = Delta X(1,z) R(z) for X = E_0 and F_0, symbolic in z
VerificationReport check_affine_intertwining(const RCheck& rc, const Representation& rep);
/// R23(z) R12(zw) R23(w) = R12(w) R23(zw) R12(z) on V^(x)3
VerificationReport check_qybe(const RCheck& rc, const CheckOptions& opt = {});
/// R(z; q) = P R(1/z; 1/q) P, symbolic
VerificationReport check_q_inversion(const RCheck& rc);
/// dim ker R(1/z0) and rank R(1/z0) against the table, exact; N(z0) != 0 at every pole
VerificationReport check_pole_kernels(const RCheck& rc, const PoleTable& table);
/// R(0) on every block against the Casimir eigenvalue or the stated g(0) matrix
VerificationReport check_z0_spectrum(const RCheck& rc);
/// the equations tying the block constants together, read off the block numerators
VerificationReport check_constants(const AlgebraType& t, const std::vector<BlockFunction>& g);
/// each constant times -1 and plus 1 must break R(1), unitarity, flip, self-adjointness, E_0/F_0 or QYBE
VerificationReport check_mutations(const AlgebraType& t, const CheckOptions& opt = {});
/// deviation of the T-conjugated limit from (I - uP)/(1 - u) at u = 1/3, eps = 1e-3 and 1e-4
VerificationReport check_rational_limit(const RCheck& rc);

/// unitarity, at-one, flip, self-adjoint, e0, qybe, poles, z0, constants, rational-limit, q-inverse
const std::vector<std::string>& property_names();
/// runs one property or "all" (in property_names order), at most `jobs` at a time
std::vector<VerificationReport> run_properties(const RCheck& rc, const std::string& prop, const CheckOptions& opt,
                                               int jobs = 1);

}  // namespace twq
