#include "doctest.h"

#include <numeric>
#include <stdexcept>

#include "twq/verifier.hpp"

using namespace twq;

namespace {

AlgebraType T(const char* tag, int r = 0) { return AlgebraType::parse(tag, r); }

RCheck with_constant(const AlgebraType& t, const std::string& name, const Scalar& x) {
  ConstantTable c = reference_constants(t);
  c.set(name, x);
  return assemble_projector_form(*projector_data(t), block_functions(t, c));
}

std::string lines(const std::vector<VerificationReport>& rs) {
  std::string out;
  for (const auto& r : rs) out += dump17(r.to_json()) + "\n";
  return out;
}

}  // namespace

TEST_SUITE("property_verifier") {
  TEST_CASE("every property holds for A2t2 in both forms") {
    for (Route route : {Route::MatrixUnit, Route::ProjectorForm}) {
      RCheck rc = route == Route::MatrixUnit ? build_rcheck_matrix_unit(T("A2t2"))
                                             : build_rcheck_projector_form(T("A2t2"));
      auto reps = run_properties(rc, "all", {});
      CHECK(reps.size() == property_names().size() + 1);  // constants also reports its mutations
      for (const auto& r : reps) CHECK_MESSAGE(r.pass, r.property, ": ", r.witness);
    }
  }

  TEST_CASE("symbolic checks on the D families") {
    for (auto [tag, r] : std::vector<std::pair<const char*, int>>{{"Dt2", 2}, {"D4t3", 0}}) {
      RCheck rc = build_rcheck_projector_form(T(tag, r));
      for (const char* p : {"at-one", "unitarity", "flip", "self-adjoint", "e0", "q-inverse", "z0", "poles"}) {
        auto reps = run_properties(rc, p, {});
        REQUIRE(reps.size() == 1);
        CHECK_MESSAGE(reps[0].pass, tag, " ", p, ": ", reps[0].witness);
      }
    }
  }

  TEST_CASE("QYBE in each mode") {
    RCheck rc = build_rcheck_projector_form(T("A2t2odd", 3));
    for (Mode m : {Mode::Symbolic, Mode::ExactPoint, Mode::Float}) {
      CheckOptions opt;
      opt.mode = m;
      opt.samples = 2;
      auto rep = check_qybe(rc, opt);
      CHECK_MESSAGE(rep.pass, mode_name(m), ": ", rep.witness);
      CHECK(rep.mode == mode_name(m));
    }
    CheckOptions opt;
    CHECK(check_qybe(rc, opt).mode == std::string("symbolic"));
  }

  TEST_CASE("flip without the bar involution fails") {
    RCheck rc = build_rcheck_projector_form(T("Dt2", 2));
    BarInvolution id;
    id.t.resize(rc.d);
    std::iota(id.t.begin(), id.t.end(), 0);
    auto rep = check_flip_conjugation(rc, id);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.witness.empty());
    CHECK(check_flip_conjugation(rc, build_bar_involution(build_rep(rc.type))).pass);
  }

  TEST_CASE("a sign error in one constant breaks E_0/F_0 intertwining") {
    const AlgebraType t = T("D4t3");
    const Scalar eta = reference_constants(t).at("eta");
    RCheck bad = with_constant(t, "eta", -eta);
    auto rep = check_affine_intertwining(bad, build_rep(t));
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.witness.empty());
    CHECK(check_affine_intertwining(with_constant(t, "eta", eta), build_rep(t)).pass);
  }

  TEST_CASE("kernel at the inverse pole is the quotient") {
    const AlgebraType t = T("A2t2odd", 3);  // A5(2)
    RCheck rc = build_rcheck_projector_form(t);
    auto rep = check_pole_kernels(rc, reference_pole_table(t));
    REQUIRE(rep.pass);
    bool seen = false;
    for (const auto& row : rep.detail["rows"])
      if (row["pole"] == "q^2") {
        CHECK(row["kernel"] == 15);
        seen = true;
      }
    CHECK(seen);
    // a table with a wrong kernel dimension is reported
    PoleTable wrong = reference_pole_table(t);
    wrong.rows[0].kernel_dim += 1;
    CHECK_FALSE(check_pole_kernels(rc, wrong).pass);
  }

  TEST_CASE("constant equations and mutations") {
    const AlgebraType t = T("Dt2", 2);
    auto eq = check_constants(t, block_functions(t));
    CHECK_MESSAGE(eq.pass, eq.witness);
    ConstantTable c = reference_constants(t);
    c.set("beta", c.at("beta") + Scalar(1));
    CHECK_FALSE(check_constants(t, block_functions(t, c)).pass);
    auto mut = check_mutations(t);
    CHECK_MESSAGE(mut.pass, mut.witness);
    CHECK(mut.detail["mutations"].size() == 2 * reference_constants(t).values.size());
    for (const auto& m : mut.detail["mutations"]) CHECK(m.contains("caught_by"));
  }

  TEST_CASE("reports are deterministic and independent of the job count") {
    RCheck rc = build_rcheck_projector_form(T("A2t2odd", 3));
    CheckOptions opt;
    opt.mode = Mode::ExactPoint;
    opt.samples = 2;
    opt.seed = 7;
    const std::string a = lines(run_properties(rc, "all", opt, 1));
    CHECK(a == lines(run_properties(rc, "all", opt, 1)));
    CHECK(a == lines(run_properties(rc, "all", opt, 2)));
    auto u = check_unitarity(rc, opt);
    opt.seed = 8;
    CHECK(u.points != check_unitarity(rc, opt).points);
    auto j = u.to_json();
    CHECK(j["schema"] == "twq.report");
    CHECK(j["version"] == 1);
    CHECK(j["seed"] == 7);
  }

  TEST_CASE("option parsing") {
    CHECK(parse_mode("auto") == Mode::Auto);
    CHECK(parse_mode("exact") == Mode::ExactPoint);
    CHECK(parse_mode("exact-point") == Mode::ExactPoint);
    CHECK(parse_mode("float") == Mode::Float);
    CHECK_THROWS_AS(parse_mode("fast"), std::invalid_argument);
    RCheck rc = build_rcheck_matrix_unit(T("A2t2"));
    CHECK_THROWS_AS(run_properties(rc, "nope", {}), std::invalid_argument);
  }
}
