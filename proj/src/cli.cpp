#include "twq/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "twq/jsonio.hpp"
#include "twq/qchar.hpp"
#include "twq/rep.hpp"
#include "twq/rmatrix.hpp"
#include "twq/verifier.hpp"

namespace twq {

namespace {

struct Config {
  std::string type;
  int r = 0;
  std::string form = "projector";
  std::string mode = "auto";
  int samples = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "json";
  int jobs = 1;
  std::string prop = "all";
  bool poles = false;
  std::optional<double> q0, z0;
};

bool needs_rank(const std::string& tag) { return tag == "A2t2odd" || tag == "A2t1odd" || tag == "A2t2even" || tag == "Dt2"; }

Json sparse_json(const ScalarMatrix& m) {
  Json a = Json::array();
  for (const auto& [i, j, x] : export_sparse(m)) a.push_back(Json::array({i, j, x}));
  return a;
}

std::string rep_json(const Representation& rep) {
  Json j;
  j["schema"] = "twq.rep";
  j["version"] = 1;
  j["type"] = rep.type.tag();
  j["r"] = rep.rank();
  j["d"] = rep.dim;
  j["weights"] = rep.weight;
  j["trivial"] = rep.trivial;
  j["kexp"] = rep.kexp;
  Json gens = Json::array();
  for (int i = 0; i <= rep.rank(); ++i) gens.push_back({{"node", i}, {"E", sparse_json(rep.e(i))}});
  j["generators"] = gens;
  return dump17(j);
}

std::string rep_text(const Representation& rep) {
  std::ostringstream os;
  os << "# " << rep.type.display() << " first fundamental module, d=" << rep.dim << "\n";
  for (int i = 0; i <= rep.rank(); ++i)
    for (const auto& [a, b, x] : export_sparse(rep.e(i))) os << "E" << i << " " << a << " " << b << " " << x << "\n";
  return os.str();
}

std::string rmatrix_text(const RCheck& rc) {
  std::ostringstream os;
  os << "# " << rc.type.display() << " R(z) = N(z)/D(z), d=" << rc.d << ", form " << route_name(rc.route) << "\n";
  os << "D " << rc.D().str() << "\n";
  for (int i = 0; i < rc.N.rows(); ++i)
    for (const auto& [j, p] : rc.N.row(i)) os << "N " << i << " " << j << " " << p.str() << "\n";
  return os.str();
}

std::string qchar_json(const QCharacter& c) {
  Json j;
  j["schema"] = "twq.qchar";
  j["version"] = 1;
  j["type"] = c.type().tag();
  j["r"] = c.type().rank();
  j["dim"] = c.size();
  Json terms = Json::array();
  for (const auto& [m, k] : c.terms()) terms.push_back(Json::array({m.str(), k}));
  j["terms"] = terms;
  return dump17(j);
}

/// ratios a/b of the scan whose product has a dominant monomial besides 1_a 1_b
std::string scan_json(const AlgebraType& t) {
  Json j;
  j["schema"] = "twq.scan";
  j["version"] = 1;
  j["type"] = t.tag();
  j["r"] = t.rank();
  j["bound"] = scan_bound(t);
  Json rows = Json::array();
  const bool pm = t.sigma_fixed(1);
  for (int k = 1; k <= scan_bound(t); ++k)
    for (int e = 0; e < 6; ++e) {
      if (pm && e >= t.omega_e()) continue;
      const SpectralPoint z(e, k);
      auto dom = dominant_monomials_of_product(t, z);
      if (dom.size() < 2) continue;
      Json ms = Json::array();
      for (const auto& d : dom) ms.push_back(Json::array({d.m.str(), d.mult}));
      rows.push_back({{"e", e}, {"k", k}, {"dominant", ms}});
    }
  j["rows"] = rows;
  return dump17(j);
}

std::string summary_table(const std::vector<VerificationReport>& reps) {
  std::ostringstream os;
  os << std::left << std::setw(16) << "property" << std::setw(13) << "mode" << std::setw(8) << "points"
     << std::setw(7) << "result" << "witness\n";
  for (const auto& r : reps) {
    std::string w = r.witness.size() > 100 ? r.witness.substr(0, 97) + "..." : r.witness;
    os << std::left << std::setw(16) << r.property << std::setw(13) << r.mode << std::setw(8) << r.points.size()
       << std::setw(7) << (r.pass ? "pass" : "FAIL") << w << "\n";
  }
  return os.str();
}

RCheck build(const AlgebraType& t, const std::string& form) {
  if (form == "projector") return build_rcheck_projector_form(t);
  const Family f = t.family();
  if (f != Family::A2t2 && f != Family::A2t2odd && f != Family::A2t2even)
    throw UsageError("--form matrix-unit is available for A2t2, A2t2odd and A2t2even only");
  return build_rcheck_matrix_unit(t);
}

int dispatch(const std::string& cmd, const Config& c, std::ostream& out, std::ostream& err) {
  const AlgebraType t = resolve_type(c.type, c.r);
  std::ostringstream art;
  std::ostringstream sum;
  int status = 0;
  if (cmd == "rep") {
    const Representation rep = build_rep(t);
    art << (c.format == "json" ? rep_json(rep) + "\n" : rep_text(rep));
    sum << rep.type.display() << ": d=" << rep.dim << "\n";
  } else if (cmd == "rmatrix") {
    if (c.q0.has_value() != c.z0.has_value()) throw UsageError("--q0 and --z0 go together");
    const RCheck rc = build(t, c.form);
    if (c.q0)
      art << rcheck_float_json(rc, *c.q0, *c.z0) << "\n";
    else
      art << (c.format == "json" ? rcheck_to_json(rc) + "\n" : rmatrix_text(rc));
    sum << rc.type.display() << ": d=" << rc.d << ", " << rc.d * rc.d << " rows, " << rc.N.nnz()
        << " nonzero entries, deg D=" << rc.D().degree() << "\n";
  } else if (cmd == "verify") {
    const auto& names = property_names();
    if (c.prop != "all" && std::find(names.begin(), names.end(), c.prop) == names.end())
      throw UsageError("unknown property '" + c.prop + "'");
    CheckOptions opt;
    opt.mode = parse_mode(c.mode);
    opt.samples = c.samples;
    opt.seed = c.seed;
    const RCheck rc = build(t, c.form);
    const auto reps = run_properties(rc, c.prop, opt, c.jobs);
    const std::string table = summary_table(reps);
    if (c.format == "json")
      for (const auto& r : reps) art << dump17(r.to_json()) << "\n";
    else
      art << table;
    if (c.format == "json") sum << table;
    for (const auto& r : reps)
      if (!r.pass) status = 1;
  } else if (cmd == "qchar") {
    const QCharacter chi = fundamental_character(t);
    if (c.format == "json") {
      art << qchar_json(chi) << "\n";
      if (c.poles) art << scan_json(t) << "\n" << derive_pole_table(t).to_json() << "\n";
    } else {
      art << "# chi_q(1_a) for " << t.display() << ", " << chi.size() << " terms\n";
      for (const auto& [m, k] : chi.terms()) art << (k == 1 ? "" : std::to_string(k) + " ") << m.str() << "\n";
      if (c.poles) art << derive_pole_table(t).to_text();
    }
    sum << t.display() << ": " << chi.size() << " terms";
    if (c.poles) sum << ", " << derive_pole_table(t).rows.size() << " pole rows";
    sum << "\n";
  }
  if (c.out.empty()) {
    out << art.str();
    err << sum.str();
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw UsageError("cannot open " + c.out + " for writing");
    f << art.str();
    out << sum.str();
  }
  return status;
}

}  // namespace

AlgebraType resolve_type(const std::string& tag, int r) {
  if (tag.empty()) throw UsageError("--type is required");
  if (needs_rank(tag) && r <= 0) throw UsageError("--r is required for " + tag);
  try {
    if (tag == "A2t2" && r > 1) return AlgebraType::parse("A2t2even", r);
    AlgebraType t = AlgebraType::parse(tag, r);
    if ((tag == "E6t2" || tag == "D4t3") && r != 0 && r != t.rank())
      throw UsageError(tag + " has rank " + std::to_string(t.rank()));
    return t;
  } catch (const UsageError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

int default_jobs() {
  if (const char* v = std::getenv("TWQ_JOBS")) {
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (end != v && *end == '\0' && n > 0) return static_cast<int>(std::min(n, 256L));
  }
  return 1;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"twisted quantum affine R-matrices: build, export and verify", "twq"};
  app.require_subcommand(1);
  Config c;
  c.jobs = default_jobs();
  const std::vector<std::string> forms{"matrix-unit", "projector"};
  const std::vector<std::string> modes{"auto", "symbolic", "exact-point", "exact", "float"};
  const std::vector<std::string> formats{"json", "text"};
  auto common = [&](CLI::App* s) {
    s->add_option("--type", c.type, "A2t2odd, A2t2even, A2t2, Dt2, E6t2 or D4t3")->required();
    s->add_option("--r", c.r, "rank |I^sigma| (required for the families)");
    s->add_option("--out", c.out, "write the artifact to this file");
    s->add_option("--format", c.format, "json or text")->check(CLI::IsMember(formats));
  };
  CLI::App* rep = app.add_subcommand("rep", "build the first fundamental module");
  common(rep);
  CLI::App* rmx = app.add_subcommand("rmatrix", "build R(z) and export it");
  common(rmx);
  rmx->add_option("--form", c.form, "matrix-unit or projector")->check(CLI::IsMember(forms));
  rmx->add_option("--q0", c.q0, "float export: q value");
  rmx->add_option("--z0", c.z0, "float export: z value");
  CLI::App* ver = app.add_subcommand("verify", "run property checks on R(z)");
  common(ver);
  ver->add_option("--form", c.form, "matrix-unit or projector")->check(CLI::IsMember(forms));
  ver->add_option("--prop", c.prop, "property name or all");
  ver->add_option("--mode", c.mode, "auto, symbolic, exact-point or float")->check(CLI::IsMember(modes));
  ver->add_option("--samples", c.samples, "sample points (0: property default)")->check(CLI::NonNegativeNumber);
  ver->add_option("--seed", c.seed, "sampler seed");
  ver->add_option("--jobs", c.jobs, "concurrent checks (default TWQ_JOBS or 1)")->check(CLI::PositiveNumber);
  CLI::App* qc = app.add_subcommand("qchar", "q-character of the fundamental module");
  common(qc);
  qc->add_flag("--poles", c.poles, "add the dominant-monomial scan and the pole table");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return 2;
  }
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return dispatch(cmd, c, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace twq
