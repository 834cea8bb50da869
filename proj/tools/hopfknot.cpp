// hopfknot command-line front end.
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "hopfknot/double.hpp"
#include "hopfknot/heegaard.hpp"
#include "hopfknot/integrals.hpp"
#include "hopfknot/io.hpp"
#include "hopfknot/link.hpp"
#include "hopfknot/zoo.hpp"

using namespace hopfknot;
using io::json;

namespace {

enum Exit { Ok = 0, VerificationFailed = 1, InputError = 2 };

struct Run {
  json report;
  bool json_out = false;
  bool failed = false;

  void input(const std::string& path) { report["inputs"][path] = io::content_hash(io::read_text_file(path)); }
  void result(const std::string& key, json v) { report["results"][key] = std::move(v); }
  void check(const std::string& key, bool ok) {
    report["checks"][key] = ok;
    if (!ok) failed = true;
  }
};

json algebra_file(Run& run, const std::string& path) {
  run.input(path);
  return io::read_json_file(path);
}

AlgebraPtr load_algebra(Run& run, const std::string& path) {
  return make_algebra(io::algebra_from_json(algebra_file(run, path)));
}

/// Ribbon data either from D(H) built here or from the file's extension block.
RibbonData load_ribbon(Run& run, const std::string& path, bool build) {
  json j = algebra_file(run, path);
  if (build) return ribbon_data(build_double(make_algebra(io::algebra_from_json(j))));
  return io::ribbon_from_json(j);
}

json linking_json(const LinkingData& L) { return {{"matrix", L.matrix}, {"signature", L.signature}}; }

void print_human(const json& j, const std::string& indent = "") {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      std::cout << indent << k << ":\n";
      print_human(v, indent + "  ");
    } else {
      std::cout << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, path + ": cannot write");
  out << j.dump(2) << "\n";
}

void cmd_verify_hopf(Run& run, const std::string& path) {
  AlgebraPtr H = load_algebra(run, path);
  AxiomReport r = verify_hopf_axioms(*H);
  for (const auto& a : r.results) {
    run.check(a.name, a.passed);
    if (!a.passed) run.result("witness_" + a.name, a.witness);
  }
  run.result("dim", H->dim());
  run.result("field", H->field()->describe());
  if (H->has_pivot()) {
    run.result("pivotal", is_pivotal(*H));
    run.result("spherical", verify_spherical(*H));
  }
}

void cmd_integrals(Run& run, const std::string& path, bool check) {
  json j = algebra_file(run, path);
  AlgebraPtr H = make_algebra(io::algebra_from_json(j));
  if (check) {
    AxiomReport r = verify_hopf_axioms(*H);
    run.check("hopf_axioms", r.all_passed());
  }
  IntegralData I = compute_integrals(*H);
  run.result("lambda", io::to_json(I.lambda));
  run.result("Lambda", io::to_json(I.Lambda));
  run.result("alpha", io::to_json(I.alpha));
  run.result("a", io::to_json(I.a));
  run.result("unimodular", is_unimodular(*H, I));
  const bool pivotal = H->has_pivot() && is_pivotal(*H);
  run.result("pivotal", pivotal);
  const bool spherical = pivotal && verify_spherical(*H, I);
  run.result("spherical", spherical);
  if (spherical) run.result("mu", io::to_json(symmetrized_integral(*H, I.lambda, I)));
  if (j.contains("extension") && j["extension"].contains("R")) {
    RMatrix R = io::rmatrix_from_json(j["extension"]["R"], H->field(), H->dim());
    run.result("quasitriangular", verify_quasitriangular(*H, R).all_passed());
    RibbonReport rr = verify_ribbon(*H, R);
    run.result("ribbon", rr.central && rr.antipode_fixed && rr.counit_one);
  }
}

void cmd_double(Run& run, const std::string& path, const std::string& out, bool check) {
  AlgebraPtr H = load_algebra(run, path);
  DrinfeldDouble D = build_double(H);
  run.result("dim", D.algebra->dim());
  run.result("theta", io::to_json(D.theta));
  run.result("gD", io::to_json(D.gD));
  DeltaConstants c = delta_constants(D);
  run.result("delta", io::to_json(c.delta));
  if (check) {
    DoubleReport r = verify_double(D);
    run.check("hopf_axioms", r.axioms.all_passed());
    run.check("quasitriangular", r.quasitriangular.all_passed());
    run.check("ribbon", r.ribbon.central && r.ribbon.antipode_fixed && r.ribbon.counit_one);
    run.check("pivot_square", r.pivot_square);
    run.check("r_inverse", r.r_inverse);
    run.check("mu_matches", r.mu_matches);
    run.check("delta_is_one", c.delta.is_one());
  }
  if (!out.empty()) {
    write_file(out, io::double_to_json(D));
    run.result("written", out);
  }
}

void cmd_hkr(Run& run, const std::string& link_path, const std::string& alg, bool build) {
  run.input(link_path);
  MorseLink L = io::link_from_json(io::read_json_file(link_path));
  RibbonData rd = load_ribbon(run, alg, build);
  HkrResult r = hkr_invariant(L, rd);
  run.result("hkr", io::to_json(r.value));
  run.result("bead_sum", io::to_json(r.bead_sum));
  run.result("linking", linking_json(r.linking));
}

io::HeegaardInput load_heegaard(Run& run, const std::string& path) {
  run.input(path);
  return io::heegaard_from_json(io::read_json_file(path));
}

void cmd_chromatic(Run& run, const std::string& path, const std::string& alg) {
  FlatHeegaardDiagram D = io::flat_of(load_heegaard(run, path));
  AlgebraPtr H = load_algebra(run, alg);
  run.result("f_double_prime", io::to_json(f_double_prime(D, *H)));
}

void cmd_compare(Run& run, const std::string& path, const std::string& alg) {
  io::HeegaardInput in = load_heegaard(run, path);
  const auto* P = std::get_if<PlanarHeegaard>(&in);
  if (!P)
    throw Error(ErrorCode::NotNormalForm, path + ": compare needs a planar diagram to build the surgery link");
  AlgebraPtr H = load_algebra(run, alg);
  Scalar f = f_double_prime(to_flat_diagram(*P), *H);
  MorseLink L = to_surgery_link(*P);
  HkrResult h = hkr_invariant(L, ribbon_data(build_double(H)));
  run.result("f_double_prime", io::to_json(f));
  run.result("hkr_double", io::to_json(h.value));
  run.result("linking", linking_json(h.linking));
  run.check("equal", f == h.value);
}

void cmd_zoo(Run& run, const std::string& name, int r, const std::string& c, const std::string& out) {
  const Field* Q = Field::rationals();
  HopfData d;
  if (name == "group-z2") {
    d = group_algebra(cyclic_group(2), Q);
  } else if (name == "group-s3") {
    d = group_algebra(symmetric_group_s3(), Q);
  } else if (name == "uq-sl2") {
    d = small_quantum_sl2(r, Scalar(Q, io::parse_rational(json(c), "--c")));
  } else if (name == "sweedler") {
    d = sweedler_algebra(Q);
  } else {
    throw Error(ErrorCode::ParseError, "zoo: unknown algebra \"" + name + "\"");
  }
  json j = io::algebra_to_json(d);
  run.result("dim", d.dim);
  run.result("field", d.field->describe());
  if (out.empty()) {
    run.result("algebra", j);
  } else {
    write_file(out, j);
    run.result("written", out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hopf algebra invariants of links and 3-manifolds"};
  app.require_subcommand(1);
  Run run;
  bool check = false, use_double = false;
  std::string input, algebra, out, zoo_name, zoo_c = "1";
  int zoo_r = 2;

  auto* verify = app.add_subcommand("verify-hopf", "check the Hopf algebra axioms");
  verify->add_option("algebra", input)->required();
  auto* integrals = app.add_subcommand("integrals", "integrals and distinguished group-likes");
  integrals->add_option("algebra", input)->required();
  auto* dbl = app.add_subcommand("double", "build the Drinfeld double");
  dbl->add_option("algebra", input)->required();
  dbl->add_option("-o", out, "write the double as algebra JSON");
  auto* hkr = app.add_subcommand("hkr", "HKR invariant of a surgery link");
  hkr->add_option("link", input)->required();
  hkr->add_option("--algebra", algebra)->required();
  hkr->add_flag("--double", use_double, "build D(H) from the algebra first");
  auto* chrom = app.add_subcommand("chromatic", "F'' of a Heegaard diagram");
  chrom->add_option("heegaard", input)->required();
  chrom->add_option("--algebra", algebra)->required();
  auto* cmp = app.add_subcommand("compare", "F'' with H against HKR with D(H)");
  cmp->add_option("heegaard", input)->required();
  cmp->add_option("--algebra", algebra)->required();
  auto* zoo = app.add_subcommand("zoo", "emit a standard algebra");
  zoo->add_option("name", zoo_name, "group-z2 | group-s3 | uq-sl2 | sweedler")->required();
  zoo->add_option("--r", zoo_r, "uq-sl2: q is a primitive 2r-th root of unity");
  zoo->add_option("--c", zoo_c, "uq-sl2: integral normalization");
  zoo->add_option("-o", out, "output path");
  for (auto* sub : app.get_subcommands({})) {
    sub->add_flag("--json", run.json_out, "machine-readable report");
    sub->add_flag("--check", check, "run full invariant suites");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? Ok : InputError;
  }

  json cmdline = json::array();
  for (int i = 1; i < argc; ++i) cmdline.push_back(argv[i]);
  run.report["command"] = cmdline;
  run.report["inputs"] = json::object();
  const auto start = std::chrono::steady_clock::now();
  try {
    if (*verify) cmd_verify_hopf(run, input);
    if (*integrals) cmd_integrals(run, input, check);
    if (*dbl) cmd_double(run, input, out, check);
    if (*hkr) cmd_hkr(run, input, algebra, use_double);
    if (*chrom) cmd_chromatic(run, input, algebra);
    if (*cmp) cmd_compare(run, input, algebra);
    if (*zoo) cmd_zoo(run, zoo_name, zoo_r, zoo_c, out);
  } catch (const std::exception& e) {
    std::cerr << "error [" << app.get_subcommands().front()->get_name() << "] " << e.what() << "\n";
    return InputError;
  }
  run.report["timing_ms"] =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  run.report["passed"] = !run.failed;
  if (run.json_out)
    std::cout << run.report.dump(2) << "\n";
  else
    print_human(run.report);
  return run.failed ? VerificationFailed : Ok;
}
