// qe: command-line front end. Exit codes: 0 success or all checks pass,
// 1 a check failed, 2 bad input.

#include "qe/extension.hpp"
#include "qe/io.hpp"
#include "qe/qesolver.hpp"
#include "qe/sweep.hpp"
#include "qe/warp.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace qe;

namespace {

struct Options {
  std::string input;
  std::string mu = "0";
  std::string phi;
  std::uint64_t seed = 1;
  int points = 10;
  std::string output;
  std::string format = "json";
  std::string kind = "A";
  int count = 50;
  int basis_index = 0;
  bool real = false;
  bool input_coordinates = false;
  bool normalized = false;
  int r = 0;
  double perturb = 0.0;
};

void emit(const Options& o, const std::string& text) {
  if (o.output.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(o.output);
  if (!out) throw InputError(o.output + ": cannot write");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

Rational mu_of(const Options& o) {
  try {
    return parse_rational(o.mu);
  } catch (const std::exception& e) {
    throw InputError(std::string("--mu: ") + e.what());
  }
}

AffineConnection2 load_connection(const Options& o) {
  if (o.input.empty()) throw InputError("--input is required");
  const nlohmann::json j = read_json_file(o.input);
  try {
    return connection_from_json(j);
  } catch (const InputError& e) {
    throw InputError(o.input + ": " + e.what());
  }
}

DeformationTensor load_phi(const Options& o, Context ctx) {
  if (o.phi.empty()) return DeformationTensor::zero(ctx);
  const nlohmann::json j = read_json_file(o.phi);
  try {
    return deformation_from_json(j, ctx);
  } catch (const InputError& e) {
    throw InputError(o.phi + ": " + e.what());
  }
}

std::uint64_t effective_seed(const Options& o) {
  if (const char* env = std::getenv("QE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError("QE_SEED: not an unsigned integer");
    }
  }
  return o.seed;
}

// Real basis in input coordinates, each element signed to be positive at the first probe point.
std::vector<AnsatzFunction> real_input_basis(const EigenspaceDescription& d) {
  EigenspaceDescription in = d;
  in.basis = to_input_coordinates(d);
  in.frame = d.input;
  return realize_real_basis(in);
}

AnsatzFunction pick_solution(const EigenspaceDescription& d, const Options& o, const std::vector<Point4>& pts) {
  const auto basis = real_input_basis(d);
  if (basis.empty()) throw InputError("E(mu) is trivial for this connection; nothing to verify");
  if (o.basis_index < 0 || o.basis_index >= static_cast<int>(basis.size())) {
    throw InputError("--basis-index: out of range 0.." + std::to_string(basis.size() - 1));
  }
  AnsatzFunction f = basis[static_cast<std::size_t>(o.basis_index)];
  const Complex v = eval(f.with_context(Context::Fourd), pts.front());
  if (v.real() < 0.0) f = -f;
  return f;
}

std::string table_classify(const nlohmann::json& j) {
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it) out += it.key() + "\t" + it.value().dump() + "\n";
  return out;
}

std::string table_solve(const EigenspaceDescription& d, const std::vector<AnsatzFunction>& basis) {
  std::string out = "dim\t" + std::to_string(d.dim) + "\ncase\t" + d.case_label + "\n";
  for (const auto& f : basis) out += "basis\t" + to_string(f) + "\n";
  return out;
}

int run_classify(const Options& o) {
  const nlohmann::json j = classify_json(load_connection(o));
  emit(o, o.format == "table" ? table_classify(j) : dump_fixed(j));
  return 0;
}

int run_solve(const Options& o) {
  const AffineConnection2 conn = load_connection(o);
  const EigenspaceDescription d = eigenspace(conn, mu_of(o));
  nlohmann::json j = to_json(d);
  std::vector<AnsatzFunction> shown = d.basis;
  if (o.input_coordinates) {
    shown = to_input_coordinates(d);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : shown) arr.push_back(to_json(f));
    j["basis_input_coordinates"] = arr;
  }
  if (o.real) {
    shown = o.input_coordinates ? real_input_basis(d) : realize_real_basis(d);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : shown) arr.push_back(to_json(f));
    j["real_basis"] = arr;
  }
  emit(o, o.format == "table" ? table_solve(d, shown) : dump_fixed(j));
  return 0;
}

int run_oracle(const Options& o) {
  const AffineConnection2 conn = load_connection(o);
  const Rational mu = mu_of(o);
  const int dim = jet_dimension_oracle(conn, mu);
  const nlohmann::json j = {{"connection", to_json(conn)}, {"mu", format_rational(mu)}, {"oracle_dim", dim}};
  emit(o, o.format == "table" ? "oracle_dim\t" + std::to_string(dim) + "\n" : dump_fixed(j));
  return 0;
}

int run_extend(const Options& o) {
  const AffineConnection2 conn = load_connection(o);
  const DeformationTensor phi = load_phi(o, conn.context());
  const ExtensionMetric m = build_extension(conn, phi);
  const CurvatureField field(m.g, m.ginv);
  const auto pts = probe_points4(effective_seed(o), o.points);
  nlohmann::json g = nlohmann::json::array();
  nlohmann::json ric = nlohmann::json::array();
  for (int a = 0; a < 4; ++a) {
    nlohmann::json row = nlohmann::json::array();
    nlohmann::json rrow = nlohmann::json::array();
    for (int b = 0; b < 4; ++b) {
      row.push_back(to_json(m.g[a][b]));
      rrow.push_back(to_json(field.ricci()[a][b]));
    }
    g.push_back(row);
    ric.push_back(rrow);
  }
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& k : evaluate_parallel(field, pts)) {
    samples.push_back({{"point", k.point},
                       {"scalar", k.scalar},
                       {"weyl_plus", k.weyl_plus},
                       {"weyl_minus", k.weyl_minus},
                       {"weyl_trace", k.weyl_trace}});
  }
  const nlohmann::json j = {{"connection", to_json(conn)}, {"phi", to_json(phi)},    {"metric", g},
                            {"ricci", ric},                {"samples", samples},     {"seed", effective_seed(o)}};
  emit(o, dump_fixed(j));
  return 0;
}

int run_verify(const Options& o) {
  const AffineConnection2 conn = load_connection(o);
  const Rational mu = mu_of(o);
  const DeformationTensor phi = load_phi(o, conn.context());
  const auto pts = probe_points4(effective_seed(o), o.points);
  const EigenspaceDescription d = eigenspace(conn, mu);
  const AnsatzFunction f = pick_solution(d, o, pts);
  VerificationReport rep = verify_theorem_1_1(conn, phi, mu, f, pts);
  if (mu == -1 && f.terms().size() == 1 && rep.pass()) {
    rep.add("conformally Einstein", conformal_einstein_residual(build_extension(conn, phi), f, mu, pts), 1e-8, "exact");
  }
  rep.metadata["seed"] = effective_seed(o);
  rep.metadata["f"] = to_json(f);
  rep.metadata["case"] = d.case_label;
  nlohmann::json j = to_json(rep);
  if (o.format == "table") {
    std::string out;
    for (const auto& c : rep.checks)
      out += (c.pass ? "PASS\t" : "FAIL\t") + c.name + "\t" + std::to_string(c.max_residual) + "\n";
    emit(o, out);
  } else {
    emit(o, dump_fixed(j));
  }
  return rep.pass() ? 0 : 1;
}

int run_warp(const Options& o) {
  const AffineConnection2 conn = load_connection(o);
  const Rational mu = mu_of(o);
  if (mu == 0) throw InputError("--mu: the warped construction needs mu != 0");
  int r = o.r;
  if (r == 0) {
    const Rational rr = Rational(2) / mu;
    if (denominator(rr) != 1 || rr < 1) throw InputError("--mu: 2/mu is not a positive integer fiber dimension");
    r = static_cast<int>(numerator(rr));
  }
  const DeformationTensor phi = load_phi(o, conn.context());
  const auto pts = probe_points4(effective_seed(o), o.points);
  const EigenspaceDescription d = eigenspace(conn, mu);
  const AnsatzFunction f = pick_solution(d, o, pts);
  WarpSpec spec;
  try {
    spec = warp_spec_from_solution(conn, phi, mu, f, r);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  if (o.perturb != 0.0) spec = perturbed(spec, o.perturb);
  const WarpReport rep = warped_einstein_report(spec, pts);
  nlohmann::json j = to_json(rep);
  j["r"] = r;
  j["seed"] = effective_seed(o);
  emit(o, dump_fixed(j));
  return rep.pass ? 0 : 1;
}

int run_sweep(const Options& o) {
  if (o.kind != "A" && o.kind != "B") throw InputError("--kind: expected A or B");
  if (o.normalized && o.kind != "B") throw InputError("--normalized applies to --kind B");
  const auto conns = o.normalized ? random_normalized_type_b(o.count, effective_seed(o))
                                  : random_connections(o.kind == "A" ? Kind::A : Kind::B, o.count, effective_seed(o));
  const auto rows = sweep_parallel(conns, mu_of(o));
  emit(o, to_csv(rows));
  for (const auto& r : rows)
    if (!r.agree()) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Affine quasi-Einstein solver for homogeneous surfaces"};
  app.require_subcommand(1);
  Options o;

  auto input = [&](CLI::App* s) { s->add_option("--input", o.input, "connection JSON file")->required(); };
  auto mu = [&](CLI::App* s) { s->add_option("--mu", o.mu, "eigenvalue as an exact rational, e.g. -1 or 3/4"); };
  auto out = [&](CLI::App* s) {
    s->add_option("--output", o.output, "write to this file instead of stdout");
    s->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"}));
  };
  auto sampling = [&](CLI::App* s) {
    s->add_option("--seed", o.seed, "probe point seed (QE_SEED overrides)");
    s->add_option("--points", o.points, "number of probe points")->check(CLI::PositiveNumber);
    s->add_option("--phi", o.phi, "deformation tensor JSON {phi11, phi12, phi22}");
  };

  auto* classify = app.add_subcommand("classify", "type flags, Ricci tensor, projective flatness");
  input(classify);
  out(classify);

  auto* solve = app.add_subcommand("solve", "basis of E(mu)");
  input(solve);
  mu(solve);
  out(solve);
  solve->add_flag("--real", o.real, "add a real basis");
  solve->add_flag("--input-coordinates", o.input_coordinates, "map Type B bases back to input coordinates");

  auto* oracle = app.add_subcommand("oracle", "dimension of E(mu) from the prolonged system");
  input(oracle);
  mu(oracle);
  out(oracle);

  auto* extend = app.add_subcommand("extend", "deformed Riemannian extension and its curvature at probe points");
  input(extend);
  out(extend);
  sampling(extend);

  auto* verify = app.add_subcommand("verify", "quasi-Einstein, isotropy, Weyl and Ricci checks on T*M");
  input(verify);
  mu(verify);
  out(verify);
  sampling(verify);
  verify->add_option("--basis-index", o.basis_index, "which real basis element of E(mu) to use");

  auto* warp = app.add_subcommand("warp", "warped product Einstein check with phi = e^{-F/r}");
  input(warp);
  mu(warp);
  out(warp);
  sampling(warp);
  warp->add_option("--basis-index", o.basis_index, "which real basis element of E(mu) to use");
  warp->add_option("--r", o.r, "fiber dimension (default 2/mu)");
  warp->add_option("--perturb", o.perturb, "add this multiple of x2 to F (negative control)");

  auto* sweep = app.add_subcommand("sweep",
                                   "random non-flat connections, classifier vs oracle, as CSV with columns\n"
                                   "index,kind,c111,c112,c121,c122,c221,c222,mu,dim,oracle_dim,agree,case");
  sweep->add_option("--kind", o.kind, "A or B");
  sweep->add_flag("--normalized", o.normalized, "draw Type B directly in normal form");
  sweep->add_option("--count", o.count, "number of connections")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", o.seed, "generator seed (QE_SEED overrides)");
  mu(sweep);
  sweep->add_option("--output", o.output, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify) return run_classify(o);
    if (*solve) return run_solve(o);
    if (*oracle) return run_oracle(o);
    if (*extend) return run_extend(o);
    if (*verify) return run_verify(o);
    if (*warp) return run_warp(o);
    if (*sweep) return run_sweep(o);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
