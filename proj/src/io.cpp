#include "qe/io.hpp"
#include "qe/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace qe {

namespace {

const char* kCoeffKeys[6] = {"111", "112", "121", "122", "221", "222"};

Surd coeff_from_json(const nlohmann::json& v, const std::string& key) {
  try {
    if (v.is_string()) return Surd::parse(v.get<std::string>());
    if (v.is_number_integer()) return Surd(Rational(v.get<long long>()));
  } catch (const std::exception& e) {
    throw InputError("coeffs." + key + ": " + e.what());
  }
  throw InputError("coeffs." + key + ": expected a rational string such as \"-3/2\"");
}

void write(const nlohmann::json& j, std::string& out, int indent, int depth) {
  const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
  const char* sep = indent > 0 ? ": " : ":";
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += pad + nlohmann::json(it.key()).dump() + sep;
        write(it.value(), out, indent, depth + 1);
      }
      out += close + '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        out += pad;
        write(j[i], out, indent, depth + 1);
      }
      out += close + ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

void VerificationReport::add(std::string name, double residual, double tol, std::string path) {
  checks.push_back({std::move(name), residual, tol, residual <= tol, std::move(path)});
}

void VerificationReport::fail(std::string name, std::string why) {
  checks.push_back({std::move(name), 0.0, 0.0, false, ""});
  metadata["error"] = std::move(why);
}

bool VerificationReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j = {{"name", c.name}, {"max_residual", c.max_residual}, {"tolerance", c.tolerance}, {"pass", c.pass}};
    if (!c.path.empty()) j["path"] = c.path;
    checks.push_back(j);
  }
  return {{"checks", checks}, {"pass", r.pass()}, {"metadata", r.metadata}};
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

AffineConnection2 connection_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InputError("connection: expected an object");
  if (!j.contains("kind") || !j["kind"].is_string()) throw InputError("kind: expected \"A\" or \"B\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind != "A" && kind != "B") throw InputError("kind: expected \"A\" or \"B\", got \"" + kind + "\"");
  AffineConnection2 out;
  out.kind = kind == "A" ? Kind::A : Kind::B;
  if (!j.contains("coeffs") || !j["coeffs"].is_object()) throw InputError("coeffs: expected an object");
  for (auto it = j["coeffs"].begin(); it != j["coeffs"].end(); ++it) {
    const auto* k = std::find(std::begin(kCoeffKeys), std::end(kCoeffKeys), it.key());
    if (k == std::end(kCoeffKeys)) throw InputError("coeffs." + it.key() + ": unknown index, expected one of 111 112 121 122 221 222");
    out.c[static_cast<std::size_t>(k - std::begin(kCoeffKeys))] = coeff_from_json(it.value(), it.key());
  }
  return out;
}

nlohmann::json to_json(const AffineConnection2& conn) {
  nlohmann::json coeffs = nlohmann::json::object();
  for (int i = 0; i < 6; ++i) coeffs[kCoeffKeys[i]] = conn.c[i].str();
  return {{"kind", conn.kind == Kind::A ? "A" : "B"}, {"coeffs", coeffs}};
}

DeformationTensor deformation_from_json(const nlohmann::json& j, Context ctx) {
  if (!j.is_object()) throw InputError("phi: expected an object with phi11, phi12, phi22");
  DeformationTensor out = DeformationTensor::zero(ctx);
  for (auto it = j.begin(); it != j.end(); ++it) {
    AnsatzFunction* slot = it.key() == "phi11" ? &out.phi11 : it.key() == "phi12" ? &out.phi12 : it.key() == "phi22" ? &out.phi22 : nullptr;
    if (!slot) throw InputError("phi." + it.key() + ": unknown entry");
    try {
      *slot = function_from_json(it.value(), ctx);
    } catch (const std::exception& e) {
      throw InputError("phi." + it.key() + ": " + e.what());
    }
  }
  return out;
}

nlohmann::json to_json(const DeformationTensor& phi) {
  return {{"phi11", to_json(phi.phi11)}, {"phi12", to_json(phi.phi12)}, {"phi22", to_json(phi.phi22)}};
}

nlohmann::json to_json(const NormalizationRecord& rec) {
  return {{"scale", rec.scale.str()}, {"shear", format_rational(rec.shear)}, {"epsilon", rec.epsilon}};
}

NormalizationRecord normalization_from_json(const nlohmann::json& j) {
  NormalizationRecord rec;
  rec.scale = Surd::parse(j.at("scale").get<std::string>());
  rec.shear = parse_rational(j.at("shear").get<std::string>());
  rec.epsilon = j.at("epsilon").get<int>();
  return rec;
}

nlohmann::json to_json(const EigenspaceDescription& d) {
  nlohmann::json basis = nlohmann::json::array();
  for (const auto& f : d.basis) basis.push_back(to_json(f));
  nlohmann::json out = {{"dim", d.dim},
                        {"case", d.case_label},
                        {"mu", format_rational(d.mu)},
                        {"basis", basis},
                        {"input", to_json(d.input)},
                        {"frame", to_json(d.frame)},
                        {"normalization", to_json(d.normalization)}};
  return out;
}

EigenspaceDescription eigenspace_from_json(const nlohmann::json& j) {
  EigenspaceDescription d;
  d.dim = j.at("dim").get<int>();
  d.case_label = j.at("case").get<std::string>();
  d.mu = parse_rational(j.at("mu").get<std::string>());
  d.input = connection_from_json(j.at("input"));
  d.frame = connection_from_json(j.at("frame"));
  d.normalization = normalization_from_json(j.at("normalization"));
  for (const auto& f : j.at("basis")) d.basis.push_back(function_from_json(f, d.frame.context()));
  return d;
}

nlohmann::json classify_json(const AffineConnection2& conn) {
  const RicciData r = ricci(conn);
  auto mat = [](const Mat2& m) {
    return nlohmann::json::array({nlohmann::json::array({m[0][0].str(), m[0][1].str()}),
                                  nlohmann::json::array({m[1][0].str(), m[1][1].str()})});
  };
  const TypeFlags f = type_flags(conn);
  const ProjectiveFlatness spf = strongly_projectively_flat(conn);
  nlohmann::json out = {{"connection", to_json(conn)},
                        {"ricci", mat(r.rho)},
                        {"ricci_symmetric", mat(r.rho_s)},
                        {"ricci_rank", r.rank},
                        {"ricci_symmetric_rank", r.rank_s},
                        {"flat", f.flat},
                        {"also_type_a", f.is_also_type_a},
                        {"also_type_c", f.is_also_type_c},
                        {"strongly_projectively_flat", spf.flat},
                        {"projective_case", spf.family}};
  if (conn.kind == Kind::B) {
    const Normalized n = normalize_type_b(conn);
    out["normalized"] = to_json(n.conn);
    out["normalization"] = to_json(n.record);
  }
  return out;
}

std::string dump_fixed(const nlohmann::json& j) {
  std::string out;
  write(j, out, 2, 0);
  return out;
}

}  // namespace qe
