#pragma once

#include "qe/extension.hpp"
#include "qe/qesolver.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace qe {

/// Malformed input; the message names the offending file and field.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(const std::string& path);

/// {"kind": "A"|"B", "coeffs": {"111": "p/q", ...}}; missing coefficients are 0.
AffineConnection2 connection_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AffineConnection2& conn);

/// {"phi11": f, "phi12": f, "phi22": f} with f a term list; missing entries are 0.
DeformationTensor deformation_from_json(const nlohmann::json& j, Context ctx);
nlohmann::json to_json(const DeformationTensor& phi);

nlohmann::json to_json(const NormalizationRecord& rec);
NormalizationRecord normalization_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EigenspaceDescription& d);
EigenspaceDescription eigenspace_from_json(const nlohmann::json& j);

/// Type flags, Ricci data and the projective flatness case.
nlohmann::json classify_json(const AffineConnection2& conn);

/// Fixed 17-significant-digit rendering of every number in the document.
std::string dump_fixed(const nlohmann::json& j);

}  // namespace qe
