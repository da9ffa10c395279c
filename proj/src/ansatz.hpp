#pragma once

#include "qe/surface.hpp"

#include <array>
#include <vector>

namespace qe {

/// Exponents l with e^{l.x} in E_C(mu) for a Type A connection.
std::vector<std::array<Complex, 2>> type_a_exponents(const AffineConnection2& conn, const Rational& mu);
/// Exact test for a nonzero l with e^{l.x} in E(0).
bool has_nonconstant_exponential_kernel(const AffineConnection2& conn);
/// Powers a with (x1)^a in E_C(mu) for a Type B connection.
std::vector<Complex> type_b_powers(const AffineConnection2& conn, const Rational& mu);

}  // namespace qe
