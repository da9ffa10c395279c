#pragma once

#include "qe/surface.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qe {

/// Non-flat connections with integer coefficients in [-3, 3], drawn in order
/// from mt19937_64(seed).
std::vector<AffineConnection2> random_connections(Kind kind, int count, std::uint64_t seed);

/// Type B already in normal form: C_22^1 in {-1, 0, 1}, C_12^1 = 0 unless
/// C_22^1 = 0, remaining coefficients integers in [-3, 3]; non-flat.
std::vector<AffineConnection2> random_normalized_type_b(int count, std::uint64_t seed);

struct SweepRow {
  AffineConnection2 conn;
  Rational mu;
  int dim = -1;
  int oracle_dim = -1;
  std::string case_label;
  std::string error;  // set when either side threw
  bool agree() const { return error.empty() && dim == oracle_dim; }
};

SweepRow sweep_one(const AffineConnection2& conn, const Rational& mu);
/// Reference implementation.
std::vector<SweepRow> sweep_serial(const std::vector<AffineConnection2>& conns, const Rational& mu);
/// OpenMP over rows; output order matches the input.
std::vector<SweepRow> sweep_parallel(const std::vector<AffineConnection2>& conns, const Rational& mu);

/// Columns: index,kind,c111,c112,c121,c122,c221,c222,mu,dim,oracle_dim,agree,case
std::string to_csv(const std::vector<SweepRow>& rows);

}  // namespace qe
