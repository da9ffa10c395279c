#include "qe/sweep.hpp"
#include "qe/qesolver.hpp"

#include <random>
#include <sstream>

namespace qe {

std::vector<AffineConnection2> random_connections(Kind kind, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(-3, 3);
  std::vector<AffineConnection2> out;
  while (static_cast<int>(out.size()) < count) {
    std::array<Rational, 6> c;
    for (auto& x : c) x = u(rng);
    const AffineConnection2 conn = AffineConnection2::make(kind, c);
    if (!ricci(conn).flat()) out.push_back(conn);
  }
  return out;
}

std::vector<AffineConnection2> random_normalized_type_b(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(-3, 3);
  std::uniform_int_distribution<int> e(-1, 1);
  std::vector<AffineConnection2> out;
  while (static_cast<int>(out.size()) < count) {
    std::array<Rational, 6> c;
    for (auto& x : c) x = u(rng);
    c[4] = e(rng);
    if (c[4] != 0) c[2] = 0;
    const AffineConnection2 conn = AffineConnection2::make(Kind::B, c);
    if (!ricci(conn).flat()) out.push_back(conn);
  }
  return out;
}

SweepRow sweep_one(const AffineConnection2& conn, const Rational& mu) {
  SweepRow row;
  row.conn = conn;
  row.mu = mu;
  try {
    const EigenspaceDescription d = eigenspace(conn, mu);
    row.dim = d.dim;
    row.case_label = d.case_label;
    row.oracle_dim = jet_dimension_oracle(conn, mu);
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<SweepRow> sweep_serial(const std::vector<AffineConnection2>& conns, const Rational& mu) {
  std::vector<SweepRow> out;
  out.reserve(conns.size());
  for (const auto& c : conns) out.push_back(sweep_one(c, mu));
  return out;
}

std::vector<SweepRow> sweep_parallel(const std::vector<AffineConnection2>& conns, const Rational& mu) {
  std::vector<SweepRow> out(conns.size());
  const long n = static_cast<long>(conns.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) out[i] = sweep_one(conns[i], mu);
  return out;
}

std::string to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "index,kind,c111,c112,c121,c122,c221,c222,mu,dim,oracle_dim,agree,case\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    os << i << ',' << (r.conn.kind == Kind::A ? 'A' : 'B');
    for (const auto& c : r.conn.c) os << ',' << c.str();
    os << ',' << format_rational(r.mu) << ',' << r.dim << ',' << r.oracle_dim << ',' << (r.agree() ? "true" : "false")
       << ',' << '"' << (r.error.empty() ? r.case_label : "error: " + r.error) << '"' << '\n';
  }
  return os.str();
}

}  // namespace qe
