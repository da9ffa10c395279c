#include <doctest.h>

#include "qe/io.hpp"
#include "qe/sweep.hpp"

#include <random>

using namespace qe;

TEST_CASE("connection JSON") {
  const auto j = nlohmann::json::parse(R"({"kind":"B","coeffs":{"111":"-1","122":"-1","221":"1"}})");
  const auto c = connection_from_json(j);
  CHECK(c == AffineConnection2::make(Kind::B, {-1, 0, 0, -1, 1, 0}));
  CHECK(connection_from_json(to_json(c)) == c);

  const auto s = normalize_type_b(AffineConnection2::make(Kind::B, {1, 1, 0, 0, 2, 0})).conn;
  CHECK(connection_from_json(to_json(s)) == s);

  CHECK_THROWS_AS(connection_from_json(nlohmann::json::parse(R"({"kind":"C","coeffs":{}})")), InputError);
  CHECK_THROWS_AS(connection_from_json(nlohmann::json::parse(R"({"kind":"A","coeffs":{"131":"1"}})")), InputError);
  CHECK_THROWS_AS(connection_from_json(nlohmann::json::parse(R"({"kind":"A","coeffs":{"111":1.5}})")), InputError);
  CHECK_THROWS_AS(connection_from_json(nlohmann::json::parse(R"({"kind":"A","coeffs":{"111":"x"}})")), InputError);
  CHECK_THROWS_AS(read_json_file("/nonexistent/conn.json"), InputError);
}

TEST_CASE("eigenspace JSON round trip") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> u(-3, 3);
  for (int n = 0; n < 60; ++n) {
    std::array<Rational, 6> c;
    for (auto& x : c) x = u(rng);
    const auto conn = AffineConnection2::make(n % 2 ? Kind::A : Kind::B, c);
    const auto d = eigenspace(conn, n % 3 == 0 ? Rational(-1) : Rational(n % 5, 2));
    const auto back = eigenspace_from_json(nlohmann::json::parse(dump_fixed(to_json(d))));
    CHECK(back.dim == d.dim);
    CHECK(back.case_label == d.case_label);
    CHECK(back.mu == d.mu);
    CHECK(back.input == d.input);
    CHECK(back.frame == d.frame);
    CHECK(back.normalization.scale == d.normalization.scale);
    CHECK(back.normalization.shear == d.normalization.shear);
    REQUIRE(back.basis.size() == d.basis.size());
    for (std::size_t i = 0; i < d.basis.size(); ++i) {
      CHECK(back.basis[i].terms().size() == d.basis[i].terms().size());
      CHECK((back.basis[i] - d.basis[i]).max_abs_coeff() == 0.0);
    }
  }
}

TEST_CASE("deformation JSON") {
  const auto j = nlohmann::json::parse(R"({"phi11":[{"coeff":1,"x2":2}],"phi22":[{"coeff":-2,"pow1":2,"x2":1}]})");
  const auto phi = deformation_from_json(j, Context::TypeB);
  CHECK(phi.phi12.is_zero());
  CHECK(phi.phi11.terms().size() == 1);
  const auto back = deformation_from_json(to_json(phi), Context::TypeB);
  CHECK((back.phi22 - phi.phi22).is_zero());
  CHECK_THROWS_AS(deformation_from_json(nlohmann::json::parse(R"({"phi33":[]})"), Context::TypeA), InputError);
  // a log term is not a Type A function
  CHECK_THROWS_AS(deformation_from_json(nlohmann::json::parse(R"({"phi11":[{"coeff":1,"log":1}]})"), Context::TypeA), InputError);
}

TEST_CASE("fixed float formatting") {
  const nlohmann::json j = {{"a", 0.1}, {"b", 1.0 / 3.0}, {"c", 2}, {"d", {1e-20}}};
  const std::string s = dump_fixed(j);
  CHECK(s.find("0.10000000000000001") != std::string::npos);
  CHECK(s.find("0.33333333333333331") != std::string::npos);
  CHECK(s.find("9.9999999999999995e-21") != std::string::npos);
  CHECK(nlohmann::json::parse(s) == j);
}

TEST_CASE("random connections are non-flat and seeded") {
  const auto a = random_connections(Kind::B, 30, 7);
  CHECK(a.size() == 30);
  for (const auto& c : a) CHECK_FALSE(ricci(c).flat());
  CHECK(a == random_connections(Kind::B, 30, 7));
  CHECK(a != random_connections(Kind::B, 30, 8));
}

TEST_CASE("sweep: serial reference equals the parallel kernel") {
  for (Kind k : {Kind::A, Kind::B}) {
    const auto conns = random_connections(k, 80, 3);
    for (Rational mu : {Rational(0), Rational(-1), Rational(1, 2)}) {
      const auto s = sweep_serial(conns, mu);
      const auto p = sweep_parallel(conns, mu);
      CHECK(to_csv(s) == to_csv(p));
      for (const auto& r : s) CHECK(r.agree());
    }
  }
}

TEST_CASE("CSV layout") {
  const auto rows = sweep_serial(random_connections(Kind::A, 2, 1), 1);
  const std::string csv = to_csv(rows);
  CHECK(csv.rfind("index,kind,c111,c112,c121,c122,c221,c222,mu,dim,oracle_dim,agree,case\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("verification report") {
  VerificationReport r;
  CHECK_FALSE(r.pass());
  r.add("a", 1e-13, 1e-12);
  CHECK(r.pass());
  r.add("b", 1.0, 1e-12);
  CHECK_FALSE(r.pass());
  const auto j = to_json(r);
  CHECK(j["checks"].size() == 2);
  CHECK(j["pass"] == false);
}
