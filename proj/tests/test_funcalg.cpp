#include <doctest.h>

#include "qe/funcalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

using namespace qe;

namespace {

AnsatzFunction term(Context ctx, Complex coeff, Complex pow1 = 0.0, int deg2 = 0, int logdeg = 0, Complex e1 = 0.0,
                    Complex e2 = 0.0) {
  Term t;
  t.coeff = coeff;
  t.pow1 = pow1;
  t.deg2 = deg2;
  t.logdeg = logdeg;
  t.exp1 = e1;
  t.exp2 = e2;
  return AnsatzFunction(ctx, {t});
}

bool equal(const AnsatzFunction& a, const AnsatzFunction& b) { return (a - b).max_abs_coeff() <= 1e-14; }

AnsatzFunction random_function(std::mt19937_64& rng, Context ctx) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  std::uniform_int_distribution<int> deg(0, 2);
  AnsatzFunction f(ctx);
  for (int k = 0; k < 3; ++k) {
    if (ctx == Context::TypeA) {
      f += term(ctx, {u(rng), u(rng)}, static_cast<double>(deg(rng)), deg(rng), 0, u(rng), {u(rng), u(rng)});
    } else {
      f += term(ctx, {u(rng), u(rng)}, {u(rng), u(rng)}, deg(rng), deg(rng));
    }
  }
  return f;
}

}  // namespace

TEST_CASE("derive follows the closure rules") {
  const auto e = term(Context::TypeA, 1.0, 0.0, 0, 0, 0.0, 2.0);
  CHECK(equal(derive(e, 1), e * Complex(2.0)));

  const double a = 0.7;
  const auto f = term(Context::TypeB, 1.0, a, 0, 1);
  const auto expect = term(Context::TypeB, a, a - 1, 0, 1) + term(Context::TypeB, 1.0, a - 1);
  CHECK(equal(derive(f, 0), expect));

  const auto g = term(Context::TypeB, 1.0, 2.0, 1);
  const auto g1 = derive(g, 0);
  CHECK(equal(g1, term(Context::TypeB, 2.0, 1.0, 1)));
  CHECK(equal(derive(g1, 0), term(Context::TypeB, 2.0, 0.0, 1)));

  const std::array<double, 2> p = {1.3, 0.7};
  const double h = 1e-5;
  auto at = [&](const AnsatzFunction& fn, double dx) { return eval(fn, std::array<double, 2>{p[0] + dx, p[1]}).real(); };
  CHECK(std::abs(eval(g1, p).real() - (at(g, h) - at(g, -h)) / (2 * h)) < 1e-8);
  CHECK(std::abs(eval(derive(g1, 0), p).real() - (at(g1, h) - at(g1, -h)) / (2 * h)) < 1e-8);
  CHECK_THROWS_AS(derive(g, 2), std::out_of_range);
}

TEST_CASE("eval") {
  CHECK(eval(term(Context::TypeB, 1.0, -1.0), std::array<double, 2>{2, 5}).real() == doctest::Approx(0.5));
  CHECK(eval(term(Context::TypeA, 1.0, 0.0, 0, 0, 0.0, 2.0), std::array<double, 2>{0, 0}).real() == 1.0);
  const double v = eval(term(Context::TypeB, 1.0, 0.5, 0, 1), std::array<double, 2>{4, 0}).real();
  CHECK(v == doctest::Approx(std::sqrt(4.0) * std::log(4.0)).epsilon(1e-14));
  CHECK(v == doctest::Approx(2.77258872).epsilon(1e-8));
  CHECK_THROWS_AS(eval(term(Context::TypeB, 1.0, 0.5), std::array<double, 2>{-1, 0}), std::domain_error);
  CHECK_THROWS_AS(eval(term(Context::TypeB, 1.0, 0.0, 0, 1), std::array<double, 2>{0, 0}), std::domain_error);
  // non-negative integer powers are polynomial and defined everywhere
  CHECK(eval(term(Context::TypeA, 1.0, 2.0), std::array<double, 2>{-3, 0}).real() == 9.0);
}

TEST_CASE("algebra invariants are enforced") {
  CHECK_THROWS_AS(term(Context::TypeA, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(term(Context::TypeA, 1.0, 0.0, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(term(Context::TypeB, 1.0, 0.0, 0, 0, 1.0), std::invalid_argument);
  Term y;
  y.fiberdeg1 = 1;
  CHECK_THROWS_AS(AnsatzFunction(Context::TypeA, {y}), std::invalid_argument);
  CHECK_NOTHROW(AnsatzFunction(Context::Fourd, {y}));
}

TEST_CASE("normal form merges and drops zeros") {
  const auto x = AnsatzFunction::coordinate(Context::TypeA, 0);
  CHECK((x + x).terms().size() == 1);
  CHECK((x - x).is_zero());
  const auto f = term(Context::TypeB, 1.0, 1.0 / 3.0) + term(Context::TypeB, 1.0, 1.0 / 3.0 + 1e-15);
  CHECK(f.terms().size() == 1);
}

TEST_CASE("rank_basis") {
  const Context a = Context::TypeA;
  const auto one = AnsatzFunction::constant(a, 1.0);
  const auto x = AnsatzFunction::coordinate(a, 0);
  auto r = rank_basis({one, x, one + x});
  CHECK(r.rank == 2);
  CHECK(r.indices == std::vector<std::size_t>{0, 1});

  const auto p = term(Context::TypeB, 1.0, 0.37);
  CHECK(rank_basis({p, p}).rank == 1);

  const auto e1 = term(a, 1.0, 0.0, 0, 0, 1.0);
  const auto xe1 = term(a, 1.0, 1.0, 0, 0, 1.0);
  const auto e2 = term(a, 1.0, 0.0, 0, 0, 2.0);
  CHECK(rank_basis({e1, xe1, e2}).rank == 3);
  // independent check: the evaluation matrix at three points is nonsingular
  Eigen::Matrix3d m;
  const double pts[3] = {0.1, 0.6, 1.4};
  for (int i = 0; i < 3; ++i) {
    const std::array<double, 2> q = {pts[i], 0.0};
    m(i, 0) = eval(e1, q).real();
    m(i, 1) = eval(xe1, q).real();
    m(i, 2) = eval(e2, q).real();
  }
  CHECK(std::abs(m.determinant()) > 1e-6);

  CHECK_THROWS_AS(rank_basis({one, p}), std::invalid_argument);
}

TEST_CASE("rank is invariant under shuffling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<AnsatzFunction> fs;
    for (int i = 0; i < 4; ++i) fs.push_back(random_function(rng, Context::TypeB));
    fs.push_back(fs[0] + fs[1] * Complex(2.0));
    const auto r0 = rank_basis(fs).rank;
    std::shuffle(fs.begin(), fs.end(), rng);
    CHECK(rank_basis(fs).rank == r0);
    CHECK(r0 == 4);
  }
}

TEST_CASE("mixed partials commute") {
  std::mt19937_64 rng(3);
  for (Context ctx : {Context::TypeA, Context::TypeB}) {
    for (int i = 0; i < 25; ++i) {
      const auto f = random_function(rng, ctx);
      CHECK(equal(derive(derive(f, 0), 1), derive(derive(f, 1), 0)));
    }
  }
}

TEST_CASE("derivatives match central differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ux(1.0, 2.0);
  std::uniform_real_distribution<double> uy(-1.0, 1.0);
  std::uniform_int_distribution<int> axis(0, 1);
  for (int i = 0; i < 100; ++i) {
    const Context ctx = i % 2 ? Context::TypeA : Context::TypeB;
    const auto f = random_function(rng, ctx);
    const std::array<double, 2> p = {ux(rng), uy(rng)};
    const int k = axis(rng);
    const double h = 1e-5;
    auto q = p;
    q[k] += h;
    const Complex up = eval(f, q);
    q[k] -= 2 * h;
    const Complex down = eval(f, q);
    const Complex fd = (up - down) / (2 * h);
    const Complex exact = eval(derive(f, k), p);
    CHECK(std::abs(fd - exact) <= 1e-6 * std::max(1.0, std::abs(exact)));
  }
}

TEST_CASE("real and imaginary parts") {
  const Complex a(0.5, std::sqrt(7.0) / 2);
  const auto f = term(Context::TypeA, 1.0, 0.0, 0, 0, 0.0, a);
  const auto re = real_part(f);
  const auto im = imag_part(f);
  const std::array<double, 2> p = {0.3, 0.8};
  CHECK(std::abs(eval(re, p) - std::exp(0.4) * std::cos(std::sqrt(7.0) / 2 * 0.8)) < 1e-14);
  CHECK(std::abs(eval(im, p) - std::exp(0.4) * std::sin(std::sqrt(7.0) / 2 * 0.8)) < 1e-14);
}

TEST_CASE("linear substitution") {
  // f(x~) = x~2 e^{x~2} with x~2 = 3 x1 + 2 x2
  const auto f = term(Context::TypeA, 1.0, 0.0, 1, 0, 0.0, 1.0);
  const auto g = substitute_linear(f, {{{1, 0}, {3, 2}}});
  const std::array<double, 2> p = {0.2, -0.4};
  const double t = 3 * 0.2 + 2 * -0.4;
  CHECK(std::abs(eval(g, p) - t * std::exp(t)) < 1e-14);
  // (x1)^a log x1 under x1 -> 2 x1
  const auto h = term(Context::TypeB, 1.0, 0.5, 0, 1);
  const auto k = substitute_linear(h, {{{2, 0}, {0, 1}}});
  const std::array<double, 2> q = {1.5, 0.0};
  CHECK(std::abs(eval(k, q) - std::sqrt(3.0) * std::log(3.0)) < 1e-14);
  CHECK_THROWS_AS(substitute_linear(h, {{{1, 1}, {0, 1}}}), std::invalid_argument);
}

TEST_CASE("json round trip") {
  std::mt19937_64 rng(9);
  for (Context ctx : {Context::TypeA, Context::TypeB}) {
    const auto f = random_function(rng, ctx);
    const auto j = to_json(f);
    const auto g = function_from_json(nlohmann::json::parse(j.dump()), ctx);
    CHECK((f - g).max_abs_coeff() == 0.0);
  }
  const auto j = to_json(term(Context::TypeA, 1.0, 0.0, 0, 0, 0.0, 2.0));
  CHECK(j[0]["exp"][1] == 2.0);
  CHECK(j[0]["coeff"] == nlohmann::json::array({1.0, 0.0}));
}

TEST_CASE("internal products") {
  const Context c = Context::Fourd;
  const auto x = AnsatzFunction::coordinate(c, 0);
  const auto y = AnsatzFunction::coordinate(c, 2);
  const auto xy = internal::multiply(x, y);
  CHECK(eval(xy, std::array<double, 4>{2, 0, 3, 0}).real() == 6.0);
  const auto inv = internal::reciprocal(x);
  CHECK(eval(inv, std::array<double, 4>{4, 0, 0, 0}).real() == 0.25);
  CHECK_THROWS_AS(internal::reciprocal(x + y), std::invalid_argument);
}
