#pragma once

#include "qe/linalg.hpp"

#include <json.hpp>

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

namespace qe {

enum class Context { TypeA, TypeB, Fourd };

std::string to_string(Context c);
/// Number of coordinates: 2 for surfaces, 4 for (x1, x2, y1, y2) on T*M.
int arity(Context c);

/// One monomial c * e^{exp1 x1 + exp2 x2} * (x1)^pow1 * (log x1)^logdeg
///   * (x2)^deg2 * (y1)^fiberdeg1 * (y2)^fiberdeg2.
struct Term {
  Complex coeff{1.0};
  Complex exp1{0.0};
  Complex exp2{0.0};
  Complex pow1{0.0};
  int logdeg = 0;
  int deg2 = 0;
  int fiberdeg1 = 0;
  int fiberdeg2 = 0;
};

/// Exponent tuples compare equal when every complex entry agrees to 1e-12
/// relative. Exponents built from classification formulas are exact doubles of
/// rationals; roots found numerically are polished well below that tolerance.
bool same_monomial(const Term& a, const Term& b);
bool monomial_less(const Term& a, const Term& b);

/// A finite sum of terms in one of the three algebras. Always held in normal
/// form: like monomials merged, exact zeros dropped, lexicographic order.
class AnsatzFunction {
 public:
  AnsatzFunction() : ctx_(Context::TypeA) {}
  explicit AnsatzFunction(Context ctx) : ctx_(ctx) {}
  AnsatzFunction(Context ctx, std::vector<Term> terms);

  static AnsatzFunction constant(Context ctx, Complex c);
  /// The coordinate function with index `axis` (0-based).
  static AnsatzFunction coordinate(Context ctx, int axis);
  static AnsatzFunction monomial(Context ctx, const Term& t) { return AnsatzFunction(ctx, {t}); }

  Context context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  double max_abs_coeff() const;
  /// Drops terms with |coeff| <= tol.
  AnsatzFunction pruned(double tol) const;

  AnsatzFunction operator-() const;
  AnsatzFunction& operator+=(const AnsatzFunction& o);
  AnsatzFunction& operator-=(const AnsatzFunction& o);
  AnsatzFunction& operator*=(Complex s);
  friend AnsatzFunction operator+(AnsatzFunction a, const AnsatzFunction& b) { return a += b; }
  friend AnsatzFunction operator-(AnsatzFunction a, const AnsatzFunction& b) { return a -= b; }
  friend AnsatzFunction operator*(AnsatzFunction a, Complex s) { return a *= s; }
  friend AnsatzFunction operator*(Complex s, AnsatzFunction a) { return a *= s; }

  /// Same sum viewed in another algebra (surface functions lift to T*M).
  AnsatzFunction with_context(Context ctx) const;

 private:
  void normalize();
  Context ctx_;
  std::vector<Term> terms_;
};

/// Partial derivative along coordinate `axis` (0-based).
AnsatzFunction derive(const AnsatzFunction& f, int axis);

/// Numeric value at `p`; powers and logs of x1 need x1 > 0 unless the power
/// is a non-negative integer.
Complex eval(const AnsatzFunction& f, std::span<const double> p);
Complex eval(const Term& t, std::span<const double> p);

struct RankResult {
  std::size_t rank = 0;
  std::vector<AnsatzFunction> basis;
  std::vector<std::size_t> indices;
};

/// Rank of the span over C. Distinct monomials are linearly independent
/// functions, so this is the rank of the coefficient matrix; the basis is
/// chosen greedily in input order.
RankResult rank_basis(const std::vector<AnsatzFunction>& fs);

AnsatzFunction conjugate(const AnsatzFunction& f);
AnsatzFunction real_part(const AnsatzFunction& f);
AnsatzFunction imag_part(const AnsatzFunction& f);

/// g(x) = f(M x) for a constant 2x2 matrix M. Non-integer powers and logs of
/// x1 require the first row of M to be (m, 0) with m > 0.
AnsatzFunction substitute_linear(const AnsatzFunction& f, const std::array<std::array<double, 2>, 2>& m);

nlohmann::json to_json(const AnsatzFunction& f);
AnsatzFunction function_from_json(const nlohmann::json& j, Context ctx);
std::string to_string(const AnsatzFunction& f);

namespace internal {
// Products are only needed for metric components on T*M.
AnsatzFunction multiply(const AnsatzFunction& a, const AnsatzFunction& b);
/// 1/f for a single term without log or polynomial factors.
AnsatzFunction reciprocal(const AnsatzFunction& f);
}  // namespace internal

}  // namespace qe
