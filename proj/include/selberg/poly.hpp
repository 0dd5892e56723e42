#pragma once

// Exact multivariate polynomials over the integers, signed monomials and
// truncated power series in t whose coefficients are such polynomials.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace selberg {

// Variable families. Declaration order is the global order: t < y < x.
enum class VarFamily : std::uint8_t { kT = 0, kY = 1, kX = 2 };

struct VarId {
  VarFamily family = VarFamily::kX;
  std::uint32_t index = 0;

  static VarId x(std::uint32_t i) { return {VarFamily::kX, i}; }
  static VarId y(std::uint32_t i) { return {VarFamily::kY, i}; }
  static VarId t() { return {VarFamily::kT, 0}; }

  // Packed form used inside payload tokens; order-preserving.
  std::int32_t code() const {
    return static_cast<std::int32_t>(static_cast<std::uint32_t>(family) << 20 | index);
  }
  static VarId from_code(std::int32_t c);

  std::string name() const;
  static VarId parse(const std::string& text);

  auto operator<=>(const VarId&) const = default;
};

// Sorted by VarId, every exponent positive.
using Exponents = std::vector<std::pair<VarId, int>>;

Exponents exponents_mul(const Exponents& a, const Exponents& b);
int exponent_of(const Exponents& e, VarId v);
int total_degree(const Exponents& e);
std::string exponents_text(const Exponents& e);

// A signed monomial ±∏ v^e.
struct Monomial {
  int sign = 1;
  Exponents exps;

  static Monomial one() { return {}; }
  static Monomial var(VarId v, int power = 1, int sign = 1);

  Monomial operator*(const Monomial& o) const {
    return {sign * o.sign, exponents_mul(exps, o.exps)};
  }
  Monomial operator-() const { return {-sign, exps}; }
  int exponent(VarId v) const { return exponent_of(exps, v); }
  int degree() const { return total_degree(exps); }
  std::string text() const;

  bool operator==(const Monomial&) const = default;
};

class IntPolynomial {
 public:
  using Terms = std::map<Exponents, mpz_class>;

  IntPolynomial() = default;
  IntPolynomial(long c);  // NOLINT(google-explicit-constructor): constants read naturally
  explicit IntPolynomial(const mpz_class& c);
  explicit IntPolynomial(const Monomial& m);
  static IntPolynomial var(VarId v) { return IntPolynomial(Monomial::var(v)); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  mpz_class coefficient(const Exponents& e) const;
  // Coefficient of the constant term; the t^0 check for series uses it.
  mpz_class constant_term() const { return coefficient({}); }

  void add_term(const Exponents& e, const mpz_class& c);

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  IntPolynomial operator+(const IntPolynomial& o) const;
  IntPolynomial operator-(const IntPolynomial& o) const;
  IntPolynomial operator*(const IntPolynomial& o) const;
  IntPolynomial operator-() const;
  IntPolynomial pow(unsigned e) const;

  bool operator==(const IntPolynomial& o) const { return terms_ == o.terms_; }

  // `3*x1^2*x2 - x1 + 5`, terms in canonical order.
  std::string text() const;
  nlohmann::json to_json() const;

 private:
  Terms terms_;
};

enum class PolyOp { kAdd, kSub, kMul, kNeg };

// q is ignored for kNeg and required otherwise.
IntPolynomial poly_arith(PolyOp op, const IntPolynomial& p, const IntPolynomial* q = nullptr);

// ∏_{i<j} (X_j - X_i)^{alpha_i alpha_j}, fully expanded.
IntPolynomial expand_signed_product(std::span<const int> alpha, std::span<const VarId> vars);

// Power series in t truncated after t^order.
class SeriesTrunc {
 public:
  explicit SeriesTrunc(std::vector<IntPolynomial> coeffs);

  static SeriesTrunc one(int order);
  // ∏_r 1/(1 - t y_r); an empty list gives the constant 1.
  static SeriesTrunc inverse_linear_product(std::span<const VarId> ys, int order);
  // 1/(1 - t)^count.
  static SeriesTrunc inverse_one_minus_t(int count, int order);
  // Integer coefficients c_0 + c_1 t + ..., zero padded to `order`.
  static SeriesTrunc from_integers(std::span<const long> coeffs, int order);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const IntPolynomial& coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<IntPolynomial>& coeffs() const { return coeffs_; }

  SeriesTrunc operator*(const SeriesTrunc& o) const;

 private:
  std::vector<IntPolynomial> coeffs_;
};

// [t^{j-i}] f(t) / (1 - t x)^i. Zero when j < i.
IntPolynomial series_entry(const SeriesTrunc& f, VarId x, int i, int j);

mpz_class binomial(long n, long k);
mpz_class factorial(long n);

}  // namespace selberg
