#pragma once

// Closed forms for topo(G_S), the two G_K reductions, the count comparison of
// G_A' and G_B' with fixed odd ranks, and the inductive evaluation of topo(G_S).

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "json.hpp"

namespace selberg {

// Reduced fraction with positive denominator.
class ExactFraction {
 public:
  ExactFraction() = default;
  ExactFraction(const mpz_class& num, const mpz_class& den = 1);

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }
  bool is_integer() const { return v_.get_den() == 1; }
  // Throws InternalError when the value is not an integer.
  mpz_class to_integer(const char* what = "value") const;
  std::string text() const;

  ExactFraction operator+(const ExactFraction& o) const { return from(v_ + o.v_); }
  ExactFraction operator-(const ExactFraction& o) const { return from(v_ - o.v_); }
  ExactFraction operator*(const ExactFraction& o) const { return from(v_ * o.v_); }
  ExactFraction operator/(const ExactFraction& o) const;
  bool operator==(const ExactFraction& o) const { return v_ == o.v_; }

 private:
  static ExactFraction from(const mpq_class& q);
  mpq_class v_{0};
};

// k!, memoized.
const mpz_class& fact(unsigned long k);

enum class FormulaKind { kCombSelberg, kIntro };

FormulaKind parse_formula_kind(const std::string& s);

// combSelberg params (n, a, b, c); intro params (n, t).
mpz_class product_formula(FormulaKind kind, const std::vector<int>& params);
mpz_class comb_selberg_formula(int n, int a, int b, int c);
mpz_class intro_formula(int n, int t);

struct CruxPrimeReport {
  mpz_class count_a, count_b;  // constrained labelings of G_A' and G_B'
  mpz_class lhs, rhs;          // (Σα)! count_a and ∏ α_i! count_b
  bool ok = false;
};

// alpha is the full alpha (odd length, evens 1); p_odd the ranks of u_1, u_3, ...
CruxPrimeReport crux_prime_check(const std::vector<int>& alpha, const std::vector<int>& p_odd);

struct GkReport {
  ExactFraction factor_same, factor_reduce;
  std::optional<mpz_class> topo_gk, topo_gs_same, topo_gs_reduced;
  std::optional<bool> same_ok, reduce_ok;
};

// topo(G_K) / topo(G_S(n,a,b,c)) and topo(G_K) / topo(G_S(n-1,a+c,b+c,c)).
// With check, both are compared against direct counts.
GkReport gk_reduction(int n, int a, int b, int c, bool check = false);

// topo(G_S(n,a,b,c)) / topo(G_S(n-1,a+c,b+c,c)).
ExactFraction recurrence_factor(int n, int a, int b, int c);

mpz_class topo_gs_via_recurrence(int n, int a, int b, int c);

enum class CountMethod { kBrute, kDp, kRecurrence, kFormula };

CountMethod parse_method(const std::string& s);
std::string method_name(CountMethod m);

// Vertex caps; the DP and G_K check caps follow SELBERG_MAX_VERTICES when set.
std::size_t brute_vertex_cap();
std::size_t dp_vertex_cap();
std::size_t gk_check_vertex_cap();

int gs_vertex_count(int n, int a, int b, int c);

struct SelbergReport {
  std::vector<int> params;
  std::vector<std::pair<CountMethod, mpz_class>> values;
  bool equal = false;

  nlohmann::json to_json() const;
  std::string table() const;
};

SelbergReport verify_selberg(int n, int a, int b, int c, const std::vector<CountMethod>& methods);

// One report per tuple, computed concurrently.
std::vector<SelbergReport> verify_selberg_many(const std::vector<std::vector<int>>& tuples,
                                               const std::vector<CountMethod>& methods);

}  // namespace selberg
