#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "selberg/errors.hpp"
#include "selberg/matrix.hpp"

using namespace selberg;
using testing::X;

namespace {

SignedSet single(const Monomial& m) { return SignedSet({{Payload::ints({0}), m}}); }

// [t^{j-i}] f / (1 - t x_b)^i blocks, expanded by cofactors.
IntPolynomial series_det_oracle(std::span<const long> f, std::span<const VarId> xs, std::span<const int> alpha) {
  int m = 0;
  for (int a : alpha) m += a;
  std::vector<std::vector<IntPolynomial>> rows;
  for (std::size_t b = 0; b < alpha.size(); ++b)
    for (int i = 1; i <= alpha[b]; ++i) {
      std::vector<IntPolynomial> row;
      for (int j = 1; j <= m; ++j) row.push_back(oracle::series_entry_direct(f, xs[b], i, j));
      rows.push_back(row);
    }
  return oracle::laplace_det(rows);
}

}  // namespace

TEST_SUITE("matrix") {

TEST_CASE("H for alpha = (2,2)") {
  auto v = testing::xs(2);
  std::vector<VarId> ys;
  std::vector<int> a{2, 2};
  SignedSetMatrix h = build_H(ys, v, a);
  REQUIRE(h.rows() == 4);
  auto w = weight_matrix(h);
  CHECK(w[0][0] == IntPolynomial(1));
  CHECK(w[0][2] == X(1) * X(1));
  CHECK(w[1][0].is_zero());
  CHECK(w[1][3] == X(1) * X(1) * 3);
  CHECK(w[3][3] == X(2) * X(2) * 3);
  CHECK(ss_weight(expand_D(h)) == (X(2) - X(1)).pow(4));
}

TEST_CASE("alpha of ones gives the classical Vandermonde") {
  auto v = testing::xs(3);
  std::vector<VarId> ys;
  std::vector<int> a{1, 1, 1};
  auto w = weight_matrix(build_H(ys, v, a));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(w[i][j] == X(static_cast<std::uint32_t>(i + 1)).pow(static_cast<unsigned>(j)));
  std::vector<int> a11{1, 1};
  auto v2 = testing::xs(2);
  CHECK(ss_weight(expand_D(build_H(ys, v2, a11))) == X(2) - X(1));
}

TEST_CASE("H with Y = (x1), alpha = (1,2)") {
  auto v = testing::xs(2);
  std::vector<VarId> ys{VarId::x(1)};
  std::vector<int> a{1, 2};
  SignedSetMatrix h = build_H(ys, v, a);
  REQUIRE(h.rows() == 3);
  auto w = weight_matrix(h);
  CHECK(w[0][1] == X(1) * 2);
  CHECK(w[1][1] == X(1) + X(2));
  CHECK(w[2][2] == X(1) + X(2) * 2);
  CHECK(ss_weight(expand_D(h)) == (X(2) - X(1)).pow(2));
}

TEST_CASE("empty H expands to the unit") {
  std::vector<VarId> none;
  std::vector<int> a;
  SignedSet d = expand_D(build_H(none, none, a));
  REQUIRE(d.size() == 1);
  CHECK(d[0].weight == Monomial::one());
}

TEST_CASE("H1 and H2 shapes") {
  auto v3 = testing::xs(3);
  std::vector<int> odd{1, 2};
  SignedSetMatrix h1 = build_H1(v3, odd);
  CHECK(h1.rows() == 4);
  CHECK(h1.cols() == 4);
  auto v2 = testing::xs(2);
  SignedSetMatrix h2 = build_H2(v2, odd);
  CHECK(h2.rows() == 4);
  CHECK_THROWS_AS(build_H1(v2, odd), PreconditionError);
}

TEST_CASE("small expansions") {
  SignedSetMatrix one(1, 1);
  one.set(1, 1, single(Monomial::var(VarId::x(1))));
  SignedSet d1 = expand_D(one);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].weight == Monomial::var(VarId::x(1)));

  SignedSetMatrix two(2, 2);
  two.set(1, 1, single(Monomial::one()));
  two.set(1, 2, single(Monomial::var(VarId::x(1))));
  two.set(2, 1, single(Monomial::one()));
  two.set(2, 2, single(Monomial::var(VarId::x(2))));
  SignedSet d2 = expand_D(two);
  CHECK(d2.size() == 2);
  CHECK(ss_weight(d2) == X(2) - X(1));
  CHECK(permutation_sign(std::vector<int>{2, 1, 3}) == -1);
  CHECK(permutation_sign(std::vector<int>{2, 3, 1}) == 1);
}

TEST_CASE("row subtraction on a 2x2") {
  SignedSetMatrix two(2, 2);
  two.set(1, 1, single(Monomial::one()));
  two.set(1, 2, single(Monomial::var(VarId::x(1))));
  two.set(2, 1, single(Monomial::one()));
  two.set(2, 2, single(Monomial::var(VarId::x(2))));
  Sijection s = row_subtract_sijection(two, 1, 2, RowMode::kSub);
  CHECK(sij_verify(s).ok);
  CHECK(s.left().size() == 2);
  CHECK(s.right().size() == 4);
  CHECK(s.right_cancellations() == 1);
  CHECK(s.cross_pairs() == 2);
  CHECK(sij_verify(row_subtract_sijection(two, 2, 1, RowMode::kAdd)).ok);
  CHECK_THROWS_AS(row_subtract_sijection(two, 1, 1, RowMode::kSub), PreconditionError);
}

TEST_CASE("row subtraction on the (2,2) H") {
  auto v = testing::xs(2);
  std::vector<VarId> ys;
  std::vector<int> a{2, 2};
  SignedSetMatrix h = build_H(ys, v, a);
  Sijection s = row_subtract_sijection(h, 1, 3, RowMode::kSub);
  CHECK(sij_verify(s).ok);
  CHECK(ss_weight(s.right()) == ss_weight(s.left()));
  SignedSetMatrix c = row_combined(h, 1, 3, RowMode::kSub);
  CHECK(c.at(3, 1).size() == h.at(3, 1).size() + h.at(1, 1).size());
}

TEST_CASE("determinants agree with cofactor expansion") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> coef(-3, 3), pick(0, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial % 4);
    std::vector<std::vector<IntPolynomial>> a(n, std::vector<IntPolynomial>(n));
    for (auto& row : a)
      for (auto& e : row) e = X(static_cast<std::uint32_t>(1 + pick(rng))) * coef(rng) + coef(rng);
    CHECK(permutation_determinant(a) == oracle::laplace_det(a));
  }
  auto v = testing::xs(3);
  std::vector<VarId> ys{VarId::y(1)};
  std::vector<int> al{1, 2, 1};
  SignedSetMatrix h = build_H(ys, v, al);
  CHECK(ss_weight(expand_D(h)) == oracle::laplace_det(weight_matrix(h)));
}

TEST_CASE("entrywise lift is the identity for identity entries") {
  auto v = testing::xs(2);
  std::vector<VarId> ys;
  std::vector<int> a{1, 2};
  SignedSetMatrix h = build_H(ys, v, a);
  std::vector<Sijection> cols;
  for (std::size_t c = 1; c <= h.cols(); ++c) cols.push_back(Sijection::identity(h.ptr(2, c)));
  Sijection s = lift_entrywise(h, 2, cols);
  CHECK(s.is_bijection());
  CHECK(sij_verify(s).ok);
  cols.pop_back();
  CHECK_THROWS_AS(lift_entrywise(h, 2, cols), PreconditionError);
}

TEST_CASE("generalized Vandermonde sijection") {
  auto v = testing::xs(2);
  std::vector<VarId> ys;
  std::vector<int> a{2, 2};
  std::vector<GvTraceEntry> trace;
  Sijection s = gv_sijection(ys, v, a, &trace);
  CHECK(sij_verify(s).ok);
  CHECK(ss_weight(s.left()) == (X(2) - X(1)).pow(4));
  CHECK(ss_weight(s.right()) == (X(2) - X(1)).pow(4));
  CHECK(s.right().size() == 16);
  std::vector<std::size_t> sizes;
  for (const auto& t : trace) sizes.push_back(t.size);
  REQUIRE(sizes.size() >= 5);
  CHECK(sizes[0] == 44);
  CHECK(sizes[1] == 72);
  CHECK(sizes[4] == 18);

  std::vector<int> ones{1, 1, 1};
  auto v3 = testing::xs(3);
  Sijection c = gv_sijection(ys, v3, ones);
  CHECK(c.right().size() == 8);
  CHECK(ss_weight(c.right()) == expand_signed_product(ones, v3));

  std::vector<VarId> none;
  std::vector<int> empty;
  Sijection base = gv_sijection(none, none, empty);
  CHECK(base.left().size() == 1);
  CHECK(base.right().size() == 1);
}

TEST_CASE("one reduction step") {
  auto v = testing::xs(2);
  std::vector<VarId> ys;
  std::vector<int> a{2, 2};
  Sijection s = gv_step(ys, v, a);
  CHECK(sij_verify(s).ok);
  CHECK(s.right().size() == 4 * 18);
  std::vector<int> z{0, 2};
  CHECK_THROWS_AS(gv_step(ys, v, z), PreconditionError);
}

TEST_CASE("series-entry determinant") {
  auto v = testing::xs(2);
  std::vector<int> a11{1, 1}, a23{2, 3};
  SeriesDetReport r1 = appendix_det_check(SeriesTrunc::one(4), v, a11);
  CHECK(r1.ok);
  CHECK(r1.lhs == X(2) - X(1));
  SeriesTrunc geo = SeriesTrunc::inverse_one_minus_t(1, 8);
  SeriesDetReport r = appendix_det_check(geo, v, a23);
  CHECK(r.ok);
  CHECK(r.lhs == (X(2) - X(1)).pow(6));
  std::vector<long> ones(9, 1);
  CHECK(r.lhs == series_det_oracle(ones, v, a23));

  std::vector<long> c{1, -2, 3};
  SeriesTrunc f = SeriesTrunc::from_integers(c, 8);
  std::vector<int> a21{2, 1};
  SeriesDetReport r3 = appendix_det_check(f, v, a21);
  CHECK(r3.ok);
  CHECK(r3.lhs == series_det_oracle(c, v, a21));
  std::vector<long> bad{2, 1};
  CHECK_THROWS_AS(appendix_det_check(SeriesTrunc::from_integers(bad, 4), v, a11), PreconditionError);
}

TEST_CASE("vandermonde product set") {
  auto v = testing::xs(3);
  std::vector<int> a{1, 2, 1};
  SignedSet s = vandermonde_set(v, a);
  CHECK(s.size() == 32);
  CHECK(ss_weight(s) == expand_signed_product(a, v));
}

}
