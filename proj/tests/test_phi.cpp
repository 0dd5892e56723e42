#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "selberg/errors.hpp"
#include "selberg/matrix.hpp"
#include "selberg/phi.hpp"

using namespace selberg;

namespace {

Monomial xpow(std::initializer_list<std::pair<int, int>> e) {
  Monomial m;
  for (auto [v, p] : e) m = m * Monomial::var(VarId::x(static_cast<std::uint32_t>(v)), p);
  return m;
}

SignedSet one_weight(const Monomial& m) { return SignedSet({{Payload::integer(0), m}}); }

std::vector<int> exps_of(const Monomial& m, std::size_t n) {
  std::vector<int> c;
  for (std::size_t i = 1; i <= n; ++i) c.push_back(m.exponent(VarId::x(static_cast<std::uint32_t>(i))));
  return c;
}

}  // namespace

TEST_SUITE("phi") {

TEST_CASE("diagonal fixing must increase") {
  CHECK_NOTHROW(DiagonalFixing({1, 4, 6}));
  CHECK_THROWS_AS(DiagonalFixing({2, 2}), PreconditionError);
  CHECK_THROWS_AS(DiagonalFixing({0, 2}), PreconditionError);
}

TEST_CASE("phi of a single weight") {
  auto v = testing::xs(3);
  SignedSet s = one_weight(xpow({{2, 1}, {3, 2}}));
  SignedSet phi = build_phi(s, v, DiagonalFixing({1, 4, 6}));
  CHECK(phi.size() == 4);
  Payload want = phi_payload(Payload::integer(0), {{}, {2}, {3, 5}});
  CHECK(phi.find(want).has_value());
  CHECK(phi_lists(want) == RankLists{{}, {2}, {3, 5}});
  for (const auto& e : phi) CHECK(e.weight == Monomial::one());
}

TEST_CASE("phi of the unit is one element") {
  auto v = testing::xs(3);
  SignedSet phi = build_phi(one_weight(Monomial::one()), v, DiagonalFixing({1, 2, 3}));
  REQUIRE(phi.size() == 1);
  CHECK(phi_lists(phi[0].payload) == RankLists{{}, {}, {}});
}

TEST_CASE("phi sizes agree with the counting oracle") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(0, 2);
  auto v = testing::xs(3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> c{e(rng), e(rng), e(rng)};
    int n_total = 3 + c[0] + c[1] + c[2];
    std::vector<int> ranks(static_cast<std::size_t>(n_total));
    std::iota(ranks.begin(), ranks.end(), 1);
    std::shuffle(ranks.begin(), ranks.end(), rng);
    std::vector<int> p(ranks.begin(), ranks.begin() + 3);
    SignedSet s = one_weight(xpow({{1, c[0]}, {2, c[1]}, {3, c[2]}}));
    CHECK(build_phi(s, v, p, n_total).size() == oracle::phi_fill_count(c, p, n_total).get_ui());
  }
}

TEST_CASE("phi respects sums and products") {
  auto v = testing::xs(2);
  DiagonalFixing p({2, 5});
  SignedSet a({{Payload::integer(0), xpow({{1, 1}, {2, 2}})}, {Payload::integer(1), -xpow({{2, 3}})}});
  SignedSet b({{Payload::integer(0), xpow({{1, 2}, {2, 1}})}});
  CHECK(build_phi(ss_sum(a, b), v, p).size() == build_phi(a, v, p).size() + build_phi(b, v, p).size());
  SignedSet c = range_set(3);
  CHECK(build_phi(ss_product(c, a), v, p).size() == 3 * build_phi(a, v, p).size());
}

TEST_CASE("lift through phi keeps lists") {
  auto v = testing::xs(2);
  std::vector<VarId> ys;
  std::vector<int> a{1, 2};
  Sijection gv = gv_sijection(ys, v, a);
  std::vector<int> p{1, 4};
  Sijection lifted = lift_through_phi(gv, v, p, 4);
  CHECK(sij_verify(lifted).ok);
  CHECK(lifted.left().size() == build_phi(gv.left(), v, p, 4).size());
}

TEST_CASE("trick on a triangle") {
  auto u = [](int i) { return vname('u', {i}); };
  Dag g({u(1), u(2), u(3)}, {{u(1), u(2)}, {u(2), u(3)}, {u(1), u(3)}});
  Sijection s = trick_one_sijection(g, u(2), u(3), u(1));
  CHECK(sij_verify(s).ok);
  CHECK(s.left().size() == 1);
  CHECK(s.right().positive_count() == 2);
  CHECK(s.right().negative_count() == 1);
  CHECK_THROWS_AS(trick_one_sijection(g, u(3), u(2), u(1)), PreconditionError);
}

TEST_CASE("trick with b forced above g is a bijection") {
  auto u = [](int i) { return vname('u', {i}); };
  Dag g({u(1), u(2), u(3)}, {{u(1), u(2)}, {u(2), u(3)}, {u(1), u(3)}});
  Sijection s = trick_one_sijection(g, u(2), u(3), u(1), {{1, 2}, {2, 1}});
  CHECK(sij_verify(s).ok);
  CHECK(s.is_bijection());
  CHECK(s.right().negative_count() == 0);
}

TEST_CASE("trick with b above g through another path") {
  auto u = [](int i) { return vname('u', {i}); };
  Dag g({u(1), u(2), u(3), u(4)}, {{u(1), u(2)}, {u(2), u(3)}, {u(1), u(3)}, {u(2), u(4)}, {u(4), u(3)}});
  Sijection s = trick_one_sijection(g, u(2), u(3), u(1));
  CHECK(sij_verify(s).ok);
  CHECK(s.is_bijection());
  CHECK(s.right().negative_count() == 0);
}

TEST_CASE("trick on a w vertex of G_X(1,1,1)") {
  Dag g = graph_gx({1, 1, 1});
  Sijection s = trick_one_sijection(g, vname('w', {1, 3, 1}), vname('u', {1}), vname('u', {3}));
  CHECK(sij_verify(s).ok);
  CHECK(s.left().size() == 4);
  CHECK(s.right().positive_count() - s.right().negative_count() == 4);
}

TEST_CASE("topo to phi bijections") {
  std::vector<int> a111{1, 1, 1}, a1{1}, a11{1, 1};
  Sijection s = topo_phi_bijection(a111, DiagonalFixing({1, 4, 6}));
  CHECK(sij_verify(s).ok);
  CHECK(s.left().size() == 2);
  CHECK(s.right().size() == 6);
  Sijection one = topo_phi_bijection(a1, DiagonalFixing({1}));
  CHECK(one.left().size() == 1);
  CHECK(one.right().size() == 1);
  Sijection two = topo_phi_bijection(a11, DiagonalFixing({1, 3}));
  CHECK(two.is_bijection());
  REQUIRE(two.right().size() == 1);
  CHECK(phi_lists(two.right()[0].payload) == RankLists{{}, {2}});
}

TEST_CASE("insert with l = 0 appends the rank") {
  auto v = testing::xs(2);
  SignedSet s = one_weight(xpow({{2, 1}}));
  std::vector<int> rest{3};
  Sijection b = phi_insert_bijection(s, v, rest, 1, 2, 0, 3);
  CHECK(b.is_bijection());
  CHECK(sij_verify(b).ok);
  CHECK(b.left().size() == 2);
  for (const auto& e : b.right()) {
    RankLists l = phi_lists(e.payload);
    REQUIRE(l.size() == 1);
    CHECK(l[0].size() == 2);
  }
}

TEST_CASE("insert with l = 1 against enumeration") {
  auto v = testing::xs(3);
  for (int n_total : {6, 7}) {
    SignedSet s = one_weight(xpow({{1, 1}, {2, 1}, {3, n_total - 5}}));
    for (int p1 = 1; p1 <= n_total; ++p1)
      for (int p3 = 1; p3 <= n_total; ++p3) {
        if (p1 == p3) continue;
        std::vector<int> rest{p1, p3};
        Sijection b = phi_insert_bijection(s, v, rest, 2, 3, 1, n_total);
        CHECK(b.is_bijection());
        mpz_class left = 0;
        std::vector<int> c = exps_of(s[0].weight, 3);
        for (int p2 = 1; p2 < p3; ++p2) {
          if (p2 == p1) continue;
          std::vector<int> p{p1, p2, p3};
          left += 2 * oracle::phi_fill_count(c, p, n_total);
        }
        std::vector<int> c2{1, n_total - 3}, p2s{p1, p3};
        mpz_class right = oracle::phi_fill_count(c2, p2s, n_total);
        CHECK(b.left().size() == left.get_ui());
        CHECK(b.right().size() == right.get_ui());
      }
  }
  CHECK_THROWS_AS(phi_insert_bijection(one_weight(xpow({{2, 2}})), v, std::vector<int>{1, 5}, 2, 3, 1, 6),
                  PreconditionError);
}

TEST_CASE("split with the lower neighbour at 1 is a re-indexing") {
  auto v = testing::xs(3);
  SignedSet s = one_weight(xpow({{2, 1}, {3, 1}}));
  std::vector<int> rest{1, 5};
  Sijection sp = phi_split_sijection(s, v, rest, 2, 5);
  CHECK(sij_verify(sp).ok);
  CHECK(sp.is_bijection());
  CHECK(sp.right().negative_count() == 0);
}

TEST_CASE("split on a four-rank toy") {
  auto v = testing::xs(3);
  SignedSet s = one_weight(xpow({{2, 1}}));
  std::vector<int> rest{3, 4};
  Sijection sp = phi_split_sijection(s, v, rest, 2, 4);
  CHECK(sij_verify(sp).ok);
  CHECK(sp.left().empty());
  CHECK(sp.right().positive_count() == 1);
  CHECK(sp.right().negative_count() == 1);
  CHECK_THROWS_AS(phi_split_sijection(s, v, rest, 1, 4), PreconditionError);
}

TEST_CASE("split then insert") {
  auto v = testing::xs(3);
  SignedSet s = one_weight(xpow({{1, 1}, {3, 2}}));
  std::vector<int> rest{2, 6};
  Sijection sp = phi_split_sijection(s, v, rest, 2, 6);
  CHECK(sij_verify(sp).ok);
  // Both right summands integrate x2 away.
  Sijection up = phi_insert_bijection(s, v, rest, 2, 3, 0, 6);
  Sijection down = phi_insert_bijection(s, v, rest, 2, 1, 0, 6);
  CHECK(up.is_bijection());
  CHECK(down.is_bijection());
  CHECK(sp.right().positive_count() == up.left().size());
  CHECK(sp.right().negative_count() == down.left().size());
}

TEST_CASE("shift exponent") {
  SignedSet s = one_weight(xpow({{1, 2}, {2, 1}}));
  SignedSet t = shift_exponent(s, VarId::x(1), VarId::x(2));
  CHECK(t[0].weight == xpow({{2, 4}}));
}

}
