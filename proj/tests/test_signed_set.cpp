#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "selberg/errors.hpp"
#include "selberg/signed_set.hpp"

using namespace selberg;
using testing::elem;
using testing::X;

namespace {

Monomial x(int i, int power = 1, int sign = 1) { return Monomial::var(VarId::x(static_cast<std::uint32_t>(i)), power, sign); }

// {x1, x2} × {x1, -x2} against {x1^2, -x2^2}.
Sijection squares_example() {
  SignedSet a1({elem("x1", x(1)), elem("x2", x(2))});
  SignedSet a2({elem("x1", x(1)), elem("x2", x(2, 1, -1))});
  SetPtr left = share(ss_product(a1, a2));
  SetPtr right = share(SignedSet({elem("x1", x(1, 2)), elem("x2", x(2, 2, -1))}));
  return Sijection::from_partner(left, right, [](Side side, const SignedElement& e) -> std::pair<Side, Payload> {
    if (side == Side::kRight) {
      Payload v = e.payload;
      return {Side::kLeft, Payload::tuple({v, v})};
    }
    Payload a = e.payload.item(0), b = e.payload.item(1);
    if (a == b) return {Side::kRight, a};
    return {Side::kLeft, Payload::tuple({b, a})};
  });
}

}  // namespace

TEST_SUITE("signed_set") {

TEST_CASE("payload keys round-trip") {
  for (const char* k : {"(1,(2,0,0))", "x2", "@0", "()", "(@1,(x3,-4))", "'sym'"})
    CHECK(Payload::parse(k).key() == k);
  CHECK(Payload::ints({1, 2}) < Payload::ints({1, 3}));
  CHECK(Payload::ints({1, 2, 3}).as_ints() == std::vector<int>{1, 2, 3});
  CHECK(Payload::parse("(1,2)").hash() == Payload::ints({1, 2}).hash());
}

TEST_CASE("duplicate payloads are rejected") {
  CHECK_THROWS_AS(SignedSet({elem("1", x(1)), elem("1", x(2))}), PreconditionError);
}

TEST_CASE("negate, product and sum weights") {
  SignedSet a({elem("x1", x(1))});
  CHECK(ss_weight(ss_combine(SetOp::kNegate, a)) == -X(1));
  SignedSet s1({elem("x1", x(1)), elem("x2", x(2))});
  SignedSet s2({elem("x1", x(1)), elem("x2", x(2, 1, -1))});
  CHECK(ss_weight(s1) == X(1) + X(2));
  SignedSet prod = ss_combine(SetOp::kProduct, s1, &s2);
  CHECK(prod.size() == 4);
  CHECK(prod.negative_count() == 2);
  CHECK(ss_weight(prod) == X(1) * X(1) - X(2) * X(2));
  SignedSet neg = ss_negate(prod);
  SignedSet both = ss_combine(SetOp::kSum, prod, &neg);
  CHECK(both.size() == 8);
  CHECK(ss_weight(both).is_zero());
  CHECK(both[0].payload.item(0) == Payload::tag(0));
}

TEST_CASE("small named sets") {
  CHECK(range_set(4).size() == 4);
  CHECK(permutation_set(4).size() == 24);
  CHECK(unit_set().size() == 1);
  CHECK(ss_weight(binomial_pair(VarId::x(2), VarId::x(1))) == X(2) - X(1));
}

TEST_CASE("the difference-of-squares sijection verifies") {
  Sijection s = squares_example();
  CHECK(sij_verify(s).ok);
  CHECK(s.cross_pairs() == 2);
  CHECK(s.left_cancellations() == 1);
  CHECK(s.right_cancellations() == 0);
  CHECK_FALSE(s.is_bijection());
  auto keys = testing::pair_keys(s);
  CHECK(keys == std::vector<std::string>{"(x1,x1)=x1", "(x2,x2)=x2"});
}

TEST_CASE("identity verifies") {
  SetPtr a = share(ss_product(range_set(3), binomial_pair(VarId::x(2), VarId::x(1))));
  Sijection id = Sijection::identity(a);
  CHECK(sij_verify(id).ok);
  CHECK(id.is_bijection());
}

TEST_CASE("same-side pair of equal signs is reported") {
  SetPtr a = share(SignedSet({elem("1", x(1)), elem("2", x(1))}));
  SetPtr b = share(SignedSet());
  Sijection bad(a, b, {{Side::kLeft, 1}, {Side::kLeft, 0}}, {});
  VerifyReport r = sij_verify(bad);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.violations.empty());
}

TEST_CASE("cross pair with different weights is reported") {
  SetPtr a = share(SignedSet({elem("1", x(1))}));
  SetPtr b = share(SignedSet({elem("1", x(2))}));
  CHECK_FALSE(sij_verify(Sijection(a, b, {{Side::kRight, 0}}, {{Side::kLeft, 0}})).ok);
}

TEST_CASE("compose with identities") {
  Sijection s = squares_example();
  Sijection c = sij_compose(s, Sijection::identity(s.right_ptr()));
  CHECK(sij_verify(c).ok);
  CHECK(testing::pair_keys(c) == testing::pair_keys(s));
  CHECK(c.left_cancellations() == 1);
  SetPtr a = share(range_set(5));
  Sijection idid = sij_compose(Sijection::identity(a), Sijection::identity(a));
  CHECK(idid.is_bijection());
  CHECK(testing::pair_keys(idid).size() == 5);
  for (const auto& k : testing::pair_keys(idid)) CHECK(k.substr(0, k.find('=')) == k.substr(k.find('=') + 1));
}

TEST_CASE("compose with the inverse of a bijection is the identity") {
  SetPtr a = share(permutation_set(3));
  Sijection r = relabel(a, [](const SignedElement& e) {
    auto v = e.payload.as_ints();
    std::reverse(v.begin(), v.end());
    return Payload::ints(v);
  });
  Sijection back = sij_compose(r, r.inverse());
  for (const auto& k : testing::pair_keys(back)) CHECK(k.substr(0, k.find('=')) == k.substr(k.find('=') + 1));
  CHECK(back.is_bijection());
}

TEST_CASE("compose rejects mismatched middles") {
  Sijection s = squares_example();
  CHECK_THROWS_AS(sij_compose(s, s), MismatchError);
}

TEST_CASE("lifted sums and products") {
  SetPtr a = share(range_set(2)), b = share(range_set(3));
  Sijection ia = Sijection::identity(a), ib = Sijection::identity(b);
  Sijection sum = sij_lift(LiftOp::kSum, {&ia, &ib});
  CHECK(sum.is_bijection());
  CHECK(sum.left().size() == 5);
  for (const auto& k : testing::pair_keys(sum)) CHECK(k.substr(0, k.find('=')) == k.substr(k.find('=') + 1));

  Sijection s = squares_example();
  Sijection with_id = sij_lift(LiftOp::kProduct, {&s, &ia});
  CHECK(sij_verify(with_id).ok);
  for (std::uint32_t i = 0; i < with_id.left().size(); ++i) {
    ElementRef p = with_id.partner({Side::kLeft, i});
    CHECK(with_id.left()[i].payload.item(1) == with_id.element(p).payload.item(1));
  }

  Sijection sq = sij_product({&s, &s});
  CHECK(sq.left().size() == 16);
  CHECK(sq.right().size() == 4);
  CHECK(sij_verify(sq).ok);
}

TEST_CASE("tagged sums and negation") {
  Sijection s = squares_example();
  Sijection t = sij_sum_tagged({{Payload::ints({7}), &s}, {Payload::ints({3}), &s}});
  CHECK(sij_verify(t).ok);
  CHECK(t.left().size() == 8);
  CHECK(t.left()[0].payload.item(0) == Payload::ints({3}));
  Sijection n = sij_negate(s);
  CHECK(sij_verify(n).ok);
  CHECK(ss_weight(n.left()) == -ss_weight(s.left()));
  CHECK(sij_verify(s.inverse()).ok);
}

TEST_CASE("relabel_onto checks the target") {
  SetPtr a = share(range_set(3));
  SetPtr t = share(SignedSet({elem("4", Monomial::one()), elem("5", Monomial::one()), elem("6", Monomial::one())}));
  auto shift = [](const SignedElement& e) { return Payload::integer(e.payload.as_int() + 3); };
  CHECK(relabel_onto(a, t, shift).is_bijection());
  auto collide = [](const SignedElement&) { return Payload::integer(4); };
  CHECK_THROWS(relabel(a, collide));
  auto wrong = [](const SignedElement& e) { return Payload::integer(e.payload.as_int() + 2); };
  CHECK_THROWS(relabel_onto(a, t, wrong));
}

TEST_CASE("json shape") {
  auto j = squares_example().to_json();
  CHECK(j.contains("left"));
  CHECK(j.contains("right"));
  CHECK(j["pairs"].size() == 3);
}

}
