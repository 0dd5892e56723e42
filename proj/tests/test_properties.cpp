#include "doctest.h"

#include "generators.hpp"

using namespace selberg;

namespace {

using namespace gen;

bool check(const Sijection& s) {
  VerifyReport r = sij_verify(s);
  if (!r.ok) MESSAGE(r.violations.front());
  return r.ok && ss_weight(s.left()) == ss_weight(s.right());
}

}  // namespace

TEST_SUITE("properties") {

TEST_CASE("every construction yields a valid sijection") {
  Rng rng(20240611);
  const auto& gens = generators();
  int cases = 0;
  for (int round = 0; round < 60; ++round)
    for (const auto& [name, gen] : gens) {
      Sijection s = gen(rng);
      INFO(name << " round " << round);
      CHECK(check(s));
      CHECK(check(combine(rng, s)));
      cases += 2;
    }
  CHECK(cases >= 500);
}

TEST_CASE("merge maps cross every pair") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    Sijection m = gen_merge(rng);
    CHECK(m.is_bijection());
    CHECK(m.left().size() == m.right().size());
  }
}

TEST_CASE("row operations preserve the determinant weight") {
  Rng rng(11);
  for (int i = 0; i < 60; ++i) {
    SignedSetMatrix m = random_matrix(rng);
    std::size_t a = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(m.rows())));
    std::size_t b = a % m.rows() + 1;
    RowMode mode = uniform(rng, 0, 1) ? RowMode::kAdd : RowMode::kSub;
    Sijection s = row_subtract_sijection(m, a, b, mode);
    CHECK(check(s));
    CHECK(ss_weight(s.left()) == permutation_determinant(weight_matrix(m)));
    CHECK(ss_weight(s.right()) == permutation_determinant(weight_matrix(row_combined(m, a, b, mode))));
  }
}

TEST_CASE("composition is associative on endpoints") {
  Rng rng(3);
  for (int i = 0; i < 40; ++i) {
    Sijection s = gen_split(rng);
    Sijection t = relabel(s.right_ptr(), [](const SignedElement& e) { return Payload::tuple({Payload::integer(1), e.payload}); });
    Sijection u = relabel(t.right_ptr(), [](const SignedElement& e) { return Payload::tuple({Payload::integer(2), e.payload}); });
    Sijection l = sij_compose(sij_compose(s, t), u), r = sij_compose(s, sij_compose(t, u));
    CHECK(check(l));
    CHECK(l.to_json() == r.to_json());
  }
}

}
