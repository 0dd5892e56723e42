#include "generators.hpp"

#include <algorithm>
#include <numeric>

#include "helpers.hpp"
#include "selberg/binomial.hpp"
#include "selberg/dag.hpp"
#include "selberg/phi.hpp"

using namespace selberg;

namespace gen {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Monomial random_monomial(Rng& rng) {
  Monomial m;
  m.sign = uniform(rng, 0, 1) ? 1 : -1;
  for (std::uint32_t v = 1; v <= 2; ++v) {
    int e = uniform(rng, 0, 2);
    if (e) m = m * Monomial::var(VarId::x(v), e);
  }
  return m;
}

SignedSet random_set(Rng& rng, int max_size) {
  std::vector<SignedElement> e;
  int n = uniform(rng, 0, max_size);
  for (int i = 0; i < n; ++i) e.push_back({Payload::integer(i), random_monomial(rng)});
  return SignedSet(std::move(e));
}

std::vector<int> random_ranks(Rng& rng, int count, int n_total) {
  std::vector<int> r(static_cast<std::size_t>(n_total));
  std::iota(r.begin(), r.end(), 1);
  std::shuffle(r.begin(), r.end(), rng);
  r.resize(static_cast<std::size_t>(count));
  return r;
}

// Exponent vector with x_j fixed to ell and total degree n_total - n.
Monomial weight_with(Rng& rng, std::size_t n, std::size_t j, int ell, int extra) {
  Monomial m = Monomial::var(VarId::x(static_cast<std::uint32_t>(j)), ell);
  for (int k = 0; k < extra; ++k) {
    std::size_t v = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(n)));
    if (v == j) v = v % n + 1;
    m = m * Monomial::var(VarId::x(static_cast<std::uint32_t>(v)));
  }
  m.sign = uniform(rng, 0, 1) ? 1 : -1;
  return m;
}

Sijection gen_relabel(Rng& rng) {
  SetPtr a = share(random_set(rng, 5));
  int shift = uniform(rng, 1, 9);
  return relabel(a, [shift](const SignedElement& e) { return Payload::ints({e.payload.as_int() + shift, shift}); });
}

Sijection gen_merge(Rng& rng) {
  int q = uniform(rng, 1, 3);
  return merge_bijection(VarId::x(static_cast<std::uint32_t>(uniform(rng, 1, 3))), q, q + uniform(rng, 0, 3));
}

Sijection gen_split(Rng& rng) {
  std::vector<VarId> ys;
  for (int i = uniform(rng, 0, 2); i > 0; --i) ys.push_back(VarId::y(static_cast<std::uint32_t>(i)));
  int k = uniform(rng, -1, 3);
  if (k >= 1 && uniform(rng, 0, 1)) return split_sijection(VarId::x(1), VarId::x(2), ys, k);
  return split_sijection_any(VarId::x(1), VarId::x(2), ys, k);
}

SignedSetMatrix random_matrix(Rng& rng) {
  std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3));
  SignedSetMatrix m(n, n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j) m.set(i, j, random_set(rng, 2));
  return m;
}

Sijection gen_row_op(Rng& rng) {
  SignedSetMatrix m = random_matrix(rng);
  std::size_t i = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(m.rows())));
  std::size_t j = i % m.rows() + 1;
  return row_subtract_sijection(m, i, j, uniform(rng, 0, 1) ? RowMode::kAdd : RowMode::kSub);
}

std::vector<int> random_alpha(Rng& rng, int max_len, int max_sum) {
  std::vector<int> a;
  int len = uniform(rng, 1, max_len), sum = 0;
  for (int i = 0; i < len; ++i) {
    int v = uniform(rng, 0, std::max(0, std::min(2, max_sum - sum)));
    a.push_back(v);
    sum += v;
  }
  return a;
}

Sijection gen_gv(Rng& rng) {
  std::vector<int> a = random_alpha(rng, 3, 4);
  auto xs = testing::xs(static_cast<std::uint32_t>(a.size()));
  std::vector<VarId> ys;
  if (uniform(rng, 0, 1)) ys.push_back(VarId::y(1));
  return gv_sijection(ys, xs, a);
}

Sijection gen_lift_entrywise(Rng& rng) {
  std::vector<int> a = random_alpha(rng, 2, 3);
  if (std::accumulate(a.begin(), a.end(), 0) == 0) a[0] = 1;
  auto xs = testing::xs(static_cast<std::uint32_t>(a.size()));
  std::vector<VarId> ys;
  SignedSetMatrix h = build_H(ys, xs, a);
  std::size_t r = static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(h.rows())));
  std::vector<Sijection> cols;
  for (std::size_t c = 1; c <= h.cols(); ++c) {
    SetPtr e = h.ptr(r, c);
    cols.push_back(relabel(e, [](const SignedElement& el) { return Payload::tuple({Payload::symbol("m"), el.payload}); }));
  }
  return lift_entrywise(h, r, cols);
}

Sijection gen_topo_phi(Rng& rng) {
  std::vector<int> a = random_alpha(rng, 3, 4);
  int n = static_cast<int>(a.size()), n_total = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) n_total += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)];
  if (n_total > 9) a.assign(a.size(), 1), n_total = n + n * (n - 1) / 2;
  std::vector<int> p = random_ranks(rng, n, n_total);
  std::sort(p.begin(), p.end());
  return topo_phi_bijection(a, DiagonalFixing(p));
}

Sijection gen_phi_lift(Rng& rng) {
  std::vector<int> a = random_alpha(rng, 2, 3);
  auto xs = testing::xs(static_cast<std::uint32_t>(a.size()));
  std::vector<VarId> ys;
  Sijection g = gv_sijection(ys, xs, a);
  int n = static_cast<int>(a.size()), deg = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) deg += a[static_cast<std::size_t>(i)] * a[static_cast<std::size_t>(j)];
  std::vector<int> p = random_ranks(rng, n, n + deg);
  return lift_through_phi(g, xs, p, n + deg);
}

Sijection gen_phi_insert(Rng& rng) {
  std::size_t n = 3;
  auto xs = testing::xs(3);
  std::size_t j = static_cast<std::size_t>(uniform(rng, 1, 3));
  std::size_t k = j % n + 1 + static_cast<std::size_t>(uniform(rng, 0, 1));
  if (k > n) k = 1;
  if (k == j) k = j % n + 1;
  int ell = uniform(rng, 0, 2), extra = uniform(rng, 0, 2);
  int n_total = 3 + ell + extra;
  std::vector<SignedElement> el;
  for (int i = uniform(rng, 1, 3); i > 0; --i) el.push_back({Payload::integer(i), weight_with(rng, n, j, ell, extra)});
  SignedSet s(std::move(el));
  return phi_insert_bijection(s, xs, random_ranks(rng, 2, n_total), j, k, ell, n_total);
}

Sijection gen_phi_split(Rng& rng) {
  auto xs = testing::xs(3);
  int extra = uniform(rng, 0, 3);
  std::vector<SignedElement> el;
  for (int i = uniform(rng, 1, 3); i > 0; --i)
    el.push_back({Payload::integer(i), weight_with(rng, 3, 1, uniform(rng, 0, 1), extra)});
  std::vector<SignedElement> fixed;
  // Total degree must be uniform; drop elements that drifted.
  int deg = el.front().weight.degree();
  for (auto& e : el)
    if (e.weight.degree() == deg) fixed.push_back(e);
  SignedSet s(std::move(fixed));
  std::vector<int> p = random_ranks(rng, 2, 3 + deg);
  std::sort(p.begin(), p.end());
  return phi_split_sijection(s, xs, p, 2, 3 + deg);
}

Sijection gen_trick(Rng& rng) {
  int n = uniform(rng, 3, 6);
  std::vector<VertexName> vs;
  for (int i = 1; i <= n; ++i) vs.push_back(vname('u', {i}));
  int g = uniform(rng, 1, n - 2), b = uniform(rng, g + 1, n - 1), v = uniform(rng, b + 1, n);
  std::vector<std::pair<VertexName, VertexName>> edges{
      {vs[static_cast<std::size_t>(v - 1)], vs[static_cast<std::size_t>(b - 1)]},
      {vs[static_cast<std::size_t>(b - 1)], vs[static_cast<std::size_t>(g - 1)]},
      {vs[static_cast<std::size_t>(v - 1)], vs[static_cast<std::size_t>(g - 1)]}};
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j < i; ++j) {
      std::pair<VertexName, VertexName> e{vs[static_cast<std::size_t>(i - 1)], vs[static_cast<std::size_t>(j - 1)]};
      if (std::find(edges.begin(), edges.end(), e) == edges.end() && uniform(rng, 0, 3) == 0) edges.push_back(e);
    }
  Dag d(vs, edges);
  Fixing fix;
  if (uniform(rng, 0, 2) == 0) fix[uniform(rng, 0, n - 1)] = uniform(rng, 1, n);
  return trick_one_sijection(d, vs[static_cast<std::size_t>(b - 1)], vs[static_cast<std::size_t>(g - 1)],
                             vs[static_cast<std::size_t>(v - 1)], fix);
}

using Gen = std::function<Sijection(Rng&)>;

const std::vector<std::pair<const char*, Gen>>& generators() {
  static const std::vector<std::pair<const char*, Gen>> g{
      {"relabel", gen_relabel},       {"merge", gen_merge},
      {"split", gen_split},           {"row_op", gen_row_op},
      {"gv", gen_gv},                 {"lift_entrywise", gen_lift_entrywise},
      {"topo_phi", gen_topo_phi},     {"lift_through_phi", gen_phi_lift},
      {"phi_insert", gen_phi_insert}, {"phi_split", gen_phi_split},
      {"trick_one", gen_trick}};
  return g;
}

// Wraps a sijection in a randomly chosen combinator.
Sijection combine(Rng& rng, const Sijection& s) {
  switch (uniform(rng, 0, 6)) {
    case 0: return sij_negate(s);
    case 1: return s.inverse();
    case 2: return sij_compose(s, s.inverse());
    case 3: return sij_compose(Sijection::identity(s.left_ptr()), s);
    case 4: {
      Sijection other = gen_merge(rng);
      return sij_sum({&s, &other});
    }
    case 5: {
      if (s.left().size() * 3 > 400 || s.right().size() * 3 > 400) return s;
      Sijection other = gen_split(rng);
      return sij_product({&s, &other});
    }
    default: return s;
  }
}

}  // namespace gen
