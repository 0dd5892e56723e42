#include "selberg/phi.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

#include "selberg/errors.hpp"
#include "selberg/matrix.hpp"

namespace selberg {

DiagonalFixing::DiagonalFixing(std::vector<int> p) : p_(std::move(p)) {
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (p_[i] < 1) throw PreconditionError("diagonal ranks must be positive");
    if (i > 0 && p_[i] <= p_[i - 1]) throw PreconditionError("diagonal ranks must be strictly increasing");
  }
}

Payload phi_payload(const Payload& s, const RankLists& lists) {
  std::vector<Payload> ls;
  ls.reserve(lists.size());
  for (const auto& l : lists) ls.push_back(Payload::ints(l));
  return Payload::tuple({s, Payload::tuple(ls)});
}

RankLists phi_lists(const Payload& phi_element) {
  RankLists out;
  for (const auto& l : phi_element.item(1).items()) out.push_back(l.as_ints());
  return out;
}

namespace {

std::vector<int> exponents_in(const Monomial& w, std::span<const VarId> xs) {
  std::vector<int> c(xs.size());
  int seen = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    c[i] = w.exponent(xs[i]);
    seen += c[i];
  }
  if (seen != w.degree()) throw PreconditionError("weight uses a variable outside X");
  return c;
}

void check_ranks(std::span<const int> p, int n_total) {
  std::set<int> seen;
  for (int v : p) {
    if (v < 1 || v > n_total) throw PreconditionError("diagonal rank outside [N]");
    if (!seen.insert(v).second) throw PreconditionError("diagonal ranks must be distinct");
  }
}

// Appends every way of filling lists of the given lengths with distinct free
// ranks, each list staying below its bound.
void fill_lists(const std::vector<int>& len, std::span<const int> bound, const std::vector<int>& free_ranks,
                const Payload& s, int sign, std::vector<SignedElement>& out) {
  std::size_t n = len.size();
  RankLists lists(n);
  std::vector<char> used(free_ranks.size(), 0);
  Monomial w;
  w.sign = sign;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == n) {
      out.push_back({phi_payload(s, lists), w});
      return;
    }
    if (static_cast<int>(lists[i].size()) == len[i]) {
      self(self, i + 1);
      return;
    }
    for (std::size_t r = 0; r < free_ranks.size(); ++r) {
      if (used[r] || free_ranks[r] >= bound[i]) continue;
      used[r] = 1;
      lists[i].push_back(free_ranks[r]);
      self(self, i);
      lists[i].pop_back();
      used[r] = 0;
    }
  };
  rec(rec, 0);
}

std::vector<int> free_ranks_of(std::span<const int> p, int n_total) {
  std::vector<int> out;
  for (int r = 1; r <= n_total; ++r)
    if (std::find(p.begin(), p.end(), r) == p.end()) out.push_back(r);
  return out;
}

void append_phi(const SignedSet& s, std::span<const VarId> xs, std::span<const int> p, int n_total, bool negate,
                std::vector<SignedElement>& out, const std::function<Payload(const Payload&)>& wrap) {
  std::vector<int> free_ranks = free_ranks_of(p, n_total);
  std::vector<SignedElement> local;
  for (const auto& e : s) {
    std::vector<int> len = exponents_in(e.weight, xs);
    int total = 0;
    for (int c : len) total += c;
    if (total != static_cast<int>(free_ranks.size()))
      throw PreconditionError("weight degree does not match N - n");
    local.clear();
    fill_lists(len, p, free_ranks, e.payload, negate ? -e.weight.sign : e.weight.sign, local);
    for (auto& le : local) out.push_back({wrap(le.payload), le.weight});
  }
}

std::vector<int> with_inserted(std::span<const int> p_rest, std::size_t j, int v) {
  std::vector<int> p(p_rest.begin(), p_rest.end());
  p.insert(p.begin() + static_cast<std::ptrdiff_t>(j - 1), v);
  return p;
}

}  // namespace

SignedSet build_phi(const SignedSet& s, std::span<const VarId> xs, std::span<const int> p, int n_total) {
  if (p.size() != xs.size()) throw PreconditionError("P and X differ in length");
  check_ranks(p, n_total);
  std::vector<SignedElement> out;
  append_phi(s, xs, p, n_total, false, out, [](const Payload& q) { return q; });
  return SignedSet(std::move(out));
}

SignedSet build_phi(const SignedSet& s, std::span<const VarId> xs, const DiagonalFixing& p) {
  int degree = s.empty() ? 0 : s[0].weight.degree();
  for (const auto& e : s)
    if (e.weight.degree() != degree) throw PreconditionError("weights of differing degree");
  return build_phi(s, xs, p.values(), static_cast<int>(xs.size()) + degree);
}

SignedSet phi_sum_over(const SignedSet& s, std::span<const VarId> xs, std::span<const int> p_rest, std::size_t j,
                       std::span<const int> values, int n_total, bool negate) {
  if (p_rest.size() + 1 != xs.size() || j < 1 || j > xs.size()) throw PreconditionError("bad free index");
  std::vector<SignedElement> out;
  for (int v : values) {
    std::vector<int> p = with_inserted(p_rest, j, v);
    check_ranks(p, n_total);
    Payload pv = Payload::integer(v);
    append_phi(s, xs, p, n_total, negate, out, [&](const Payload& q) { return Payload::tuple({pv, q}); });
  }
  return SignedSet(std::move(out));
}

SignedSet shift_exponent(const SignedSet& s, VarId xj, VarId xk) {
  std::vector<SignedElement> out;
  out.reserve(s.size());
  for (const auto& e : s) {
    Monomial rest;
    rest.sign = e.weight.sign;
    for (const auto& [v, k] : e.weight.exps)
      if (v != xj) rest.exps.emplace_back(v, k);
    out.push_back({e.payload, rest * Monomial::var(xk, e.weight.exponent(xj) + 1)});
  }
  return SignedSet(std::move(out));
}

Sijection trick_one_sijection(const Dag& g, const VertexName& b, const VertexName& gv, const VertexName& v,
                              const Fixing& fixed) {
  int ib = g.require(b), ig = g.require(gv), iv = g.require(v);
  if (!g.has_edge(iv, ib) || !g.has_edge(ib, ig)) throw PreconditionError("needs edges v -> b and b -> g");
  Dag g1 = g.without_edges({{b, gv}});
  Dag detached = g.without_edges({{v, b}, {b, gv}});
  if (!detached.reaches(iv, ig)) throw PreconditionError("v must reach g once b is detached");
  SetPtr left = share(topo_set(g, fixed));
  SignedSet t1 = topo_set(g1, fixed);
  // If b still reaches g, adding g -> b closes a cycle and G2 has no orders.
  SignedSet t2;
  if (!detached.reaches(ib, ig)) t2 = ss_negate(topo_set(detached.without_edges({}, {{gv, b}}), fixed));
  SetPtr right = share(ss_sum(t1, t2));
  auto ub = static_cast<std::size_t>(ib), ug = static_cast<std::size_t>(ig);
  return Sijection::from_partner(left, right, [&](Side side, const SignedElement& e) -> std::pair<Side, Payload> {
    if (side == Side::kLeft) return {Side::kRight, sum_payload(Payload::tag(0), e.payload)};
    int tag = e.payload.item(0).as_tag();
    Payload f = e.payload.item(1);
    if (tag == 1) return {Side::kRight, sum_payload(Payload::tag(0), f)};
    std::vector<int> r = f.as_ints();
    if (r[ub] > r[ug]) return {Side::kLeft, f};
    return {Side::kRight, sum_payload(Payload::tag(1), f)};
  });
}

Sijection topo_phi_bijection(std::span<const int> alpha, const DiagonalFixing& p, std::span<const VarId> xs_in) {
  std::size_t n = alpha.size();
  if (p.size() != n) throw PreconditionError("P and alpha differ in length");
  std::vector<VarId> xs(xs_in.begin(), xs_in.end());
  if (xs.empty())
    for (std::size_t i = 1; i <= n; ++i) xs.push_back(VarId::x(static_cast<int>(i)));
  if (xs.size() != n) throw PreconditionError("X and alpha differ in length");

  std::vector<int> al(alpha.begin(), alpha.end());
  Dag g = graph_gx(al);
  int n_total = static_cast<int>(g.size());
  Fixing fix;
  for (std::size_t i = 0; i < n; ++i) fix[static_cast<int>(i)] = p.values()[i];
  SetPtr left = share(topo_set(g, fix));
  SetPtr right = share(build_phi(vandermonde_set(xs, alpha), xs, p.values(), n_total));

  // (i, j) of every w in vertex order, 0-based.
  std::vector<std::pair<std::size_t, std::size_t>> w_ends;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (int k = 0; k < alpha[i] * alpha[j]; ++k) w_ends.emplace_back(i, j);
  const auto& pv = p.values();

  auto to_phi = [&](const std::vector<Payload>& choices, const std::vector<int>& h) {
    RankLists lists(n);
    for (std::size_t t = 0; t < w_ends.size(); ++t) {
      std::size_t slot = choices[t].as_var() == xs[w_ends[t].second] ? w_ends[t].second : w_ends[t].first;
      lists[slot].push_back(h[t]);
    }
    return phi_payload(Payload::tuple(choices), lists);
  };

  return Sijection::from_partner(left, right, [&](Side side, const SignedElement& e) -> std::pair<Side, Payload> {
    if (side == Side::kLeft) {
      std::vector<int> f = e.payload.as_ints();
      std::vector<Payload> choices;
      std::vector<int> h;
      for (std::size_t t = 0; t < w_ends.size(); ++t) {
        choices.push_back(Payload::var(xs[w_ends[t].second]));
        h.push_back(f[n + t]);
      }
      return {Side::kRight, to_phi(choices, h)};
    }
    // Consume each list in w order to recover the rank of every w.
    std::vector<Payload> choices = e.payload.item(0).items();
    RankLists lists = phi_lists(e.payload);
    std::vector<std::size_t> next(n, 0);
    std::vector<int> h(w_ends.size());
    std::optional<std::size_t> bad;
    for (std::size_t t = 0; t < w_ends.size(); ++t) {
      auto [i, j] = w_ends[t];
      std::size_t slot = choices[t].as_var() == xs[j] ? j : i;
      h[t] = lists[slot][next[slot]++];
      if (!bad && h[t] < pv[i]) bad = t;
    }
    if (bad) {
      auto [i, j] = w_ends[*bad];
      choices[*bad] = Payload::var(choices[*bad].as_var() == xs[j] ? xs[i] : xs[j]);
      return {Side::kRight, to_phi(choices, h)};
    }
    std::vector<int> f(n + w_ends.size());
    for (std::size_t i = 0; i < n; ++i) f[i] = pv[i];
    for (std::size_t t = 0; t < w_ends.size(); ++t) f[n + t] = h[t];
    return {Side::kLeft, Payload::ints(f)};
  });
}

Sijection lift_through_phi(const Sijection& psi, std::span<const VarId> xs, std::span<const int> p, int n_total) {
  SetPtr left = share(build_phi(psi.left(), xs, p, n_total));
  SetPtr right = share(build_phi(psi.right(), xs, p, n_total));
  return Sijection::from_partner(left, right, [&](Side side, const SignedElement& e) -> std::pair<Side, Payload> {
    const SignedSet& own = side == Side::kLeft ? psi.left() : psi.right();
    auto idx = own.find(e.payload.item(0));
    if (!idx) throw InternalError("φ element without a base element");
    ElementRef q = psi.partner({side, *idx});
    return {q.side, Payload::tuple({psi.element(q).payload, e.payload.item(1)})};
  });
}

Sijection phi_insert_bijection(const SignedSet& s, std::span<const VarId> xs, std::span<const int> p_rest,
                               std::size_t j, std::size_t k, int ell, int n_total) {
  std::size_t n = xs.size();
  if (j < 1 || j > n || k < 1 || k > n || j == k) throw PreconditionError("bad insertion indices");
  if (p_rest.size() + 1 != n) throw PreconditionError("P must omit exactly the inserted index");
  if (ell < 0) throw PreconditionError("exponent must be nonnegative");
  for (const auto& e : s)
    if (e.weight.exponent(xs[j - 1]) != ell) throw PreconditionError("every weight needs x_j to the power l");
  check_ranks(p_rest, n_total);

  int pk = p_rest[k < j ? k - 1 : k - 2];
  std::vector<int> values;
  for (int v : free_ranks_of(p_rest, n_total))
    if (v < pk) values.push_back(v);
  SignedSet sum = phi_sum_over(s, xs, p_rest, j, values, n_total);
  SetPtr left = share(ss_product(range_set(ell + 1), sum));

  std::vector<VarId> xs_out(xs.begin(), xs.end());
  xs_out.erase(xs_out.begin() + static_cast<std::ptrdiff_t>(j - 1));
  SetPtr right = share(build_phi(shift_exponent(s, xs[j - 1], xs[k - 1]), xs_out, p_rest, n_total));

  return relabel_onto(left, right, [&](const SignedElement& e) {
    int pos = e.payload.item(0).as_int();
    Payload inner = e.payload.item(1);
    int v = inner.item(0).as_int();
    Payload phi = inner.item(1);
    RankLists lists = phi_lists(phi);
    std::vector<int> lj = lists[j - 1];
    lj.insert(lj.begin() + (pos - 1), v);
    lists[k - 1].insert(lists[k - 1].end(), lj.begin(), lj.end());
    lists.erase(lists.begin() + static_cast<std::ptrdiff_t>(j - 1));
    return phi_payload(phi.item(0), lists);
  });
}

Sijection phi_split_sijection(const SignedSet& s, std::span<const VarId> xs, std::span<const int> p_rest,
                              std::size_t j, int n_total) {
  std::size_t n = xs.size();
  if (j < 2 || j + 1 > n) throw PreconditionError("split needs neighbours on both sides");
  if (p_rest.size() + 1 != n) throw PreconditionError("P must omit exactly the split index");
  check_ranks(p_rest, n_total);
  int lo = p_rest[j - 2], hi = p_rest[j - 1];
  if (lo > hi) throw PreconditionError("split needs p_{j-1} < p_{j+1}");
  std::vector<int> mid, below_hi, below_lo;
  for (int v : free_ranks_of(p_rest, n_total)) {
    if (v > lo && v < hi) mid.push_back(v);
    if (v < hi) below_hi.push_back(v);
    if (v < lo) below_lo.push_back(v);
  }
  SetPtr left = share(phi_sum_over(s, xs, p_rest, j, mid, n_total));
  SignedSet r0 = phi_sum_over(s, xs, p_rest, j, below_hi, n_total);
  SignedSet r1 = phi_sum_over(s, xs, p_rest, j, below_lo, n_total, true);
  SetPtr right = share(ss_sum(r0, r1));
  return Sijection::from_partner(left, right, [&](Side side, const SignedElement& e) -> std::pair<Side, Payload> {
    if (side == Side::kLeft) return {Side::kRight, sum_payload(Payload::tag(0), e.payload)};
    int tag = e.payload.item(0).as_tag();
    Payload inner = e.payload.item(1);
    if (tag == 1) return {Side::kRight, sum_payload(Payload::tag(0), inner)};
    if (inner.item(0).as_int() > lo) return {Side::kLeft, inner};
    return {Side::kRight, sum_payload(Payload::tag(1), inner)};
  });
}

}  // namespace selberg
