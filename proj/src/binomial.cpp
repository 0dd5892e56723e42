#include "selberg/binomial.hpp"

#include "selberg/errors.hpp"

namespace selberg {

std::vector<std::vector<int>> weak_compositions(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || n < 0) return out;
  if (n == 0) {
    if (k == 0) out.emplace_back();
    return out;
  }
  // colex: compare from the last part; recurse on the last part's value
  for (int last = 0; last <= k; ++last)
    for (auto& head : weak_compositions(n - 1, k - last)) {
      head.push_back(last);
      out.push_back(std::move(head));
    }
  return out;
}

SignedSet build_B(std::span<const VarId> vars, int k) {
  std::vector<SignedElement> out;
  for (const auto& a : weak_compositions(static_cast<int>(vars.size()), k)) {
    Monomial w;
    for (std::size_t i = 0; i < a.size(); ++i) w = w * Monomial::var(vars[i], a[i]);
    out.push_back({Payload::ints(a), std::move(w)});
  }
  return SignedSet(std::move(out));
}

Sijection merge_bijection(VarId x, int q, int j) {
  if (q < 1 || q > j) throw PreconditionError("merge_bijection needs 1 <= q <= j");
  std::vector<VarId> wide(static_cast<std::size_t>(q) + 1, x), narrow(static_cast<std::size_t>(q), x);
  SignedSet bw = build_B(wide, j - q), bn = build_B(narrow, j - q);
  SignedSet rq = range_set(q), rj = range_set(j);
  auto left = share(ss_product(rq, bw));
  auto right = share(ss_product(rj, bn));
  return relabel_onto(left, right, [](const SignedElement& e) {
    int l = e.payload.item(0).as_int();
    auto a = e.payload.item(1).as_ints();
    int pos = l;
    for (int i = 0; i < l; ++i) pos += a[static_cast<std::size_t>(i)];
    std::vector<int> merged;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
      if (i == l) continue;
      merged.push_back(i == l - 1 ? a[static_cast<std::size_t>(i)] + a[static_cast<std::size_t>(i) + 1]
                                  : a[static_cast<std::size_t>(i)]);
    }
    return Payload::tuple({Payload::integer(pos), Payload::ints(merged)});
  });
}

Sijection split_sijection_any(VarId xi, VarId xj, std::span<const VarId> ys, int k) {
  if (xi == xj) throw PreconditionError("split_sijection needs distinct variables");
  std::vector<VarId> vj{xj}, vi{xi}, vij{xi, xj};
  vj.insert(vj.end(), ys.begin(), ys.end());
  vi.insert(vi.end(), ys.begin(), ys.end());
  vij.insert(vij.end(), ys.begin(), ys.end());
  SignedSet bj = build_B(vj, k), bi = build_B(vi, k);
  SignedSet nbi = ss_negate(bi);
  auto left = share(ss_sum(bj, nbi));
  SignedSet pair = binomial_pair(xj, xi);
  SignedSet lower = build_B(vij, k - 1);
  auto right = share(ss_product(pair, lower));

  const Payload plus = Payload::tag(0), minus = Payload::tag(1);
  const Payload pj = Payload::var(xj), pi = Payload::var(xi);
  // Each a in B((xi, xj, Y), k) owns two elements: a "first" role (L+ if a_1 = 0,
  // else R- via a - e_1) and a "second" role (L- if a_2 = 0, else R+ via a - e_2).
  // The two roles of the same a are partners.
  auto first_role = [&](std::vector<int> a) -> std::pair<Side, Payload> {
    if (a[0] == 0) {
      a.erase(a.begin());
      return {Side::kLeft, sum_payload(plus, Payload::ints(a))};
    }
    --a[0];
    return {Side::kRight, Payload::tuple({pi, Payload::ints(a)})};
  };
  auto second_role = [&](std::vector<int> a) -> std::pair<Side, Payload> {
    if (a[1] == 0) {
      a.erase(a.begin() + 1);
      return {Side::kLeft, sum_payload(minus, Payload::ints(a))};
    }
    --a[1];
    return {Side::kRight, Payload::tuple({pj, Payload::ints(a)})};
  };

  return Sijection::from_partner(left, right, [&](Side s, const SignedElement& e) {
    std::vector<int> a;
    bool is_first;
    if (s == Side::kLeft) {
      auto b = e.payload.item(1).as_ints();
      is_first = e.payload.item(0) == plus;
      a = b;
      a.insert(a.begin() + (is_first ? 0 : 1), 0);
    } else {
      a = e.payload.item(1).as_ints();
      is_first = e.payload.item(0) == pi;
      ++a[is_first ? 0 : 1];
    }
    return is_first ? second_role(a) : first_role(a);
  });
}

Sijection split_sijection(VarId xi, VarId xj, std::span<const VarId> ys, int k) {
  if (k < 1) throw PreconditionError("split_sijection needs k >= 1");
  return split_sijection_any(xi, xj, ys, k);
}

}  // namespace selberg
