#include "selberg/crux.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>

#include "selberg/binomial.hpp"
#include "selberg/errors.hpp"
#include "selberg/matrix.hpp"

namespace selberg {

namespace {

std::vector<VarId> x_range(std::size_t n, std::size_t step = 1) {
  std::vector<VarId> xs;
  for (std::size_t i = 0; i < n; ++i) xs.push_back(VarId::x(static_cast<int>(1 + i * step)));
  return xs;
}

int total(std::span<const int> a) {
  int s = 0;
  for (int v : a) s += v;
  return s;
}

std::vector<int> lehmer_code(const std::vector<int>& perm) {
  std::vector<int> c(perm.size());
  for (std::size_t j = 0; j < perm.size(); ++j) {
    int above = 0;
    for (std::size_t i = 0; i < j; ++i)
      if (perm[i] > perm[j]) ++above;
    c[j] = 1 + above;
  }
  return c;
}

std::vector<int> lehmer_decode(const std::vector<int>& c) {
  std::size_t m = c.size();
  std::vector<int> left, perm(m);
  for (std::size_t v = 1; v <= m; ++v) left.push_back(static_cast<int>(v));
  for (std::size_t j = m; j >= 1; --j) {
    // Rank of perm[j] among the first j values, counted from below.
    auto r = static_cast<std::ptrdiff_t>(j) - c[j - 1];
    perm[j - 1] = left[static_cast<std::size_t>(r)];
    left.erase(left.begin() + r);
  }
  return perm;
}

std::shared_ptr<const Sijection> cached_gv(const std::vector<VarId>& xs, std::span<const int> alpha) {
  static std::mutex mu;
  static std::map<std::pair<std::vector<std::uint32_t>, std::vector<int>>, std::shared_ptr<const Sijection>> cache;
  std::vector<std::uint32_t> codes;
  for (auto v : xs) codes.push_back(v.code());
  auto key = std::make_pair(codes, std::vector<int>(alpha.begin(), alpha.end()));
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto made = std::make_shared<const Sijection>(gv_sijection({}, xs, alpha));
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, made);
  return made;
}

// All even ranks with p_{2i-1} < p_{2i} < p_{2i+1}, for the evens from index
// `first` (0-based among the n-1 evens) on.
std::vector<std::vector<int>> even_combos(const std::vector<int>& p_odd, std::size_t first) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t i = first; i + 1 < p_odd.size(); ++i) {
    std::vector<std::vector<int>> next;
    for (const auto& c : out)
      for (int v = p_odd[i] + 1; v < p_odd[i + 1]; ++v) {
        next.push_back(c);
        next.back().push_back(v);
      }
    out = std::move(next);
  }
  return out;
}

std::vector<int> interleave(const std::vector<int>& p_odd, const std::vector<int>& p_even) {
  std::vector<int> p;
  for (std::size_t i = 0; i < p_odd.size(); ++i) {
    p.push_back(p_odd[i]);
    if (i < p_even.size()) p.push_back(p_even[i]);
  }
  return p;
}

Sijection chain(std::optional<Sijection>& acc, const Sijection& next) {
  acc = acc ? sij_compose(*acc, next) : next;
  return *acc;
}

struct DParts {
  std::vector<int> sigma;
  std::vector<Payload> picks;
};

DParts split_d(const Payload& d) { return {d.item(0).as_ints(), d.item(1).items()}; }

Sijection cancel_pair(const SetPtr& e) {
  return Sijection::from_partner(e, share(SignedSet()), [](Side, const SignedElement& x) -> std::pair<Side, Payload> {
    int tag = x.payload.item(0).as_tag();
    return {Side::kLeft, sum_payload(Payload::tag(1 - tag), x.payload.item(1))};
  });
}

}  // namespace

int crux_vertex_count(std::span<const int> alpha_odd) {
  int n = static_cast<int>(alpha_odd.size());
  for (std::size_t i = 0; i < alpha_odd.size(); ++i)
    for (std::size_t j = i + 1; j < alpha_odd.size(); ++j) n += (alpha_odd[i] + 1) * (alpha_odd[j] + 1);
  return n;
}

std::vector<int> crux_odd_part(std::span<const int> alpha) {
  if (alpha.size() % 2 == 0) throw PreconditionError("alpha must have odd length");
  std::vector<int> odd;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] < 0) throw PreconditionError("alpha entries must be nonnegative");
    if (i % 2 == 1 && alpha[i] != 1) throw PreconditionError("even-position alpha entries must be 1");
    if (i % 2 == 0) odd.push_back(alpha[i]);
  }
  return odd;
}

SignedSet crux_left_set(std::span<const int> alpha, const DiagonalFixing& p_odd) {
  std::vector<int> odd = crux_odd_part(alpha);
  if (p_odd.size() != odd.size()) throw PreconditionError("need one rank per odd position");
  Fixing fix;
  for (std::size_t i = 0; i < odd.size(); ++i) fix[static_cast<int>(2 * i)] = p_odd.values()[i];
  return topo_set(graph_gx(std::vector<int>(alpha.begin(), alpha.end())), fix);
}

SignedSet crux_right_set(std::span<const int> alpha, const DiagonalFixing& p_odd) {
  std::vector<int> odd = crux_odd_part(alpha);
  if (p_odd.size() != odd.size()) throw PreconditionError("need one rank per odd position");
  for (int& a : odd) ++a;
  Fixing fix;
  for (std::size_t i = 0; i < odd.size(); ++i) fix[static_cast<int>(i)] = p_odd.values()[i];
  return topo_set(graph_gx(odd), fix);
}

Sijection crux_part1(std::span<const int> alpha, const DiagonalFixing& p, std::span<const VarId> xs_in) {
  std::vector<VarId> xs(xs_in.begin(), xs_in.end());
  if (xs.empty()) xs = x_range(alpha.size());
  Sijection tp = topo_phi_bijection(alpha, p, xs);
  int n_total = static_cast<int>(graph_gx(std::vector<int>(alpha.begin(), alpha.end())).size());
  auto gv = cached_gv(xs, alpha);
  return sij_compose(tp, lift_through_phi(*gv, xs, p.values(), n_total).inverse());
}

Sijection crux_part2(std::span<const int> alpha) {
  std::vector<int> odd = crux_odd_part(alpha);
  std::vector<VarId> xs = x_range(alpha.size());
  int m = total(alpha);
  if (m < 1) throw PreconditionError("part two needs a positive total");
  auto um = static_cast<std::size_t>(m);
  SignedSetMatrix h = build_H({}, xs, alpha);
  SignedSet dh = expand_D(h);
  SetPtr left = share(ss_product(permutation_set(m), dh));
  std::optional<Sijection> acc;

  // Lehmer code: [m!] <-> [1] × [2] × ... × [m].
  std::vector<SignedSet> ranges;
  for (int j = 1; j <= m; ++j) ranges.push_back(range_set(j));
  std::vector<const SignedSet*> rp;
  for (const auto& r : ranges) rp.push_back(&r);
  SetPtr coded = share(ss_product(ss_product(rp), dh));
  chain(acc, relabel_onto(left, coded, [](const SignedElement& e) {
    return Payload::tuple({Payload::ints(lehmer_code(e.payload.item(0).as_ints())), e.payload.item(1)});
  }));

  // Spread the code over the columns: entry (i, j) becomes [j] × H_ij.
  SignedSetMatrix cur(um, um);
  for (std::size_t i = 1; i <= um; ++i)
    for (std::size_t j = 1; j <= um; ++j) cur.set(i, j, ss_product(range_set(static_cast<int>(j)), h.at(i, j)));
  chain(acc, relabel_onto(coded, share(expand_D(cur)), [](const SignedElement& e) {
    std::vector<int> c = e.payload.item(0).as_ints();
    DParts d = split_d(e.payload.item(1));
    for (std::size_t i = 0; i < d.picks.size(); ++i)
      d.picks[i] = Payload::tuple({Payload::integer(c[static_cast<std::size_t>(d.sigma[i] - 1)]), d.picks[i]});
    return d_payload(d.sigma, d.picks);
  }));

  // Rows of odd blocks: [j] × B(x^l, j-l) <-> [l] × B(x^{l+1}, j-l).
  std::vector<std::pair<std::size_t, int>> m1_rows;  // (row, l)
  std::vector<std::size_t> block_of_row;
  std::size_t row = 0;
  for (std::size_t b = 0; b < alpha.size(); ++b)
    for (int l = 1; l <= alpha[b]; ++l) {
      ++row;
      if (b % 2 == 1) continue;
      m1_rows.emplace_back(row, l);
      block_of_row.push_back(b / 2);
      std::vector<Sijection> per_col;
      for (std::size_t c = 1; c <= um; ++c)
        per_col.push_back(static_cast<int>(c) >= l ? merge_bijection(xs[b], l, static_cast<int>(c)).inverse()
                                                   : Sijection::identity(cur.ptr(row, c)));
      chain(acc, lift_entrywise(cur, row, per_col));
      for (std::size_t c = 1; c <= um; ++c) cur.set(row, c, per_col[c - 1].right_ptr());
    }

  // Pull the [l] factors out of those rows.
  SignedSetMatrix h1 = build_H1(xs, odd);
  SignedSet dh1 = expand_D(h1);
  std::vector<SignedSet> idx_sets;
  for (const auto& [r, l] : m1_rows) idx_sets.push_back(range_set(l));
  std::vector<const SignedSet*> ip;
  for (const auto& s : idx_sets) ip.push_back(&s);
  SetPtr pulled = share(ss_product(ss_product(ip), dh1));
  chain(acc, relabel_onto(acc->right_ptr(), pulled, [&](const SignedElement& e) {
    DParts d = split_d(e.payload);
    std::vector<int> idx;
    for (const auto& [r, l] : m1_rows) {
      Payload pick = d.picks[r - 1];
      idx.push_back(pick.item(0).as_int());
      d.picks[r - 1] = pick.item(1);
    }
    return Payload::tuple({Payload::ints(idx), d_payload(d.sigma, d.picks)});
  }));

  // Per block, [1] × ... × [a] back to [a!].
  std::vector<SignedSet> perms;
  for (int a : odd) perms.push_back(permutation_set(a));
  std::vector<const SignedSet*> pp;
  for (const auto& s : perms) pp.push_back(&s);
  SetPtr target = share(ss_product(ss_product(pp), dh1));
  chain(acc, relabel_onto(pulled, target, [&](const SignedElement& e) {
    std::vector<int> idx = e.payload.item(0).as_ints();
    std::vector<std::vector<int>> codes(odd.size());
    for (std::size_t t = 0; t < idx.size(); ++t) codes[block_of_row[t]].push_back(idx[t]);
    std::vector<Payload> q;
    for (const auto& c : codes) q.push_back(Payload::ints(lehmer_decode(c)));
    return Payload::tuple({Payload::tuple(q), e.payload.item(1)});
  }));
  return *acc;
}

namespace {

// Σ_{p_e} φ(D(M), X, P) <-> φ(D(M'), X without x_e, P without p_e), where the
// M2 row `row` of M (variable at position j of X) turns into an M3 row of M'.
Sijection eliminate_even(const SignedSet& dm, const SignedSetMatrix& m_next, std::size_t row,
                         const std::vector<VarId>& xs, const std::vector<int>& p_rest, std::size_t j, int n_total) {
  std::size_t ri = row - 1;
  Sijection split = phi_split_sijection(dm, xs, p_rest, j, n_total);

  auto strip = [&](const Payload& d, int& c, int& idx) {
    DParts parts = split_d(d);
    c = parts.sigma[ri];
    idx = parts.picks[ri].item(0).as_int();
    parts.picks[ri] = parts.picks[ri].item(1);
    return d_payload(parts.sigma, parts.picks);
  };

  // R1 -> Σ_{(b, c)} [c] × Σ_{p_e} φ(S_{b,c}).
  Sijection regroup = relabel(split.right_ptr(), [&](const SignedElement& e) {
    int b = e.payload.item(0).as_tag();
    Payload inner = e.payload.item(1);
    Payload phi = inner.item(1);
    int c = 0, idx = 0;
    Payload st = strip(phi.item(0), c, idx);
    return Payload::tuple({Payload::tuple({Payload::tag(b), Payload::integer(c)}),
                           Payload::tuple({Payload::integer(idx),
                                           Payload::tuple({inner.item(0), Payload::tuple({st, phi.item(1)})})})});
  });

  std::map<std::pair<int, int>, std::map<Payload, Monomial>> groups;
  for (const auto& e : dm) {
    int c = 0, idx = 0;
    Payload st = strip(e.payload, c, idx);
    groups[{0, c}].emplace(st, e.weight);
    groups[{1, c}].emplace(st, -e.weight);
  }
  std::vector<Sijection> inserts;
  std::vector<Payload> tags;
  for (const auto& [bc, elems] : groups) {
    std::vector<SignedElement> v;
    for (const auto& [pl, w] : elems) v.push_back({pl, w});
    std::size_t k = bc.first == 0 ? j + 1 : j - 1;
    inserts.push_back(phi_insert_bijection(SignedSet(std::move(v)), xs, p_rest, j, k, bc.second - 1, n_total));
    tags.push_back(Payload::tuple({Payload::tag(bc.first), Payload::integer(bc.second)}));
  }
  std::vector<std::pair<Payload, const Sijection*>> parts;
  for (std::size_t t = 0; t < inserts.size(); ++t) parts.emplace_back(tags[t], &inserts[t]);
  Sijection ins = sij_sum_tagged(parts);

  std::vector<VarId> xs_next = xs;
  xs_next.erase(xs_next.begin() + static_cast<std::ptrdiff_t>(j - 1));
  SetPtr target = share(build_phi(expand_D(m_next), xs_next, p_rest, n_total));
  Sijection settle = relabel_onto(ins.right_ptr(), target, [&](const SignedElement& e) {
    Payload tag = e.payload.item(0);
    Payload phi = e.payload.item(1);
    DParts d = split_d(phi.item(0));
    d.picks[ri] = Payload::tuple({tag.item(0), Payload::ints({tag.item(1).as_int()})});
    return Payload::tuple({d_payload(d.sigma, d.picks), phi.item(1)});
  });
  return sij_compose(sij_compose(sij_compose(split, regroup), ins), settle);
}

}  // namespace

Sijection crux_part3(std::span<const int> alpha_odd, const DiagonalFixing& p_odd) {
  std::size_t n = alpha_odd.size();
  if (n == 0 || p_odd.size() != n) throw PreconditionError("need one rank per odd block");
  const std::vector<int>& po = p_odd.values();
  int n_total = crux_vertex_count(alpha_odd);
  std::vector<VarId> xs = x_range(2 * n - 1);
  SignedSetMatrix m = build_H1(xs, alpha_odd);
  std::vector<std::size_t> even_row;
  std::size_t row = 0;
  for (std::size_t b = 0; b + 1 < n; ++b) {
    row += static_cast<std::size_t>(alpha_odd[b]) + 1;
    even_row.push_back(row);
  }

  // Original 1-based positions of the variables still present.
  std::vector<int> present;
  for (int i = 1; i <= static_cast<int>(2 * n - 1); ++i) present.push_back(i);
  std::optional<Sijection> acc;

  if (n == 1) {
    SetPtr phi = share(build_phi(expand_D(m), xs, po, n_total));
    return relabel(phi, [](const SignedElement& e) { return Payload::tuple({Payload::ints({}), e.payload}); })
        .inverse();
  }

  for (std::size_t t = 0; t + 1 < n; ++t) {
    int e = static_cast<int>(2 * t + 2);
    std::size_t j = t + 2;
    std::vector<VarId> xs_cur;
    for (int i : present) xs_cur.push_back(VarId::x(i));
    SignedSet dm = expand_D(m);
    SignedSetMatrix m_next = m;
    std::vector<VarId> vy{VarId::x(e + 1)}, vx{VarId::x(e - 1)};
    for (std::size_t c = 1; c <= m.cols(); ++c)
      m_next.set(even_row[t], c,
                 ss_sum(build_B(vy, static_cast<int>(c)), ss_negate(build_B(vx, static_cast<int>(c)))));

    std::vector<std::vector<int>> later = even_combos(po, t + 1);
    std::vector<Sijection> elims;
    std::vector<Payload> tags;
    for (const auto& lc : later) {
      std::vector<int> p_rest;
      for (int i : present) {
        if (i == e) continue;
        p_rest.push_back(i % 2 == 1 ? po[static_cast<std::size_t>(i / 2)] : lc[static_cast<std::size_t>(i / 2 - t - 2)]);
      }
      elims.push_back(eliminate_even(dm, m_next, even_row[t], xs_cur, p_rest, j, n_total));
      tags.push_back(Payload::ints(lc));
    }
    std::vector<std::pair<Payload, const Sijection*>> parts;
    for (std::size_t k = 0; k < elims.size(); ++k) parts.emplace_back(tags[k], &elims[k]);
    Sijection stage = sij_sum_tagged(parts);
    // (later, (p_e, φ)) is read as ((p_e, later...), φ).
    Sijection flat = relabel(stage.left_ptr(), [](const SignedElement& x) {
      std::vector<int> free = x.payload.item(0).as_ints();
      Payload inner = x.payload.item(1);
      free.insert(free.begin(), inner.item(0).as_int());
      return Payload::tuple({Payload::ints(free), inner.item(1)});
    });
    chain(acc, sij_compose(flat.inverse(), stage));
    m = std::move(m_next);
    present.erase(present.begin() + static_cast<std::ptrdiff_t>(j - 1));
  }
  if (!(m == build_H2(x_range(n, 2), alpha_odd))) throw InternalError("eliminations did not reach H2");
  return chain(acc, relabel(acc->right_ptr(), [](const SignedElement& x) { return x.payload.item(1); }));
}

Sijection crux_part4(std::span<const int> alpha_odd, const DiagonalFixing& p_odd) {
  std::size_t n = alpha_odd.size();
  if (n == 0 || p_odd.size() != n) throw PreconditionError("need one rank per odd block");
  int n_total = crux_vertex_count(alpha_odd);
  std::vector<VarId> xs = x_range(n, 2);
  std::vector<int> a1(alpha_odd.begin(), alpha_odd.end());
  for (int& a : a1) ++a;
  SignedSetMatrix m = build_H({}, xs, a1);
  std::vector<std::size_t> head{1};
  for (std::size_t i = 0; i + 1 < n; ++i) head.push_back(head.back() + static_cast<std::size_t>(a1[i]));

  std::optional<Sijection> acc;
  acc = Sijection::identity(share(expand_D(m)));
  for (std::size_t i = n - 1; i >= 1; --i) {
    chain(acc, row_subtract_sijection(m, head[i - 1], head[i], RowMode::kSub));
    m = row_combined(m, head[i - 1], head[i], RowMode::kSub);
  }
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<Sijection> per_col;
    per_col.push_back(cancel_pair(m.ptr(head[i], 1)));
    for (std::size_t c = 2; c <= m.cols(); ++c) per_col.push_back(Sijection::identity(m.ptr(head[i], c)));
    chain(acc, lift_entrywise(m, head[i], per_col));
    m.set(head[i], 1, per_col[0].right_ptr());
  }
  SignedSetMatrix h2 = build_H2(xs, alpha_odd);
  if (!(m.minor(1, 1) == h2)) throw InternalError("row operations did not reach H2");
  chain(acc, relabel_onto(acc->right_ptr(), share(expand_D(h2)), [](const SignedElement& e) {
    DParts d = split_d(e.payload);
    if (d.sigma[0] != 1) throw InternalError("first row must use the first column");
    std::vector<int> sigma;
    for (std::size_t i = 1; i < d.sigma.size(); ++i) sigma.push_back(d.sigma[i] - 1);
    std::vector<Payload> picks(d.picks.begin() + 1, d.picks.end());
    return d_payload(sigma, picks);
  }));
  return lift_through_phi(*acc, xs, p_odd.values(), n_total);
}

Sijection crux_stage_sijection(CruxStage stage, const CruxStageInputs& in) {
  switch (stage) {
    case CruxStage::kPart1:
      return crux_part1(in.alpha, DiagonalFixing(in.p));
    case CruxStage::kPart2:
      return crux_part2(in.alpha);
    case CruxStage::kPart3:
      return crux_part3(in.alpha, DiagonalFixing(in.p));
    case CruxStage::kPart4:
      return crux_part4(in.alpha, DiagonalFixing(in.p));
  }
  throw PreconditionError("unknown stage");
}

nlohmann::json CruxCertificate::summary() const {
  nlohmann::json st = nlohmann::json::array();
  for (const auto& s : stages) st.push_back({{"stage", s.stage}, {"left", s.left}, {"right", s.right}});
  return {{"n_total", n_total},
          {"left_size", sij.left().size()},
          {"right_size", sij.right().size()},
          {"cross_pairs", sij.cross_pairs()},
          {"bijection", sij.is_bijection()},
          {"stages", st}};
}

CruxCertificate crux_sijection(std::span<const int> alpha, const DiagonalFixing& p_odd) {
  std::vector<int> odd = crux_odd_part(alpha);
  std::size_t n = odd.size();
  if (p_odd.size() != n) throw PreconditionError("need one rank per odd position");
  int n_total = crux_vertex_count(odd);
  std::vector<int> al(alpha.begin(), alpha.end());
  if (static_cast<int>(graph_gx(al).size()) != n_total) throw InternalError("vertex counts disagree");
  int m = total(alpha);
  std::vector<VarId> xs = x_range(alpha.size()), xs_odd = x_range(n, 2);
  const std::vector<int>& po = p_odd.values();

  CruxCertificate cert{Sijection::identity(share(SignedSet())), {}, n_total};
  auto note = [&](const char* name, const Sijection& s) {
    cert.stages.push_back({name, s.left().size(), s.right().size()});
  };

  SetPtr perms = share(permutation_set(m));
  SetPtr left0 = share(ss_product(*perms, crux_left_set(alpha, p_odd)));
  Sijection by_even = relabel(left0, [&](const SignedElement& e) {
    std::vector<int> f = e.payload.item(1).as_ints();
    std::vector<int> pe;
    for (std::size_t i = 1; i < alpha.size(); i += 2) pe.push_back(f[i]);
    return Payload::tuple({Payload::ints(pe), e.payload});
  });
  std::optional<Sijection> acc = by_even;
  note("labelings", by_even);

  std::vector<std::vector<int>> combos = even_combos(po, 0);
  Sijection id_perm = Sijection::identity(perms);
  {
    std::vector<Sijection> lifted;
    std::vector<Payload> tags;
    for (const auto& pe : combos) {
      Sijection p1 = crux_part1(alpha, DiagonalFixing(interleave(po, pe)), xs);
      lifted.push_back(sij_product({&id_perm, &p1}));
      tags.push_back(Payload::ints(pe));
    }
    std::vector<std::pair<Payload, const Sijection*>> parts;
    for (std::size_t k = 0; k < lifted.size(); ++k) parts.emplace_back(tags[k], &lifted[k]);
    Sijection s1 = sij_sum_tagged(parts);
    note("part1", s1);
    chain(acc, s1);
  }

  chain(acc, relabel(acc->right_ptr(), [](const SignedElement& e) {
    Payload pe = e.payload.item(0), inner = e.payload.item(1), phi = inner.item(1);
    return Payload::tuple({pe, Payload::tuple({Payload::tuple({inner.item(0), phi.item(0)}), phi.item(1)})});
  }));
  {
    Sijection p2 = crux_part2(alpha);
    std::vector<Sijection> lifted;
    std::vector<Payload> tags;
    for (const auto& pe : combos) {
      lifted.push_back(lift_through_phi(p2, xs, interleave(po, pe), n_total));
      tags.push_back(Payload::ints(pe));
    }
    std::vector<std::pair<Payload, const Sijection*>> parts;
    for (std::size_t k = 0; k < lifted.size(); ++k) parts.emplace_back(tags[k], &lifted[k]);
    Sijection s2 = sij_sum_tagged(parts);
    note("part2", s2);
    chain(acc, s2);
  }
  chain(acc, relabel(acc->right_ptr(), [](const SignedElement& e) {
    Payload pe = e.payload.item(0), phi = e.payload.item(1), qs = phi.item(0);
    return Payload::tuple({qs.item(0), Payload::tuple({pe, Payload::tuple({qs.item(1), phi.item(1)})})});
  }));

  std::vector<SignedSet> perm_sets;
  for (int a : odd) perm_sets.push_back(permutation_set(a));
  std::vector<const SignedSet*> pp;
  for (const auto& s : perm_sets) pp.push_back(&s);
  Sijection id_q = Sijection::identity(share(ss_product(pp)));

  Sijection p3 = crux_part3(odd, p_odd);
  Sijection s3 = sij_product({&id_q, &p3});
  note("part3", s3);
  chain(acc, s3);

  Sijection p4 = crux_part4(odd, p_odd).inverse();
  Sijection s4 = sij_product({&id_q, &p4});
  note("part4", s4);
  chain(acc, s4);

  std::vector<int> a1 = odd;
  for (int& a : a1) ++a;
  Sijection p1b = crux_part1(a1, p_odd, xs_odd).inverse();
  Sijection s5 = sij_product({&id_q, &p1b});
  note("part1 reversed", s5);
  chain(acc, s5);

  SignedSet expect = ss_product(id_q.left(), crux_right_set(alpha, p_odd));
  if (!(acc->right() == expect)) throw InternalError("chain does not end at Q × B");
  cert.sij = *acc;
  return cert;
}

}  // namespace selberg
