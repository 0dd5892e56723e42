#include "selberg/matrix.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "selberg/binomial.hpp"
#include "selberg/errors.hpp"

namespace selberg {

SignedSetMatrix::SignedSetMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), cells_(rows * cols) {
  auto empty = share(SignedSet());
  for (auto& c : cells_) c = empty;
}

SignedSetMatrix SignedSetMatrix::minor(std::size_t r, std::size_t c) const {
  SignedSetMatrix out(rows_ - 1, cols_ - 1);
  for (std::size_t i = 1, oi = 1; i <= rows_; ++i) {
    if (i == r) continue;
    for (std::size_t j = 1, oj = 1; j <= cols_; ++j) {
      if (j == c) continue;
      out.set(oi, oj++, ptr(i, j));
    }
    ++oi;
  }
  return out;
}

bool SignedSetMatrix::operator==(const SignedSetMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (std::size_t k = 0; k < cells_.size(); ++k)
    if (cells_[k] != o.cells_[k] && !(*cells_[k] == *o.cells_[k])) return false;
  return true;
}

nlohmann::json SignedSetMatrix::to_json() const {
  auto grid = nlohmann::json::array();
  for (std::size_t i = 1; i <= rows_; ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 1; j <= cols_; ++j) row.push_back(at(i, j).to_json());
    grid.push_back(row);
  }
  return grid;
}

namespace {

std::vector<VarId> with_repeats(std::span<const VarId> base, VarId x, int times) {
  std::vector<VarId> v(base.begin(), base.end());
  for (int t = 0; t < times; ++t) v.push_back(x);
  return v;
}

int sum_of(std::span<const int> a) { return std::accumulate(a.begin(), a.end(), 0); }

void check_nonneg(std::span<const int> a) {
  for (int v : a)
    if (v < 0) throw PreconditionError("alpha entries must be nonnegative");
}

struct DView {
  std::vector<int> sigma;
  std::vector<Payload> picks;
};

DView decode_d(const Payload& p) { return {p.item(0).as_ints(), p.item(1).items()}; }

}  // namespace

SignedSetMatrix build_H(std::span<const VarId> ys, std::span<const VarId> xs, std::span<const int> alpha) {
  if (xs.size() != alpha.size()) throw PreconditionError("X and alpha differ in length");
  check_nonneg(alpha);
  auto m = static_cast<std::size_t>(sum_of(alpha));
  SignedSetMatrix h(m, m);
  std::size_t row = 0;
  for (std::size_t b = 0; b < xs.size(); ++b)
    for (int l = 1; l <= alpha[b]; ++l) {
      ++row;
      auto vars = with_repeats(ys, xs[b], l);
      for (std::size_t c = 1; c <= m; ++c) h.set(row, c, build_B(vars, static_cast<int>(c) - l));
    }
  return h;
}

namespace {

void put_m1(SignedSetMatrix& h, std::size_t& row, VarId x, int alpha) {
  for (int i = 1; i <= alpha; ++i) {
    ++row;
    std::vector<VarId> vars(static_cast<std::size_t>(i) + 1, x);
    for (std::size_t c = 1; c <= h.cols(); ++c) h.set(row, c, build_B(vars, static_cast<int>(c) - i));
  }
}

}  // namespace

SignedSetMatrix build_H1(std::span<const VarId> xs, std::span<const int> alpha_odd) {
  check_nonneg(alpha_odd);
  std::size_t n = alpha_odd.size();
  if (n == 0 || xs.size() != 2 * n - 1) throw PreconditionError("H1 needs 2n-1 variables for n odd blocks");
  auto m = static_cast<std::size_t>(sum_of(alpha_odd)) + n - 1;
  if (m == 0) throw PreconditionError("H1 needs a positive dimension");
  SignedSetMatrix h(m, m);
  std::size_t row = 0;
  for (std::size_t b = 0; b < n; ++b) {
    put_m1(h, row, xs[2 * b], alpha_odd[b]);
    if (b + 1 < n) {
      ++row;
      std::vector<VarId> one{xs[2 * b + 1]};
      for (std::size_t c = 1; c <= m; ++c) {
        SignedSet idx = range_set(static_cast<int>(c));
        h.set(row, c, ss_product(idx, build_B(one, static_cast<int>(c) - 1)));
      }
    }
  }
  return h;
}

SignedSetMatrix build_H2(std::span<const VarId> xs_odd, std::span<const int> alpha_odd) {
  check_nonneg(alpha_odd);
  std::size_t n = alpha_odd.size();
  if (n == 0 || xs_odd.size() != n) throw PreconditionError("H2 needs one variable per odd block");
  auto m = static_cast<std::size_t>(sum_of(alpha_odd)) + n - 1;
  if (m == 0) throw PreconditionError("H2 needs a positive dimension");
  SignedSetMatrix h(m, m);
  std::size_t row = 0;
  for (std::size_t b = 0; b < n; ++b) {
    put_m1(h, row, xs_odd[b], alpha_odd[b]);
    if (b + 1 < n) {
      ++row;
      std::vector<VarId> vx{xs_odd[b]}, vy{xs_odd[b + 1]};
      for (std::size_t c = 1; c <= m; ++c) {
        SignedSet by = build_B(vy, static_cast<int>(c)), bx = ss_negate(build_B(vx, static_cast<int>(c)));
        h.set(row, c, ss_sum(by, bx));
      }
    }
  }
  return h;
}

Payload d_payload(std::span<const int> sigma, std::span<const Payload> picks) {
  return Payload::tuple({Payload::ints(sigma), Payload::tuple(picks)});
}

int permutation_sign(std::span<const int> sigma) {
  int inv = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

SignedSet expand_D(const SignedSetMatrix& m) {
  if (m.rows() != m.cols()) throw PreconditionError("D(M) needs a square matrix");
  if (m.rows() > kMaxMaterializedDim) throw LimitExceeded("matrix too large to expand");
  std::size_t n = m.rows();
  std::vector<SignedElement> out;
  std::vector<int> sigma(n);
  std::vector<Payload> picks(n);
  std::vector<char> used(n + 1, 0);
  auto rec = [&](auto&& self, std::size_t i, const Monomial& w) -> void {
    if (i == n) {
      Monomial full = w;
      full.sign *= permutation_sign(sigma);
      out.push_back({d_payload(sigma, picks), std::move(full)});
      return;
    }
    for (std::size_t c = 1; c <= n; ++c) {
      if (used[c]) continue;
      const SignedSet& entry = m.at(i + 1, c);
      if (entry.empty()) continue;
      used[c] = 1;
      sigma[i] = static_cast<int>(c);
      for (const auto& e : entry) {
        picks[i] = e.payload;
        self(self, i + 1, w * e.weight);
      }
      used[c] = 0;
    }
  };
  rec(rec, 0, Monomial::one());
  return SignedSet(std::move(out));
}

std::vector<std::vector<IntPolynomial>> weight_matrix(const SignedSetMatrix& m) {
  std::vector<std::vector<IntPolynomial>> a(m.rows(), std::vector<IntPolynomial>(m.cols()));
  for (std::size_t i = 1; i <= m.rows(); ++i)
    for (std::size_t j = 1; j <= m.cols(); ++j) a[i - 1][j - 1] = ss_weight(m.at(i, j));
  return a;
}

IntPolynomial permutation_determinant(const std::vector<std::vector<IntPolynomial>>& a) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw PreconditionError("determinant needs a square matrix");
  IntPolynomial total;
  std::vector<int> sigma(n);
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self, std::size_t i, const IntPolynomial& acc) -> void {
    if (i == n) {
      total += permutation_sign(sigma) > 0 ? acc : -acc;
      return;
    }
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || a[i][c].is_zero()) continue;
      used[c] = 1;
      sigma[i] = static_cast<int>(c);
      self(self, i + 1, acc * a[i][c]);
      used[c] = 0;
    }
  };
  rec(rec, 0, IntPolynomial(1L));
  return total;
}

SignedSetMatrix row_combined(const SignedSetMatrix& a, std::size_t i, std::size_t j, RowMode mode) {
  if (i == j || i < 1 || j < 1 || i > a.rows() || j > a.rows()) throw PreconditionError("invalid rows for a row operation");
  SignedSetMatrix out = a;
  for (std::size_t c = 1; c <= a.cols(); ++c) {
    SignedSet add = mode == RowMode::kSub ? ss_negate(a.at(i, c)) : a.at(i, c);
    out.set(j, c, ss_sum(a.at(j, c), add));
  }
  return out;
}

Sijection row_subtract_sijection(const SignedSetMatrix& a, std::size_t i, std::size_t j, RowMode mode) {
  SignedSetMatrix a2 = row_combined(a, i, j, mode);
  auto left = share(expand_D(a));
  auto right = share(expand_D(a2));
  const Payload own = Payload::tag(0), copied = Payload::tag(1);
  std::size_t ri = i - 1, rj = j - 1;
  return Sijection::from_partner(left, right, [&](Side s, const SignedElement& e) -> std::pair<Side, Payload> {
    DView d = decode_d(e.payload);
    if (s == Side::kLeft) {
      d.picks[rj] = sum_payload(own, d.picks[rj]);
      return {Side::kRight, d_payload(d.sigma, d.picks)};
    }
    Payload tag = d.picks[rj].item(0), inner = d.picks[rj].item(1);
    if (tag == own) {
      d.picks[rj] = inner;
      return {Side::kLeft, d_payload(d.sigma, d.picks)};
    }
    // pick j came from row i: swap the two rows' choices
    std::swap(d.sigma[ri], d.sigma[rj]);
    Payload mi = d.picks[ri];
    d.picks[ri] = inner;
    d.picks[rj] = sum_payload(copied, mi);
    return {Side::kRight, d_payload(d.sigma, d.picks)};
  });
}

Sijection lift_entrywise(const SignedSetMatrix& m, std::size_t r, const std::vector<Sijection>& per_col) {
  if (per_col.size() != m.cols()) throw PreconditionError("need one sijection per column");
  SignedSetMatrix m2 = m;
  for (std::size_t c = 1; c <= m.cols(); ++c) {
    if (!(per_col[c - 1].left() == m.at(r, c))) throw MismatchError("entry sijection does not start at the matrix entry");
    m2.set(r, c, per_col[c - 1].right_ptr());
  }
  auto left = share(expand_D(m));
  auto right = share(expand_D(m2));
  std::size_t rr = r - 1;
  return Sijection::from_partner(left, right, [&](Side s, const SignedElement& e) -> std::pair<Side, Payload> {
    DView d = decode_d(e.payload);
    const Sijection& f = per_col[static_cast<std::size_t>(d.sigma[rr]) - 1];
    const SignedSet& home = s == Side::kLeft ? f.left() : f.right();
    auto idx = home.find(d.picks[rr]);
    if (!idx) throw InternalError("pick not found in its entry");
    ElementRef p = f.partner({s, *idx});
    d.picks[rr] = f.element(p).payload;
    return {p.side, d_payload(d.sigma, d.picks)};
  });
}

namespace {

using Triple = std::tuple<int, int, int>;

std::vector<Triple> vandermonde_triples(std::span<const int> alpha) {
  std::vector<Triple> out;
  int n = static_cast<int>(alpha.size());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= alpha[static_cast<std::size_t>(i - 1)] * alpha[static_cast<std::size_t>(j - 1)]; ++k)
        out.emplace_back(i, j, k);
  return out;
}

}  // namespace

SignedSet vandermonde_set(std::span<const VarId> xs, std::span<const int> alpha) {
  if (xs.size() != alpha.size()) throw PreconditionError("X and alpha differ in length");
  check_nonneg(alpha);
  std::vector<SignedSet> pairs;
  for (const auto& [i, j, k] : vandermonde_triples(alpha))
    pairs.push_back(binomial_pair(xs[static_cast<std::size_t>(j - 1)], xs[static_cast<std::size_t>(i - 1)]));
  std::vector<const SignedSet*> ptrs;
  for (const auto& p : pairs) ptrs.push_back(&p);
  return ss_product(ptrs);
}

Sijection gv_step(std::span<const VarId> ys, std::span<const VarId> xs, std::span<const int> alpha,
                  std::vector<GvTraceEntry>* trace) {
  if (xs.empty() || xs.size() != alpha.size()) throw PreconditionError("gv_step needs matching nonempty X and alpha");
  if (alpha[0] < 1) throw PreconditionError("gv_step needs alpha_1 >= 1");
  check_nonneg(alpha);
  const std::size_t n = xs.size();
  const VarId x1 = xs[0];
  SignedSetMatrix mcur = build_H(ys, xs, alpha);
  const std::size_t m = mcur.rows();
  if (m > kMaxMaterializedDim) throw LimitExceeded("matrix too large to expand");

  std::vector<SignedSet> factors;
  auto factor_set = [&]() {
    std::vector<const SignedSet*> ptrs;
    for (const auto& f : factors) ptrs.push_back(&f);
    return share(ss_product(ptrs));
  };

  auto dh = share(expand_D(mcur));
  Sijection chain = relabel(dh, [](const SignedElement& e) { return Payload::tuple({Payload(), e.payload}); });
  if (trace) trace->push_back({"start", chain.right().size()});

  const std::size_t ny = ys.size();
  int offset = alpha[0];
  for (std::size_t jb = 1; jb < n; ++jb) {
    const VarId xj = xs[jb];
    for (int q = 1; q <= alpha[jb]; ++q) {
      const std::size_t r = static_cast<std::size_t>(offset + q);
      const std::size_t s = q == 1 ? 1 : r - 1;
      SetPtr fset = factor_set();
      Sijection id_f = Sijection::identity(fset);

      Sijection rs = row_subtract_sijection(mcur, s, r, RowMode::kSub);
      chain = sij_compose(chain, sij_product({&id_f, &rs}));
      SignedSetMatrix mcomb = row_combined(mcur, s, r, RowMode::kSub);

      // Row r entries become {x_j, -x_1} × B((Y, x_1, x_j × q), c - q - 1).
      std::vector<VarId> ylem = with_repeats(ys, xj, q - 1);
      std::vector<Sijection> per_col;
      per_col.reserve(m);
      for (std::size_t c = 1; c <= m; ++c) {
        int k = static_cast<int>(c) - q;
        Sijection sp = split_sijection_any(x1, xj, ylem, k);
        // The split sijection orders variables (x_j, Y, x_j^{q-1}) / (x_1, Y, x_j^{q-1});
        // the rows use (Y, x_j^q) / (Y, x_1, x_j^{q-1}).
        Sijection pre = relabel_onto(mcomb.ptr(r, c), sp.left_ptr(), [&](const SignedElement& e) {
          Payload tag = e.payload.item(0);
          auto a = e.payload.item(1).as_ints();
          std::vector<int> b;
          b.push_back(a[ny]);
          b.insert(b.end(), a.begin(), a.begin() + static_cast<std::ptrdiff_t>(ny));
          b.insert(b.end(), a.begin() + static_cast<std::ptrdiff_t>(ny) + 1, a.end());
          return sum_payload(tag, Payload::ints(b));
        });
        Sijection post = relabel(sp.right_ptr(), [&](const SignedElement& e) {
          auto a = e.payload.item(1).as_ints();  // (e, b_1, a_Y, b_2, ...)
          std::vector<int> b(a.begin() + 2, a.begin() + 2 + static_cast<std::ptrdiff_t>(ny));
          b.push_back(a[0]);
          b.push_back(a[1]);
          b.insert(b.end(), a.begin() + 2 + static_cast<std::ptrdiff_t>(ny), a.end());
          return Payload::tuple({e.payload.item(0), Payload::ints(b)});
        });
        per_col.push_back(sij_compose(sij_compose(pre, sp), post));
      }
      Sijection ent = lift_entrywise(mcomb, r, per_col);
      chain = sij_compose(chain, sij_product({&id_f, &ent}));

      SignedSetMatrix mnext = mcur;
      std::vector<VarId> newvars = with_repeats(ys, x1, 1);
      for (int t = 0; t < q; ++t) newvars.push_back(xj);
      for (std::size_t c = 1; c <= m; ++c) mnext.set(r, c, build_B(newvars, static_cast<int>(c) - q - 1));
      factors.push_back(binomial_pair(xj, x1));
      SetPtr fnext = factor_set();
      auto dnext = share(expand_D(mnext));
      auto target = share(ss_product(*fnext, *dnext));
      Sijection pull = relabel_onto(chain.right_ptr(), target, [&](const SignedElement& e) {
        auto fs = e.payload.item(0).items();
        DView d = decode_d(e.payload.item(1));
        fs.push_back(d.picks[r - 1].item(0));
        d.picks[r - 1] = d.picks[r - 1].item(1);
        return Payload::tuple({Payload::tuple(fs), d_payload(d.sigma, d.picks)});
      });
      chain = sij_compose(chain, pull);
      mcur = std::move(mnext);
      if (trace)
        trace->push_back({"subtract row " + std::to_string(s) + " from row " + std::to_string(r), chain.right().size()});
    }
    offset += alpha[jb];
  }

  // Column 1 now holds only the unit element in row 1.
  std::vector<int> reduced(alpha.begin(), alpha.end());
  --reduced[0];
  std::vector<VarId> ys2(ys.begin(), ys.end());
  ys2.push_back(x1);
  SetPtr fset = factor_set();
  auto dred = share(expand_D(build_H(ys2, xs, reduced)));
  auto target = share(ss_product(*fset, *dred));
  Sijection drop = relabel_onto(chain.right_ptr(), target, [&](const SignedElement& e) {
    DView d = decode_d(e.payload.item(1));
    if (d.sigma[0] != 1) throw InternalError("first column still populated below the corner");
    std::vector<int> sigma;
    for (std::size_t i = 1; i < d.sigma.size(); ++i) sigma.push_back(d.sigma[i] - 1);
    std::vector<Payload> picks(d.picks.begin() + 1, d.picks.end());
    return Payload::tuple({e.payload.item(0), d_payload(sigma, picks)});
  });
  chain = sij_compose(chain, drop);
  if (trace) trace->push_back({"drop first row and column", chain.right().size()});
  return chain;
}

Sijection gv_sijection(std::span<const VarId> ys, std::span<const VarId> xs, std::span<const int> alpha,
                       std::vector<GvTraceEntry>* trace) {
  if (xs.size() != alpha.size()) throw PreconditionError("X and alpha differ in length");
  check_nonneg(alpha);
  if (xs.empty()) {
    auto dh = share(expand_D(SignedSetMatrix(0, 0)));
    auto v = share(unit_set());
    return relabel_onto(dh, v, [](const SignedElement&) { return Payload(); });
  }
  if (alpha[0] == 0) return gv_sijection(ys, xs.subspan(1), alpha.subspan(1), trace);

  Sijection step = gv_step(ys, xs, alpha, trace);
  std::vector<VarId> ys2(ys.begin(), ys.end());
  ys2.push_back(xs[0]);
  std::vector<int> reduced(alpha.begin(), alpha.end());
  --reduced[0];
  Sijection rec = gv_sijection(ys2, xs, reduced, trace);

  // F carries the (1, j) choices of this step.
  std::vector<SignedSet> factors;
  for (std::size_t jb = 1; jb < xs.size(); ++jb)
    for (int q = 1; q <= alpha[jb]; ++q) factors.push_back(binomial_pair(xs[jb], xs[0]));
  std::vector<const SignedSet*> ptrs;
  for (const auto& f : factors) ptrs.push_back(&f);
  Sijection id_f = Sijection::identity(share(ss_product(ptrs)));
  Sijection lifted = sij_product({&id_f, &rec});

  auto full = vandermonde_triples(alpha);
  auto red = vandermonde_triples(reduced);
  std::map<Triple, std::size_t> red_pos;
  for (std::size_t t = 0; t < red.size(); ++t) red_pos[red[t]] = t;
  std::vector<std::size_t> f_start(xs.size() + 1, 0);
  for (std::size_t jb = 1; jb < xs.size(); ++jb) f_start[jb + 1] = f_start[jb] + static_cast<std::size_t>(alpha[jb]);

  auto target = share(vandermonde_set(xs, alpha));
  Sijection merge = relabel_onto(lifted.right_ptr(), target, [&](const SignedElement& e) {
    auto fs = e.payload.item(0).items();
    auto vr = e.payload.item(1).items();
    std::vector<Payload> out;
    out.reserve(full.size());
    for (const auto& [i, j, k] : full) {
      if (i == 1) {
        int aj = alpha[static_cast<std::size_t>(j - 1)];
        if (k <= aj)
          out.push_back(fs[f_start[static_cast<std::size_t>(j - 1)] + static_cast<std::size_t>(k - 1)]);
        else
          out.push_back(vr[red_pos.at({1, j, k - aj})]);
      } else {
        out.push_back(vr[red_pos.at({i, j, k})]);
      }
    }
    return Payload::tuple(out);
  });
  return sij_compose(sij_compose(step, lifted), merge);
}

SeriesDetReport appendix_det_check(const SeriesTrunc& f, std::span<const VarId> xs, std::span<const int> alpha) {
  if (xs.size() != alpha.size()) throw PreconditionError("X and alpha differ in length");
  if (f.coeff(0) != IntPolynomial(1L)) throw PreconditionError("f(0) must be 1");
  for (int a : alpha)
    if (a < 1) throw PreconditionError("alpha entries must be at least 1");
  auto m = static_cast<std::size_t>(sum_of(alpha));
  std::vector<std::vector<IntPolynomial>> a;
  for (std::size_t b = 0; b < xs.size(); ++b)
    for (int i = 1; i <= alpha[b]; ++i) {
      std::vector<IntPolynomial> row;
      for (std::size_t j = 1; j <= m; ++j) row.push_back(series_entry(f, xs[b], i, static_cast<int>(j)));
      a.push_back(std::move(row));
    }
  SeriesDetReport rep;
  rep.lhs = permutation_determinant(a);
  rep.rhs = expand_signed_product(alpha, xs);
  rep.ok = rep.lhs == rep.rhs;
  return rep;
}

}  // namespace selberg
