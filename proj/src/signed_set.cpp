#include "selberg/signed_set.hpp"

#include <algorithm>
#include <numeric>

#include "selberg/errors.hpp"

namespace selberg {

namespace {

char side_char(Side s) { return s == Side::kLeft ? 'L' : 'R'; }

// Mixed-radix walk over index tuples, last coordinate fastest.
bool next_index(std::vector<std::size_t>& idx, const std::vector<std::size_t>& radix) {
  for (std::size_t c = idx.size(); c-- > 0;) {
    if (++idx[c] < radix[c]) return true;
    idx[c] = 0;
  }
  return false;
}

std::vector<SignedElement> product_elements(const std::vector<const SignedSet*>& parts) {
  std::vector<SignedElement> out;
  std::vector<std::size_t> radix;
  std::size_t total = 1;
  for (const auto* p : parts) {
    radix.push_back(p->size());
    total *= p->size();
  }
  if (total == 0) return out;
  out.reserve(total);
  std::vector<std::size_t> idx(parts.size(), 0);
  std::vector<Payload> items(parts.size());
  do {
    Monomial w;
    for (std::size_t c = 0; c < parts.size(); ++c) {
      const auto& e = (*parts[c])[idx[c]];
      items[c] = e.payload;
      w = w * e.weight;
    }
    out.push_back({Payload::tuple(items), std::move(w)});
  } while (next_index(idx, radix));
  return out;
}

}  // namespace

SignedSet::SignedSet(std::vector<SignedElement> elems) {
  *this = from_unsorted(std::move(elems), nullptr);
}

SignedSet SignedSet::from_unsorted(std::vector<SignedElement> elems, std::vector<std::uint32_t>* position) {
  SignedSet s;
  std::vector<std::uint32_t> order(elems.size());
  std::iota(order.begin(), order.end(), 0u);
  bool sorted = true;
  for (std::size_t i = 1; i < elems.size() && sorted; ++i)
    sorted = elems[i - 1].payload < elems[i].payload;
  if (!sorted) {
    std::sort(order.begin(), order.end(),
              [&](std::uint32_t a, std::uint32_t b) { return elems[a].payload < elems[b].payload; });
  }
  s.elems_.reserve(elems.size());
  if (position) position->assign(elems.size(), 0);
  for (std::uint32_t k = 0; k < order.size(); ++k) {
    auto src = order[k];
    if (k > 0 && elems[src].payload == s.elems_.back().payload)
      throw PreconditionError("signed set has a repeated payload: " + elems[src].payload.key());
    if (position) (*position)[src] = k;
    s.elems_.push_back(std::move(elems[src]));
  }
  return s;
}

std::optional<std::uint32_t> SignedSet::find(const Payload& p) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), p,
                             [](const SignedElement& e, const Payload& q) { return e.payload < q; });
  if (it == elems_.end() || it->payload != p) return std::nullopt;
  return static_cast<std::uint32_t>(it - elems_.begin());
}

std::size_t SignedSet::positive_count() const {
  return static_cast<std::size_t>(
      std::count_if(elems_.begin(), elems_.end(), [](const SignedElement& e) { return e.weight.sign > 0; }));
}

nlohmann::json SignedSet::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& e : elems_) arr.push_back({{"key", e.payload.key()}, {"weight", e.weight.text()}});
  return arr;
}

IntPolynomial ss_weight(const SignedSet& a) {
  IntPolynomial r;
  for (const auto& e : a) r.add_term(e.weight.exps, mpz_class(e.weight.sign));
  return r;
}

SignedSet ss_negate(const SignedSet& a) {
  std::vector<SignedElement> out;
  out.reserve(a.size());
  for (const auto& e : a) out.push_back({e.payload, -e.weight});
  return SignedSet(std::move(out));
}

SignedSet ss_sum(const std::vector<const SignedSet*>& parts) {
  std::vector<SignedElement> out;
  for (std::size_t k = 0; k < parts.size(); ++k)
    for (const auto& e : *parts[k])
      out.push_back({sum_payload(Payload::tag(static_cast<std::int32_t>(k)), e.payload), e.weight});
  return SignedSet(std::move(out));
}

SignedSet ss_sum(const SignedSet& a, const SignedSet& b) { return ss_sum({&a, &b}); }

SignedSet ss_product(const std::vector<const SignedSet*>& parts) {
  return SignedSet(product_elements(parts));
}

SignedSet ss_product(const SignedSet& a, const SignedSet& b) { return ss_product({&a, &b}); }

SignedSet ss_combine(SetOp op, const SignedSet& a, const SignedSet* b) {
  if (op == SetOp::kNegate) return ss_negate(a);
  if (!b) throw PreconditionError("ss_combine: second operand required");
  return op == SetOp::kSum ? ss_sum(a, *b) : ss_product(a, *b);
}

SignedSet range_set(int k) {
  std::vector<SignedElement> out;
  for (int i = 1; i <= k; ++i) out.push_back({Payload::integer(i), Monomial::one()});
  return SignedSet(std::move(out));
}

SignedSet permutation_set(int k) {
  if (k < 0) throw PreconditionError("permutation_set needs k >= 0");
  std::vector<int> perm(static_cast<std::size_t>(k));
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<SignedElement> out;
  do {
    out.push_back({Payload::ints(perm), Monomial::one()});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return SignedSet(std::move(out));
}

SignedSet unit_set() { return SignedSet({{Payload(), Monomial::one()}}); }

SignedSet binomial_pair(VarId xj, VarId xi) {
  if (xj == xi) throw PreconditionError("binomial_pair needs two distinct variables");
  return SignedSet({{Payload::var(xj), Monomial::var(xj)}, {Payload::var(xi), Monomial::var(xi, 1, -1)}});
}

Payload sum_payload(const Payload& tag, const Payload& e) { return Payload::tuple({tag, e}); }

Sijection::Sijection(SetPtr left, SetPtr right, std::vector<ElementRef> left_partner,
                     std::vector<ElementRef> right_partner)
    : left_(std::move(left)), right_(std::move(right)), lp_(std::move(left_partner)), rp_(std::move(right_partner)) {
  if (lp_.size() != left_->size() || rp_.size() != right_->size())
    throw InternalError("pairing table size does not match its sets");
}

Sijection Sijection::identity(SetPtr a) {
  std::vector<ElementRef> lp(a->size()), rp(a->size());
  for (std::uint32_t i = 0; i < a->size(); ++i) {
    lp[i] = {Side::kRight, i};
    rp[i] = {Side::kLeft, i};
  }
  return Sijection(a, a, std::move(lp), std::move(rp));
}

Sijection Sijection::from_partner(SetPtr left, SetPtr right, const PartnerFn& partner) {
  auto resolve = [&](Side s, const SignedElement& e) {
    auto [ps, pp] = partner(s, e);
    const SignedSet& target = ps == Side::kLeft ? *left : *right;
    auto idx = target.find(pp);
    if (!idx)
      throw InternalError("partner " + std::string(1, side_char(ps)) + pp.key() + " of " +
                          std::string(1, side_char(s)) + e.payload.key() + " is not in its set");
    return ElementRef{ps, *idx};
  };
  std::vector<ElementRef> lp, rp;
  lp.reserve(left->size());
  rp.reserve(right->size());
  for (const auto& e : *left) lp.push_back(resolve(Side::kLeft, e));
  for (const auto& e : *right) rp.push_back(resolve(Side::kRight, e));
  return Sijection(std::move(left), std::move(right), std::move(lp), std::move(rp));
}

std::vector<ElementRef> Sijection::flip(const std::vector<ElementRef>& v) {
  std::vector<ElementRef> out(v);
  for (auto& r : out) r.side = other(r.side);
  return out;
}

std::size_t Sijection::cross_pairs() const {
  return static_cast<std::size_t>(
      std::count_if(lp_.begin(), lp_.end(), [](const ElementRef& r) { return r.side == Side::kRight; }));
}

std::size_t Sijection::left_cancellations() const {
  return static_cast<std::size_t>(
             std::count_if(lp_.begin(), lp_.end(), [](const ElementRef& r) { return r.side == Side::kLeft; })) /
         2;
}

std::size_t Sijection::right_cancellations() const {
  return static_cast<std::size_t>(
             std::count_if(rp_.begin(), rp_.end(), [](const ElementRef& r) { return r.side == Side::kRight; })) /
         2;
}

nlohmann::json Sijection::to_json() const {
  auto pairs = nlohmann::json::array();
  auto emit = [&](Side s, std::uint32_t i) {
    ElementRef a{s, i};
    ElementRef b = partner(a);
    // each unordered pair once: left before right, lower index first
    if (b.side < a.side || (b.side == a.side && b.index < a.index)) return;
    pairs.push_back({std::string(1, side_char(a.side)), element(a).payload.key(),
                     std::string(1, side_char(b.side)), element(b).payload.key()});
  };
  for (std::uint32_t i = 0; i < left_->size(); ++i) emit(Side::kLeft, i);
  for (std::uint32_t i = 0; i < right_->size(); ++i) emit(Side::kRight, i);
  return {{"left", left_->to_json()}, {"right", right_->to_json()}, {"pairs", pairs}};
}

VerifyReport sij_verify(const Sijection& s) {
  VerifyReport rep;
  auto name = [&](ElementRef r) {
    return std::string(1, side_char(r.side)) + s.element(r).payload.key();
  };
  auto check = [&](Side side, std::size_t n) {
    const SignedSet& other_set = [&]() -> const SignedSet& { return side == Side::kLeft ? s.right() : s.left(); }();
    const SignedSet& same_set = side == Side::kLeft ? s.left() : s.right();
    for (std::uint32_t i = 0; i < n; ++i) {
      ElementRef a{side, i};
      ElementRef b = s.partner(a);
      std::size_t bound = b.side == side ? same_set.size() : other_set.size();
      if (b.index >= bound) {
        rep.ok = false;
        rep.violations.push_back(name(a) + ": partner index out of range");
        continue;
      }
      if (b == a) {
        rep.ok = false;
        rep.violations.push_back(name(a) + ": paired with itself");
        continue;
      }
      if (s.partner(b) != a) {
        rep.ok = false;
        rep.violations.push_back(name(a) + " -> " + name(b) + ": not an involution");
        continue;
      }
      const Monomial& wa = s.element(a).weight;
      const Monomial& wb = s.element(b).weight;
      bool good = b.side == a.side ? (wa.exps == wb.exps && wa.sign == -wb.sign) : wa == wb;
      // report each bad pair once
      if (!good && (b.side > a.side || (b.side == a.side && b.index > a.index))) {
        rep.ok = false;
        rep.violations.push_back(name(a) + " <-> " + name(b) + ": sign rule broken (" + wa.text() + " vs " +
                                 wb.text() + ")");
      }
    }
  };
  check(Side::kLeft, s.left().size());
  check(Side::kRight, s.right().size());
  return rep;
}

Sijection sij_compose(const Sijection& f, const Sijection& g) {
  if (f.right_ptr() != g.left_ptr() && !(f.right() == g.left()))
    throw MismatchError("sij_compose: middle signed sets differ");
  std::size_t limit = f.left().size() + f.right().size() + g.right().size() + 2;
  // Outer sides: A is f's left (kLeft), C is g's right (kRight).
  auto chase = [&](Side start, std::uint32_t idx) -> ElementRef {
    bool in_f = start == Side::kLeft;  // which map to apply next
    ElementRef cur{in_f ? Side::kLeft : Side::kRight, idx};
    for (std::size_t step = 0; step < limit; ++step) {
      if (in_f) {
        ElementRef nxt = f.partner(cur);
        if (nxt.side == Side::kLeft) return {Side::kLeft, nxt.index};
        cur = {Side::kLeft, nxt.index};  // now an element of B, seen from g
        in_f = false;
      } else {
        ElementRef nxt = g.partner(cur);
        if (nxt.side == Side::kRight) return {Side::kRight, nxt.index};
        cur = {Side::kRight, nxt.index};  // element of B, seen from f
        in_f = true;
      }
    }
    throw InternalError("sij_compose: path did not terminate");
  };
  std::vector<ElementRef> lp(f.left().size()), rp(g.right().size());
  for (std::uint32_t i = 0; i < lp.size(); ++i) lp[i] = chase(Side::kLeft, i);
  for (std::uint32_t i = 0; i < rp.size(); ++i) rp[i] = chase(Side::kRight, i);
  return Sijection(f.left_ptr(), g.right_ptr(), std::move(lp), std::move(rp));
}

Sijection sij_sum_tagged(const std::vector<std::pair<Payload, const Sijection*>>& parts) {
  std::vector<SignedElement> le, re;
  std::vector<std::size_t> loff, roff;
  for (const auto& [tag, s] : parts) {
    loff.push_back(le.size());
    roff.push_back(re.size());
    for (const auto& e : s->left()) le.push_back({sum_payload(tag, e.payload), e.weight});
    for (const auto& e : s->right()) re.push_back({sum_payload(tag, e.payload), e.weight});
  }
  std::vector<std::uint32_t> lpos, rpos;
  auto left = share(SignedSet::from_unsorted(std::move(le), &lpos));
  auto right = share(SignedSet::from_unsorted(std::move(re), &rpos));
  std::vector<ElementRef> lp(left->size()), rp(right->size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const Sijection& s = *parts[k].second;
    auto map = [&](ElementRef r) {
      std::size_t flat = (r.side == Side::kLeft ? loff[k] : roff[k]) + r.index;
      return ElementRef{r.side, r.side == Side::kLeft ? lpos[flat] : rpos[flat]};
    };
    for (std::uint32_t i = 0; i < s.left().size(); ++i)
      lp[lpos[loff[k] + i]] = map(s.partner({Side::kLeft, i}));
    for (std::uint32_t i = 0; i < s.right().size(); ++i)
      rp[rpos[roff[k] + i]] = map(s.partner({Side::kRight, i}));
  }
  return Sijection(std::move(left), std::move(right), std::move(lp), std::move(rp));
}

Sijection sij_sum(const std::vector<const Sijection*>& parts) {
  std::vector<std::pair<Payload, const Sijection*>> tagged;
  for (std::size_t k = 0; k < parts.size(); ++k)
    tagged.emplace_back(Payload::tag(static_cast<std::int32_t>(k)), parts[k]);
  return sij_sum_tagged(tagged);
}

Sijection sij_product(const std::vector<const Sijection*>& parts) {
  std::vector<const SignedSet*> ls, rs;
  std::vector<std::size_t> lrad, rrad;
  for (const auto* s : parts) {
    ls.push_back(&s->left());
    rs.push_back(&s->right());
    lrad.push_back(s->left().size());
    rrad.push_back(s->right().size());
  }
  std::vector<std::uint32_t> lpos, rpos;
  auto left = share(SignedSet::from_unsorted(product_elements(ls), &lpos));
  auto right = share(SignedSet::from_unsorted(product_elements(rs), &rpos));

  auto flat = [](const std::vector<std::size_t>& idx, const std::vector<std::size_t>& radix) {
    std::size_t f = 0;
    for (std::size_t c = 0; c < idx.size(); ++c) f = f * radix[c] + idx[c];
    return f;
  };
  auto pair_one = [&](Side side, const std::vector<std::size_t>& idx) -> ElementRef {
    std::vector<std::size_t> out(idx);
    for (std::size_t c = 0; c < parts.size(); ++c) {
      ElementRef p = parts[c]->partner({side, static_cast<std::uint32_t>(idx[c])});
      if (p.side == side) {
        std::vector<std::size_t> toggled(idx);
        toggled[c] = p.index;
        std::size_t f = flat(toggled, side == Side::kLeft ? lrad : rrad);
        return {side, side == Side::kLeft ? lpos[f] : rpos[f]};
      }
      out[c] = p.index;
    }
    Side o = other(side);
    std::size_t f = flat(out, o == Side::kLeft ? lrad : rrad);
    return {o, o == Side::kLeft ? lpos[f] : rpos[f]};
  };

  std::vector<ElementRef> lp(left->size()), rp(right->size());
  auto fill = [&](Side side, const std::vector<std::size_t>& radix, std::vector<ElementRef>& table,
                  const std::vector<std::uint32_t>& pos) {
    if (table.empty()) return;
    std::vector<std::size_t> idx(parts.size(), 0);
    std::size_t f = 0;
    do {
      table[pos[f++]] = pair_one(side, idx);
    } while (next_index(idx, radix));
  };
  fill(Side::kLeft, lrad, lp, lpos);
  fill(Side::kRight, rrad, rp, rpos);
  return Sijection(std::move(left), std::move(right), std::move(lp), std::move(rp));
}

Sijection sij_lift(LiftOp op, const std::vector<const Sijection*>& parts) {
  return op == LiftOp::kSum ? sij_sum(parts) : sij_product(parts);
}

Sijection sij_negate(const Sijection& s) {
  auto left = share(ss_negate(s.left()));
  auto right = s.left_ptr() == s.right_ptr() ? left : share(ss_negate(s.right()));
  std::vector<ElementRef> lp(s.left().size()), rp(s.right().size());
  for (std::uint32_t i = 0; i < lp.size(); ++i) lp[i] = s.partner({Side::kLeft, i});
  for (std::uint32_t i = 0; i < rp.size(); ++i) rp[i] = s.partner({Side::kRight, i});
  return Sijection(std::move(left), std::move(right), std::move(lp), std::move(rp));
}

Sijection relabel(SetPtr a, const std::function<Payload(const SignedElement&)>& map) {
  std::vector<SignedElement> img;
  img.reserve(a->size());
  for (const auto& e : *a) img.push_back({map(e), e.weight});
  std::vector<std::uint32_t> pos;
  SetPtr b;
  try {
    b = share(SignedSet::from_unsorted(std::move(img), &pos));
  } catch (const PreconditionError& ex) {
    throw InternalError(std::string("relabel map is not injective: ") + ex.what());
  }
  std::vector<ElementRef> lp(a->size()), rp(b->size());
  for (std::uint32_t i = 0; i < a->size(); ++i) {
    lp[i] = {Side::kRight, pos[i]};
    rp[pos[i]] = {Side::kLeft, i};
  }
  return Sijection(std::move(a), std::move(b), std::move(lp), std::move(rp));
}

Sijection relabel_onto(SetPtr a, SetPtr target, const std::function<Payload(const SignedElement&)>& map) {
  Sijection s = relabel(std::move(a), map);
  if (!(s.right() == *target)) {
    std::string detail;
    if (s.right().size() != target->size()) {
      detail = "sizes " + std::to_string(s.right().size()) + " vs " + std::to_string(target->size());
    } else {
      for (std::size_t i = 0; i < target->size(); ++i)
        if (!(s.right()[i] == (*target)[i])) {
          detail = s.right()[i].payload.key() + " " + s.right()[i].weight.text() + " vs " +
                   (*target)[i].payload.key() + " " + (*target)[i].weight.text();
          break;
        }
    }
    throw InternalError("relabel image differs from the target set: " + detail);
  }
  std::vector<ElementRef> lp(s.left().size()), rp(s.right().size());
  for (std::uint32_t i = 0; i < lp.size(); ++i) lp[i] = s.partner({Side::kLeft, i});
  for (std::uint32_t i = 0; i < rp.size(); ++i) rp[i] = s.partner({Side::kRight, i});
  return Sijection(s.left_ptr(), std::move(target), std::move(lp), std::move(rp));
}

}  // namespace selberg
