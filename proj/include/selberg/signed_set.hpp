#pragma once

// Signed sets with signed-monomial weights and sijections between them.
//
// A sijection between A and B is an involution on A ⊔ B. Pairs inside one
// side carry opposite weights (they cancel); pairs across sides carry equal
// weights. Sijections are stored as explicit pairing tables indexed by the
// canonical positions of the elements.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "selberg/payload.hpp"
#include "selberg/poly.hpp"

namespace selberg {

struct SignedElement {
  Payload payload;
  Monomial weight;

  bool operator==(const SignedElement&) const = default;
};

class SignedSet {
 public:
  SignedSet() = default;
  // Sorts by payload; duplicate payloads are rejected.
  explicit SignedSet(std::vector<SignedElement> elems);
  // Same, and reports where each input element ended up.
  static SignedSet from_unsorted(std::vector<SignedElement> elems, std::vector<std::uint32_t>* position);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const SignedElement& operator[](std::size_t i) const { return elems_[i]; }
  const std::vector<SignedElement>& elements() const { return elems_; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }

  std::optional<std::uint32_t> find(const Payload& p) const;

  // Counts of positive and negative elements.
  std::size_t positive_count() const;
  std::size_t negative_count() const { return size() - positive_count(); }

  bool operator==(const SignedSet& o) const { return elems_ == o.elems_; }

  nlohmann::json to_json() const;

 private:
  std::vector<SignedElement> elems_;
};

using SetPtr = std::shared_ptr<const SignedSet>;

inline SetPtr share(SignedSet s) { return std::make_shared<const SignedSet>(std::move(s)); }

IntPolynomial ss_weight(const SignedSet& a);

SignedSet ss_negate(const SignedSet& a);
// Disjoint sum; the k-th summand's elements become (@k, e).
SignedSet ss_sum(const std::vector<const SignedSet*>& parts);
SignedSet ss_sum(const SignedSet& a, const SignedSet& b);
// Product; elements become (e_1, ..., e_n) with multiplied weights.
SignedSet ss_product(const std::vector<const SignedSet*>& parts);
SignedSet ss_product(const SignedSet& a, const SignedSet& b);

enum class SetOp { kNegate, kSum, kProduct };
SignedSet ss_combine(SetOp op, const SignedSet& a, const SignedSet* b = nullptr);

// {1, ..., k}, all weight 1.
SignedSet range_set(int k);
// Permutations of [k] as integer tuples, all weight 1; realizes [k!].
SignedSet permutation_set(int k);
// The one-element set {()} of weight 1.
SignedSet unit_set();
// {x_j, -x_i}: payload x_j with weight x_j and payload x_i with weight -x_i.
SignedSet binomial_pair(VarId xj, VarId xi);

enum class Side : std::uint8_t { kLeft = 0, kRight = 1 };

inline Side other(Side s) { return s == Side::kLeft ? Side::kRight : Side::kLeft; }

struct ElementRef {
  Side side = Side::kLeft;
  std::uint32_t index = 0;

  bool operator==(const ElementRef&) const = default;
};

class Sijection {
 public:
  Sijection(SetPtr left, SetPtr right, std::vector<ElementRef> left_partner,
            std::vector<ElementRef> right_partner);

  // Every element paired with its copy on the other side.
  static Sijection identity(SetPtr a);
  // Partner of each element given by payload; throws if a partner is missing.
  using PartnerFn = std::function<std::pair<Side, Payload>(Side, const SignedElement&)>;
  static Sijection from_partner(SetPtr left, SetPtr right, const PartnerFn& partner);

  const SignedSet& left() const { return *left_; }
  const SignedSet& right() const { return *right_; }
  const SetPtr& left_ptr() const { return left_; }
  const SetPtr& right_ptr() const { return right_; }

  ElementRef partner(ElementRef e) const {
    return e.side == Side::kLeft ? lp_[e.index] : rp_[e.index];
  }
  const SignedElement& element(ElementRef e) const {
    return e.side == Side::kLeft ? (*left_)[e.index] : (*right_)[e.index];
  }

  Sijection inverse() const { return Sijection(right_, left_, flip(rp_), flip(lp_)); }

  // Number of cross-side pairs, and same-side pairs on each side.
  std::size_t cross_pairs() const;
  std::size_t left_cancellations() const;
  std::size_t right_cancellations() const;
  bool is_bijection() const { return left_cancellations() == 0 && right_cancellations() == 0; }

  // {left, right, pairs: [[side, key, side, key], ...]}, each pair listed once.
  nlohmann::json to_json() const;

 private:
  static std::vector<ElementRef> flip(const std::vector<ElementRef>& v);

  SetPtr left_, right_;
  std::vector<ElementRef> lp_, rp_;
};

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Totality, involution, no fixed points, and the sign rule.
VerifyReport sij_verify(const Sijection& s);

// f : A <-> B and g : B <-> C give A <-> C by chasing alternating paths.
// B must be identical (payloads and weights) in f and g.
Sijection sij_compose(const Sijection& f, const Sijection& g);

// Componentwise sum; element k of the result sides is (@k, e).
Sijection sij_sum(const std::vector<const Sijection*>& parts);
// Sum over arbitrary distinct tags: element becomes (tag, e).
Sijection sij_sum_tagged(const std::vector<std::pair<Payload, const Sijection*>>& parts);
// Product: the first coordinate whose partner stays on the same side is
// toggled alone; if every coordinate crosses, all of them cross together.
// This keeps the result an involution and keeps the sign rule.
Sijection sij_product(const std::vector<const Sijection*>& parts);

enum class LiftOp { kSum, kProduct };
Sijection sij_lift(LiftOp op, const std::vector<const Sijection*>& parts);

// -A <-> -B with the same pairing.
Sijection sij_negate(const Sijection& s);

// Weight-preserving bijection A <-> map(A). Throws if map is not injective.
Sijection relabel(SetPtr a, const std::function<Payload(const SignedElement&)>& map);
// Same, but the image must be exactly `target` with matching weights.
Sijection relabel_onto(SetPtr a, SetPtr target, const std::function<Payload(const SignedElement&)>& map);

// Tagged-sum helpers for payloads shaped (tag, e).
Payload sum_payload(const Payload& tag, const Payload& e);

}  // namespace selberg
