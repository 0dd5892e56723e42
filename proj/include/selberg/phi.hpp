#pragma once

// The φ construction: a weighted element s with weight ±∏ x_i^{c_i} together
// with lists L_i of c_i distinct ranks below p_i, so that P and the lists
// together use every rank in [N] once. Payload: (s, (L_1, ..., L_n)).

#include <span>
#include <vector>

#include "selberg/dag.hpp"
#include "selberg/signed_set.hpp"

namespace selberg {

// Strictly increasing diagonal ranks p_1 < ... < p_n.
class DiagonalFixing {
 public:
  explicit DiagonalFixing(std::vector<int> p);
  const std::vector<int>& values() const { return p_; }
  std::size_t size() const { return p_.size(); }

 private:
  std::vector<int> p_;
};

using RankLists = std::vector<std::vector<int>>;

Payload phi_payload(const Payload& s, const RankLists& lists);
RankLists phi_lists(const Payload& phi_element);

// N is n plus the common total degree of the weights.
SignedSet build_phi(const SignedSet& s, std::span<const VarId> xs, const DiagonalFixing& p);
// Explicit N; P only needs distinct entries in [N].
SignedSet build_phi(const SignedSet& s, std::span<const VarId> xs, std::span<const int> p, int n_total);

// Topo(G) <-> Topo(G1) - Topo(G2), where G1 drops b -> g and G2 drops v -> b,
// b -> g and adds g -> b. Right payloads are (@0, f) and (@1, f). Needs the
// edges v -> b and b -> g, and v must still reach g in G2. When b reaches g
// by another path, G2 is cyclic and contributes nothing.
Sijection trick_one_sijection(const Dag& g, const VertexName& b, const VertexName& gv, const VertexName& v,
                              const Fixing& fixed = {});

// {f in Topo(G_X(alpha)) : f(u_i) = p_i} <-> φ(∏_{i<j} {x_j, -x_i}^{alpha_i alpha_j}, X, P).
// Defaults to X = (x_1, ..., x_n).
Sijection topo_phi_bijection(std::span<const int> alpha, const DiagonalFixing& p,
                             std::span<const VarId> xs = {});

// φ(A) <-> φ(B) for a weight-preserving sijection A <-> B, keeping the lists.
Sijection lift_through_phi(const Sijection& psi, std::span<const VarId> xs, std::span<const int> p, int n_total);

// [l+1] × Σ_{p_j < p_k} φ(S, X, P) <-> φ(S', X without x_j, P without p_j),
// S' being S with x_j^l traded for x_k^{l+1}. j and k are 1-based; p_rest
// lists the ranks of the other indices in order. Left payload
// (x, (p_j, φ-element)); p_j is inserted at position x of L_j and the result
// appended to L_k.
Sijection phi_insert_bijection(const SignedSet& s, std::span<const VarId> xs, std::span<const int> p_rest,
                               std::size_t j, std::size_t k, int ell, int n_total);

// Σ_{p_{j-1} < p_j < p_{j+1}} φ <-> Σ_{p_j < p_{j+1}} φ - Σ_{p_j < p_{j-1}} φ.
// Left payload (p_j, φ-element); right payloads (@0, (p_j, .)) and (@1, (p_j, .)).
Sijection phi_split_sijection(const SignedSet& s, std::span<const VarId> xs, std::span<const int> p_rest,
                              std::size_t j, int n_total);

// Σ over the listed values of p_j of φ(S, X, P), payload (p_j, φ-element).
SignedSet phi_sum_over(const SignedSet& s, std::span<const VarId> xs, std::span<const int> p_rest, std::size_t j,
                       std::span<const int> values, int n_total, bool negate = false);

// S with x_j^l replaced by x_k^{l+1} in every weight (payloads unchanged).
SignedSet shift_exponent(const SignedSet& s, VarId xj, VarId xk);

}  // namespace selberg
