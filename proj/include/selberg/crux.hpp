#pragma once

// The bijection
//   [(Σα)!] × A  <->  ∏_{i odd} [α_i!] × B
// where A holds the labelings of G_X(α) (α of odd length, even entries 1) with
// f(u_i) = p_i for odd i, and B those of G_X(α_odd + 1) with f(u_i) = p_{2i-1}.
// Built as a chain of four stages through φ sets of signed-set determinants.

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "selberg/phi.hpp"

namespace selberg {

// n + Σ_{i<j} (a_i + 1)(a_j + 1) over the odd-position alphas.
int crux_vertex_count(std::span<const int> alpha_odd);

// Odd-position entries of a full alpha; checks the shape (odd length, evens 1).
std::vector<int> crux_odd_part(std::span<const int> alpha);

// Topo(G_X(α) with f(u_i) = p_i) <-> φ(D(H((), X, α)), X, P).
Sijection crux_part1(std::span<const int> alpha, const DiagonalFixing& p, std::span<const VarId> xs = {});

// [m!] × D(H((), X, α)) <-> Q × D(H1(X, α_odd)), m = Σα, Q = ∏_{i odd} [α_i!].
// Left payload (perm, d); right payload ((perm_1, perm_3, ...), d).
Sijection crux_part2(std::span<const int> alpha);

// Σ_{P_even} φ(D(H1), X, P) <-> φ(D(H2), X_odd, P_odd), summing over even
// ranks with p_1 < p_2 < ... < p_{2n-1}. Left payload (P_even, φ-element).
Sijection crux_part3(std::span<const int> alpha_odd, const DiagonalFixing& p_odd);

// φ(D(H((), X_odd, α_odd + 1)), X_odd, P_odd) <-> φ(D(H2), X_odd, P_odd).
Sijection crux_part4(std::span<const int> alpha_odd, const DiagonalFixing& p_odd);

enum class CruxStage { kPart1, kPart2, kPart3, kPart4 };

struct CruxStageInputs {
  std::vector<int> alpha;  // full alpha for parts 1 and 2, odd part for 3 and 4
  std::vector<int> p;      // all diagonal ranks for part 1, odd ones for 3 and 4
};

Sijection crux_stage_sijection(CruxStage stage, const CruxStageInputs& in);

struct CruxStageSize {
  std::string stage;
  std::size_t left = 0, right = 0;
};

struct CruxCertificate {
  Sijection sij;
  std::vector<CruxStageSize> stages;
  int n_total = 0;

  nlohmann::json summary() const;
};

// alpha is the full alpha; p_odd the ranks of u_1, u_3, ....
CruxCertificate crux_sijection(std::span<const int> alpha, const DiagonalFixing& p_odd);

// Labelings on both ends of the crux bijection.
SignedSet crux_left_set(std::span<const int> alpha, const DiagonalFixing& p_odd);
SignedSet crux_right_set(std::span<const int> alpha, const DiagonalFixing& p_odd);

}  // namespace selberg
