#pragma once

#include <span>
#include <vector>

#include "selberg/signed_set.hpp"

namespace selberg {

// Weak compositions of k into n parts, colexicographic order.
std::vector<std::vector<int>> weak_compositions(int n, int k);

// B(vars, k): weak compositions a of k, weight ∏ vars_i^{a_i}. Payload is the
// tuple a. Empty for k < 0; {()} for no variables and k = 0.
SignedSet build_B(std::span<const VarId> vars, int k);

// [q] × B((x)^{q+1}, j-q) <-> [j] × B((x)^q, j-q), a bijection.
// (l, a) maps to (l + a_1 + ... + a_l, a with a_l and a_{l+1} merged).
Sijection merge_bijection(VarId x, int q, int j);

// B((xj, Y), k) - B((xi, Y), k) <-> {xj, -xi} × B((xi, xj, Y), k-1) for k >= 1.
// Left payloads are (@0, a) and (@1, a); right payloads are (v, a).
Sijection split_sijection(VarId xi, VarId xj, std::span<const VarId> ys, int k);

// Same shape for any k: k = 0 cancels the two unit elements against each
// other and k < 0 gives empty sets.
Sijection split_sijection_any(VarId xi, VarId xj, std::span<const VarId> ys, int k);

}  // namespace selberg
