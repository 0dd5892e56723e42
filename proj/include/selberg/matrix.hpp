#pragma once

// Matrices whose entries are signed sets, their permutation expansion D(M),
// row-operation sijections and the generalized Vandermonde sijection.
//
// Element payloads of D(M) are (sigma, (m_1, ..., m_n)) with sigma written as
// a 1-based integer tuple and m_i drawn from entry (i, sigma(i)).

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "selberg/poly.hpp"
#include "selberg/signed_set.hpp"

namespace selberg {

class SignedSetMatrix {
 public:
  SignedSetMatrix() = default;
  SignedSetMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  // 1-based access.
  const SignedSet& at(std::size_t i, std::size_t j) const { return *cells_[(i - 1) * cols_ + (j - 1)]; }
  const SetPtr& ptr(std::size_t i, std::size_t j) const { return cells_[(i - 1) * cols_ + (j - 1)]; }
  void set(std::size_t i, std::size_t j, SignedSet s) { cells_[(i - 1) * cols_ + (j - 1)] = share(std::move(s)); }
  void set(std::size_t i, std::size_t j, SetPtr s) { cells_[(i - 1) * cols_ + (j - 1)] = std::move(s); }

  // Drops row r and column c.
  SignedSetMatrix minor(std::size_t r, std::size_t c) const;

  bool operator==(const SignedSetMatrix& o) const;
  nlohmann::json to_json() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SetPtr> cells_;
};

// Largest dimension for which D(M) is materialized.
inline constexpr std::size_t kMaxMaterializedDim = 7;

// Rows of block i, local row l: B((Y, x_i repeated l times), j - l).
SignedSetMatrix build_H(std::span<const VarId> ys, std::span<const VarId> xs, std::span<const int> alpha);
// X holds all 2n-1 variables; odd blocks are M1 rows, even positions one M2 row.
SignedSetMatrix build_H1(std::span<const VarId> xs, std::span<const int> alpha_odd);
// X holds the n odd-position variables; even positions become M3 rows.
SignedSetMatrix build_H2(std::span<const VarId> xs_odd, std::span<const int> alpha_odd);

SignedSet expand_D(const SignedSetMatrix& m);
Payload d_payload(std::span<const int> sigma, std::span<const Payload> picks);
int permutation_sign(std::span<const int> sigma);

std::vector<std::vector<IntPolynomial>> weight_matrix(const SignedSetMatrix& m);
// Sum over permutations of signed entry products.
IntPolynomial permutation_determinant(const std::vector<std::vector<IntPolynomial>>& a);

enum class RowMode { kAdd, kSub };

// Row j replaced by A_j + A_i (or A_j - A_i); entries become (@0, e) / (@1, e).
SignedSetMatrix row_combined(const SignedSetMatrix& a, std::size_t i, std::size_t j, RowMode mode);
// D(A) <-> D(A'). D(A) embeds as the (@0, .) picks; picks drawing the copied
// row cancel by swapping rows i and j of sigma.
Sijection row_subtract_sijection(const SignedSetMatrix& a, std::size_t i, std::size_t j, RowMode mode);

// D(M) <-> D(M') where row r of M is replaced entrywise: per_col[c-1].left()
// must equal entry (r, c) and per_col[c-1].right() becomes the new entry.
Sijection lift_entrywise(const SignedSetMatrix& m, std::size_t r, const std::vector<Sijection>& per_col);

// ∏_{i<j} {x_j, -x_i}^{alpha_i alpha_j}; payload lists the choices in
// lexicographic (i, j, k) order.
SignedSet vandermonde_set(std::span<const VarId> xs, std::span<const int> alpha);

struct GvTraceEntry {
  std::string step;
  std::size_t size = 0;
};

// D(H(Y, X, alpha)) <-> ∏_{i<j} {x_j, -x_i}^{alpha_i alpha_j}.
Sijection gv_sijection(std::span<const VarId> ys, std::span<const VarId> xs, std::span<const int> alpha,
                       std::vector<GvTraceEntry>* trace = nullptr);

// One application of the reduction for alpha_1 >= 1:
// D(H(Y, X, alpha)) <-> F × D(H((Y, x_1), X, (alpha_1 - 1, ...))) where F is the
// product of {x_j, -x_1} over j >= 2, alpha_j times each, in row order.
Sijection gv_step(std::span<const VarId> ys, std::span<const VarId> xs, std::span<const int> alpha,
                  std::vector<GvTraceEntry>* trace = nullptr);

struct SeriesDetReport {
  IntPolynomial lhs, rhs;
  bool ok = false;
};

// det of [t^{j-i}] f(t) / (1 - t x_b)^i blocks against ∏ (x_j - x_i)^{alpha_i alpha_j}.
SeriesDetReport appendix_det_check(const SeriesTrunc& f, std::span<const VarId> xs, std::span<const int> alpha);

}  // namespace selberg
