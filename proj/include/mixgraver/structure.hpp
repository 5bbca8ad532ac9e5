// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mixgraver/numerics.hpp"

#include <map>
#include <set>
#include <utility>
#include <vector>

namespace mixgraver {

/// (n*t) x (r + s*n): r global columns, then n diagonal t x s blocks.
/// `column_order[k]` is the instance column sitting at layout position k; empty means identity.
/// Instances keep integer columns first, so a layout generally permutes them.
struct TwoStageShape {
  std::size_t r = 0, s = 0, t = 0, n = 0;
  std::vector<std::size_t> column_order;

  std::size_t rows() const { return n * t; }
  std::size_t cols() const { return r + s * n; }
  std::size_t layout_column(std::size_t k) const { return column_order.empty() ? k : column_order[k]; }
  bool operator==(const TwoStageShape&) const = default;
};

/// (r + s*n) x (n*t): r global rows over all bricks, then n diagonal s x t blocks.
struct NFoldShape {
  std::size_t r = 0, s = 0, t = 0, n = 0;
  std::vector<std::size_t> column_order;

  std::size_t rows() const { return r + s * n; }
  std::size_t cols() const { return n * t; }
  std::size_t layout_column(std::size_t k) const { return column_order.empty() ? k : column_order[k]; }
  bool operator==(const NFoldShape&) const = default;
};

/// Blocks are 1-indexed; global and block columns are 0-indexed layout positions.
struct Signature {
  std::set<std::size_t> Pi;
  std::map<std::size_t, std::set<std::size_t>> Lambda;
  std::set<std::size_t> Gamma;
  bool operator==(const Signature&) const = default;
};

struct Rearrangement {
  RatMat matrix;
  std::vector<std::size_t> column_order;  // new position -> old layout column
  std::vector<std::size_t> row_order;     // new position -> old row
  std::size_t significant_dim = 0;
};

/// B blocks are t x r, A blocks are t x s.
std::pair<RatMat, TwoStageShape> build_two_stage(const std::vector<RatMat>& B_blocks, const std::vector<RatMat>& A_blocks);
/// Top blocks are r x t, diagonal blocks are s x t.
std::pair<RatMat, NFoldShape> build_nfold(const std::vector<RatMat>& top_blocks, const std::vector<RatMat>& diag_blocks);

/// Matrix columns rearranged into layout order.
RatMat layout_matrix(const RatMat& E, const std::vector<std::size_t>& column_order);
/// Checks dimensions and the zero pattern of a matrix in layout order.
bool matches_shape(const RatMat& layout, const TwoStageShape& shape);
bool matches_shape(const RatMat& layout, const NFoldShape& shape);

/// Block (1-indexed) owning a local layout column, or 0 for global columns.
std::size_t block_of(const TwoStageShape& shape, std::size_t layout_col);

Signature signature(const RatMat& E, const TwoStageShape& shape, const std::vector<std::size_t>& D);
Rearrangement rearrange(const RatMat& E, const TwoStageShape& shape, const std::vector<std::size_t>& D);
/// Throws std::invalid_argument unless the columns D form an invertible square submatrix.
bool invertible_blocks_bound_check(const RatMat& E, const TwoStageShape& shape, const std::vector<std::size_t>& D);

}  // namespace mixgraver
