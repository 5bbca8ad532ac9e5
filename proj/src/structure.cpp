// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace mixgraver {

std::pair<RatMat, TwoStageShape> build_two_stage(const std::vector<RatMat>& B_blocks, const std::vector<RatMat>& A_blocks)
{
  if (B_blocks.empty() || B_blocks.size() != A_blocks.size())
    throw std::invalid_argument("build_two_stage: need one B and one A block per scenario");
  TwoStageShape shape;
  shape.n = B_blocks.size();
  shape.t = B_blocks[0].rows();
  shape.r = B_blocks[0].cols();
  shape.s = A_blocks[0].cols();
  for (std::size_t i = 0; i < shape.n; ++i) {
    if (B_blocks[i].rows() != shape.t || B_blocks[i].cols() != shape.r)
      throw std::invalid_argument("build_two_stage: inconsistent B block dimensions");
    if (A_blocks[i].rows() != shape.t || A_blocks[i].cols() != shape.s)
      throw std::invalid_argument("build_two_stage: inconsistent A block dimensions");
  }
  RatMat E(shape.rows(), shape.cols());
  for (std::size_t i = 0; i < shape.n; ++i)
    for (std::size_t k = 0; k < shape.t; ++k) {
      for (std::size_t j = 0; j < shape.r; ++j) E(i * shape.t + k, j) = B_blocks[i](k, j);
      for (std::size_t j = 0; j < shape.s; ++j) E(i * shape.t + k, shape.r + i * shape.s + j) = A_blocks[i](k, j);
    }
  return {E, shape};
}

std::pair<RatMat, NFoldShape> build_nfold(const std::vector<RatMat>& top_blocks, const std::vector<RatMat>& diag_blocks)
{
  if (top_blocks.empty() || top_blocks.size() != diag_blocks.size())
    throw std::invalid_argument("build_nfold: need one top and one diagonal block per brick");
  NFoldShape shape;
  shape.n = top_blocks.size();
  shape.r = top_blocks[0].rows();
  shape.t = top_blocks[0].cols();
  shape.s = diag_blocks[0].rows();
  for (std::size_t i = 0; i < shape.n; ++i) {
    if (top_blocks[i].rows() != shape.r || top_blocks[i].cols() != shape.t)
      throw std::invalid_argument("build_nfold: inconsistent top block dimensions");
    if (diag_blocks[i].rows() != shape.s || diag_blocks[i].cols() != shape.t)
      throw std::invalid_argument("build_nfold: inconsistent diagonal block dimensions");
  }
  RatMat E(shape.rows(), shape.cols());
  for (std::size_t i = 0; i < shape.n; ++i)
    for (std::size_t j = 0; j < shape.t; ++j) {
      for (std::size_t k = 0; k < shape.r; ++k) E(k, i * shape.t + j) = top_blocks[i](k, j);
      for (std::size_t k = 0; k < shape.s; ++k) E(shape.r + i * shape.s + k, i * shape.t + j) = diag_blocks[i](k, j);
    }
  return {E, shape};
}

RatMat layout_matrix(const RatMat& E, const std::vector<std::size_t>& column_order)
{
  if (column_order.empty()) return E;
  if (column_order.size() != E.cols()) throw std::invalid_argument("layout has wrong length");
  return E.select_columns(column_order);
}

bool matches_shape(const RatMat& layout, const TwoStageShape& shape)
{
  if (layout.rows() != shape.rows() || layout.cols() != shape.cols()) return false;
  for (std::size_t i = 0; i < layout.rows(); ++i) {
    std::size_t blk = i / shape.t;
    for (std::size_t j = shape.r; j < layout.cols(); ++j)
      if ((j - shape.r) / shape.s != blk && sgn(layout(i, j)) != 0) return false;
  }
  return true;
}

bool matches_shape(const RatMat& layout, const NFoldShape& shape)
{
  if (layout.rows() != shape.rows() || layout.cols() != shape.cols()) return false;
  for (std::size_t i = shape.r; i < layout.rows(); ++i) {
    std::size_t blk = (i - shape.r) / shape.s;
    for (std::size_t j = 0; j < layout.cols(); ++j)
      if (j / shape.t != blk && sgn(layout(i, j)) != 0) return false;
  }
  return true;
}

std::size_t block_of(const TwoStageShape& shape, std::size_t layout_col)
{
  if (layout_col < shape.r) return 0;
  return (layout_col - shape.r) / shape.s + 1;
}

Signature signature(const RatMat& E, const TwoStageShape& shape, const std::vector<std::size_t>& D)
{
  (void)E;
  Signature sig;
  std::map<std::size_t, std::set<std::size_t>> per_block;
  for (auto c : D) {
    if (c >= shape.cols()) throw std::invalid_argument("signature: column index out of range");
    std::size_t blk = block_of(shape, c);
    if (blk == 0) sig.Gamma.insert(c);
    else per_block[blk].insert(c);
  }
  for (auto& [blk, cols] : per_block) {
    if (shape.t > cols.size()) {
      sig.Pi.insert(blk);
      sig.Lambda[blk] = cols;
    }
  }
  return sig;
}

Rearrangement rearrange(const RatMat& E, const TwoStageShape& shape, const std::vector<std::size_t>& D)
{
  Signature sig = signature(E, shape, D);
  std::set<std::size_t> in_d(D.begin(), D.end());
  Rearrangement out;
  for (std::size_t j = 0; j < shape.r; ++j)
    if (!in_d.count(j)) out.column_order.push_back(j);
  for (std::size_t j = 0; j < shape.r; ++j)
    if (in_d.count(j)) out.column_order.push_back(j);
  std::vector<std::size_t> blocks(sig.Pi.begin(), sig.Pi.end());
  for (std::size_t b = 1; b <= shape.n; ++b)
    if (!sig.Pi.count(b)) blocks.push_back(b);
  for (auto b : blocks) {
    std::size_t first = shape.r + (b - 1) * shape.s;
    for (std::size_t j = first; j < first + shape.s; ++j)
      if (in_d.count(j)) out.column_order.push_back(j);
    for (std::size_t j = first; j < first + shape.s; ++j)
      if (!in_d.count(j)) out.column_order.push_back(j);
    for (std::size_t k = 0; k < shape.t; ++k) out.row_order.push_back((b - 1) * shape.t + k);
  }
  out.matrix = E.select_rows(out.row_order).select_columns(out.column_order);
  out.significant_dim = shape.t * sig.Pi.size();
  return out;
}

bool invertible_blocks_bound_check(const RatMat& E, const TwoStageShape& shape, const std::vector<std::size_t>& D)
{
  if (D.size() != E.rows()) throw std::invalid_argument("invertible_blocks_bound_check: D is not square");
  std::vector<std::size_t> sorted = D;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("invertible_blocks_bound_check: repeated column in D");
  if (rank(E.select_columns(D)) != D.size())
    throw std::invalid_argument("invertible_blocks_bound_check: D is not invertible");
  return signature(E, shape, D).Pi.size() <= shape.r;
}

}  // namespace mixgraver
