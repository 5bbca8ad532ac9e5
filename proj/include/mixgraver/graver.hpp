// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mixgraver/numerics.hpp"
#include "mixgraver/structure.hpp"

#include <optional>
#include <vector>

namespace mixgraver {

struct GraverSet {
  std::vector<RatVec> elements;  // sorted by 1-norm, then lexicographically
  Rat cap_used = 0;
  bool complete = false;
};

/// Support-minimal coprime integral kernel vectors, both signs, sorted.
std::vector<RatVec> circuits(const RatMat& E);

/// All conformally minimal nonzero integer kernel vectors with 1-norm at most cap.
/// `complete` is set when cap reaches (2 m Delta + 1)^m, which bounds every Graver element.
GraverSet integer_graver(const RatMat& E, const Rat& cap);

/// Membership in the mixed Graver basis; columns follow `space` (integer columns first).
/// Throws std::invalid_argument unless E g = 0 with integral integer coordinates.
bool mixed_graver_member(const RatMat& E, const MixedSpace& space, const RatVec& g);

struct GraverCheck {
  bool member = false;
  /// Nonzero mixed kernel vector strictly below g, when the search found one.
  std::optional<RatVec> witness;
};
GraverCheck mixed_graver_check(const RatMat& E, const MixedSpace& space, const RatVec& g);

struct NsseqPair {
  std::size_t n = 0;
  std::vector<Int> S, T;
  Int V;
};

/// Row and column sets of the n x n grid encoded as bit masks.
NsseqPair nsseq_sets(std::size_t n);
/// Sum S = sum T = V.
bool nsseq_sums_ok(const NsseqPair& p);
/// Exhaustive: no S' of S and T' of T with 0 < |S'| + |T'| < 2n have equal sums.
bool nsseq_subsets_distinct(const NsseqPair& p);

/// Lower-bound witness on an n-fold matrix with identity top blocks and (1 1 1) diagonal blocks.
/// Bricks carry (integer, continuous, continuous) columns.
struct NFoldWitness {
  RatMat layout_E;  // brick-by-brick column order
  RatVec layout_g;
  NFoldShape shape;  // column_order maps layout positions to the integer-first columns below
  RatMat E;
  MixedSpace space;
  RatVec g;
};

/// Throws std::invalid_argument for odd or zero n.
NFoldWitness nfold_lb_instance(std::size_t n);

}  // namespace mixgraver
