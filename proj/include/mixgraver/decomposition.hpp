// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mixgraver/numerics.hpp"

#include <vector>

namespace mixgraver {

/// x = fat + sum(integer_parts), every part conformal to x and in the kernel.
struct OneFatDecomposition {
  RatVec fat;
  std::vector<RatVec> integer_parts;
};

struct NormBounds {
  Rat basic_1norm;
  Rat improved_g1;
  Rat improved_wt1;
  Rat corollary_wt1;
};

/// Permutation of a zero-sum sequence whose prefix sums stay within d * max ||v||_inf.
/// Throws std::invalid_argument when the vectors do not sum to zero.
std::vector<std::size_t> steinitz_reorder(const std::vector<RatVec>& vectors, std::size_t d);
bool steinitz_prefix_ok(const std::vector<RatVec>& vectors, const std::vector<std::size_t>& order, std::size_t d);

/// Splits alpha into pieces beta^j, each with an integral combination of xs and 1-norm at most d.
/// Throws std::invalid_argument when sum alpha_i x^i is not integral.
std::vector<RatVec> pack_coefficients(const std::vector<RatVec>& xs, const RatVec& alpha, std::size_t d);
/// The five packing postconditions, checked independently of the construction.
bool packing_postconditions_ok(const std::vector<RatVec>& xs, const RatVec& alpha, std::size_t d,
                               const std::vector<RatVec>& betas);

/// Signed column copies for the rounded parts of g, followed by the remainder vector of the fractional parts
/// grouped per distinct column. Throws std::invalid_argument unless E g = 0.
std::vector<RatVec> build_graver_sequence(const RatMat& E, const RatVec& g);

/// Throws std::invalid_argument unless E x = 0 with integral integer coordinates.
OneFatDecomposition one_fat_decompose(const RatMat& E, const MixedSpace& space, const RatVec& x);

NormBounds norm_bounds(std::size_t m, const Rat& delta);

/// Integer power of a rational.
Rat rat_pow(const Rat& base, unsigned long exp);

}  // namespace mixgraver
