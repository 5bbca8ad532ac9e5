// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mixgraver/model.hpp"
#include "mixgraver/structure.hpp"

#include <cstdint>
#include <optional>

namespace mixgraver {

/// Number of integer slices (product of integer box sizes); zero when some box is empty.
Int slice_count(const MipInstance& inst);

/// Enumerates every integer slice and solves its continuous part exactly.
/// Ties go to the lexicographically smallest integer part. `jobs` threads split the slices.
Solution oracle_solve(const MipInstance& inst, std::uint64_t enum_cap, unsigned jobs = 1);

/// Exact depth-first branch and bound on the first fractional integer variable.
/// Beyond `node_cap` nodes it restarts as oracle_solve under `enum_cap`.
Solution branch_and_bound_solve(const MipInstance& inst, std::uint64_t node_cap, std::uint64_t enum_cap);

/// Pure integer program by dynamic programming over prefix residuals E (x - l), kept inside [-P, P]^m.
/// Reports cap_exceeded when no state reaches the right-hand side and some state was cut off.
Solution integer_solve_few_rows(const MipInstance& inst, const Rat& P);

/// (2 m^2 Delta + 1)^(2m+2) with m and Delta clamped to at least 1.
Rat default_few_rows_proximity(const MipInstance& inst);

struct FewRowsOptions {
  std::optional<Rat> proximity;
  bool certify = false;
  std::uint64_t enum_cap = 1000000;
};

/// Integer optimum first, then a mixed dynamic program over a box of radius P around it.
/// With `certify`, a disagreement with oracle_solve is reported as cap_exceeded.
Solution solve_few_rows(const MipInstance& inst, const FewRowsOptions& opts = {});

/// Program in y = x - center: E y = b - E center, l_hat <= y <= u_hat, objective f(center + y).
struct AuxProgram {
  MipInstance base;
  RatVec center;
  std::optional<Rat> cap;  // no clipping when empty
  RatVec l_hat, u_hat;
  MipInstance program;
  RatVec lift(const RatVec& y) const { return add(center, y); }
};

/// Throws std::invalid_argument unless `center` is integral and feasible for `inst`.
AuxProgram build_aux(const MipInstance& inst, const RatVec& center, const Rat& P);

struct TwoStageOptions {
  std::optional<Rat> proximity;  // defaults to the largest bound width
  bool certify = false;
  std::uint64_t enum_cap = 1000000;
  std::uint64_t node_cap = 200000;
  std::uint64_t candidate_cap = 2000000;
};

/// Integer optimum by branch and bound, then enumeration of global parts of the auxiliary program;
/// for each global part the blocks decouple into few-row programs.
/// With `certify`, a disagreement with oracle_solve is reported as internal_error.
Solution two_stage_solve(const MipInstance& inst, const TwoStageShape& shape, const TwoStageOptions& opts = {});

enum class NormKind { one, inf };

Rat proximity_distance(const RatVec& z, const RatVec& x, NormKind p);

/// Smallest ||z - x||_1 over mixed optima x (points with value `optimum`), by one LP per integer slice.
/// Empty when no feasible point reaches `optimum`.
std::optional<Rat> closest_optimum_distance(const MipInstance& inst, const RatVec& z, const Rat& optimum,
                                            std::uint64_t enum_cap);

}  // namespace mixgraver
