// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mixgraver/model.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace mixgraver::detail {

void check_dims(const MipInstance& inst);

/// Integer box [ceil l, floor u] of the integer columns; false when empty.
bool integer_box(const MipInstance& inst, std::vector<Int>& lo, std::vector<Int>& hi);

/// Continuous part of an instance once the integer columns are fixed.
class SliceSolver {
 public:
  explicit SliceSolver(const MipInstance& inst);

  /// b - E_int v; false when the continuous box cannot reach it.
  bool residual(const std::vector<Int>& v, RatVec& rhs) const;
  Rat integer_value(const std::vector<Int>& v) const;
  /// Optimal value and point of the slice, empty when infeasible.
  std::optional<std::pair<Rat, RatVec>> solve(const std::vector<Int>& v) const;

  const RatMat& Er() const { return Er_; }
  const RatVec& lr() const { return lr_; }
  const RatVec& ur() const { return ur_; }
  const SeparableObjective& obj_r() const { return obj_r_; }
  const RatVec& range_lo() const { return range_lo_; }
  const RatVec& range_hi() const { return range_hi_; }

 private:
  const MipInstance& inst_;
  std::size_t ni_, nc_;
  RatMat Ez_, Er_;
  SeparableObjective obj_r_;
  RatVec lr_, ur_, range_lo_, range_hi_;
};

struct DpOutcome {
  Status status = Status::infeasible;
  RatVec x;
  Rat value = 0;
  bool clipped = false;
  std::size_t states = 0;
};

/// Stages over the integer columns with states E_int (x - shift), cut to [-clip, clip]^m when given;
/// the last stage solves the continuous part per state. Ties go to the lexicographically smallest x.
DpOutcome mixed_dp(const MipInstance& prog, bool shift_by_lower, const std::optional<Rat>& clip);

}  // namespace mixgraver::detail
