// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mixgraver/model.hpp"
#include "mixgraver/structure.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

namespace mixgraver {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
  double budget_seconds = 0;  // advisory; 0 when none
};

struct AcceptanceOptions {
  std::uint64_t seed = 20260415;
  unsigned jobs = 1;
  /// Overrides the 2^(n^2)-1 target in the grid-set check; used by mutation tests.
  std::function<Int(std::size_t)> nsseq_target;
};

/// Criteria 1..10; throws std::out_of_range for other ids.
CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});
std::string format_result(const CriterionResult& r);

/// Seeded generators shared by the acceptance suite and the tests.
using Rng = std::mt19937_64;

/// Integral data, m <= 2, |E| <= 2, n <= 6, at most 10^4 integer slices.
MipInstance random_few_rows_instance(Rng& rng);

struct RandomTwoStage {
  MipInstance instance;
  TwoStageShape shape;
};
/// r, s, t <= 2 and n <= 3 blocks, independent rows.
RandomTwoStage random_two_stage_instance(Rng& rng);

/// Linear objective, fractional b, l, u with denominators up to 4.
MipInstance random_fractional_milp(Rng& rng);

/// Random convex piecewise-linear term with up to two breakpoints in [-3, 3].
PwlConvex random_pwl(Rng& rng);

}  // namespace mixgraver
