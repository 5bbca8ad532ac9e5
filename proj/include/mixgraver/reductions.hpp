// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mixgraver/model.hpp"
#include "mixgraver/structure.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace mixgraver {

/// Everything needed to map a solution of the integral-data program back to the original.
struct MilpToMipCertificate {
  std::size_t n_original = 0;
  std::size_t n_slack = 0;
  Rat penalty_weight;
  RatVec weights;                 // original linear objective
  RatVec lower, upper;            // original bounds
  RatVec slack_target;            // -{b}: each slack must end here
};

struct MilpToMip {
  MipInstance instance;
  MilpToMipCertificate certificate;
};

/// Integral bounds and right-hand side: (E I), b rounded toward zero, bound violations priced by a penalty weight.
/// Throws std::invalid_argument for a nonlinear objective.
MilpToMip milp_to_mip(const MipInstance& inst);

/// Original-space solution; infeasible when any penalty is active at the reduced optimum.
Solution decode(const MilpToMipCertificate& cert, const Solution& reduced);

struct PartitionReduction {
  MipInstance instance;
  NFoldShape shape;
  RatVec a;
  std::vector<std::size_t> first_choice_columns;  // instance column of x1 in each brick
};

/// Bricks (x1, x2, y1, y2, slack1, slack2) with x binary and the rest in [0, 1].
PartitionReduction partition_to_nfold(const std::vector<Rat>& a);

/// 1-indexed elements on the first side; empty when the solution is not optimal.
std::optional<std::vector<std::size_t>> decode_partition(const PartitionReduction& red, const Solution& sol);

struct SubsetSumReduction {
  MipInstance instance;
  TwoStageShape shape;
  std::vector<Int> A;
  std::size_t k = 0;
  Int target;
  Rat threshold;
  std::vector<std::vector<std::size_t>> indicator_columns;  // [element][slot]: instance column of the r indicator
  std::vector<std::vector<std::size_t>> choice_columns;     // [element][slot]: instance column of x, slots 0..k
};

/// Globals are the k slot values; each element owns one block.
/// Throws std::invalid_argument unless A is distinct and positive and 1 <= k <= |A|.
SubsetSumReduction subsetsum_to_twostage(const std::vector<Int>& A, std::size_t k, const Int& target);

struct SubsetSumAnswer {
  bool yes = false;
  std::vector<Int> chosen;  // elements whose indicator is zero
};

SubsetSumAnswer decode_subsetsum(const SubsetSumReduction& red, const Solution& sol);

/// Line-oriented "key: value" description of a reduction, parsed back by parse_sidecar.
std::string write_sidecar(const MilpToMipCertificate& cert);
std::string write_sidecar(const PartitionReduction& red);
std::string write_sidecar(const SubsetSumReduction& red);
std::map<std::string, std::string> parse_sidecar(const std::string& text);

}  // namespace mixgraver
