// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mixgraver/model.hpp"
#include "mixgraver/numerics.hpp"

#include <memory>
#include <optional>
#include <utility>

namespace mixgraver {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  RatVec x;
  Rat value = 0;
};

/// min c x : A x = b, l <= x <= u. Bounded primal simplex; the result is a basic solution.
LpResult lp_solve(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u, const RatVec& c);

/// Linear program with every piecewise-linear term replaced by its epigraph.
struct EpigraphLift {
  RatMat A;
  RatVec b, l, u, c;
  Rat constant = 0;
  std::size_t n_original = 0;
};

EpigraphLift epigraph_lift(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u,
                           const SeparableObjective& obj);

LpResult lp_pwl_solve(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u, const SeparableObjective& obj);

/// Piecewise-linear program kept in tableau form, so that new column bounds
/// re-optimize from the previous basis with the dual simplex method.
class WarmLp {
 public:
  WarmLp(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u, const SeparableObjective& obj);
  WarmLp(const WarmLp& other);
  WarmLp& operator=(const WarmLp& other);
  WarmLp(WarmLp&&) noexcept;
  WarmLp& operator=(WarmLp&&) noexcept;
  ~WarmLp();

  /// Replaces all column bounds and re-optimizes. The bounds must lie inside the constructor's box.
  void set_bounds(const RatVec& l, const RatVec& u);
  LpStatus status() const;
  LpResult result() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Exact (min, max) of coordinate i over {A x = b, l <= x <= u}; nullopt when empty.
std::optional<std::pair<Rat, Rat>> coordinate_range(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u,
                                                     std::size_t i);

}  // namespace mixgraver
