// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "mixgraver/numerics.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace mixgraver {

/// Convex piecewise-linear function of one variable.
/// slopes[k] applies left of breakpoints[k]; the last slope applies right of the last breakpoint.
struct PwlConvex {
  std::vector<Rat> breakpoints;
  std::vector<Rat> slopes{Rat(0)};
  Rat anchor_value = 0;  // f(0)

  static PwlConvex linear(const Rat& slope);
  /// Validating constructor; throws std::invalid_argument.
  static PwlConvex make(std::vector<Rat> breakpoints, std::vector<Rat> slopes, Rat anchor_value);
  /// w*x + weight*dist(x, [lo, hi]). An interval end gets a breakpoint only when its flag is set;
  /// without it the penalty on that side is dropped.
  static PwlConvex penalized_linear(const Rat& w, const Rat& weight, const Rat& lo, const Rat& hi, bool kink_lo,
                                    bool kink_hi);

  void validate() const;
  bool is_linear() const { return breakpoints.empty(); }
  Rat operator()(const Rat& x) const;
  /// The function y -> f(c + y).
  PwlConvex shifted(const Rat& c) const;
  /// Minimum over [lo, hi]; attained at an end or a breakpoint.
  Rat min_on(const Rat& lo, const Rat& hi) const;
  Rat max_on(const Rat& lo, const Rat& hi) const;
  bool operator==(const PwlConvex&) const = default;
};

struct SeparableObjective {
  std::vector<PwlConvex> terms;

  static SeparableObjective linear(const RatVec& w);
  std::size_t dim() const { return terms.size(); }
  bool is_linear() const;
  SeparableObjective shifted(const RatVec& center) const;
  SeparableObjective select(const std::vector<std::size_t>& idx) const;
  bool operator==(const SeparableObjective&) const = default;
};

class InstanceError : public std::invalid_argument {
 public:
  enum class Kind { dimension, nonintegral_matrix, bound_order, dependent_rows, objective };
  InstanceError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// min f(x) : E x = b, l <= x <= u, x in Z^n_int x R^n_cont.
struct MipInstance {
  MixedSpace space;
  RatMat E;
  RatVec b;
  RatVec l;
  RatVec u;
  SeparableObjective objective;

  /// Throws InstanceError.
  void validate() const;
  std::size_t rows() const { return E.rows(); }
  std::size_t dim() const { return E.cols(); }
  bool operator==(const MipInstance& o) const
  {
    return space == o.space && E == o.E && b == o.b && l == o.l && u == o.u && objective == o.objective;
  }
};

enum class Status { optimal, infeasible, unbounded, cap_exceeded, internal_error };

std::string to_string(Status s);

struct Solution {
  Status status = Status::infeasible;
  RatVec x;
  Rat value = 0;

  bool optimal() const { return status == Status::optimal; }
};

Rat evaluate(const SeparableObjective& obj, const RatVec& x);
bool is_feasible_point(const MipInstance& inst, const RatVec& x);
/// f(x+y1+y2) - f(x+y1) >= f(x+y2) - f(x); throws std::invalid_argument unless y1, y2 share an orthant.
bool superadditivity_check(const SeparableObjective& obj, const RatVec& x, const RatVec& y1, const RatVec& y2);

/// Same instance with every variable declared integer and bounds rounded inward.
/// Returns false when some rounded box is empty.
bool integer_restriction(const MipInstance& inst, MipInstance& out);

}  // namespace mixgraver
