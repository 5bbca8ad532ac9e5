// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/model.hpp"

#include <algorithm>

namespace mixgraver {

PwlConvex PwlConvex::linear(const Rat& slope)
{
  PwlConvex f;
  f.slopes = {slope};
  f.anchor_value = 0;
  return f;
}

PwlConvex PwlConvex::make(std::vector<Rat> breakpoints, std::vector<Rat> slopes, Rat anchor_value)
{
  PwlConvex f;
  f.breakpoints = std::move(breakpoints);
  f.slopes = std::move(slopes);
  f.anchor_value = std::move(anchor_value);
  f.validate();
  return f;
}

PwlConvex PwlConvex::penalized_linear(const Rat& w, const Rat& weight, const Rat& lo, const Rat& hi, bool kink_lo,
                                      bool kink_hi)
{
  if (lo > hi) throw std::invalid_argument("penalized_linear: empty interval");
  std::vector<Rat> bps;
  std::vector<Rat> slopes;
  if (kink_lo) {
    bps.push_back(lo);
    slopes.push_back(w - weight);
  }
  if (kink_hi && (!kink_lo || hi != lo)) bps.push_back(hi);
  slopes.push_back(w);
  if (kink_hi) {
    if (kink_lo && hi == lo) slopes.back() = w + weight;
    else slopes.push_back(w + weight);
  }
  Rat dist0 = 0;
  if (kink_lo && 0 < lo) dist0 = lo;
  if (kink_hi && 0 > hi) dist0 = -hi;
  return make(std::move(bps), std::move(slopes), w * 0 + weight * dist0);
}

void PwlConvex::validate() const
{
  if (slopes.size() != breakpoints.size() + 1)
    throw std::invalid_argument("piecewise-linear term needs one more slope than breakpoints");
  for (std::size_t k = 1; k < breakpoints.size(); ++k)
    if (!(breakpoints[k - 1] < breakpoints[k]))
      throw std::invalid_argument("breakpoints must be strictly increasing");
  for (std::size_t k = 1; k < slopes.size(); ++k)
    if (slopes[k] < slopes[k - 1]) throw std::invalid_argument("slopes must be nondecreasing (convexity)");
}

Rat PwlConvex::operator()(const Rat& x) const
{
  // Integrate the slope function from 0 to x.
  Rat acc = anchor_value;
  const std::size_t k = breakpoints.size();
  for (std::size_t p = 0; p <= k; ++p) {
    bool has_lo = p > 0;
    bool has_hi = p < k;
    if (sgn(x) >= 0) {
      Rat a = has_lo && breakpoints[p - 1] > 0 ? breakpoints[p - 1] : Rat(0);
      Rat b = has_hi && breakpoints[p] < x ? breakpoints[p] : x;
      if (b > a) acc += slopes[p] * (b - a);
    } else {
      Rat a = has_lo && breakpoints[p - 1] > x ? breakpoints[p - 1] : x;
      Rat b = has_hi && breakpoints[p] < 0 ? breakpoints[p] : Rat(0);
      if (b > a) acc -= slopes[p] * (b - a);
    }
  }
  return acc;
}

PwlConvex PwlConvex::shifted(const Rat& c) const
{
  PwlConvex g;
  g.slopes = slopes;
  g.breakpoints.reserve(breakpoints.size());
  for (const auto& bp : breakpoints) g.breakpoints.push_back(bp - c);
  g.anchor_value = (*this)(c);
  return g;
}

Rat PwlConvex::min_on(const Rat& lo, const Rat& hi) const
{
  Rat best = std::min((*this)(lo), (*this)(hi));
  for (const auto& bp : breakpoints)
    if (bp > lo && bp < hi) best = std::min(best, (*this)(bp));
  return best;
}

Rat PwlConvex::max_on(const Rat& lo, const Rat& hi) const { return std::max((*this)(lo), (*this)(hi)); }

SeparableObjective SeparableObjective::linear(const RatVec& w)
{
  SeparableObjective o;
  for (const auto& c : w) o.terms.push_back(PwlConvex::linear(c));
  return o;
}

bool SeparableObjective::is_linear() const
{
  return std::all_of(terms.begin(), terms.end(), [](const PwlConvex& f) { return f.is_linear(); });
}

SeparableObjective SeparableObjective::shifted(const RatVec& center) const
{
  if (center.size() != terms.size()) throw std::invalid_argument("shifted: dimension mismatch");
  SeparableObjective o;
  for (std::size_t i = 0; i < terms.size(); ++i) o.terms.push_back(terms[i].shifted(center[i]));
  return o;
}

SeparableObjective SeparableObjective::select(const std::vector<std::size_t>& idx) const
{
  SeparableObjective o;
  for (auto i : idx) o.terms.push_back(terms.at(i));
  return o;
}

void MipInstance::validate() const
{
  using K = InstanceError::Kind;
  const std::size_t n = E.cols();
  if (space.dim() != n) throw InstanceError(K::dimension, "space dimension does not match matrix columns");
  if (b.size() != E.rows()) throw InstanceError(K::dimension, "right-hand side length does not match matrix rows");
  if (l.size() != n || u.size() != n) throw InstanceError(K::dimension, "bound vectors do not match dimension");
  if (objective.dim() != n) throw InstanceError(K::dimension, "objective has wrong number of terms");
  if (!E.is_integral()) throw InstanceError(K::nonintegral_matrix, "constraint matrix must be integral");
  for (std::size_t i = 0; i < n; ++i)
    if (l[i] > u[i]) throw InstanceError(K::bound_order, "lower bound exceeds upper bound at variable " + std::to_string(i + 1));
  for (const auto& f : objective.terms) {
    try {
      f.validate();
    } catch (const std::invalid_argument& e) {
      throw InstanceError(K::objective, e.what());
    }
  }
  if (rank(E) != E.rows()) throw InstanceError(K::dependent_rows, "constraint rows are linearly dependent");
}

std::string to_string(Status s)
{
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
    case Status::cap_exceeded: return "cap_exceeded";
    case Status::internal_error: return "internal_error";
  }
  return "unknown";
}

Rat evaluate(const SeparableObjective& obj, const RatVec& x)
{
  if (obj.dim() != x.size()) throw std::invalid_argument("evaluate: dimension mismatch");
  Rat acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += obj.terms[i](x[i]);
  return acc;
}

bool is_feasible_point(const MipInstance& inst, const RatVec& x)
{
  if (x.size() != inst.dim()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < inst.l[i] || x[i] > inst.u[i]) return false;
    if (inst.space.is_integer(i) && !is_integer(x[i])) return false;
  }
  return inst.E * x == inst.b;
}

bool superadditivity_check(const SeparableObjective& obj, const RatVec& x, const RatVec& y1, const RatVec& y2)
{
  if (x.size() != y1.size() || x.size() != y2.size() || x.size() != obj.dim())
    throw std::invalid_argument("superadditivity_check: dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(y1[i]) * sgn(y2[i]) < 0) throw std::invalid_argument("superadditivity_check: y1 and y2 are not in a common orthant");
  RatVec xy1 = add(x, y1);
  Rat lhs = evaluate(obj, add(xy1, y2)) - evaluate(obj, xy1);
  Rat rhs = evaluate(obj, add(x, y2)) - evaluate(obj, x);
  return lhs >= rhs;
}

bool integer_restriction(const MipInstance& inst, MipInstance& out)
{
  out = inst;
  out.space = MixedSpace{inst.dim(), 0};
  for (std::size_t i = 0; i < inst.dim(); ++i) {
    out.l[i] = Rat(ceil_int(inst.l[i]));
    out.u[i] = Rat(floor_int(inst.u[i]));
    if (out.l[i] > out.u[i]) return false;
  }
  return true;
}

}  // namespace mixgraver
