// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/solvers.hpp"

#include "mixgraver/decomposition.hpp"
#include "mixgraver/lp.hpp"
#include "solver_detail.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <stdexcept>
#include <thread>

namespace mixgraver {

namespace detail {

void check_dims(const MipInstance& inst)
{
  const std::size_t n = inst.E.cols();
  if (inst.space.dim() != n || inst.b.size() != inst.E.rows() || inst.l.size() != n || inst.u.size() != n ||
      inst.objective.dim() != n)
    throw std::invalid_argument("instance dimensions are inconsistent");
}

bool integer_box(const MipInstance& inst, std::vector<Int>& lo, std::vector<Int>& hi)
{
  lo.assign(inst.space.n_int, Int(0));
  hi.assign(inst.space.n_int, Int(0));
  for (std::size_t j = 0; j < inst.space.n_int; ++j) {
    lo[j] = ceil_int(inst.l[j]);
    hi[j] = floor_int(inst.u[j]);
    if (lo[j] > hi[j]) return false;
  }
  return true;
}

SliceSolver::SliceSolver(const MipInstance& inst) : inst_(inst), ni_(inst.space.n_int), nc_(inst.space.n_cont)
{
  std::vector<std::size_t> ic, cc;
  for (std::size_t j = 0; j < ni_; ++j) ic.push_back(j);
  for (std::size_t j = ni_; j < ni_ + nc_; ++j) cc.push_back(j);
  Ez_ = inst.E.select_columns(ic);
  Er_ = inst.E.select_columns(cc);
  obj_r_ = inst.objective.select(cc);
  lr_ = RatVec(inst.l.begin() + static_cast<long>(ni_), inst.l.end());
  ur_ = RatVec(inst.u.begin() + static_cast<long>(ni_), inst.u.end());
  const std::size_t m = inst.E.rows();
  range_lo_ = RatVec(m, Rat(0));
  range_hi_ = RatVec(m, Rat(0));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < nc_; ++j) {
      const Rat& a = Er_(r, j);
      if (sgn(a) > 0) {
        range_lo_[r] += a * lr_[j];
        range_hi_[r] += a * ur_[j];
      } else if (sgn(a) < 0) {
        range_lo_[r] += a * ur_[j];
        range_hi_[r] += a * lr_[j];
      }
    }
}

bool SliceSolver::residual(const std::vector<Int>& v, RatVec& rhs) const
{
  const std::size_t m = inst_.E.rows();
  rhs = inst_.b;
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < ni_; ++j)
      if (sgn(Ez_(r, j)) != 0 && sgn(v[j]) != 0) rhs[r] -= Ez_(r, j) * v[j];
    if (rhs[r] < range_lo_[r] || rhs[r] > range_hi_[r]) return false;
  }
  return true;
}

Rat SliceSolver::integer_value(const std::vector<Int>& v) const
{
  Rat s = 0;
  for (std::size_t j = 0; j < ni_; ++j) s += inst_.objective.terms[j](Rat(v[j]));
  return s;
}

std::optional<std::pair<Rat, RatVec>> SliceSolver::solve(const std::vector<Int>& v) const
{
  RatVec rhs;
  if (!residual(v, rhs)) return std::nullopt;
  RatVec x(ni_);
  for (std::size_t j = 0; j < ni_; ++j) x[j] = v[j];
  Rat value = integer_value(v);
  if (nc_ > 0) {
    LpResult r = lp_pwl_solve(Er_, rhs, lr_, ur_, obj_r_);
    if (r.status != LpStatus::optimal) return std::nullopt;
    value += r.value;
    x.insert(x.end(), r.x.begin(), r.x.end());
  }
  return std::make_pair(value, x);
}

namespace {

long to_long(const Rat& v)
{
  if (!is_integer(v) || !v.get_num().fits_slong_p()) throw std::overflow_error("value does not fit a machine integer");
  return v.get_num().get_si();
}

long to_long(const Int& v)
{
  if (!v.fits_slong_p()) throw std::overflow_error("value does not fit a machine integer");
  return v.get_si();
}

struct DpEntry {
  Rat value;
  std::vector<long> prefix;
};

}  // namespace

DpOutcome mixed_dp(const MipInstance& prog, bool shift_by_lower, const std::optional<Rat>& clip)
{
  DpOutcome out;
  const std::size_t ni = prog.space.n_int, nc = prog.space.n_cont, m = prog.E.rows();
  std::vector<Int> lo_i, hi_i;
  if (!integer_box(prog, lo_i, hi_i)) return out;
  SliceSolver ss(prog);
  std::vector<long> lo(ni), hi(ni), shift(ni, 0);
  for (std::size_t j = 0; j < ni; ++j) {
    lo[j] = to_long(lo_i[j]);
    hi[j] = to_long(hi_i[j]);
    if (shift_by_lower) shift[j] = lo[j];
  }
  std::vector<std::vector<long>> col(ni, std::vector<long>(m));
  for (std::size_t j = 0; j < ni; ++j)
    for (std::size_t r = 0; r < m; ++r) col[j][r] = to_long(prog.E(r, j));
  RatVec base = prog.b;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j < ni; ++j) base[r] -= Rat(col[j][r] * shift[j]);
  // Range of what stages i.. can still add, continuous part included.
  std::vector<RatVec> suf_lo(ni + 1, ss.range_lo()), suf_hi(ni + 1, ss.range_hi());
  for (std::size_t j = ni; j-- > 0;) {
    suf_lo[j] = suf_lo[j + 1];
    suf_hi[j] = suf_hi[j + 1];
    for (std::size_t r = 0; r < m; ++r) {
      long a = col[j][r] * (lo[j] - shift[j]), b = col[j][r] * (hi[j] - shift[j]);
      suf_lo[j][r] += std::min(a, b);
      suf_hi[j][r] += std::max(a, b);
    }
  }
  auto viable = [&](const std::vector<long>& s, std::size_t stage) {
    for (std::size_t r = 0; r < m; ++r) {
      Rat need = base[r] - s[r];
      if (need < suf_lo[stage][r] || need > suf_hi[stage][r]) return false;
    }
    return true;
  };
  auto inside = [&](const std::vector<long>& s) {
    if (!clip) return true;
    for (auto v : s)
      if (abs(Rat(v)) > *clip) return false;
    return true;
  };
  std::map<std::vector<long>, DpEntry> cur;
  std::vector<long> origin(m, 0);
  if (viable(origin, 0)) cur[origin] = DpEntry{Rat(0), {}};
  for (std::size_t j = 0; j < ni && !cur.empty(); ++j) {
    std::map<std::vector<long>, DpEntry> next;
    const PwlConvex& f = prog.objective.terms[j];
    for (long val = lo[j]; val <= hi[j]; ++val) {
      Rat fv = f(Rat(val));
      long d = val - shift[j];
      for (const auto& [state, entry] : cur) {
        std::vector<long> ns = state;
        for (std::size_t r = 0; r < m; ++r) ns[r] += col[j][r] * d;
        if (!inside(ns)) {
          out.clipped = true;
          continue;
        }
        if (!viable(ns, j + 1)) continue;
        Rat value = entry.value + fv;
        auto it = next.find(ns);
        if (it == next.end()) {
          DpEntry e{value, entry.prefix};
          e.prefix.push_back(val);
          next.emplace(std::move(ns), std::move(e));
        } else if (value < it->second.value) {
          it->second.value = value;
          it->second.prefix = entry.prefix;
          it->second.prefix.push_back(val);
        } else if (value == it->second.value) {
          std::vector<long> p = entry.prefix;
          p.push_back(val);
          if (p < it->second.prefix) it->second.prefix = std::move(p);
        }
      }
    }
    out.states += next.size();
    cur = std::move(next);
  }
  if (ni == 0) out.states = cur.size();
  for (const auto& [state, entry] : cur) {
    RatVec x(ni);
    for (std::size_t j = 0; j < ni; ++j) x[j] = entry.prefix[j];
    Rat value = entry.value;
    if (nc > 0) {
      RatVec rhs(m);
      for (std::size_t r = 0; r < m; ++r) rhs[r] = base[r] - state[r];
      LpResult lr = lp_pwl_solve(ss.Er(), rhs, ss.lr(), ss.ur(), ss.obj_r());
      if (lr.status != LpStatus::optimal) continue;
      value += lr.value;
      x.insert(x.end(), lr.x.begin(), lr.x.end());
    } else {
      bool zero = true;
      for (std::size_t r = 0; r < m; ++r)
        if (base[r] != Rat(state[r])) zero = false;
      if (!zero) continue;
    }
    if (out.status != Status::optimal || value < out.value || (value == out.value && x < out.x)) {
      out.status = Status::optimal;
      out.value = value;
      out.x = std::move(x);
    }
  }
  return out;
}

}  // namespace detail

using detail::check_dims;
using detail::integer_box;
using detail::SliceSolver;

Int slice_count(const MipInstance& inst)
{
  std::vector<Int> lo, hi;
  if (!integer_box(inst, lo, hi)) return 0;
  Int count = 1;
  for (std::size_t j = 0; j < lo.size(); ++j) count *= hi[j] - lo[j] + 1;
  return count;
}

Solution oracle_solve(const MipInstance& inst, std::uint64_t enum_cap, unsigned jobs)
{
  check_dims(inst);
  Solution sol;
  std::vector<Int> lo, hi;
  if (!integer_box(inst, lo, hi)) return sol;
  Int count = slice_count(inst);
  if (count > Int(static_cast<unsigned long>(enum_cap))) {
    sol.status = Status::cap_exceeded;
    return sol;
  }
  const std::uint64_t total = count.get_ui();
  const std::size_t ni = inst.space.n_int;
  SliceSolver ss(inst);
  struct Best {
    bool found = false;
    Rat value;
    RatVec x;
  };
  auto run = [&](std::uint64_t begin, std::uint64_t end, Best& best) {
    std::vector<Int> v(ni);
    std::uint64_t idx = begin;
    for (std::size_t j = ni; j-- > 0;) {
      Int radix = hi[j] - lo[j] + 1;
      std::uint64_t rdx = radix.get_ui();
      v[j] = lo[j] + Int(static_cast<unsigned long>(idx % rdx));
      idx /= rdx;
    }
    for (std::uint64_t k = begin; k < end; ++k) {
      auto res = ss.solve(v);
      if (res && (!best.found || res->first < best.value)) {
        best.found = true;
        best.value = res->first;
        best.x = std::move(res->second);
      }
      for (std::size_t j = ni; j-- > 0;) {
        if (++v[j] <= hi[j]) break;
        v[j] = lo[j];
      }
    }
  };
  std::uint64_t workers = std::max<std::uint64_t>(1, std::min<std::uint64_t>(jobs, total));
  std::vector<Best> parts(workers);
  if (workers == 1) {
    run(0, total, parts[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      std::uint64_t begin = total * w / workers, end = total * (w + 1) / workers;
      pool.emplace_back([&, w, begin, end] {
        try {
          run(begin, end, parts[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (auto& p : parts)
    if (p.found && (sol.status != Status::optimal || p.value < sol.value)) {
      sol.status = Status::optimal;
      sol.value = p.value;
      sol.x = p.x;
    }
  return sol;
}

namespace {

// True when every point with integral integer columns has an integral objective value.
bool integral_objective(const MipInstance& inst)
{
  Rat constant = 0;
  for (std::size_t j = 0; j < inst.dim(); ++j) {
    const PwlConvex& f = inst.objective.terms[j];
    constant += f.anchor_value;
    if (j >= inst.space.n_int) {
      if (!f.is_linear() || f.slopes[0] != 0) return false;
      continue;
    }
    for (const auto& b : f.breakpoints)
      if (!is_integer(b)) return false;
    for (const auto& s : f.slopes)
      if (!is_integer(s)) return false;
  }
  return is_integer(constant);
}

}  // namespace

Solution branch_and_bound_solve(const MipInstance& inst, std::uint64_t node_cap, std::uint64_t enum_cap)
{
  check_dims(inst);
  Solution best;
  const std::size_t ni = inst.space.n_int;
  const bool integral = integral_objective(inst);
  RatVec l0 = inst.l, u0 = inst.u;
  for (std::size_t j = 0; j < ni; ++j) {
    l0[j] = Rat(ceil_int(l0[j]));
    u0[j] = Rat(floor_int(u0[j]));
    if (l0[j] > u0[j]) return best;
  }
  auto pruned = [&](const Rat& bound) {
    if (!best.optimal()) return false;
    return integral ? Rat(ceil_int(bound)) >= best.value : bound >= best.value;
  };
  // One tableau serves every node; each node re-optimizes from wherever the previous one ended.
  WarmLp lp(inst.E, inst.b, l0, u0, inst.objective);
  std::vector<std::pair<RatVec, RatVec>> stack{{l0, u0}};
  std::uint64_t nodes = 0;
  while (!stack.empty()) {
    if (++nodes > node_cap) return oracle_solve(inst, enum_cap);
    auto [l, u] = std::move(stack.back());
    stack.pop_back();
    lp.set_bounds(l, u);
    if (lp.status() != LpStatus::optimal) continue;
    LpResult r = lp.result();
    if (pruned(r.value)) continue;
    // Most fractional column.
    std::size_t branch = ni;
    Rat spread = 0;
    for (std::size_t j = 0; j < ni; ++j) {
      Rat frac = r.x[j] - Rat(floor_int(r.x[j]));
      Rat closeness = std::min(frac, Rat(1 - frac));
      if (closeness > spread) {
        spread = closeness;
        branch = j;
      }
    }
    if (branch == ni) {
      best.status = Status::optimal;
      best.value = r.value;
      best.x = r.x;
      continue;
    }
    RatVec up_l = l, down_u = u;
    up_l[branch] = Rat(ceil_int(r.x[branch]));
    down_u[branch] = Rat(floor_int(r.x[branch]));
    if (r.x[branch] - Rat(floor_int(r.x[branch])) > Rat(1, 2)) {
      stack.emplace_back(l, down_u);
      stack.emplace_back(up_l, u);
    } else {
      stack.emplace_back(up_l, u);
      stack.emplace_back(l, down_u);
    }
  }
  return best;
}

Solution integer_solve_few_rows(const MipInstance& inst, const Rat& P)
{
  check_dims(inst);
  if (inst.space.n_cont != 0) throw std::invalid_argument("integer_solve_few_rows: instance has continuous columns");
  detail::DpOutcome out = detail::mixed_dp(inst, true, P);
  Solution sol;
  sol.status = out.status;
  if (out.status == Status::optimal) {
    sol.x = out.x;
    sol.value = evaluate(inst.objective, out.x);
  } else if (out.clipped) {
    sol.status = Status::cap_exceeded;
  }
  return sol;
}

Rat default_few_rows_proximity(const MipInstance& inst)
{
  Rat delta = std::max(inst.E.max_abs(), Rat(1));
  return norm_bounds(std::max<std::size_t>(inst.rows(), 1), delta).improved_wt1;
}

namespace {

// Radius that no prefix residual E (x - l) over the integer box can leave.
Rat unclipped_radius(const MipInstance& inst)
{
  Rat best = 1;
  for (std::size_t r = 0; r < inst.rows(); ++r) {
    Rat s = 0;
    for (std::size_t j = 0; j < inst.dim(); ++j) s += abs(inst.E(r, j)) * (inst.u[j] - inst.l[j]);
    best = std::max(best, s);
  }
  return best;
}

}  // namespace

Solution solve_few_rows(const MipInstance& inst, const FewRowsOptions& opts)
{
  check_dims(inst);
  const Rat P = opts.proximity ? *opts.proximity : default_few_rows_proximity(inst);
  if (P < 0) throw std::invalid_argument("solve_few_rows: proximity must be nonnegative");
  MipInstance restricted;
  Solution integer;
  if (integer_restriction(inst, restricted)) integer = integer_solve_few_rows(restricted, unclipped_radius(restricted));
  detail::DpOutcome out;
  RatVec center = zeros(inst.dim());
  if (integer.optimal()) {
    AuxProgram aux = build_aux(inst, integer.x, P);
    Rat delta = std::max(inst.E.max_abs(), Rat(1));
    out = detail::mixed_dp(aux.program, false, delta * P);
    center = integer.x;
  } else if (integer.status == Status::infeasible) {
    out = detail::mixed_dp(inst, false, std::nullopt);
  } else {
    Solution bad;
    bad.status = Status::internal_error;
    return bad;
  }
  Solution sol;
  sol.status = out.status;
  if (out.status == Status::optimal) {
    sol.x = add(center, out.x);
    sol.value = evaluate(inst.objective, sol.x);
  }
  if (opts.certify && slice_count(inst) <= Int(static_cast<unsigned long>(opts.enum_cap))) {
    Solution ref = oracle_solve(inst, opts.enum_cap);
    if (ref.status != sol.status || (ref.optimal() && ref.value != sol.value)) {
      Solution bad;
      bad.status = Status::cap_exceeded;
      return bad;
    }
  }
  return sol;
}

AuxProgram build_aux(const MipInstance& inst, const RatVec& center, const Rat& P)
{
  check_dims(inst);
  if (center.size() != inst.dim() || !is_integral(center) || !is_feasible_point(inst, center))
    throw std::invalid_argument("build_aux: center is not an integral feasible point");
  if (P < 0) throw std::invalid_argument("build_aux: cap must be nonnegative");
  AuxProgram aux;
  aux.base = inst;
  aux.center = center;
  aux.cap = P;
  aux.l_hat = sub(inst.l, center);
  aux.u_hat = sub(inst.u, center);
  for (std::size_t j = 0; j < inst.dim(); ++j) {
    aux.l_hat[j] = std::max(aux.l_hat[j], Rat(-P));
    aux.u_hat[j] = std::min(aux.u_hat[j], P);
  }
  aux.program = inst;
  aux.program.b = sub(inst.b, inst.E * center);
  aux.program.l = aux.l_hat;
  aux.program.u = aux.u_hat;
  aux.program.objective = inst.objective.shifted(center);
  return aux;
}

Rat proximity_distance(const RatVec& z, const RatVec& x, NormKind p)
{
  RatVec d = sub(z, x);
  return p == NormKind::one ? norm1(d) : norm_inf(d);
}

std::optional<Rat> closest_optimum_distance(const MipInstance& inst, const RatVec& z, const Rat& optimum,
                                            std::uint64_t enum_cap)
{
  check_dims(inst);
  if (z.size() != inst.dim()) throw std::invalid_argument("closest_optimum_distance: dimension mismatch");
  std::vector<Int> lo, hi;
  if (!integer_box(inst, lo, hi)) return std::nullopt;
  if (slice_count(inst) > Int(static_cast<unsigned long>(enum_cap)))
    throw std::length_error("closest_optimum_distance: too many slices");
  const std::size_t ni = inst.space.n_int, nc = inst.space.n_cont;
  SliceSolver ss(inst);
  // Lowest continuous objective over the box, ignoring the rows.
  Rat cont_floor = 0;
  for (std::size_t j = 0; j < nc; ++j) cont_floor += ss.obj_r().terms[j].min_on(ss.lr()[j], ss.ur()[j]);
  std::optional<Rat> best;
  std::vector<Int> v = lo;
  for (;;) {
    Rat int_dist = 0;
    for (std::size_t j = 0; j < ni; ++j) int_dist += abs(Rat(v[j]) - z[j]);
    RatVec rhs;
    Rat fint = ss.integer_value(v);
    if ((!best || int_dist < *best) && fint + cont_floor <= optimum && ss.residual(v, rhs)) {
      if (nc == 0) {
        if (is_zero(rhs) && fint <= optimum) best = int_dist;
      } else {
        EpigraphLift L = epigraph_lift(ss.Er(), rhs, ss.lr(), ss.ur(), ss.obj_r());
        const std::size_t rows = L.A.rows(), cols = L.A.cols();
        // Columns: lifted program, then positive and negative deviations, then the objective slack.
        RatMat A(rows + 1 + nc, cols + 2 * nc + 1);
        RatVec b(rows + 1 + nc), l(cols + 2 * nc + 1), u(cols + 2 * nc + 1), c(cols + 2 * nc + 1, Rat(0));
        for (std::size_t i = 0; i < rows; ++i) {
          for (std::size_t j = 0; j < cols; ++j) A(i, j) = L.A(i, j);
          b[i] = L.b[i];
        }
        for (std::size_t j = 0; j < cols; ++j) {
          l[j] = L.l[j];
          u[j] = L.u[j];
        }
        Rat budget = optimum - fint - L.constant, lowest = 0;
        for (std::size_t j = 0; j < cols; ++j) {
          A(rows, j) = L.c[j];
          lowest += std::min(L.c[j] * L.l[j], L.c[j] * L.u[j]);
        }
        const std::size_t slack = cols + 2 * nc;
        A(rows, slack) = 1;
        b[rows] = budget;
        l[slack] = 0;
        u[slack] = std::max(Rat(0), Rat(budget - lowest));
        for (std::size_t j = 0; j < nc; ++j) {
          const Rat& target = z[ni + j];
          std::size_t pos = cols + j, neg = cols + nc + j, row = rows + 1 + j;
          A(row, j) = 1;
          A(row, pos) = -1;
          A(row, neg) = 1;
          b[row] = target;
          Rat width = std::max(abs(ss.ur()[j] - target), abs(ss.lr()[j] - target));
          l[pos] = l[neg] = 0;
          u[pos] = u[neg] = width;
          c[pos] = c[neg] = 1;
        }
        LpResult r = lp_solve(A, b, l, u, c);
        if (r.status == LpStatus::optimal) {
          Rat d = int_dist + r.value;
          if (!best || d < *best) best = d;
        }
      }
    }
    bool done = true;
    for (std::size_t j = ni; j-- > 0;) {
      if (++v[j] <= hi[j]) {
        done = false;
        break;
      }
      v[j] = lo[j];
    }
    if (done) break;
  }
  return best;
}

}  // namespace mixgraver
