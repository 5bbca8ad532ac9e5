// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/lp.hpp"

#include <memory>
#include <stdexcept>

namespace mixgraver {

namespace {

// Dense tableau over structural columns followed by one artificial column per row.
class BoundedSimplex {
 public:
  BoundedSimplex(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u)
      : m_(A.rows()), n_(A.cols()), N_(A.cols() + A.rows()), active_(N_), T_(m_ * N_), x_(N_), lo_(N_), hi_(N_),
        d_(N_), basis_(m_), pos_(N_, -1)
  {
    for (std::size_t j = 0; j < n_; ++j) {
      lo_[j] = l[j];
      hi_[j] = u[j];
      x_[j] = l[j];
    }
    RatVec resid = b;
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(A(i, j)) != 0) resid[i] -= A(i, j) * x_[j];
    Rat total = 1;
    for (std::size_t i = 0; i < m_; ++i) total += abs(resid[i]);
    for (std::size_t i = 0; i < m_; ++i) {
      bool neg = sgn(resid[i]) < 0;
      for (std::size_t j = 0; j < n_; ++j)
        if (sgn(A(i, j)) != 0) at(i, j) = neg ? Rat(-A(i, j)) : A(i, j);
      at(i, n_ + i) = 1;
      std::size_t a = n_ + i;
      lo_[a] = 0;
      hi_[a] = total;
      x_[a] = abs(resid[i]);
      basis_[i] = a;
      pos_[a] = static_cast<long>(i);
    }
  }

  bool phase_one()
  {
    RatVec cost(N_, Rat(0));
    for (std::size_t i = 0; i < m_; ++i) cost[n_ + i] = 1;
    set_cost(cost);
    iterate();
    for (std::size_t i = 0; i < m_; ++i)
      if (sgn(x_[n_ + i]) != 0) return false;
    // Pivot remaining artificials out where possible; rows where that fails are redundant.
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (pos_[j] >= 0 || sgn(at(i, j)) == 0) continue;
        std::size_t old = basis_[i];
        pivot(i, j);
        pos_[old] = -1;
        break;
      }
    }
    for (std::size_t i = 0; i < m_; ++i) hi_[n_ + i] = 0;
    active_ = n_;
    return true;
  }

  void phase_two(const RatVec& c)
  {
    RatVec cost(N_, Rat(0));
    for (std::size_t j = 0; j < n_; ++j) cost[j] = c[j];
    set_cost(cost);
    iterate();
  }

  RatVec solution() const { return RatVec(x_.begin(), x_.begin() + n_); }

  /// New bounds for a structural column; a nonbasic column stays on the same side of its range.
  void change_bounds(std::size_t j, const Rat& lo, const Rat& hi)
  {
    if (pos_[j] >= 0) {
      lo_[j] = lo;
      hi_[j] = hi;
      return;
    }
    // A column leaving a fixed range takes the side its reduced cost prefers.
    bool at_upper = lo_[j] == hi_[j] ? sgn(d_[j]) < 0 : x_[j] == hi_[j];
    lo_[j] = lo;
    hi_[j] = hi;
    Rat target = at_upper ? hi : lo;
    shift_nonbasic(j, target - x_[j]);
  }

  /// Restores primal feasibility from a dual feasible basis; false when the bounds admit no point.
  bool dual_simplex()
  {
    std::size_t degenerate = 0;
    for (;;) {
      const bool bland = degenerate > 8;
      long row = -1;
      Rat worst = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        std::size_t bv = basis_[i];
        Rat gap = x_[bv] < lo_[bv] ? Rat(lo_[bv] - x_[bv]) : x_[bv] > hi_[bv] ? Rat(x_[bv] - hi_[bv]) : Rat(0);
        if (sgn(gap) == 0) continue;
        if (bland) {
          if (row < 0 || bv < basis_[static_cast<std::size_t>(row)]) row = static_cast<long>(i);
        } else if (gap > worst) {
          worst = gap;
          row = static_cast<long>(i);
        }
      }
      if (row < 0) return true;
      const std::size_t r = static_cast<std::size_t>(row), bv = basis_[r];
      const bool raise = x_[bv] < lo_[bv];
      const Rat target = raise ? lo_[bv] : hi_[bv];
      std::size_t e = N_;
      Rat ratio;
      for (std::size_t j = 0; j < active_; ++j) {
        if (pos_[j] >= 0 || lo_[j] == hi_[j]) continue;
        const Rat& a = at(r, j);
        if (sgn(a) == 0) continue;
        bool at_upper = x_[j] == hi_[j];
        // x_bv moves by -a per unit increase of x_j.
        bool usable = raise ? (at_upper ? sgn(a) > 0 : sgn(a) < 0) : (at_upper ? sgn(a) < 0 : sgn(a) > 0);
        if (!usable) continue;
        Rat q = abs(d_[j]) / abs(a);
        if (e == N_ || q < ratio) {
          e = j;
          ratio = q;
        }
      }
      if (e == N_) return false;
      degenerate = sgn(ratio) == 0 ? degenerate + 1 : 0;
      Rat step = (x_[bv] - target) / at(r, e);
      x_[e] += step;
      for (std::size_t i = 0; i < m_; ++i)
        if (i != r && sgn(at(i, e)) != 0) x_[basis_[i]] -= at(i, e) * step;
      x_[bv] = target;
      pivot(r, e);
      pos_[bv] = -1;
    }
  }

  void reoptimize() { iterate(); }

 private:
  void shift_nonbasic(std::size_t j, const Rat& delta)
  {
    if (sgn(delta) == 0) return;
    x_[j] += delta;
    for (std::size_t i = 0; i < m_; ++i)
      if (sgn(at(i, j)) != 0) x_[basis_[i]] -= at(i, j) * delta;
  }

  Rat& at(std::size_t i, std::size_t j) { return T_[i * N_ + j]; }
  const Rat& at(std::size_t i, std::size_t j) const { return T_[i * N_ + j]; }

  void set_cost(const RatVec& cost)
  {
    for (std::size_t j = 0; j < N_; ++j) {
      d_[j] = cost[j];
      if (pos_[j] >= 0) {
        d_[j] = 0;
        continue;
      }
      for (std::size_t i = 0; i < m_; ++i)
        if (sgn(cost[basis_[i]]) != 0 && sgn(at(i, j)) != 0) d_[j] -= cost[basis_[i]] * at(i, j);
    }
  }

  void pivot(std::size_t r, std::size_t e)
  {
    Rat inv = 1 / at(r, e);
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < active_; ++j) {
      if (sgn(at(r, j)) == 0) continue;
      at(r, j) *= inv;
      nz.push_back(j);
    }
    if (e >= active_) {
      at(r, e) = 1;
      nz.push_back(e);
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || sgn(at(i, e)) == 0) continue;
      Rat f = at(i, e);
      for (auto j : nz) at(i, j) -= f * at(r, j);
    }
    if (sgn(d_[e]) != 0) {
      Rat f = d_[e];
      for (auto j : nz) d_[j] -= f * at(r, j);
    }
    basis_[r] = e;
    pos_[e] = static_cast<long>(r);
  }

  // Largest reduced cost; Bland's first-index rule while pivots stay degenerate.
  void iterate()
  {
    std::size_t degenerate = 0;
    for (;;) {
      const bool bland = degenerate > 8;
      std::size_t e = N_;
      int dir = 0;
      Rat score = 0;
      for (std::size_t j = 0; j < active_; ++j) {
        if (pos_[j] >= 0 || lo_[j] == hi_[j]) continue;
        int want = 0;
        if (x_[j] == lo_[j] && sgn(d_[j]) < 0) want = 1;
        else if (x_[j] == hi_[j] && sgn(d_[j]) > 0) want = -1;
        if (want == 0) continue;
        if (bland) {
          e = j;
          dir = want;
          break;
        }
        Rat mag = abs(d_[j]);
        if (mag > score) {
          score = mag;
          e = j;
          dir = want;
        }
      }
      if (e == N_) return;
      Rat theta = hi_[e] - lo_[e];
      long leave = -1;
      std::size_t leave_var = e;
      bool leave_to_lower = true;
      for (std::size_t i = 0; i < m_; ++i) {
        const Rat& a = at(i, e);
        if (sgn(a) == 0) continue;
        std::size_t bv = basis_[i];
        Rat rate = dir > 0 ? a : Rat(-a);
        Rat lim;
        bool to_lower = sgn(rate) > 0;
        if (to_lower) lim = (x_[bv] - lo_[bv]) / rate;
        else lim = (hi_[bv] - x_[bv]) / (-rate);
        if (lim < theta || (lim == theta && bv < leave_var)) {
          theta = lim;
          leave = static_cast<long>(i);
          leave_var = bv;
          leave_to_lower = to_lower;
        }
      }
      degenerate = sgn(theta) == 0 ? degenerate + 1 : 0;
      if (sgn(theta) != 0) {
        Rat step = dir > 0 ? theta : Rat(-theta);
        x_[e] += step;
        for (std::size_t i = 0; i < m_; ++i)
          if (sgn(at(i, e)) != 0) x_[basis_[i]] -= at(i, e) * step;
      }
      if (leave < 0) {
        x_[e] = dir > 0 ? hi_[e] : lo_[e];
        continue;
      }
      std::size_t r = static_cast<std::size_t>(leave);
      std::size_t old = basis_[r];
      x_[old] = leave_to_lower ? lo_[old] : hi_[old];
      pivot(r, e);
      pos_[old] = -1;
    }
  }

  std::size_t m_, n_, N_, active_;
  std::vector<Rat> T_;
  std::vector<Rat> x_, lo_, hi_, d_;
  std::vector<std::size_t> basis_;
  std::vector<long> pos_;
};

void check_dims(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u)
{
  if (b.size() != A.rows() || l.size() != A.cols() || u.size() != A.cols())
    throw std::invalid_argument("lp: dimension mismatch");
}

}  // namespace

LpResult lp_solve(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u, const RatVec& c)
{
  check_dims(A, b, l, u);
  if (c.size() != A.cols()) throw std::invalid_argument("lp: cost dimension mismatch");
  LpResult res;
  for (std::size_t j = 0; j < A.cols(); ++j)
    if (l[j] > u[j]) return res;
  BoundedSimplex s(A, b, l, u);
  if (!s.phase_one()) return res;
  s.phase_two(c);
  res.status = LpStatus::optimal;
  res.x = s.solution();
  res.value = dot(c, res.x);
  return res;
}

EpigraphLift epigraph_lift(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u,
                           const SeparableObjective& obj)
{
  check_dims(A, b, l, u);
  if (obj.dim() != A.cols()) throw std::invalid_argument("lp: objective dimension mismatch");
  const std::size_t n = A.cols();
  std::size_t extra_cols = 0, extra_rows = 0;
  for (const auto& f : obj.terms)
    if (!f.is_linear()) {
      extra_cols += 1 + f.slopes.size();
      extra_rows += f.slopes.size();
    }
  EpigraphLift L;
  L.n_original = n;
  L.A = RatMat(A.rows() + extra_rows, n + extra_cols);
  L.b = b;
  L.b.resize(A.rows() + extra_rows);
  L.l = l;
  L.u = u;
  L.l.resize(n + extra_cols);
  L.u.resize(n + extra_cols);
  L.c = RatVec(n + extra_cols, Rat(0));
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) L.A(i, j) = A(i, j);
  std::size_t col = n, row = A.rows();
  for (std::size_t j = 0; j < n; ++j) {
    const PwlConvex& f = obj.terms[j];
    if (f.is_linear()) {
      L.c[j] = f.slopes[0];
      L.constant += f.anchor_value;
      continue;
    }
    std::size_t tau = col++;
    L.c[tau] = 1;
    Rat fmax = f.max_on(l[j], u[j]);
    L.l[tau] = f.min_on(l[j], u[j]);
    L.u[tau] = fmax;
    const std::size_t k = f.breakpoints.size();
    for (std::size_t p = 0; p <= k; ++p) {
      const Rat& ref = p < k ? f.breakpoints[p] : f.breakpoints[k - 1];
      Rat intercept = f(ref) - f.slopes[p] * ref;
      // tau - s_p x_j - slack = intercept
      std::size_t slack = col++;
      L.A(row, tau) = 1;
      L.A(row, j) = -f.slopes[p];
      L.A(row, slack) = -1;
      L.b[row] = intercept;
      Rat line_lo = intercept + f.slopes[p] * (sgn(f.slopes[p]) >= 0 ? l[j] : u[j]);
      L.l[slack] = 0;
      L.u[slack] = fmax - line_lo;
      if (L.u[slack] < 0) L.u[slack] = 0;
      ++row;
    }
  }
  return L;
}

LpResult lp_pwl_solve(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u, const SeparableObjective& obj)
{
  if (obj.is_linear()) {
    RatVec c;
    Rat constant = 0;
    for (const auto& f : obj.terms) {
      c.push_back(f.slopes[0]);
      constant += f.anchor_value;
    }
    LpResult r = lp_solve(A, b, l, u, c);
    if (r.status == LpStatus::optimal) r.value += constant;
    return r;
  }
  EpigraphLift L = epigraph_lift(A, b, l, u, obj);
  LpResult r = lp_solve(L.A, L.b, L.l, L.u, L.c);
  if (r.status != LpStatus::optimal) return r;
  r.x.resize(L.n_original);
  r.value = evaluate(obj, r.x);
  return r;
}

struct WarmLp::Impl {
  SeparableObjective objective;
  EpigraphLift lift;
  RatVec root_l, root_u, l, u;
  std::optional<BoundedSimplex> simplex;
  LpStatus status = LpStatus::infeasible;
};

WarmLp::WarmLp(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u, const SeparableObjective& obj)
    : impl_(std::make_unique<Impl>())
{
  check_dims(A, b, l, u);
  if (obj.terms.size() != A.cols()) throw std::invalid_argument("WarmLp: objective dimension mismatch");
  impl_->objective = obj;
  impl_->root_l = impl_->l = l;
  impl_->root_u = impl_->u = u;
  for (std::size_t j = 0; j < A.cols(); ++j)
    if (l[j] > u[j]) return;
  impl_->lift = epigraph_lift(A, b, l, u, obj);
  const EpigraphLift& L = impl_->lift;
  impl_->simplex.emplace(L.A, L.b, L.l, L.u);
  if (!impl_->simplex->phase_one()) {
    impl_->simplex.reset();
    return;
  }
  impl_->simplex->phase_two(L.c);
  impl_->status = LpStatus::optimal;
}

WarmLp::WarmLp(const WarmLp& other) : impl_(std::make_unique<Impl>(*other.impl_)) {}
WarmLp& WarmLp::operator=(const WarmLp& other)
{
  if (this != &other) impl_ = std::make_unique<Impl>(*other.impl_);
  return *this;
}
WarmLp::WarmLp(WarmLp&&) noexcept = default;
WarmLp& WarmLp::operator=(WarmLp&&) noexcept = default;
WarmLp::~WarmLp() = default;

void WarmLp::set_bounds(const RatVec& l, const RatVec& u)
{
  Impl& s = *impl_;
  const std::size_t n = s.root_l.size();
  if (l.size() != n || u.size() != n) throw std::invalid_argument("WarmLp: dimension mismatch");
  for (std::size_t j = 0; j < n; ++j)
    if (l[j] < s.root_l[j] || u[j] > s.root_u[j]) throw std::invalid_argument("WarmLp: bounds leave the initial box");
  s.status = LpStatus::infeasible;
  for (std::size_t j = 0; j < n; ++j)
    if (l[j] > u[j]) return;
  if (!s.simplex) return;
  for (std::size_t j = 0; j < n; ++j) {
    if (l[j] == s.l[j] && u[j] == s.u[j]) continue;
    s.simplex->change_bounds(j, l[j], u[j]);
    s.l[j] = l[j];
    s.u[j] = u[j];
  }
  if (!s.simplex->dual_simplex()) return;
  s.simplex->reoptimize();
  s.status = LpStatus::optimal;
}

LpStatus WarmLp::status() const { return impl_->status; }

LpResult WarmLp::result() const
{
  LpResult r;
  r.status = impl_->status;
  if (r.status != LpStatus::optimal) return r;
  r.x = impl_->simplex->solution();
  r.x.resize(impl_->lift.n_original);
  r.value = evaluate(impl_->objective, r.x);
  return r;
}

std::optional<std::pair<Rat, Rat>> coordinate_range(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u,
                                                     std::size_t i)
{
  if (i >= A.cols()) throw std::invalid_argument("coordinate_range: index out of range");
  RatVec c(A.cols(), Rat(0));
  c[i] = 1;
  LpResult lo = lp_solve(A, b, l, u, c);
  if (lo.status != LpStatus::optimal) return std::nullopt;
  c[i] = -1;
  LpResult hi = lp_solve(A, b, l, u, c);
  return std::make_pair(lo.x[i], hi.x[i]);
}

}  // namespace mixgraver
