// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/solvers.hpp"

#include "solver_detail.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace mixgraver {

namespace {

struct CapHit {};

// Values a continuous variable can take at a vertex of its slice: the bounds and the kinks inside them.
std::vector<Rat> pin_values(const PwlConvex& f, const Rat& lo, const Rat& hi)
{
  std::vector<Rat> v{lo};
  for (const auto& bp : f.breakpoints)
    if (bp > lo && bp < hi) v.push_back(bp);
  if (hi != lo) v.push_back(hi);
  return v;
}

std::vector<Rat> integer_values(const Rat& lo, const Rat& hi)
{
  std::vector<Rat> v;
  for (Int k = ceil_int(lo); k <= floor_int(hi); ++k) v.push_back(Rat(k));
  return v;
}

std::vector<std::vector<std::size_t>> subsets(const std::vector<std::size_t>& items, std::size_t max_size)
{
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = items.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) > max_size) continue;
    std::vector<std::size_t> s;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1) s.push_back(items[k]);
    out.push_back(std::move(s));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

class TwoStageSearch {
 public:
  TwoStageSearch(const MipInstance& prog, const TwoStageShape& shape, const TwoStageOptions& opts)
      : prog_(prog), shape_(shape), opts_(opts)
  {
    const std::size_t N = prog.dim();
    for (std::size_t k = 0; k < N; ++k) {
      std::size_t c = shape.layout_column(k);
      col_.push_back(c);
      is_int_.push_back(prog.space.is_integer(c));
    }
    for (std::size_t k = 0; k < shape.r; ++k) (is_int_[k] ? global_int_ : global_cont_).push_back(k);
  }

  /// Best y in instance coordinates; empty when infeasible.
  std::optional<std::pair<Rat, RatVec>> run()
  {
    std::set<RatVec> seen;
    std::vector<std::size_t> blocks(shape_.n);
    for (std::size_t i = 0; i < shape_.n; ++i) blocks[i] = i;
    for (const auto& gamma : subsets(global_cont_, global_cont_.size())) {
      for (const auto& pi : subsets(blocks, gamma.size())) {
        if (pi.empty() != gamma.empty()) continue;
        std::vector<std::vector<std::size_t>> cont_of(pi.size());
        for (std::size_t a = 0; a < pi.size(); ++a)
          for (std::size_t q = 0; q < shape_.s; ++q) {
            std::size_t k = local(pi[a], q);
            if (!is_int_[k]) cont_of[a].push_back(k);
          }
        std::vector<std::vector<std::size_t>> lambda(pi.size());
        enumerate_lambda(pi, gamma, cont_of, lambda, 0, seen);
      }
    }
    return best_;
  }

 private:
  std::size_t local(std::size_t block, std::size_t q) const { return shape_.r + block * shape_.s + q; }
  const Rat& lo(std::size_t k) const { return prog_.l[col_[k]]; }
  const Rat& hi(std::size_t k) const { return prog_.u[col_[k]]; }
  const PwlConvex& term(std::size_t k) const { return prog_.objective.terms[col_[k]]; }
  const Rat& entry(std::size_t row, std::size_t k) const { return prog_.E(row, col_[k]); }

  void enumerate_lambda(const std::vector<std::size_t>& pi, const std::vector<std::size_t>& gamma,
                        const std::vector<std::vector<std::size_t>>& cont_of, std::vector<std::vector<std::size_t>>& lambda,
                        std::size_t a, std::set<RatVec>& seen)
  {
    if (a == pi.size()) {
      enumerate_values(pi, gamma, lambda, seen);
      return;
    }
    for (const auto& sub : subsets(cont_of[a], cont_of[a].size())) {
      lambda[a] = sub;
      enumerate_lambda(pi, gamma, cont_of, lambda, a + 1, seen);
    }
  }

  void enumerate_values(const std::vector<std::size_t>& pi, const std::vector<std::size_t>& gamma,
                        const std::vector<std::vector<std::size_t>>& lambda, std::set<RatVec>& seen)
  {
    std::vector<std::size_t> unknown = gamma;
    for (const auto& l : lambda) unknown.insert(unknown.end(), l.begin(), l.end());
    std::set<std::size_t> unknown_set(unknown.begin(), unknown.end());
    // Fixed positions: all globals outside gamma, and every non-basic local of the chosen blocks.
    std::vector<std::size_t> fixed;
    std::vector<std::vector<Rat>> choices;
    auto add_fixed = [&](std::size_t k) {
      fixed.push_back(k);
      choices.push_back(is_int_[k] ? integer_values(lo(k), hi(k)) : pin_values(term(k), lo(k), hi(k)));
    };
    for (std::size_t k = 0; k < shape_.r; ++k)
      if (!unknown_set.count(k)) add_fixed(k);
    for (auto b : pi)
      for (std::size_t q = 0; q < shape_.s; ++q)
        if (!unknown_set.count(local(b, q))) add_fixed(local(b, q));
    for (const auto& c : choices)
      if (c.empty()) return;
    std::vector<std::size_t> rows;
    for (auto b : pi)
      for (std::size_t q = 0; q < shape_.t; ++q) rows.push_back(b * shape_.t + q);
    RatMat S(rows.size(), unknown.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < unknown.size(); ++j) S(i, j) = entry(rows[i], unknown[j]);
    std::vector<std::size_t> pick(fixed.size(), 0);
    RatVec layout(prog_.dim(), Rat(0));
    for (;;) {
      if (++candidates_ > opts_.candidate_cap) throw CapHit{};
      for (std::size_t f = 0; f < fixed.size(); ++f) layout[fixed[f]] = choices[f][pick[f]];
      bool ok = true;
      if (!unknown.empty()) {
        RatVec rhs(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
          rhs[i] = prog_.b[rows[i]];
          for (auto k : fixed)
            if (sgn(layout[k]) != 0) rhs[i] -= entry(rows[i], k) * layout[k];
        }
        auto sol = solve_unique(S, rhs);
        if (!sol) ok = false;
        for (std::size_t j = 0; ok && j < unknown.size(); ++j) {
          const Rat& v = (*sol)[j];
          if (v < lo(unknown[j]) || v > hi(unknown[j])) ok = false;
          layout[unknown[j]] = v;
        }
      }
      if (ok) {
        RatVec global(layout.begin(), layout.begin() + static_cast<long>(shape_.r));
        if (seen.insert(global).second) evaluate_global(global);
      }
      std::size_t f = 0;
      while (f < fixed.size() && ++pick[f] == choices[f].size()) pick[f++] = 0;
      if (f == fixed.size()) break;
    }
  }

  void evaluate_global(const RatVec& global)
  {
    RatVec y(prog_.dim(), Rat(0));
    Rat value = 0;
    for (std::size_t k = 0; k < shape_.r; ++k) {
      y[col_[k]] = global[k];
      value += term(k)(global[k]);
    }
    for (std::size_t b = 0; b < shape_.n; ++b) {
      auto sol = solve_block(b, global);
      if (!sol.optimal()) return;
      value += sol.value;
      for (std::size_t q = 0; q < shape_.s; ++q) y[col_[local(b, q)]] = sol.x[q];
    }
    if (!best_ || value < best_->first || (value == best_->first && y < best_->second)) best_ = std::make_pair(value, y);
  }

  // Block b with the globals fixed; x is returned in the block's layout order.
  Solution solve_block(std::size_t b, const RatVec& global)
  {
    RatMat A(shape_.t, shape_.s);
    RatVec rhs(shape_.t);
    for (std::size_t q = 0; q < shape_.t; ++q) {
      std::size_t row = b * shape_.t + q;
      rhs[q] = prog_.b[row];
      for (std::size_t k = 0; k < shape_.r; ++k) rhs[q] -= entry(row, k) * global[k];
      for (std::size_t p = 0; p < shape_.s; ++p) A(q, p) = entry(row, local(b, p));
    }
    auto key = std::make_pair(b, rhs);
    auto hit = cache_.find(key);
    if (hit != cache_.end()) return hit->second;
    Solution out;
    if (is_consistent(A, rhs)) {
      // Integer columns first inside the block.
      std::vector<std::size_t> perm;
      for (std::size_t p = 0; p < shape_.s; ++p)
        if (is_int_[local(b, p)]) perm.push_back(p);
      const std::size_t n_int = perm.size();
      for (std::size_t p = 0; p < shape_.s; ++p)
        if (!is_int_[local(b, p)]) perm.push_back(p);
      auto keep = independent_rows(A);
      MipInstance sub;
      sub.space = MixedSpace{n_int, shape_.s - n_int};
      sub.E = A.select_rows(keep).select_columns(perm);
      for (auto r : keep) sub.b.push_back(rhs[r]);
      for (auto p : perm) {
        std::size_t k = local(b, p);
        sub.l.push_back(lo(k));
        sub.u.push_back(hi(k));
        sub.objective.terms.push_back(term(k));
      }
      Solution s = solve_few_rows(sub);
      out.status = s.status;
      if (s.optimal()) {
        out.value = s.value;
        out.x.assign(shape_.s, Rat(0));
        for (std::size_t j = 0; j < perm.size(); ++j) out.x[perm[j]] = s.x[j];
      }
    }
    cache_.emplace(std::move(key), out);
    return out;
  }

  const MipInstance& prog_;
  const TwoStageShape& shape_;
  const TwoStageOptions& opts_;
  std::vector<std::size_t> col_;
  std::vector<bool> is_int_;
  std::vector<std::size_t> global_int_, global_cont_;
  std::uint64_t candidates_ = 0;
  std::map<std::pair<std::size_t, RatVec>, Solution> cache_;
  std::optional<std::pair<Rat, RatVec>> best_;
};

}  // namespace

Solution two_stage_solve(const MipInstance& inst, const TwoStageShape& shape, const TwoStageOptions& opts)
{
  detail::check_dims(inst);
  if (!shape.column_order.empty() && shape.column_order.size() != inst.dim())
    throw std::invalid_argument("two_stage_solve: layout has the wrong length");
  if (!matches_shape(layout_matrix(inst.E, shape.column_order), shape))
    throw std::invalid_argument("two_stage_solve: matrix does not match the 2-stage shape");
  Solution result;
  MipInstance restricted;
  Solution integer;
  if (integer_restriction(inst, restricted)) integer = branch_and_bound_solve(restricted, opts.node_cap, opts.enum_cap);
  if (integer.status == Status::cap_exceeded) {
    result.status = Status::cap_exceeded;
    return result;
  }
  MipInstance prog = inst;
  RatVec center = zeros(inst.dim());
  if (integer.optimal()) {
    Rat P = 1;
    for (std::size_t j = 0; j < inst.dim(); ++j) P = std::max(P, Rat(inst.u[j] - inst.l[j]));
    if (opts.proximity) P = *opts.proximity;
    AuxProgram aux = build_aux(inst, integer.x, P);
    prog = aux.program;
    center = integer.x;
  }
  try {
    auto best = TwoStageSearch(prog, shape, opts).run();
    if (best) {
      result.status = Status::optimal;
      result.x = add(center, best->second);
      result.value = evaluate(inst.objective, result.x);
    }
  } catch (const CapHit&) {
    result.status = Status::cap_exceeded;
    return result;
  }
  if (opts.certify && slice_count(inst) <= Int(static_cast<unsigned long>(opts.enum_cap))) {
    Solution ref = oracle_solve(inst, opts.enum_cap);
    if (ref.status != result.status || (ref.optimal() && ref.value != result.value)) {
      Solution bad;
      bad.status = Status::internal_error;
      return bad;
    }
  }
  return result;
}

}  // namespace mixgraver
