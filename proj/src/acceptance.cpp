// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/acceptance.hpp"

#include "mixgraver/decomposition.hpp"
#include "mixgraver/graver.hpp"
#include "mixgraver/lp.hpp"
#include "mixgraver/reductions.hpp"
#include "mixgraver/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mixgraver {

namespace {

int rnd(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rat rnd_frac(Rng& rng, int lo, int hi, int max_den)
{
  int q = rnd(rng, 1, max_den);
  return make_rat(rnd(rng, lo * q, hi * q), q);
}

bool full_row_rank(const RatMat& E) { return rank(E) == E.rows(); }

SeparableObjective random_objective(Rng& rng, std::size_t n)
{
  SeparableObjective obj;
  for (std::size_t j = 0; j < n; ++j)
    obj.terms.push_back(rnd(rng, 0, 1) ? PwlConvex::linear(rnd(rng, -3, 3)) : random_pwl(rng));
  return obj;
}

Rat delta_of(const RatMat& E) { return std::max(Rat(1), E.max_abs()); }

std::string plural(std::size_t n, const char* what)
{
  return std::to_string(n) + " " + what;
}

// ---- independent checks ----

bool prefix_bound_holds(const std::vector<RatVec>& vs, const std::vector<std::size_t>& order, std::size_t d)
{
  if (order.size() != vs.size()) return false;
  std::vector<bool> seen(vs.size(), false);
  Rat B = 0;
  for (const auto& v : vs)
    for (const auto& e : v) B = std::max(B, Rat(abs(e)));
  RatVec prefix(d, Rat(0));
  for (std::size_t k : order) {
    if (k >= vs.size() || seen[k]) return false;
    seen[k] = true;
    for (std::size_t c = 0; c < d; ++c) {
      prefix[c] += vs[k][c];
      if (abs(prefix[c]) > B * static_cast<long>(d)) return false;
    }
  }
  return true;
}

bool packing_holds(const std::vector<RatVec>& xs, const RatVec& alpha, std::size_t d,
                   const std::vector<RatVec>& betas)
{
  Rat total_alpha = 0;
  for (const auto& a : alpha) total_alpha += a;
  RatVec sum(alpha.size(), Rat(0));
  std::size_t light = 0;
  for (const auto& beta : betas) {
    if (beta.size() != alpha.size()) return false;
    Rat mass = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
      if (beta[i] < 0 || beta[i] > alpha[i]) return false;
      mass += beta[i];
      sum[i] += beta[i];
    }
    for (std::size_t c = 0; c < d; ++c) {
      Rat coord = 0;
      for (std::size_t i = 0; i < beta.size(); ++i) coord += beta[i] * xs[i][c];
      if (coord.get_den() != 1) return false;
    }
    if (total_alpha > static_cast<long>(d) && mass > static_cast<long>(d)) return false;
    if (2 * mass < static_cast<long>(d)) ++light;
  }
  if (sum != alpha) return false;
  return total_alpha <= static_cast<long>(d) || light <= 1;
}

bool brute_partition(const std::vector<int>& a)
{
  int total = std::accumulate(a.begin(), a.end(), 0);
  if (total % 2) return false;
  for (std::size_t mask = 0; mask < (std::size_t{1} << a.size()); ++mask) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (mask >> i & 1) s += a[i];
    if (2 * s == total) return true;
  }
  return false;
}

bool brute_subset_sum(const std::vector<int>& A, std::size_t k, int t)
{
  for (std::size_t mask = 0; mask < (std::size_t{1} << A.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
    int s = 0;
    for (std::size_t i = 0; i < A.size(); ++i)
      if (mask >> i & 1) s += A[i];
    if (s == t) return true;
  }
  return false;
}

Int mersenne(std::size_t bits)
{
  Int v = 1;
  for (std::size_t i = 0; i < bits; ++i) v *= 2;
  return v - 1;
}

bool same_answer(const Solution& a, const Solution& b)
{
  if (a.status != b.status) return false;
  return !a.optimal() || a.value == b.value;
}

bool consistent_solution(const MipInstance& inst, const Solution& s)
{
  if (!s.optimal()) return true;
  return is_feasible_point(inst, s.x) && evaluate(inst.objective, s.x) == s.value;
}

// ---- sweeps ----

std::vector<MipInstance> few_rows_sweep(std::uint64_t seed)
{
  Rng rng(seed ^ 0x3333);
  std::vector<MipInstance> out;
  for (int i = 0; i < 120; ++i) out.push_back(random_few_rows_instance(rng));
  return out;
}

std::vector<RandomTwoStage> two_stage_sweep(std::uint64_t seed)
{
  Rng rng(seed ^ 0x4444);
  std::vector<RandomTwoStage> out;
  for (int i = 0; i < 100; ++i) out.push_back(random_two_stage_instance(rng));
  return out;
}

/// Mixed kernel vector with integer part drawn from [-zmax, zmax] and a vertex continuous part.
std::optional<RatVec> random_kernel_vector(Rng& rng, const RatMat& E, const MixedSpace& space, int zmax, int ymax)
{
  std::vector<std::size_t> int_cols, cont_cols;
  for (std::size_t j = 0; j < space.n_int; ++j) int_cols.push_back(j);
  for (std::size_t j = space.n_int; j < space.dim(); ++j) cont_cols.push_back(j);
  RatVec z(space.n_int);
  for (auto& e : z) e = rnd(rng, -zmax, zmax);
  RatVec rhs = scale(E.select_columns(int_cols) * z, Rat(-1));
  RatVec y;
  if (space.n_cont == 0) {
    if (!is_zero(rhs)) return std::nullopt;
  } else {
    RatVec cost(space.n_cont);
    for (auto& e : cost) e = rnd(rng, -3, 3);
    LpResult r = lp_solve(E.select_columns(cont_cols), rhs, RatVec(space.n_cont, Rat(-ymax)),
                          RatVec(space.n_cont, Rat(ymax)), cost);
    if (r.status != LpStatus::optimal) return std::nullopt;
    y = r.x;
  }
  RatVec g = z;
  g.insert(g.end(), y.begin(), y.end());
  if (is_zero(g)) return std::nullopt;
  return g;
}

/// Rational combination of a kernel basis; integer coordinates must come out integral.
std::optional<RatVec> random_kernel_combination(Rng& rng, const RatMat& E, const MixedSpace& space)
{
  auto basis = kernel_basis(E);
  if (basis.empty()) return std::nullopt;
  RatVec x(E.cols(), Rat(0));
  for (const auto& k : basis) x = add(x, scale(k, rnd_frac(rng, -4, 4, 4)));
  for (std::size_t j = 0; j < space.n_int; ++j)
    if (!is_integer(x[j])) return std::nullopt;
  if (is_zero(x)) return std::nullopt;
  return x;
}

// ---- criteria ----

CriterionResult c1(const AcceptanceOptions&)
{
  CriterionResult r{1, "nfold witness passes mixed Graver membership", true, "", 0, 10};
  std::ostringstream det;
  for (std::size_t n : {2u, 4u}) {
    NFoldWitness w = nfold_lb_instance(n);
    bool kernel = is_zero(w.E * w.g);
    bool norm = norm1(w.g) == Rat(static_cast<long>(2 * n));
    bool member = mixed_graver_member(w.E, w.space, w.g);
    if (!(kernel && norm && member)) r.pass = false;
    det << "n=" << n << " kernel=" << kernel << " norm=" << to_string(norm1(w.g)) << " member=" << member << "; ";
  }
  r.detail = det.str();
  return r;
}

CriterionResult c2(const AcceptanceOptions& opts)
{
  CriterionResult r{2, "grid set sums and distinct subset sums", true, "", 0, 5};
  std::ostringstream det;
  for (std::size_t n = 1; n <= 3; ++n) {
    NsseqPair p = nsseq_sets(n);
    Int target = opts.nsseq_target ? opts.nsseq_target(n) : mersenne(n * n);
    Int ss = 0, tt = 0;
    for (const auto& v : p.S) ss += v;
    for (const auto& v : p.T) tt += v;
    bool sums = ss == target && tt == target && p.V == target;
    bool distinct = nsseq_subsets_distinct(p);
    if (!(sums && distinct)) r.pass = false;
    det << "n=" << n << " sums=" << sums << " distinct=" << distinct << "; ";
  }
  r.detail = det.str();
  return r;
}

CriterionResult c3(const AcceptanceOptions& opts)
{
  CriterionResult r{3, "few-rows solver matches oracle", true, "", 0, 60};
  std::size_t mismatches = 0, optimal = 0, infeasible = 0;
  auto sweep = few_rows_sweep(opts.seed);
  for (const auto& inst : sweep) {
    Solution ref = oracle_solve(inst, 1000000, opts.jobs);
    Solution got = solve_few_rows(inst);
    if (!same_answer(ref, got) || !consistent_solution(inst, got)) ++mismatches;
    if (ref.optimal()) ++optimal;
    if (ref.status == Status::infeasible) ++infeasible;
  }
  r.pass = mismatches == 0;
  r.detail = plural(sweep.size(), "instances") + " (" + std::to_string(optimal) + " optimal, " +
             std::to_string(infeasible) + " infeasible), " + plural(mismatches, "mismatches");
  return r;
}

CriterionResult c4(const AcceptanceOptions& opts)
{
  CriterionResult r{4, "two-stage solver matches oracle", true, "", 0, 120};
  std::size_t mismatches = 0, optimal = 0;
  auto sweep = two_stage_sweep(opts.seed);
  TwoStageOptions tso;
  tso.certify = true;
  for (const auto& item : sweep) {
    Solution ref = oracle_solve(item.instance, 1000000, opts.jobs);
    Solution got = two_stage_solve(item.instance, item.shape, tso);
    if (!same_answer(ref, got) || !consistent_solution(item.instance, got)) ++mismatches;
    if (ref.optimal()) ++optimal;
  }
  r.pass = mismatches == 0;
  r.detail = plural(sweep.size(), "instances") + " (" + std::to_string(optimal) + " optimal), " +
             plural(mismatches, "mismatches");
  return r;
}

CriterionResult c5(const AcceptanceOptions& opts)
{
  CriterionResult r{5, "integer optimum lies near a mixed optimum", true, "", 0, 0};
  std::size_t checked = 0, violations = 0;
  Rat worst = 0;
  for (const auto& inst : few_rows_sweep(opts.seed)) {
    MipInstance restricted;
    if (!integer_restriction(inst, restricted)) continue;
    Solution zs = oracle_solve(restricted, 1000000, opts.jobs);
    Solution xs = oracle_solve(inst, 1000000, opts.jobs);
    if (!zs.optimal() || !xs.optimal()) continue;
    ++checked;
    auto d = closest_optimum_distance(inst, zs.x, xs.value, 1000000);
    Rat bound = norm_bounds(std::max<std::size_t>(inst.rows(), 1), delta_of(inst.E)).improved_wt1;
    if (!d || *d > bound) ++violations;
    else worst = std::max(worst, *d);
  }
  r.pass = violations == 0;
  r.detail = plural(checked, "instances") + ", largest distance " + to_string(worst) + ", " +
             plural(violations, "violations");
  return r;
}

CriterionResult c6(const AcceptanceOptions& opts)
{
  CriterionResult r{6, "Graver and one-fat norm bounds", true, "", 0, 0};
  Rng rng(opts.seed ^ 0x6666);
  std::size_t members = 0, norm_violations = 0, decompositions = 0, fat_violations = 0, invalid = 0;
  Rat worst_fat = 0;
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t m = static_cast<std::size_t>(rnd(rng, 1, 2));
    std::size_t n = static_cast<std::size_t>(rnd(rng, 2, 5));
    RatMat E(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) E(i, j) = rnd(rng, -2, 2);
    if (!full_row_rank(E)) {
      --trial;
      continue;
    }
    MixedSpace space{static_cast<std::size_t>(rnd(rng, 0, static_cast<int>(n))), 0};
    space.n_cont = n - space.n_int;
    NormBounds nb = norm_bounds(m, delta_of(E));

    std::vector<RatVec> candidates;
    std::vector<std::size_t> cont_cols;
    for (std::size_t j = space.n_int; j < n; ++j) cont_cols.push_back(j);
    if (!cont_cols.empty())
      for (const auto& c : circuits(E.select_columns(cont_cols))) {
        RatVec g(space.n_int, Rat(0));
        g.insert(g.end(), c.begin(), c.end());
        candidates.push_back(g);
      }
    for (const auto& g : integer_graver(E, 6).elements) candidates.push_back(g);
    for (int k = 0; k < 12; ++k)
      if (auto g = random_kernel_vector(rng, E, space, 3, 6)) candidates.push_back(*g);
    for (const auto& g : candidates) {
      if (!mixed_graver_member(E, space, g)) continue;
      ++members;
      if (norm1(g) > nb.improved_g1) ++norm_violations;
    }

    const Rat fat_bound = std::max(nb.corollary_wt1, nb.basic_1norm);
    for (int k = 0; k < 6; ++k) {
      auto x = k % 2 ? random_kernel_vector(rng, E, space, 5, 8) : random_kernel_combination(rng, E, space);
      if (!x) continue;
      OneFatDecomposition dec = one_fat_decompose(E, space, *x);
      ++decompositions;
      RatVec total = dec.fat;
      bool ok = conformal_leq(dec.fat, *x) && is_zero(E * dec.fat);
      for (std::size_t j = 0; j < space.n_int; ++j) ok = ok && is_integer(dec.fat[j]);
      for (const auto& p : dec.integer_parts) {
        ok = ok && is_integral(p) && !is_zero(p) && is_zero(E * p) && conformal_leq(p, *x);
        total = add(total, p);
      }
      ok = ok && total == *x;
      if (!ok) ++invalid;
      if (norm1(dec.fat) > fat_bound) ++fat_violations;
      worst_fat = std::max(worst_fat, norm1(dec.fat));
    }
  }
  r.pass = norm_violations == 0 && fat_violations == 0 && invalid == 0;
  r.detail = plural(members, "members") + ", " + plural(norm_violations, "norm violations") + "; " +
             plural(decompositions, "decompositions") + ", " + plural(invalid, "invalid") + ", " +
             plural(fat_violations, "fat violations") + ", largest fat norm " + to_string(worst_fat);
  return r;
}

CriterionResult c7(const AcceptanceOptions& opts)
{
  CriterionResult r{7, "Steinitz prefix bound and packing postconditions", true, "", 0, 0};
  Rng rng(opts.seed ^ 0x7777);
  std::size_t steinitz_calls = 0, steinitz_bad = 0, pack_calls = 0, pack_bad = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = static_cast<std::size_t>(rnd(rng, 1, 3));
    int B = rnd(rng, 1, 3);
    int max_den = rnd(rng, 1, 3);
    std::vector<RatVec> vs;
    RatVec sum(d, Rat(0));
    int count = rnd(rng, 1, 24);
    for (int k = 0; k < count; ++k) {
      RatVec v(d);
      for (auto& e : v) e = rnd_frac(rng, -B, B, max_den);
      sum = add(sum, v);
      vs.push_back(v);
    }
    while (!is_zero(sum)) {
      RatVec v(d);
      for (std::size_t c = 0; c < d; ++c) v[c] = std::clamp(Rat(-sum[c]), Rat(-B), Rat(B));
      sum = add(sum, v);
      vs.push_back(v);
    }
    std::shuffle(vs.begin(), vs.end(), rng);
    ++steinitz_calls;
    try {
      if (!prefix_bound_holds(vs, steinitz_reorder(vs, d), d)) ++steinitz_bad;
    } catch (const std::exception&) {
      ++steinitz_bad;
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t d = static_cast<std::size_t>(rnd(rng, 1, 3));
    std::vector<RatVec> xs;
    RatVec alpha;
    int count = rnd(rng, 1, 6);
    for (int k = 0; k < count; ++k) {
      RatVec x(d);
      do {
        for (auto& e : x) e = rnd(rng, -2, 2);
      } while (is_zero(x));
      xs.push_back(x);
      alpha.push_back(rnd_frac(rng, 0, 3, 4));
    }
    RatVec s(d, Rat(0));
    for (std::size_t i = 0; i < xs.size(); ++i) s = add(s, scale(xs[i], alpha[i]));
    for (std::size_t c = 0; c < d; ++c)
      if (!is_integer(s[c])) {
        RatVec e(d, Rat(0));
        e[c] = 1;
        xs.push_back(e);
        alpha.push_back(Rat(ceil_int(s[c])) - s[c]);
      }
    ++pack_calls;
    try {
      if (!packing_holds(xs, alpha, d, pack_coefficients(xs, alpha, d))) ++pack_bad;
    } catch (const std::exception&) {
      ++pack_bad;
    }
  }
  r.pass = steinitz_bad == 0 && pack_bad == 0;
  r.detail = plural(steinitz_calls, "reorderings") + " (" + plural(steinitz_bad, "violations") + "), " +
             plural(pack_calls, "packings") + " (" + plural(pack_bad, "violations") + ")";
  return r;
}

CriterionResult c8(const AcceptanceOptions& opts)
{
  CriterionResult r{8, "fractional data round trip through the integral reduction", true, "", 0, 0};
  Rng rng(opts.seed ^ 0x8888);
  std::size_t mismatches = 0, infeasible = 0;
  for (int i = 0; i < 50; ++i) {
    MipInstance inst = random_fractional_milp(rng);
    Solution direct = oracle_solve(inst, 1000000, opts.jobs);
    MilpToMip red = milp_to_mip(inst);
    Solution back = decode(red.certificate, solve_few_rows(red.instance));
    if (!same_answer(direct, back) || !consistent_solution(inst, back)) ++mismatches;
    if (direct.status == Status::infeasible) ++infeasible;
  }
  r.pass = mismatches == 0;
  r.detail = "50 instances (" + std::to_string(infeasible) + " infeasible), " + plural(mismatches, "mismatches");
  return r;
}

CriterionResult c9(const AcceptanceOptions& opts)
{
  CriterionResult r{9, "partition and subset-sum generators", true, "", 0, 0};
  std::size_t partitions = 0, partition_bad = 0, structural_bad = 0;
  std::vector<int> a;
  std::function<void(int)> rec = [&](int min_value) {
    if (!a.empty()) {
      ++partitions;
      std::vector<Rat> ar(a.begin(), a.end());
      PartitionReduction red = partition_to_nfold(ar);
      if (red.instance.E.max_abs() != 1) ++structural_bad;
      Solution sol = oracle_solve(red.instance, 1000000, opts.jobs);
      bool yes = sol.optimal();
      if (yes != brute_partition(a)) ++partition_bad;
      if (yes) {
        auto side = decode_partition(red, sol);
        Rat s = 0;
        for (auto idx : side.value_or(std::vector<std::size_t>{})) s += a[idx - 1];
        if (!side || 2 * s != std::accumulate(a.begin(), a.end(), 0)) ++partition_bad;
      }
    }
    if (a.size() == 5) return;
    for (int v = min_value; v <= 6; ++v) {
      a.push_back(v);
      rec(v);
      a.pop_back();
    }
  };
  rec(1);

  Rng rng(opts.seed ^ 0x9999);
  std::size_t subset_sums = 0, subset_bad = 0;
  for (int i = 0; i < 30; ++i) {
    int size = rnd(rng, 1, 5);
    std::vector<int> pool{1, 2, 3, 4, 5, 6, 7, 8};
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> A(pool.begin(), pool.begin() + size);
    std::sort(A.begin(), A.end());
    std::size_t k = static_cast<std::size_t>(rnd(rng, 1, size));
    int t;
    if (rnd(rng, 0, 1)) {
      std::vector<int> pick = A;
      std::shuffle(pick.begin(), pick.end(), rng);
      t = std::accumulate(pick.begin(), pick.begin() + static_cast<long>(k), 0);
    } else {
      t = rnd(rng, 1, std::accumulate(A.begin(), A.end(), 0));
    }
    ++subset_sums;
    SubsetSumReduction red = subsetsum_to_twostage(std::vector<Int>(A.begin(), A.end()), k, Int(t));
    if (red.instance.E.max_abs() != 1) ++structural_bad;
    Solution sol = branch_and_bound_solve(red.instance, 2000000, 1000000);
    bool yes = sol.optimal() && sol.value <= red.threshold;
    if (sol.status == Status::cap_exceeded || yes != brute_subset_sum(A, k, t)) ++subset_bad;
    if (yes) {
      SubsetSumAnswer ans = decode_subsetsum(red, sol);
      Int s = 0;
      for (const auto& v : ans.chosen) s += v;
      if (!ans.yes || ans.chosen.size() != k || s != t) ++subset_bad;
    }
  }
  r.pass = partition_bad == 0 && subset_bad == 0 && structural_bad == 0;
  r.detail = plural(partitions, "partition multisets") + " (" + plural(partition_bad, "mismatches") + "), " +
             plural(subset_sums, "subset-sum instances") + " (" + plural(subset_bad, "mismatches") + "), " +
             plural(structural_bad, "structural failures");
  return r;
}

CriterionResult c10(const AcceptanceOptions& opts)
{
  CriterionResult r{10, "invertible column sets touch at most r portrait blocks", true, "", 0, 0};
  std::vector<std::pair<RatMat, TwoStageShape>> layouts;
  Rng rng(opts.seed ^ 0xaaaa);
  for (std::size_t rr = 0; rr <= 2; ++rr)
    for (std::size_t s = 1; s <= 2; ++s)
      for (std::size_t t = 1; t <= 2; ++t)
        for (std::size_t n = 1; n <= 3; ++n)
          for (int rep = 0; rep < 3; ++rep) {
            std::vector<RatMat> Bs, As;
            for (std::size_t i = 0; i < n; ++i) {
              RatMat B(t, rr), A(t, s);
              for (std::size_t a = 0; a < t; ++a) {
                for (std::size_t b = 0; b < rr; ++b) B(a, b) = rnd(rng, -2, 2);
                for (std::size_t b = 0; b < s; ++b) A(a, b) = rnd(rng, -2, 2);
              }
              Bs.push_back(B);
              As.push_back(A);
            }
            layouts.push_back(build_two_stage(Bs, As));
          }
  for (const auto& item : two_stage_sweep(opts.seed)) {
    TwoStageShape plain = item.shape;
    plain.column_order.clear();
    layouts.emplace_back(layout_matrix(item.instance.E, item.shape.column_order), plain);
  }
  std::size_t subsets = 0, violations = 0;
  for (const auto& [L, shape] : layouts) {
    const std::size_t rows = L.rows(), cols = L.cols();
    if (rows > cols) continue;
    std::vector<bool> pick(cols, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(rows), true);
    do {
      std::vector<std::size_t> D;
      for (std::size_t j = 0; j < cols; ++j)
        if (pick[j]) D.push_back(j);
      if (rank(L.select_columns(D)) != rows) continue;
      ++subsets;
      if (!invertible_blocks_bound_check(L, shape, D)) ++violations;
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  r.pass = violations == 0;
  r.detail = plural(layouts.size(), "matrices") + ", " + plural(subsets, "invertible column sets") + ", " +
             plural(violations, "violations");
  return r;
}

}  // namespace

PwlConvex random_pwl(Rng& rng)
{
  std::set<int> points;
  int k = rnd(rng, 0, 2);
  while (static_cast<int>(points.size()) < k) points.insert(rnd(rng, -3, 3));
  std::vector<int> slopes;
  for (int i = 0; i <= k; ++i) slopes.push_back(rnd(rng, -3, 3));
  std::sort(slopes.begin(), slopes.end());
  return PwlConvex::make(std::vector<Rat>(points.begin(), points.end()), std::vector<Rat>(slopes.begin(), slopes.end()),
                         Rat(rnd(rng, -2, 2)));
}

MipInstance random_few_rows_instance(Rng& rng)
{
  for (;;) {
    std::size_t m = static_cast<std::size_t>(rnd(rng, 1, 2));
    std::size_t n = static_cast<std::size_t>(rnd(rng, static_cast<int>(m), 6));
    MipInstance inst;
    inst.space.n_int = static_cast<std::size_t>(rnd(rng, 0, static_cast<int>(n)));
    inst.space.n_cont = n - inst.space.n_int;
    inst.E = RatMat(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) inst.E(i, j) = rnd(rng, -2, 2);
    if (!full_row_rank(inst.E)) continue;
    RatVec x0(n);
    for (std::size_t j = 0; j < n; ++j) {
      int lo = rnd(rng, -3, 2);
      int hi = std::min(3, lo + rnd(rng, 0, 3));
      inst.l.push_back(lo);
      inst.u.push_back(hi);
      x0[j] = rnd(rng, lo, hi);
    }
    inst.b = inst.E * x0;
    if (rnd(rng, 0, 5) == 0) inst.b[0] += rnd(rng, 0, 1) ? 1 : -1;
    inst.objective = random_objective(rng, n);
    if (slice_count(inst) > 10000) continue;
    inst.validate();
    return inst;
  }
}

RandomTwoStage random_two_stage_instance(Rng& rng)
{
  for (;;) {
    std::size_t r = static_cast<std::size_t>(rnd(rng, 0, 2));
    std::size_t s = static_cast<std::size_t>(rnd(rng, 1, 2));
    std::size_t t = static_cast<std::size_t>(rnd(rng, 1, 2));
    std::size_t n = static_cast<std::size_t>(rnd(rng, 1, 3));
    std::vector<RatMat> Bs, As;
    for (std::size_t i = 0; i < n; ++i) {
      RatMat B(t, r), A(t, s);
      for (std::size_t a = 0; a < t; ++a) {
        for (std::size_t c = 0; c < r; ++c) B(a, c) = rnd(rng, -2, 2);
        for (std::size_t c = 0; c < s; ++c) A(a, c) = rnd(rng, -2, 2);
      }
      Bs.push_back(B);
      As.push_back(A);
    }
    auto [L, shape] = build_two_stage(Bs, As);
    if (!full_row_rank(L)) continue;
    const std::size_t cols = L.cols();
    std::vector<bool> integral(cols);
    for (std::size_t k = 0; k < cols; ++k) integral[k] = rnd(rng, 0, 1) == 1;
    std::vector<std::size_t> order(cols);
    std::size_t next = 0;
    for (std::size_t k = 0; k < cols; ++k)
      if (integral[k]) order[k] = next++;
    const std::size_t n_int = next;
    for (std::size_t k = 0; k < cols; ++k)
      if (!integral[k]) order[k] = next++;
    RandomTwoStage out;
    MipInstance& inst = out.instance;
    inst.space = MixedSpace{n_int, cols - n_int};
    inst.E = RatMat(L.rows(), cols);
    for (std::size_t i = 0; i < L.rows(); ++i)
      for (std::size_t k = 0; k < cols; ++k) inst.E(i, order[k]) = L(i, k);
    RatVec x0(cols);
    inst.l.assign(cols, Rat(0));
    inst.u.assign(cols, Rat(0));
    for (std::size_t j = 0; j < cols; ++j) {
      int lo = rnd(rng, -2, 1);
      int hi = lo + rnd(rng, 0, 2);
      inst.l[j] = lo;
      inst.u[j] = hi;
      x0[j] = rnd(rng, lo, hi);
    }
    inst.b = inst.E * x0;
    if (rnd(rng, 0, 5) == 0) inst.b[0] += rnd(rng, 0, 1) ? 1 : -1;
    inst.objective = random_objective(rng, cols);
    if (slice_count(inst) > 2000) continue;
    inst.validate();
    shape.column_order = order;
    out.shape = shape;
    return out;
  }
}

MipInstance random_fractional_milp(Rng& rng)
{
  for (;;) {
    std::size_t m = static_cast<std::size_t>(rnd(rng, 1, 2));
    std::size_t n = static_cast<std::size_t>(rnd(rng, static_cast<int>(m), 4));
    MipInstance inst;
    inst.space.n_int = static_cast<std::size_t>(rnd(rng, 0, static_cast<int>(n)));
    inst.space.n_cont = n - inst.space.n_int;
    inst.E = RatMat(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) inst.E(i, j) = rnd(rng, -2, 2);
    if (!full_row_rank(inst.E)) continue;
    RatVec x0(n), w(n);
    for (std::size_t j = 0; j < n; ++j) {
      Rat lo = rnd_frac(rng, -3, 2, 4);
      Rat hi = lo + rnd_frac(rng, 0, 3, 4);
      inst.l.push_back(lo);
      inst.u.push_back(hi);
      if (inst.space.is_integer(j) && ceil_int(lo) <= floor_int(hi)) {
        x0[j] = Rat(ceil_int(lo));
      } else {
        x0[j] = lo + (hi - lo) * make_rat(rnd(rng, 0, 4), 4);
      }
      w[j] = rnd(rng, -3, 3);
    }
    inst.b = inst.E * x0;
    if (rnd(rng, 0, 4) == 0) inst.b[0] += rnd_frac(rng, -1, 1, 4);
    inst.objective = SeparableObjective::linear(w);
    if (slice_count(inst) > 10000) continue;
    inst.validate();
    return inst;
  }
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts)
{
  using Clock = std::chrono::steady_clock;
  static CriterionResult (*const table[])(const AcceptanceOptions&) = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
  if (id < 1 || id > 10) throw std::out_of_range("no acceptance criterion " + std::to_string(id));
  auto start = Clock::now();
  CriterionResult r;
  try {
    r = table[id - 1](opts);
  } catch (const std::exception& e) {
    r.id = id;
    r.name = "criterion " + std::to_string(id);
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (r.budget_seconds > 0 && r.seconds > r.budget_seconds) {
    r.pass = false;
    r.detail += " (over the time budget)";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts,
                                            const std::function<void(const CriterionResult&)>& on_result)
{
  std::vector<CriterionResult> out;
  for (int id = 1; id <= 10; ++id) {
    out.push_back(run_criterion(id, opts));
    if (on_result) on_result(out.back());
  }
  return out;
}

std::string format_result(const CriterionResult& r)
{
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f", r.seconds);
  std::string line = std::string(r.pass ? "PASS" : "FAIL") + " criterion " + std::to_string(r.id) + ": " + r.name +
                     ": " + r.detail + " [" + secs + " s";
  if (r.budget_seconds > 0) {
    char budget[32];
    std::snprintf(budget, sizeof budget, "%.0f", r.budget_seconds);
    line += ", budget " + std::string(budget) + " s";
  }
  return line + "]";
}

}  // namespace mixgraver
