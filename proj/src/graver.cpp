// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/graver.hpp"

#include "mixgraver/lp.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace mixgraver {

namespace {

bool norm_then_lex(const RatVec& a, const RatVec& b)
{
  Rat na = norm1(a), nb = norm1(b);
  if (na != nb) return na < nb;
  return a < b;
}

// Kernel of the columns in `support`, reported as a full-support primitive vector when one-dimensional.
bool support_circuit(const RatMat& E, const std::vector<std::size_t>& support, RatVec& out)
{
  auto basis = kernel_basis(E.select_columns(support));
  if (basis.size() != 1) return false;
  const RatVec& v = basis[0];
  for (const auto& x : v)
    if (sgn(x) == 0) return false;
  RatVec p = primitive_integer(v);
  out = zeros(E.cols());
  for (std::size_t k = 0; k < support.size(); ++k) out[support[k]] = p[k];
  return true;
}

}  // namespace

std::vector<RatVec> circuits(const RatMat& E)
{
  const std::size_t n = E.cols();
  const std::size_t max_size = std::min(n, rank(E) + 1);
  std::set<RatVec> found;
  std::vector<std::size_t> subset;
  // Subsets in increasing size, each as an increasing index list.
  for (std::size_t size = 1; size <= max_size; ++size) {
    subset.resize(size);
    for (std::size_t k = 0; k < size; ++k) subset[k] = k;
    for (;;) {
      RatVec c;
      if (support_circuit(E, subset, c)) {
        found.insert(c);
        found.insert(scale(c, Rat(-1)));
      }
      long k = static_cast<long>(size) - 1;
      while (k >= 0 && subset[static_cast<std::size_t>(k)] == n - size + static_cast<std::size_t>(k)) --k;
      if (k < 0) break;
      ++subset[static_cast<std::size_t>(k)];
      for (std::size_t j = static_cast<std::size_t>(k) + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return {found.begin(), found.end()};
}

GraverSet integer_graver(const RatMat& E, const Rat& cap)
{
  if (cap < 1) throw std::invalid_argument("integer_graver: cap must be at least 1");
  const std::size_t n = E.cols(), m = E.rows();
  const long budget = floor_int(cap).get_si();
  const Rat delta = E.max_abs();
  std::vector<RatVec> kernel;
  RatVec v(n, Rat(0));
  RatVec resid(m, Rat(0));
  // Depth-first over coordinates; the residual must stay cancellable by the remaining budget.
  auto dfs = [&](auto&& self, std::size_t i, long left) -> void {
    if (norm_inf(resid) > delta * Rat(left)) return;
    if (i == n) {
      if (is_zero(resid) && !is_zero(v)) kernel.push_back(v);
      return;
    }
    for (long val = -left; val <= left; ++val) {
      long rest = left - (val < 0 ? -val : val);
      v[i] = val;
      for (std::size_t r = 0; r < m; ++r) resid[r] += E(r, i) * Rat(val);
      self(self, i + 1, rest);
      for (std::size_t r = 0; r < m; ++r) resid[r] -= E(r, i) * Rat(val);
    }
    v[i] = 0;
  };
  if (n > 0) dfs(dfs, 0, budget);
  std::sort(kernel.begin(), kernel.end(), norm_then_lex);
  GraverSet gs;
  for (const auto& cand : kernel) {
    bool minimal = true;
    for (const auto& e : gs.elements) {
      if (norm1(e) >= norm1(cand)) break;
      if (conformal_leq(e, cand)) {
        minimal = false;
        break;
      }
    }
    if (minimal) gs.elements.push_back(cand);
  }
  gs.cap_used = cap;
  Rat M = Rat(static_cast<long>(std::max<std::size_t>(m, 1)));
  Rat D = std::max(delta, Rat(1));
  Rat bound = 1;
  for (std::size_t k = 0; k < std::max<std::size_t>(m, 1); ++k) bound *= 2 * M * D + 1;
  gs.complete = cap >= bound;
  return gs;
}

GraverCheck mixed_graver_check(const RatMat& E, const MixedSpace& space, const RatVec& g)
{
  if (g.size() != E.cols() || space.dim() != E.cols()) throw std::invalid_argument("mixed_graver_member: dimension mismatch");
  if (!is_zero(E * g)) throw std::invalid_argument("mixed_graver_member: g is not in the kernel");
  for (std::size_t i = 0; i < space.n_int; ++i)
    if (!is_integer(g[i])) throw std::invalid_argument("mixed_graver_member: fractional integer coordinate");
  if (is_zero(g)) return {};
  const std::size_t ni = space.n_int, nc = space.n_cont;
  std::vector<std::size_t> int_cols, cont_cols;
  for (std::size_t j = 0; j < ni; ++j) int_cols.push_back(j);
  for (std::size_t j = ni; j < ni + nc; ++j) cont_cols.push_back(j);
  RatVec gz(g.begin(), g.begin() + static_cast<long>(ni));
  RatVec gr(g.begin() + static_cast<long>(ni), g.end());

  if (is_zero(gz)) {
    if (!is_integral(gr) || primitive_integer(gr) != gr) return {};
    std::vector<std::size_t> support;
    for (std::size_t j = 0; j < nc; ++j)
      if (sgn(gr[j]) != 0) support.push_back(ni + j);
    RatVec c;
    GraverCheck out;
    out.member = support_circuit(E, support, c);
    return out;
  }

  const RatMat Ez = E.select_columns(int_cols);
  const RatMat Er = E.select_columns(cont_cols);
  RatVec lo(nc), hi(nc), sign_cost(nc);
  for (std::size_t j = 0; j < nc; ++j) {
    lo[j] = std::min(Rat(0), gr[j]);
    hi[j] = std::max(Rat(0), gr[j]);
    sign_cost[j] = sgn(gr[j]);
  }
  const Rat gr_norm = norm1(gr);
  std::vector<Int> mag(ni);
  for (std::size_t i = 0; i < ni; ++i) mag[i] = Rat(abs(gz[i])).get_num();
  auto dominated = [&](const RatVec& zpart, const RatVec& rpart) {
    GraverCheck out;
    out.witness = zpart;
    out.witness->insert(out.witness->end(), rpart.begin(), rpart.end());
    return out;
  };
  std::vector<Int> step(ni, Int(0));
  for (;;) {
    RatVec zr(ni);
    bool at_zero = true, at_full = true;
    for (std::size_t i = 0; i < ni; ++i) {
      zr[i] = sgn(gz[i]) < 0 ? Rat(-step[i]) : Rat(step[i]);
      if (sgn(step[i]) != 0) at_zero = false;
      if (step[i] != mag[i]) at_full = false;
    }
    RatVec rhs = scale(Ez * zr, Rat(-1));
    if (at_zero) {
      // Nonzero y with zero integer part.
      if (nc > 0) {
        LpResult r = lp_solve(Er, rhs, lo, hi, scale(sign_cost, Rat(-1)));
        if (r.status == LpStatus::optimal && sgn(r.value) < 0) return dominated(zr, r.x);
      }
    } else if (at_full) {
      // A continuous part other than g's own.
      if (nc > 0) {
        LpResult r = lp_solve(Er, rhs, lo, hi, sign_cost);
        if (r.status == LpStatus::optimal && r.value < gr_norm) return dominated(zr, r.x);
      }
    } else if (nc == 0) {
      if (is_zero(rhs)) return dominated(zr, {});
    } else {
      LpResult r = lp_solve(Er, rhs, lo, hi, RatVec(nc, Rat(0)));
      if (r.status == LpStatus::optimal) return dominated(zr, r.x);
    }
    std::size_t k = 0;
    while (k < ni && step[k] == mag[k]) step[k++] = 0;
    if (k == ni) break;
    ++step[k];
  }
  GraverCheck out;
  out.member = true;
  return out;
}

bool mixed_graver_member(const RatMat& E, const MixedSpace& space, const RatVec& g)
{
  return mixed_graver_check(E, space, g).member;
}

NsseqPair nsseq_sets(std::size_t n)
{
  if (n < 1) throw std::invalid_argument("nsseq_sets: n must be at least 1");
  NsseqPair p;
  p.n = n;
  // Grid cell (i, j), 1-indexed, has position (i-1) n + j and contributes bit 2^(position-1).
  auto bit = [&](std::size_t i, std::size_t j) {
    Int v;
    mpz_ui_pow_ui(v.get_mpz_t(), 2, static_cast<unsigned long>((i - 1) * n + j - 1));
    return v;
  };
  for (std::size_t i = 1; i <= n; ++i) {
    Int row = 0, col = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      row += bit(i, j);
      col += bit(j, i);
    }
    p.S.push_back(row);
    p.T.push_back(col);
  }
  mpz_ui_pow_ui(p.V.get_mpz_t(), 2, static_cast<unsigned long>(n * n));
  p.V -= 1;
  return p;
}

bool nsseq_sums_ok(const NsseqPair& p)
{
  Int s = 0, t = 0;
  for (const auto& x : p.S) s += x;
  for (const auto& x : p.T) t += x;
  return s == p.V && t == p.V;
}

bool nsseq_subsets_distinct(const NsseqPair& p)
{
  const std::size_t ns = p.S.size(), nt = p.T.size();
  std::vector<Int> sum_s(std::size_t{1} << ns), sum_t(std::size_t{1} << nt);
  for (std::size_t mask = 1; mask < sum_s.size(); ++mask) {
    std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
    sum_s[mask] = sum_s[mask & (mask - 1)] + p.S[low];
  }
  for (std::size_t mask = 1; mask < sum_t.size(); ++mask) {
    std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
    sum_t[mask] = sum_t[mask & (mask - 1)] + p.T[low];
  }
  const std::size_t total = ns + nt;
  for (std::size_t a = 0; a < sum_s.size(); ++a)
    for (std::size_t b = 0; b < sum_t.size(); ++b) {
      std::size_t count = static_cast<std::size_t>(__builtin_popcountll(a) + __builtin_popcountll(b));
      if (count == 0 || count >= total) continue;
      if (sum_s[a] == sum_t[b]) return false;
    }
  return true;
}

NFoldWitness nfold_lb_instance(std::size_t n)
{
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("nfold_lb_instance: n must be positive and even");
  const std::size_t half = n / 2;
  NsseqPair sets = nsseq_sets(half);
  const Rat V = Rat(sets.V);
  RatMat I3(3, 3);
  for (std::size_t k = 0; k < 3; ++k) I3(k, k) = 1;
  RatMat ones{{1, 1, 1}};
  auto [layout_E, shape] = build_nfold(std::vector<RatMat>(n, I3), std::vector<RatMat>(n, ones));
  NFoldWitness w;
  w.layout_E = layout_E;
  w.layout_g = RatVec(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Rat frac = i < half ? Rat(sets.S[i]) / V : Rat(sets.T[i - half]) / V;
    Rat sign = i < half ? Rat(1) : Rat(-1);
    w.layout_g[3 * i] = -sign;
    w.layout_g[3 * i + 1] = sign * frac;
    w.layout_g[3 * i + 2] = sign * (1 - frac);
  }
  shape.column_order.assign(3 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    shape.column_order[3 * i] = i;
    shape.column_order[3 * i + 1] = n + 2 * i;
    shape.column_order[3 * i + 2] = n + 2 * i + 1;
  }
  w.shape = shape;
  w.space = MixedSpace{n, 2 * n};
  w.E = RatMat(layout_E.rows(), 3 * n);
  w.g = RatVec(3 * n);
  for (std::size_t k = 0; k < 3 * n; ++k) {
    std::size_t col = shape.column_order[k];
    for (std::size_t r = 0; r < layout_E.rows(); ++r) w.E(r, col) = layout_E(r, k);
    w.g[col] = w.layout_g[k];
  }
  return w;
}

}  // namespace mixgraver
