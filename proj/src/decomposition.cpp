// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/decomposition.hpp"

#include "mixgraver/lp.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mixgraver {

Rat rat_pow(const Rat& base, unsigned long exp)
{
  Rat r = 1;
  for (unsigned long k = 0; k < exp; ++k) r *= base;
  return r;
}

namespace {

std::size_t common_dim(const std::vector<RatVec>& vs)
{
  std::size_t dim = vs.empty() ? 0 : vs[0].size();
  for (const auto& v : vs)
    if (v.size() != dim) throw std::invalid_argument("vectors of different dimension");
  return dim;
}

RatVec sum_of(const std::vector<RatVec>& vs, std::size_t dim)
{
  RatVec s = zeros(dim);
  for (const auto& v : vs)
    for (std::size_t k = 0; k < dim; ++k) s[k] += v[k];
  return s;
}

}  // namespace

std::vector<std::size_t> steinitz_reorder(const std::vector<RatVec>& vectors, std::size_t d)
{
  const std::size_t dim = common_dim(vectors);
  if (d < dim) throw std::invalid_argument("steinitz_reorder: d is smaller than the vector dimension");
  if (!is_zero(sum_of(vectors, dim))) throw std::invalid_argument("steinitz_reorder: vectors do not sum to zero");
  const std::size_t N = vectors.size();
  std::vector<std::size_t> active(N);
  for (std::size_t i = 0; i < N; ++i) active[i] = i;
  std::vector<std::size_t> tail;
  // Shrink the active set one vector at a time, keeping fractional weights mu in [0,1] with
  // sum mu_v v = 0 and sum mu = k - 1 - dim; a vertex of that polytope has a zero weight to drop.
  for (std::size_t k = N; k > dim; --k) {
    RatMat A(dim + 1, k);
    RatVec b(dim + 1, Rat(0));
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t r = 0; r < dim; ++r) A(r, c) = vectors[active[c]][r];
      A(dim, c) = 1;
    }
    b[dim] = Rat(static_cast<long>(k - 1 - dim));
    LpResult vert = lp_solve(A, b, RatVec(k, Rat(0)), RatVec(k, Rat(1)), RatVec(k, Rat(0)));
    if (vert.status != LpStatus::optimal) throw std::logic_error("steinitz_reorder: weight polytope empty");
    std::size_t drop = k;
    for (std::size_t c = 0; c < k; ++c)
      if (sgn(vert.x[c]) == 0) {
        drop = c;
        break;
      }
    if (drop == k) throw std::logic_error("steinitz_reorder: vertex without a zero weight");
    tail.push_back(active[drop]);
    active.erase(active.begin() + static_cast<long>(drop));
  }
  std::vector<std::size_t> order = active;
  order.insert(order.end(), tail.rbegin(), tail.rend());
  if (!steinitz_prefix_ok(vectors, order, d)) throw std::logic_error("steinitz_reorder: prefix bound violated");
  return order;
}

bool steinitz_prefix_ok(const std::vector<RatVec>& vectors, const std::vector<std::size_t>& order, std::size_t d)
{
  const std::size_t dim = common_dim(vectors);
  if (order.size() != vectors.size()) return false;
  std::vector<bool> seen(vectors.size(), false);
  Rat B = 0;
  for (const auto& v : vectors) B = std::max(B, norm_inf(v));
  Rat limit = B * Rat(static_cast<long>(d));
  RatVec prefix = zeros(dim);
  for (auto i : order) {
    if (i >= vectors.size() || seen[i]) return false;
    seen[i] = true;
    prefix = add(prefix, vectors[i]);
    if (norm_inf(prefix) > limit) return false;
  }
  return true;
}

std::vector<RatVec> pack_coefficients(const std::vector<RatVec>& xs, const RatVec& alpha, std::size_t d)
{
  const std::size_t n = xs.size();
  const std::size_t dim = common_dim(xs);
  if (alpha.size() != n) throw std::invalid_argument("pack_coefficients: alpha has wrong length");
  if (dim != d) throw std::invalid_argument("pack_coefficients: vectors must live in Z^d");
  for (const auto& x : xs)
    if (!is_integral(x)) throw std::invalid_argument("pack_coefficients: vectors must be integral");
  for (const auto& a : alpha)
    if (sgn(a) < 0) throw std::invalid_argument("pack_coefficients: alpha must be nonnegative");
  auto combo = [&](const RatVec& beta) {
    RatVec s = zeros(dim);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < dim; ++k) s[k] += beta[i] * xs[i][k];
    return s;
  };
  if (!is_integral(combo(alpha))) throw std::invalid_argument("pack_coefficients: sum alpha_i x^i is not integral");
  const Rat D = Rat(static_cast<long>(d));
  auto total = [](const RatVec& v) {
    Rat s = 0;
    for (const auto& a : v) s += a;
    return s;
  };
  if (total(alpha) <= D) return {alpha};

  std::vector<RatVec> blocks;
  RatVec rem = alpha;
  for (std::size_t round = 0; total(rem) > D; ++round) {
    if (round > 100 * (n + 1)) throw std::logic_error("pack_coefficients: no progress");
    Rat X = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(rem[i]) > 0) X = std::max(X, norm_inf(xs[i]));
    const long Z = static_cast<long>(d) * X.get_num().get_si();
    // Variables: beta (n) then one slack for sum beta + slack = d.
    RatMat A(dim + 1, n + 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < dim; ++k) A(k, i) = xs[i][k];
      A(dim, i) = 1;
    }
    A(dim, n) = 1;
    RatVec lo(n + 1, Rat(0)), hi = rem;
    hi.push_back(D);
    RatVec cost(n + 1, Rat(-1));
    cost[n] = 0;
    RatVec best;
    Rat best_mass = 0;
    std::vector<long> z(dim, -Z);
    for (;;) {
      RatVec b(dim + 1);
      for (std::size_t k = 0; k < dim; ++k) b[k] = Rat(z[k]);
      b[dim] = D;
      LpResult r = lp_solve(A, b, lo, hi, cost);
      if (r.status == LpStatus::optimal && -r.value > best_mass) {
        best_mass = -r.value;
        best = RatVec(r.x.begin(), r.x.begin() + static_cast<long>(n));
      }
      std::size_t k = 0;
      while (k < dim && z[k] == Z) z[k++] = -Z;
      if (k == dim) break;
      ++z[k];
    }
    if (sgn(best_mass) == 0) throw std::logic_error("pack_coefficients: no integral sub-combination found");
    blocks.push_back(best);
    rem = sub(rem, best);
  }
  if (!is_zero(rem)) blocks.push_back(rem);
  // Merge pieces of weight at most d/2 pairwise.
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t a = 0; a < blocks.size() && !merged; ++a) {
      if (total(blocks[a]) * 2 > D) continue;
      for (std::size_t b = a + 1; b < blocks.size(); ++b) {
        if (total(blocks[b]) * 2 > D) continue;
        blocks[a] = add(blocks[a], blocks[b]);
        blocks.erase(blocks.begin() + static_cast<long>(b));
        merged = true;
        break;
      }
    }
  }
  return blocks;
}

bool packing_postconditions_ok(const std::vector<RatVec>& xs, const RatVec& alpha, std::size_t d,
                               const std::vector<RatVec>& betas)
{
  const Rat D = Rat(static_cast<long>(d));
  RatVec sum = zeros(alpha.size());
  std::size_t light = 0;
  for (const auto& beta : betas) {
    if (beta.size() != alpha.size()) return false;
    Rat mass = 0;
    RatVec c = zeros(xs.empty() ? 0 : xs[0].size());
    for (std::size_t i = 0; i < beta.size(); ++i) {
      if (sgn(beta[i]) < 0 || beta[i] > alpha[i]) return false;
      mass += beta[i];
      for (std::size_t k = 0; k < c.size(); ++k) c[k] += beta[i] * xs[i][k];
    }
    if (!is_integral(c)) return false;
    if (mass > D) return false;
    if (mass * 2 < D) ++light;
    sum = add(sum, beta);
  }
  if (sum != alpha) return false;
  return light <= 1;
}

std::vector<RatVec> build_graver_sequence(const RatMat& E, const RatVec& g)
{
  if (g.size() != E.cols()) throw std::invalid_argument("build_graver_sequence: dimension mismatch");
  if (!is_zero(E * g)) throw std::invalid_argument("build_graver_sequence: g is not in the kernel");
  std::vector<RatVec> seq;
  auto copies = [&](const RatVec& col, const Int& count) {
    RatVec neg = scale(col, Rat(-1));
    Int c = abs(count);
    for (Int k = 0; k < c; ++k) seq.push_back(sgn(count) > 0 ? col : neg);
  };
  for (std::size_t i = 0; i < E.cols(); ++i) copies(E.col(i), round_toward_zero(g[i]).integer_part);
  std::vector<RatVec> types;
  std::vector<Rat> mass;
  for (std::size_t i = 0; i < E.cols(); ++i) {
    RatVec col = E.col(i);
    auto it = std::find(types.begin(), types.end(), col);
    std::size_t t = static_cast<std::size_t>(it - types.begin());
    if (it == types.end()) {
      types.push_back(col);
      mass.push_back(0);
    }
    mass[t] += round_toward_zero(g[i]).frac_part;
  }
  RatVec o = zeros(E.rows());
  for (std::size_t t = 0; t < types.size(); ++t) {
    RoundSplit split = round_toward_zero(mass[t]);
    copies(types[t], split.integer_part);
    o = add(o, scale(types[t], split.frac_part));
  }
  if (!is_zero(o)) seq.push_back(o);
  return seq;
}

namespace {

// Nonzero integral kernel vector conformal to h, searched over the box of integer points below |h|.
bool find_integral_kernel_below(const RatMat& E, const RatVec& h, RatVec& out)
{
  const std::size_t n = h.size();
  std::vector<Int> cap(n);
  double box = 1;
  for (std::size_t i = 0; i < n; ++i) {
    cap[i] = floor_int(abs(h[i]));
    box *= cap[i].get_d() + 1;
  }
  if (box > 2e5) return false;
  std::vector<Int> z(n, Int(0));
  for (;;) {
    std::size_t k = 0;
    while (k < n && z[k] == cap[k]) z[k++] = 0;
    if (k == n) return false;
    ++z[k];
    RatVec v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = sgn(h[i]) < 0 ? Rat(-z[i]) : Rat(z[i]);
    if (is_zero(E * v)) {
      out = v;
      return true;
    }
  }
}

}  // namespace

OneFatDecomposition one_fat_decompose(const RatMat& E, const MixedSpace& space, const RatVec& x)
{
  if (x.size() != E.cols() || space.dim() != E.cols()) throw std::invalid_argument("one_fat_decompose: dimension mismatch");
  if (!is_zero(E * x)) throw std::invalid_argument("one_fat_decompose: x is not in the kernel");
  for (std::size_t i = 0; i < space.n_int; ++i)
    if (!is_integer(x[i])) throw std::invalid_argument("one_fat_decompose: fractional integer coordinate");
  const std::size_t n = x.size();
  OneFatDecomposition out;
  RatVec h = x;
  for (;;) {
    // Per-coordinate signed unit copies, then the remainder of the fractional parts.
    std::vector<RatVec> seq;
    std::vector<long> owner;  // coordinate of a copy, -1 for the remainder
    for (std::size_t i = 0; i < n; ++i) {
      Int c = abs(round_toward_zero(h[i]).integer_part);
      RatVec col = sgn(h[i]) < 0 ? scale(E.col(i), Rat(-1)) : E.col(i);
      for (Int k = 0; k < c; ++k) {
        seq.push_back(col);
        owner.push_back(static_cast<long>(i));
      }
    }
    RatVec frac(n);
    for (std::size_t i = 0; i < n; ++i) frac[i] = round_toward_zero(h[i]).frac_part;
    RatVec o = E * frac;
    if (!is_zero(o)) {
      seq.push_back(o);
      owner.push_back(-1);
    }
    if (seq.empty()) break;
    auto order = steinitz_reorder(seq, std::max<std::size_t>(E.rows(), 1));
    std::map<RatVec, std::size_t> first_seen;
    RatVec prefix = zeros(E.rows());
    first_seen[prefix] = 0;
    std::size_t a = 0, b = 0;
    bool found = false;
    for (std::size_t k = 0; k < order.size() && !found; ++k) {
      prefix = add(prefix, seq[order[k]]);
      auto it = first_seen.find(prefix);
      if (it != first_seen.end() && !(it->second == 0 && k + 1 == order.size())) {
        a = it->second;
        b = k + 1;
        found = true;
      } else if (it == first_seen.end()) {
        first_seen[prefix] = k + 1;
      }
    }
    if (!found) break;
    bool remainder_inside = false;
    RatVec inside = zeros(n), outside = zeros(n);
    for (std::size_t k = 0; k < order.size(); ++k) {
      long who = owner[order[k]];
      bool in = k >= a && k < b;
      if (who < 0) {
        remainder_inside = in;
        continue;
      }
      RatVec& side = in ? inside : outside;
      side[static_cast<std::size_t>(who)] += sgn(h[static_cast<std::size_t>(who)]);
    }
    RatVec part = remainder_inside ? outside : inside;
    if (is_zero(part)) break;
    out.integer_parts.push_back(part);
    h = sub(h, part);
  }
  for (RatVec part; find_integral_kernel_below(E, h, part);) {
    out.integer_parts.push_back(part);
    h = sub(h, part);
  }
  out.fat = h;
  return out;
}

NormBounds norm_bounds(std::size_t m, const Rat& delta)
{
  if (m < 1) throw std::invalid_argument("norm_bounds: m must be at least 1");
  if (delta < 1) throw std::invalid_argument("norm_bounds: delta must be at least 1");
  const Rat M = Rat(static_cast<long>(m));
  const unsigned long mu = static_cast<unsigned long>(m);
  NormBounds nb;
  nb.basic_1norm = rat_pow(2 * delta * rat_pow(2 * M * delta + 1, mu) + 1, mu);
  nb.corollary_wt1 = rat_pow(2 * M * delta * rat_pow(2 * delta + 1, mu) + 1, mu);
  nb.improved_g1 = rat_pow(2 * M * M * delta + 1, mu + 1);
  nb.improved_wt1 = rat_pow(2 * M * M * delta + 1, 2 * mu + 2);
  return nb;
}

}  // namespace mixgraver
