// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

// Brute-force reference implementations used only by the tests.

#pragma once

#include "mixgraver/model.hpp"
#include "mixgraver/numerics.hpp"

#include <optional>
#include <vector>

namespace oracle {

using mixgraver::Int;
using mixgraver::MipInstance;
using mixgraver::Rat;
using mixgraver::RatMat;
using mixgraver::RatVec;

/// Gauss-Jordan solve of a square system; empty when singular.
inline std::optional<RatVec> gauss(RatMat A, RatVec b)
{
  const std::size_t n = A.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A(p, c) == 0) ++p;
    if (p == n) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) std::swap(A(c, j), A(p, j));
    std::swap(b[c], b[p]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || A(i, c) == 0) continue;
      Rat f = A(i, c) / A(c, c);
      for (std::size_t j = 0; j < n; ++j) A(i, j) -= f * A(c, j);
      b[i] -= f * b[c];
    }
  }
  RatVec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A(i, i);
  return x;
}

/// Every basic solution of {A x = b, l <= x <= u} for full-row-rank A.
inline std::vector<RatVec> vertices(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u)
{
  const std::size_t m = A.rows(), n = A.cols();
  std::vector<RatVec> out;
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(m), true);
  do {
    std::vector<std::size_t> basic, rest;
    for (std::size_t j = 0; j < n; ++j) (pick[j] ? basic : rest).push_back(j);
    for (std::size_t mask = 0; mask < (std::size_t{1} << rest.size()); ++mask) {
      RatVec x(n);
      RatVec rhs = b;
      for (std::size_t k = 0; k < rest.size(); ++k) {
        x[rest[k]] = (mask >> k & 1) ? u[rest[k]] : l[rest[k]];
        for (std::size_t i = 0; i < m; ++i) rhs[i] -= A(i, rest[k]) * x[rest[k]];
      }
      RatMat B(m, m);
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < m; ++k) B(i, k) = A(i, basic[k]);
      auto xb = gauss(B, rhs);
      if (!xb) continue;
      bool ok = true;
      for (std::size_t k = 0; k < m; ++k) {
        x[basic[k]] = (*xb)[k];
        if (x[basic[k]] < l[basic[k]] || x[basic[k]] > u[basic[k]]) ok = false;
      }
      if (ok) out.push_back(x);
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

inline std::optional<Rat> lp_min(const RatMat& A, const RatVec& b, const RatVec& l, const RatVec& u, const RatVec& c)
{
  std::optional<Rat> best;
  for (const auto& x : vertices(A, b, l, u)) {
    Rat v = mixgraver::dot(c, x);
    if (!best || v < *best) best = v;
  }
  return best;
}

/// Exhaustive search over an all-integer instance.
inline std::optional<Rat> integer_min(const MipInstance& inst)
{
  const std::size_t n = inst.dim();
  std::vector<Int> lo(n), hi(n);
  for (std::size_t j = 0; j < n; ++j) {
    lo[j] = mixgraver::ceil_int(inst.l[j]);
    hi[j] = mixgraver::floor_int(inst.u[j]);
    if (lo[j] > hi[j]) return std::nullopt;
  }
  std::optional<Rat> best;
  std::vector<Int> cur = lo;
  for (;;) {
    RatVec x(cur.begin(), cur.end());
    if (inst.E * x == inst.b) {
      Rat v = mixgraver::evaluate(inst.objective, x);
      if (!best || v < *best) best = v;
    }
    std::size_t k = 0;
    while (k < n && cur[k] == hi[k]) cur[k] = lo[k], ++k;
    if (k == n) break;
    ++cur[k];
  }
  return best;
}

}  // namespace oracle
