// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/acceptance.hpp"
#include "mixgraver/lp.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace mixgraver;

TEST_CASE("lp examples")
{
  LpResult r = lp_solve(RatMat{{1, 2}}, {3}, {0, 0}, {3, 3}, {0, 1});
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.x == RatVec{3, 0});
  CHECK(r.value == 0);

  CHECK(lp_solve(RatMat{{1}}, {5}, {0}, {3}, {1}).status == LpStatus::infeasible);
  CHECK(lp_solve(RatMat{{1, 1}}, {1}, {0, 0}, {0, 0}, {0, 0}).status == LpStatus::infeasible);
  CHECK_THROWS(lp_solve(RatMat{{1, 1}}, {1}, {0}, {1, 1}, {0, 0}));
}

TEST_CASE("piecewise-linear lp examples")
{
  SeparableObjective abs1{{PwlConvex::make({0}, {-1, 1}, 0)}};
  LpResult r = lp_pwl_solve(RatMat(0, 1), {}, {-2}, {2}, abs1);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.x == RatVec{0});
  CHECK(r.value == 0);

  SeparableObjective pen{{PwlConvex::penalized_linear(0, 10, Rat(1, 2), Rat(1, 2), true, true)}};
  r = lp_pwl_solve(RatMat(0, 1), {}, {0}, {1}, pen);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.x == RatVec{Rat(1, 2)});
  CHECK(r.value == 0);

  RatMat A{{1, 2, -1}};
  RatVec c{1, -1, 2};
  LpResult lin = lp_solve(A, {1}, {-1, -1, -1}, {2, 2, 2}, c);
  LpResult pwl = lp_pwl_solve(A, {1}, {-1, -1, -1}, {2, 2, 2}, SeparableObjective::linear(c));
  CHECK(lin.status == pwl.status);
  CHECK(lin.value == pwl.value);
}

TEST_CASE("coordinate range examples")
{
  auto r = coordinate_range(RatMat{{1, 1}}, {1}, {0, 0}, {1, 1}, 0);
  REQUIRE(r);
  CHECK(r->first == 0);
  CHECK(r->second == 1);
  auto single = coordinate_range(RatMat{{1, 1}}, {2}, {0, 0}, {1, 1}, 1);
  REQUIRE(single);
  CHECK(single->first == single->second);
  CHECK_FALSE(coordinate_range(RatMat{{1, 1}}, {3}, {0, 0}, {1, 1}, 0));
}

TEST_CASE("lp agrees with vertex enumeration on random systems")
{
  Rng rng(29);
  std::uniform_int_distribution<int> e(-3, 3), lo(-3, 0), w(0, 3), dims(1, 3);
  for (int t = 0; t < 300; ++t) {
    std::size_t m = static_cast<std::size_t>(dims(rng)), n = m + static_cast<std::size_t>(dims(rng));
    RatMat A(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = e(rng);
    if (rank(A) != m) continue;
    RatVec l(n), u(n), c(n), x0(n);
    for (std::size_t j = 0; j < n; ++j) {
      l[j] = lo(rng);
      u[j] = l[j] + w(rng);
      c[j] = e(rng);
      x0[j] = l[j];
    }
    RatVec b = A * x0;
    if (t % 3 == 0) b[0] += e(rng);
    LpResult r = lp_solve(A, b, l, u, c);
    auto ref = oracle::lp_min(A, b, l, u, c);
    CHECK((r.status == LpStatus::optimal) == ref.has_value());
    if (!ref || r.status != LpStatus::optimal) continue;
    CHECK(r.value == *ref);
    CHECK(A * r.x == b);
    for (std::size_t j = 0; j < n; ++j) CHECK((r.x[j] >= l[j] && r.x[j] <= u[j]));
    if (A * x0 == b) CHECK(r.value <= dot(c, x0));
    auto rng_j = coordinate_range(A, b, l, u, 0);
    REQUIRE(rng_j);
    RatVec e0(n, Rat(0));
    e0[0] = 1;
    CHECK(rng_j->first == *oracle::lp_min(A, b, l, u, e0));
    CHECK(rng_j->second == -*oracle::lp_min(A, b, l, u, scale(e0, Rat(-1))));
    LpResult again = lp_solve(A, b, l, u, c);
    CHECK(again.x == r.x);
  }
}

TEST_CASE("piecewise-linear lp agrees with a breakpoint grid oracle")
{
  Rng rng(31);
  std::uniform_int_distribution<int> e(-2, 2);
  for (int t = 0; t < 100; ++t) {
    // One row, two variables: the optimum sits where one variable is at a bound or breakpoint.
    RatMat A{{e(rng), e(rng)}};
    if (A(0, 0) == 0 && A(0, 1) == 0) continue;
    RatVec l{-3, -3}, u{3, 3};
    RatVec b{e(rng)};
    SeparableObjective obj{{random_pwl(rng), random_pwl(rng)}};
    LpResult r = lp_pwl_solve(A, b, l, u, obj);
    std::optional<Rat> best;
    for (std::size_t k = 0; k < 2; ++k) {
      std::vector<Rat> cands{l[k], u[k]};
      for (const auto& p : obj.terms[k].breakpoints) cands.push_back(p);
      for (const auto& v : cands) {
        if (v < l[k] || v > u[k]) continue;
        std::size_t o = 1 - k;
        RatVec x(2);
        x[k] = v;
        if (A(0, o) == 0) {
          if (A(0, k) * v != b[0]) continue;
          for (const auto& w : {l[o], u[o]}) {
            x[o] = w;
            Rat val = evaluate(obj, x);
            if (!best || val < *best) best = val;
          }
          continue;
        }
        x[o] = (b[0] - A(0, k) * v) / A(0, o);
        if (x[o] < l[o] || x[o] > u[o]) continue;
        Rat val = evaluate(obj, x);
        if (!best || val < *best) best = val;
      }
    }
    CHECK((r.status == LpStatus::optimal) == best.has_value());
    if (best && r.status == LpStatus::optimal) {
      CHECK(r.value == *best);
      CHECK(evaluate(obj, r.x) == r.value);
    }
  }
}

TEST_CASE("warm-started lp agrees with cold solves under shrinking and regrowing bounds")
{
  Rng rng(113);
  std::uniform_int_distribution<int> e(-2, 2), dims(1, 2);
  std::size_t compared = 0;
  for (int t = 0; t < 80; ++t) {
    std::size_t m = static_cast<std::size_t>(dims(rng)), n = m + 2 + static_cast<std::size_t>(dims(rng));
    RatMat A(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) A(i, j) = e(rng);
    RatVec l(n, Rat(-3)), u(n, Rat(3)), x0(n);
    SeparableObjective obj;
    for (std::size_t j = 0; j < n; ++j) {
      x0[j] = e(rng);
      obj.terms.push_back(random_pwl(rng));
    }
    RatVec b = A * x0;
    WarmLp warm(A, b, l, u, obj);
    for (int step = 0; step < 12; ++step) {
      RatVec lo = l, hi = u;
      for (std::size_t j = 0; j < n; ++j) {
        lo[j] = std::uniform_int_distribution<int>(-3, 1)(rng);
        hi[j] = lo[j] + std::uniform_int_distribution<int>(0, 3)(rng);
        if (hi[j] > 3) hi[j] = 3;
      }
      if (step % 4 == 0) lo = l, hi = u;
      warm.set_bounds(lo, hi);
      LpResult cold = lp_pwl_solve(A, b, lo, hi, obj);
      LpResult got = warm.result();
      CHECK(got.status == cold.status);
      if (got.status == LpStatus::optimal && cold.status == LpStatus::optimal) {
        ++compared;
        CHECK(got.value == cold.value);
        CHECK(A * got.x == b);
        for (std::size_t j = 0; j < n; ++j) CHECK((got.x[j] >= lo[j] && got.x[j] <= hi[j]));
      }
    }
  }
  CHECK(compared > 100);

  WarmLp box(RatMat{{1, 1}}, {1}, {0, 0}, {1, 1}, SeparableObjective::linear({1, 0}));
  CHECK_THROWS(box.set_bounds({-1, 0}, {1, 1}));
}
