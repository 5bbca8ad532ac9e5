// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/acceptance.hpp"
#include "mixgraver/decomposition.hpp"
#include "mixgraver/lp.hpp"
#include "mixgraver/solvers.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace mixgraver;

namespace {

MipInstance make(MixedSpace space, RatMat E, RatVec b, RatVec l, RatVec u, SeparableObjective obj)
{
  MipInstance inst{space, std::move(E), std::move(b), std::move(l), std::move(u), std::move(obj)};
  inst.validate();
  return inst;
}

MipInstance small_example()
{
  return make({1, 1}, RatMat{{1, 2}}, {3}, {0, 0}, {3, 3}, SeparableObjective::linear({0, 1}));
}

MipInstance all_integer(Rng& rng)
{
  std::uniform_int_distribution<int> e(-2, 2), lo(-2, 0), w(0, 3);
  for (;;) {
    MipInstance inst;
    std::size_t n = 3 + rng() % 2;
    inst.space = {n, 0};
    inst.E = RatMat(1, n);
    RatVec x0(n);
    for (std::size_t j = 0; j < n; ++j) {
      inst.E(0, j) = e(rng);
      inst.l.push_back(lo(rng));
      inst.u.push_back(inst.l[j] + w(rng));
      x0[j] = inst.u[j];
    }
    if (inst.E.max_abs() == 0) continue;
    inst.b = inst.E * x0;
    if (rng() % 4 == 0) inst.b[0] += 1;
    inst.objective = SeparableObjective{};
    for (std::size_t j = 0; j < n; ++j) inst.objective.terms.push_back(random_pwl(rng));
    inst.validate();
    return inst;
  }
}

}  // namespace

TEST_CASE("oracle examples")
{
  Solution s = oracle_solve(small_example(), 1000);
  REQUIRE(s.optimal());
  CHECK(s.x == RatVec{3, 0});
  CHECK(s.value == 0);

  MipInstance bad = small_example();
  bad.b = {10};
  CHECK(oracle_solve(bad, 1000).status == Status::infeasible);
  CHECK(oracle_solve(small_example(), 3).status == Status::cap_exceeded);
  CHECK(slice_count(small_example()) == 4);
}

TEST_CASE("oracle matches exhaustive search on integer instances")
{
  Rng rng(73);
  for (int t = 0; t < 60; ++t) {
    MipInstance inst = all_integer(rng);
    Solution s = oracle_solve(inst, 100000);
    auto ref = oracle::integer_min(inst);
    CHECK(s.optimal() == ref.has_value());
    if (ref && s.optimal()) CHECK(s.value == *ref);
  }
}

TEST_CASE("oracle output does not depend on the job count")
{
  Rng rng(79);
  for (int t = 0; t < 30; ++t) {
    MipInstance inst = random_few_rows_instance(rng);
    Solution a = oracle_solve(inst, 100000, 1), b = oracle_solve(inst, 100000, 3);
    CHECK(a.status == b.status);
    CHECK(a.x == b.x);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("integer few-rows dynamic program")
{
  MipInstance inst = make({2, 0}, RatMat{{1, 1}}, {2}, {0, 0}, {2, 2}, SeparableObjective::linear({1, 0}));
  Solution s = integer_solve_few_rows(inst, 10);
  REQUIRE(s.optimal());
  CHECK(s.x == RatVec{0, 2});

  MipInstance parity = make({2, 0}, RatMat{{2, 2}}, {1}, {0, 0}, {3, 3}, SeparableObjective::linear({0, 0}));
  CHECK(integer_solve_few_rows(parity, 10).status == Status::infeasible);
  CHECK_THROWS(integer_solve_few_rows(small_example(), 10));

  Rng rng(83);
  for (int t = 0; t < 50; ++t) {
    MipInstance r = all_integer(rng);
    Solution dp = integer_solve_few_rows(r, norm_bounds(1, std::max(Rat(1), r.E.max_abs())).improved_wt1);
    Solution ref = oracle_solve(r, 100000);
    CHECK(dp.status == ref.status);
    if (ref.optimal() && dp.optimal()) {
      CHECK(dp.value == ref.value);
      CHECK(dp.x == ref.x);
    }
  }
}

TEST_CASE("few-rows solver examples")
{
  Solution s = solve_few_rows(small_example());
  REQUIRE(s.optimal());
  CHECK(s.x == RatVec{3, 0});
  CHECK(s.value == 0);

  MipInstance cont = make({0, 3}, RatMat{{1, 1, -1}}, {1}, {-2, -2, -2}, {2, 2, 2},
                          SeparableObjective{{PwlConvex::make({0}, {-1, 1}, 0), PwlConvex::linear(2),
                                              PwlConvex::make({1}, {-1, 3}, 0)}});
  Solution c = solve_few_rows(cont);
  LpResult lp = lp_pwl_solve(cont.E, cont.b, cont.l, cont.u, cont.objective);
  REQUIRE(c.optimal());
  CHECK(c.value == lp.value);

  MipInstance split = make({0, 2}, RatMat{{2, 2}}, {1}, {0, 0}, {1, 1}, SeparableObjective::linear({1, 0}));
  Solution sp = solve_few_rows(split);
  REQUIRE(sp.optimal());
  CHECK(sp.value == 0);
}

TEST_CASE("few-rows solver matches the oracle with a proximity override and certification")
{
  Rng rng(89);
  for (int t = 0; t < 40; ++t) {
    MipInstance inst = random_few_rows_instance(rng);
    Solution ref = oracle_solve(inst, 100000);
    FewRowsOptions o;
    o.certify = true;
    Solution got = solve_few_rows(inst, o);
    CHECK(got.status == ref.status);
    if (ref.optimal() && got.optimal()) CHECK(got.value == ref.value);
    FewRowsOptions tiny;
    tiny.proximity = Rat(0);
    tiny.certify = true;
    Solution capped = solve_few_rows(inst, tiny);
    CHECK((capped.status == ref.status || capped.status == Status::cap_exceeded));
    if (capped.optimal()) CHECK(capped.value == ref.value);
  }
}

TEST_CASE("auxiliary program")
{
  MipInstance inst = small_example();
  AuxProgram huge = build_aux(inst, {3, 0}, 100);
  CHECK(huge.l_hat == RatVec{-3, 0});
  CHECK(huge.u_hat == RatVec{0, 3});
  AuxProgram zero = build_aux(inst, {3, 0}, 0);
  CHECK(zero.l_hat == RatVec{0, 0});
  CHECK(zero.u_hat == RatVec{0, 0});
  CHECK_THROWS(build_aux(inst, {2, 0}, 1));
  CHECK_THROWS(build_aux(inst, {Rat(1, 2), Rat(5, 4)}, 1));

  Rng rng(97);
  for (int t = 0; t < 50; ++t) {
    MipInstance r = random_few_rows_instance(rng);
    MipInstance restricted;
    if (!integer_restriction(r, restricted)) continue;
    Solution z = oracle_solve(restricted, 100000);
    if (!z.optimal()) continue;
    Rat P = std::uniform_int_distribution<int>(0, 3)(rng);
    AuxProgram aux = build_aux(r, z.x, P);
    for (std::size_t j = 0; j < r.dim(); ++j) {
      CHECK(aux.u_hat[j] - aux.l_hat[j] <= 2 * P);
      CHECK(aux.l_hat[j] <= 0);
      CHECK(aux.u_hat[j] >= 0);
    }
    CHECK(aux.lift(zeros(r.dim())) == z.x);
  }
}

TEST_CASE("branch and bound matches the oracle")
{
  Rng rng(101);
  for (int t = 0; t < 40; ++t) {
    MipInstance inst = random_few_rows_instance(rng);
    Solution a = branch_and_bound_solve(inst, 100000, 100000), b = oracle_solve(inst, 100000);
    CHECK(a.status == b.status);
    if (a.optimal() && b.optimal()) CHECK(a.value == b.value);
  }
}

TEST_CASE("two-stage solver examples")
{
  // z + y_i = 1 + i over two scenarios, z integer, y continuous.
  auto [L, shape] = build_two_stage({RatMat{{1}}, RatMat{{1}}}, {RatMat{{1}}, RatMat{{1}}});
  MipInstance inst = make({1, 2}, L, {1, 2}, {0, 0, 0}, {2, 2, 2}, SeparableObjective::linear({-1, 1, 1}));
  TwoStageOptions o;
  o.certify = true;
  Solution s = two_stage_solve(inst, shape, o);
  Solution ref = oracle_solve(inst, 1000);
  REQUIRE(s.optimal());
  CHECK(s.value == ref.value);
  CHECK(is_feasible_point(inst, s.x));

  MipInstance integral = make({3, 0}, L, {1, 2}, {0, 0, 0}, {2, 2, 2}, SeparableObjective::linear({1, 1, 1}));
  Solution si = two_stage_solve(integral, shape, o);
  MipInstance restricted;
  REQUIRE(integer_restriction(integral, restricted));
  Solution bb = branch_and_bound_solve(restricted, 1000, 1000);
  REQUIRE(si.optimal());
  CHECK(si.value == bb.value);

  CHECK_THROWS(two_stage_solve(inst, TwoStageShape{1, 1, 1, 1, {}}, o));
}

TEST_CASE("two-stage solver matches the oracle on random instances")
{
  Rng rng(103);
  for (int t = 0; t < 25; ++t) {
    RandomTwoStage item = random_two_stage_instance(rng);
    Solution ref = oracle_solve(item.instance, 100000);
    Solution got = two_stage_solve(item.instance, item.shape);
    CHECK(got.status == ref.status);
    if (got.optimal() && ref.optimal()) {
      CHECK(got.value == ref.value);
      CHECK(is_feasible_point(item.instance, got.x));
    }
  }
}

TEST_CASE("proximity distances")
{
  CHECK(proximity_distance({1, 2}, {1, 2}, NormKind::one) == 0);
  CHECK(proximity_distance({1, 2}, {0, Rat(5, 2)}, NormKind::one) == Rat(3, 2));
  CHECK(proximity_distance({1, 2}, {0, Rat(5, 2)}, NormKind::inf) == 1);

  MipInstance integral = make({2, 0}, RatMat{{1, 1}}, {2}, {0, 0}, {2, 2}, SeparableObjective::linear({1, 0}));
  Solution z = oracle_solve(integral, 100);
  auto d = closest_optimum_distance(integral, z.x, z.value, 100);
  REQUIRE(d);
  CHECK(*d == 0);

  // Flat objective: every feasible point is optimal.
  MipInstance flat = make({0, 2}, RatMat{{1, -1}}, {0}, {0, 0}, {2, 2}, SeparableObjective::linear({0, 0}));
  auto d2 = closest_optimum_distance(flat, {1, 1}, 0, 100);
  REQUIRE(d2);
  CHECK(*d2 == 0);

  MipInstance tilted = make({0, 2}, RatMat{{1, 1}}, {1}, {0, 0}, {1, 1}, SeparableObjective::linear({1, 0}));
  auto d3 = closest_optimum_distance(tilted, {1, 0}, 0, 100);
  REQUIRE(d3);
  CHECK(*d3 == 2);

  Rng rng(107);
  for (int t = 0; t < 30; ++t) {
    MipInstance inst = random_few_rows_instance(rng);
    if (inst.rows() != 1) continue;
    MipInstance restricted;
    if (!integer_restriction(inst, restricted)) continue;
    Solution zi = oracle_solve(restricted, 100000), xi = oracle_solve(inst, 100000);
    if (!zi.optimal() || !xi.optimal()) continue;
    auto dist = closest_optimum_distance(inst, zi.x, xi.value, 100000);
    REQUIRE(dist);
    CHECK(*dist <= proximity_distance(zi.x, xi.x, NormKind::one));
    CHECK(proximity_distance(zi.x, xi.x, NormKind::inf) <= proximity_distance(zi.x, xi.x, NormKind::one));
    CHECK(*dist <= norm_bounds(1, std::max(Rat(1), inst.E.max_abs())).improved_wt1);
  }
}
