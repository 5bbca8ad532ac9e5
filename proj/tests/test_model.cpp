// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/acceptance.hpp"
#include "mixgraver/instance_io.hpp"
#include "mixgraver/model.hpp"

#include <doctest.h>

using namespace mixgraver;

namespace {

PwlConvex absolute() { return PwlConvex::make({0}, {-1, 1}, 0); }

Rat draw(Rng& rng, int lo, int hi, int den)
{
  return make_rat(std::uniform_int_distribution<int>(lo * den, hi * den)(rng), den);
}

}  // namespace

TEST_CASE("evaluate examples")
{
  CHECK(evaluate(SeparableObjective::linear({2, 3}), {1, 1}) == 5);
  CHECK(absolute()(Rat(-3, 2)) == Rat(3, 2));
  PwlConvex dist = PwlConvex::penalized_linear(0, 1, Rat(1, 2), Rat(1, 2), true, true);
  CHECK(dist(0) == Rat(1, 2));
  CHECK(dist(Rat(1, 2)) == 0);
  CHECK(dist(2) == Rat(3, 2));
  CHECK_THROWS(evaluate(SeparableObjective::linear({1}), {1, 2}));
}

TEST_CASE("piecewise-linear validation")
{
  CHECK_THROWS_AS(PwlConvex::make({1, 0}, {0, 1, 2}, 0), std::invalid_argument);
  CHECK_THROWS_AS(PwlConvex::make({0}, {1, 0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(PwlConvex::make({0}, {1}, 0), std::invalid_argument);
  PwlConvex f = PwlConvex::make({-1, 2}, {-2, 0, 3}, 5);
  CHECK(f(0) == 5);
  CHECK(f(-1) == 5);
  CHECK(f(-3) == 9);
  CHECK(f(4) == 11);
  CHECK(f.shifted(2)(0) == f(2));
  CHECK(f.min_on(-5, 5) == 5);
  CHECK(f.max_on(-5, 5) == 14);
}

TEST_CASE("convexity properties of random terms")
{
  Rng rng(17);
  for (int i = 0; i < 1000; ++i) {
    PwlConvex f = random_pwl(rng);
    Rat a = draw(rng, -5, 5, 3), b = draw(rng, -5, 5, 3);
    CHECK(f((a + b) / 2) * 2 <= f(a) + f(b));
  }
}

TEST_CASE("superadditivity on same-orthant steps")
{
  CHECK(superadditivity_check(SeparableObjective::linear({2, -1}), {1, 1}, {3, -2}, {1, 0}));
  SeparableObjective abs1{{absolute()}};
  CHECK(superadditivity_check(abs1, {0}, {1}, {1}));
  CHECK_THROWS(superadditivity_check(abs1, {0}, {1}, {-1}));

  Rng rng(19);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int i = 0; i < 1000; ++i) {
    SeparableObjective obj{{random_pwl(rng), random_pwl(rng)}};
    RatVec x{draw(rng, -4, 4, 2), draw(rng, -4, 4, 2)}, y1(2), y2(2);
    for (std::size_t k = 0; k < 2; ++k) {
      int s = sign(rng) ? 1 : -1;
      y1[k] = s * draw(rng, 0, 3, 2);
      y2[k] = s * draw(rng, 0, 3, 2);
    }
    CHECK(superadditivity_check(obj, x, y1, y2));
  }
}

TEST_CASE("feasibility is exact")
{
  MipInstance inst;
  inst.space = {1, 1};
  inst.E = RatMat{{1, 2}};
  inst.b = {3};
  inst.l = {0, 0};
  inst.u = {3, 3};
  inst.objective = SeparableObjective::linear({0, 1});
  inst.validate();
  CHECK(is_feasible_point(inst, {3, 0}));
  CHECK(is_feasible_point(inst, {2, Rat(1, 2)}));
  CHECK_FALSE(is_feasible_point(inst, {Rat(3, 2), Rat(3, 4)}));
  CHECK_FALSE(is_feasible_point(inst, {3, Rat(-1, 1000000000)}));
  CHECK_FALSE(is_feasible_point(inst, {2, 1}));
}

TEST_CASE("instance validation")
{
  MipInstance inst;
  inst.space = {0, 2};
  inst.E = RatMat{{1, 1}, {2, 2}};
  inst.b = {1, 2};
  inst.l = {0, 0};
  inst.u = {1, 1};
  inst.objective = SeparableObjective::linear({0, 0});
  try {
    inst.validate();
    FAIL("dependent rows accepted");
  } catch (const InstanceError& e) {
    CHECK(e.kind() == InstanceError::Kind::dependent_rows);
  }
  inst.E = RatMat{{1, Rat(1, 2)}};
  inst.b = {1};
  CHECK_THROWS_AS(inst.validate(), InstanceError);
  inst.E = RatMat{{1, 1}};
  inst.l = {2, 0};
  CHECK_THROWS_AS(inst.validate(), InstanceError);
}

TEST_CASE("integer restriction rounds bounds inward")
{
  MipInstance inst;
  inst.space = {1, 1};
  inst.E = RatMat{{1, 1}};
  inst.b = {2};
  inst.l = {Rat(-1, 2), Rat(1, 3)};
  inst.u = {Rat(5, 2), Rat(2, 3)};
  inst.objective = SeparableObjective::linear({1, 1});
  MipInstance out;
  CHECK_FALSE(integer_restriction(inst, out));
  inst.u[1] = Rat(7, 3);
  REQUIRE(integer_restriction(inst, out));
  CHECK(out.space == MixedSpace{2, 0});
  CHECK(out.l == RatVec{0, 1});
  CHECK(out.u == RatVec{2, 2});
}

TEST_CASE("instance text format")
{
  const char* text = R"(# small example
SPACE 1 1
MATRIX 1 2
1 2
RHS 3
LOWER 0 0
UPPER 3 3
OBJ
LIN 0
PWL 0 1/2 | -1 1
)";
  InstanceFile f = parse_instance(text);
  CHECK(f.instance.E == RatMat{{1, 2}});
  CHECK(f.instance.objective.terms[1](Rat(1, 2)) == Rat(-1, 2));
  CHECK(parse_instance(write_instance(f)).instance == f.instance);

  try {
    parse_instance("SPACE 1 0\nMATRIX 1 1\nx\n");
    FAIL("bad matrix row accepted");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_instance("SPACE 0 1\nMATRIX 1 1\n1\nRHS 1\nLOWER 0\nUPPER 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("SPACE 0 2\nMATRIX 1 2\n1 1\nRHS 1\nLOWER 0 0\nUPPER 1 1\nOBJ\nLIN 0\nLIN 0\nLAYOUT 2 1\n"),
                  ParseError);
}

TEST_CASE("random instances survive a text round trip")
{
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    MipInstance inst = random_few_rows_instance(rng);
    std::string once = write_instance(inst);
    CHECK(parse_instance(once).instance == inst);
    CHECK(write_instance(parse_instance(once)) == once);
    RandomTwoStage ts = random_two_stage_instance(rng);
    InstanceFile file{ts.instance, ts.shape, std::nullopt};
    InstanceFile back = parse_instance(write_instance(file));
    CHECK(back.instance == ts.instance);
    REQUIRE(back.two_stage);
    CHECK(*back.two_stage == ts.shape);
  }
}
