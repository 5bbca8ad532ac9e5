// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/acceptance.hpp"
#include "mixgraver/instance_io.hpp"
#include "mixgraver/reductions.hpp"
#include "mixgraver/solvers.hpp"

#include <doctest.h>

using namespace mixgraver;

namespace {

MipInstance single_column(MixedSpace space, Rat b)
{
  MipInstance inst{space, RatMat{{1}}, {b}, {0}, {3}, SeparableObjective::linear({1})};
  inst.validate();
  return inst;
}

Solution solve_reduced(const MilpToMip& red) { return decode(red.certificate, solve_few_rows(red.instance)); }

}  // namespace

TEST_CASE("milp-to-mip examples")
{
  MilpToMip cont = milp_to_mip(single_column({0, 1}, Rat(3, 2)));
  CHECK(is_integral(cont.instance.b));
  CHECK(is_integral(cont.instance.l));
  CHECK(is_integral(cont.instance.u));
  Solution s = solve_reduced(cont);
  REQUIRE(s.optimal());
  CHECK(s.x == RatVec{Rat(3, 2)});
  CHECK(s.value == Rat(3, 2));

  MilpToMip already = milp_to_mip(single_column({1, 0}, 2));
  Solution a = solve_reduced(already);
  REQUIRE(a.optimal());
  CHECK(a.x == RatVec{2});

  MilpToMip parity = milp_to_mip(single_column({1, 0}, Rat(1, 2)));
  CHECK(solve_reduced(parity).status == Status::infeasible);

  MipInstance pwl = single_column({0, 1}, 1);
  pwl.objective = SeparableObjective{{PwlConvex::make({1}, {0, 1}, 0)}};
  CHECK_THROWS_AS(milp_to_mip(pwl), std::invalid_argument);
}

TEST_CASE("milp-to-mip preserves optima on random fractional programs")
{
  Rng rng(109);
  for (int t = 0; t < 25; ++t) {
    MipInstance inst = random_fractional_milp(rng);
    MilpToMip red = milp_to_mip(inst);
    CHECK(is_integral(red.instance.b));
    CHECK(red.instance.E.max_abs() <= std::max(Rat(1), inst.E.max_abs()));
    Solution ref = oracle_solve(inst, 100000);
    Solution got = decode(red.certificate, oracle_solve(red.instance, 100000));
    CHECK(got.status == ref.status);
    if (got.optimal() && ref.optimal()) {
      CHECK(got.value == ref.value);
      CHECK(is_feasible_point(inst, got.x));
    }
  }
}

TEST_CASE("partition examples")
{
  PartitionReduction yes = partition_to_nfold({1, 2, 3});
  CHECK(yes.instance.E.max_abs() == 1);
  Solution s = oracle_solve(yes.instance, 100000);
  REQUIRE(s.optimal());
  auto side = decode_partition(yes, s);
  REQUIRE(side);
  Rat sum = 0;
  for (auto i : *side) sum += yes.a[i - 1];
  CHECK(sum == 3);

  CHECK(oracle_solve(partition_to_nfold({1, 1}).instance, 100000).optimal());
  PartitionReduction no = partition_to_nfold({1, 2});
  Solution n = oracle_solve(no.instance, 100000);
  CHECK(n.status == Status::infeasible);
  CHECK_FALSE(decode_partition(no, n));
}

TEST_CASE("subset-sum examples")
{
  SubsetSumReduction red = subsetsum_to_twostage({1, 2, 3}, 2, 5);
  CHECK(red.instance.E.max_abs() == 1);
  CHECK(matches_shape(red.instance.E.select_columns(red.shape.column_order), red.shape));
  Solution s = branch_and_bound_solve(red.instance, 1000000, 1000000);
  REQUIRE(s.optimal());
  CHECK(s.value == red.threshold);
  SubsetSumAnswer ans = decode_subsetsum(red, s);
  CHECK(ans.yes);
  CHECK(ans.chosen == std::vector<Int>{2, 3});

  SubsetSumReduction six = subsetsum_to_twostage({1, 2, 3}, 2, 6);
  Solution s6 = branch_and_bound_solve(six.instance, 1000000, 1000000);
  CHECK_FALSE(decode_subsetsum(six, s6).yes);
  if (s6.optimal()) CHECK(s6.value > six.threshold);

  SubsetSumReduction one = subsetsum_to_twostage({1}, 1, 1);
  Solution s1 = branch_and_bound_solve(one.instance, 100000, 100000);
  REQUIRE(s1.optimal());
  CHECK(s1.value == 0);
  CHECK(decode_subsetsum(one, s1).chosen == std::vector<Int>{1});

  CHECK_THROWS(subsetsum_to_twostage({1, 1}, 1, 1));
  CHECK_THROWS(subsetsum_to_twostage({1, 2}, 3, 1));
  CHECK_THROWS(subsetsum_to_twostage({0, 2}, 1, 1));
}

TEST_CASE("sidecars round-trip through the parser")
{
  MilpToMip red = milp_to_mip(single_column({0, 1}, Rat(3, 2)));
  auto kv = parse_sidecar(write_sidecar(red.certificate));
  CHECK(kv.at("reduction") == "milp-to-mip");
  CHECK(kv.at("original_columns") == "1");
  CHECK(kv.count("decode"));

  PartitionReduction part = partition_to_nfold({1, 2, 3});
  auto pk = parse_sidecar(write_sidecar(part));
  CHECK(pk.at("reduction") == "partition");
  CHECK(pk.count("first_side_columns"));

  SubsetSumReduction ss = subsetsum_to_twostage({1, 2, 3}, 2, 5);
  auto sk = parse_sidecar(write_sidecar(ss));
  CHECK(sk.at("reduction") == "subsetsum");
  CHECK(sk.at("count") == "2");
  CHECK(sk.at("target") == "5");
  CHECK(sk.count("indicator_columns_3"));

  InstanceFile f{ss.instance, ss.shape, std::nullopt};
  InstanceFile back = parse_instance(write_instance(f));
  CHECK(back.instance == ss.instance);
  REQUIRE(back.two_stage);
  CHECK(back.two_stage->column_order == ss.shape.column_order);
}
