// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/acceptance.hpp"
#include "mixgraver/decomposition.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace mixgraver;

namespace {

Rat max_prefix(const std::vector<RatVec>& vs, const std::vector<std::size_t>& order)
{
  RatVec p(vs[0].size(), Rat(0));
  Rat worst = 0;
  for (auto k : order) {
    p = add(p, vs[k]);
    worst = std::max(worst, norm_inf(p));
  }
  return worst;
}

void check_decomposition(const RatMat& E, const MixedSpace& space, const RatVec& x, const OneFatDecomposition& dec)
{
  RatVec total = dec.fat;
  CHECK(conformal_leq(dec.fat, x));
  CHECK(is_zero(E * dec.fat));
  for (std::size_t j = 0; j < space.n_int; ++j) CHECK(is_integer(dec.fat[j]));
  for (const auto& p : dec.integer_parts) {
    CHECK(is_integral(p));
    CHECK_FALSE(is_zero(p));
    CHECK(is_zero(E * p));
    CHECK(conformal_leq(p, x));
    total = add(total, p);
  }
  CHECK(total == x);
}

}  // namespace

TEST_CASE("steinitz examples")
{
  std::vector<RatVec> one{{1}, {1}, {-1}, {-1}};
  auto order = steinitz_reorder(one, 1);
  CHECK(max_prefix(one, order) <= 1);

  std::vector<RatVec> two{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  CHECK(max_prefix(two, steinitz_reorder(two, 2)) <= 2);

  CHECK_THROWS(steinitz_reorder({{1}, {1}}, 1));
  CHECK_THROWS(steinitz_reorder({{1, 0}, {-1, 0}}, 1));
}

TEST_CASE("steinitz on eight sign vectors matches exhaustive search")
{
  Rng rng(37);
  std::uniform_int_distribution<int> bit(0, 1);
  for (int t = 0; t < 20; ++t) {
    std::vector<RatVec> vs;
    for (int k = 0; k < 4; ++k) {
      RatVec v{bit(rng) ? 1 : -1, bit(rng) ? 1 : -1};
      vs.push_back(v);
      vs.push_back(scale(v, Rat(-1)));
    }
    std::shuffle(vs.begin(), vs.end(), rng);
    std::vector<std::size_t> perm(vs.size());
    std::iota(perm.begin(), perm.end(), 0);
    bool exists = false;
    do {
      if (max_prefix(vs, perm) <= 2) exists = true;
    } while (!exists && std::next_permutation(perm.begin(), perm.end()));
    CHECK(exists);
    auto order = steinitz_reorder(vs, 2);
    CHECK(steinitz_prefix_ok(vs, order, 2));
    CHECK(max_prefix(vs, order) <= 2);
  }
}

TEST_CASE("packing examples")
{
  std::vector<RatVec> xs{{1}, {1}, {1}};
  RatVec alpha{Rat(1, 2), Rat(7, 10), Rat(4, 5)};
  auto betas = pack_coefficients(xs, alpha, 1);
  CHECK(packing_postconditions_ok(xs, alpha, 1, betas));
  CHECK(betas.size() >= 2);

  auto single = pack_coefficients({{1}, {1}}, {Rat(1, 2), Rat(1, 2)}, 1);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == RatVec{Rat(1, 2), Rat(1, 2)});

  auto units = pack_coefficients({{1}, {1}}, {1, 1}, 1);
  CHECK(units.size() == 2);
  CHECK(packing_postconditions_ok({{1}, {1}}, {1, 1}, 1, units));

  CHECK_THROWS(pack_coefficients({{1}, {1}}, {Rat(1, 2), Rat(1, 3)}, 1));
  CHECK_FALSE(packing_postconditions_ok(xs, alpha, 1, {alpha}));
}

TEST_CASE("graver sequence examples")
{
  auto s1 = build_graver_sequence(RatMat{{1, 1}}, {1, -1});
  std::vector<RatVec> expect1{{1}, {-1}};
  std::sort(s1.begin(), s1.end());
  std::sort(expect1.begin(), expect1.end());
  CHECK(s1 == expect1);

  CHECK(build_graver_sequence(RatMat{{1, 1}}, {Rat(1, 2), Rat(-1, 2)}).empty());

  auto s3 = build_graver_sequence(RatMat{{1, 2}}, {2, -1});
  std::vector<RatVec> expect3{{-2}, {1}, {1}};
  std::sort(s3.begin(), s3.end());
  CHECK(s3 == expect3);

  CHECK_THROWS(build_graver_sequence(RatMat{{1, 1}}, {1, 1}));
}

TEST_CASE("graver sequences sum to zero and stay bounded")
{
  Rng rng(41);
  std::uniform_int_distribution<int> e(-2, 2);
  for (int t = 0; t < 100; ++t) {
    RatMat E(1 + t % 2, 4);
    for (std::size_t i = 0; i < E.rows(); ++i)
      for (std::size_t j = 0; j < 4; ++j) E(i, j) = e(rng);
    auto K = kernel_basis(E);
    if (K.empty()) continue;
    RatVec g(4, Rat(0));
    for (const auto& k : K) g = add(g, scale(k, make_rat(e(rng) * 3 + 1, 2)));
    auto seq = build_graver_sequence(E, g);
    RatVec total(E.rows(), Rat(0));
    Rat delta = std::max(Rat(1), E.max_abs());
    Rat cap = delta * static_cast<long>(E.rows()) * rat_pow(2 * delta + 1, E.rows());
    for (const auto& v : seq) {
      CHECK(is_integral(v));
      CHECK(norm_inf(v) <= cap);
      total = add(total, v);
    }
    CHECK(is_zero(total));
  }
}

TEST_CASE("one-fat decomposition examples")
{
  RatMat E{{1, 1}};
  MixedSpace cont{0, 2};
  auto integral = one_fat_decompose(E, cont, {3, -3});
  CHECK(is_zero(integral.fat));
  check_decomposition(E, cont, {3, -3}, integral);

  auto small = one_fat_decompose(E, cont, {Rat(1, 2), Rat(-1, 2)});
  CHECK(small.fat == RatVec{Rat(1, 2), Rat(-1, 2)});
  CHECK(small.integer_parts.empty());

  RatVec x{Rat(5, 2), Rat(-5, 2)};
  auto dec = one_fat_decompose(E, cont, x);
  check_decomposition(E, cont, x, dec);
  CHECK(norm1(dec.fat) <= norm_bounds(1, 1).corollary_wt1);
  for (const auto& p : dec.integer_parts) CHECK(norm1(p) == 2);

  CHECK_THROWS(one_fat_decompose(E, cont, {1, 1}));
  CHECK_THROWS(one_fat_decompose(E, MixedSpace{1, 1}, {Rat(1, 2), Rat(-1, 2)}));
}

TEST_CASE("repeated continuous columns can push the fat element past both closed-form bounds")
{
  RatMat E{{1, 1, 1, 1, 1}};
  MixedSpace cont{0, 5};
  const Rat nine_tenths = make_rat(9, 10);
  RatVec x{nine_tenths, nine_tenths, nine_tenths, nine_tenths, make_rat(-18, 5)};
  auto dec = one_fat_decompose(E, cont, x);
  check_decomposition(E, cont, x, dec);
  CHECK(dec.integer_parts.empty());
  CHECK(dec.fat == x);
  NormBounds nb = norm_bounds(1, 1);
  CHECK(norm1(dec.fat) == make_rat(36, 5));
  CHECK(norm1(dec.fat) > std::max(nb.corollary_wt1, nb.basic_1norm));
}

TEST_CASE("one-fat decompositions are valid on random kernel vectors")
{
  Rng rng(43);
  std::uniform_int_distribution<int> e(-2, 2), big(-12, 12);
  for (int t = 0; t < 60; ++t) {
    std::size_t m = 1 + static_cast<std::size_t>(t % 2), n = 3 + static_cast<std::size_t>(t % 3);
    RatMat E(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) E(i, j) = e(rng);
    auto K = kernel_basis(E);
    if (K.empty()) continue;
    RatVec x(n, Rat(0));
    for (const auto& k : K) x = add(x, scale(k, make_rat(big(rng), 4)));
    MixedSpace space{0, n};
    auto dec = one_fat_decompose(E, space, x);
    check_decomposition(E, space, x, dec);
  }
}

TEST_CASE("norm bounds")
{
  NormBounds a = norm_bounds(1, 1);
  CHECK(a.improved_g1 == 9);
  CHECK(a.improved_wt1 == 81);
  CHECK(a.basic_1norm == 7);
  CHECK(a.corollary_wt1 == 7);
  CHECK(norm_bounds(2, 1).improved_g1 == 729);
  CHECK(norm_bounds(2, 1).corollary_wt1 == 1369);
  CHECK(norm_bounds(2, 1).basic_1norm == 2601);
  for (std::size_t m = 1; m <= 3; ++m)
    for (int d = 1; d <= 3; ++d) {
      NormBounds lo = norm_bounds(m, d), up_m = norm_bounds(m + 1, d), up_d = norm_bounds(m, d + 1);
      CHECK(lo.basic_1norm > 0);
      CHECK(lo.improved_g1 <= up_m.improved_g1);
      CHECK(lo.improved_wt1 <= up_d.improved_wt1);
      CHECK(lo.corollary_wt1 <= up_m.corollary_wt1);
      CHECK(lo.basic_1norm <= up_d.basic_1norm);
    }
  CHECK_THROWS(norm_bounds(0, 1));
  CHECK_THROWS(norm_bounds(1, Rat(1, 2)));
}
