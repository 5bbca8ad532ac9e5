// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/numerics.hpp"

#include <doctest.h>

#include <random>

using namespace mixgraver;

TEST_CASE("conformal order examples")
{
  CHECK(conformal_leq({1, Rat(-1, 2)}, {2, -1}));
  CHECK_FALSE(conformal_leq({1, 1}, {1, -2}));
  CHECK(conformal_leq({0, 0}, {5, -7}));
  CHECK_THROWS_AS(conformal_leq({1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("conformal order is a partial order on random triples")
{
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> d(-2, 2);
  auto draw = [&] {
    RatVec v(3);
    for (auto& e : v) e = make_rat(d(rng), 2);
    return v;
  };
  for (int i = 0; i < 2000; ++i) {
    RatVec x = draw(), y = draw(), z = draw();
    CHECK(conformal_leq(x, x));
    if (conformal_leq(x, y) && conformal_leq(y, x)) CHECK(x == y);
    if (conformal_leq(x, y) && conformal_leq(y, z)) CHECK(conformal_leq(x, z));
  }
}

TEST_CASE("rounding toward zero")
{
  auto a = round_toward_zero(Rat(3, 2));
  CHECK(a.integer_part == 1);
  CHECK(a.frac_part == Rat(1, 2));
  auto b = round_toward_zero(Rat(-3, 2));
  CHECK(b.integer_part == -1);
  CHECK(b.frac_part == Rat(-1, 2));
  auto c = round_toward_zero(Rat(2));
  CHECK(c.integer_part == 2);
  CHECK(c.frac_part == 0);
}

TEST_CASE("rounding split is conformal and exact on random rationals")
{
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 9);
  for (int i = 0; i < 1000; ++i) {
    Rat x = make_rat(num(rng), den(rng));
    auto s = round_toward_zero(x);
    CHECK(Rat(s.integer_part) + s.frac_part == x);
    CHECK(abs(s.frac_part) < 1);
    CHECK(conformal_leq({s.frac_part}, {x}));
    CHECK(conformal_leq({Rat(s.integer_part)}, {x}));
  }
}

TEST_CASE("rationals are stored reduced")
{
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> num(-100, 100), den(1, 100);
  for (int i = 0; i < 500; ++i) {
    int p = num(rng), q = den(rng);
    Rat x = make_rat(p, q);
    Int g;
    mpz_gcd(g.get_mpz_t(), Int(abs(x.get_num())).get_mpz_t(), x.get_den().get_mpz_t());
    CHECK(g == 1);
    CHECK(x.get_den() > 0);
    CHECK(parse_rat(to_string(x)) == x);
  }
  CHECK(make_rat(4, -6) == Rat(-2, 3));
}

TEST_CASE("rational text forms")
{
  CHECK(to_string(Rat(-3, 4)) == "-3/4");
  CHECK(to_string(Rat(5)) == "5");
  CHECK(to_fraction_string(Rat(0)) == "0/1");
  CHECK(parse_rat("-6/4") == make_rat(-3, 2));
  CHECK_THROWS(parse_rat("6/-4"));
  CHECK(parse_rat("-7") == Rat(-7));
  CHECK_THROWS(parse_rat("1/0"));
  CHECK_THROWS(parse_rat("abc"));
}

TEST_CASE("kernel basis examples")
{
  auto k1 = kernel_basis(RatMat{{1, 1}});
  REQUIRE(k1.size() == 1);
  CHECK(k1[0][0] == -k1[0][1]);
  CHECK(k1[0][0] != 0);

  CHECK(kernel_basis(RatMat{{1, 0}, {0, 1}}).empty());

  RatMat E{{1, 2, 3}};
  auto k3 = kernel_basis(E);
  REQUIRE(k3.size() == 2);
  for (const auto& v : k3) CHECK(is_zero(E * v));
  RatMat stacked(2, 3);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) stacked(i, j) = k3[i][j];
  CHECK(rank(stacked) == 2);
}

TEST_CASE("kernel basis spans the kernel of random matrices")
{
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> d(-2, 2), dim(1, 4);
  for (int t = 0; t < 200; ++t) {
    std::size_t m = static_cast<std::size_t>(dim(rng)), n = static_cast<std::size_t>(dim(rng) + 1);
    RatMat E(m, n);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j) E(i, j) = d(rng);
    auto K = kernel_basis(E);
    CHECK(K.size() == n - rank(E));
    for (const auto& k : K) CHECK(is_zero(E * k));
    if (!K.empty()) {
      RatMat M(K.size(), n);
      for (std::size_t i = 0; i < K.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) M(i, j) = K[i][j];
      CHECK(rank(M) == K.size());
    }
  }
}

TEST_CASE("primitive integer vectors and linear systems")
{
  CHECK(primitive_integer({Rat(1, 2), Rat(-3, 4)}) == RatVec{2, -3});
  CHECK(primitive_integer({0, 4, -6}) == RatVec{0, 2, -3});
  auto x = solve_unique(RatMat{{1, 1}, {1, -1}}, {3, 1});
  REQUIRE(x);
  CHECK(*x == RatVec{2, 1});
  CHECK_FALSE(solve_unique(RatMat{{1, 1}, {2, 2}}, {1, 2}));
  CHECK(is_consistent(RatMat{{1, 1}, {2, 2}}, {1, 2}));
  CHECK_FALSE(is_consistent(RatMat{{1, 1}, {2, 2}}, {1, 3}));
  CHECK(independent_rows(RatMat{{1, 1}, {2, 2}, {0, 1}}) == std::vector<std::size_t>{0, 2});
}
