// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mixgraver {

using Rat = mpq_class;
using Int = mpz_class;
using RatVec = std::vector<Rat>;

/// Dense row-major rational matrix.
class RatMat {
 public:
  RatMat() = default;
  RatMat(std::size_t rows, std::size_t cols);
  RatMat(std::initializer_list<std::initializer_list<Rat>> init);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RatVec row(std::size_t i) const;
  RatVec col(std::size_t j) const;
  RatMat transpose() const;
  RatMat select_columns(const std::vector<std::size_t>& idx) const;
  RatMat select_rows(const std::vector<std::size_t>& idx) const;

  RatVec operator*(const RatVec& x) const;
  bool operator==(const RatMat& o) const;

  bool is_integral() const;
  /// Largest absolute entry, i.e. the entrywise infinity norm.
  Rat max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> data_;
};

/// Integer coordinates occupy 0..n_int-1, continuous ones follow.
struct MixedSpace {
  std::size_t n_int = 0;
  std::size_t n_cont = 0;

  std::size_t dim() const { return n_int + n_cont; }
  bool is_integer(std::size_t i) const { return i < n_int; }
  bool operator==(const MixedSpace&) const = default;
};

struct RoundSplit {
  Int integer_part;
  Rat frac_part;
};

Rat make_rat(long num, long den = 1);
bool is_integer(const Rat& x);
Int floor_int(const Rat& x);
Int ceil_int(const Rat& x);

/// Rounds toward zero; the fractional remainder keeps the sign of x.
RoundSplit round_toward_zero(const Rat& x);

/// "p/q", or "p" when q = 1.
std::string to_string(const Rat& x);
/// Always "p/q", even for integers.
std::string to_fraction_string(const Rat& x);
/// Accepts "p", "p/q", "-p/q" and the Unicode minus sign. Throws std::invalid_argument.
Rat parse_rat(std::string_view text);
std::string to_string(const RatVec& v, std::string_view sep = " ");

bool conformal_leq(const RatVec& x, const RatVec& y);

RatVec add(const RatVec& a, const RatVec& b);
RatVec sub(const RatVec& a, const RatVec& b);
RatVec scale(const RatVec& a, const Rat& s);
Rat dot(const RatVec& a, const RatVec& b);
Rat norm1(const RatVec& v);
Rat norm_inf(const RatVec& v);
bool is_zero(const RatVec& v);
bool is_integral(const RatVec& v);
RatVec zeros(std::size_t n);

/// Scales a nonzero rational vector to the coprime integer vector pointing the same way.
RatVec primitive_integer(const RatVec& v);

std::size_t rank(const RatMat& m);
/// Indices of a maximal set of linearly independent rows, chosen greedily from the top.
std::vector<std::size_t> independent_rows(const RatMat& m);
std::vector<RatVec> kernel_basis(const RatMat& e);

/// Solution of A x = b when it exists and is unique (A has full column rank).
std::optional<RatVec> solve_unique(const RatMat& a, const RatVec& b);
/// True iff A x = b has some solution.
bool is_consistent(const RatMat& a, const RatVec& b);

}  // namespace mixgraver
