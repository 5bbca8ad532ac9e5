// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/numerics.hpp"

#include <stdexcept>

namespace mixgraver {

RatMat::RatMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

RatMat::RatMat(std::initializer_list<std::initializer_list<Rat>> init)
{
  rows_ = init.size();
  cols_ = rows_ == 0 ? 0 : init.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : init) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (const auto& v : r) data_.push_back(v);
  }
}

RatVec RatMat::row(std::size_t i) const
{
  return RatVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

RatVec RatMat::col(std::size_t j) const
{
  RatVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RatMat RatMat::transpose() const
{
  RatMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RatMat RatMat::select_columns(const std::vector<std::size_t>& idx) const
{
  RatMat s(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < idx.size(); ++k) s(i, k) = (*this)(i, idx[k]);
  return s;
}

RatMat RatMat::select_rows(const std::vector<std::size_t>& idx) const
{
  RatMat s(idx.size(), cols_);
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (std::size_t j = 0; j < cols_; ++j) s(k, j) = (*this)(idx[k], j);
  return s;
}

RatVec RatMat::operator*(const RatVec& x) const
{
  if (x.size() != cols_) throw std::invalid_argument("matrix-vector dimension mismatch");
  RatVec y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rat acc = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (sgn((*this)(i, j)) != 0 && sgn(x[j]) != 0) acc += (*this)(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

bool RatMat::operator==(const RatMat& o) const
{
  return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool RatMat::is_integral() const
{
  for (const auto& v : data_)
    if (!is_integer(v)) return false;
  return true;
}

Rat RatMat::max_abs() const
{
  Rat m = 0;
  for (const auto& v : data_)
    if (abs(v) > m) m = abs(v);
  return m;
}

Rat make_rat(long num, long den)
{
  Rat r(num, den);
  r.canonicalize();
  return r;
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

Int floor_int(const Rat& x)
{
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Int ceil_int(const Rat& x)
{
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

RoundSplit round_toward_zero(const Rat& x)
{
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  Rat frac = x - Rat(q);
  return {q, frac};
}

std::string to_string(const Rat& x)
{
  if (is_integer(x)) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string to_fraction_string(const Rat& x)
{
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rat parse_rat(std::string_view text)
{
  std::string s(text);
  const std::string unicode_minus = "\xE2\x88\x92";
  if (s.rfind(unicode_minus, 0) == 0) s = "-" + s.substr(unicode_minus.size());
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto valid_int = [](const std::string& t, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  if (num[0] == '+') num = num.substr(1);
  Int n(num), d(den);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rat r(n, d);
  r.canonicalize();
  return r;
}

std::string to_string(const RatVec& v, std::string_view sep)
{
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += to_string(v[i]);
  }
  return out;
}

bool conformal_leq(const RatVec& x, const RatVec& y)
{
  if (x.size() != y.size()) throw std::invalid_argument("conformal_leq: dimension mismatch");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (abs(x[i]) > abs(y[i])) return false;
    if (sgn(x[i]) * sgn(y[i]) < 0) return false;
  }
  return true;
}

RatVec add(const RatVec& a, const RatVec& b)
{
  if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

RatVec sub(const RatVec& a, const RatVec& b)
{
  if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
  return c;
}

RatVec scale(const RatVec& a, const Rat& s)
{
  RatVec c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * s;
  return c;
}

Rat dot(const RatVec& a, const RatVec& b)
{
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rat acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

Rat norm1(const RatVec& v)
{
  Rat acc = 0;
  for (const auto& x : v) acc += abs(x);
  return acc;
}

Rat norm_inf(const RatVec& v)
{
  Rat m = 0;
  for (const auto& x : v)
    if (abs(x) > m) m = abs(x);
  return m;
}

bool is_zero(const RatVec& v)
{
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

bool is_integral(const RatVec& v)
{
  for (const auto& x : v)
    if (!is_integer(x)) return false;
  return true;
}

RatVec zeros(std::size_t n) { return RatVec(n, Rat(0)); }

RatVec primitive_integer(const RatVec& v)
{
  if (is_zero(v)) throw std::invalid_argument("primitive_integer: zero vector");
  Int l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<Int> ints(v.size());
  Int g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rat scaled = v[i] * Rat(l);
    ints[i] = scaled.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  RatVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Rat(Int(ints[i] / g));
  return out;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(RatMat& m)
{
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && sgn(m(p, c)) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rat inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || sgn(m(i, c)) == 0) continue;
      Rat f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

RatMat augment(const RatMat& a, const RatVec& b)
{
  if (b.size() != a.rows()) throw std::invalid_argument("rhs dimension mismatch");
  RatMat m(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    m(i, a.cols()) = b[i];
  }
  return m;
}

}  // namespace

std::size_t rank(const RatMat& m)
{
  RatMat c = m;
  return rref(c).size();
}

std::vector<std::size_t> independent_rows(const RatMat& m)
{
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::vector<std::size_t> trial = chosen;
    trial.push_back(i);
    if (rank(m.select_rows(trial)) == trial.size()) chosen = trial;
  }
  return chosen;
}

std::vector<RatVec> kernel_basis(const RatMat& e)
{
  RatMat m = e;
  auto pivots = rref(m);
  std::vector<bool> is_pivot(e.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RatVec> basis;
  for (std::size_t f = 0; f < e.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVec v = zeros(e.cols());
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m(k, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RatVec> solve_unique(const RatMat& a, const RatVec& b)
{
  RatMat m = augment(a, b);
  auto pivots = rref(m);
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  if (pivots.size() != a.cols()) return std::nullopt;
  RatVec x(a.cols());
  for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = m(k, a.cols());
  return x;
}

bool is_consistent(const RatMat& a, const RatVec& b)
{
  RatMat m = augment(a, b);
  auto pivots = rref(m);
  return pivots.empty() || pivots.back() != a.cols();
}

}  // namespace mixgraver
