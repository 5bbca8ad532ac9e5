// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/reductions.hpp"

#include "mixgraver/decomposition.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace mixgraver {

namespace {

// Instance in integer-first column order from a matrix and data given in layout order.
MipInstance from_layout(const RatMat& layout_E, const RatVec& b, const RatVec& l, const RatVec& u,
                        const std::vector<PwlConvex>& terms, const std::vector<std::size_t>& column_order,
                        std::size_t n_int)
{
  const std::size_t N = layout_E.cols();
  MipInstance inst;
  inst.space = MixedSpace{n_int, N - n_int};
  inst.E = RatMat(layout_E.rows(), N);
  inst.b = b;
  inst.l = RatVec(N);
  inst.u = RatVec(N);
  inst.objective.terms.assign(N, PwlConvex::linear(0));
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t c = column_order[k];
    for (std::size_t r = 0; r < layout_E.rows(); ++r) inst.E(r, c) = layout_E(r, k);
    inst.l[c] = l[k];
    inst.u[c] = u[k];
    inst.objective.terms[c] = terms[k];
  }
  return inst;
}

std::string join(const RatVec& v)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + to_string(v[i]);
  return s;
}

std::string join_columns(const std::vector<std::size_t>& v)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i] + 1);
  return s;
}

}  // namespace

MilpToMip milp_to_mip(const MipInstance& inst)
{
  if (!inst.objective.is_linear()) throw std::invalid_argument("milp_to_mip: objective must be linear");
  const std::size_t n = inst.dim(), m = inst.rows();
  MilpToMip out;
  MilpToMipCertificate& cert = out.certificate;
  cert.n_original = n;
  cert.n_slack = m;
  cert.lower = inst.l;
  cert.upper = inst.u;
  for (const auto& f : inst.objective.terms) cert.weights.push_back(f.slopes[0]);
  Rat width = 0;
  for (std::size_t j = 0; j < n; ++j) width = std::max(width, Rat(ceil_int(inst.u[j]) - floor_int(inst.l[j])));
  // Smallest positive violation is at least 1 / (common denominator * largest subdeterminant).
  Int denom = 1;
  for (const RatVec* v : {&inst.b, &inst.l, &inst.u})
    for (const auto& x : *v) mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), x.get_den_mpz_t());
  const Rat delta = std::max(Rat(1), inst.E.max_abs());
  const Rat row_delta = Rat(static_cast<long>(std::max<std::size_t>(m, 1))) * delta;
  const Rat subdet = rat_pow(row_delta, std::max<std::size_t>(m, 1));
  cert.penalty_weight = 1 + norm1(cert.weights) * subdet * (Rat(denom) * width + row_delta + 2);
  const Rat& M = cert.penalty_weight;

  MipInstance& red = out.instance;
  red.space = MixedSpace{inst.space.n_int, inst.space.n_cont + m};
  red.E = RatMat(m, n + m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) red.E(r, j) = inst.E(r, j);
    red.E(r, n + r) = 1;
  }
  for (std::size_t j = 0; j < n; ++j) {
    red.l.push_back(Rat(floor_int(inst.l[j])));
    red.u.push_back(Rat(ceil_int(inst.u[j])));
    red.objective.terms.push_back(PwlConvex::penalized_linear(cert.weights[j], M, inst.l[j], inst.u[j],
                                                              !is_integer(inst.l[j]), !is_integer(inst.u[j])));
  }
  for (std::size_t r = 0; r < m; ++r) {
    RoundSplit split = round_toward_zero(inst.b[r]);
    red.b.push_back(Rat(split.integer_part));
    Rat target = -split.frac_part;
    cert.slack_target.push_back(target);
    red.l.push_back(Rat(floor_int(target)));
    red.u.push_back(Rat(ceil_int(target)));
    bool frac = !is_integer(target);
    red.objective.terms.push_back(PwlConvex::penalized_linear(0, M, target, target, frac, frac));
  }
  return out;
}

Solution decode(const MilpToMipCertificate& cert, const Solution& reduced)
{
  Solution sol;
  sol.status = reduced.status;
  if (!reduced.optimal()) return sol;
  if (reduced.x.size() != cert.n_original + cert.n_slack) throw std::invalid_argument("decode: solution has wrong length");
  RatVec x(reduced.x.begin(), reduced.x.begin() + static_cast<long>(cert.n_original));
  for (std::size_t j = 0; j < cert.n_original; ++j)
    if (x[j] < cert.lower[j] || x[j] > cert.upper[j]) {
      sol.status = Status::infeasible;
      return sol;
    }
  for (std::size_t r = 0; r < cert.n_slack; ++r)
    if (reduced.x[cert.n_original + r] != cert.slack_target[r]) {
      sol.status = Status::infeasible;
      return sol;
    }
  sol.x = x;
  sol.value = dot(cert.weights, x);
  return sol;
}

PartitionReduction partition_to_nfold(const std::vector<Rat>& a)
{
  if (a.empty()) throw std::invalid_argument("partition_to_nfold: empty input");
  for (const auto& v : a)
    if (sgn(v) <= 0) throw std::invalid_argument("partition_to_nfold: numbers must be positive");
  const std::size_t n = a.size();
  const Rat amax = *std::max_element(a.begin(), a.end());
  // Brick columns: x1 x2 y1 y2 slack1 slack2.
  RatMat top{{0, 0, 1, -1, 0, 0}};
  RatMat diag{{1, 1, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0}, {-1, 0, 1, 0, 1, 0}, {0, -1, 0, 1, 0, 1}};
  auto [layout_E, shape] = build_nfold(std::vector<RatMat>(n, top), std::vector<RatMat>(n, diag));
  RatVec b{0};
  RatVec l, u;
  std::vector<PwlConvex> terms(6 * n, PwlConvex::linear(0));
  shape.column_order.resize(6 * n);
  PartitionReduction red;
  for (std::size_t i = 0; i < n; ++i) {
    Rat scaled = a[i] / amax;
    b.push_back(1);
    b.push_back(scaled);
    b.push_back(0);
    b.push_back(0);
    for (int k = 0; k < 6; ++k) {
      l.push_back(0);
      u.push_back(1);
    }
    shape.column_order[6 * i] = 2 * i;
    shape.column_order[6 * i + 1] = 2 * i + 1;
    for (std::size_t k = 0; k < 4; ++k) shape.column_order[6 * i + 2 + k] = 2 * n + 4 * i + k;
    red.first_choice_columns.push_back(2 * i);
  }
  red.instance = from_layout(layout_E, b, l, u, terms, shape.column_order, 2 * n);
  red.shape = shape;
  red.a = a;
  return red;
}

std::optional<std::vector<std::size_t>> decode_partition(const PartitionReduction& red, const Solution& sol)
{
  if (!sol.optimal()) return std::nullopt;
  std::vector<std::size_t> side;
  for (std::size_t i = 0; i < red.first_choice_columns.size(); ++i)
    if (sol.x[red.first_choice_columns[i]] == 1) side.push_back(i + 1);
  return side;
}

SubsetSumReduction subsetsum_to_twostage(const std::vector<Int>& A, std::size_t k, const Int& target)
{
  const std::size_t n = A.size();
  if (n == 0 || k < 1 || k > n) throw std::invalid_argument("subsetsum_to_twostage: need 1 <= k <= |A|");
  std::set<Int> distinct(A.begin(), A.end());
  if (distinct.size() != n) throw std::invalid_argument("subsetsum_to_twostage: numbers must be distinct");
  for (const auto& a : A)
    if (sgn(a) <= 0) throw std::invalid_argument("subsetsum_to_twostage: numbers must be positive");
  if (sgn(target) < 0) throw std::invalid_argument("subsetsum_to_twostage: target must be nonnegative");
  const Rat amax = Rat(*std::max_element(A.begin(), A.end()));
  const Rat tscaled = Rat(target) / amax;
  Rat amin = 1;
  for (const auto& a : A) amin = std::min(amin, Rat(Rat(a) / amax));

  // Block columns: x (k+1), y (k+1), p (k+1), s (k), r (k), q (k), w (k), v.
  const std::size_t W = 7 * k + 4, T = 4 * k + 4;
  const std::size_t ox = 0, oy = k + 1, op = 2 * k + 2, os = 3 * k + 3, orr = 4 * k + 3, oq = 5 * k + 3, ow = 6 * k + 3,
                    ov = 7 * k + 3;
  std::vector<RatMat> Bs, As;
  RatVec b;
  for (std::size_t i = 0; i < n; ++i) {
    RatMat B(T, k), Ablk(T, W);
    std::size_t row = 0;
    for (std::size_t j = 0; j <= k; ++j) Ablk(row, ox + j) = 1;
    b.push_back(1);
    ++row;
    for (std::size_t j = 0; j <= k; ++j, ++row) {
      Ablk(row, oy + j) = 1;
      Ablk(row, ox + j) = -1;
      Ablk(row, op + j) = 1;
      b.push_back(0);
    }
    for (std::size_t j = 0; j <= k; ++j) Ablk(row, oy + j) = 1;
    b.push_back(Rat(A[i]) / amax);
    ++row;
    for (std::size_t j = 0; j < k; ++j, ++row) {
      B(row, j) = 1;
      Ablk(row, oy + j) = -1;
      Ablk(row, os + j) = -1;
      b.push_back(0);
    }
    for (std::size_t j = 0; j < k; ++j, ++row) {
      Ablk(row, os + j) = 1;
      Ablk(row, orr + j) = 1;
      Ablk(row, oq + j) = -1;
      b.push_back(0);
    }
    for (std::size_t j = 0; j < k; ++j, ++row) {
      Ablk(row, os + j) = -1;
      Ablk(row, orr + j) = 1;
      Ablk(row, ow + j) = -1;
      b.push_back(0);
    }
    for (std::size_t j = 0; j < k; ++j) B(row, j) = 1;
    Ablk(row, ov) = 1;
    b.push_back(tscaled);
    Bs.push_back(B);
    As.push_back(Ablk);
  }
  auto [layout_E, shape] = build_two_stage(Bs, As);

  const std::size_t n_int_block = 2 * k + 1, n_cont_block = 5 * k + 3;
  const std::size_t n_int = n * n_int_block;
  RatVec l, u;
  std::vector<PwlConvex> terms;
  shape.column_order.assign(k + n * W, 0);
  SubsetSumReduction red;
  for (std::size_t j = 0; j < k; ++j) {
    l.push_back(amin);
    u.push_back(std::max(tscaled, amin));
    terms.push_back(PwlConvex::linear(0));
    shape.column_order[j] = n_int + j;
  }
  red.indicator_columns.assign(n, {});
  red.choice_columns.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t next_int = i * n_int_block, next_cont = n_int + k + i * n_cont_block;
    for (std::size_t c = 0; c < W; ++c) {
      std::size_t pos = k + i * W + c;
      bool is_x = c < oy, is_r = c >= orr && c < oq;
      Rat lo = 0, hi = 1;
      if (c >= os && c < orr) lo = -1;
      if (c >= oq && c < ov) hi = 2;
      if (c == ov) hi = 0;
      l.push_back(lo);
      u.push_back(hi);
      terms.push_back(PwlConvex::linear(is_r ? 1 : 0));
      std::size_t col = (is_x || is_r) ? next_int++ : next_cont++;
      shape.column_order[pos] = col;
      if (is_x) red.choice_columns[i].push_back(col);
      if (is_r) red.indicator_columns[i].push_back(col);
    }
  }
  red.instance = from_layout(layout_E, b, l, u, terms, shape.column_order, n_int);
  red.shape = shape;
  red.A = A;
  red.k = k;
  red.target = target;
  red.threshold = Rat(static_cast<long>(k * (n - 1)));
  return red;
}

SubsetSumAnswer decode_subsetsum(const SubsetSumReduction& red, const Solution& sol)
{
  SubsetSumAnswer ans;
  if (!sol.optimal()) return ans;
  ans.yes = sol.value <= red.threshold;
  for (std::size_t i = 0; i < red.A.size(); ++i)
    for (auto c : red.indicator_columns[i])
      if (sgn(sol.x[c]) == 0) {
        ans.chosen.push_back(red.A[i]);
        break;
      }
  std::sort(ans.chosen.begin(), ans.chosen.end());
  return ans;
}

std::string write_sidecar(const MilpToMipCertificate& cert)
{
  std::ostringstream out;
  out << "reduction: milp-to-mip\n";
  out << "original_columns: " << cert.n_original << '\n';
  out << "slack_columns: " << cert.n_slack << '\n';
  out << "penalty_weight: " << to_string(cert.penalty_weight) << '\n';
  out << "weights: " << join(cert.weights) << '\n';
  out << "lower: " << join(cert.lower) << '\n';
  out << "upper: " << join(cert.upper) << '\n';
  out << "slack_target: " << join(cert.slack_target) << '\n';
  out << "decode: first original_columns entries; infeasible unless within lower..upper and slacks equal slack_target\n";
  return out.str();
}

std::string write_sidecar(const PartitionReduction& red)
{
  std::ostringstream out;
  out << "reduction: partition\n";
  out << "numbers: " << join(red.a) << '\n';
  out << "first_side_columns: " << join_columns(red.first_choice_columns) << '\n';
  out << "decode: element i is on the first side when its first_side_columns entry is 1\n";
  return out.str();
}

std::string write_sidecar(const SubsetSumReduction& red)
{
  std::ostringstream out;
  out << "reduction: subsetsum\n";
  out << "numbers:";
  for (const auto& a : red.A) out << ' ' << a.get_str();
  out << "\ncount: " << red.k << '\n';
  out << "target: " << red.target.get_str() << '\n';
  out << "threshold: " << to_string(red.threshold) << '\n';
  for (std::size_t i = 0; i < red.A.size(); ++i)
    out << "indicator_columns_" << i + 1 << ": " << join_columns(red.indicator_columns[i]) << '\n';
  out << "decode: yes iff optimum <= threshold; element i is chosen when one of its indicator columns is 0\n";
  return out.str();
}

std::map<std::string, std::string> parse_sidecar(const std::string& text)
{
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    std::string key = line.substr(0, colon), value = line.substr(colon + 1);
    if (!value.empty() && value[0] == ' ') value.erase(0, 1);
    kv[key] = value;
  }
  return kv;
}

}  // namespace mixgraver
