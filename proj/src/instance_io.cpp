// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/instance_io.hpp"

#include <algorithm>
#include <sstream>

namespace mixgraver {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text)
{
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

std::size_t parse_count(const std::string& tok, std::size_t line)
{
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw ParseError(line, "expected a nonnegative integer, got '" + tok + "'");
  try {
    return std::stoul(tok);
  } catch (const std::exception&) {
    throw ParseError(line, "count out of range: '" + tok + "'");
  }
}

Rat parse_value(const std::string& tok, std::size_t line)
{
  try {
    return parse_rat(tok);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

class Parser {
 public:
  explicit Parser(std::vector<Line> lines) : lines_(std::move(lines)) {}

  InstanceFile run()
  {
    InstanceFile file;
    MipInstance& inst = file.instance;
    bool have_space = false, have_matrix = false, have_rhs = false, have_lower = false, have_upper = false,
         have_obj = false;
    std::optional<std::vector<std::size_t>> layout;
    std::size_t layout_line = 0;
    std::size_t m = 0, n = 0;
    while (pos_ < lines_.size()) {
      const Line& line = lines_[pos_++];
      const std::string& kw = line.tokens[0];
      if (kw == "SPACE") {
        expect_args(line, 2);
        inst.space = MixedSpace{parse_count(line.tokens[1], line.number), parse_count(line.tokens[2], line.number)};
        have_space = true;
      } else if (kw == "MATRIX") {
        expect_args(line, 2);
        m = parse_count(line.tokens[1], line.number);
        n = parse_count(line.tokens[2], line.number);
        inst.E = RatMat(m, n);
        for (std::size_t i = 0; i < m; ++i) {
          if (pos_ >= lines_.size()) throw ParseError(line.number, "matrix ended early");
          const Line& row = lines_[pos_++];
          if (row.tokens.size() != n)
            throw ParseError(row.number, "matrix row needs " + std::to_string(n) + " entries");
          for (std::size_t j = 0; j < n; ++j) {
            Rat v = parse_value(row.tokens[j], row.number);
            if (!is_integer(v)) throw ParseError(row.number, "matrix entries must be integers");
            inst.E(i, j) = v;
          }
        }
        have_matrix = true;
      } else if (kw == "RHS") {
        require(have_matrix, line, "RHS before MATRIX");
        inst.b = values(line, m);
        have_rhs = true;
      } else if (kw == "LOWER") {
        require(have_matrix, line, "LOWER before MATRIX");
        inst.l = values(line, n);
        have_lower = true;
      } else if (kw == "UPPER") {
        require(have_matrix, line, "UPPER before MATRIX");
        inst.u = values(line, n);
        have_upper = true;
      } else if (kw == "OBJ") {
        require(have_matrix, line, "OBJ before MATRIX");
        expect_args(line, 0);
        inst.objective.terms.clear();
        for (std::size_t j = 0; j < n; ++j) {
          if (pos_ >= lines_.size()) throw ParseError(line.number, "objective ended early");
          inst.objective.terms.push_back(term(lines_[pos_++]));
        }
        have_obj = true;
      } else if (kw == "TWOSTAGE" || kw == "NFOLD") {
        expect_args(line, 4);
        std::size_t v[4];
        for (int k = 0; k < 4; ++k) v[k] = parse_count(line.tokens[k + 1], line.number);
        if (kw == "TWOSTAGE") file.two_stage = TwoStageShape{v[0], v[1], v[2], v[3], {}};
        else file.nfold = NFoldShape{v[0], v[1], v[2], v[3], {}};
        if (v[3] == 0) throw ParseError(line.number, "block count must be positive");
        if (kw == "TWOSTAGE" && (v[1] == 0 || v[2] == 0)) throw ParseError(line.number, "block dimensions must be positive");
        if (kw == "NFOLD" && (v[1] == 0 || v[2] == 0)) throw ParseError(line.number, "block dimensions must be positive");
      } else if (kw == "LAYOUT") {
        std::vector<std::size_t> order;
        for (std::size_t k = 1; k < line.tokens.size(); ++k) {
          std::size_t c = parse_count(line.tokens[k], line.number);
          if (c == 0) throw ParseError(line.number, "layout columns are 1-indexed");
          order.push_back(c - 1);
        }
        layout = order;
        layout_line = line.number;
      } else {
        throw ParseError(line.number, "unknown section '" + kw + "'");
      }
    }
    std::size_t last = lines_.empty() ? 1 : lines_.back().number;
    if (!have_space) throw ParseError(last, "missing SPACE");
    if (!have_matrix) throw ParseError(last, "missing MATRIX");
    if (!have_rhs) throw ParseError(last, "missing RHS");
    if (!have_lower) throw ParseError(last, "missing LOWER");
    if (!have_upper) throw ParseError(last, "missing UPPER");
    if (!have_obj) throw ParseError(last, "missing OBJ");
    if (file.two_stage && file.nfold) throw ParseError(last, "both TWOSTAGE and NFOLD given");
    if (layout) {
      if (!file.two_stage && !file.nfold) throw ParseError(layout_line, "LAYOUT without a block shape");
      std::vector<std::size_t> sorted = *layout;
      std::sort(sorted.begin(), sorted.end());
      for (std::size_t k = 0; k < sorted.size(); ++k)
        if (sorted[k] != k || sorted.size() != n) throw ParseError(layout_line, "LAYOUT must be a permutation of the columns");
      if (file.two_stage) file.two_stage->column_order = *layout;
      if (file.nfold) file.nfold->column_order = *layout;
    }
    try {
      inst.validate();
    } catch (const InstanceError& e) {
      throw ParseError(last, e.what());
    }
    if (file.two_stage && !matches_shape(layout_matrix(inst.E, file.two_stage->column_order), *file.two_stage))
      throw ParseError(last, "matrix does not have the declared 2-stage block pattern");
    if (file.nfold && !matches_shape(layout_matrix(inst.E, file.nfold->column_order), *file.nfold))
      throw ParseError(last, "matrix does not have the declared n-fold block pattern");
    return file;
  }

 private:
  static void expect_args(const Line& line, std::size_t k)
  {
    if (line.tokens.size() != k + 1)
      throw ParseError(line.number, line.tokens[0] + " expects " + std::to_string(k) + " arguments");
  }

  static void require(bool cond, const Line& line, const std::string& msg)
  {
    if (!cond) throw ParseError(line.number, msg);
  }

  RatVec values(const Line& line, std::size_t count)
  {
    std::vector<std::string> toks(line.tokens.begin() + 1, line.tokens.end());
    std::size_t number = line.number;
    if (toks.empty() && count > 0) {
      if (pos_ >= lines_.size()) throw ParseError(line.number, line.tokens[0] + " values missing");
      toks = lines_[pos_].tokens;
      number = lines_[pos_].number;
      ++pos_;
    }
    if (toks.size() != count)
      throw ParseError(number, line.tokens[0] + " needs " + std::to_string(count) + " values");
    RatVec v;
    for (const auto& t : toks) {
      if (t == "inf" || t == "-inf" || t == "+inf") throw ParseError(number, "infinite bounds are not supported");
      v.push_back(parse_value(t, number));
    }
    return v;
  }

  static PwlConvex term(const Line& line)
  {
    const auto& tk = line.tokens;
    if (tk[0] == "LIN") {
      if (tk.size() != 2 && tk.size() != 3) throw ParseError(line.number, "LIN expects 'slope [constant]'");
      PwlConvex f = PwlConvex::linear(parse_value(tk[1], line.number));
      if (tk.size() == 3) f.anchor_value = parse_value(tk[2], line.number);
      return f;
    }
    if (tk[0] == "PWL") {
      auto bar = std::find(tk.begin(), tk.end(), "|");
      if (bar == tk.end() || tk.size() < 3) throw ParseError(line.number, "PWL expects 'anchor b1 .. bk | s0 .. sk'");
      Rat anchor = parse_value(tk[1], line.number);
      std::vector<Rat> bps, slopes;
      for (auto it = tk.begin() + 2; it != bar; ++it) bps.push_back(parse_value(*it, line.number));
      for (auto it = bar + 1; it != tk.end(); ++it) slopes.push_back(parse_value(*it, line.number));
      try {
        return PwlConvex::make(bps, slopes, anchor);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line.number, e.what());
      }
    }
    throw ParseError(line.number, "objective line must start with LIN or PWL");
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

void write_row(std::ostringstream& out, const std::string& kw, const RatVec& v)
{
  out << kw;
  for (const auto& x : v) out << ' ' << to_string(x);
  out << '\n';
}

}  // namespace

InstanceFile parse_instance(const std::string& text) { return Parser(tokenize(text)).run(); }

std::string write_instance(const InstanceFile& file)
{
  const MipInstance& inst = file.instance;
  std::ostringstream out;
  out << "SPACE " << inst.space.n_int << ' ' << inst.space.n_cont << '\n';
  out << "MATRIX " << inst.E.rows() << ' ' << inst.E.cols() << '\n';
  for (std::size_t i = 0; i < inst.E.rows(); ++i) out << to_string(inst.E.row(i)) << '\n';
  write_row(out, "RHS", inst.b);
  write_row(out, "LOWER", inst.l);
  write_row(out, "UPPER", inst.u);
  out << "OBJ\n";
  for (const auto& f : inst.objective.terms) {
    if (f.is_linear()) {
      out << "LIN " << to_string(f.slopes[0]);
      if (f.anchor_value != 0) out << ' ' << to_string(f.anchor_value);
      out << '\n';
    } else {
      out << "PWL " << to_string(f.anchor_value);
      for (const auto& b : f.breakpoints) out << ' ' << to_string(b);
      out << " |";
      for (const auto& s : f.slopes) out << ' ' << to_string(s);
      out << '\n';
    }
  }
  auto layout = [&](const std::vector<std::size_t>& order) {
    if (order.empty()) return;
    out << "LAYOUT";
    for (auto c : order) out << ' ' << c + 1;
    out << '\n';
  };
  if (file.two_stage) {
    const auto& s = *file.two_stage;
    out << "TWOSTAGE " << s.r << ' ' << s.s << ' ' << s.t << ' ' << s.n << '\n';
    layout(s.column_order);
  }
  if (file.nfold) {
    const auto& s = *file.nfold;
    out << "NFOLD " << s.r << ' ' << s.s << ' ' << s.t << ' ' << s.n << '\n';
    layout(s.column_order);
  }
  return out.str();
}

std::string write_instance(const MipInstance& inst) { return write_instance(InstanceFile{inst, {}, {}}); }

}  // namespace mixgraver
