// SPDX-FileCopyrightText: Copyright (c) 2026 mixgraver contributors
// SPDX-License-Identifier: Apache-2.0

#include "mixgraver/cli.hpp"

#include "mixgraver/acceptance.hpp"
#include "mixgraver/decomposition.hpp"
#include "mixgraver/graver.hpp"
#include "mixgraver/instance_io.hpp"
#include "mixgraver/reductions.hpp"
#include "mixgraver/solvers.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace mixgraver {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { human, records };

struct Common {
  std::string format = "human";
  bool approx = false;
  unsigned jobs = 0;
};

class Printer {
 public:
  Printer(std::ostream& out, Format f, bool approx) : out_(out), format_(f), approx_(approx) {}

  void text(const std::string& key, const std::string& value)
  {
    if (format_ == Format::records) out_ << key << '=' << value << '\n';
    else out_ << key << ": " << value << '\n';
  }
  void rat(const std::string& key, const Rat& v)
  {
    text(key, to_fraction_string(v));
    if (approx_) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6g", v.get_d());
      text(key + "_approx", std::string(buf) + " (non-authoritative)");
    }
  }
  void vec(const std::string& key, const RatVec& v)
  {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += format_ == Format::records ? "," : " ";
      s += to_fraction_string(v[i]);
    }
    text(key, s);
  }
  Format format() const { return format_; }

 private:
  std::ostream& out_;
  Format format_;
  bool approx_;
};

std::string read_input(const std::string& path, std::istream& in)
{
  std::ostringstream buf;
  if (path.empty() || path == "-") {
    buf << in.rdbuf();
  } else {
    std::ifstream f(path);
    if (!f) throw InputError("cannot read " + path);
    buf << f.rdbuf();
  }
  return buf.str();
}

RatVec parse_list(const std::string& text, const std::string& what)
{
  RatVec out;
  std::string item;
  std::istringstream ss(text);
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    try {
      out.push_back(parse_rat(item));
    } catch (const std::exception&) {
      throw InputError("bad entry '" + item + "' in " + what);
    }
  }
  if (out.empty()) throw InputError(what + " is empty");
  return out;
}

std::vector<Int> parse_int_list(const std::string& text, const std::string& what)
{
  std::vector<Int> out;
  for (const auto& v : parse_list(text, what)) {
    if (!is_integer(v)) throw InputError(what + " must hold integers");
    out.push_back(v.get_num());
  }
  return out;
}

int exit_for(Status s)
{
  switch (s) {
    case Status::optimal: return exit_solved;
    case Status::infeasible:
    case Status::unbounded: return exit_infeasible;
    case Status::cap_exceeded: return exit_cap_exceeded;
    case Status::internal_error: return exit_internal_error;
  }
  return exit_internal_error;
}

void emit_with_sidecar(std::ostream& out, const std::string& instance, const std::string& sidecar,
                       const std::string& sidecar_path)
{
  out << instance;
  if (!sidecar_path.empty()) {
    std::ofstream f(sidecar_path);
    if (!f) throw InputError("cannot write " + sidecar_path);
    f << sidecar;
    return;
  }
  out << "# decoder\n";
  std::istringstream lines(sidecar);
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << '\n';
}

/// An instance whose only feasible point is `g`: independent rows of E, zero right-hand side.
std::string point_instance(const RatMat& E, const MixedSpace& space, const RatVec& g)
{
  MipInstance inst;
  inst.space = space;
  inst.E = E.select_rows(independent_rows(E));
  inst.b = zeros(inst.E.rows());
  inst.l = g;
  inst.u = g;
  inst.objective = SeparableObjective::linear(zeros(g.size()));
  return write_instance(inst);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
  CLI::App app{"Exact mixed-integer programming with piecewise-linear convex objectives", "mixgraver"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", common.format, "human or records")->check(CLI::IsMember({"human", "records"}));
    sub->add_flag("--approx", common.approx, "also print decimal renderings (non-authoritative)");
    sub->add_option("--jobs", common.jobs, "worker threads for enumeration (default: MIXGRAVER_JOBS or 1)");
  };

  std::string input;
  std::string strategy = "auto";
  std::string proximity;
  bool certify = false;
  std::uint64_t enum_cap = 1000000;
  std::uint64_t node_cap = 200000;

  auto* solve = app.add_subcommand("solve", "solve an instance");
  solve->add_option("file", input, "instance file, '-' for stdin");
  solve->add_option("--strategy", strategy, "auto, fewrows, twostage, oracle or bnb")
      ->check(CLI::IsMember({"auto", "fewrows", "twostage", "oracle", "bnb"}));
  solve->add_option("--proximity", proximity, "proximity cap P (rational)");
  solve->add_flag("--certify", certify, "cross-check against the oracle when the slice count permits");
  solve->add_option("--enum-cap", enum_cap, "largest number of integer slices to enumerate");
  solve->add_option("--node-cap", node_cap, "branch-and-bound node limit");
  add_common(solve);

  auto* oracle = app.add_subcommand("oracle", "solve by enumerating every integer slice");
  oracle->add_option("file", input, "instance file, '-' for stdin");
  oracle->add_option("--enum-cap", enum_cap, "largest number of integer slices to enumerate");
  add_common(oracle);

  std::string sidecar_path;
  auto* reduce = app.add_subcommand("reduce", "transform an instance");
  reduce->require_subcommand(1);
  auto* milp = reduce->add_subcommand("milp-to-mip", "integral data with a penalized objective");
  milp->add_option("file", input, "instance file, '-' for stdin");
  milp->add_option("--sidecar", sidecar_path, "write the decoder here instead of trailing comments");

  std::string a_list, k_text, t_text;
  auto* generate = app.add_subcommand("generate", "emit a structured instance");
  generate->require_subcommand(1);
  auto* partition = generate->add_subcommand("partition", "n-fold program feasible iff the multiset splits evenly");
  partition->add_option("--a", a_list, "comma-separated positive rationals")->required();
  partition->add_option("--sidecar", sidecar_path, "write the decoder here instead of trailing comments");
  auto* subsetsum = generate->add_subcommand("subsetsum", "2-stage program for k-element subset sum");
  subsetsum->add_option("--a", a_list, "comma-separated distinct positive integers")->required();
  subsetsum->add_option("--k", k_text, "subset size")->required();
  subsetsum->add_option("--t", t_text, "target sum")->required();
  subsetsum->add_option("--sidecar", sidecar_path, "write the decoder here instead of trailing comments");

  std::string g_list;
  std::size_t witness_n = 0;
  auto* gcheck = app.add_subcommand("graver-check", "mixed Graver basis membership");
  gcheck->add_option("file", input, "instance supplying the matrix and integrality split");
  gcheck->add_option("--g", g_list, "candidate vector, comma-separated");
  gcheck->add_option("--nfold-witness", witness_n, "check the built-in n-fold witness with n bricks (even)");
  add_common(gcheck);

  std::string x_list;
  auto* decompose = app.add_subcommand("decompose", "one-fat decomposition of a kernel vector");
  decompose->add_option("file", input, "instance supplying the matrix and integrality split");
  decompose->add_option("--x", x_list, "kernel vector, comma-separated")->required();
  add_common(decompose);

  std::size_t bound_m = 1;
  std::string bound_delta = "1";
  auto* bounds = app.add_subcommand("bounds", "closed-form norm and proximity bounds");
  bounds->add_option("--m", bound_m, "number of rows")->required();
  bounds->add_option("--delta", bound_delta, "largest absolute matrix entry")->required();
  add_common(bounds);

  std::vector<int> criteria;
  std::uint64_t seed = AcceptanceOptions{}.seed;
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");
  selftest->add_option("--criterion", criteria, "run only these criteria (1-10)")->check(CLI::Range(1, 10));
  selftest->add_option("--seed", seed, "generator seed");
  add_common(selftest);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_solved;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_solved;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  }

  unsigned jobs = common.jobs;
  if (jobs == 0) {
    if (const char* env = std::getenv("MIXGRAVER_JOBS")) {
      try {
        jobs = static_cast<unsigned>(std::stoul(env));
      } catch (const std::exception&) {
        err << "error: MIXGRAVER_JOBS must be a positive integer\n";
        return exit_input_error;
      }
    }
    jobs = std::max(jobs, 1u);
  }
  Printer print(out, common.format == "records" ? Format::records : Format::human, common.approx);
  using Clock = std::chrono::steady_clock;

  try {
    if (*solve || *oracle) {
      InstanceFile file = parse_instance(read_input(input, in));
      const MipInstance& inst = file.instance;
      if (*oracle) strategy = "oracle";
      if (strategy == "auto") strategy = file.two_stage ? "twostage" : "fewrows";
      std::optional<Rat> P;
      if (!proximity.empty()) {
        try {
          P = parse_rat(proximity);
        } catch (const std::exception&) {
          throw InputError("bad --proximity value");
        }
        if (*P < 0) throw InputError("--proximity must be nonnegative");
      }
      if ((strategy == "fewrows" || strategy == "twostage") && !certify && (P || strategy == "twostage"))
        err << "warning: the result is optimal only if the proximity cap reaches the true proximity; "
               "use --certify to cross-check\n";
      auto start = Clock::now();
      Solution sol;
      if (strategy == "oracle") {
        sol = oracle_solve(inst, enum_cap, jobs);
      } else if (strategy == "bnb") {
        sol = branch_and_bound_solve(inst, node_cap, enum_cap);
      } else if (strategy == "fewrows") {
        FewRowsOptions o;
        o.proximity = P;
        o.certify = certify;
        o.enum_cap = enum_cap;
        sol = solve_few_rows(inst, o);
      } else {
        if (!file.two_stage) throw InputError("strategy twostage needs a TWOSTAGE line");
        TwoStageOptions o;
        o.proximity = P;
        o.certify = certify;
        o.enum_cap = enum_cap;
        o.node_cap = node_cap;
        sol = two_stage_solve(inst, *file.two_stage, o);
      }
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
      print.text("status", to_string(sol.status));
      print.text("strategy", strategy);
      if (sol.optimal()) {
        print.rat("value", sol.value);
        print.vec("x", sol.x);
      }
      print.text("time_ms", std::to_string(ms));
      return exit_for(sol.status);
    }

    if (*milp) {
      InstanceFile file = parse_instance(read_input(input, in));
      MilpToMip red = milp_to_mip(file.instance);
      emit_with_sidecar(out, write_instance(red.instance), write_sidecar(red.certificate), sidecar_path);
      return exit_solved;
    }

    if (*partition) {
      PartitionReduction red = partition_to_nfold(parse_list(a_list, "--a"));
      InstanceFile file{red.instance, std::nullopt, red.shape};
      emit_with_sidecar(out, write_instance(file), write_sidecar(red), sidecar_path);
      return exit_solved;
    }

    if (*subsetsum) {
      auto k = parse_int_list(k_text, "--k");
      auto t = parse_int_list(t_text, "--t");
      if (k.size() != 1 || t.size() != 1 || k[0] < 1) throw InputError("--k and --t take one integer each");
      SubsetSumReduction red =
          subsetsum_to_twostage(parse_int_list(a_list, "--a"), static_cast<std::size_t>(k[0].get_ui()), t[0]);
      InstanceFile file{red.instance, red.shape, std::nullopt};
      emit_with_sidecar(out, write_instance(file), write_sidecar(red), sidecar_path);
      return exit_solved;
    }

    if (*gcheck) {
      RatMat E;
      MixedSpace space;
      RatVec g;
      if (witness_n > 0) {
        if (!input.empty() || !g_list.empty()) throw InputError("--nfold-witness takes no file and no --g");
        NFoldWitness w = nfold_lb_instance(witness_n);
        E = w.E;
        space = w.space;
        g = w.g;
      } else {
        if (g_list.empty()) throw InputError("graver-check needs --g or --nfold-witness");
        InstanceFile file = parse_instance(read_input(input, in));
        E = file.instance.E;
        space = file.instance.space;
        g = parse_list(g_list, "--g");
        if (g.size() != E.cols()) throw InputError("--g has the wrong length");
        if (!is_zero(E * g)) throw InputError("--g is not in the kernel of the matrix");
        for (std::size_t j = 0; j < space.n_int; ++j)
          if (!is_integer(g[j])) throw InputError("--g has a fractional integer coordinate");
      }
      GraverCheck check = mixed_graver_check(E, space, g);
      print.text("member", check.member ? "true" : "false");
      print.vec("g", g);
      print.rat("norm1", norm1(g));
      const RatVec& shown = check.witness ? *check.witness : g;
      if (check.witness) print.vec("dominated_by", *check.witness);
      if (print.format() == Format::human) {
        out << "# " << (check.witness ? "dominating vector" : "checked vector") << " as the unique point of an instance\n";
        out << point_instance(E, space, shown);
      }
      return check.member ? exit_solved : exit_infeasible;
    }

    if (*decompose) {
      InstanceFile file = parse_instance(read_input(input, in));
      const RatMat& E = file.instance.E;
      const MixedSpace& space = file.instance.space;
      RatVec x = parse_list(x_list, "--x");
      if (x.size() != E.cols()) throw InputError("--x has the wrong length");
      if (!is_zero(E * x)) throw InputError("--x is not in the kernel of the matrix");
      for (std::size_t j = 0; j < space.n_int; ++j)
        if (!is_integer(x[j])) throw InputError("--x has a fractional integer coordinate");
      OneFatDecomposition dec = one_fat_decompose(E, space, x);
      NormBounds nb = norm_bounds(std::max<std::size_t>(E.rows(), 1), std::max(Rat(1), E.max_abs()));
      print.vec("fat", dec.fat);
      print.rat("fat_norm1", norm1(dec.fat));
      print.rat("fat_bound", nb.corollary_wt1);
      print.text("parts", std::to_string(dec.integer_parts.size()));
      for (std::size_t i = 0; i < dec.integer_parts.size(); ++i) print.vec("part" + std::to_string(i + 1), dec.integer_parts[i]);
      return exit_solved;
    }

    if (*bounds) {
      Rat delta;
      try {
        delta = parse_rat(bound_delta);
      } catch (const std::exception&) {
        throw InputError("bad --delta value");
      }
      if (bound_m < 1 || delta < 1) throw InputError("bounds need m >= 1 and delta >= 1");
      NormBounds nb = norm_bounds(bound_m, delta);
      print.rat("basic_1norm", nb.basic_1norm);
      print.rat("improved_g1", nb.improved_g1);
      print.rat("improved_wt1", nb.improved_wt1);
      print.rat("corollary_wt1", nb.corollary_wt1);
      return exit_solved;
    }

    if (*selftest) {
      AcceptanceOptions opts;
      opts.seed = seed;
      opts.jobs = jobs;
      if (criteria.empty())
        for (int id = 1; id <= 10; ++id) criteria.push_back(id);
      bool all = true;
      for (int id : criteria) {
        CriterionResult r = run_criterion(id, opts);
        all = all && r.pass;
        if (print.format() == Format::records) {
          print.text("criterion" + std::to_string(id), r.pass ? "pass" : "fail");
        } else {
          out << format_result(r) << '\n';
        }
        out.flush();
      }
      return all ? exit_solved : exit_infeasible;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return exit_input_error;
  } catch (const std::length_error& e) {
    err << "error: " << e.what() << '\n';
    return exit_cap_exceeded;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return exit_internal_error;
  }
  return exit_input_error;
}

}  // namespace mixgraver
