#include "odraw/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "odraw/audit.hpp"
#include "odraw/error.hpp"
#include "odraw/io.hpp"
#include "odraw/svg.hpp"
#include "odraw/tree_drawings.hpp"

namespace odraw {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunFlags {
  std::string alg;
  std::string mode = "basic";
  std::string rect = "10x4";
  std::uint64_t seed = 0;
};

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--alg", f.alg, "subtree, depth, dominance, treemap, delta or brect")
      ->required()
      ->check(CLI::IsMember({"subtree", "depth", "dominance", "treemap", "delta", "brect"}));
  cmd->add_option("--mode", f.mode, "dominance mode")->check(CLI::IsMember({"basic", "compressed"}));
  cmd->add_option("--rect", f.rect, "treemap canvas WxH");
  cmd->add_option("--seed", f.seed, "runtime seed");
}

Algorithm algorithm(const RunFlags& f) {
  if (f.alg == "subtree") return Algorithm::subtree_sizes;
  if (f.alg == "depth") return Algorithm::depths;
  if (f.alg == "treemap") return Algorithm::treemap;
  if (f.alg == "delta") return Algorithm::delta;
  if (f.alg == "brect") return Algorithm::brect;
  return f.mode == "compressed" ? Algorithm::dominance_compressed : Algorithm::dominance;
}

Canvas canvas(const RunFlags& f) {
  const auto x = f.rect.find('x');
  if (x == std::string::npos) throw UsageError("--rect expects WxH, got \"" + f.rect + "\"");
  try {
    Canvas c{Rational::parse(f.rect.substr(0, x)), Rational::parse(f.rect.substr(x + 1))};
    if (c.width <= Rational(0) || c.height <= Rational(0)) throw UsageError("--rect needs positive sides");
    return c;
  } catch (const Error&) {
    throw UsageError("--rect expects WxH, got \"" + f.rect + "\"");
  }
}

Instance load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse, path + ": cannot open");
  try {
    return parse_instance(in);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.what());
  }
}

void save(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Error(Errc::serialization, path + ": cannot write");
}

RuntimeConfig config(const RunFlags& f, bool full_trace) {
  RuntimeConfig c;
  c.seed = f.seed;
  c.trace_mode = full_trace ? TraceMode::full : TraceMode::counts;
  return c;
}

int draw(const RunFlags& f, const std::string& in_path, const std::string& out_path, const std::string& svg_path,
         const std::string& trace_path, std::ostream& out) {
  const Algorithm a = algorithm(f);
  const Canvas cv = canvas(f);
  const Instance inst = load(in_path);
  TraceLog trace;
  const auto result = run_algorithm(a, inst, config(f, !trace_path.empty()), cv, &trace);
  std::ostringstream text;
  write_output(text, a, result);
  if (out_path.empty()) {
    out << text.str();
  } else {
    save(out_path, text.str());
  }
  if (!svg_path.empty()) {
    if (!result.drawing) throw UsageError("--svg needs a drawing algorithm");
    save(svg_path, emit_svg(*result.drawing, a == Algorithm::treemap ? EdgeList{} : drawing_edges(inst)));
  }
  if (!trace_path.empty()) {
    std::ostringstream t;
    write_trace(t, trace);
    save(trace_path, t.str());
  }
  return kExitOk;
}

int trace_cmd(const RunFlags& f, const std::string& in_path, const std::string& out_path, std::ostream& out) {
  TraceLog trace;
  run_algorithm(algorithm(f), load(in_path), config(f, true), canvas(f), &trace);
  std::ostringstream t;
  write_trace(t, trace);
  if (out_path.empty()) {
    out << t.str();
  } else {
    save(out_path, t.str());
  }
  return kExitOk;
}

int compare(const RunFlags& f, const std::vector<std::string>& inputs, std::ostream& out) {
  const Algorithm a = algorithm(f);
  const Canvas cv = canvas(f);
  std::size_t mismatches = 0;
  for (const auto& path : inputs) {
    const Instance inst = load(path);
    const auto got = run_algorithm(a, inst, config(f, false), cv);
    const Report rep = verify_output(a, inst, got, cv);
    if (rep.ok()) continue;
    ++mismatches;
    out << path << ": " << rep.violations.size() << " differences\n";
    for (const auto& v : rep.violations) out << "  " << v << '\n';
  }
  out << mismatches << " mismatches\n";
  return mismatches == 0 ? kExitOk : kExitMismatch;
}

bool audit_one(const std::string& label, const TraceLog& log, std::uint64_t budget, std::ostream& out) {
  const Report disc = check_round_discipline(log);
  out << "discipline " << label << ": ";
  if (disc.ok()) {
    out << "ok (" << log.rounds.size() << " rounds)\n";
  } else {
    out << disc.violations.size() << " violations, first: " << disc.violations.front() << '\n';
  }
  const auto ws = workspace_report(log, budget);
  out << "workspace " << label << ": peak " << ws.max_peak << " budget " << budget
      << (ws.report.ok() ? " ok" : " exceeded") << '\n';
  return disc.ok() && ws.report.ok();
}

int audit(const RunFlags& f, const std::vector<std::string>& inputs, const std::vector<std::string>& dumps,
          std::uint64_t dump_budget, std::ostream& out) {
  if (inputs.empty() == dumps.empty()) throw UsageError("audit takes input files (--in) or trace dumps (--dump)");
  std::vector<std::pair<std::string, TraceLog>> logs;
  std::vector<std::uint64_t> budgets;
  if (!inputs.empty()) {
    if (f.alg.empty()) throw UsageError("audit --in needs --alg");
    const Algorithm a = algorithm(f);
    for (const auto& path : inputs) {
      const Instance inst = load(path);
      TraceLog log;
      run_algorithm(a, inst, config(f, true), canvas(f), &log);
      logs.emplace_back(path, std::move(log));
      budgets.push_back(algorithm_budget(a, instance_size(inst)));
    }
  } else {
    for (const auto& path : dumps) {
      std::ifstream in(path);
      if (!in) throw Error(Errc::parse, path + ": cannot open");
      logs.emplace_back(path, read_trace(in));
      budgets.push_back(dump_budget);
    }
  }
  bool pass = true;
  for (std::size_t i = 0; i < logs.size(); ++i) pass &= audit_one(logs[i].first, logs[i].second, budgets[i], out);
  for (std::size_t i = 1; i < logs.size(); ++i) {
    const auto d = compare_traces(logs[0].second, logs[i].second);
    out << "trace " << logs[0].first << " vs " << logs[i].first << ": ";
    if (d.equal) {
      out << "equal\n";
    } else {
      out << "diverges at round " << (d.round ? std::to_string(*d.round) : "-") << " event "
          << (d.event ? std::to_string(*d.event) : "-") << ": " << d.detail << '\n';
      pass = false;
    }
  }
  out << "audit: " << (pass ? "pass" : "fail") << '\n';
  return pass ? kExitOk : kExitMismatch;
}

int generate(const std::string& kind, std::size_t size, std::uint64_t seed, bool areas, const std::string& out_path,
             std::ostream& out) {
  Instance inst;
  if (kind == "tree") {
    inst = generate_tree(size, seed, areas);
  } else if (kind == "binary") {
    inst = generate_binary_tree(size, seed);
  } else if (kind == "dag") {
    inst = generate_reduced_sp_dag(size, seed);
  } else {
    inst = generate_spq(size, seed);
  }
  std::ostringstream text;
  write_instance(text, inst);
  if (out_path.empty()) {
    out << text.str();
  } else {
    save(out_path, text.str());
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oblivious graph drawing on a simulated compressed-scanning store", "odraw"};
  app.require_subcommand(1);

  RunFlags draw_f, cmp_f, audit_f, trace_f;
  std::string in_path, out_path, svg_path, trace_path, trace_in, trace_out;
  std::vector<std::string> cmp_inputs, audit_inputs, audit_dumps;
  std::uint64_t dump_budget = kConstantWorkspaceBudget;

  auto* draw_cmd = app.add_subcommand("draw", "run an algorithm and print coordinates");
  add_run_flags(draw_cmd, draw_f);
  draw_cmd->add_option("--in", in_path, "input file")->required();
  draw_cmd->add_option("--out", out_path, "coordinates file (default stdout)");
  draw_cmd->add_option("--svg", svg_path, "SVG output file");
  draw_cmd->add_option("--trace", trace_path, "trace dump file");

  auto* cmp_cmd = app.add_subcommand("compare", "diff oblivious output against the reference");
  add_run_flags(cmp_cmd, cmp_f);
  cmp_cmd->add_option("--in", cmp_inputs, "input files")->required()->expected(1, -1);

  auto* audit_cmd = app.add_subcommand("audit", "audit traces of one or more runs under one seed");
  audit_cmd->add_option("--alg", audit_f.alg, "algorithm")
      ->check(CLI::IsMember({"subtree", "depth", "dominance", "treemap", "delta", "brect"}));
  audit_cmd->add_option("--mode", audit_f.mode, "dominance mode")->check(CLI::IsMember({"basic", "compressed"}));
  audit_cmd->add_option("--rect", audit_f.rect, "treemap canvas WxH");
  audit_cmd->add_option("--seed", audit_f.seed, "runtime seed");
  audit_cmd->add_option("--in", audit_inputs, "input files")->expected(1, -1);
  audit_cmd->add_option("--dump", audit_dumps, "trace dump files")->expected(1, -1);
  audit_cmd->add_option("--budget", dump_budget, "workspace budget for dumps");

  auto* trace_cmd_app = app.add_subcommand("trace", "dump the access trace of a run");
  add_run_flags(trace_cmd_app, trace_f);
  trace_cmd_app->add_option("--in", trace_in, "input file")->required();
  trace_cmd_app->add_option("--out", trace_out, "dump file (default stdout)");

  std::string gen_kind = "tree", gen_out;
  std::size_t gen_size = 16;
  std::uint64_t gen_seed = 0;
  bool gen_areas = false;
  auto* gen_cmd = app.add_subcommand("generate", "write a random instance file");
  gen_cmd->add_option("--kind", gen_kind, "tree, binary, dag or spq")
      ->check(CLI::IsMember({"tree", "binary", "dag", "spq"}));
  gen_cmd->add_option("--size", gen_size, "nodes (tree kinds) or Q leaves (dag, spq)")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_flag("--areas", gen_areas, "give leaves areas (tree)");
  gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*draw_cmd) return draw(draw_f, in_path, out_path, svg_path, trace_path, out);
    if (*cmp_cmd) return compare(cmp_f, cmp_inputs, out);
    if (*audit_cmd) return audit(audit_f, audit_inputs, audit_dumps, dump_budget, out);
    if (*trace_cmd_app) return trace_cmd(trace_f, trace_in, trace_out, out);
    return generate(gen_kind, gen_size, gen_seed, gen_areas, gen_out, out);
  } catch (const UsageError& e) {
    err << "error: usage: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == Errc::parse ? kExitParse : kExitModule;
  }
}

}  // namespace odraw
