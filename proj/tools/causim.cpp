// causim — command-line front end.
//
// Commands: run, check, nf, sat, valid, synth. Exit codes are uniform:
// 0 for a positive answer (or plain success), 1 for a negative answer,
// 2 for any usage, parse, or internal error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "causim/decision.hpp"
#include "causim/interpreter.hpp"
#include "causim/model_checker.hpp"
#include "causim/normal_form.hpp"
#include "causim/pl.hpp"
#include "causim/syntax.hpp"

namespace {

using nlohmann::json;
using namespace causim;

constexpr int kExitPositive = 0;
constexpr int kExitNegative = 1;
constexpr int kExitError = 2;

struct Options {
  std::string format = "text";
  std::string dialect = "full";
  bool oracle = false;
  std::int64_t fragment_c = 0;  // 0 = derive the smallest sufficient value
  std::uint64_t seed = 0;       // reserved for corpus tooling; commands are deterministic
};

bool json_mode(const Options& o) { return o.format != "text"; }

Dialect dialect_of(const Options& o) {
  auto d = dialect_from_string(o.dialect);
  if (!d) throw CLI::ValidationError("--dialect", "expected full|det|halting|det-halting");
  return *d;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << contents;
  if (!contents.empty() && contents.back() != '\n') out << "\n";
}

std::string tape_text(const Tape& t) {
  std::string s = t.to_string();
  return s.empty() ? "-" : s;
}

json witness_json(const SatWitness& w) {
  return json{{"program", to_string(w.model.program)},
              {"tape", w.model.tape.to_string()},
              {"clause", to_string(clause_to_formula(w.clause))},
              {"clause_index", w.clause_index}};
}

void print_witness_text(const SatWitness& w) {
  std::cout << "clause " << w.clause_index << ": " << to_string(clause_to_formula(w.clause)) << "\n";
  std::cout << "tape: " << tape_text(w.model.tape) << "\n";
  std::cout << "program: " << to_string(w.model.program) << "\n";
}

int cmd_run(const Options& opts, const std::string& program_file, const std::string& tape_literal,
            const std::string& intervention_literal) {
  PLProgram program = parse_program(read_file(program_file));
  Tape tape = parse_tape(tape_literal);
  ClampSet clamps = clamp_of(parse_intervention(intervention_literal));
  ExecutionSummary summary = execute(program, tape, clamps);
  if (json_mode(opts)) {
    json out{{"command", "run"},
             {"diverges", summary.diverges},
             {"paths", summary.paths_explored},
             {"outputs", json::array()}};
    for (const Tape& t : summary.halting_outputs) out["outputs"].push_back(t.to_string());
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "paths: " << summary.paths_explored << "\n";
    std::cout << "diverges: " << (summary.diverges ? "true" : "false") << "\n";
    for (const Tape& t : summary.halting_outputs) std::cout << "output: " << tape_text(t) << "\n";
  }
  return kExitPositive;
}

// For a top-level conditional the answer comes with a replayable path: the
// choose decisions of a satisfying run (diamond true) or of a violating run
// (box false).
std::optional<std::vector<std::size_t>> evidence_path(const Model& m, const Formula& f, bool result) {
  if (f.kind() != Formula::Kind::Cond) return std::nullopt;
  const CondAtom& c = f.cond_atom();
  if (c.modality == Modality::Diamond && !result) return std::nullopt;
  if (c.modality == Modality::Box && result) return std::nullopt;
  bool want_satisfying = c.modality == Modality::Diamond;
  for (const ExecutionPath& path : enumerate_paths(m.program, m.tape, clamp_of(c.antecedent))) {
    if (!path.output) continue;
    if (prop_eval(*path.output, c.consequent) == want_satisfying) return path.choices;
  }
  return std::nullopt;
}

int cmd_check(const Options& opts, const std::string& program_file, const std::string& formula_text,
              const std::string& tape_literal) {
  Model m{parse_program(read_file(program_file)), parse_tape(tape_literal)};
  Formula f = parse_formula(formula_text);
  bool result = check(m, f);
  auto path = evidence_path(m, f, result);
  if (json_mode(opts)) {
    json out{{"command", "check"}, {"result", result}};
    if (path) out["path"] = *path;
    std::cout << out.dump() << "\n";
  } else {
    std::cout << (result ? "true" : "false") << "\n";
    if (path) {
      std::cout << "path:";
      for (std::size_t c : *path) std::cout << " " << c;
      std::cout << "\n";
    }
  }
  return result ? kExitPositive : kExitNegative;
}

int cmd_nf(const Options& opts, const std::string& formula_text) {
  std::vector<NormalClause> clauses = to_normal_form(parse_formula(formula_text));
  if (json_mode(opts)) {
    json out{{"command", "nf"}, {"clauses", json::array()}};
    for (const NormalClause& c : clauses) out["clauses"].push_back(to_string(clause_to_formula(c)));
    std::cout << out.dump() << "\n";
  } else {
    for (const NormalClause& c : clauses) std::cout << to_string(clause_to_formula(c)) << "\n";
  }
  return kExitPositive;
}

void cross_check_with_oracle(const Formula& f, Dialect d, const SatResult& result) {
  bool oracle = brute_force_sat_small(f, d, 2, 2);
  if (oracle == result.satisfiable()) return;
  if (result.satisfiable())
    throw std::runtime_error(
        "oracle disagreement: sat found a witness but the bounded table search found none "
        "(bug, or the formula needs more than the oracle's output bound)");
  throw std::runtime_error("oracle disagreement: a satisfying table exists but sat said unsatisfiable (bug)");
}

int report_sat(const Options& opts, const Formula& f, const SatResult& result, const char* command,
               const std::string& witness_file) {
  Dialect d = dialect_of(opts);
  std::optional<std::int64_t> c_used;
  bool fragment_ok = false;
  if (result.satisfiable()) {
    c_used = opts.fragment_c > 0 ? opts.fragment_c : min_fragment_c(result.witness->model, f);
    fragment_ok = in_fragment(result.witness->model.program, f, *c_used);
    if (!witness_file.empty()) write_file(witness_file, to_string(result.witness->model.program));
  }
  if (json_mode(opts)) {
    json out{{"command", command}, {"dialect", to_string(d)}, {"satisfiable", result.satisfiable()}};
    if (result.satisfiable()) {
      out["witness"] = witness_json(*result.witness);
      out["fragment_c"] = *c_used;
      out["in_fragment"] = fragment_ok;
    } else {
      out["rejections"] = json::array();
      for (const ClauseRejection& r : result.rejections)
        out["rejections"].push_back(json{{"clause_index", r.clause_index},
                                         {"clause", to_string(clause_to_formula(r.clause))},
                                         {"reason", r.reason.detail}});
    }
    std::cout << out.dump() << "\n";
  } else if (result.satisfiable()) {
    std::cout << "satisfiable (" << to_string(d) << ")\n";
    print_witness_text(*result.witness);
    std::cout << "fragment: " << (fragment_ok ? "ok" : "NOT in fragment") << " (C=" << *c_used << ")\n";
  } else {
    std::cout << "unsatisfiable (" << to_string(d) << ")\n";
    for (const ClauseRejection& r : result.rejections)
      std::cout << "clause " << r.clause_index << ": " << to_string(clause_to_formula(r.clause)) << "\n    "
                << r.reason.detail << "\n";
  }
  return result.satisfiable() ? kExitPositive : kExitNegative;
}

int cmd_sat(const Options& opts, const std::string& formula_text, const std::string& witness_file) {
  Formula f = parse_formula(formula_text);
  Dialect d = dialect_of(opts);
  SatResult result = sat(f, d);
  if (opts.oracle) cross_check_with_oracle(f, d, result);
  return report_sat(opts, f, result, "sat", witness_file);
}

int cmd_valid(const Options& opts, const std::string& formula_text, const std::string& countermodel_file) {
  Formula f = parse_formula(formula_text);
  Dialect d = dialect_of(opts);
  ValidityResult result = valid(f, d);
  if (json_mode(opts)) {
    json out{{"command", "valid"}, {"dialect", to_string(d)}, {"valid", result.valid}};
    if (!result.valid) out["countermodel"] = witness_json(*result.countermodel);
    std::cout << out.dump() << "\n";
  } else if (result.valid) {
    std::cout << "valid (" << to_string(d) << ")\n";
  } else {
    std::cout << "invalid (" << to_string(d) << "), countermodel:\n";
    print_witness_text(*result.countermodel);
  }
  if (!result.valid && !countermodel_file.empty())
    write_file(countermodel_file, to_string(result.countermodel->model.program));
  return result.valid ? kExitPositive : kExitNegative;
}

int cmd_synth(const Options& opts, const std::string& formula_text, const std::string& out_file) {
  Formula f = parse_formula(formula_text);
  Dialect d = dialect_of(opts);
  SatResult result = sat(f, d);
  if (!result.satisfiable()) return report_sat(opts, f, result, "synth", "");
  if (!out_file.empty()) write_file(out_file, to_string(result.witness->model.program));
  if (json_mode(opts)) {
    json out{{"command", "synth"},
             {"dialect", to_string(d)},
             {"satisfiable", true},
             {"witness", witness_json(*result.witness)}};
    std::cout << out.dump() << "\n";
  } else {
    std::cout << to_string(result.witness->model.program) << "\n";
    std::cout << "tape: " << tape_text(result.witness->model.tape) << "\n";
  }
  return kExitPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"causim — interventions on simulation programs: run them, model-check conditionals "
               "against them, and decide satisfiability/validity of conditional formulas"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  Options opts;
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "json-like"}))
      ->capture_default_str();
  app.add_option("--dialect", opts.dialect, "Program class for sat/valid/synth")
      ->check(CLI::IsMember({"full", "det", "halting", "det-halting"}))
      ->capture_default_str();
  app.add_flag("--oracle", opts.oracle, "Cross-check sat against the bounded table oracle");
  app.add_option("--fragment-C", opts.fragment_c, "Branch-bound constant for fragment membership reports");
  app.add_option("--seed", opts.seed, "Reserved for corpus-generation tooling (commands are deterministic)");

  std::string program_file, formula_text, tape_literal, intervention_literal, out_file;

  CLI::App* run = app.add_subcommand("run", "Execute a program on a tape under an intervention");
  run->add_option("program", program_file, "Program file")->required();
  run->add_option("--tape", tape_literal, "Initial tape, e.g. \"X1=1,X3=1\"");
  run->add_option("--intervene", intervention_literal, "Intervention clause, e.g. \"X1 & !X2\"");

  CLI::App* chk = app.add_subcommand("check", "Decide whether (program, tape) satisfies a formula");
  chk->add_option("program", program_file, "Program file")->required();
  chk->add_option("formula", formula_text, "Formula")->required();
  chk->add_option("--tape", tape_literal, "Initial tape");

  CLI::App* nf = app.add_subcommand("nf", "Print the conditional disjunctive normal form");
  nf->add_option("formula", formula_text, "Formula")->required();

  CLI::App* sat_cmd = app.add_subcommand("sat", "Decide satisfiability; exit 0 iff satisfiable");
  sat_cmd->add_option("formula", formula_text, "Formula")->required();
  sat_cmd->add_option("--emit-witness", out_file, "Write the witness program to a file");

  CLI::App* valid_cmd = app.add_subcommand("valid", "Decide validity; exit 0 iff valid");
  valid_cmd->add_option("formula", formula_text, "Formula")->required();
  valid_cmd->add_option("--emit-countermodel", out_file, "Write the countermodel program to a file");

  CLI::App* synth = app.add_subcommand("synth", "Synthesize a witness program and tape");
  synth->add_option("formula", formula_text, "Formula")->required();
  synth->add_option("-o,--output", out_file, "Write the program to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitError;
  }

  try {
    if (run->parsed()) return cmd_run(opts, program_file, tape_literal, intervention_literal);
    if (chk->parsed()) return cmd_check(opts, program_file, formula_text, tape_literal);
    if (nf->parsed()) return cmd_nf(opts, formula_text);
    if (sat_cmd->parsed()) return cmd_sat(opts, formula_text, out_file);
    if (valid_cmd->parsed()) return cmd_valid(opts, formula_text, out_file);
    if (synth->parsed()) return cmd_synth(opts, formula_text, out_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
