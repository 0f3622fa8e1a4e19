// hmlc: batch verification front end.
//
// Subcommands: check, mc, prove, translate, correspond, soundness, smc.
// Exit codes: 0 success or a positive answer, 1 a negative answer (invalid
// formula, failed proof, counterexample found), 2 usage or I/O errors.
// Results go to stdout, diagnostics to stderr; --json switches results to
// one self-contained JSON record per line.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hml/proof_text.hpp"
#include "hml/smc.hpp"
#include "hml/soundness.hpp"
#include "hml/submodel.hpp"
#include "hml/translate.hpp"

using json = nlohmann::json;
using namespace hml;

namespace {

constexpr const char* kVersion = "hmlc 1.0.0";

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return 2;
}

struct Loaded {
  Signature sig;
  SymbolTable tab;
};

Loaded load_sig(const std::string& path) {
  auto [sig, tab] = load_signature_file(path);
  return {std::move(sig), std::move(tab)};
}

void print_version() {
  std::cout << kVersion << "\n\n";
  std::cout << "axiom schemes by deductive system:\n";
  for (SystemId sys : {SystemId::K_SIGMA, SystemId::H_AT, SystemId::H_FORALL,
                       SystemId::H_AT_FORALL}) {
    std::cout << "  " << system_name(sys) << ":";
    for (SchemeId id : axiom_schemes(sys)) std::cout << " " << scheme_name(id);
    std::cout << "\n";
  }
  std::cout << "  derived theorem schemes: NOM_Z SYM BRIDGE\n";
}

int cmd_check(const std::string& sig_path, const std::string& formula_text,
              const std::string& sort) {
  Loaded l = load_sig(sig_path);
  FormulaPtr f = parse_formula(l.sig, l.tab, formula_text);
  std::string want = sort.empty() ? f->sort : sort;
  if (auto err = well_sorted(l.sig, l.tab, f, want)) {
    std::cout << "sort error: " << err->message << " (expected " << err->expected << ", found "
              << err->found << ")\n";
    return 1;
  }
  std::cout << "ok: " << print_formula(f) << " : " << want << "\n";
  return 0;
}

int cmd_mc(const std::string& sig_path, const std::string& model_path,
           const std::string& formula_text, const std::string& world, bool all_worlds,
           bool as_json) {
  Loaded l = load_sig(sig_path);
  Model m = load_model_file(l.sig, l.tab, model_path);
  FormulaPtr f = parse_formula(l.sig, l.tab, formula_text);
  bool result = false;
  json rec{{"cmd", "mc"}, {"formula", print_formula(f)}};
  if (all_worlds) {
    result = valid_in_model(l.sig, l.tab, m, f);
    rec["mode"] = "all-worlds";
  } else {
    if (world.empty()) return usage_error("mc needs --world or --all-worlds");
    int idx = m.world_index(f->sort, world);
    if (idx < 0) return usage_error("unknown world " + world + " of sort " + f->sort);
    result = satisfies(l.sig, l.tab, m, m.default_assignment, WorldRef{f->sort, idx}, f);
    rec["world"] = world;
  }
  rec["result"] = result;
  if (as_json)
    std::cout << rec.dump() << "\n";
  else
    std::cout << (result ? "true" : "false") << "\n";
  return result ? 0 : 1;
}

int cmd_prove(const std::string& system_name_arg, const std::string& sig_path,
              const std::string& theory_name, const std::vector<std::string>& hyp_texts,
              const std::string& proof_path, bool as_json) {
  auto system = system_by_name(system_name_arg);
  if (!system) return usage_error("unknown system " + system_name_arg);
  Loaded l = load_sig(sig_path);

  std::optional<smc::Bundle> bundle;
  std::optional<Theory> theory;
  if (!theory_name.empty()) {
    if (theory_name != "smc") return usage_error("unknown theory " + theory_name);
    bundle = smc::build_signature();
    theory = smc::theory(*bundle);
  }

  ProofDoc doc = load_proof_file(l.sig, l.tab, proof_path);
  int next = 1;
  for (const auto& t : hyp_texts)
    doc.hypotheses.emplace_back("h" + std::to_string(next++), parse_formula(l.sig, l.tab, t));

  Verdict v = check_proof(l.sig, l.tab, *system, theory ? &*theory : nullptr, doc.hypotheses,
                          doc.lines);
  if (as_json) {
    json rec{{"cmd", "prove"}, {"proof", proof_path}, {"ok", v.ok}};
    if (!v.ok) {
      rec["line"] = v.line;
      rec["reason"] = fail_reason_name(v.reason);
      rec["detail"] = v.detail;
    }
    std::cout << rec.dump() << "\n";
  } else if (v.ok) {
    std::cout << "ok: " << doc.lines.size() << " lines\n";
  } else {
    std::cout << "fail: line " << v.line << " " << fail_reason_name(v.reason)
              << (v.detail.empty() ? "" : " (" + v.detail + ")") << "\n";
  }
  return v.ok ? 0 : 1;
}

int cmd_translate(const std::string& sig_path, const std::string& formula_text,
                  const std::string& pivot_name, const std::string& out_path) {
  Loaded l = load_sig(sig_path);
  FormulaPtr f = parse_formula(l.sig, l.tab, formula_text);
  FOTerm pivot = pivot_name.empty() ? pivot_for(f) : FOTerm{TKind::Var, pivot_name, f->sort};
  VarSupply supply = supply_for(f, pivot);
  std::string text = export_fo(standard_translate(l.sig, l.tab, f, pivot, supply));
  if (out_path.empty()) {
    std::cout << text << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) return usage_error("cannot write " + out_path);
    out << text << "\n";
  }
  return 0;
}

int cmd_correspond(const std::string& sig_path, const std::string& model_path,
                   const std::string& formula_text, int trials, uint64_t seed, bool as_json) {
  Loaded l = load_sig(sig_path);
  Model m = load_model_file(l.sig, l.tab, model_path);
  FormulaPtr f = parse_formula(l.sig, l.tab, formula_text);
  Rng rng(seed);
  int agree = 0;
  for (int i = 0; i < trials; ++i) {
    Assignment g = random_assignment(m, free_state_vars(f), rng);
    WorldRef w{f->sort, rng.below_int(m.world_count(f->sort))};
    if (correspondence_check(l.sig, l.tab, m, g, w, f)) ++agree;
  }
  if (as_json)
    std::cout << json{{"cmd", "correspond"}, {"trials", trials}, {"agreements", agree}}.dump()
              << "\n";
  else
    std::cout << agree << "/" << trials << " trials agree\n";
  return agree == trials ? 0 : 1;
}

int cmd_soundness(const std::string& system_arg, const std::string& scheme_arg, int trials,
                  uint64_t seed, int size, int depth, bool negative_control, bool as_json) {
  SweepOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.max_worlds = size;
  opt.depth = depth;

  std::vector<SweepReport> reports;
  if (negative_control) {
    reports.push_back(negative_control_sweep(opt));
  } else if (!scheme_arg.empty()) {
    auto id = scheme_by_name(scheme_arg);
    if (!id) return usage_error("unknown scheme " + scheme_arg);
    reports.push_back(soundness_sweep(*id, opt));
  } else if (!system_arg.empty()) {
    auto sys = system_by_name(system_arg);
    if (!sys) return usage_error("unknown system " + system_arg);
    for (SchemeId id : axiom_schemes(*sys)) reports.push_back(soundness_sweep(id, opt));
  } else {
    for (SchemeId id : sweep_schemes()) reports.push_back(soundness_sweep(id, opt));
  }

  bool all_clean = true;
  for (const auto& r : reports) {
    all_clean = all_clean && r.clean() && r.skipped == 0;
    if (as_json) {
      json rec{{"cmd", "soundness"},
               {"scheme", r.scheme},
               {"trials", r.trials},
               {"skipped", r.skipped},
               {"counterexamples", r.counterexamples.size()}};
      if (!r.counterexamples.empty()) {
        const auto& c = r.counterexamples.front();
        rec["first"] = {{"trial", c.trial}, {"instance", c.instance},
                        {"world", c.world},  {"assignment", c.assignment},
                        {"model", c.model},  {"vocabulary", c.vocabulary}};
      }
      std::cout << rec.dump() << "\n";
    } else {
      std::cout << r.scheme << ": trials=" << r.trials << " counterexamples="
                << r.counterexamples.size() << " skipped=" << r.skipped << "\n";
      if (!r.counterexamples.empty()) {
        const auto& c = r.counterexamples.front();
        std::cout << "  first counterexample (trial " << c.trial << "): " << c.instance
                  << " at world " << c.world << "\n";
      }
    }
  }
  if (negative_control) return reports.front().counterexamples.empty() ? 1 : 0;
  return all_clean ? 0 : 1;
}

std::map<std::string, uint64_t> parse_memory_flag(const std::string& text) {
  std::map<std::string, uint64_t> mem;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                    : comma - pos);
    size_t eq = item.find('=');
    if (eq == std::string::npos) throw Error("bad --mem entry: " + item);
    mem[item.substr(0, eq)] = std::stoull(item.substr(eq + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return mem;
}

int cmd_smc_run(const std::string& program_path, const std::string& mem_flag, int fuel,
                bool as_json) {
  smc::Bundle b = smc::build_signature();
  FormulaPtr pgm = smc::load_program_file(b, program_path);
  smc::ConcreteConfig init;
  if (!mem_flag.empty()) init.memory = parse_memory_flag(mem_flag);
  smc::RunResult r = smc::run(b, init, f_app(b.sig, "cstmt", {pgm}), fuel);

  const char* status = r.status == smc::RunStatus::Done      ? "done"
                       : r.status == smc::RunStatus::OutOfFuel ? "out-of-fuel"
                                                               : "stuck";
  if (as_json) {
    json stack = json::array();
    for (const auto& v : r.config.stack)
      stack.push_back(v.is_bool ? json(v.truth) : json(v.nat));
    json mem = json::object();
    for (const auto& [k, v] : r.config.memory) mem[k] = v;
    json rec{{"cmd", "smc-run"}, {"status", status}, {"steps", r.steps},
             {"stack", stack},   {"memory", mem}};
    if (!r.detail.empty()) rec["detail"] = r.detail;
    std::cout << rec.dump() << "\n";
  } else {
    std::cout << "status: " << status << " (" << r.steps << " steps)\n";
    std::cout << "stack (top first):";
    for (auto it = r.config.stack.rbegin(); it != r.config.stack.rend(); ++it)
      std::cout << " " << (it->is_bool ? (it->truth ? "true" : "false")
                                       : std::to_string(it->nat));
    std::cout << "\nmemory:";
    for (const auto& [k, v] : r.config.memory) std::cout << " " << k << "=" << v;
    std::cout << "\n";
    if (!r.detail.empty()) std::cout << "detail: " << r.detail << "\n";
  }
  return r.status == smc::RunStatus::Done ? 0 : 1;
}

int cmd_smc_verify(bool as_json) {
  LibraryEntry e = smc::p_prime_entry();
  smc::Bundle b = smc::build_signature();
  Theory th = smc::theory(b);

  // check line prefixes one by one so every line gets a verdict
  std::map<int, int> line_to_milestone;
  for (const auto& [k, idx] : e.milestones) line_to_milestone[idx] = k;
  bool ok = true;
  int fail_line = 0;
  Verdict v = check_proof(e.sig, e.tab, e.system, &th, e.hypotheses, e.lines);
  ok = v.ok;
  fail_line = v.line;
  for (const auto& ln : e.lines) {
    bool line_ok = ok || ln.index < fail_line;
    std::string tag;
    if (auto it = line_to_milestone.find(ln.index); it != line_to_milestone.end())
      tag = " step " + std::to_string(it->second);
    if (as_json) {
      json rec{{"cmd", "smc-verify"}, {"line", ln.index}, {"ok", line_ok}};
      if (!tag.empty()) rec["step"] = line_to_milestone[ln.index];
      std::cout << rec.dump() << "\n";
    } else {
      std::cout << (line_ok ? "ok  " : "FAIL") << " " << ln.index << tag << "  "
                << print_formula(ln.formula) << "\n";
    }
    if (!line_ok) break;
  }
  if (as_json) {
    json rec{{"cmd", "smc-verify"}, {"ok", ok}, {"lines", e.lines.size()}};
    if (!ok) {
      rec["line"] = v.line;
      rec["reason"] = fail_reason_name(v.reason);
    }
    std::cout << rec.dump() << "\n";
  } else {
    std::cout << (ok ? "verified" : "rejected") << ": " << e.lines.size() << " lines, "
              << e.hypotheses.size() << " hypotheses\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"many-sorted hybrid modal logic toolkit"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "print version and the scheme table");

  std::string sig_path, model_path, formula_text, sort, world, pivot, out_path;
  std::string system_arg, theory_arg, scheme_arg, proof_path, program_path, mem_flag;
  std::vector<std::string> hyp_texts;
  bool all_worlds = false, as_json = false, negative_control = false, pprime = false;
  int trials = 1000, fuel = 10000, size = 3, depth = 3;
  uint64_t seed = 0;

  CLI::App* check = app.add_subcommand("check", "parse and sort-check a formula");
  check->add_option("--sig", sig_path)->required();
  check->add_option("--formula", formula_text)->required();
  check->add_option("--sort", sort);

  CLI::App* mc = app.add_subcommand("mc", "model-check a formula over a finite model");
  mc->add_option("--sig", sig_path)->required();
  mc->add_option("--model", model_path)->required();
  mc->add_option("--formula", formula_text)->required();
  mc->add_option("--world", world);
  mc->add_flag("--all-worlds", all_worlds);
  mc->add_flag("--json", as_json);

  CLI::App* prove = app.add_subcommand("prove", "check a proof file");
  prove->add_option("--system", system_arg)->required();
  prove->add_option("--sig", sig_path)->required();
  prove->add_option("--theory", theory_arg);
  prove->add_option("--hyp", hyp_texts);
  prove->add_option("--proof", proof_path)->required();
  prove->add_flag("--json", as_json);

  CLI::App* translate = app.add_subcommand("translate", "standard translation to first-order text");
  translate->add_option("--sig", sig_path)->required();
  translate->add_option("--formula", formula_text)->required();
  translate->add_option("--pivot", pivot);
  translate->add_option("--out", out_path);

  CLI::App* correspond = app.add_subcommand("correspond", "modal vs first-order agreement");
  correspond->add_option("--sig", sig_path)->required();
  correspond->add_option("--model", model_path)->required();
  correspond->add_option("--formula", formula_text)->required();
  correspond->add_option("--trials", trials);
  correspond->add_option("--seed", seed);
  correspond->add_flag("--json", as_json);

  CLI::App* soundness = app.add_subcommand("soundness", "randomized axiom soundness sweep");
  soundness->add_option("--system", system_arg);
  soundness->add_option("--scheme", scheme_arg);
  soundness->add_option("--trials", trials);
  soundness->add_option("--seed", seed);
  soundness->add_option("--size", size, "max worlds per sort");
  soundness->add_option("--depth", depth, "max depth of random formulas");
  soundness->add_flag("--negative-control", negative_control,
                      "sweep the deliberately broken scheme instead");
  soundness->add_flag("--json", as_json);

  CLI::App* smc_cmd = app.add_subcommand("smc", "the stack machine case study");
  CLI::App* smc_run = smc_cmd->add_subcommand("run", "run a program on the machine");
  smc_run->add_option("--program", program_path)->required();
  smc_run->add_option("--mem", mem_flag, "initial memory, e.g. a=3,b=4");
  smc_run->add_option("--fuel", fuel);
  smc_run->add_flag("--json", as_json);
  CLI::App* smc_verify = smc_cmd->add_subcommand("verify", "replay the correctness derivation");
  smc_verify->add_flag("--pprime", pprime, "the example program's property");
  smc_verify->add_flag("--json", as_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (version) {
      print_version();
      return 0;
    }
    if (check->parsed()) return cmd_check(sig_path, formula_text, sort);
    if (mc->parsed()) return cmd_mc(sig_path, model_path, formula_text, world, all_worlds, as_json);
    if (prove->parsed())
      return cmd_prove(system_arg, sig_path, theory_arg, hyp_texts, proof_path, as_json);
    if (translate->parsed()) return cmd_translate(sig_path, formula_text, pivot, out_path);
    if (correspond->parsed())
      return cmd_correspond(sig_path, model_path, formula_text, trials, seed, as_json);
    if (soundness->parsed())
      return cmd_soundness(system_arg, scheme_arg, trials, seed, size, depth, negative_control,
                           as_json);
    if (smc_cmd->parsed()) {
      if (smc_run->parsed()) return cmd_smc_run(program_path, mem_flag, fuel, as_json);
      if (smc_verify->parsed()) {
        if (!pprime) return usage_error("smc verify needs --pprime");
        return cmd_smc_verify(as_json);
      }
      return usage_error("smc needs a subcommand (run or verify)");
    }
    std::cerr << app.help();
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
