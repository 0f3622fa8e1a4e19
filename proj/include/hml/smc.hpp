// The stack-memory-control machine case study: its many-sorted vocabulary,
// the dynamic-logic style theory axioms with computed side conditions, a
// concrete small-step interpreter serving as an independent oracle, the
// statement language, and the machine-checked correctness derivation for the
// example program.

#pragma once

#include "hml/library.hpp"
#include "hml/random.hpp"

namespace hml::smc {

using hml::Binding;
using hml::FormulaPtr;
using hml::LibraryEntry;
using hml::Rng;
using hml::Signature;
using hml::SymbolTable;
using hml::Theory;

// Numerals 0..kMaxNumeral are 0-ary Nat operators.
constexpr uint64_t kMaxNumeral = 256;

struct Bundle {
  Signature sig;
  SymbolTable tab;  // vs : ValStack, mem : Mem, cfg : Config props; mem' : Mem state variable
};

// The fixed machine vocabulary: sorts Nat, Var, Bool, AExp, BExp, Stmt, Val,
// ValStack, Mem, CtrlStack, Config; explicit injection operators; numerals;
// and a pool of program identifiers (m, i1, i2, i3, a, b, c, d, n, sum).
Bundle build_signature();

// Term builders over the bundle's signature.
FormulaPtr nat_term(const Bundle& b, uint64_t n);
FormulaPtr var_term(const Bundle& b, const std::string& id);
FormulaPtr val_nat(const Bundle& b, uint64_t n);
FormulaPtr val_bool(const Bundle& b, bool v);
// [pi]gamma, the universal reading of the execution operator.
FormulaPtr boxed(const Bundle& b, FormulaPtr pi, FormulaPtr gamma);

// Theory axiom generators: A_UNION, A_SEQ, A_STAR, A_TEST, A_NEG_TEST, CSTMT,
// AMEM0..AMEM3, AINT, AID, DPLUS, APLUS, DLEQ, ALEQ, ASKIP, DASGN, AASGN,
// DIF, DWHILE, NOCONFUSION.  Arithmetic slots are computed, never assumed:
// requesting APLUS with an explicit n different from n1 + n2, or AMEM2 with
// equal identifiers, raises a side-condition violation.  The vs/mem/gamma
// slots default to the bundle's propositional atoms.
Theory theory(const Bundle& b);
FormulaPtr axiom_instance(const Bundle& b, const std::string& name,
                          const std::map<std::string, Binding>& params);

// ---- the concrete machine ----

struct Value {
  bool is_bool = false;
  uint64_t nat = 0;
  bool truth = false;

  static Value of_nat(uint64_t n) { return Value{false, n, false}; }
  static Value of_bool(bool v) { return Value{true, 0, v}; }
  bool operator==(const Value& o) const {
    return is_bool == o.is_bool && (is_bool ? truth == o.truth : nat == o.nat);
  }
};

struct ConcreteConfig {
  std::vector<Value> stack;  // top at the back
  std::map<std::string, uint64_t> memory;

  bool operator==(const ConcreteConfig& o) const {
    return stack == o.stack && memory == o.memory;
  }
};

enum class RunStatus { Done, OutOfFuel, Stuck };

struct RunResult {
  RunStatus status = RunStatus::Done;
  ConcreteConfig config;
  int steps = 0;
  std::string detail;  // why the machine stopped, when it did not finish
};

// Small-step execution of a ground control term from a concrete
// configuration.  Uninitialized identifiers read as 0; branching through
// union and star is resolved by the branches' leading tests against the top
// of the value stack.
RunResult run(const Bundle& b, ConcreteConfig init, const FormulaPtr& ctrl, int fuel = 10000);

// Decodes a ground Val term; throws Error on non-ground input.
Value value_of_term(const Bundle& b, const FormulaPtr& t);

// One-step oracle/axiom agreement for the named single-step axiom (AINT,
// AID, APLUS, ALEQ, AASGN, ASKIP, A_TEST): draws a random concretization,
// runs the axiom's control, and compares the post-state with the consequent
// pattern.  Returns false with an explanation on disagreement.
bool axiom_step_agreement(const Bundle& b, const std::string& axiom, Rng& rng,
                          std::string* detail = nullptr);

// ---- the statement language ----

// Concrete syntax: skip, ID := AEXP, if BEXP then S else S, while BEXP do S,
// S ; S (right associative), parentheses; AEXP: numerals, identifiers, +;
// BEXP: AEXP <= AEXP.
FormulaPtr parse_program(const Bundle& b, std::string_view text);
FormulaPtr load_program_file(const Bundle& b, const std::string& path);
std::string print_program(const FormulaPtr& stmt);

// i1 := 1; i2 := 2; if i1 <= i2 then m := i1 else m := i2
FormulaPtr example_program(const Bundle& b);

// ---- the correctness derivation ----

// The correctness property of the example program: under the two imported
// run-description hypotheses, config(vs, mem) -> [c(pgm)] @_mem' get(m, 1).
LibraryEntry p_prime_entry();

// The full replayable library: NOM_Z, SYM, BRIDGE and P_PRIME.
std::map<std::string, LibraryEntry> theorem_library();

}  // namespace hml::smc
