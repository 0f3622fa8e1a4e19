// Hilbert-style proof checking for the four deductive systems.
//
// A proof is a sequence of lines; each line carries its formula, sort, and a
// justification.  The checker validates every line by structural equality
// against the justification's expected shape; scheme instances come with
// explicit bindings, so no scheme matching is ever performed.  Generalization
// rules (UG, GEN, GEN_AT, BROADCAST, PASTE0/1) only apply to lines that do not
// depend on hypotheses.

#pragma once

#include <functional>
#include <variant>

#include "hml/schemes.hpp"

namespace hml {

struct Justification {
  enum Kind {
    Hypothesis,   // hyp NAME
    Axiom,        // ax SCHEME {bindings}
    TheoryAxiom,  // thax NAME {params}
    MP,           // mp i j          (j : i -> this)
    UG,           // ug OP POS i [sides]
    GEN,          // gen X i
    GEN_AT,       // genat Z i
    BROADCAST,    // bcast SORT i
    PASTE0,       // paste0 Y i
    PASTE1,       // paste1 Y i
  } kind = Hypothesis;

  std::string name;                  // Hypothesis/TheoryAxiom name
  SchemeInstance scheme;             // Axiom
  std::map<std::string, Binding> params;  // TheoryAxiom
  int i = 0, j = 0;                  // premise line numbers (1-based)
  std::string op;                    // UG operator
  int pos = 0;                       // UG position (1-based)
  std::vector<FormulaPtr> sides;     // UG side formulas (skipping pos)
  StateSymbol sym;                   // GEN / GEN_AT / PASTE0 / PASTE1 symbol
  std::string sort;                  // BROADCAST target sort
};

struct ProofLine {
  int index = 0;  // 1-based, consecutive
  std::string sort;
  FormulaPtr formula;
  Justification just;
};

// A named theory axiom generator: params in, instance out.  Throws
// SchemeError("sideConditionViolation", ...) when a computed side condition
// fails.
using TheoryGenerator =
    std::function<FormulaPtr(const Signature&, const SymbolTable&,
                             const std::map<std::string, Binding>&)>;

struct Theory {
  std::string name;
  std::map<std::string, TheoryGenerator> generators;
};

enum class FailReason {
  NONE,
  BAD_INDEX,
  NOT_WELL_SORTED,
  SORT_MISMATCH,
  UNKNOWN_HYPOTHESIS,
  HYPOTHESIS_MISMATCH,
  SCHEME_NOT_IN_SYSTEM,
  RULE_NOT_IN_SYSTEM,
  MISSING_BINDING,
  BAD_BINDING,
  SIDE_CONDITION,
  INSTANCE_MISMATCH,
  NOT_TAUTOLOGY,
  TOO_MANY_ATOMS,
  NO_THEORY,
  UNKNOWN_THEORY_AXIOM,
  MP_SHAPE,
  UG_SHAPE,
  GEN_SHAPE,
  GEN_AT_SHAPE,
  BROADCAST_SHAPE,
  PASTE_SHAPE,
  PASTE_FRESHNESS,
  PREMISE_HAS_HYPOTHESIS,
};

const char* fail_reason_name(FailReason r);

struct Verdict {
  bool ok = true;
  int line = 0;  // first offending line when !ok
  FailReason reason = FailReason::NONE;
  std::string detail;

  static Verdict pass() { return {}; }
  static Verdict fail(int line, FailReason r, std::string detail = "") {
    return {false, line, r, std::move(detail)};
  }
};

using Hypotheses = std::vector<std::pair<std::string, FormulaPtr>>;

Verdict check_proof(const Signature& sig, const SymbolTable& tab, SystemId system,
                    const Theory* theory, const Hypotheses& hypotheses,
                    const std::vector<ProofLine>& proof);

// Whether a rule may be cited in the given system.
bool rule_in_system(Justification::Kind kind, SystemId system);

}  // namespace hml
