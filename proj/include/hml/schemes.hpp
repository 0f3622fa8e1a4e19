// Axiom schemes of the four deductive systems, their instantiation from
// explicit metavariable bindings, and the propositional tautology check.
//
// Binding keys per scheme (pos and arg/side indices are 1-based):
//   TAUT       phi
//   K_SIGMA_AX op pos phi chi side<k> (k != pos)
//   DUAL       op arg<k>
//   K_AT       z s phi psi          SELFDUAL  z s phi
//   INTRO      z phi                AGREE     y z s phi
//   REF        z s                  BACK      op pos z psi side<k>
//   Q1         x phi psi            Q2        x z phi
//   NAME       x                    BARCAN    op pos x arg<k>
//   NOM        x phi eta theta      BARCAN_AT x z s phi
//   NOM_X      x z y s
// Derived theorem schemes (swept, never cited as axioms):
//   NOM_Z      z y s phi            SYM       z y s
//   BRIDGE     op pos z phi side<k>

#pragma once

#include <variant>

#include "hml/context.hpp"

namespace hml {

enum class SchemeId {
  TAUT, K_SIGMA_AX, DUAL,
  K_AT, SELFDUAL, INTRO, AGREE, REF, BACK,
  Q1, Q2, NAME, BARCAN, NOM,
  BARCAN_AT, NOM_X,
  NOM_Z, SYM, BRIDGE,
};

enum class SystemId { K_SIGMA, H_AT, H_FORALL, H_AT_FORALL };

const char* scheme_name(SchemeId id);
std::optional<SchemeId> scheme_by_name(const std::string& name);
const char* system_name(SystemId id);
std::optional<SystemId> system_by_name(const std::string& name);

bool scheme_is_axiom(SchemeId id);                    // false for NOM_Z/SYM/BRIDGE
bool scheme_in_system(SchemeId id, SystemId system);  // admissible as an axiom there
std::vector<SchemeId> axiom_schemes(SystemId system);
std::vector<SchemeId> sweep_schemes();  // every axiom scheme plus the derived theorems and TAUT

using Binding = std::variant<FormulaPtr, StateSymbol, std::string, int, ContextPtr>;

struct SchemeInstance {
  SchemeId scheme = SchemeId::TAUT;
  std::map<std::string, Binding> bind;
};

// missingBinding | badBinding | sortError | sideConditionViolation | tooManyAtoms
struct SchemeError : Error {
  std::string kind;
  SchemeError(std::string k, const std::string& detail)
      : Error(k + ": " + detail), kind(std::move(k)) {}
};

// The literal scheme instance as a core formula (sugar expanded).  Throws
// SchemeError when bindings are incomplete, ill-sorted, or a side condition
// fails.
FormulaPtr instantiate_scheme(const Signature& sig, const SymbolTable& tab,
                              const SchemeInstance& inst);

struct TautologyResult {
  bool is_tautology = false;
  int atoms = 0;
  bool too_many_atoms = false;
};

// Decides propositional tautology-hood after abstracting the maximal
// non-Boolean subformulas (atoms, applications, @, binders) to letters;
// structurally equal subformulas share a letter.
TautologyResult is_tautology(const FormulaPtr& f, int max_atoms = 20);

}  // namespace hml
