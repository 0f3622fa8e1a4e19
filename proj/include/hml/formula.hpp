// Formula AST for many-sorted polyadic hybrid modal logic.
//
// Core nodes: propositions, nominals, state variables, negation, disjunction,
// operator application, satisfaction operator @, and the universal binder.
// Every node carries its sort.  The derived connectives (and, ->, <->, true,
// false, box operators, exists) are expanded into this core on construction;
// the printer re-sugars and/->/<->/exists only.
//
// Values are immutable after construction and safe to share across threads.

#pragma once

#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "hml/signature.hpp"

namespace hml {

enum class FKind { Prop, Nom, SVar, Neg, Or, App, At, Forall };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  FKind kind;
  std::string sort;               // sort of this formula
  std::string name;               // Prop/Nom/SVar: atom name; App: operator name
  StateSymbol sym;                // At: subscript; Forall: bound state variable
  std::vector<FormulaPtr> kids;   // Neg: 1, Or: 2, App: n, At: 1, Forall: 1

  Formula(FKind k, std::string s) : kind(k), sort(std::move(s)) {}
};

int compare(const Formula& a, const Formula& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const {
    return compare(*a, *b) < 0;
  }
};

// Core constructors.
FormulaPtr f_prop(const std::string& name, const std::string& sort);
FormulaPtr f_nom(const std::string& name, const std::string& sort);
FormulaPtr f_svar(const std::string& name, const std::string& sort);
FormulaPtr f_atom(const StateSymbol& z);  // z as a formula of its sort
FormulaPtr f_neg(FormulaPtr a);
FormulaPtr f_or(FormulaPtr a, FormulaPtr b);  // throws on sort mismatch
FormulaPtr f_app(const Signature& sig, const std::string& op, std::vector<FormulaPtr> args);
FormulaPtr f_at(const StateSymbol& z, FormulaPtr body, const std::string& result_sort);
FormulaPtr f_forall(const StateSymbol& x, FormulaPtr body);

// Derived connectives, expanded to the core at construction time.
FormulaPtr f_and(FormulaPtr a, FormulaPtr b);
FormulaPtr f_impl(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(const StateSymbol& x, FormulaPtr body);
FormulaPtr f_top(const SymbolTable& tab, const std::string& sort);
FormulaPtr f_bot(const SymbolTable& tab, const std::string& sort);
// box(op, a1..an) = not op(not a1, ..., not an)
FormulaPtr f_box(const Signature& sig, const std::string& op, std::vector<FormulaPtr> args);

// Sugar recognizers; fill the out parameters on success.
bool match_impl(const FormulaPtr& f, FormulaPtr* a, FormulaPtr* b);
bool match_and(const FormulaPtr& f, FormulaPtr* a, FormulaPtr* b);
bool match_iff(const FormulaPtr& f, FormulaPtr* a, FormulaPtr* b);
bool match_exists(const FormulaPtr& f, StateSymbol* x, FormulaPtr* body);
// box recognizer: f = not op(not a1, ..., not an); fills op args a1..an.
bool match_box(const FormulaPtr& f, std::string* op, std::vector<FormulaPtr>* args);

// Free state variables; occurrences in @ subscripts count.
std::set<StateSymbol> free_state_vars(const FormulaPtr& f);

// Any occurrence of z: as an atom, an @ subscript, or (for state variables)
// a binder subject.
bool occurs_symbol(const FormulaPtr& f, const StateSymbol& z);

// Replace free occurrences of state variable x (including @ subscripts) by z.
// Returns nullopt when a free occurrence of x sits under a binder for z,
// i.e. when z is not substitutable for x.  No silent renaming.
std::optional<FormulaPtr> substitute(const FormulaPtr& f, const StateSymbol& x,
                                     const StateSymbol& z);

struct SortError {
  std::vector<int> path;  // child indices from the root to the offending node
  std::string expected;
  std::string found;
  std::string message;
};

// Checks that f is a well-formed formula of the given sort: every atom is
// declared with the sort the node carries, applications match the signature,
// @ subscripts match their bodies.  Reports the leftmost-innermost offence.
std::optional<SortError> well_sorted(const Signature& sig, const SymbolTable& tab,
                                     const FormulaPtr& f, const std::string& sort);

}  // namespace hml
