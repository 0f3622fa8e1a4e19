// The satisfaction relation and validity checks over finite models.

#pragma once

#include <functional>

#include "hml/model.hpp"

namespace hml {

struct EvalError : Error {
  explicit EvalError(const std::string& what) : Error(what) {}
};

// Denotation of a state symbol: the nominal's world or the assigned world.
// Throws EvalError when the nominal has no valuation or the variable is
// unbound.
WorldRef denotation(const SymbolTable& tab, const Model& m, const Assignment& g,
                    const StateSymbol& z);

// M,g,w |= f.  Requires sort(w) == sort(f).
bool satisfies(const Signature& sig, const SymbolTable& tab, const Model& m,
               const Assignment& g, const WorldRef& w, const FormulaPtr& f);

// True iff f holds at every world of its sort under every assignment of its
// free state variables (finitely many on a finite model).
bool valid_in_model(const Signature& sig, const SymbolTable& tab, const Model& m,
                    const FormulaPtr& f);
// As valid_in_model, but reports a falsifying world/assignment if any.
struct Falsification {
  WorldRef world;
  Assignment assignment;
};
std::optional<Falsification> find_falsification(const Signature& sig, const SymbolTable& tab,
                                                const Model& m, const FormulaPtr& f);

// Frame validity: quantifies over all valuations of the propositions and
// nominals occurring in f (truth depends on no others) and all assignments.
// Returns nullopt when the enumeration would exceed max_cases.
std::optional<bool> valid_in_frame(const Signature& sig, const SymbolTable& tab, const Model& frame,
                                   const FormulaPtr& f, uint64_t max_cases = uint64_t(1) << 24);

// Enumerates assignments of the given state variables over m's worlds and
// calls fn on each; fn returns false to stop.  Used by validity checks and by
// the randomized sweeps.
void for_each_assignment(const SymbolTable& tab, const Model& m,
                         const std::set<StateSymbol>& vars,
                         const std::function<bool(const Assignment&)>& fn);

}  // namespace hml
