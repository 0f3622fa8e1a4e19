// The standard translation from hybrid modal formulas to the first-order
// correspondence language, and the local/global correspondence checks.

#pragma once

#include "hml/eval.hpp"
#include "hml/fol.hpp"

namespace hml {

// Hands out fresh variables y1, y2, ... skipping every reserved name; a
// supply is confined to one translation run.
class VarSupply {
 public:
  explicit VarSupply(std::set<std::string> reserved = {}) : reserved_(std::move(reserved)) {}

  void reserve(const std::string& name) { reserved_.insert(name); }
  std::string fresh() {
    for (;;) {
      std::string name = "y" + std::to_string(++counter_);
      if (reserved_.insert(name).second) return name;
    }
  }

 private:
  std::set<std::string> reserved_;
  int counter_ = 0;
};

// A supply whose reserved pool covers the pivot and every state variable
// occurring in f, so fresh names never collide.
VarSupply supply_for(const FormulaPtr& f, const FOTerm& pivot);

// A pivot variable of f's sort named `preferred` unless that collides with a
// state variable occurring in f.
FOTerm pivot_for(const FormulaPtr& f, const std::string& preferred = "x");

// Clause-by-clause standard translation with pivot term x.  Fresh variables
// for operator clauses come from the supply; a bound state variable is
// renamed only when keeping it would capture the pivot or rebind a name on
// the same path.
FOFormulaPtr standard_translate(const Signature& sig, const SymbolTable& tab, const FormulaPtr& f,
                                const FOTerm& pivot, VarSupply& supply);

// Convenience: fresh supply and default pivot.
FOFormulaPtr standard_translate(const Signature& sig, const SymbolTable& tab, const FormulaPtr& f);

// forall x . ST_x(f), for closed f (the global correspondence form).
FOFormulaPtr global_translation(const Signature& sig, const SymbolTable& tab, const FormulaPtr& f);

// satisfies(M,g,w,f) == eval_fo(structure(M), env_g + {x -> w}, ST_x(f)).
// True is the expected outcome on every input.
bool correspondence_check(const Signature& sig, const SymbolTable& tab, const Model& m,
                          const Assignment& g, const WorldRef& w, const FormulaPtr& f);

}  // namespace hml
