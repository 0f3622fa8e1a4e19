// Many-sorted first-order correspondence language: terms over variables and
// nominal constants, formulas over equality, unary predicates P_p, relation
// symbols R_op, and sorted quantifiers; plus brute-force evaluation over a
// finite model viewed as a first-order structure.

#pragma once

#include "hml/model.hpp"

namespace hml {

enum class TKind { Var, Const };

struct FOTerm {
  TKind kind = TKind::Var;
  std::string name;  // variable name, or the nominal behind a constant
  std::string sort;

  bool operator==(const FOTerm& o) const {
    return kind == o.kind && name == o.name && sort == o.sort;
  }
};

enum class FOKind { Eq, Pred, Rel, Not, Or, And, Exists, Forall };

struct FOFormula;
using FOFormulaPtr = std::shared_ptr<const FOFormula>;

struct FOFormula {
  FOKind kind;
  std::string pred;            // Pred: proposition; Rel: operator
  std::vector<FOTerm> terms;   // Eq: 2, Pred: 1, Rel: 1 + n
  std::vector<FOFormulaPtr> kids;
  std::string var, var_sort;   // quantifiers

  explicit FOFormula(FOKind k) : kind(k) {}
};

FOFormulaPtr fo_eq(FOTerm a, FOTerm b);
FOFormulaPtr fo_pred(const std::string& prop, FOTerm t);
FOFormulaPtr fo_rel(const std::string& op, std::vector<FOTerm> terms);
FOFormulaPtr fo_not(FOFormulaPtr a);
FOFormulaPtr fo_or(FOFormulaPtr a, FOFormulaPtr b);
FOFormulaPtr fo_and(FOFormulaPtr a, FOFormulaPtr b);
FOFormulaPtr fo_exists(const std::string& var, const std::string& sort, FOFormulaPtr a);
FOFormulaPtr fo_forall(const std::string& var, const std::string& sort, FOFormulaPtr a);

bool fo_equal(const FOFormulaPtr& a, const FOFormulaPtr& b);
std::set<std::string> fo_free_vars(const FOFormulaPtr& f);
// No variable is bound twice along any path (the translator's fresh-name
// discipline).
bool fo_no_rebinding(const FOFormulaPtr& f);

// A finite Kripke model read as a first-order structure: domains are the
// world sets, P_p is the valuation of p, R_op is the operator relation, and
// c_j is the world named by j.
struct FOStructure {
  const Signature* sig;
  const SymbolTable* tab;
  const Model* model;
};

inline FOStructure to_structure(const Signature& sig, const SymbolTable& tab, const Model& m) {
  return FOStructure{&sig, &tab, &m};
}

// Variable environment: name -> world index (the sort rides on the term).
using FOEnv = std::map<std::string, int>;

// Classical Tarskian truth; quantifiers range over the finite sorted domain.
// Throws EvalError on unbound variables or missing constants.
bool eval_fo(const FOStructure& a, const FOEnv& env, const FOFormulaPtr& f);

// Deterministic fully parenthesized prefix text, e.g.
//   (exists (y1:s) (and (rel R_f x y1) (pred P_p y1)))
std::string export_fo(const FOFormulaPtr& f);

// Inverse of export_fo.  Sorts of free variables come from free_sorts or, for
// names shared with declared state variables, from the symbol table.
FOFormulaPtr parse_fo(const Signature& sig, const SymbolTable& tab, std::string_view text,
                      const std::map<std::string, std::string>& free_sorts = {});

}  // namespace hml
