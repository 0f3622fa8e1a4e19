// Formula contexts built from operators, true-fillers and holes.
//
// NC contexts are operator trees whose leaves are holes or tops; a NomC
// context has exactly one hole.  Plugging a formula into the hole yields a
// formula; the dual plugging is not(eta(not f)).

#pragma once

#include "hml/formula.hpp"

namespace hml {

enum class CKind { Hole, Top, Op };

struct Context;
using ContextPtr = std::shared_ptr<const Context>;

struct Context {
  CKind kind;
  std::string sort;              // sort of this context node
  std::string op;                // Op only
  std::vector<ContextPtr> kids;  // Op only

  Context(CKind k, std::string s) : kind(k), sort(std::move(s)) {}
};

ContextPtr c_hole(const std::string& sort);
ContextPtr c_top(const std::string& sort);
ContextPtr c_op(const Signature& sig, const std::string& op, std::vector<ContextPtr> kids);

int hole_count(const ContextPtr& c);
bool in_nomc(const ContextPtr& c);  // exactly one hole
// Sort of the unique hole; requires in_nomc.
std::string hole_sort(const ContextPtr& c);

bool context_equal(const ContextPtr& a, const ContextPtr& b);

// eta(f): plug f into the hole; Top nodes become true:sort formulas.
// Throws Error unless eta is in NomC and f has the hole's sort.
FormulaPtr apply_context(const Signature& sig, const SymbolTable& tab, const ContextPtr& eta,
                         const FormulaPtr& f);

// The dual macro: eta_box(f) = not eta(not f).
FormulaPtr apply_context_dual(const Signature& sig, const SymbolTable& tab, const ContextPtr& eta,
                              const FormulaPtr& f);

}  // namespace hml
