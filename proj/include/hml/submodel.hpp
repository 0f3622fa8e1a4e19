// Generated submodels: the closure of a sorted world set under relation
// steps, with restricted relations and valuations.

#pragma once

#include "hml/model.hpp"
#include "hml/context.hpp"

namespace hml {

// Smallest sorted world set containing X and closed under: if the head of a
// relation tuple is in the set, all tuple components are.
std::map<std::string, std::set<int>> reachable_worlds(const Signature& sig, const Model& m,
                                                      const std::map<std::string, std::set<int>>& x);

// The generated submodel.  Sorts left empty by the closure receive one fresh
// isolated world with empty valuation and no tuples, so world sets stay
// nonempty; nominals whose denotation is dropped lose their valuation entry.
Model generated_submodel(const Signature& sig, const SymbolTable& tab, const Model& m,
                         const std::map<std::string, std::set<int>>& x);

// A one-hole context tracing relation steps from `from` to `to`, with top
// fillers at the off-path positions; nullopt when `to` is unreachable.
// Plugging f into the result is satisfied at `from` whenever f holds at `to`.
std::optional<ContextPtr> path_context(const Signature& sig, const Model& m, const WorldRef& from,
                                       const WorldRef& to);

// Checks the generated-submodel reading of one-hole contexts at (w, g), in
// both directions:
//   - eta(phi) true at w implies phi holds somewhere in the submodel
//     generated by {w}; dually, phi everywhere there implies eta_box(phi);
//   - conversely, a satisfying (resp. refuting) submodel world yields a
//     path context witnessing some eta' with eta'(phi) true (resp.
//     eta'_box(phi) false).
// Returns an explanation of the first violated direction, if any.
struct RemarkCheck {
  bool ok = true;
  std::string detail;
};
RemarkCheck check_context_remark(const Signature& sig, const SymbolTable& tab, const Model& m,
                                 const Assignment& g, const WorldRef& w, const ContextPtr& eta,
                                 const FormulaPtr& phi);

}  // namespace hml
