// Replayable theorem derivations: the named-symbol lemma, symmetry of @, and
// the bridge lemma, each expanded into primitive checker steps.  The headline
// steps of each derivation are tagged as milestones in presentation order.

#pragma once

#include "hml/proof_text.hpp"

namespace hml {

struct LibraryEntry {
  std::string name;
  SystemId system = SystemId::H_AT;
  std::string theory;  // empty when the entry needs no theory
  Signature sig;
  SymbolTable tab;
  Hypotheses hypotheses;
  std::vector<ProofLine> lines;
  std::map<int, int> milestones;  // headline step -> line index

  FormulaPtr conclusion() const { return lines.back().formula; }
  ProofDoc doc() const { return ProofDoc{hypotheses, lines, milestones}; }
};

// The two-sorted vocabulary the logic entries are stated over.
std::pair<Signature, SymbolTable> library_vocabulary();

// NOM_Z, SYM, BRIDGE.  Construction replays the derivations through the
// checker, so a returned entry is known to verify.
std::map<std::string, LibraryEntry> theorem_library();

}  // namespace hml
