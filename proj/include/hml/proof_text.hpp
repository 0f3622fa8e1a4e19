// Proof files (.prf): optional hypothesis header lines followed by one line
// per step.
//
//   hyp NAME "<formula>"
//   IDX SORT "<formula>" JUST
//
// where JUST is one of
//   hyp NAME | ax SCHEME {k=v; ...} | thax NAME {k=v; ...} | mp I J |
//   ug OP POS I ["<side>" ...] | gen X I | genat Z I | bcast SORT I |
//   paste0 Y I | paste1 Y I
//
// Binding values: formulas and contexts are quoted, integers and names are
// bare.  '#' starts a comment; `# milestone K` tags the following line as the
// K-th headline step of the derivation being replayed.

#pragma once

#include "hml/proof.hpp"
#include "hml/text.hpp"

namespace hml {

struct ProofDoc {
  Hypotheses hypotheses;
  std::vector<ProofLine> lines;
  std::map<int, int> milestones;  // headline number -> line index (1-based)
};

ProofDoc parse_proof(const Signature& sig, const SymbolTable& tab, std::string_view text);
ProofDoc load_proof_file(const Signature& sig, const SymbolTable& tab, const std::string& path);
std::string print_proof(const ProofDoc& doc);

}  // namespace hml
