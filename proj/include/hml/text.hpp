// Concrete syntax: fully parenthesized prefix formulas, context terms, and
// line-oriented .sig vocabulary files.
//
// Formula grammar:
//   (not f) (or f g) (and f g) (-> f g) (<-> f g)
//   (op NAME f1 ... fn)  (box NAME f1 ... fn)  (box2 p g)
//   (@ SYM SORT f)  (forall SVAR f)  (exists SVAR f)
//   true:SORT  false:SORT
//   bare identifiers: declared atoms, else 0-ary operators
//
// Context grammar: hole:SORT, top:SORT, (op NAME c1 ... cn).

#pragma once

#include <string_view>

#include "hml/context.hpp"
#include "hml/formula.hpp"

namespace hml {

struct ParseError : Error {
  size_t position;  // byte offset into the input
  ParseError(const std::string& what, size_t pos)
      : Error(what + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

FormulaPtr parse_formula(const Signature& sig, const SymbolTable& tab, std::string_view text);
std::string print_formula(const FormulaPtr& f);

ContextPtr parse_context(const Signature& sig, std::string_view text);
std::string print_context(const ContextPtr& c);

// .sig files: sort NAME | op NAME : S1 ... Sn -> S | prop NAME : S |
// nom NAME : S | svar NAME : S.  '#' starts a comment.
std::pair<Signature, SymbolTable> parse_signature(std::string_view text);
std::pair<Signature, SymbolTable> load_signature_file(const std::string& path);
std::string print_signature(const Signature& sig, const SymbolTable& tab);

}  // namespace hml
