// Incremental construction of kernel-checkable proofs.
//
// Primitive steps mirror the checker's justifications; derived steps expand
// into primitive TAUT/MP/UG/axiom chains on the spot.  Every emitted line is
// validated as it is added, so a builder bug surfaces at construction time,
// not at replay time.

#pragma once

#include "hml/proof.hpp"

namespace hml {

class ProofBuilder {
 public:
  ProofBuilder(const Signature& sig, const SymbolTable& tab, SystemId system,
               const Theory* theory = nullptr);

  // Primitive lines; each returns the 1-based line index.
  int hyp(const std::string& name, FormulaPtr f);
  int taut(FormulaPtr f);
  int axiom(SchemeInstance inst);
  int theory_axiom(const std::string& name, std::map<std::string, Binding> params);
  int mp(int i, int j);
  int ug(const std::string& op, int pos, int i, std::vector<FormulaPtr> sides);
  int gen(const StateSymbol& x, int i);
  int genat(const StateSymbol& z, const std::string& result_sort, int i);

  // Propositional glue: emits the tautology premise_1 -> (... -> goal) and
  // discharges it against the given lines.  With no premises this is taut().
  int derive(FormulaPtr goal, const std::vector<int>& premises);
  // A -> B and B -> C give A -> C.
  int trans(int ab, int bc);

  // From |- a -> b: box(op, sides[pos := a]) -> box(op, sides[pos := b]).
  // `box_sides` are the box-argument side formulas in position order.
  int box_mono(const std::string& op, int pos, const std::vector<FormulaPtr>& box_sides, int i);
  // From |- a -> b: op(args[pos := a]) -> op(args[pos := b]) with the other
  // diamond arguments fixed.
  int dia_mono(const std::string& op, int pos, const std::vector<FormulaPtr>& dia_sides, int i);
  // From |- a -> b: @_z^s a -> @_z^s b.
  int at_mono(const StateSymbol& z, const std::string& result_sort, int i);
  // |- @_z^s(a <-> b) <-> (@_z^s a <-> @_z^s b).
  int at_iff_dist(const StateSymbol& z, const std::string& result_sort, FormulaPtr a, FormulaPtr b);
  // op(args[pos := x or y]) -> op(args[pos := x]) or op(args[pos := y]).
  int dia_or_split(const std::string& op, int pos, const std::vector<FormulaPtr>& dia_sides,
                   FormulaPtr x, FormulaPtr y);

  void milestone(int headline, int line) { milestones_[headline] = line; }

  const FormulaPtr& formula(int i) const { return lines_.at(static_cast<size_t>(i - 1)).formula; }
  const std::vector<ProofLine>& lines() const { return lines_; }
  const Hypotheses& hypotheses() const { return hyps_; }
  const std::map<int, int>& milestones() const { return milestones_; }

 private:
  int push(ProofLine ln);

  const Signature& sig_;
  const SymbolTable& tab_;
  SystemId system_;
  const Theory* theory_;
  Hypotheses hyps_;
  std::vector<ProofLine> lines_;
  std::map<int, int> milestones_;
};

}  // namespace hml
