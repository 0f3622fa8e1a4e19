#include "hml/proof.hpp"

namespace hml {

const char* fail_reason_name(FailReason r) {
  switch (r) {
    case FailReason::NONE: return "NONE";
    case FailReason::BAD_INDEX: return "BAD_INDEX";
    case FailReason::NOT_WELL_SORTED: return "NOT_WELL_SORTED";
    case FailReason::SORT_MISMATCH: return "SORT_MISMATCH";
    case FailReason::UNKNOWN_HYPOTHESIS: return "UNKNOWN_HYPOTHESIS";
    case FailReason::HYPOTHESIS_MISMATCH: return "HYPOTHESIS_MISMATCH";
    case FailReason::SCHEME_NOT_IN_SYSTEM: return "SCHEME_NOT_IN_SYSTEM";
    case FailReason::RULE_NOT_IN_SYSTEM: return "RULE_NOT_IN_SYSTEM";
    case FailReason::MISSING_BINDING: return "MISSING_BINDING";
    case FailReason::BAD_BINDING: return "BAD_BINDING";
    case FailReason::SIDE_CONDITION: return "SIDE_CONDITION";
    case FailReason::INSTANCE_MISMATCH: return "INSTANCE_MISMATCH";
    case FailReason::NOT_TAUTOLOGY: return "NOT_TAUTOLOGY";
    case FailReason::TOO_MANY_ATOMS: return "TOO_MANY_ATOMS";
    case FailReason::NO_THEORY: return "NO_THEORY";
    case FailReason::UNKNOWN_THEORY_AXIOM: return "UNKNOWN_THEORY_AXIOM";
    case FailReason::MP_SHAPE: return "MP_SHAPE";
    case FailReason::UG_SHAPE: return "UG_SHAPE";
    case FailReason::GEN_SHAPE: return "GEN_SHAPE";
    case FailReason::GEN_AT_SHAPE: return "GEN_AT_SHAPE";
    case FailReason::BROADCAST_SHAPE: return "BROADCAST_SHAPE";
    case FailReason::PASTE_SHAPE: return "PASTE_SHAPE";
    case FailReason::PASTE_FRESHNESS: return "PASTE_FRESHNESS";
    case FailReason::PREMISE_HAS_HYPOTHESIS: return "PREMISE_HAS_HYPOTHESIS";
  }
  return "?";
}

bool rule_in_system(Justification::Kind kind, SystemId system) {
  switch (kind) {
    case Justification::Hypothesis:
    case Justification::Axiom:
    case Justification::TheoryAxiom:
    case Justification::MP:
    case Justification::UG:
      return true;
    case Justification::GEN:
      return system == SystemId::H_FORALL || system == SystemId::H_AT_FORALL;
    case Justification::GEN_AT:
    case Justification::BROADCAST:
    case Justification::PASTE0:
    case Justification::PASTE1:
      return system == SystemId::H_AT || system == SystemId::H_AT_FORALL;
  }
  return false;
}

namespace {

FailReason reason_for_scheme_error(const SchemeError& e) {
  if (e.kind == "missingBinding") return FailReason::MISSING_BINDING;
  if (e.kind == "badBinding") return FailReason::BAD_BINDING;
  if (e.kind == "sortError") return FailReason::NOT_WELL_SORTED;
  if (e.kind == "tooManyAtoms") return FailReason::TOO_MANY_ATOMS;
  return FailReason::SIDE_CONDITION;
}

struct Checker {
  const Signature& sig;
  const SymbolTable& tab;
  SystemId system;
  const Theory* theory;
  const Hypotheses& hyps;
  const std::vector<ProofLine>& proof;
  std::vector<bool> hyp_flag;  // per checked line

  const FormulaPtr* hyp_formula(const std::string& name) const {
    for (const auto& [n, f] : hyps)
      if (n == name) return &f;
    return nullptr;
  }

  // Premise fetch for rules; hyp_free demands a hypothesis-free premise.
  Verdict premise(int here, int ref, bool hyp_free, const ProofLine** out) const {
    if (ref < 1 || ref >= here)
      return Verdict::fail(here, FailReason::BAD_INDEX,
                           "premise " + std::to_string(ref) + " not before line");
    if (hyp_free && hyp_flag[static_cast<size_t>(ref - 1)])
      return Verdict::fail(here, FailReason::PREMISE_HAS_HYPOTHESIS,
                           "line " + std::to_string(ref) + " depends on a hypothesis");
    *out = &proof[static_cast<size_t>(ref - 1)];
    return Verdict::pass();
  }

  Verdict check_line(const ProofLine& ln) {
    const int at = ln.index;
    bool flag = false;
    if (!rule_in_system(ln.just.kind, system))
      return Verdict::fail(at, FailReason::RULE_NOT_IN_SYSTEM);

    switch (ln.just.kind) {
      case Justification::Hypothesis: {
        const FormulaPtr* h = hyp_formula(ln.just.name);
        if (!h) return Verdict::fail(at, FailReason::UNKNOWN_HYPOTHESIS, ln.just.name);
        if (!equal(*h, ln.formula))
          return Verdict::fail(at, FailReason::HYPOTHESIS_MISMATCH, ln.just.name);
        flag = true;
        break;
      }
      case Justification::Axiom: {
        const SchemeInstance& inst = ln.just.scheme;
        if (!scheme_is_axiom(inst.scheme) || !scheme_in_system(inst.scheme, system))
          return Verdict::fail(at, FailReason::SCHEME_NOT_IN_SYSTEM, scheme_name(inst.scheme));
        if (inst.scheme == SchemeId::TAUT) {
          TautologyResult r = is_tautology(ln.formula);
          if (r.too_many_atoms)
            return Verdict::fail(at, FailReason::TOO_MANY_ATOMS,
                                 std::to_string(r.atoms) + " letters");
          if (!r.is_tautology) return Verdict::fail(at, FailReason::NOT_TAUTOLOGY);
          break;
        }
        try {
          FormulaPtr want = instantiate_scheme(sig, tab, inst);
          if (!equal(want, ln.formula))
            return Verdict::fail(at, FailReason::INSTANCE_MISMATCH, scheme_name(inst.scheme));
        } catch (const SchemeError& e) {
          return Verdict::fail(at, reason_for_scheme_error(e), e.what());
        }
        break;
      }
      case Justification::TheoryAxiom: {
        if (!theory) return Verdict::fail(at, FailReason::NO_THEORY);
        auto it = theory->generators.find(ln.just.name);
        if (it == theory->generators.end())
          return Verdict::fail(at, FailReason::UNKNOWN_THEORY_AXIOM, ln.just.name);
        try {
          FormulaPtr want = it->second(sig, tab, ln.just.params);
          if (!equal(want, ln.formula))
            return Verdict::fail(at, FailReason::INSTANCE_MISMATCH, ln.just.name);
        } catch (const SchemeError& e) {
          return Verdict::fail(at, reason_for_scheme_error(e), e.what());
        }
        break;
      }
      case Justification::MP: {
        const ProofLine *pi, *pj;
        if (Verdict v = premise(at, ln.just.i, false, &pi); !v.ok) return v;
        if (Verdict v = premise(at, ln.just.j, false, &pj); !v.ok) return v;
        FormulaPtr a, b;
        if (!match_impl(pj->formula, &a, &b))
          return Verdict::fail(at, FailReason::MP_SHAPE,
                               "line " + std::to_string(ln.just.j) + " is not an implication");
        if (!equal(a, pi->formula) || !equal(b, ln.formula))
          return Verdict::fail(at, FailReason::MP_SHAPE, "premises do not compose");
        flag = hyp_flag[static_cast<size_t>(ln.just.i - 1)] ||
               hyp_flag[static_cast<size_t>(ln.just.j - 1)];
        break;
      }
      case Justification::UG: {
        const ProofLine* p;
        if (Verdict v = premise(at, ln.just.i, true, &p); !v.ok) return v;
        const OperatorDecl* d = sig.find_operator(ln.just.op);
        if (!d) return Verdict::fail(at, FailReason::UG_SHAPE, "unknown operator " + ln.just.op);
        int pos = ln.just.pos;
        if (pos < 1 || pos > d->arity())
          return Verdict::fail(at, FailReason::UG_SHAPE, "position out of range");
        if (static_cast<int>(ln.just.sides.size()) != d->arity() - 1)
          return Verdict::fail(at, FailReason::UG_SHAPE, "wrong number of side formulas");
        std::vector<FormulaPtr> args;
        size_t side = 0;
        for (int k = 1; k <= d->arity(); ++k)
          args.push_back(k == pos ? p->formula : ln.just.sides[side++]);
        FormulaPtr want;
        try {
          want = f_box(sig, ln.just.op, std::move(args));
        } catch (const Error& e) {
          return Verdict::fail(at, FailReason::UG_SHAPE, e.what());
        }
        if (!equal(want, ln.formula)) return Verdict::fail(at, FailReason::UG_SHAPE);
        break;
      }
      case Justification::GEN: {
        const ProofLine* p;
        if (Verdict v = premise(at, ln.just.i, true, &p); !v.ok) return v;
        if (ln.just.sym.kind != SymKind::StateVar)
          return Verdict::fail(at, FailReason::GEN_SHAPE, "gen needs a state variable");
        if (!equal(f_forall(ln.just.sym, p->formula), ln.formula))
          return Verdict::fail(at, FailReason::GEN_SHAPE);
        break;
      }
      case Justification::GEN_AT: {
        const ProofLine* p;
        if (Verdict v = premise(at, ln.just.i, true, &p); !v.ok) return v;
        if (ln.just.sym.sort != p->formula->sort)
          return Verdict::fail(at, FailReason::GEN_AT_SHAPE, "subscript sort mismatch");
        FormulaPtr want;
        try {
          want = f_at(ln.just.sym, p->formula, ln.sort);
        } catch (const Error& e) {
          return Verdict::fail(at, FailReason::GEN_AT_SHAPE, e.what());
        }
        if (!equal(want, ln.formula)) return Verdict::fail(at, FailReason::GEN_AT_SHAPE);
        break;
      }
      case Justification::BROADCAST: {
        const ProofLine* p;
        if (Verdict v = premise(at, ln.just.i, true, &p); !v.ok) return v;
        if (p->formula->kind != FKind::At)
          return Verdict::fail(at, FailReason::BROADCAST_SHAPE, "premise is not an @ formula");
        FormulaPtr want;
        try {
          want = f_at(p->formula->sym, p->formula->kids[0], ln.just.sort);
        } catch (const Error& e) {
          return Verdict::fail(at, FailReason::BROADCAST_SHAPE, e.what());
        }
        if (!equal(want, ln.formula)) return Verdict::fail(at, FailReason::BROADCAST_SHAPE);
        break;
      }
      case Justification::PASTE0:
      case Justification::PASTE1: {
        const ProofLine* p;
        if (Verdict v = premise(at, ln.just.i, true, &p); !v.ok) return v;
        if (Verdict v = check_paste(ln, *p); !v.ok) return v;
        break;
      }
    }
    hyp_flag.push_back(flag);
    return Verdict::pass();
  }

  // Paste0: from @_z(y and phi) -> psi infer @_z phi -> psi.
  // Paste1: from @_z sigma(..., y and phi, ...) -> psi infer
  //         @_z sigma(..., phi, ...) -> psi.
  // Both need z distinct from y and y fresh for phi and psi.
  Verdict check_paste(const ProofLine& ln, const ProofLine& prem) {
    const int at = ln.index;
    const StateSymbol& y = ln.just.sym;
    FormulaPtr pa, pb, ca, cb;
    if (!match_impl(prem.formula, &pa, &pb) || !match_impl(ln.formula, &ca, &cb))
      return Verdict::fail(at, FailReason::PASTE_SHAPE, "both lines must be implications");
    if (!equal(pb, cb))
      return Verdict::fail(at, FailReason::PASTE_SHAPE, "consequents differ");
    if (pa->kind != FKind::At || ca->kind != FKind::At || !(pa->sym == ca->sym) ||
        pa->sort != ca->sort)
      return Verdict::fail(at, FailReason::PASTE_SHAPE, "antecedents are not matching @ formulas");
    const StateSymbol& z = pa->sym;
    FormulaPtr phi;  // the conclusion's pasted-away body
    if (ln.just.kind == Justification::PASTE0) {
      phi = ca->kids[0];
      FormulaPtr a, b;
      if (!match_and(pa->kids[0], &a, &b) || !equal(a, f_atom(y)) || !equal(b, phi))
        return Verdict::fail(at, FailReason::PASTE_SHAPE,
                             "premise antecedent is not @_z(y and phi)");
    } else {
      const FormulaPtr& papp = pa->kids[0];
      const FormulaPtr& capp = ca->kids[0];
      if (papp->kind != FKind::App || capp->kind != FKind::App || papp->name != capp->name ||
          papp->kids.size() != capp->kids.size())
        return Verdict::fail(at, FailReason::PASTE_SHAPE, "antecedent bodies are not applications");
      int diff = -1;
      for (size_t k = 0; k < papp->kids.size(); ++k) {
        if (equal(papp->kids[k], capp->kids[k])) continue;
        if (diff >= 0)
          return Verdict::fail(at, FailReason::PASTE_SHAPE, "arguments differ at two positions");
        diff = static_cast<int>(k);
      }
      if (diff < 0)
        return Verdict::fail(at, FailReason::PASTE_SHAPE, "no pasted argument found");
      phi = capp->kids[static_cast<size_t>(diff)];
      FormulaPtr a, b;
      if (!match_and(papp->kids[static_cast<size_t>(diff)], &a, &b) || !equal(a, f_atom(y)) ||
          !equal(b, phi))
        return Verdict::fail(at, FailReason::PASTE_SHAPE,
                             "pasted argument is not (y and phi)");
    }
    if (z == y)
      return Verdict::fail(at, FailReason::PASTE_FRESHNESS, "z and y must be distinct");
    if (occurs_symbol(phi, y))
      return Verdict::fail(at, FailReason::PASTE_FRESHNESS, y.name + " occurs in phi");
    if (occurs_symbol(cb, y))
      return Verdict::fail(at, FailReason::PASTE_FRESHNESS, y.name + " occurs in psi");
    return Verdict::pass();
  }
};

}  // namespace

Verdict check_proof(const Signature& sig, const SymbolTable& tab, SystemId system,
                    const Theory* theory, const Hypotheses& hypotheses,
                    const std::vector<ProofLine>& proof) {
  Checker c{sig, tab, system, theory, hypotheses, proof, {}};
  for (size_t i = 0; i < proof.size(); ++i) {
    const ProofLine& ln = proof[i];
    if (ln.index != static_cast<int>(i) + 1)
      return Verdict::fail(static_cast<int>(i) + 1, FailReason::BAD_INDEX,
                           "lines must be numbered consecutively from 1");
    if (auto err = well_sorted(sig, tab, ln.formula, ln.sort))
      return Verdict::fail(ln.index, FailReason::NOT_WELL_SORTED, err->message);
    if (Verdict v = c.check_line(ln); !v.ok) return v;
  }
  return Verdict::pass();
}

}  // namespace hml
