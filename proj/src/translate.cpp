#include "hml/translate.hpp"

namespace hml {

namespace {

void collect_svar_names(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind == FKind::SVar) out.insert(f->name);
  if ((f->kind == FKind::At || f->kind == FKind::Forall) &&
      f->sym.kind == SymKind::StateVar)
    out.insert(f->sym.name);
  for (const auto& k : f->kids) collect_svar_names(k, out);
}

struct Translator {
  const Signature& sig;
  const SymbolTable& tab;
  VarSupply& supply;
  std::map<std::string, std::string> rename;  // modal svar -> FO variable
  std::set<std::string> bound;                // FO names bound on this path

  std::string fo_name(const StateSymbol& v) const {
    auto it = rename.find(v.name);
    return it == rename.end() ? v.name : it->second;
  }

  FOTerm term_for(const StateSymbol& z) const {
    if (z.kind == SymKind::Nominal) return FOTerm{TKind::Const, z.name, z.sort};
    return FOTerm{TKind::Var, fo_name(z), z.sort};
  }

  FOFormulaPtr tr(const FormulaPtr& f, const FOTerm& x) {
    switch (f->kind) {
      case FKind::Prop:
        return fo_pred(f->name, x);
      case FKind::SVar:
        return fo_eq(x, term_for(StateSymbol{SymKind::StateVar, f->name, f->sort}));
      case FKind::Nom:
        return fo_eq(x, FOTerm{TKind::Const, f->name, f->sort});
      case FKind::Neg: {
        // the dual binder translates by its own clause
        StateSymbol ex;
        FormulaPtr body;
        if (match_exists(f, &ex, &body)) return quantified(FOKind::Exists, ex, body, x);
        return fo_not(tr(f->kids[0], x));
      }
      case FKind::Or: {
        auto a = tr(f->kids[0], x);  // left argument first: fresh names in
        auto b = tr(f->kids[1], x);  // left-to-right translation order
        return fo_or(std::move(a), std::move(b));
      }
      case FKind::App: {
        const OperatorDecl& d = sig.operator_at(f->name);
        std::vector<FOTerm> fresh;
        std::vector<FOTerm> rel_terms{x};
        for (int i = 0; i < d.arity(); ++i) {
          fresh.push_back(FOTerm{TKind::Var, supply.fresh(), d.arg_sorts[i]});
          rel_terms.push_back(fresh.back());
        }
        FOFormulaPtr body = fo_rel(f->name, std::move(rel_terms));
        for (int i = 0; i < d.arity(); ++i)
          body = fo_and(std::move(body), tr(f->kids[i], fresh[i]));
        for (int i = d.arity() - 1; i >= 0; --i)
          body = fo_exists(fresh[i].name, fresh[i].sort, std::move(body));
        return body;
      }
      case FKind::At:
        return tr(f->kids[0], term_for(f->sym));
      case FKind::Forall:
        return quantified(FOKind::Forall, f->sym, f->kids[0], x);
    }
    throw Error("standard_translate: unreachable");
  }

  FOFormulaPtr quantified(FOKind kind, const StateSymbol& v, const FormulaPtr& body,
                          const FOTerm& x) {
    // keep the bound variable's name unless it would capture the pivot or
    // rebind a name already bound on this path
    std::string name = v.name;
    bool clash = bound.count(name) || (x.kind == TKind::Var && x.name == name);
    if (clash) name = supply.fresh();

    auto saved_rename = rename;
    auto saved_bound = bound;
    if (clash)
      rename[v.name] = name;
    else
      rename.erase(v.name);
    bound.insert(name);
    supply.reserve(name);
    FOFormulaPtr sub = tr(body, x);
    rename = std::move(saved_rename);
    bound = std::move(saved_bound);
    return kind == FOKind::Forall ? fo_forall(name, v.sort, std::move(sub))
                                  : fo_exists(name, v.sort, std::move(sub));
  }
};

}  // namespace

VarSupply supply_for(const FormulaPtr& f, const FOTerm& pivot) {
  std::set<std::string> reserved;
  collect_svar_names(f, reserved);
  if (pivot.kind == TKind::Var) reserved.insert(pivot.name);
  return VarSupply(std::move(reserved));
}

FOTerm pivot_for(const FormulaPtr& f, const std::string& preferred) {
  std::set<std::string> used;
  collect_svar_names(f, used);
  std::string name = preferred;
  for (int i = 0; used.count(name); ++i) name = preferred + std::to_string(i);
  return FOTerm{TKind::Var, name, f->sort};
}

FOFormulaPtr standard_translate(const Signature& sig, const SymbolTable& tab, const FormulaPtr& f,
                                const FOTerm& pivot, VarSupply& supply) {
  if (pivot.sort != f->sort)
    throw Error("standard_translate: pivot sort " + pivot.sort + " vs formula sort " + f->sort);
  Translator t{sig, tab, supply, {}, {}};
  return t.tr(f, pivot);
}

FOFormulaPtr standard_translate(const Signature& sig, const SymbolTable& tab,
                                const FormulaPtr& f) {
  FOTerm pivot = pivot_for(f);
  VarSupply supply = supply_for(f, pivot);
  return standard_translate(sig, tab, f, pivot, supply);
}

FOFormulaPtr global_translation(const Signature& sig, const SymbolTable& tab,
                                const FormulaPtr& f) {
  FOTerm pivot = pivot_for(f);
  VarSupply supply = supply_for(f, pivot);
  return fo_forall(pivot.name, pivot.sort,
                   standard_translate(sig, tab, f, pivot, supply));
}

bool correspondence_check(const Signature& sig, const SymbolTable& tab, const Model& m,
                          const Assignment& g, const WorldRef& w, const FormulaPtr& f) {
  FOTerm pivot = pivot_for(f);
  VarSupply supply = supply_for(f, pivot);
  FOFormulaPtr st = standard_translate(sig, tab, f, pivot, supply);
  FOEnv env;
  env[pivot.name] = w.index;
  for (const auto& v : free_state_vars(f)) env[v.name] = g.at(v.name);
  bool modal = satisfies(sig, tab, m, g, w, f);
  bool fo = eval_fo(to_structure(sig, tab, m), env, st);
  return modal == fo;
}

}  // namespace hml
