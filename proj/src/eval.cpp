#include "hml/eval.hpp"

#include <functional>

namespace hml {

WorldRef denotation(const SymbolTable& tab, const Model& m, const Assignment& g,
                    const StateSymbol& z) {
  if (z.kind == SymKind::Nominal) {
    auto it = m.nom_val.find(z.name);
    if (it == m.nom_val.end()) throw EvalError("nominal without denotation: " + z.name);
    return WorldRef{z.sort, it->second};
  }
  if (z.kind == SymKind::StateVar) {
    auto it = g.find(z.name);
    if (it == g.end()) throw EvalError("unbound state variable: " + z.name);
    return WorldRef{z.sort, it->second};
  }
  (void)tab;
  throw EvalError("not a state symbol: " + z.name);
}

bool satisfies(const Signature& sig, const SymbolTable& tab, const Model& m,
               const Assignment& g, const WorldRef& w, const FormulaPtr& f) {
  if (w.sort != f->sort)
    throw EvalError("satisfies: world of sort " + w.sort + ", formula of sort " + f->sort);
  switch (f->kind) {
    case FKind::Prop: {
      auto it = m.prop_val.find(f->name);
      return it != m.prop_val.end() && it->second.count(w.index) > 0;
    }
    case FKind::Nom: {
      auto it = m.nom_val.find(f->name);
      if (it == m.nom_val.end()) throw EvalError("nominal without denotation: " + f->name);
      return it->second == w.index;
    }
    case FKind::SVar: {
      auto it = g.find(f->name);
      if (it == g.end()) throw EvalError("unbound state variable: " + f->name);
      return it->second == w.index;
    }
    case FKind::Neg:
      return !satisfies(sig, tab, m, g, w, f->kids[0]);
    case FKind::Or:
      return satisfies(sig, tab, m, g, w, f->kids[0]) ||
             satisfies(sig, tab, m, g, w, f->kids[1]);
    case FKind::App: {
      // Exists a tuple related to w whose every component satisfies its
      // argument; a 0-ary operator holds iff (w) is in its relation.
      const OperatorDecl& d = sig.operator_at(f->name);
      auto it = m.relations.find(f->name);
      if (it == m.relations.end()) return false;
      for (const auto& t : it->second) {
        if (t[0] != w.index) continue;
        bool all = true;
        for (int i = 0; i < d.arity() && all; ++i)
          all = satisfies(sig, tab, m, g, WorldRef{d.arg_sorts[i], t[i + 1]}, f->kids[i]);
        if (all) return true;
      }
      return false;
    }
    case FKind::At:
      return satisfies(sig, tab, m, g, denotation(tab, m, g, f->sym), f->kids[0]);
    case FKind::Forall: {
      int n = m.world_count(f->sym.sort);
      Assignment g2 = g;
      for (int v = 0; v < n; ++v) {
        g2[f->sym.name] = v;
        if (!satisfies(sig, tab, m, g2, w, f->kids[0])) return false;
      }
      return true;
    }
  }
  throw EvalError("satisfies: unreachable");
}

void for_each_assignment(const SymbolTable& tab, const Model& m,
                         const std::set<StateSymbol>& vars,
                         const std::function<bool(const Assignment&)>& fn) {
  (void)tab;
  std::vector<StateSymbol> vs(vars.begin(), vars.end());
  Assignment g;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == vs.size()) return fn(g);
    int n = m.world_count(vs[i].sort);
    for (int v = 0; v < n; ++v) {
      g[vs[i].name] = v;
      if (!rec(i + 1)) return false;
    }
    g.erase(vs[i].name);
    return true;
  };
  rec(0);
}

std::optional<Falsification> find_falsification(const Signature& sig, const SymbolTable& tab,
                                                const Model& m, const FormulaPtr& f) {
  std::set<StateSymbol> fv = free_state_vars(f);
  std::optional<Falsification> out;
  int n = m.world_count(f->sort);
  for (int w = 0; w < n && !out; ++w) {
    WorldRef wr{f->sort, w};
    for_each_assignment(tab, m, fv, [&](const Assignment& g) {
      if (!satisfies(sig, tab, m, g, wr, f)) {
        out = Falsification{wr, g};
        return false;
      }
      return true;
    });
  }
  return out;
}

bool valid_in_model(const Signature& sig, const SymbolTable& tab, const Model& m,
                    const FormulaPtr& f) {
  return !find_falsification(sig, tab, m, f).has_value();
}

namespace {

void collect_atoms(const FormulaPtr& f, std::set<std::string>& props, std::set<std::string>& noms) {
  if (f->kind == FKind::Prop) props.insert(f->name);
  if (f->kind == FKind::Nom) noms.insert(f->name);
  if (f->kind == FKind::At && f->sym.kind == SymKind::Nominal) noms.insert(f->sym.name);
  for (const auto& k : f->kids) collect_atoms(k, props, noms);
}

}  // namespace

std::optional<bool> valid_in_frame(const Signature& sig, const SymbolTable& tab,
                                   const Model& frame, const FormulaPtr& f, uint64_t max_cases) {
  std::set<std::string> props, noms;
  collect_atoms(f, props, noms);

  // Count the valuation space first.
  uint64_t cases = 1;
  for (const auto& p : props) {
    int n = frame.world_count(tab.lookup(p)->sort);
    if (n >= 62) return std::nullopt;
    uint64_t subsets = uint64_t(1) << n;
    if (cases > max_cases / subsets) return std::nullopt;
    cases *= subsets;
  }
  for (const auto& j : noms) {
    uint64_t n = static_cast<uint64_t>(frame.world_count(tab.lookup(j)->sort));
    if (n == 0 || cases > max_cases / n) return std::nullopt;
    cases *= n;
  }

  std::vector<std::string> pv(props.begin(), props.end());
  std::vector<std::string> nv(noms.begin(), noms.end());
  Model m = frame;

  std::function<bool(size_t)> noms_rec = [&](size_t i) -> bool {
    if (i == nv.size()) return valid_in_model(sig, tab, m, f);
    int n = m.world_count(tab.lookup(nv[i])->sort);
    for (int w = 0; w < n; ++w) {
      m.nom_val[nv[i]] = w;
      if (!noms_rec(i + 1)) return false;
    }
    return true;
  };
  std::function<bool(size_t)> props_rec = [&](size_t i) -> bool {
    if (i == pv.size()) return noms_rec(0);
    int n = m.world_count(tab.lookup(pv[i])->sort);
    for (uint64_t mask = 0; mask < (uint64_t(1) << n); ++mask) {
      std::set<int> ws;
      for (int w = 0; w < n; ++w)
        if (mask & (uint64_t(1) << w)) ws.insert(w);
      m.prop_val[pv[i]] = std::move(ws);
      if (!props_rec(i + 1)) return false;
    }
    return true;
  };
  return props_rec(0);
}

}  // namespace hml
