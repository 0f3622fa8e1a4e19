#include "hml/random.hpp"

namespace hml {

Model random_model(const Signature& sig, const SymbolTable& tab, int max_worlds, Rng& rng) {
  if (max_worlds < 1) throw Error("random_model: max_worlds must be >= 1");
  Model m;
  for (const auto& s : sig.sorts()) {
    int n = 1 + rng.below_int(max_worlds);
    for (int i = 0; i < n; ++i) m.worlds[s].push_back("w" + std::to_string(i));
  }
  for (const auto& [name, d] : sig.operators()) {
    std::vector<int> sizes;
    sizes.push_back(m.world_count(d.result_sort));
    for (const auto& s : d.arg_sorts) sizes.push_back(m.world_count(s));
    std::vector<int> t(sizes.size(), 0);
    for (;;) {
      if (rng.coin()) m.relations[name].push_back(t);
      int i = static_cast<int>(t.size()) - 1;
      while (i >= 0 && ++t[i] == sizes[i]) t[i--] = 0;
      if (i < 0) break;
    }
  }
  for (const auto& [name, info] : tab.entries()) {
    int n = m.world_count(info.sort);
    switch (info.kind) {
      case SymKind::Prop:
        for (int w = 0; w < n; ++w)
          if (rng.coin()) m.prop_val[name].insert(w);
        break;
      case SymKind::Nominal:
        m.nom_val[name] = rng.below_int(n);
        break;
      case SymKind::StateVar:
        break;
    }
  }
  return m;
}

Assignment random_assignment(const Model& m, const std::set<StateSymbol>& vars, Rng& rng) {
  Assignment g;
  for (const auto& v : vars) g[v.name] = rng.below_int(m.world_count(v.sort));
  return g;
}

std::pair<Signature, SymbolTable> random_vocabulary(Rng& rng) {
  Signature sig;
  SymbolTable tab;
  int nsorts = 1 + rng.below_int(3);
  for (int i = 0; i < nsorts; ++i) sig.add_sort("s" + std::to_string(i));
  const auto& sorts = sig.sorts();
  auto pick_sort = [&] { return sorts[rng.below(sorts.size())]; };

  // One binary operator always, so positional schemes have something to bind.
  sig.add_operator({"f0", {pick_sort(), pick_sort()}, pick_sort()});
  int extra = 1 + rng.below_int(3);
  for (int i = 1; i <= extra; ++i) {
    int arity = rng.below_int(4);  // 0..3
    OperatorDecl d;
    d.name = "f" + std::to_string(i);
    for (int a = 0; a < arity; ++a) d.arg_sorts.push_back(pick_sort());
    d.result_sort = pick_sort();
    sig.add_operator(std::move(d));
  }
  for (const auto& s : sorts) {
    for (int i = 0; i < 2; ++i) tab.add(SymKind::Prop, "p" + std::to_string(i) + s, s);
    for (int i = 0; i < 2; ++i) tab.add(SymKind::Nominal, "j" + std::to_string(i) + s, s);
    for (int i = 0; i < 2; ++i) tab.add(SymKind::StateVar, "x" + std::to_string(i) + s, s);
  }
  return {std::move(sig), std::move(tab)};
}

namespace {

FormulaPtr random_rec(const Signature& sig, const SymbolTable& tab, const std::string& sort,
                      int depth, Rng& rng, const StateSymbol* avoid) {
  auto atom = [&]() -> FormulaPtr {
    for (int tries = 0; tries < 16; ++tries) {
      int k = rng.below_int(3);
      std::vector<std::string> names =
          tab.names_of(k == 0 ? SymKind::Prop : k == 1 ? SymKind::Nominal : SymKind::StateVar,
                       sort);
      if (avoid && k == 2)
        std::erase_if(names, [&](const std::string& n) { return n == avoid->name; });
      if (names.empty()) continue;
      const std::string& n = names[rng.below(names.size())];
      if (k == 0) return f_prop(n, sort);
      if (k == 1) return f_nom(n, sort);
      return f_svar(n, sort);
    }
    throw Error("random_formula: no atoms of sort " + sort);
  };
  if (depth <= 0) return atom();

  // Operators that can produce this sort.
  std::vector<const OperatorDecl*> ops;
  for (const auto& [name, d] : sig.operators())
    if (d.result_sort == sort) ops.push_back(&d);

  for (int tries = 0; tries < 16; ++tries) {
    switch (rng.below_int(7)) {
      case 0:
        return atom();
      case 1:
        return f_neg(random_rec(sig, tab, sort, depth - 1, rng, avoid));
      case 2: {
        auto a = random_rec(sig, tab, sort, depth - 1, rng, avoid);
        return f_or(a, random_rec(sig, tab, sort, depth - 1, rng, avoid));
      }
      case 3: {
        if (ops.empty()) break;
        const OperatorDecl* d = ops[rng.below(ops.size())];
        std::vector<FormulaPtr> args;
        for (const auto& as : d->arg_sorts)
          args.push_back(random_rec(sig, tab, as, depth - 1, rng, avoid));
        return f_app(sig, d->name, std::move(args));
      }
      case 4: {
        // @ with any subscript sort
        const auto& sorts = sig.sorts();
        const std::string& zs = sorts[rng.below(sorts.size())];
        std::vector<StateSymbol> syms = tab.state_symbols_of(zs);
        if (avoid)
          std::erase_if(syms, [&](const StateSymbol& z) { return z == *avoid; });
        if (syms.empty()) break;
        const StateSymbol& z = syms[rng.below(syms.size())];
        return f_at(z, random_rec(sig, tab, zs, depth - 1, rng, avoid), sort);
      }
      case 5: {
        const auto& sorts = sig.sorts();
        const std::string& xs = sorts[rng.below(sorts.size())];
        std::vector<std::string> vars = tab.names_of(SymKind::StateVar, xs);
        if (avoid)
          std::erase_if(vars, [&](const std::string& n) {
            return n == avoid->name && xs == avoid->sort;
          });
        if (vars.empty()) break;
        StateSymbol x{SymKind::StateVar, vars[rng.below(vars.size())], xs};
        return f_forall(x, random_rec(sig, tab, sort, depth - 1, rng, avoid));
      }
      case 6: {
        if (ops.empty()) break;
        const OperatorDecl* d = ops[rng.below(ops.size())];
        std::vector<FormulaPtr> args;
        for (const auto& as : d->arg_sorts)
          args.push_back(random_rec(sig, tab, as, depth - 1, rng, avoid));
        return f_box(sig, d->name, std::move(args));
      }
    }
  }
  return atom();
}

}  // namespace

FormulaPtr random_formula(const Signature& sig, const SymbolTable& tab, const std::string& sort,
                          int depth, Rng& rng) {
  return random_rec(sig, tab, sort, depth, rng, nullptr);
}

FormulaPtr random_formula_avoiding(const Signature& sig, const SymbolTable& tab,
                                   const std::string& sort, int depth, Rng& rng,
                                   const StateSymbol& avoid) {
  return random_rec(sig, tab, sort, depth, rng, &avoid);
}

ContextPtr random_nomc_context(const Signature& sig, const std::string& sort, int depth,
                               Rng& rng) {
  std::vector<const OperatorDecl*> ops;
  for (const auto& [name, d] : sig.operators())
    if (d.result_sort == sort && d.arity() > 0) ops.push_back(&d);
  if (depth <= 0 || ops.empty() || rng.below_int(4) == 0) return c_hole(sort);
  const OperatorDecl* d = ops[rng.below(ops.size())];
  int hole_pos = rng.below_int(d->arity());
  std::vector<ContextPtr> kids;
  for (int i = 0; i < d->arity(); ++i) {
    if (i == hole_pos) {
      ContextPtr sub = random_nomc_context(sig, d->arg_sorts[i], depth - 1, rng);
      kids.push_back(sub ? sub : c_hole(d->arg_sorts[i]));
    } else {
      kids.push_back(c_top(d->arg_sorts[i]));
    }
  }
  return c_op(sig, d->name, std::move(kids));
}

}  // namespace hml
