#include "hml/soundness.hpp"

#include "hml/text.hpp"

namespace hml {

namespace {

std::string pick_sort(const Signature& sig, Rng& rng) {
  return sig.sorts()[rng.below(sig.sorts().size())];
}

std::optional<StateSymbol> pick_symbol(const SymbolTable& tab, const std::string& sort, Rng& rng) {
  std::vector<StateSymbol> syms = tab.state_symbols_of(sort);
  if (syms.empty()) return std::nullopt;
  return syms[rng.below(syms.size())];
}

std::optional<StateSymbol> pick_svar(const SymbolTable& tab, const std::string& sort, Rng& rng) {
  std::vector<std::string> names = tab.names_of(SymKind::StateVar, sort);
  if (names.empty()) return std::nullopt;
  return StateSymbol{SymKind::StateVar, names[rng.below(names.size())], sort};
}

const OperatorDecl* pick_op(const Signature& sig, Rng& rng, int min_arity) {
  std::vector<const OperatorDecl*> ops;
  for (const auto& [name, d] : sig.operators())
    if (d.arity() >= min_arity) ops.push_back(&d);
  if (ops.empty()) return nullptr;
  return ops[rng.below(ops.size())];
}

// Fixed tautology shapes for TAUT spot instances.
FormulaPtr random_tautology(const Signature& sig, const SymbolTable& tab, int depth, Rng& rng) {
  std::string s = pick_sort(sig, rng);
  FormulaPtr a = random_formula(sig, tab, s, depth - 1, rng);
  FormulaPtr b = random_formula(sig, tab, s, depth - 1, rng);
  FormulaPtr c = random_formula(sig, tab, s, depth - 1, rng);
  switch (rng.below_int(6)) {
    case 0: return f_or(a, f_neg(a));
    case 1: return f_impl(a, f_impl(b, a));
    case 2: return f_impl(f_impl(a, f_impl(b, c)), f_impl(f_impl(a, b), f_impl(a, c)));
    case 3: return f_iff(f_neg(f_neg(a)), a);
    case 4: return f_impl(f_impl(f_impl(a, b), a), a);
    default: return f_iff(f_neg(f_and(a, b)), f_or(f_neg(a), f_neg(b)));
  }
}

std::optional<SchemeInstance> try_instance(const Signature& sig, const SymbolTable& tab,
                                           SchemeId scheme, int depth, Rng& rng) {
  SchemeInstance inst;
  inst.scheme = scheme;
  auto rf = [&](const std::string& sort) { return random_formula(sig, tab, sort, depth, rng); };
  switch (scheme) {
    case SchemeId::TAUT:
      inst.bind["phi"] = random_tautology(sig, tab, depth, rng);
      break;
    case SchemeId::K_SIGMA_AX: {
      const OperatorDecl* d = pick_op(sig, rng, 1);
      if (!d) return std::nullopt;
      int pos = 1 + rng.below_int(d->arity());
      inst.bind["op"] = d->name;
      inst.bind["pos"] = pos;
      inst.bind["phi"] = rf(d->arg_sorts[pos - 1]);
      inst.bind["chi"] = rf(d->arg_sorts[pos - 1]);
      for (int k = 1; k <= d->arity(); ++k)
        if (k != pos) inst.bind["side" + std::to_string(k)] = rf(d->arg_sorts[k - 1]);
      break;
    }
    case SchemeId::DUAL: {
      const OperatorDecl* d = pick_op(sig, rng, 0);
      if (!d) return std::nullopt;
      inst.bind["op"] = d->name;
      for (int k = 1; k <= d->arity(); ++k)
        inst.bind["arg" + std::to_string(k)] = rf(d->arg_sorts[k - 1]);
      break;
    }
    case SchemeId::K_AT: {
      auto z = pick_symbol(tab, pick_sort(sig, rng), rng);
      if (!z) return std::nullopt;
      inst.bind["z"] = *z;
      inst.bind["s"] = pick_sort(sig, rng);
      inst.bind["phi"] = rf(z->sort);
      inst.bind["psi"] = rf(z->sort);
      break;
    }
    case SchemeId::SELFDUAL: {
      auto z = pick_symbol(tab, pick_sort(sig, rng), rng);
      if (!z) return std::nullopt;
      inst.bind["z"] = *z;
      inst.bind["s"] = pick_sort(sig, rng);
      inst.bind["phi"] = rf(z->sort);
      break;
    }
    case SchemeId::INTRO: {
      auto z = pick_symbol(tab, pick_sort(sig, rng), rng);
      if (!z) return std::nullopt;
      inst.bind["z"] = *z;
      inst.bind["phi"] = rf(z->sort);
      break;
    }
    case SchemeId::AGREE: {
      auto z = pick_symbol(tab, pick_sort(sig, rng), rng);
      auto y = pick_symbol(tab, pick_sort(sig, rng), rng);
      if (!z || !y) return std::nullopt;
      inst.bind["z"] = *z;
      inst.bind["y"] = *y;
      inst.bind["s"] = pick_sort(sig, rng);
      inst.bind["phi"] = rf(z->sort);
      break;
    }
    case SchemeId::REF: {
      auto z = pick_symbol(tab, pick_sort(sig, rng), rng);
      if (!z) return std::nullopt;
      inst.bind["z"] = *z;
      inst.bind["s"] = pick_sort(sig, rng);
      break;
    }
    case SchemeId::BACK: {
      const OperatorDecl* d = pick_op(sig, rng, 1);
      if (!d) return std::nullopt;
      int pos = 1 + rng.below_int(d->arity());
      auto z = pick_symbol(tab, pick_sort(sig, rng), rng);
      if (!z) return std::nullopt;
      inst.bind["op"] = d->name;
      inst.bind["pos"] = pos;
      inst.bind["z"] = *z;
      inst.bind["psi"] = rf(z->sort);
      for (int k = 1; k <= d->arity(); ++k)
        if (k != pos) inst.bind["side" + std::to_string(k)] = rf(d->arg_sorts[k - 1]);
      break;
    }
    case SchemeId::Q1: {
      auto x = pick_svar(tab, pick_sort(sig, rng), rng);
      if (!x) return std::nullopt;
      std::string s = pick_sort(sig, rng);
      inst.bind["x"] = *x;
      inst.bind["phi"] = random_formula_avoiding(sig, tab, s, depth, rng, *x);
      inst.bind["psi"] = rf(s);
      break;
    }
    case SchemeId::Q2: {
      auto x = pick_svar(tab, pick_sort(sig, rng), rng);
      if (!x) return std::nullopt;
      auto z = pick_symbol(tab, x->sort, rng);
      if (!z) return std::nullopt;
      inst.bind["x"] = *x;
      inst.bind["z"] = *z;
      // avoiding z keeps it substitutable for x
      inst.bind["phi"] = random_formula_avoiding(sig, tab, pick_sort(sig, rng), depth, rng, *z);
      break;
    }
    case SchemeId::NAME: {
      auto x = pick_svar(tab, pick_sort(sig, rng), rng);
      if (!x) return std::nullopt;
      inst.bind["x"] = *x;
      break;
    }
    case SchemeId::BARCAN: {
      const OperatorDecl* d = pick_op(sig, rng, 1);
      if (!d) return std::nullopt;
      int pos = 1 + rng.below_int(d->arity());
      auto x = pick_svar(tab, pick_sort(sig, rng), rng);
      if (!x) return std::nullopt;
      inst.bind["op"] = d->name;
      inst.bind["pos"] = pos;
      inst.bind["x"] = *x;
      for (int k = 1; k <= d->arity(); ++k) {
        // x may occur free only in the moved argument
        FormulaPtr arg = (k == pos)
                             ? rf(d->arg_sorts[k - 1])
                             : random_formula_avoiding(sig, tab, d->arg_sorts[k - 1], depth, rng, *x);
        inst.bind["arg" + std::to_string(k)] = arg;
      }
      break;
    }
    case SchemeId::NOM: {
      std::string outer = pick_sort(sig, rng);
      ContextPtr eta = random_nomc_context(sig, outer, 2, rng);
      ContextPtr theta;
      for (int tries = 0; tries < 20 && !theta; ++tries) {
        ContextPtr cand = random_nomc_context(sig, outer, 2, rng);
        if (hole_sort(cand) == hole_sort(eta)) theta = cand;
      }
      if (!theta) {
        eta = c_hole(outer);
        theta = c_hole(outer);
      }
      auto x = pick_svar(tab, hole_sort(eta), rng);
      if (!x) return std::nullopt;
      inst.bind["x"] = *x;
      inst.bind["phi"] = rf(x->sort);
      inst.bind["eta"] = eta;
      inst.bind["theta"] = theta;
      break;
    }
    case SchemeId::BARCAN_AT: {
      auto x = pick_svar(tab, pick_sort(sig, rng), rng);
      auto z = pick_symbol(tab, pick_sort(sig, rng), rng);
      if (!x || !z) return std::nullopt;
      // z == x violates the side condition; instantiation rejects it and the
      // caller redraws
      inst.bind["x"] = *x;
      inst.bind["z"] = *z;
      inst.bind["s"] = pick_sort(sig, rng);
      inst.bind["phi"] = rf(z->sort);
      break;
    }
    case SchemeId::NOM_X: {
      auto x = pick_svar(tab, pick_sort(sig, rng), rng);
      if (!x) return std::nullopt;
      auto z = pick_symbol(tab, x->sort, rng);
      auto y = pick_symbol(tab, x->sort, rng);
      if (!z || !y) return std::nullopt;
      inst.bind["x"] = *x;
      inst.bind["z"] = *z;
      inst.bind["y"] = *y;
      inst.bind["s"] = pick_sort(sig, rng);
      break;
    }
    case SchemeId::NOM_Z:
    case SchemeId::SYM: {
      std::string t = pick_sort(sig, rng);
      auto z = pick_symbol(tab, t, rng);
      auto y = pick_symbol(tab, t, rng);
      if (!z || !y) return std::nullopt;
      inst.bind["z"] = *z;
      inst.bind["y"] = *y;
      inst.bind["s"] = pick_sort(sig, rng);
      if (scheme == SchemeId::NOM_Z) inst.bind["phi"] = rf(t);
      break;
    }
    case SchemeId::BRIDGE: {
      const OperatorDecl* d = pick_op(sig, rng, 1);
      if (!d) return std::nullopt;
      int pos = 1 + rng.below_int(d->arity());
      auto z = pick_symbol(tab, d->arg_sorts[pos - 1], rng);
      if (!z) return std::nullopt;
      inst.bind["op"] = d->name;
      inst.bind["pos"] = pos;
      inst.bind["z"] = *z;
      inst.bind["phi"] = rf(d->arg_sorts[pos - 1]);
      for (int k = 1; k <= d->arity(); ++k)
        if (k != pos) inst.bind["side" + std::to_string(k)] = rf(d->arg_sorts[k - 1]);
      break;
    }
  }
  return inst;
}

uint64_t trial_seed(uint64_t seed, SchemeId scheme, int trial) {
  uint64_t tag = (static_cast<uint64_t>(scheme) + 1) * 1000003ull + static_cast<uint64_t>(trial);
  return seed ^ (0x9e3779b97f4a7c15ull * (tag + 1));
}

SweepReport run_sweep(const std::string& name, const SweepOptions& opt,
                      const std::function<std::optional<FormulaPtr>(
                          const Signature&, const SymbolTable&, Rng&)>& make_instance,
                      SchemeId stream) {
  SweepReport report;
  report.scheme = name;
  report.trials = opt.trials;
  for (int trial = 0; trial < opt.trials; ++trial) {
    Rng rng(trial_seed(opt.seed, stream, trial));
    auto [sig, tab] = random_vocabulary(rng);
    auto inst = make_instance(sig, tab, rng);
    if (!inst) {
      ++report.skipped;
      continue;
    }
    Model m = random_model(sig, tab, opt.max_worlds, rng);
    if (auto fals = find_falsification(sig, tab, m, *inst)) {
      SweepCounterexample cex;
      cex.trial = trial;
      cex.vocabulary = print_signature(sig, tab);
      cex.model = print_model(sig, tab, m);
      cex.instance = print_formula(*inst);
      cex.world = m.world_id(fals->world);
      for (const auto& [v, w] : fals->assignment)
        cex.assignment += v + "=" + m.worlds.at(tab.lookup(v)->sort)[w] + " ";
      report.counterexamples.push_back(std::move(cex));
    }
  }
  return report;
}

}  // namespace

std::optional<SchemeInstance> random_scheme_instance(const Signature& sig, const SymbolTable& tab,
                                                     SchemeId scheme, int depth, Rng& rng) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    auto inst = try_instance(sig, tab, scheme, depth, rng);
    if (!inst) return std::nullopt;
    try {
      instantiate_scheme(sig, tab, *inst);
      return inst;
    } catch (const SchemeError&) {
      // a side condition failed for this draw; redraw
    }
  }
  return std::nullopt;
}

SweepReport soundness_sweep(SchemeId scheme, const SweepOptions& opt) {
  return run_sweep(
      scheme_name(scheme), opt,
      [&](const Signature& sig, const SymbolTable& tab, Rng& rng) -> std::optional<FormulaPtr> {
        auto inst = random_scheme_instance(sig, tab, scheme, opt.depth, rng);
        if (!inst) return std::nullopt;
        return instantiate_scheme(sig, tab, *inst);
      },
      scheme);
}

SweepReport negative_control_sweep(const SweepOptions& opt) {
  return run_sweep(
      "NOT_A_SCHEME", opt,
      [&](const Signature& sig, const SymbolTable& tab, Rng& rng) -> std::optional<FormulaPtr> {
        std::string t = pick_sort(sig, rng);
        auto z = pick_symbol(tab, t, rng);
        if (!z) return std::nullopt;
        FormulaPtr phi = random_formula(sig, tab, t, opt.depth, rng);
        return f_impl(f_at(*z, phi, t), phi);
      },
      SchemeId::TAUT);
}

WitnessCase negative_control_witness() {
  WitnessCase c;
  c.sig.add_sort("s");
  c.tab.add(SymKind::Prop, "p", "s");
  c.tab.add(SymKind::Nominal, "j", "s");
  c.model.worlds["s"] = {"w0", "w1"};
  c.model.prop_val["p"] = {0};   // p holds only at the named world
  c.model.nom_val["j"] = 0;
  StateSymbol j{SymKind::Nominal, "j", "s"};
  c.instance = f_impl(f_at(j, f_prop("p", "s"), "s"), f_prop("p", "s"));
  c.world = WorldRef{"s", 1};    // @_j p holds here, p does not
  return c;
}

}  // namespace hml
