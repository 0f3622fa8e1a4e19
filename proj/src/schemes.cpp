#include "hml/schemes.hpp"

#include <array>

namespace hml {

namespace {

struct SchemeMeta {
  SchemeId id;
  const char* name;
  bool axiom;
};

constexpr std::array<SchemeMeta, 19> kSchemes{{
    {SchemeId::TAUT, "TAUT", true},
    {SchemeId::K_SIGMA_AX, "K_SIGMA", true},
    {SchemeId::DUAL, "DUAL", true},
    {SchemeId::K_AT, "K_AT", true},
    {SchemeId::SELFDUAL, "SELFDUAL", true},
    {SchemeId::INTRO, "INTRO", true},
    {SchemeId::AGREE, "AGREE", true},
    {SchemeId::REF, "REF", true},
    {SchemeId::BACK, "BACK", true},
    {SchemeId::Q1, "Q1", true},
    {SchemeId::Q2, "Q2", true},
    {SchemeId::NAME, "NAME", true},
    {SchemeId::BARCAN, "BARCAN", true},
    {SchemeId::NOM, "NOM", true},
    {SchemeId::BARCAN_AT, "BARCAN_AT", true},
    {SchemeId::NOM_X, "NOM_X", true},
    {SchemeId::NOM_Z, "NOM_Z", false},
    {SchemeId::SYM, "SYM", false},
    {SchemeId::BRIDGE, "BRIDGE", false},
}};

}  // namespace

const char* scheme_name(SchemeId id) {
  for (const auto& m : kSchemes)
    if (m.id == id) return m.name;
  return "?";
}

std::optional<SchemeId> scheme_by_name(const std::string& name) {
  for (const auto& m : kSchemes)
    if (name == m.name) return m.id;
  return std::nullopt;
}

const char* system_name(SystemId id) {
  switch (id) {
    case SystemId::K_SIGMA: return "K_SIGMA";
    case SystemId::H_AT: return "H_AT";
    case SystemId::H_FORALL: return "H_FORALL";
    case SystemId::H_AT_FORALL: return "H_AT_FORALL";
  }
  return "?";
}

std::optional<SystemId> system_by_name(const std::string& name) {
  for (SystemId s : {SystemId::K_SIGMA, SystemId::H_AT, SystemId::H_FORALL, SystemId::H_AT_FORALL})
    if (name == system_name(s)) return s;
  return std::nullopt;
}

bool scheme_is_axiom(SchemeId id) {
  for (const auto& m : kSchemes)
    if (m.id == id) return m.axiom;
  return false;
}

bool scheme_in_system(SchemeId id, SystemId system) {
  switch (id) {
    case SchemeId::TAUT:
    case SchemeId::K_SIGMA_AX:
    case SchemeId::DUAL:
      return true;
    case SchemeId::K_AT:
    case SchemeId::SELFDUAL:
    case SchemeId::INTRO:
    case SchemeId::AGREE:
    case SchemeId::REF:
    case SchemeId::BACK:
      return system == SystemId::H_AT || system == SystemId::H_AT_FORALL;
    case SchemeId::Q1:
    case SchemeId::Q2:
    case SchemeId::NAME:
    case SchemeId::BARCAN:
      return system == SystemId::H_FORALL || system == SystemId::H_AT_FORALL;
    case SchemeId::NOM:
      return system == SystemId::H_FORALL;
    case SchemeId::BARCAN_AT:
    case SchemeId::NOM_X:
      return system == SystemId::H_AT_FORALL;
    case SchemeId::NOM_Z:
    case SchemeId::SYM:
    case SchemeId::BRIDGE:
      return false;
  }
  return false;
}

std::vector<SchemeId> axiom_schemes(SystemId system) {
  std::vector<SchemeId> out;
  for (const auto& m : kSchemes)
    if (m.axiom && scheme_in_system(m.id, system)) out.push_back(m.id);
  return out;
}

std::vector<SchemeId> sweep_schemes() {
  std::vector<SchemeId> out;
  for (const auto& m : kSchemes) out.push_back(m.id);
  return out;
}

namespace {

[[noreturn]] void missing(const std::string& key) {
  throw SchemeError("missingBinding", "no binding for " + key);
}

const Binding& need(const SchemeInstance& inst, const std::string& key) {
  auto it = inst.bind.find(key);
  if (it == inst.bind.end()) missing(key);
  return it->second;
}

FormulaPtr get_formula(const SchemeInstance& inst, const std::string& key) {
  const Binding& b = need(inst, key);
  if (const auto* f = std::get_if<FormulaPtr>(&b)) return *f;
  throw SchemeError("badBinding", key + " must be a formula");
}

StateSymbol get_symbol(const SchemeInstance& inst, const std::string& key) {
  const Binding& b = need(inst, key);
  if (const auto* z = std::get_if<StateSymbol>(&b)) return *z;
  throw SchemeError("badBinding", key + " must be a state symbol");
}

std::string get_name(const SchemeInstance& inst, const std::string& key) {
  const Binding& b = need(inst, key);
  if (const auto* s = std::get_if<std::string>(&b)) return *s;
  throw SchemeError("badBinding", key + " must be a name");
}

int get_int(const SchemeInstance& inst, const std::string& key) {
  const Binding& b = need(inst, key);
  if (const auto* i = std::get_if<int>(&b)) return *i;
  throw SchemeError("badBinding", key + " must be an integer");
}

ContextPtr get_context(const SchemeInstance& inst, const std::string& key) {
  const Binding& b = need(inst, key);
  if (const auto* c = std::get_if<ContextPtr>(&b)) return *c;
  throw SchemeError("badBinding", key + " must be a context");
}

StateSymbol get_state_var(const SchemeInstance& inst, const std::string& key) {
  StateSymbol x = get_symbol(inst, key);
  if (x.kind != SymKind::StateVar)
    throw SchemeError("badBinding", key + " must be a state variable");
  return x;
}

// The operator and the argument vector for positional schemes; slot `pos`
// comes from `pivots`, the rest from side<k> or arg<k> bindings.
struct OpArgs {
  const OperatorDecl* decl;
  int pos;  // 0-based
};

OpArgs get_op_pos(const Signature& sig, const SchemeInstance& inst) {
  std::string op = get_name(inst, "op");
  const OperatorDecl* d = sig.find_operator(op);
  if (!d) throw SchemeError("badBinding", "unknown operator " + op);
  int pos = get_int(inst, "pos");
  if (pos < 1 || pos > d->arity())
    throw SchemeError("badBinding", "pos " + std::to_string(pos) + " out of range for " + op);
  return {d, pos - 1};
}

std::vector<FormulaPtr> gather_args(const SchemeInstance& inst, const OpArgs& oa,
                                    const char* prefix, const FormulaPtr& pivot) {
  std::vector<FormulaPtr> args;
  for (int k = 0; k < oa.decl->arity(); ++k) {
    if (k == oa.pos)
      args.push_back(pivot);
    else
      args.push_back(get_formula(inst, prefix + std::to_string(k + 1)));
  }
  return args;
}

FormulaPtr build(const Signature& sig, const SymbolTable& tab, const SchemeInstance& inst) {
  switch (inst.scheme) {
    case SchemeId::TAUT: {
      FormulaPtr phi = get_formula(inst, "phi");
      TautologyResult r = is_tautology(phi);
      if (r.too_many_atoms) throw SchemeError("tooManyAtoms", std::to_string(r.atoms) + " letters");
      if (!r.is_tautology)
        throw SchemeError("sideConditionViolation", "TAUT: not a propositional tautology");
      return phi;
    }
    case SchemeId::K_SIGMA_AX: {
      OpArgs oa = get_op_pos(sig, inst);
      FormulaPtr phi = get_formula(inst, "phi");
      FormulaPtr chi = get_formula(inst, "chi");
      auto boxed = [&](FormulaPtr at_pos) {
        return f_box(sig, oa.decl->name, gather_args(inst, oa, "side", at_pos));
      };
      return f_impl(boxed(f_impl(phi, chi)), f_impl(boxed(phi), boxed(chi)));
    }
    case SchemeId::DUAL: {
      std::string op = get_name(inst, "op");
      const OperatorDecl* d = sig.find_operator(op);
      if (!d) throw SchemeError("badBinding", "unknown operator " + op);
      std::vector<FormulaPtr> args, negs;
      for (int k = 1; k <= d->arity(); ++k) {
        args.push_back(get_formula(inst, "arg" + std::to_string(k)));
        negs.push_back(f_neg(args.back()));
      }
      return f_iff(f_app(sig, op, args), f_neg(f_box(sig, op, negs)));
    }
    case SchemeId::K_AT: {
      StateSymbol z = get_symbol(inst, "z");
      std::string s = get_name(inst, "s");
      FormulaPtr phi = get_formula(inst, "phi");
      FormulaPtr psi = get_formula(inst, "psi");
      return f_impl(f_at(z, f_impl(phi, psi), s),
                    f_impl(f_at(z, phi, s), f_at(z, psi, s)));
    }
    case SchemeId::SELFDUAL: {
      StateSymbol z = get_symbol(inst, "z");
      std::string s = get_name(inst, "s");
      FormulaPtr phi = get_formula(inst, "phi");
      return f_iff(f_at(z, phi, s), f_neg(f_at(z, f_neg(phi), s)));
    }
    case SchemeId::INTRO: {
      StateSymbol z = get_symbol(inst, "z");
      FormulaPtr phi = get_formula(inst, "phi");
      return f_impl(f_atom(z), f_iff(phi, f_at(z, phi, z.sort)));
    }
    case SchemeId::AGREE: {
      StateSymbol y = get_symbol(inst, "y");
      StateSymbol z = get_symbol(inst, "z");
      std::string s = get_name(inst, "s");
      FormulaPtr phi = get_formula(inst, "phi");
      // inner @ lands on y's sort so that the outer @ is applicable
      return f_iff(f_at(y, f_at(z, phi, y.sort), s), f_at(z, phi, s));
    }
    case SchemeId::REF: {
      StateSymbol z = get_symbol(inst, "z");
      std::string s = get_name(inst, "s");
      return f_at(z, f_atom(z), s);
    }
    case SchemeId::BACK: {
      OpArgs oa = get_op_pos(sig, inst);
      StateSymbol z = get_symbol(inst, "z");
      FormulaPtr psi = get_formula(inst, "psi");
      FormulaPtr inner = f_at(z, psi, oa.decl->arg_sorts[oa.pos]);
      return f_impl(f_app(sig, oa.decl->name, gather_args(inst, oa, "side", inner)),
                    f_at(z, psi, oa.decl->result_sort));
    }
    case SchemeId::Q1: {
      StateSymbol x = get_state_var(inst, "x");
      FormulaPtr phi = get_formula(inst, "phi");
      FormulaPtr psi = get_formula(inst, "psi");
      if (free_state_vars(phi).count(x))
        throw SchemeError("sideConditionViolation", "Q1: x occurs free in phi");
      return f_impl(f_forall(x, f_impl(phi, psi)), f_impl(phi, f_forall(x, psi)));
    }
    case SchemeId::Q2: {
      StateSymbol x = get_state_var(inst, "x");
      StateSymbol z = get_symbol(inst, "z");
      FormulaPtr phi = get_formula(inst, "phi");
      if (x.sort != z.sort) throw SchemeError("sortError", "Q2: sorts of x and z differ");
      auto sub = substitute(phi, x, z);
      if (!sub)
        throw SchemeError("sideConditionViolation", "Q2: " + z.name + " is not substitutable for " + x.name);
      return f_impl(f_forall(x, phi), *sub);
    }
    case SchemeId::NAME: {
      StateSymbol x = get_state_var(inst, "x");
      return f_exists(x, f_atom(x));
    }
    case SchemeId::BARCAN: {
      OpArgs oa = get_op_pos(sig, inst);
      StateSymbol x = get_state_var(inst, "x");
      std::vector<FormulaPtr> args;
      for (int k = 1; k <= oa.decl->arity(); ++k)
        args.push_back(get_formula(inst, "arg" + std::to_string(k)));
      for (int k = 0; k < oa.decl->arity(); ++k)
        if (k != oa.pos && free_state_vars(args[k]).count(x))
          throw SchemeError("sideConditionViolation",
                            "BARCAN: x occurs free in argument " + std::to_string(k + 1));
      std::vector<FormulaPtr> moved = args;
      moved[oa.pos] = f_forall(x, args[oa.pos]);
      return f_impl(f_forall(x, f_box(sig, oa.decl->name, args)),
                    f_box(sig, oa.decl->name, moved));
    }
    case SchemeId::NOM: {
      StateSymbol x = get_state_var(inst, "x");
      FormulaPtr phi = get_formula(inst, "phi");
      ContextPtr eta = get_context(inst, "eta");
      ContextPtr theta = get_context(inst, "theta");
      if (!in_nomc(eta) || !in_nomc(theta))
        throw SchemeError("sideConditionViolation", "NOM: contexts must have exactly one hole");
      if (eta->sort != theta->sort)
        throw SchemeError("sortError", "NOM: context sorts differ");
      if (hole_sort(eta) != x.sort || hole_sort(theta) != x.sort || phi->sort != x.sort)
        throw SchemeError("sortError", "NOM: hole and binder sorts differ");
      FormulaPtr lhs = apply_context(sig, tab, eta, f_and(f_atom(x), phi));
      FormulaPtr rhs = apply_context_dual(sig, tab, theta, f_impl(f_atom(x), phi));
      return f_forall(x, f_impl(lhs, rhs));
    }
    case SchemeId::BARCAN_AT: {
      StateSymbol x = get_state_var(inst, "x");
      StateSymbol z = get_symbol(inst, "z");
      std::string s = get_name(inst, "s");
      FormulaPtr phi = get_formula(inst, "phi");
      if (z == x)
        throw SchemeError("sideConditionViolation", "BARCAN_AT: x and z must be distinct");
      return f_impl(f_forall(x, f_at(z, phi, s)), f_at(z, f_forall(x, phi), s));
    }
    case SchemeId::NOM_X: {
      StateSymbol x = get_state_var(inst, "x");
      StateSymbol z = get_symbol(inst, "z");
      StateSymbol y = get_symbol(inst, "y");
      std::string s = get_name(inst, "s");
      return f_impl(f_and(f_at(z, f_atom(x), s), f_at(y, f_atom(x), s)),
                    f_at(z, f_atom(y), s));
    }
    case SchemeId::NOM_Z: {
      StateSymbol z = get_symbol(inst, "z");
      StateSymbol y = get_symbol(inst, "y");
      std::string s = get_name(inst, "s");
      FormulaPtr phi = get_formula(inst, "phi");
      return f_impl(f_at(z, f_atom(y), s), f_iff(f_at(z, phi, s), f_at(y, phi, s)));
    }
    case SchemeId::SYM: {
      StateSymbol z = get_symbol(inst, "z");
      StateSymbol y = get_symbol(inst, "y");
      std::string s = get_name(inst, "s");
      return f_impl(f_at(z, f_atom(y), s), f_at(y, f_atom(z), s));
    }
    case SchemeId::BRIDGE: {
      OpArgs oa = get_op_pos(sig, inst);
      StateSymbol z = get_symbol(inst, "z");
      FormulaPtr phi = get_formula(inst, "phi");
      std::string s = oa.decl->result_sort;
      FormulaPtr with_z = f_app(sig, oa.decl->name, gather_args(inst, oa, "side", f_atom(z)));
      FormulaPtr with_phi = f_app(sig, oa.decl->name, gather_args(inst, oa, "side", phi));
      return f_impl(f_and(with_z, f_at(z, phi, s)), with_phi);
    }
  }
  throw SchemeError("badBinding", "unknown scheme");
}

}  // namespace

FormulaPtr instantiate_scheme(const Signature& sig, const SymbolTable& tab,
                              const SchemeInstance& inst) {
  try {
    return build(sig, tab, inst);
  } catch (const SchemeError&) {
    throw;
  } catch (const Error& e) {
    throw SchemeError("sortError", e.what());
  }
}

namespace {

// Compiled Boolean skeleton for truth-table evaluation.
struct BoolExpr {
  enum Kind { Letter, Not, Or } kind;
  int letter = -1;
  int a = -1, b = -1;
};

int compile_bool(const FormulaPtr& f, std::map<FormulaPtr, int, FormulaLess>& letters,
                 std::vector<BoolExpr>& prog) {
  switch (f->kind) {
    case FKind::Neg: {
      int a = compile_bool(f->kids[0], letters, prog);
      prog.push_back({BoolExpr::Not, -1, a, -1});
      return static_cast<int>(prog.size()) - 1;
    }
    case FKind::Or: {
      int a = compile_bool(f->kids[0], letters, prog);
      int b = compile_bool(f->kids[1], letters, prog);
      prog.push_back({BoolExpr::Or, -1, a, b});
      return static_cast<int>(prog.size()) - 1;
    }
    default: {
      auto [it, fresh] = letters.emplace(f, static_cast<int>(letters.size()));
      (void)fresh;
      prog.push_back({BoolExpr::Letter, it->second, -1, -1});
      return static_cast<int>(prog.size()) - 1;
    }
  }
}

}  // namespace

TautologyResult is_tautology(const FormulaPtr& f, int max_atoms) {
  std::map<FormulaPtr, int, FormulaLess> letters;
  std::vector<BoolExpr> prog;
  int root = compile_bool(f, letters, prog);
  int k = static_cast<int>(letters.size());
  if (k > max_atoms) return {false, k, true};
  std::vector<char> val(prog.size());
  for (uint64_t mask = 0; mask < (uint64_t(1) << k); ++mask) {
    for (size_t i = 0; i < prog.size(); ++i) {
      const BoolExpr& e = prog[i];
      switch (e.kind) {
        case BoolExpr::Letter: val[i] = (mask >> e.letter) & 1; break;
        case BoolExpr::Not: val[i] = !val[e.a]; break;
        case BoolExpr::Or: val[i] = val[e.a] || val[e.b]; break;
      }
    }
    if (!val[root]) return {false, k, false};
  }
  return {true, k, false};
}

}  // namespace hml
