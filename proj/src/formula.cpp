#include "hml/formula.hpp"

#include <algorithm>

namespace hml {

int compare(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind) ? -1 : 1;
  if (int c = a.sort.compare(b.sort)) return c;
  if (int c = a.name.compare(b.name)) return c;
  if (a.sym != b.sym) return a.sym < b.sym ? -1 : 1;
  if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (int c = compare(*a.kids[i], *b.kids[i])) return c;
  return 0;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return compare(*a, *b) == 0;
}

static FormulaPtr make_atom(FKind k, const std::string& name, const std::string& sort) {
  auto f = std::make_shared<Formula>(k, sort);
  f->name = name;
  return f;
}

FormulaPtr f_prop(const std::string& name, const std::string& sort) {
  return make_atom(FKind::Prop, name, sort);
}
FormulaPtr f_nom(const std::string& name, const std::string& sort) {
  return make_atom(FKind::Nom, name, sort);
}
FormulaPtr f_svar(const std::string& name, const std::string& sort) {
  return make_atom(FKind::SVar, name, sort);
}

FormulaPtr f_atom(const StateSymbol& z) {
  switch (z.kind) {
    case SymKind::Nominal: return f_nom(z.name, z.sort);
    case SymKind::StateVar: return f_svar(z.name, z.sort);
    default: throw Error("f_atom: not a state symbol: " + z.name);
  }
}

FormulaPtr f_neg(FormulaPtr a) {
  auto f = std::make_shared<Formula>(FKind::Neg, a->sort);
  f->kids.push_back(std::move(a));
  return f;
}

FormulaPtr f_or(FormulaPtr a, FormulaPtr b) {
  if (a->sort != b->sort)
    throw Error("or: sort mismatch (" + a->sort + " vs " + b->sort + ")");
  auto f = std::make_shared<Formula>(FKind::Or, a->sort);
  f->kids.push_back(std::move(a));
  f->kids.push_back(std::move(b));
  return f;
}

FormulaPtr f_app(const Signature& sig, const std::string& op, std::vector<FormulaPtr> args) {
  const OperatorDecl& d = sig.operator_at(op);
  if (d.arity() != static_cast<int>(args.size()))
    throw Error("operator " + op + ": expected " + std::to_string(d.arity()) +
                " arguments, got " + std::to_string(args.size()));
  for (size_t i = 0; i < args.size(); ++i)
    if (args[i]->sort != d.arg_sorts[i])
      throw Error("operator " + op + ": argument " + std::to_string(i + 1) +
                  " has sort " + args[i]->sort + ", expected " + d.arg_sorts[i]);
  auto f = std::make_shared<Formula>(FKind::App, d.result_sort);
  f->name = op;
  f->kids = std::move(args);
  return f;
}

FormulaPtr f_at(const StateSymbol& z, FormulaPtr body, const std::string& result_sort) {
  if (z.sort != body->sort)
    throw Error("@: subscript " + z.name + " has sort " + z.sort +
                " but the body has sort " + body->sort);
  auto f = std::make_shared<Formula>(FKind::At, result_sort);
  f->sym = z;
  f->kids.push_back(std::move(body));
  return f;
}

FormulaPtr f_forall(const StateSymbol& x, FormulaPtr body) {
  if (x.kind != SymKind::StateVar) throw Error("forall binds state variables only");
  auto f = std::make_shared<Formula>(FKind::Forall, body->sort);
  f->sym = x;
  f->kids.push_back(std::move(body));
  return f;
}

FormulaPtr f_and(FormulaPtr a, FormulaPtr b) {
  return f_neg(f_or(f_neg(std::move(a)), f_neg(std::move(b))));
}
FormulaPtr f_impl(FormulaPtr a, FormulaPtr b) { return f_or(f_neg(std::move(a)), std::move(b)); }
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
  FormulaPtr fwd = f_impl(a, b);
  FormulaPtr bwd = f_impl(std::move(b), std::move(a));
  return f_and(std::move(fwd), std::move(bwd));
}
FormulaPtr f_exists(const StateSymbol& x, FormulaPtr body) {
  return f_neg(f_forall(x, f_neg(std::move(body))));
}

FormulaPtr f_top(const SymbolTable& tab, const std::string& sort) {
  auto atom = tab.canonical_atom(sort);
  if (!atom) throw Error("no atom of sort " + sort + " to spell true:" + sort);
  FormulaPtr a;
  switch (atom->first) {
    case SymKind::Prop: a = f_prop(atom->second, sort); break;
    case SymKind::Nominal: a = f_nom(atom->second, sort); break;
    case SymKind::StateVar: a = f_svar(atom->second, sort); break;
  }
  return f_or(a, f_neg(a));
}
FormulaPtr f_bot(const SymbolTable& tab, const std::string& sort) {
  return f_neg(f_top(tab, sort));
}

FormulaPtr f_box(const Signature& sig, const std::string& op, std::vector<FormulaPtr> args) {
  for (auto& a : args) a = f_neg(std::move(a));
  return f_neg(f_app(sig, op, std::move(args)));
}

bool match_impl(const FormulaPtr& f, FormulaPtr* a, FormulaPtr* b) {
  if (f->kind != FKind::Or || f->kids[0]->kind != FKind::Neg) return false;
  if (a) *a = f->kids[0]->kids[0];
  if (b) *b = f->kids[1];
  return true;
}

bool match_and(const FormulaPtr& f, FormulaPtr* a, FormulaPtr* b) {
  if (f->kind != FKind::Neg) return false;
  const FormulaPtr& o = f->kids[0];
  if (o->kind != FKind::Or) return false;
  if (o->kids[0]->kind != FKind::Neg || o->kids[1]->kind != FKind::Neg) return false;
  if (a) *a = o->kids[0]->kids[0];
  if (b) *b = o->kids[1]->kids[0];
  return true;
}

bool match_iff(const FormulaPtr& f, FormulaPtr* a, FormulaPtr* b) {
  FormulaPtr l, r, a1, b1, a2, b2;
  if (!match_and(f, &l, &r)) return false;
  if (!match_impl(l, &a1, &b1) || !match_impl(r, &a2, &b2)) return false;
  if (!equal(a1, b2) || !equal(b1, a2)) return false;
  if (a) *a = a1;
  if (b) *b = b1;
  return true;
}

bool match_exists(const FormulaPtr& f, StateSymbol* x, FormulaPtr* body) {
  if (f->kind != FKind::Neg) return false;
  const FormulaPtr& q = f->kids[0];
  if (q->kind != FKind::Forall || q->kids[0]->kind != FKind::Neg) return false;
  if (x) *x = q->sym;
  if (body) *body = q->kids[0]->kids[0];
  return true;
}

bool match_box(const FormulaPtr& f, std::string* op, std::vector<FormulaPtr>* args) {
  if (f->kind != FKind::Neg || f->kids[0]->kind != FKind::App) return false;
  const FormulaPtr& app = f->kids[0];
  std::vector<FormulaPtr> out;
  out.reserve(app->kids.size());
  for (const auto& k : app->kids) {
    if (k->kind != FKind::Neg) return false;
    out.push_back(k->kids[0]);
  }
  if (op) *op = app->name;
  if (args) *args = std::move(out);
  return true;
}

static void collect_free(const FormulaPtr& f, std::set<StateSymbol>& bound,
                         std::set<StateSymbol>& out) {
  switch (f->kind) {
    case FKind::SVar: {
      StateSymbol v{SymKind::StateVar, f->name, f->sort};
      if (!bound.count(v)) out.insert(v);
      break;
    }
    case FKind::At:
      if (f->sym.kind == SymKind::StateVar && !bound.count(f->sym)) out.insert(f->sym);
      collect_free(f->kids[0], bound, out);
      break;
    case FKind::Forall: {
      bool inserted = bound.insert(f->sym).second;
      collect_free(f->kids[0], bound, out);
      if (inserted) bound.erase(f->sym);
      break;
    }
    default:
      for (const auto& k : f->kids) collect_free(k, bound, out);
      break;
  }
}

std::set<StateSymbol> free_state_vars(const FormulaPtr& f) {
  std::set<StateSymbol> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool occurs_symbol(const FormulaPtr& f, const StateSymbol& z) {
  switch (f->kind) {
    case FKind::Nom:
      if (z.kind == SymKind::Nominal && f->name == z.name && f->sort == z.sort) return true;
      break;
    case FKind::SVar:
      if (z.kind == SymKind::StateVar && f->name == z.name && f->sort == z.sort) return true;
      break;
    case FKind::At:
      if (f->sym == z) return true;
      break;
    case FKind::Forall:
      if (f->sym == z) return true;
      break;
    default: break;
  }
  for (const auto& k : f->kids)
    if (occurs_symbol(k, z)) return true;
  return false;
}

// Returns the rewritten formula, nullopt on capture.  `shadowed` is true under
// a rebinding of x (occurrences there are not free).
static std::optional<FormulaPtr> subst_rec(const FormulaPtr& f, const StateSymbol& x,
                                           const StateSymbol& z, bool shadowed) {
  switch (f->kind) {
    case FKind::Prop:
    case FKind::Nom:
      return f;
    case FKind::SVar: {
      if (!shadowed && f->name == x.name && f->sort == x.sort) return f_atom(z);
      return f;
    }
    case FKind::At: {
      auto body = subst_rec(f->kids[0], x, z, shadowed);
      if (!body) return std::nullopt;
      StateSymbol sub = f->sym;
      if (!shadowed && sub == x) sub = z;
      return f_at(sub, *body, f->sort);
    }
    case FKind::Forall: {
      bool rebinds_x = (f->sym == x);
      // Capture: a free occurrence of x below a binder for z.
      if (!shadowed && !rebinds_x && z.kind == SymKind::StateVar && f->sym == z) {
        std::set<StateSymbol> fv = free_state_vars(f->kids[0]);
        if (fv.count(x)) return std::nullopt;
      }
      auto body = subst_rec(f->kids[0], x, z, shadowed || rebinds_x);
      if (!body) return std::nullopt;
      return f_forall(f->sym, *body);
    }
    case FKind::Neg: {
      auto a = subst_rec(f->kids[0], x, z, shadowed);
      if (!a) return std::nullopt;
      return f_neg(*a);
    }
    case FKind::Or: {
      auto a = subst_rec(f->kids[0], x, z, shadowed);
      auto b = subst_rec(f->kids[1], x, z, shadowed);
      if (!a || !b) return std::nullopt;
      return f_or(*a, *b);
    }
    case FKind::App: {
      auto g = std::make_shared<Formula>(FKind::App, f->sort);
      g->name = f->name;
      for (const auto& k : f->kids) {
        auto a = subst_rec(k, x, z, shadowed);
        if (!a) return std::nullopt;
        g->kids.push_back(*a);
      }
      return g;
    }
  }
  throw Error("substitute: unreachable");
}

std::optional<FormulaPtr> substitute(const FormulaPtr& f, const StateSymbol& x,
                                     const StateSymbol& z) {
  if (x.kind != SymKind::StateVar) throw Error("substitute: x must be a state variable");
  if (x.sort != z.sort) throw Error("substitute: sorts of x and z differ");
  return subst_rec(f, x, z, false);
}

namespace {

struct SortCheck {
  const Signature& sig;
  const SymbolTable& tab;
  std::optional<SortError> err;

  void fail(std::vector<int> path, std::string expected, std::string found, std::string msg) {
    if (!err) err = SortError{std::move(path), std::move(expected), std::move(found), std::move(msg)};
  }

  // Leftmost-innermost: children are checked before the node itself.
  void check(const FormulaPtr& f, std::vector<int>& path) {
    for (size_t i = 0; i < f->kids.size(); ++i) {
      path.push_back(static_cast<int>(i));
      check(f->kids[i], path);
      path.pop_back();
      if (err) return;
    }
    switch (f->kind) {
      case FKind::Prop:
      case FKind::Nom:
      case FKind::SVar: {
        SymKind want = f->kind == FKind::Prop   ? SymKind::Prop
                       : f->kind == FKind::Nom ? SymKind::Nominal
                                               : SymKind::StateVar;
        auto info = tab.lookup(f->name);
        if (!info || info->kind != want)
          fail(path, sym_kind_name(want), "?", "undeclared atom " + f->name);
        else if (info->sort != f->sort)
          fail(path, info->sort, f->sort, "atom " + f->name + " carries the wrong sort");
        break;
      }
      case FKind::Neg:
        if (f->kids[0]->sort != f->sort)
          fail(path, f->sort, f->kids[0]->sort, "negation changes sort");
        break;
      case FKind::Or:
        if (f->kids[0]->sort != f->sort || f->kids[1]->sort != f->sort)
          fail(path, f->sort, f->kids[0]->sort != f->sort ? f->kids[0]->sort : f->kids[1]->sort,
               "disjunction mixes sorts");
        break;
      case FKind::App: {
        const OperatorDecl* d = sig.find_operator(f->name);
        if (!d) { fail(path, "operator", f->name, "undeclared operator " + f->name); break; }
        if (d->arity() != static_cast<int>(f->kids.size())) {
          fail(path, std::to_string(d->arity()) + " args",
               std::to_string(f->kids.size()) + " args", "arity mismatch for " + f->name);
          break;
        }
        for (size_t i = 0; i < f->kids.size(); ++i)
          if (f->kids[i]->sort != d->arg_sorts[i]) {
            path.push_back(static_cast<int>(i));
            fail(path, d->arg_sorts[i], f->kids[i]->sort, "argument sort mismatch for " + f->name);
            path.pop_back();
            return;
          }
        if (d->result_sort != f->sort)
          fail(path, d->result_sort, f->sort, "result sort mismatch for " + f->name);
        break;
      }
      case FKind::At: {
        if (f->sym.kind == SymKind::Prop) { fail(path, "state symbol", f->sym.name, "@ needs a state symbol"); break; }
        if (!tab.has(f->sym.kind, f->sym.name, f->sym.sort))
          fail(path, sym_kind_name(f->sym.kind), f->sym.name, "undeclared subscript " + f->sym.name);
        else if (f->sym.sort != f->kids[0]->sort)
          fail(path, f->sym.sort, f->kids[0]->sort, "@ subscript and body sorts differ");
        else if (!sig.has_sort(f->sort))
          fail(path, "sort", f->sort, "undeclared result sort " + f->sort);
        break;
      }
      case FKind::Forall: {
        if (f->sym.kind != SymKind::StateVar) { fail(path, "svar", f->sym.name, "forall binds state variables"); break; }
        if (!tab.has(SymKind::StateVar, f->sym.name, f->sym.sort))
          fail(path, "svar", f->sym.name, "undeclared state variable " + f->sym.name);
        else if (f->kids[0]->sort != f->sort)
          fail(path, f->sort, f->kids[0]->sort, "binder changes sort");
        break;
      }
    }
  }
};

}  // namespace

std::optional<SortError> well_sorted(const Signature& sig, const SymbolTable& tab,
                                     const FormulaPtr& f, const std::string& sort) {
  SortCheck c{sig, tab, std::nullopt};
  std::vector<int> path;
  c.check(f, path);
  if (c.err) return c.err;
  if (f->sort != sort)
    return SortError{{}, sort, f->sort, "formula has sort " + f->sort + ", expected " + sort};
  return std::nullopt;
}

}  // namespace hml
