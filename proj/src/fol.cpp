#include "hml/fol.hpp"

#include <sstream>

#include "hml/eval.hpp"
#include "hml/text.hpp"

namespace hml {

FOFormulaPtr fo_eq(FOTerm a, FOTerm b) {
  if (a.sort != b.sort) throw Error("=: sort mismatch (" + a.sort + " vs " + b.sort + ")");
  auto f = std::make_shared<FOFormula>(FOKind::Eq);
  f->terms = {std::move(a), std::move(b)};
  return f;
}

FOFormulaPtr fo_pred(const std::string& prop, FOTerm t) {
  auto f = std::make_shared<FOFormula>(FOKind::Pred);
  f->pred = prop;
  f->terms = {std::move(t)};
  return f;
}

FOFormulaPtr fo_rel(const std::string& op, std::vector<FOTerm> terms) {
  auto f = std::make_shared<FOFormula>(FOKind::Rel);
  f->pred = op;
  f->terms = std::move(terms);
  return f;
}

FOFormulaPtr fo_not(FOFormulaPtr a) {
  auto f = std::make_shared<FOFormula>(FOKind::Not);
  f->kids = {std::move(a)};
  return f;
}

FOFormulaPtr fo_or(FOFormulaPtr a, FOFormulaPtr b) {
  auto f = std::make_shared<FOFormula>(FOKind::Or);
  f->kids = {std::move(a), std::move(b)};
  return f;
}

FOFormulaPtr fo_and(FOFormulaPtr a, FOFormulaPtr b) {
  auto f = std::make_shared<FOFormula>(FOKind::And);
  f->kids = {std::move(a), std::move(b)};
  return f;
}

static FOFormulaPtr quant(FOKind k, const std::string& var, const std::string& sort,
                          FOFormulaPtr a) {
  auto f = std::make_shared<FOFormula>(k);
  f->var = var;
  f->var_sort = sort;
  f->kids = {std::move(a)};
  return f;
}

FOFormulaPtr fo_exists(const std::string& var, const std::string& sort, FOFormulaPtr a) {
  return quant(FOKind::Exists, var, sort, std::move(a));
}
FOFormulaPtr fo_forall(const std::string& var, const std::string& sort, FOFormulaPtr a) {
  return quant(FOKind::Forall, var, sort, std::move(a));
}

bool fo_equal(const FOFormulaPtr& a, const FOFormulaPtr& b) {
  if (a->kind != b->kind || a->pred != b->pred || a->var != b->var ||
      a->var_sort != b->var_sort || a->terms.size() != b->terms.size() ||
      a->kids.size() != b->kids.size())
    return false;
  for (size_t i = 0; i < a->terms.size(); ++i)
    if (!(a->terms[i] == b->terms[i])) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!fo_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

static void free_rec(const FOFormulaPtr& f, std::set<std::string>& bound,
                     std::set<std::string>& out) {
  for (const auto& t : f->terms)
    if (t.kind == TKind::Var && !bound.count(t.name)) out.insert(t.name);
  if (f->kind == FOKind::Exists || f->kind == FOKind::Forall) {
    bool fresh = bound.insert(f->var).second;
    free_rec(f->kids[0], bound, out);
    if (fresh) bound.erase(f->var);
  } else {
    for (const auto& k : f->kids) free_rec(k, bound, out);
  }
}

std::set<std::string> fo_free_vars(const FOFormulaPtr& f) {
  std::set<std::string> bound, out;
  free_rec(f, bound, out);
  return out;
}

static bool no_rebind_rec(const FOFormulaPtr& f, std::set<std::string>& bound) {
  if (f->kind == FOKind::Exists || f->kind == FOKind::Forall) {
    if (!bound.insert(f->var).second) return false;
    bool ok = no_rebind_rec(f->kids[0], bound);
    bound.erase(f->var);
    return ok;
  }
  for (const auto& k : f->kids)
    if (!no_rebind_rec(k, bound)) return false;
  return true;
}

bool fo_no_rebinding(const FOFormulaPtr& f) {
  std::set<std::string> bound;
  return no_rebind_rec(f, bound);
}

namespace {

int term_value(const FOStructure& a, const FOEnv& env, const FOTerm& t) {
  if (t.kind == TKind::Var) {
    auto it = env.find(t.name);
    if (it == env.end()) throw EvalError("unbound first-order variable: " + t.name);
    return it->second;
  }
  auto it = a.model->nom_val.find(t.name);
  if (it == a.model->nom_val.end()) throw EvalError("constant without a world: c_" + t.name);
  return it->second;
}

}  // namespace

bool eval_fo(const FOStructure& a, const FOEnv& env, const FOFormulaPtr& f) {
  switch (f->kind) {
    case FOKind::Eq:
      return term_value(a, env, f->terms[0]) == term_value(a, env, f->terms[1]);
    case FOKind::Pred: {
      auto it = a.model->prop_val.find(f->pred);
      int w = term_value(a, env, f->terms[0]);
      return it != a.model->prop_val.end() && it->second.count(w) > 0;
    }
    case FOKind::Rel: {
      auto it = a.model->relations.find(f->pred);
      if (it == a.model->relations.end()) return false;
      std::vector<int> want;
      want.reserve(f->terms.size());
      for (const auto& t : f->terms) want.push_back(term_value(a, env, t));
      for (const auto& tuple : it->second)
        if (tuple == want) return true;
      return false;
    }
    case FOKind::Not:
      return !eval_fo(a, env, f->kids[0]);
    case FOKind::Or:
      return eval_fo(a, env, f->kids[0]) || eval_fo(a, env, f->kids[1]);
    case FOKind::And:
      return eval_fo(a, env, f->kids[0]) && eval_fo(a, env, f->kids[1]);
    case FOKind::Exists:
    case FOKind::Forall: {
      int n = a.model->world_count(f->var_sort);
      FOEnv env2 = env;
      for (int w = 0; w < n; ++w) {
        env2[f->var] = w;
        bool sub = eval_fo(a, env2, f->kids[0]);
        if (f->kind == FOKind::Exists && sub) return true;
        if (f->kind == FOKind::Forall && !sub) return false;
      }
      return f->kind == FOKind::Forall;
    }
  }
  throw EvalError("eval_fo: unreachable");
}

static std::string term_text(const FOTerm& t) {
  return t.kind == TKind::Var ? t.name : "c_" + t.name;
}

std::string export_fo(const FOFormulaPtr& f) {
  switch (f->kind) {
    case FOKind::Eq:
      return "(= " + term_text(f->terms[0]) + " " + term_text(f->terms[1]) + ")";
    case FOKind::Pred:
      return "(pred P_" + f->pred + " " + term_text(f->terms[0]) + ")";
    case FOKind::Rel: {
      std::string out = "(rel R_" + f->pred;
      for (const auto& t : f->terms) out += " " + term_text(t);
      return out + ")";
    }
    case FOKind::Not: return "(not " + export_fo(f->kids[0]) + ")";
    case FOKind::Or:
      return "(or " + export_fo(f->kids[0]) + " " + export_fo(f->kids[1]) + ")";
    case FOKind::And:
      return "(and " + export_fo(f->kids[0]) + " " + export_fo(f->kids[1]) + ")";
    case FOKind::Exists:
      return "(exists (" + f->var + ":" + f->var_sort + ") " + export_fo(f->kids[0]) + ")";
    case FOKind::Forall:
      return "(forall (" + f->var + ":" + f->var_sort + ") " + export_fo(f->kids[0]) + ")";
  }
  throw Error("export_fo: unreachable");
}

namespace {

struct FOParser {
  const Signature& sig;
  const SymbolTable& tab;
  std::string_view text;
  size_t pos = 0;
  std::map<std::string, std::string> scope;  // variable -> sort

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos); }

  void skip() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    skip();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  std::string word() {
    skip();
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')' && text[pos] != ':')
      ++pos;
    if (pos == start) fail("expected a token");
    return std::string(text.substr(start, pos - start));
  }

  FOTerm term() {
    std::string w = word();
    if (w.rfind("c_", 0) == 0) {
      std::string nom = w.substr(2);
      auto info = tab.lookup(nom);
      if (!info || info->kind != SymKind::Nominal) fail("unknown constant " + w);
      return FOTerm{TKind::Const, nom, info->sort};
    }
    auto it = scope.find(w);
    if (it != scope.end()) return FOTerm{TKind::Var, w, it->second};
    if (auto info = tab.lookup(w); info && info->kind == SymKind::StateVar)
      return FOTerm{TKind::Var, w, info->sort};
    fail("variable of unknown sort: " + w);
  }

  FOFormulaPtr formula() {
    expect('(');
    std::string head = word();
    FOFormulaPtr out;
    if (head == "=") {
      FOTerm a = term(), b = term();
      out = fo_eq(std::move(a), std::move(b));
    } else if (head == "pred") {
      std::string p = word();
      if (p.rfind("P_", 0) != 0) fail("predicate names start with P_");
      p = p.substr(2);
      auto info = tab.lookup(p);
      if (!info || info->kind != SymKind::Prop) fail("unknown proposition " + p);
      FOTerm t = term();
      if (t.sort != info->sort) fail("predicate argument sort mismatch");
      out = fo_pred(p, std::move(t));
    } else if (head == "rel") {
      std::string r = word();
      if (r.rfind("R_", 0) != 0) fail("relation names start with R_");
      r = r.substr(2);
      const OperatorDecl* d = sig.find_operator(r);
      if (!d) fail("unknown relation " + r);
      std::vector<FOTerm> ts;
      ts.push_back(term());
      if (ts[0].sort != d->result_sort) fail("relation head sort mismatch");
      for (int i = 0; i < d->arity(); ++i) {
        ts.push_back(term());
        if (ts.back().sort != d->arg_sorts[i]) fail("relation argument sort mismatch");
      }
      out = fo_rel(r, std::move(ts));
    } else if (head == "not") {
      out = fo_not(formula());
    } else if (head == "or" || head == "and") {
      auto a = formula();
      auto b = formula();
      out = head == "or" ? fo_or(std::move(a), std::move(b)) : fo_and(std::move(a), std::move(b));
    } else if (head == "exists" || head == "forall") {
      expect('(');
      std::string v = word();
      expect(':');
      std::string s = word();
      if (!sig.has_sort(s)) fail("unknown sort " + s);
      expect(')');
      auto saved = scope.count(v) ? std::optional<std::string>(scope[v]) : std::nullopt;
      scope[v] = s;
      auto body = formula();
      if (saved)
        scope[v] = *saved;
      else
        scope.erase(v);
      out = head == "exists" ? fo_exists(v, s, std::move(body)) : fo_forall(v, s, std::move(body));
    } else {
      fail("unknown connective: " + head);
    }
    expect(')');
    return out;
  }
};

}  // namespace

FOFormulaPtr parse_fo(const Signature& sig, const SymbolTable& tab, std::string_view text,
                      const std::map<std::string, std::string>& free_sorts) {
  FOParser p{sig, tab, text, 0, free_sorts};
  FOFormulaPtr f = p.formula();
  p.skip();
  if (p.pos != text.size()) throw ParseError("trailing input", p.pos);
  return f;
}

}  // namespace hml
