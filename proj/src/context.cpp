#include "hml/context.hpp"

namespace hml {

ContextPtr c_hole(const std::string& sort) { return std::make_shared<Context>(CKind::Hole, sort); }
ContextPtr c_top(const std::string& sort) { return std::make_shared<Context>(CKind::Top, sort); }

ContextPtr c_op(const Signature& sig, const std::string& op, std::vector<ContextPtr> kids) {
  const OperatorDecl& d = sig.operator_at(op);
  if (d.arity() != static_cast<int>(kids.size()))
    throw Error("context operator " + op + ": expected " + std::to_string(d.arity()) +
                " children, got " + std::to_string(kids.size()));
  for (size_t i = 0; i < kids.size(); ++i)
    if (kids[i]->sort != d.arg_sorts[i])
      throw Error("context operator " + op + ": child " + std::to_string(i + 1) +
                  " has sort " + kids[i]->sort + ", expected " + d.arg_sorts[i]);
  auto c = std::make_shared<Context>(CKind::Op, d.result_sort);
  c->op = op;
  c->kids = std::move(kids);
  return c;
}

int hole_count(const ContextPtr& c) {
  if (c->kind == CKind::Hole) return 1;
  int n = 0;
  for (const auto& k : c->kids) n += hole_count(k);
  return n;
}

bool in_nomc(const ContextPtr& c) { return hole_count(c) == 1; }

static const Context* find_hole(const ContextPtr& c) {
  if (c->kind == CKind::Hole) return c.get();
  for (const auto& k : c->kids)
    if (const Context* h = find_hole(k)) return h;
  return nullptr;
}

std::string hole_sort(const ContextPtr& c) {
  const Context* h = find_hole(c);
  if (!h || !in_nomc(c)) throw Error("context is not in NomC");
  return h->sort;
}

bool context_equal(const ContextPtr& a, const ContextPtr& b) {
  if (a->kind != b->kind || a->sort != b->sort || a->op != b->op ||
      a->kids.size() != b->kids.size())
    return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!context_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

static FormulaPtr plug(const Signature& sig, const SymbolTable& tab, const ContextPtr& c,
                       const FormulaPtr& f) {
  switch (c->kind) {
    case CKind::Hole: return f;
    case CKind::Top: return f_top(tab, c->sort);
    case CKind::Op: {
      std::vector<FormulaPtr> args;
      args.reserve(c->kids.size());
      for (const auto& k : c->kids) args.push_back(plug(sig, tab, k, f));
      return f_app(sig, c->op, std::move(args));
    }
  }
  throw Error("apply_context: unreachable");
}

FormulaPtr apply_context(const Signature& sig, const SymbolTable& tab, const ContextPtr& eta,
                         const FormulaPtr& f) {
  if (!in_nomc(eta))
    throw Error("apply_context: context has " + std::to_string(hole_count(eta)) +
                " holes, need exactly 1");
  if (hole_sort(eta) != f->sort)
    throw Error("apply_context: hole sort " + hole_sort(eta) + " vs formula sort " + f->sort);
  return plug(sig, tab, eta, f);
}

FormulaPtr apply_context_dual(const Signature& sig, const SymbolTable& tab, const ContextPtr& eta,
                              const FormulaPtr& f) {
  return f_neg(apply_context(sig, tab, eta, f_neg(f)));
}

}  // namespace hml
