#include "hml/proof_builder.hpp"

namespace hml {

ProofBuilder::ProofBuilder(const Signature& sig, const SymbolTable& tab, SystemId system,
                           const Theory* theory)
    : sig_(sig), tab_(tab), system_(system), theory_(theory) {}

int ProofBuilder::push(ProofLine ln) {
  ln.index = static_cast<int>(lines_.size()) + 1;
  ln.sort = ln.formula->sort;
  lines_.push_back(std::move(ln));
  Verdict v = check_proof(sig_, tab_, system_, theory_, hyps_, lines_);
  if (!v.ok)
    throw Error("proof builder emitted a bad line " + std::to_string(v.line) + ": " +
                fail_reason_name(v.reason) + " " + v.detail);
  return static_cast<int>(lines_.size());
}

int ProofBuilder::hyp(const std::string& name, FormulaPtr f) {
  hyps_.emplace_back(name, f);
  ProofLine ln;
  ln.formula = std::move(f);
  ln.just.kind = Justification::Hypothesis;
  ln.just.name = name;
  return push(std::move(ln));
}

int ProofBuilder::taut(FormulaPtr f) {
  ProofLine ln;
  ln.formula = std::move(f);
  ln.just.kind = Justification::Axiom;
  ln.just.scheme.scheme = SchemeId::TAUT;
  return push(std::move(ln));
}

int ProofBuilder::axiom(SchemeInstance inst) {
  ProofLine ln;
  ln.formula = instantiate_scheme(sig_, tab_, inst);
  ln.just.kind = Justification::Axiom;
  ln.just.scheme = std::move(inst);
  return push(std::move(ln));
}

int ProofBuilder::theory_axiom(const std::string& name, std::map<std::string, Binding> params) {
  if (!theory_) throw Error("proof builder has no theory");
  ProofLine ln;
  ln.formula = theory_->generators.at(name)(sig_, tab_, params);
  ln.just.kind = Justification::TheoryAxiom;
  ln.just.name = name;
  ln.just.params = std::move(params);
  return push(std::move(ln));
}

int ProofBuilder::mp(int i, int j) {
  FormulaPtr a, b;
  if (!match_impl(formula(j), &a, &b) || !equal(a, formula(i)))
    throw Error("mp: lines do not compose");
  ProofLine ln;
  ln.formula = b;
  ln.just.kind = Justification::MP;
  ln.just.i = i;
  ln.just.j = j;
  return push(std::move(ln));
}

int ProofBuilder::ug(const std::string& op, int pos, int i, std::vector<FormulaPtr> sides) {
  const OperatorDecl& d = sig_.operator_at(op);
  std::vector<FormulaPtr> args;
  size_t side = 0;
  for (int k = 1; k <= d.arity(); ++k)
    args.push_back(k == pos ? formula(i) : sides.at(side++));
  ProofLine ln;
  ln.formula = f_box(sig_, op, std::move(args));
  ln.just.kind = Justification::UG;
  ln.just.op = op;
  ln.just.pos = pos;
  ln.just.i = i;
  ln.just.sides = std::move(sides);
  return push(std::move(ln));
}

int ProofBuilder::gen(const StateSymbol& x, int i) {
  ProofLine ln;
  ln.formula = f_forall(x, formula(i));
  ln.just.kind = Justification::GEN;
  ln.just.sym = x;
  ln.just.i = i;
  return push(std::move(ln));
}

int ProofBuilder::genat(const StateSymbol& z, const std::string& result_sort, int i) {
  ProofLine ln;
  ln.formula = f_at(z, formula(i), result_sort);
  ln.just.kind = Justification::GEN_AT;
  ln.just.sym = z;
  ln.just.i = i;
  return push(std::move(ln));
}

int ProofBuilder::derive(FormulaPtr goal, const std::vector<int>& premises) {
  FormulaPtr chain = goal;
  for (auto it = premises.rbegin(); it != premises.rend(); ++it)
    chain = f_impl(formula(*it), chain);
  TautologyResult tr = is_tautology(chain);
  if (!tr.is_tautology)
    throw Error("derive: the discharge chain is not a tautology (" + std::to_string(tr.atoms) +
                " letters" + (tr.too_many_atoms ? ", too many" : "") + ")");
  int line = taut(chain);
  for (int p : premises) line = mp(p, line);
  return line;
}

int ProofBuilder::trans(int ab, int bc) {
  FormulaPtr a, b, b2, c;
  if (!match_impl(formula(ab), &a, &b) || !match_impl(formula(bc), &b2, &c) || !equal(b, b2))
    throw Error("trans: lines do not chain");
  return derive(f_impl(a, c), {ab, bc});
}

int ProofBuilder::box_mono(const std::string& op, int pos,
                           const std::vector<FormulaPtr>& box_sides, int i) {
  FormulaPtr a, b;
  if (!match_impl(formula(i), &a, &b)) throw Error("box_mono: premise is not an implication");
  int u = ug(op, pos, i, box_sides);
  SchemeInstance k;
  k.scheme = SchemeId::K_SIGMA_AX;
  k.bind["op"] = op;
  k.bind["pos"] = pos;
  k.bind["phi"] = a;
  k.bind["chi"] = b;
  {
    size_t side = 0;
    const OperatorDecl& d = sig_.operator_at(op);
    for (int kk = 1; kk <= d.arity(); ++kk)
      if (kk != pos) k.bind["side" + std::to_string(kk)] = box_sides.at(side++);
  }
  int kline = axiom(std::move(k));
  return mp(u, kline);
}

int ProofBuilder::dia_mono(const std::string& op, int pos,
                           const std::vector<FormulaPtr>& dia_sides, int i) {
  FormulaPtr a, b;
  if (!match_impl(formula(i), &a, &b)) throw Error("dia_mono: premise is not an implication");
  const OperatorDecl& d = sig_.operator_at(op);

  std::vector<FormulaPtr> neg_sides;
  for (const auto& s : dia_sides) neg_sides.push_back(f_neg(s));

  int contra = derive(f_impl(f_neg(b), f_neg(a)), {i});
  int boxed = box_mono(op, pos, neg_sides, contra);  // box(.., not b -> not a ..) route

  auto dual_inst = [&](const FormulaPtr& piv) {
    SchemeInstance inst;
    inst.scheme = SchemeId::DUAL;
    inst.bind["op"] = op;
    size_t side = 0;
    for (int k = 1; k <= d.arity(); ++k)
      inst.bind["arg" + std::to_string(k)] =
          (k == pos) ? piv : dia_sides.at(side++);
    return inst;
  };
  int da = axiom(dual_inst(a));
  int db = axiom(dual_inst(b));

  auto dia = [&](const FormulaPtr& piv) {
    std::vector<FormulaPtr> args;
    size_t side = 0;
    for (int k = 1; k <= d.arity(); ++k) args.push_back(k == pos ? piv : dia_sides.at(side++));
    return f_app(sig_, op, std::move(args));
  };
  return derive(f_impl(dia(a), dia(b)), {boxed, da, db});
}

int ProofBuilder::at_mono(const StateSymbol& z, const std::string& result_sort, int i) {
  FormulaPtr a, b;
  if (!match_impl(formula(i), &a, &b)) throw Error("at_mono: premise is not an implication");
  int g = genat(z, result_sort, i);
  SchemeInstance k;
  k.scheme = SchemeId::K_AT;
  k.bind["z"] = z;
  k.bind["s"] = result_sort;
  k.bind["phi"] = a;
  k.bind["psi"] = b;
  int kline = axiom(std::move(k));
  return mp(g, kline);
}

int ProofBuilder::at_iff_dist(const StateSymbol& z, const std::string& s, FormulaPtr a,
                              FormulaPtr b) {
  auto at = [&](const FormulaPtr& f) { return f_at(z, f, s); };
  FormulaPtr iff = f_iff(a, b);
  FormulaPtr ab = f_impl(a, b), ba = f_impl(b, a);

  // forward: @(a<->b) -> (@a <-> @b)
  int f1 = taut(f_impl(iff, ab));
  int m1 = at_mono(z, s, f1);  // @(a<->b) -> @(a->b)
  SchemeInstance kab;
  kab.scheme = SchemeId::K_AT;
  kab.bind["z"] = z;
  kab.bind["s"] = s;
  kab.bind["phi"] = a;
  kab.bind["psi"] = b;
  int k1 = axiom(kab);  // @(a->b) -> (@a -> @b)
  int d1 = derive(f_impl(at(iff), f_impl(at(a), at(b))), {m1, k1});

  int f2 = taut(f_impl(iff, ba));
  int m2 = at_mono(z, s, f2);
  SchemeInstance kba;
  kba.scheme = SchemeId::K_AT;
  kba.bind["z"] = z;
  kba.bind["s"] = s;
  kba.bind["phi"] = b;
  kba.bind["psi"] = a;
  int k2 = axiom(kba);
  int d2 = derive(f_impl(at(iff), f_impl(at(b), at(a))), {m2, k2});
  int fwd = derive(f_impl(at(iff), f_iff(at(a), at(b))), {d1, d2});

  // (@a -> @b) -> @(a -> b), via self-duality of @
  auto impl_back = [&](const FormulaPtr& x, const FormulaPtr& y) {
    FormulaPtr xy = f_impl(x, y);
    int t1 = taut(f_impl(f_neg(xy), x));
    int e1 = at_mono(z, s, t1);  // @not(x->y) -> @x
    int t2 = taut(f_impl(f_neg(xy), f_neg(y)));
    int e2 = at_mono(z, s, t2);  // @not(x->y) -> @not y
    SchemeInstance sd1;
    sd1.scheme = SchemeId::SELFDUAL;
    sd1.bind["z"] = z;
    sd1.bind["s"] = s;
    sd1.bind["phi"] = xy;
    int s1 = axiom(sd1);  // @(x->y) <-> not @ not (x->y)
    SchemeInstance sd2;
    sd2.scheme = SchemeId::SELFDUAL;
    sd2.bind["z"] = z;
    sd2.bind["s"] = s;
    sd2.bind["phi"] = y;
    int s2 = axiom(sd2);  // @y <-> not @ not y
    return derive(f_impl(f_impl(at(x), at(y)), at(xy)), {e1, e2, s1, s2});
  };
  int bab = impl_back(a, b);
  int bba = impl_back(b, a);

  // @(a->b) -> (@(b->a) -> @(a<->b)), the conjunction step inside @
  int cj = taut(f_impl(ab, f_impl(ba, iff)));
  int cm = at_mono(z, s, cj);  // @(a->b) -> @((b->a) -> (a<->b))
  SchemeInstance kc;
  kc.scheme = SchemeId::K_AT;
  kc.bind["z"] = z;
  kc.bind["s"] = s;
  kc.bind["phi"] = ba;
  kc.bind["psi"] = iff;
  int kcl = axiom(kc);
  int conj = derive(f_impl(at(ab), f_impl(at(ba), at(iff))), {cm, kcl});

  int bwd = derive(f_impl(f_iff(at(a), at(b)), at(iff)), {bab, bba, conj});
  return derive(f_iff(at(iff), f_iff(at(a), at(b))), {fwd, bwd});
}

int ProofBuilder::dia_or_split(const std::string& op, int pos,
                               const std::vector<FormulaPtr>& dia_sides, FormulaPtr x,
                               FormulaPtr y) {
  const OperatorDecl& d = sig_.operator_at(op);
  std::vector<FormulaPtr> neg_sides;
  for (const auto& s : dia_sides) neg_sides.push_back(f_neg(s));
  FormulaPtr nx = f_neg(x), ny = f_neg(y), nxy = f_and(nx, ny);
  FormulaPtr or_ = f_or(x, y);

  auto boxed = [&](const FormulaPtr& piv) {
    std::vector<FormulaPtr> args;
    size_t side = 0;
    for (int k = 1; k <= d.arity(); ++k) args.push_back(k == pos ? piv : neg_sides.at(side++));
    return f_box(sig_, op, std::move(args));
  };
  auto dia = [&](const FormulaPtr& piv) {
    std::vector<FormulaPtr> args;
    size_t side = 0;
    for (int k = 1; k <= d.arity(); ++k) args.push_back(k == pos ? piv : dia_sides.at(side++));
    return f_app(sig_, op, std::move(args));
  };

  // box(not x) -> (box(not y) -> box(not x and not y))
  int t1 = taut(f_impl(nx, f_impl(ny, nxy)));
  int bm1 = box_mono(op, pos, neg_sides, t1);
  SchemeInstance k;
  k.scheme = SchemeId::K_SIGMA_AX;
  k.bind["op"] = op;
  k.bind["pos"] = pos;
  k.bind["phi"] = ny;
  k.bind["chi"] = nxy;
  {
    size_t side = 0;
    for (int kk = 1; kk <= d.arity(); ++kk)
      if (kk != pos) k.bind["side" + std::to_string(kk)] = neg_sides.at(side++);
  }
  int kl = axiom(std::move(k));
  int dchain = derive(f_impl(boxed(nx), f_impl(boxed(ny), boxed(nxy))), {bm1, kl});

  int t2 = taut(f_impl(nxy, f_neg(or_)));
  int bm2 = box_mono(op, pos, neg_sides, t2);  // box(nx and ny) -> box(not (x or y))

  auto dual_inst = [&](const FormulaPtr& piv) {
    SchemeInstance inst;
    inst.scheme = SchemeId::DUAL;
    inst.bind["op"] = op;
    size_t side = 0;
    for (int kk = 1; kk <= d.arity(); ++kk)
      inst.bind["arg" + std::to_string(kk)] = (kk == pos) ? piv : dia_sides.at(side++);
    return inst;
  };
  int dx = axiom(dual_inst(x));
  int dy = axiom(dual_inst(y));
  int dor = axiom(dual_inst(or_));

  return derive(f_impl(dia(or_), f_or(dia(x), dia(y))), {dchain, bm2, dx, dy, dor});
}

}  // namespace hml
