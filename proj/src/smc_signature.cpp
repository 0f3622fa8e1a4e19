#include "hml/smc.hpp"

namespace hml::smc {

Bundle build_signature() {
  Bundle b;
  Signature& sig = b.sig;
  for (const char* s : {"Nat", "Var", "Bool", "AExp", "BExp", "Stmt", "Val", "ValStack", "Mem",
                        "CtrlStack", "Config"})
    sig.add_sort(s);

  for (uint64_t n = 0; n <= kMaxNumeral; ++n)
    sig.add_operator({std::to_string(n), {}, "Nat"});
  for (const char* v : {"m", "i1", "i2", "i3", "a", "b", "c", "d", "n", "sum", "x", "y", "z"})
    sig.add_operator({v, {}, "Var"});

  sig.add_operator({"true", {}, "Bool"});
  sig.add_operator({"false", {}, "Bool"});

  sig.add_operator({"aexp_nat", {"Nat"}, "AExp"});
  sig.add_operator({"aexp_var", {"Var"}, "AExp"});
  sig.add_operator({"add", {"AExp", "AExp"}, "AExp"});

  sig.add_operator({"leqb", {"AExp", "AExp"}, "BExp"});

  sig.add_operator({"assign", {"Var", "AExp"}, "Stmt"});
  sig.add_operator({"ifelse", {"BExp", "Stmt", "Stmt"}, "Stmt"});
  sig.add_operator({"while", {"BExp", "Stmt"}, "Stmt"});
  sig.add_operator({"skip", {}, "Stmt"});
  sig.add_operator({"seqs", {"Stmt", "Stmt"}, "Stmt"});

  sig.add_operator({"val_nat", {"Nat"}, "Val"});
  sig.add_operator({"val_bool", {"Bool"}, "Val"});

  sig.add_operator({"nil", {}, "ValStack"});
  sig.add_operator({"cons", {"Val", "ValStack"}, "ValStack"});

  sig.add_operator({"empty", {}, "Mem"});
  sig.add_operator({"set", {"Mem", "Var", "Nat"}, "Mem"});
  sig.add_operator({"get", {"Var", "Nat"}, "Mem"});

  sig.add_operator({"caexp", {"AExp"}, "CtrlStack"});
  sig.add_operator({"cbexp", {"BExp"}, "CtrlStack"});
  sig.add_operator({"cstmt", {"Stmt"}, "CtrlStack"});
  sig.add_operator({"asgn", {"Var"}, "CtrlStack"});
  sig.add_operator({"plus", {}, "CtrlStack"});
  sig.add_operator({"leq", {}, "CtrlStack"});
  sig.add_operator({"test", {"Val"}, "CtrlStack"});
  sig.add_operator({"seq", {"CtrlStack", "CtrlStack"}, "CtrlStack"});
  sig.add_operator({"union", {"CtrlStack", "CtrlStack"}, "CtrlStack"});
  sig.add_operator({"star", {"CtrlStack"}, "CtrlStack"});

  sig.add_operator({"config", {"ValStack", "Mem"}, "Config"});
  sig.add_operator({"exec", {"CtrlStack", "Config"}, "Config"});

  b.tab.add(SymKind::Prop, "vs", "ValStack");
  b.tab.add(SymKind::Prop, "mem", "Mem");
  b.tab.add(SymKind::Prop, "cfg", "Config");
  b.tab.add(SymKind::StateVar, "mem'", "Mem");
  return b;
}

FormulaPtr nat_term(const Bundle& b, uint64_t n) {
  if (n > kMaxNumeral)
    throw SchemeError("sideConditionViolation",
                      "numeral " + std::to_string(n) + " exceeds the signature bound");
  return f_app(b.sig, std::to_string(n), {});
}

FormulaPtr var_term(const Bundle& b, const std::string& id) {
  const OperatorDecl* d = b.sig.find_operator(id);
  if (!d || d->result_sort != "Var" || d->arity() != 0)
    throw SchemeError("badBinding", "not a program identifier: " + id);
  return f_app(b.sig, id, {});
}

FormulaPtr val_nat(const Bundle& b, uint64_t n) {
  return f_app(b.sig, "val_nat", {nat_term(b, n)});
}

FormulaPtr val_bool(const Bundle& b, bool v) {
  return f_app(b.sig, "val_bool", {f_app(b.sig, v ? "true" : "false", {})});
}

FormulaPtr boxed(const Bundle& b, FormulaPtr pi, FormulaPtr gamma) {
  return f_box(b.sig, "exec", {f_neg(std::move(pi)), std::move(gamma)});
}

}  // namespace hml::smc
