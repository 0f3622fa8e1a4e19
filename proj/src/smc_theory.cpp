#include "hml/smc.hpp"

namespace hml::smc {

namespace {

// Slot readers with the documented coercions.
FormulaPtr slot_formula(const Bundle& b, const std::map<std::string, Binding>& p,
                        const std::string& key, const char* fallback_atom = nullptr) {
  auto it = p.find(key);
  if (it == p.end()) {
    if (fallback_atom) {
      auto info = b.tab.lookup(fallback_atom);
      return f_prop(fallback_atom, info->sort);
    }
    throw SchemeError("missingBinding", "no binding for " + key);
  }
  if (const auto* f = std::get_if<FormulaPtr>(&it->second)) return *f;
  throw SchemeError("badBinding", key + " must be a formula");
}

uint64_t slot_nat(const std::map<std::string, Binding>& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw SchemeError("missingBinding", "no binding for " + key);
  if (const auto* i = std::get_if<int>(&it->second)) {
    if (*i < 0) throw SchemeError("badBinding", key + " must be a natural number");
    return static_cast<uint64_t>(*i);
  }
  throw SchemeError("badBinding", key + " must be a natural number");
}

std::optional<uint64_t> slot_nat_opt(const std::map<std::string, Binding>& p,
                                     const std::string& key) {
  if (!p.count(key)) return std::nullopt;
  return slot_nat(p, key);
}

std::string slot_var(const Bundle& b, const std::map<std::string, Binding>& p,
                     const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw SchemeError("missingBinding", "no binding for " + key);
  if (const auto* s = std::get_if<std::string>(&it->second)) {
    var_term(b, *s);  // validates
    return *s;
  }
  throw SchemeError("badBinding", key + " must be a program identifier");
}

// Val slots accept a formula, an integer (a natural value), or the names
// true/false.
FormulaPtr slot_val(const Bundle& b, const std::map<std::string, Binding>& p,
                    const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw SchemeError("missingBinding", "no binding for " + key);
  if (const auto* f = std::get_if<FormulaPtr>(&it->second)) return *f;
  if (const auto* i = std::get_if<int>(&it->second)) return val_nat(b, static_cast<uint64_t>(*i));
  if (const auto* s = std::get_if<std::string>(&it->second)) {
    if (*s == "true" || *s == "false") return val_bool(b, *s == "true");
  }
  throw SchemeError("badBinding", key + " must be a value");
}

struct Ops {
  const Bundle& b;

  FormulaPtr app(const std::string& op, std::vector<FormulaPtr> args) const {
    return f_app(b.sig, op, std::move(args));
  }
  FormulaPtr config(FormulaPtr s, FormulaPtr m) const {
    return app("config", {std::move(s), std::move(m)});
  }
  FormulaPtr cons(FormulaPtr v, FormulaPtr rest) const {
    return app("cons", {std::move(v), std::move(rest)});
  }
  FormulaPtr set(FormulaPtr m, const std::string& x, uint64_t n) const {
    return app("set", {std::move(m), var_term(b, x), nat_term(b, n)});
  }
  FormulaPtr get(const std::string& x, uint64_t n) const {
    return app("get", {var_term(b, x), nat_term(b, n)});
  }
  FormulaPtr seq(FormulaPtr a, FormulaPtr c) const {
    return app("seq", {std::move(a), std::move(c)});
  }
  FormulaPtr cstmt(FormulaPtr s) const { return app("cstmt", {std::move(s)}); }
  FormulaPtr caexp(FormulaPtr a) const { return app("caexp", {std::move(a)}); }
  FormulaPtr cbexp(FormulaPtr c) const { return app("cbexp", {std::move(c)}); }
  FormulaPtr test(FormulaPtr v) const { return app("test", {std::move(v)}); }
  FormulaPtr box(FormulaPtr pi, FormulaPtr g) const {
    return boxed(b, std::move(pi), std::move(g));
  }
};

// Two ground Val terms are distinct values when both decode and differ.
void require_distinct_values(const Bundle& b, const FormulaPtr& v1, const FormulaPtr& v2) {
  Value a = value_of_term(b, v1);
  Value c = value_of_term(b, v2);
  if (a == c)
    throw SchemeError("sideConditionViolation", "the two test values must be distinct");
}

}  // namespace

FormulaPtr axiom_instance(const Bundle& b, const std::string& name,
                          const std::map<std::string, Binding>& params) {
  Ops o{b};
  auto vs = [&] { return slot_formula(b, params, "vs", "vs"); };
  auto mem = [&] { return slot_formula(b, params, "mem", "mem"); };
  auto gamma = [&] { return slot_formula(b, params, "gamma", "cfg"); };

  if (name == "A_UNION") {
    FormulaPtr pi = slot_formula(b, params, "pi");
    FormulaPtr pi2 = slot_formula(b, params, "pi2");
    FormulaPtr g = gamma();
    return f_iff(o.box(o.app("union", {pi, pi2}), g), f_and(o.box(pi, g), o.box(pi2, g)));
  }
  if (name == "A_SEQ") {
    FormulaPtr pi = slot_formula(b, params, "pi");
    FormulaPtr pi2 = slot_formula(b, params, "pi2");
    FormulaPtr g = gamma();
    return f_iff(o.box(o.seq(pi, pi2), g), o.box(pi, o.box(pi2, g)));
  }
  if (name == "A_STAR") {
    FormulaPtr pi = slot_formula(b, params, "pi");
    FormulaPtr g = gamma();
    FormulaPtr star = o.app("star", {pi});
    return f_iff(o.box(star, g), f_and(g, o.box(pi, o.box(star, g))));
  }
  if (name == "A_TEST") {
    FormulaPtr v = slot_val(b, params, "v");
    return f_impl(o.config(o.cons(v, vs()), mem()), o.box(o.test(v), o.config(vs(), mem())));
  }
  if (name == "A_NEG_TEST") {
    FormulaPtr v = slot_val(b, params, "v");
    FormulaPtr v2 = slot_val(b, params, "v2");
    require_distinct_values(b, v, v2);
    return f_impl(o.config(o.cons(v, vs()), mem()), o.box(o.test(v2), gamma()));
  }
  if (name == "CSTMT") {
    FormulaPtr s1 = slot_formula(b, params, "s1");
    FormulaPtr s2 = slot_formula(b, params, "s2");
    return f_iff(o.cstmt(o.app("seqs", {s1, s2})), o.seq(o.cstmt(s1), o.cstmt(s2)));
  }
  if (name == "AMEM0") {
    std::string x = slot_var(b, params, "x");
    return f_impl(o.app("empty", {}), o.get(x, 0));
  }
  if (name == "AMEM1") {
    std::string x = slot_var(b, params, "x");
    uint64_t n = slot_nat(params, "n");
    return f_impl(o.set(mem(), x, n), o.get(x, n));
  }
  if (name == "AMEM2") {
    std::string x = slot_var(b, params, "x");
    std::string y = slot_var(b, params, "y");
    if (x == y)
      throw SchemeError("sideConditionViolation", "AMEM2 needs distinct identifiers");
    uint64_t n = slot_nat(params, "n");
    uint64_t m2 = slot_nat(params, "m");
    return f_iff(o.set(o.set(mem(), x, n), y, m2), o.set(o.set(mem(), y, m2), x, n));
  }
  if (name == "AMEM3") {
    std::string x = slot_var(b, params, "x");
    uint64_t n = slot_nat(params, "n");
    uint64_t m2 = slot_nat(params, "m");
    return f_impl(o.set(o.set(mem(), x, n), x, m2), o.set(mem(), x, m2));
  }
  if (name == "AINT") {
    uint64_t n = slot_nat(params, "n");
    return f_impl(o.config(vs(), mem()),
                  o.box(o.caexp(o.app("aexp_nat", {nat_term(b, n)})),
                        o.config(o.cons(val_nat(b, n), vs()), mem())));
  }
  if (name == "AID") {
    std::string x = slot_var(b, params, "x");
    uint64_t n = slot_nat(params, "n");
    FormulaPtr m = o.set(mem(), x, n);
    return f_impl(o.config(vs(), m),
                  o.box(o.caexp(o.app("aexp_var", {var_term(b, x)})),
                        o.config(o.cons(val_nat(b, n), vs()), m)));
  }
  if (name == "DPLUS") {
    FormulaPtr a1 = slot_formula(b, params, "a1");
    FormulaPtr a2 = slot_formula(b, params, "a2");
    return f_iff(o.caexp(o.app("add", {a1, a2})),
                 o.seq(o.caexp(a1), o.seq(o.caexp(a2), o.app("plus", {}))));
  }
  if (name == "APLUS") {
    uint64_t n1 = slot_nat(params, "n1");
    uint64_t n2 = slot_nat(params, "n2");
    uint64_t n = n1 + n2;
    if (auto given = slot_nat_opt(params, "n"); given && *given != n)
      throw SchemeError("sideConditionViolation",
                        "APLUS result must be " + std::to_string(n));
    return f_impl(o.config(o.cons(val_nat(b, n2), o.cons(val_nat(b, n1), vs())), mem()),
                  o.box(o.app("plus", {}), o.config(o.cons(val_nat(b, n), vs()), mem())));
  }
  if (name == "DLEQ") {
    FormulaPtr a1 = slot_formula(b, params, "a1");
    FormulaPtr a2 = slot_formula(b, params, "a2");
    // the right operand is evaluated first
    return f_iff(o.cbexp(o.app("leqb", {a1, a2})),
                 o.seq(o.caexp(a2), o.seq(o.caexp(a1), o.app("leq", {}))));
  }
  if (name == "ALEQ") {
    uint64_t n1 = slot_nat(params, "n1");
    uint64_t n2 = slot_nat(params, "n2");
    bool t = n1 <= n2;
    if (auto it = params.find("t"); it != params.end()) {
      const auto* s = std::get_if<std::string>(&it->second);
      if (!s || ((*s == "true") != t))
        throw SchemeError("sideConditionViolation",
                          std::string("ALEQ truth value must be ") + (t ? "true" : "false"));
    }
    return f_impl(o.config(o.cons(val_nat(b, n1), o.cons(val_nat(b, n2), vs())), mem()),
                  o.box(o.app("leq", {}), o.config(o.cons(val_bool(b, t), vs()), mem())));
  }
  if (name == "ASKIP") {
    FormulaPtr g = gamma();
    return f_impl(g, o.box(o.cstmt(o.app("skip", {})), g));
  }
  if (name == "DASGN") {
    std::string x = slot_var(b, params, "x");
    FormulaPtr a = slot_formula(b, params, "a");
    return f_iff(o.cstmt(o.app("assign", {var_term(b, x), a})),
                 o.seq(o.caexp(a), o.app("asgn", {var_term(b, x)})));
  }
  if (name == "AASGN") {
    std::string x = slot_var(b, params, "x");
    uint64_t n = slot_nat(params, "n");
    return f_impl(o.config(o.cons(val_nat(b, n), vs()), mem()),
                  o.box(o.app("asgn", {var_term(b, x)}),
                        o.config(vs(), o.set(mem(), x, n))));
  }
  if (name == "DIF") {
    FormulaPtr bb = slot_formula(b, params, "b");
    FormulaPtr s1 = slot_formula(b, params, "s1");
    FormulaPtr s2 = slot_formula(b, params, "s2");
    FormulaPtr branches = o.app(
        "union", {o.seq(o.test(val_bool(b, true)), o.cstmt(s1)),
                  o.seq(o.test(val_bool(b, false)), o.cstmt(s2))});
    return f_iff(o.cstmt(o.app("ifelse", {bb, s1, s2})), o.seq(o.cbexp(bb), branches));
  }
  if (name == "DWHILE") {
    FormulaPtr bb = slot_formula(b, params, "b");
    FormulaPtr s = slot_formula(b, params, "s");
    FormulaPtr body = o.seq(o.test(val_bool(b, true)), o.seq(o.cstmt(s), o.cbexp(bb)));
    return f_iff(o.cstmt(o.app("while", {bb, s})),
                 o.seq(o.cbexp(bb),
                       o.seq(o.app("star", {body}), o.test(val_bool(b, false)))));
  }
  if (name == "NOCONFUSION") {
    FormulaPtr phi1 = slot_formula(b, params, "phi1");
    FormulaPtr psi1 = slot_formula(b, params, "psi1");
    FormulaPtr phi2 = slot_formula(b, params, "phi2");
    FormulaPtr psi2 = slot_formula(b, params, "psi2");
    return f_impl(f_and(o.config(phi1, psi1), o.config(phi2, psi2)),
                  o.config(f_and(phi1, phi2), f_and(psi1, psi2)));
  }
  throw SchemeError("badBinding", "unknown theory axiom: " + name);
}

Theory theory(const Bundle& b) {
  Theory th;
  th.name = "smc";
  for (const char* name :
       {"A_UNION", "A_SEQ", "A_STAR", "A_TEST", "A_NEG_TEST", "CSTMT", "AMEM0", "AMEM1",
        "AMEM2", "AMEM3", "AINT", "AID", "DPLUS", "APLUS", "DLEQ", "ALEQ", "ASKIP", "DASGN",
        "AASGN", "DIF", "DWHILE", "NOCONFUSION"}) {
    std::string n = name;
    th.generators[n] = [&b, n](const Signature&, const SymbolTable&,
                               const std::map<std::string, Binding>& params) {
      return axiom_instance(b, n, params);
    };
  }
  return th;
}

}  // namespace hml::smc
