#include <deque>

#include "hml/smc.hpp"

namespace hml::smc {

namespace {

bool is_app(const FormulaPtr& f, const char* op) {
  return f->kind == FKind::App && f->name == op;
}

uint64_t nat_of(const Bundle& b, const FormulaPtr& t) {
  if (t->kind != FKind::App || !t->kids.empty())
    throw Error("not a numeral: " + (t->kind == FKind::App ? t->name : std::string("?")));
  const OperatorDecl& d = b.sig.operator_at(t->name);
  if (d.result_sort != "Nat") throw Error("not a numeral: " + t->name);
  return std::stoull(t->name);
}

std::string ident_of(const FormulaPtr& t) {
  if (t->kind != FKind::App || !t->kids.empty()) throw Error("not an identifier term");
  return t->name;
}

}  // namespace

Value value_of_term(const Bundle& b, const FormulaPtr& t) {
  if (is_app(t, "val_nat")) return Value::of_nat(nat_of(b, t->kids[0]));
  if (is_app(t, "val_bool")) {
    if (is_app(t->kids[0], "true")) return Value::of_bool(true);
    if (is_app(t->kids[0], "false")) return Value::of_bool(false);
  }
  throw Error("not a ground value term");
}

namespace {

struct Machine {
  const Bundle& b;
  ConcreteConfig cfg;
  std::deque<FormulaPtr> control;  // front is the next item

  std::optional<Value> top() const {
    if (cfg.stack.empty()) return std::nullopt;
    return cfg.stack.back();
  }

  Value pop(const char* who) {
    if (cfg.stack.empty()) throw Error(std::string(who) + ": value stack underflow");
    Value v = cfg.stack.back();
    cfg.stack.pop_back();
    return v;
  }

  uint64_t pop_nat(const char* who) {
    Value v = pop(who);
    if (v.is_bool) throw Error(std::string(who) + ": expected a number on the stack");
    return v.nat;
  }

  // The leading test of a control term, when its first step is a test.
  std::optional<Value> leading_test(const FormulaPtr& c) const {
    if (is_app(c, "test")) return value_of_term(b, c->kids[0]);
    if (is_app(c, "seq")) return leading_test(c->kids[0]);
    return std::nullopt;
  }

  // One small step; returns the failure detail if the machine is stuck.
  std::optional<std::string> step() {
    FormulaPtr h = control.front();
    control.pop_front();

    if (is_app(h, "seq")) {
      control.push_front(h->kids[1]);
      control.push_front(h->kids[0]);
      return std::nullopt;
    }
    if (is_app(h, "caexp")) {
      const FormulaPtr& a = h->kids[0];
      if (is_app(a, "aexp_nat")) {
        cfg.stack.push_back(Value::of_nat(nat_of(b, a->kids[0])));
        return std::nullopt;
      }
      if (is_app(a, "aexp_var")) {
        std::string x = ident_of(a->kids[0]);
        auto it = cfg.memory.find(x);  // uninitialized identifiers read as 0
        cfg.stack.push_back(Value::of_nat(it == cfg.memory.end() ? 0 : it->second));
        return std::nullopt;
      }
      if (is_app(a, "add")) {
        control.push_front(f_app(b.sig, "plus", {}));
        control.push_front(f_app(b.sig, "caexp", {a->kids[1]}));
        control.push_front(f_app(b.sig, "caexp", {a->kids[0]}));
        return std::nullopt;
      }
      return "caexp: not a ground arithmetic expression";
    }
    if (is_app(h, "cbexp")) {
      const FormulaPtr& c = h->kids[0];
      if (is_app(c, "leqb")) {
        // the right operand is evaluated first
        control.push_front(f_app(b.sig, "leq", {}));
        control.push_front(f_app(b.sig, "caexp", {c->kids[0]}));
        control.push_front(f_app(b.sig, "caexp", {c->kids[1]}));
        return std::nullopt;
      }
      return "cbexp: not a ground boolean expression";
    }
    if (is_app(h, "cstmt")) {
      const FormulaPtr& s = h->kids[0];
      if (is_app(s, "skip")) return std::nullopt;
      if (is_app(s, "assign")) {
        control.push_front(f_app(b.sig, "asgn", {s->kids[0]}));
        control.push_front(f_app(b.sig, "caexp", {s->kids[1]}));
        return std::nullopt;
      }
      if (is_app(s, "seqs")) {
        control.push_front(f_app(b.sig, "cstmt", {s->kids[1]}));
        control.push_front(f_app(b.sig, "cstmt", {s->kids[0]}));
        return std::nullopt;
      }
      if (is_app(s, "ifelse")) {
        FormulaPtr yes = f_app(b.sig, "seq", {f_app(b.sig, "test", {val_bool(b, true)}),
                                              f_app(b.sig, "cstmt", {s->kids[1]})});
        FormulaPtr no = f_app(b.sig, "seq", {f_app(b.sig, "test", {val_bool(b, false)}),
                                             f_app(b.sig, "cstmt", {s->kids[2]})});
        control.push_front(f_app(b.sig, "union", {yes, no}));
        control.push_front(f_app(b.sig, "cbexp", {s->kids[0]}));
        return std::nullopt;
      }
      if (is_app(s, "while")) {
        FormulaPtr body = f_app(
            b.sig, "seq",
            {f_app(b.sig, "test", {val_bool(b, true)}),
             f_app(b.sig, "seq",
                   {f_app(b.sig, "cstmt", {s->kids[1]}), f_app(b.sig, "cbexp", {s->kids[0]})})});
        control.push_front(f_app(b.sig, "test", {val_bool(b, false)}));
        control.push_front(f_app(b.sig, "star", {body}));
        control.push_front(f_app(b.sig, "cbexp", {s->kids[0]}));
        return std::nullopt;
      }
      return "cstmt: not a ground statement";
    }
    if (is_app(h, "plus")) {
      uint64_t n2 = pop_nat("plus");
      uint64_t n1 = pop_nat("plus");
      cfg.stack.push_back(Value::of_nat(n1 + n2));
      return std::nullopt;
    }
    if (is_app(h, "leq")) {
      uint64_t n1 = pop_nat("leq");
      uint64_t n2 = pop_nat("leq");
      cfg.stack.push_back(Value::of_bool(n1 <= n2));
      return std::nullopt;
    }
    if (is_app(h, "asgn")) {
      uint64_t n = pop_nat("asgn");
      cfg.memory[ident_of(h->kids[0])] = n;
      return std::nullopt;
    }
    if (is_app(h, "test")) {
      Value want = value_of_term(b, h->kids[0]);
      Value got = pop("test");
      if (got == want) return std::nullopt;
      return "test: top of stack does not match";
    }
    if (is_app(h, "union")) {
      auto t = top();
      if (!t) return "union: empty value stack";
      auto l = leading_test(h->kids[0]);
      auto r = leading_test(h->kids[1]);
      if (l && *l == *t) {
        control.push_front(h->kids[0]);
        return std::nullopt;
      }
      if (r && *r == *t) {
        control.push_front(h->kids[1]);
        return std::nullopt;
      }
      return "union: no branch is enabled";
    }
    if (is_app(h, "star")) {
      auto t = top();
      auto l = leading_test(h->kids[0]);
      if (!l) return "star: body has no leading test";
      if (t && *l == *t) {
        control.push_front(h);            // unroll once more afterwards
        control.push_front(h->kids[0]);
      }
      return std::nullopt;                // otherwise drop the loop
    }
    return "no rule applies to " + (h->kind == FKind::App ? h->name : std::string("?"));
  }
};

}  // namespace

RunResult run(const Bundle& b, ConcreteConfig init, const FormulaPtr& ctrl, int fuel) {
  Machine m{b, std::move(init), {ctrl}};
  RunResult out;
  while (!m.control.empty()) {
    if (out.steps >= fuel) {
      out.status = RunStatus::OutOfFuel;
      out.config = std::move(m.cfg);
      return out;
    }
    ++out.steps;
    if (auto stuck = m.step()) {
      out.status = RunStatus::Stuck;
      out.detail = *stuck;
      out.config = std::move(m.cfg);
      return out;
    }
  }
  out.status = RunStatus::Done;
  out.config = std::move(m.cfg);
  return out;
}

namespace {

ConcreteConfig random_config(Rng& rng) {
  ConcreteConfig c;
  int depth = rng.below_int(4);
  for (int i = 0; i < depth; ++i) {
    if (rng.coin())
      c.stack.push_back(Value::of_nat(rng.below(50)));
    else
      c.stack.push_back(Value::of_bool(rng.coin()));
  }
  const char* ids[] = {"m", "i1", "i2", "a", "b"};
  for (const char* id : ids)
    if (rng.coin()) c.memory[id] = rng.below(50);
  return c;
}

}  // namespace

bool axiom_step_agreement(const Bundle& b, const std::string& axiom, Rng& rng,
                          std::string* detail) {
  auto fail = [&](const std::string& why) {
    if (detail) *detail = axiom + ": " + why;
    return false;
  };
  ConcreteConfig pre = random_config(rng);
  ConcreteConfig want = pre;
  FormulaPtr ctrl;
  const char* ids[] = {"m", "i1", "i2", "a", "b"};
  std::string x = ids[rng.below(5)];

  if (axiom == "AINT") {
    uint64_t n = rng.below(100);
    ctrl = f_app(b.sig, "caexp", {f_app(b.sig, "aexp_nat", {nat_term(b, n)})});
    want.stack.push_back(Value::of_nat(n));
  } else if (axiom == "AID") {
    uint64_t n = rng.below(100);
    pre.memory[x] = n;  // concretize the set(mem, x, n) antecedent
    want = pre;
    ctrl = f_app(b.sig, "caexp", {f_app(b.sig, "aexp_var", {var_term(b, x)})});
    want.stack.push_back(Value::of_nat(n));
  } else if (axiom == "APLUS") {
    uint64_t n1 = rng.below(100), n2 = rng.below(100);
    pre.stack.push_back(Value::of_nat(n1));
    pre.stack.push_back(Value::of_nat(n2));
    want = pre;
    want.stack.pop_back();
    want.stack.pop_back();
    want.stack.push_back(Value::of_nat(n1 + n2));
    ctrl = f_app(b.sig, "plus", {});
  } else if (axiom == "ALEQ") {
    uint64_t n1 = rng.below(100), n2 = rng.below(100);
    pre.stack.push_back(Value::of_nat(n2));
    pre.stack.push_back(Value::of_nat(n1));
    want = pre;
    want.stack.pop_back();
    want.stack.pop_back();
    want.stack.push_back(Value::of_bool(n1 <= n2));
    ctrl = f_app(b.sig, "leq", {});
  } else if (axiom == "AASGN") {
    uint64_t n = rng.below(100);
    pre.stack.push_back(Value::of_nat(n));
    want = pre;
    want.stack.pop_back();
    want.memory[x] = n;
    ctrl = f_app(b.sig, "asgn", {var_term(b, x)});
  } else if (axiom == "ASKIP") {
    ctrl = f_app(b.sig, "cstmt", {f_app(b.sig, "skip", {})});
  } else if (axiom == "A_TEST") {
    Value v = rng.coin() ? Value::of_nat(rng.below(10)) : Value::of_bool(rng.coin());
    pre.stack.push_back(v);
    want = pre;
    want.stack.pop_back();
    ctrl = f_app(b.sig, "test",
                 {v.is_bool ? val_bool(b, v.truth) : val_nat(b, v.nat)});
  } else {
    return fail("unknown single-step axiom");
  }

  RunResult r = run(b, pre, ctrl, 16);
  if (r.status != RunStatus::Done) return fail("machine did not finish: " + r.detail);
  if (!(r.config == want)) return fail("post-state differs from the consequent pattern");
  return true;
}

}  // namespace hml::smc
