// The machine vocabulary, theory axioms with computed side conditions, the
// concrete interpreter, the statement language, and the correctness replay.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hml/proof_text.hpp"
#include "hml/smc.hpp"

using namespace hml;
using namespace hml::smc;

namespace {

const Bundle& bundle() {
  static Bundle b = build_signature();
  return b;
}

FormulaPtr ax(const std::string& name, const std::map<std::string, Binding>& params) {
  return axiom_instance(bundle(), name, params);
}

}  // namespace

TEST_CASE("vocabulary shape") {
  const Bundle& b = bundle();
  const OperatorDecl& config = b.sig.operator_at("config");
  CHECK(config.arg_sorts == std::vector<std::string>{"ValStack", "Mem"});
  CHECK(config.result_sort == "Config");

  const OperatorDecl& test = b.sig.operator_at("test");
  CHECK(test.arg_sorts == std::vector<std::string>{"Val"});
  CHECK(test.result_sort == "CtrlStack");

  for (const char* z : {"nil", "empty", "skip", "true", "false"}) {
    const OperatorDecl& d = b.sig.operator_at(z);
    CHECK(d.arity() == 0);
  }
  CHECK(b.sig.operator_at("exec").arg_sorts ==
        std::vector<std::string>{"CtrlStack", "Config"});

  // numerals cover the documented range
  CHECK(b.sig.find_operator("0"));
  CHECK(b.sig.find_operator(std::to_string(kMaxNumeral)));
  CHECK_FALSE(b.sig.find_operator(std::to_string(kMaxNumeral + 1)));
  CHECK_THROWS_AS(nat_term(b, kMaxNumeral + 1), SchemeError);

  // the whole vocabulary is self-consistent; every axiom is well-sorted
  Rng rng(1);
  for (const char* name : {"A_UNION", "A_SEQ", "A_STAR", "CSTMT", "ASKIP", "NOCONFUSION"}) {
    std::map<std::string, Binding> p;
    if (std::string(name) == "A_UNION" || std::string(name) == "A_SEQ") {
      p["pi"] = f_app(b.sig, "plus", {});
      p["pi2"] = f_app(b.sig, "leq", {});
    }
    if (std::string(name) == "A_STAR") p["pi"] = f_app(b.sig, "plus", {});
    if (std::string(name) == "CSTMT") {
      p["s1"] = f_app(b.sig, "skip", {});
      p["s2"] = f_app(b.sig, "skip", {});
    }
    if (std::string(name) == "NOCONFUSION") {
      p["phi1"] = f_prop("vs", "ValStack");
      p["psi1"] = f_prop("mem", "Mem");
      p["phi2"] = f_prop("vs", "ValStack");
      p["psi2"] = f_prop("mem", "Mem");
    }
    auto f = ax(name, p);
    CHECK_FALSE(well_sorted(b.sig, b.tab, f, f->sort).has_value());
  }
}

TEST_CASE("axiom instances and side conditions") {
  const Bundle& b = bundle();

  // addition is computed: 1 + 2 pushes 3
  auto aplus = ax("APLUS", {{"n1", 1}, {"n2", 2}});
  auto vs = f_prop("vs", "ValStack");
  auto mem = f_prop("mem", "Mem");
  auto want = f_impl(
      f_app(b.sig, "config",
            {f_app(b.sig, "cons", {val_nat(b, 2), f_app(b.sig, "cons", {val_nat(b, 1), vs})}),
             mem}),
      boxed(b, f_app(b.sig, "plus", {}),
            f_app(b.sig, "config", {f_app(b.sig, "cons", {val_nat(b, 3), vs}), mem})));
  CHECK(equal(aplus, want));

  // requesting a different sum is rejected
  CHECK_THROWS_AS(ax("APLUS", {{"n1", 1}, {"n2", 2}, {"n", 4}}), SchemeError);
  CHECK(equal(ax("APLUS", {{"n1", 1}, {"n2", 2}, {"n", 3}}), want));

  // skip preserves any configuration formula
  auto askip = ax("ASKIP", {});
  auto cfgp = f_prop("cfg", "Config");
  CHECK(equal(askip, f_impl(cfgp, boxed(b, f_app(b.sig, "cstmt", {f_app(b.sig, "skip", {})}),
                                        cfgp))));

  // memory commutation requires distinct identifiers
  CHECK_THROWS_AS(
      ax("AMEM2", {{"x", std::string("m")}, {"y", std::string("m")}, {"n", 1}, {"m", 2}}),
      SchemeError);
  CHECK_NOTHROW(
      ax("AMEM2", {{"x", std::string("m")}, {"y", std::string("i1")}, {"n", 1}, {"m", 2}}));

  // failed tests need genuinely distinct values
  CHECK_THROWS_AS(ax("A_NEG_TEST", {{"v", 3}, {"v2", 3}}), SchemeError);
  CHECK_NOTHROW(ax("A_NEG_TEST", {{"v", 3}, {"v2", std::string("true")}}));

  // the truth value of a comparison is computed
  auto aleq = ax("ALEQ", {{"n1", 5}, {"n2", 3}});
  std::string printed = print_formula(aleq);
  CHECK(printed.find("false") != std::string::npos);
  CHECK_THROWS_AS(ax("ALEQ", {{"n1", 5}, {"n2", 3}, {"t", std::string("true")}}), SchemeError);
}

TEST_CASE("every theory generator yields a well-sorted instance") {
  const Bundle& b = bundle();
  FormulaPtr ctrl = f_app(b.sig, "plus", {});
  FormulaPtr stmt = f_app(b.sig, "skip", {});
  FormulaPtr aexp = f_app(b.sig, "aexp_nat", {nat_term(b, 4)});
  FormulaPtr bexp = f_app(b.sig, "leqb", {aexp, aexp});
  std::map<std::string, std::map<std::string, Binding>> cases{
      {"A_UNION", {{"pi", ctrl}, {"pi2", ctrl}}},
      {"A_SEQ", {{"pi", ctrl}, {"pi2", ctrl}}},
      {"A_STAR", {{"pi", ctrl}}},
      {"A_TEST", {{"v", 3}}},
      {"A_NEG_TEST", {{"v", 3}, {"v2", 4}}},
      {"CSTMT", {{"s1", stmt}, {"s2", stmt}}},
      {"AMEM0", {{"x", std::string("a")}}},
      {"AMEM1", {{"x", std::string("a")}, {"n", 5}}},
      {"AMEM2", {{"x", std::string("a")}, {"y", std::string("b")}, {"n", 5}, {"m", 6}}},
      {"AMEM3", {{"x", std::string("a")}, {"n", 5}, {"m", 6}}},
      {"AINT", {{"n", 7}}},
      {"AID", {{"x", std::string("a")}, {"n", 7}}},
      {"DPLUS", {{"a1", aexp}, {"a2", aexp}}},
      {"APLUS", {{"n1", 1}, {"n2", 2}}},
      {"DLEQ", {{"a1", aexp}, {"a2", aexp}}},
      {"ALEQ", {{"n1", 1}, {"n2", 2}}},
      {"ASKIP", {}},
      {"DASGN", {{"x", std::string("a")}, {"a", aexp}}},
      {"AASGN", {{"x", std::string("a")}, {"n", 7}}},
      {"DIF", {{"b", bexp}, {"s1", stmt}, {"s2", stmt}}},
      {"DWHILE", {{"b", bexp}, {"s", stmt}}},
      {"NOCONFUSION",
       {{"phi1", f_prop("vs", "ValStack")},
        {"psi1", f_prop("mem", "Mem")},
        {"phi2", f_prop("vs", "ValStack")},
        {"psi2", f_prop("mem", "Mem")}}},
  };
  Theory th = theory(b);
  CHECK(th.generators.size() == cases.size());
  for (const auto& [name, params] : cases) {
    INFO(name);
    auto f = axiom_instance(b, name, params);
    CHECK_FALSE(well_sorted(b.sig, b.tab, f, f->sort).has_value());
    // the theory dispatches to the same construction
    auto g = th.generators.at(name)(b.sig, b.tab, params);
    CHECK(equal(f, g));
  }
}

TEST_CASE("machine runs") {
  const Bundle& b = bundle();

  // skip is a no-op from the empty configuration
  RunResult r = run(b, {}, f_app(b.sig, "cstmt", {f_app(b.sig, "skip", {})}));
  CHECK(r.status == RunStatus::Done);
  CHECK(r.config == ConcreteConfig{});

  // plus pops two numbers and pushes the sum
  ConcreteConfig two;
  two.stack = {Value::of_nat(1), Value::of_nat(2)};  // 2 on top
  r = run(b, two, f_app(b.sig, "plus", {}));
  CHECK(r.status == RunStatus::Done);
  REQUIRE(r.config.stack.size() == 1);
  CHECK(r.config.stack[0] == Value::of_nat(3));

  // the example program computes m = 1 and preserves the stack
  ConcreteConfig init;
  init.stack = {Value::of_bool(true), Value::of_nat(7)};
  init.memory = {{"a", 9}};
  r = run(b, init, f_app(b.sig, "cstmt", {example_program(b)}));
  CHECK(r.status == RunStatus::Done);
  CHECK(r.config.stack == init.stack);
  CHECK(r.config.memory.at("m") == 1);
  CHECK(r.config.memory.at("i1") == 1);
  CHECK(r.config.memory.at("i2") == 2);
  CHECK(r.config.memory.at("a") == 9);

  // a while loop that counts up
  auto loop = parse_program(b, "a := 0; while a <= 2 do a := a + 1");
  r = run(b, {}, f_app(b.sig, "cstmt", {loop}));
  CHECK(r.status == RunStatus::Done);
  CHECK(r.config.memory.at("a") == 3);
  CHECK(r.config.stack.empty());

  // fuel guards divergence
  auto forever = parse_program(b, "while 0 <= 1 do skip");
  r = run(b, {}, f_app(b.sig, "cstmt", {forever}), 200);
  CHECK(r.status == RunStatus::OutOfFuel);

  // a bare failing test aborts the branch
  ConcreteConfig one;
  one.stack = {Value::of_nat(4)};
  r = run(b, one, f_app(b.sig, "test", {val_nat(b, 5)}));
  CHECK(r.status == RunStatus::Stuck);
}

TEST_CASE("concrete memory matches the memory axioms") {
  const Bundle& b = bundle();
  Rng rng(17);
  for (int i = 0; i < 50; ++i) {
    ConcreteConfig c;
    std::string x = rng.coin() ? "a" : "b";
    std::string y = x == "a" ? "b" : "a";
    uint64_t n = rng.below(64), m2 = rng.below(64);

    // set-then-get
    c.memory[x] = n;
    CHECK(c.memory.at(x) == n);
    // shadowing keeps the later write
    c.memory[x] = n;
    c.memory[x] = m2;
    CHECK(c.memory.at(x) == m2);
    // distinct keys commute
    ConcreteConfig d1, d2;
    d1.memory[x] = n;
    d1.memory[y] = m2;
    d2.memory[y] = m2;
    d2.memory[x] = n;
    CHECK(d1.memory == d2.memory);
    // the empty memory reads as 0 through the machine
    RunResult r = run(b, {}, f_app(b.sig, "caexp",
                                   {f_app(b.sig, "aexp_var", {var_term(b, "c")})}));
    CHECK(r.status == RunStatus::Done);
    REQUIRE(r.config.stack.size() == 1);
    CHECK(r.config.stack[0] == Value::of_nat(0));
  }
}

TEST_CASE("single-step oracle agreement") {
  const Bundle& b = bundle();
  Rng rng(23);
  for (const char* axiom : {"AINT", "AID", "APLUS", "ALEQ", "AASGN", "ASKIP", "A_TEST"}) {
    for (int i = 0; i < 50; ++i) {
      std::string why;
      bool ok = axiom_step_agreement(b, axiom, rng, &why);
      INFO(why);
      CHECK(ok);
    }
  }
}

TEST_CASE("program text round trips") {
  const Bundle& b = bundle();

  CHECK(equal(parse_program(b, "skip"), f_app(b.sig, "skip", {})));

  auto pgm = example_program(b);
  CHECK(print_program(pgm) == "i1 := 1; i2 := 2; if i1 <= i2 then m := i1 else m := i2");
  CHECK(equal(parse_program(b, print_program(pgm)), pgm));

  // assignment through an addition has the expected construction
  auto asg = parse_program(b, "x := 1 + 2");
  auto want = f_app(b.sig, "assign",
                    {var_term(b, "x"),
                     f_app(b.sig, "add", {f_app(b.sig, "aexp_nat", {nat_term(b, 1)}),
                                          f_app(b.sig, "aexp_nat", {nat_term(b, 2)})})});
  CHECK(equal(asg, want));

  // grouped bodies and left-associative addition round trip
  for (const char* text :
       {"while a <= 9 do (a := a + 1; b := b + a)", "a := 1 + 2 + 3",
        "if a <= b then (a := 1; b := 2) else skip", "a := 1 + (2 + 3)"}) {
    auto t = parse_program(b, text);
    CHECK(equal(parse_program(b, print_program(t)), t));
  }

  CHECK_THROWS_AS(parse_program(b, "zz := 1"), ParseError);      // unknown identifier
  CHECK_THROWS_AS(parse_program(b, "a := 99999"), ParseError);   // numeral out of range
  CHECK_THROWS_AS(parse_program(b, "a := 1;"), ParseError);      // dangling separator
}

TEST_CASE("correctness replay verifies and follows the headline steps") {
  LibraryEntry e = p_prime_entry();
  const Bundle& b = bundle();
  Theory th = theory(b);

  Verdict v = check_proof(e.sig, e.tab, e.system, &th, e.hypotheses, e.lines);
  INFO("line ", v.line, " ", fail_reason_name(v.reason), " ", v.detail);
  CHECK(v.ok);
  REQUIRE(e.milestones.size() == 15);

  // expected headline formulas, built by hand
  FormulaPtr vs = f_prop("vs", "ValStack");
  FormulaPtr mem = f_prop("mem", "Mem");
  StateSymbol memv{SymKind::StateVar, "mem'", "Mem"};
  FormulaPtr mematom = f_atom(memv);
  auto cfg = [&](FormulaPtr s, FormulaPtr m) {
    return f_app(b.sig, "config", {std::move(s), std::move(m)});
  };
  FormulaPtr cpgm = f_app(b.sig, "cstmt", {example_program(b)});
  auto box = [&](FormulaPtr g) { return boxed(b, cpgm, std::move(g)); };
  FormulaPtr inner = f_app(b.sig, "set", {mem, var_term(b, "i2"), nat_term(b, 2)});
  inner = f_app(b.sig, "set", {inner, var_term(b, "i1"), nat_term(b, 1)});
  FormulaPtr mf = f_app(b.sig, "set", {inner, var_term(b, "m"), nat_term(b, 1)});
  FormulaPtr get_m1 = f_app(b.sig, "get", {var_term(b, "m"), nat_term(b, 1)});

  auto at_line = [&](int k) { return e.lines[e.milestones.at(k) - 1].formula; };
  FormulaPtr a = cfg(vs, mf), bb = cfg(vs, mematom);
  FormulaPtr merged = cfg(f_and(vs, vs), f_and(mf, mematom));
  FormulaPtr named = cfg(f_and(vs, vs), f_at(memv, mf, "Mem"));
  FormulaPtr at_mf = f_at(memv, mf, "Config");
  FormulaPtr at_get = f_at(memv, get_m1, "Config");
  CHECK(equal(at_line(1), f_impl(cfg(vs, mem), box(a))));
  CHECK(equal(at_line(2), f_impl(cfg(vs, mem), box(bb))));
  CHECK(equal(at_line(3), f_impl(cfg(vs, mem), f_and(box(a), box(bb)))));
  CHECK(equal(at_line(4), f_impl(f_and(box(a), box(bb)), box(f_and(a, bb)))));
  CHECK(equal(at_line(5), f_impl(f_and(a, bb), merged)));
  CHECK(equal(at_line(6), f_impl(merged, named)));
  CHECK(equal(at_line(7), f_impl(named, at_mf)));
  CHECK(equal(at_line(8), box(f_impl(named, at_mf))));
  CHECK(equal(at_line(9), f_impl(box(named), box(at_mf))));
  CHECK(equal(at_line(10), f_impl(mf, get_m1)));
  CHECK(equal(at_line(11), f_impl(at_mf, at_get)));
  CHECK(equal(at_line(12), f_impl(box(at_mf), box(at_get))));
  CHECK(equal(at_line(13), f_impl(box(f_and(a, bb)), box(merged))));
  CHECK(equal(at_line(14), f_impl(box(merged), box(named))));
  CHECK(equal(at_line(15), f_impl(cfg(vs, mem), box(at_get))));

  // headline steps appear in order
  int prev = 0;
  for (int k = 1; k <= 15; ++k) {
    CHECK(e.milestones.at(k) > prev);
    prev = e.milestones.at(k);
  }

  // dropping the first hypothesis fails at the line citing it
  Hypotheses no_h1(e.hypotheses.begin() + 1, e.hypotheses.end());
  Verdict v2 = check_proof(e.sig, e.tab, e.system, &th, no_h1, e.lines);
  CHECK_FALSE(v2.ok);
  CHECK(v2.line == e.milestones.at(1));
  CHECK(v2.reason == FailReason::UNKNOWN_HYPOTHESIS);
}

TEST_CASE("the aggregated library carries all four entries") {
  auto lib = hml::smc::theorem_library();
  CHECK(lib.size() == 4);
  for (const char* name : {"NOM_Z", "SYM", "BRIDGE", "P_PRIME"}) CHECK(lib.count(name));
  const Bundle& b = bundle();
  Theory th = theory(b);
  for (auto& [name, e] : lib) {
    const Theory* t = e.theory.empty() ? nullptr : &th;
    Verdict v = check_proof(e.sig, e.tab, e.system, t, e.hypotheses, e.lines);
    INFO(name, ": line ", v.line, " ", fail_reason_name(v.reason));
    CHECK(v.ok);
  }
}

TEST_CASE("shipped correctness proof file matches the builder") {
  LibraryEntry e = p_prime_entry();
  const Bundle& b = bundle();
  Theory th = theory(b);
  ProofDoc doc = load_proof_file(b.sig, b.tab, std::string(HML_DATA_DIR) + "/proofs/p_prime.prf");
  CHECK(print_proof(doc) == print_proof(e.doc()));
  Verdict v = check_proof(b.sig, b.tab, SystemId::H_AT, &th, doc.hypotheses, doc.lines);
  CHECK(v.ok);
}

TEST_CASE("mutating any single line's justification is rejected at that line") {
  LibraryEntry e = p_prime_entry();
  const Bundle& b = bundle();
  Theory th = theory(b);
  for (size_t i = 0; i < e.lines.size(); ++i) {
    std::vector<ProofLine> mutated = e.lines;
    Justification& j = mutated[i].just;
    if (j.kind == Justification::Axiom && j.scheme.scheme == SchemeId::TAUT) {
      // a tautology line mutated into a hypothesis citation
      j = Justification{};
      j.kind = Justification::Hypothesis;
      j.name = "h1";
    } else {
      j = Justification{};
      j.kind = Justification::Axiom;
      j.scheme.scheme = SchemeId::TAUT;
    }
    Verdict v = check_proof(e.sig, e.tab, e.system, &th, e.hypotheses, mutated);
    CHECK_FALSE(v.ok);
    CHECK(v.line == static_cast<int>(i) + 1);
  }
}
