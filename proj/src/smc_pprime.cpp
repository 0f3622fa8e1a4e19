#include "hml/proof_builder.hpp"
#include "hml/smc.hpp"

namespace hml::smc {

// The correctness derivation for the example program, expanded into primitive
// checker steps.  Milestones 1..15 mark the headline lines; 1 and 2 are the
// imported run-description hypotheses.
LibraryEntry p_prime_entry() {
  Bundle b = build_signature();
  Theory th = theory(b);
  const Signature& sig = b.sig;

  FormulaPtr vs = f_prop("vs", "ValStack");
  FormulaPtr mem = f_prop("mem", "Mem");
  StateSymbol memv{SymKind::StateVar, "mem'", "Mem"};
  FormulaPtr mematom = f_atom(memv);

  auto cfg = [&](FormulaPtr s, FormulaPtr m) {
    return f_app(sig, "config", {std::move(s), std::move(m)});
  };
  FormulaPtr pgm = example_program(b);
  FormulaPtr cpgm = f_app(sig, "cstmt", {pgm});
  auto box = [&](FormulaPtr g) { return boxed(b, cpgm, std::move(g)); };

  FormulaPtr inner = f_app(sig, "set", {mem, var_term(b, "i2"), nat_term(b, 2)});
  inner = f_app(sig, "set", {inner, var_term(b, "i1"), nat_term(b, 1)});
  FormulaPtr mf = f_app(sig, "set", {inner, var_term(b, "m"), nat_term(b, 1)});
  FormulaPtr get_m1 = f_app(sig, "get", {var_term(b, "m"), nat_term(b, 1)});

  auto at_mem = [&](FormulaPtr f) { return f_at(memv, std::move(f), "Mem"); };
  auto at_cfg = [&](FormulaPtr f) { return f_at(memv, std::move(f), "Config"); };
  FormulaPtr npgm = f_neg(cpgm);

  ProofBuilder pb(sig, b.tab, SystemId::H_AT, &th);
  std::map<int, int> ms;

  // (1), (2): the imported run descriptions
  FormulaPtr a = cfg(vs, mf);       // the computed final memory
  FormulaPtr bb = cfg(vs, mematom); // the named final memory
  ms[1] = pb.hyp("h1", f_impl(cfg(vs, mem), box(a)));
  ms[2] = pb.hyp("h2", f_impl(cfg(vs, mem), box(bb)));

  // (3) both descriptions at once
  ms[3] = pb.derive(f_impl(cfg(vs, mem), f_and(box(a), box(bb))), {ms[1], ms[2]});

  // (4) [pgm]A and [pgm]B -> [pgm](A and B)
  int t4 = pb.taut(f_impl(a, f_impl(bb, f_and(a, bb))));
  int bm4 = pb.box_mono("exec", 2, {npgm}, t4);
  SchemeInstance k4;
  k4.scheme = SchemeId::K_SIGMA_AX;
  k4.bind["op"] = std::string("exec");
  k4.bind["pos"] = 2;
  k4.bind["phi"] = bb;
  k4.bind["chi"] = f_and(a, bb);
  k4.bind["side1"] = npgm;
  int k4l = pb.axiom(std::move(k4));
  ms[4] = pb.derive(f_impl(f_and(box(a), box(bb)), box(f_and(a, bb))), {bm4, k4l});

  // (5) the constructor merges componentwise
  ms[5] = pb.theory_axiom(
      "NOCONFUSION",
      {{"phi1", Binding(vs)}, {"psi1", Binding(mf)}, {"phi2", Binding(vs)},
       {"psi2", Binding(mematom)}});

  // (6) name the merged memory: config(vs and vs, mf and mem') ->
  //     config(vs and vs, @_mem' mf)
  SchemeInstance intro;
  intro.scheme = SchemeId::INTRO;
  intro.bind["z"] = memv;
  intro.bind["phi"] = mf;
  int in6 = pb.axiom(std::move(intro));
  int s6 = pb.derive(f_impl(f_and(mf, mematom), at_mem(mf)), {in6});
  ms[6] = pb.dia_mono("config", 2, {f_and(vs, vs)}, s6);

  // (7) pull the satisfaction statement out of the constructor
  SchemeInstance back;
  back.scheme = SchemeId::BACK;
  back.bind["op"] = std::string("config");
  back.bind["pos"] = 2;
  back.bind["z"] = memv;
  back.bind["psi"] = mf;
  back.bind["side1"] = f_and(vs, vs);
  ms[7] = pb.axiom(std::move(back));

  // (8), (9) lift (7) under the program box
  ms[8] = pb.ug("exec", 2, ms[7], {npgm});
  SchemeInstance k9;
  k9.scheme = SchemeId::K_SIGMA_AX;
  k9.bind["op"] = std::string("exec");
  k9.bind["pos"] = 2;
  k9.bind["phi"] = cfg(f_and(vs, vs), at_mem(mf));
  k9.bind["chi"] = at_cfg(mf);
  k9.bind["side1"] = npgm;
  int k9l = pb.axiom(std::move(k9));
  ms[9] = pb.mp(ms[8], k9l);

  // (10) the final memory reads m as 1: one memory-lookup axiom instance
  ms[10] = pb.theory_axiom(
      "AMEM1", {{"mem", Binding(inner)}, {"x", Binding(std::string("m"))}, {"n", Binding(1)}});

  // (11), (12) carry the lookup through @ and the box
  ms[11] = pb.at_mono(memv, "Config", ms[10]);
  ms[12] = pb.box_mono("exec", 2, {npgm}, ms[11]);

  // (13), (14) lift (5) and (6) under the box
  ms[13] = pb.box_mono("exec", 2, {npgm}, ms[5]);
  ms[14] = pb.box_mono("exec", 2, {npgm}, ms[6]);

  // (15) chain everything
  int c = pb.trans(ms[3], ms[4]);
  c = pb.trans(c, ms[13]);
  c = pb.trans(c, ms[14]);
  c = pb.trans(c, ms[9]);
  ms[15] = pb.trans(c, ms[12]);

  LibraryEntry e;
  e.name = "P_PRIME";
  e.system = SystemId::H_AT;
  e.theory = "smc";
  e.sig = sig;
  e.tab = b.tab;
  e.hypotheses = pb.hypotheses();
  e.lines = pb.lines();
  e.milestones = std::move(ms);
  return e;
}

std::map<std::string, LibraryEntry> theorem_library() {
  std::map<std::string, LibraryEntry> lib = hml::theorem_library();
  lib["P_PRIME"] = p_prime_entry();
  return lib;
}

}  // namespace hml::smc
