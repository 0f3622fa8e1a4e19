#include "hml/library.hpp"

#include "hml/proof_builder.hpp"

namespace hml {

namespace {

constexpr const char* kVocabulary = R"(# Two-sorted test vocabulary used by the unit tests and the proof replays.
sort s
sort t
op f : t s -> s
op g : s -> t
op h : t -> t
op e : -> t
prop p : s
prop q : s
prop pt : t
prop qt : t
nom j : s
nom j2 : s
nom k : t
nom k2 : t
svar x : s
svar x2 : s
svar y : t
svar y2 : t
)";

// Emits the eight headline steps of @_z^s y -> (@_z^s phi <-> @_y^s phi)
// into b; returns the milestone map (headline -> line).
std::map<int, int> emit_nom_z(ProofBuilder& b, const StateSymbol& z, const StateSymbol& y,
                              const FormulaPtr& phi, const std::string& s) {
  std::map<int, int> ms;
  auto at_z = [&](FormulaPtr f) { return f_at(z, std::move(f), s); };
  auto at_y_t = [&](FormulaPtr f) { return f_at(y, std::move(f), y.sort); };

  // (1) y -> (phi <-> @_y phi)
  SchemeInstance intro;
  intro.scheme = SchemeId::INTRO;
  intro.bind["z"] = y;
  intro.bind["phi"] = phi;
  ms[1] = b.axiom(intro);

  // (2) @_z^s (y -> (phi <-> @_y phi))
  ms[2] = b.genat(z, s, ms[1]);

  // (3) @_z^s (...) -> (@_z^s y -> @_z^s (phi <-> @_y phi))
  FormulaPtr inner = f_iff(phi, at_y_t(phi));
  SchemeInstance kat;
  kat.scheme = SchemeId::K_AT;
  kat.bind["z"] = z;
  kat.bind["s"] = s;
  kat.bind["phi"] = f_atom(y);
  kat.bind["psi"] = inner;
  ms[3] = b.axiom(kat);

  // (4) @_z^s y -> @_z^s (phi <-> @_y phi)
  ms[4] = b.mp(ms[2], ms[3]);

  // (5) @_z^s (phi <-> @_y phi) <-> (@_z^s phi <-> @_z^s @_y phi)
  ms[5] = b.at_iff_dist(z, s, phi, at_y_t(phi));

  // (6) @_z^s y -> (@_z^s phi <-> @_z^s @_y phi)
  ms[6] = b.derive(f_impl(at_z(f_atom(y)), f_iff(at_z(phi), at_z(at_y_t(phi)))),
                   {ms[4], ms[5]});

  // (7) @_z^s @_y phi <-> @_y^s phi
  SchemeInstance agree;
  agree.scheme = SchemeId::AGREE;
  agree.bind["y"] = z;  // outer symbol
  agree.bind["z"] = y;  // inner symbol
  agree.bind["s"] = s;
  agree.bind["phi"] = phi;
  ms[7] = b.axiom(agree);

  // (8) @_z^s y -> (@_z^s phi <-> @_y^s phi)
  ms[8] = b.derive(f_impl(at_z(f_atom(y)), f_iff(at_z(phi), f_at(y, phi, s))),
                   {ms[6], ms[7]});
  return ms;
}

LibraryEntry finish(const char* name, const Signature& sig, const SymbolTable& tab,
                    ProofBuilder& b, std::map<int, int> milestones) {
  LibraryEntry e;
  e.name = name;
  e.system = SystemId::H_AT;
  e.sig = sig;
  e.tab = tab;
  e.hypotheses = b.hypotheses();
  e.lines = b.lines();
  e.milestones = std::move(milestones);
  return e;
}

LibraryEntry build_nom_z(const Signature& sig, const SymbolTable& tab) {
  StateSymbol z{SymKind::Nominal, "k", "t"};
  StateSymbol y{SymKind::StateVar, "y", "t"};
  ProofBuilder b(sig, tab, SystemId::H_AT);
  auto ms = emit_nom_z(b, z, y, f_prop("pt", "t"), "s");
  return finish("NOM_Z", sig, tab, b, std::move(ms));
}

// @_z^s y -> @_y^s z.  The printed derivation of this lemma is unusable (its
// fourth step cites a non-tautology), so the entry replays the named-symbol
// lemma at phi = z and finishes with reflexivity of @.
LibraryEntry build_sym(const Signature& sig, const SymbolTable& tab) {
  StateSymbol z{SymKind::Nominal, "k", "t"};
  StateSymbol y{SymKind::StateVar, "y", "t"};
  ProofBuilder b(sig, tab, SystemId::H_AT);
  auto ms = emit_nom_z(b, z, y, f_atom(z), "s");
  int nomz = ms[8];

  SchemeInstance ref;
  ref.scheme = SchemeId::REF;
  ref.bind["z"] = z;
  ref.bind["s"] = std::string("s");
  int r = b.axiom(ref);  // @_z^s z

  FormulaPtr goal = f_impl(f_at(z, f_atom(y), "s"), f_at(y, f_atom(z), "s"));
  int last = b.derive(goal, {nomz, r});
  return finish("SYM", sig, tab, b, {{1, last}});
}

// f(z, chi) and f_box(not phi, not chi) -> ... -> the bridge lemma
// f(z, chi) and @_z^s phi -> f(phi, chi), for z = k at the first argument of
// f : t s -> s, phi = pt, side chi = q.
LibraryEntry build_bridge(const Signature& sig, const SymbolTable& tab) {
  StateSymbol z{SymKind::Nominal, "k", "t"};
  FormulaPtr phi = f_prop("pt", "t");
  FormulaPtr chi = f_prop("q", "s");
  FormulaPtr zat = f_atom(z);
  const std::string s = "s";
  ProofBuilder b(sig, tab, SystemId::H_AT);
  std::map<int, int> ms;

  auto dia = [&](FormulaPtr piv) { return f_app(sig, "f", {std::move(piv), chi}); };
  FormulaPtr box_negs = f_box(sig, "f", {f_neg(phi), f_neg(chi)});

  // (1) f(z, chi) and box(not phi, not chi) -> f(z and not phi, chi)
  int split_src = b.taut(f_impl(zat, f_or(f_and(zat, f_neg(phi)), f_and(zat, phi))));
  int mono1 = b.dia_mono("f", 1, {chi}, split_src);
  int split = b.dia_or_split("f", 1, {chi}, f_and(zat, f_neg(phi)), f_and(zat, phi));
  int cases = b.derive(
      f_impl(dia(zat), f_or(dia(f_and(zat, f_neg(phi))), dia(f_and(zat, phi)))), {mono1, split});
  // the z-and-phi branch contradicts the box
  int keep = b.taut(f_impl(f_and(zat, phi), f_neg(f_neg(phi))));
  int mono2 = b.dia_mono("f", 1, {chi}, keep);  // f(z and phi, chi) -> f(not not phi, chi)
  int chi_dn = b.taut(f_impl(chi, f_neg(f_neg(chi))));
  int mono3 = b.dia_mono("f", 2, {f_neg(f_neg(phi))}, chi_dn);
  int excl = b.derive(f_impl(dia(f_and(zat, phi)), f_neg(box_negs)), {mono2, mono3});
  ms[1] = b.derive(
      f_impl(f_and(dia(zat), box_negs), dia(f_and(zat, f_neg(phi)))), {cases, excl});

  // (2) z and not phi -> @_z^t not phi
  SchemeInstance intro;
  intro.scheme = SchemeId::INTRO;
  intro.bind["z"] = z;
  intro.bind["phi"] = f_neg(phi);
  int in = b.axiom(intro);
  ms[2] = b.derive(f_impl(f_and(zat, f_neg(phi)), f_at(z, f_neg(phi), "t")), {in});

  // (3) f(z and not phi, chi) -> f(@_z not phi, chi)
  ms[3] = b.dia_mono("f", 1, {chi}, ms[2]);

  // (4) f(@_z not phi, chi) -> @_z^s not phi
  SchemeInstance back;
  back.scheme = SchemeId::BACK;
  back.bind["op"] = std::string("f");
  back.bind["pos"] = 1;
  back.bind["z"] = z;
  back.bind["psi"] = f_neg(phi);
  back.bind["side2"] = chi;
  ms[4] = b.axiom(back);

  // (5) f(z and not phi, chi) -> @_z^s not phi
  ms[5] = b.trans(ms[3], ms[4]);

  // (6) f(z, chi) and box -> @_z^s not phi
  ms[6] = b.derive(f_impl(f_and(dia(zat), box_negs), f_at(z, f_neg(phi), s)), {ms[1], ms[5]});

  // (7) f(z, chi) -> (box -> @_z^s not phi)
  ms[7] = b.derive(f_impl(dia(zat), f_impl(box_negs, f_at(z, f_neg(phi), s))), {ms[6]});

  // (8) f(z, chi) -> (not @_z^s not phi -> not box)
  ms[8] = b.derive(
      f_impl(dia(zat), f_impl(f_neg(f_at(z, f_neg(phi), s)), f_neg(box_negs))), {ms[7]});

  // (9) f(z, chi) -> (@_z^s phi -> f(phi, chi))
  SchemeInstance sd;
  sd.scheme = SchemeId::SELFDUAL;
  sd.bind["z"] = z;
  sd.bind["s"] = s;
  sd.bind["phi"] = phi;
  int sdl = b.axiom(sd);
  SchemeInstance dual;
  dual.scheme = SchemeId::DUAL;
  dual.bind["op"] = std::string("f");
  dual.bind["arg1"] = phi;
  dual.bind["arg2"] = chi;
  int dl = b.axiom(dual);
  ms[9] = b.derive(f_impl(dia(zat), f_impl(f_at(z, phi, s), dia(phi))), {ms[8], sdl, dl});

  // (10) f(z, chi) and @_z^s phi -> f(phi, chi)
  ms[10] = b.derive(f_impl(f_and(dia(zat), f_at(z, phi, s)), dia(phi)), {ms[9]});

  return finish("BRIDGE", sig, tab, b, std::move(ms));
}

}  // namespace

std::pair<Signature, SymbolTable> library_vocabulary() { return parse_signature(kVocabulary); }

std::map<std::string, LibraryEntry> theorem_library() {
  auto [sig, tab] = library_vocabulary();
  std::map<std::string, LibraryEntry> lib;
  lib["NOM_Z"] = build_nom_z(sig, tab);
  lib["SYM"] = build_sym(sig, tab);
  lib["BRIDGE"] = build_bridge(sig, tab);
  return lib;
}

}  // namespace hml
