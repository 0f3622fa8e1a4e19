// The theorem library: replays verify, headline steps match the expected
// derivation lines, and conclusions are semantically sound.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "hml/library.hpp"
#include "hml/soundness.hpp"

using namespace hml;

namespace {

const StateSymbol kNomK{SymKind::Nominal, "k", "t"};
const StateSymbol kSvarY{SymKind::StateVar, "y", "t"};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("library replays verify") {
  for (auto& [name, entry] : theorem_library()) {
    INFO(name);
    Verdict v = check_proof(entry.sig, entry.tab, entry.system, nullptr, entry.hypotheses,
                            entry.lines);
    INFO("line ", v.line, " ", fail_reason_name(v.reason), " ", v.detail);
    CHECK(v.ok);
  }
}

TEST_CASE("NOM_Z follows the eight headline steps") {
  auto lib = theorem_library();
  const LibraryEntry& e = lib.at("NOM_Z");
  const Signature& sig = e.sig;
  const SymbolTable& tab = e.tab;

  auto phi = f_prop("pt", "t");
  auto y = f_atom(kSvarY);
  auto at_z = [&](FormulaPtr f) { return f_at(kNomK, std::move(f), "s"); };
  auto at_y_t = [&](FormulaPtr f) { return f_at(kSvarY, std::move(f), "t"); };
  auto at_y_s = [&](FormulaPtr f) { return f_at(kSvarY, std::move(f), "s"); };

  std::vector<FormulaPtr> expect = {
      f_impl(y, f_iff(phi, at_y_t(phi))),
      at_z(f_impl(y, f_iff(phi, at_y_t(phi)))),
      f_impl(at_z(f_impl(y, f_iff(phi, at_y_t(phi)))),
             f_impl(at_z(y), at_z(f_iff(phi, at_y_t(phi))))),
      f_impl(at_z(y), at_z(f_iff(phi, at_y_t(phi)))),
      f_iff(at_z(f_iff(phi, at_y_t(phi))), f_iff(at_z(phi), at_z(at_y_t(phi)))),
      f_impl(at_z(y), f_iff(at_z(phi), at_z(at_y_t(phi)))),
      f_iff(at_z(at_y_t(phi)), at_y_s(phi)),
      f_impl(at_z(y), f_iff(at_z(phi), at_y_s(phi))),
  };
  REQUIRE(e.milestones.size() == 8);
  int prev = 0;
  for (int k = 1; k <= 8; ++k) {
    int at = e.milestones.at(k);
    CHECK(at > prev);  // headline steps appear in order
    prev = at;
    CHECK(equal(e.lines[at - 1].formula, expect[k - 1]));
  }

  // the conclusion is the NOM_Z scheme instance with the same bindings
  SchemeInstance inst;
  inst.scheme = SchemeId::NOM_Z;
  inst.bind["z"] = kNomK;
  inst.bind["y"] = kSvarY;
  inst.bind["s"] = std::string("s");
  inst.bind["phi"] = phi;
  CHECK(equal(e.conclusion(), instantiate_scheme(sig, tab, inst)));
}

TEST_CASE("BRIDGE follows the ten headline steps") {
  auto lib = theorem_library();
  const LibraryEntry& e = lib.at("BRIDGE");
  const Signature& sig = e.sig;

  auto phi = f_prop("pt", "t");
  auto chi = f_prop("q", "s");
  auto z = f_atom(kNomK);
  auto dia = [&](FormulaPtr f) { return f_app(sig, "f", {std::move(f), chi}); };
  auto box = f_box(sig, "f", {f_neg(phi), f_neg(chi)});
  auto at_s = [&](FormulaPtr f) { return f_at(kNomK, std::move(f), "s"); };

  std::vector<FormulaPtr> expect = {
      f_impl(f_and(dia(z), box), dia(f_and(z, f_neg(phi)))),
      f_impl(f_and(z, f_neg(phi)), f_at(kNomK, f_neg(phi), "t")),
      f_impl(dia(f_and(z, f_neg(phi))), dia(f_at(kNomK, f_neg(phi), "t"))),
      f_impl(dia(f_at(kNomK, f_neg(phi), "t")), at_s(f_neg(phi))),
      f_impl(dia(f_and(z, f_neg(phi))), at_s(f_neg(phi))),
      f_impl(f_and(dia(z), box), at_s(f_neg(phi))),
      f_impl(dia(z), f_impl(box, at_s(f_neg(phi)))),
      f_impl(dia(z), f_impl(f_neg(at_s(f_neg(phi))), f_neg(box))),
      f_impl(dia(z), f_impl(at_s(phi), dia(phi))),
      f_impl(f_and(dia(z), at_s(phi)), dia(phi)),
  };
  REQUIRE(e.milestones.size() == 10);
  int prev = 0;
  for (int k = 1; k <= 10; ++k) {
    int at = e.milestones.at(k);
    CHECK(at > prev);
    prev = at;
    CHECK(equal(e.lines[at - 1].formula, expect[k - 1]));
  }

  SchemeInstance inst;
  inst.scheme = SchemeId::BRIDGE;
  inst.bind["op"] = std::string("f");
  inst.bind["pos"] = 1;
  inst.bind["z"] = kNomK;
  inst.bind["phi"] = phi;
  inst.bind["side2"] = chi;
  CHECK(equal(e.conclusion(), instantiate_scheme(e.sig, e.tab, inst)));
}

TEST_CASE("SYM concludes the symmetry implication") {
  auto lib = theorem_library();
  const LibraryEntry& e = lib.at("SYM");
  SchemeInstance inst;
  inst.scheme = SchemeId::SYM;
  inst.bind["z"] = kNomK;
  inst.bind["y"] = kSvarY;
  inst.bind["s"] = std::string("s");
  CHECK(equal(e.conclusion(), instantiate_scheme(e.sig, e.tab, inst)));
}

TEST_CASE("library conclusions survive soundness sweeps") {
  SweepOptions opt;
  opt.trials = 150;
  for (SchemeId id : {SchemeId::NOM_Z, SchemeId::SYM, SchemeId::BRIDGE}) {
    SweepReport r = soundness_sweep(id, opt);
    INFO(r.scheme);
    CHECK(r.clean());
  }
}

TEST_CASE("shipped proof files match the library") {
  auto [sig, tab] = library_vocabulary();
  for (auto& [name, entry] : theorem_library()) {
    std::string file = std::string(HML_DATA_DIR) + "/proofs/" +
                       (name == "NOM_Z" ? "nom_z" : name == "SYM" ? "sym" : "bridge") + ".prf";
    CHECK(slurp(file) == print_proof(entry.doc()));
  }
}

TEST_CASE("the garbled symmetry fixture is rejected at its fourth step") {
  auto [sig, tab] = library_vocabulary();
  ProofDoc doc = load_proof_file(sig, tab, std::string(HML_DATA_DIR) +
                                               "/proofs/sym_literal_fixture.prf");
  Verdict v = check_proof(sig, tab, SystemId::H_AT, nullptr, doc.hypotheses, doc.lines);
  CHECK_FALSE(v.ok);
  CHECK(v.line == 4);
  CHECK(v.reason == FailReason::NOT_TAUTOLOGY);
}

TEST_CASE("marking an axiom line as a hypothesis can only break a proof") {
  auto lib = theorem_library();
  const LibraryEntry& e = lib.at("NOM_Z");
  // line 1 feeds the @ generalization at line 2; as a hypothesis it must be
  // rejected there
  std::vector<ProofLine> lines = e.lines;
  Hypotheses hyps = e.hypotheses;
  hyps.emplace_back("smuggled", lines[0].formula);
  lines[0].just = Justification{};
  lines[0].just.kind = Justification::Hypothesis;
  lines[0].just.name = "smuggled";
  Verdict v = check_proof(e.sig, e.tab, e.system, nullptr, hyps, lines);
  CHECK_FALSE(v.ok);
  CHECK(v.line == 2);
  CHECK(v.reason == FailReason::PREMISE_HAS_HYPOTHESIS);
}

TEST_CASE("checker soundness: accepted theorems are valid on random models") {
  auto lib = theorem_library();
  Rng rng(2024);
  for (auto& [name, entry] : lib) {
    for (int i = 0; i < 67; ++i) {
      Model m = random_model(entry.sig, entry.tab, 3, rng);
      INFO(name);
      CHECK(valid_in_model(entry.sig, entry.tab, m, entry.conclusion()));
    }
  }
}
