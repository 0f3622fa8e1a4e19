// Satisfaction, validity, random models, generated submodels, and the
// axiom-soundness sweeps.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hml/soundness.hpp"
#include "hml/submodel.hpp"
#include "hml/text.hpp"

using namespace hml;

namespace {

std::pair<Signature, SymbolTable> fixture() {
  return load_signature_file(std::string(HML_DATA_DIR) + "/sig/hybrid.sig");
}

Model fixture_model(const Signature& sig, const SymbolTable& tab) {
  return load_model_file(sig, tab, std::string(HML_DATA_DIR) + "/models/two.mdl");
}

// Independent reading of the diamond clause for small arities: scan the
// relation directly instead of going through the evaluator's App case.
bool diamond_direct(const Signature& sig, const SymbolTable& tab, const Model& m,
                    const Assignment& g, const WorldRef& w, const std::string& op,
                    const std::vector<FormulaPtr>& args) {
  const OperatorDecl& d = sig.operator_at(op);
  auto it = m.relations.find(op);
  if (it == m.relations.end()) return false;
  for (const auto& t : it->second) {
    if (t[0] != w.index) continue;
    bool all = true;
    for (size_t i = 0; i < args.size() && all; ++i)
      all = satisfies(sig, tab, m, g, WorldRef{d.arg_sorts[i], t[i + 1]}, args[i]);
    if (all) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("satisfaction clauses") {
  auto [sig, tab] = fixture();
  Model m = fixture_model(sig, tab);
  Assignment g = m.default_assignment;

  // prop truth is membership in the valuation
  CHECK(satisfies(sig, tab, m, g, {"s", 0}, f_prop("p", "s")));
  CHECK_FALSE(satisfies(sig, tab, m, g, {"s", 1}, f_prop("p", "s")));

  // empty relation: diamond is false everywhere
  Model empty = m;
  empty.relations.clear();
  auto dia = f_app(sig, "h", {f_prop("pt", "t")});
  for (int w = 0; w < m.world_count("t"); ++w)
    CHECK_FALSE(satisfies(sig, tab, empty, g, {"t", w}, dia));

  // exists x x holds at every world of its sort
  StateSymbol x{SymKind::StateVar, "x", "s"};
  auto name = f_exists(x, f_svar("x", "s"));
  for (int w = 0; w < m.world_count("s"); ++w)
    CHECK(satisfies(sig, tab, m, g, {"s", w}, name));

  // 0-ary operator: truth is membership of (w) in the relation
  auto e = f_app(sig, "e", {});
  CHECK(satisfies(sig, tab, m, g, {"t", 0}, e));
  CHECK_FALSE(satisfies(sig, tab, m, g, {"t", 1}, e));

  // errors
  CHECK_THROWS_AS(satisfies(sig, tab, m, {}, {"s", 0}, f_svar("x", "s")), EvalError);
  CHECK_THROWS_AS(satisfies(sig, tab, m, g, {"t", 0}, f_prop("p", "s")), EvalError);
}

TEST_CASE("validity in a model") {
  auto [sig, tab] = fixture();
  Model m = fixture_model(sig, tab);

  CHECK(valid_in_model(sig, tab, m, f_top(tab, "s")));
  StateSymbol k{SymKind::Nominal, "k", "t"};
  CHECK(valid_in_model(sig, tab, m, f_at(k, f_nom("k", "t"), "s")));  // @_k k

  // agreement with the definitional brute force over (w, g)
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    auto f = random_formula(sig, tab, "s", 3, rng);
    bool expect = true;
    for_each_assignment(tab, m, free_state_vars(f), [&](const Assignment& g) {
      for (int w = 0; w < m.world_count("s"); ++w)
        if (!satisfies(sig, tab, m, g, {"s", w}, f)) {
          expect = false;
          return false;
        }
      return true;
    });
    CHECK(valid_in_model(sig, tab, m, f) == expect);
  }
}

TEST_CASE("frame validity") {
  auto [sig, tab] = fixture();
  Rng rng(31);

  // K instances are frame-valid on small frames; a bare prop never is
  for (int i = 0; i < 20; ++i) {
    Model frame = random_model(sig, tab, 2, rng);
    frame.prop_val.clear();
    frame.nom_val.clear();
    auto inst = random_scheme_instance(sig, tab, SchemeId::K_SIGMA_AX, 1, rng);
    REQUIRE(inst.has_value());
    auto f = instantiate_scheme(sig, tab, *inst);
    auto ok = valid_in_frame(sig, tab, frame, f);
    REQUIRE(ok.has_value());
    CHECK(*ok);
    auto bare = valid_in_frame(sig, tab, frame, f_prop("p", "s"));
    REQUIRE(bare.has_value());
    CHECK_FALSE(*bare);
  }

  // Back instances on 50 random frames
  for (int i = 0; i < 50; ++i) {
    Model frame = random_model(sig, tab, 2, rng);
    frame.prop_val.clear();
    frame.nom_val.clear();
    auto inst = random_scheme_instance(sig, tab, SchemeId::BACK, 1, rng);
    REQUIRE(inst.has_value());
    auto f = instantiate_scheme(sig, tab, *inst);
    auto ok = valid_in_frame(sig, tab, frame, f);
    if (!ok.has_value()) continue;  // enumeration budget
    CHECK(*ok);
  }

  // the budget trips on large formulas
  Rng rbig(1);
  auto big = random_formula(sig, tab, "s", 6, rbig);
  CHECK_FALSE(valid_in_frame(sig, tab, fixture_model(sig, tab), big, 4).has_value());
}

TEST_CASE("random models are deterministic and balanced") {
  auto [sig, tab] = fixture();
  Rng a(42), b(42);
  Model ma = random_model(sig, tab, 3, a);
  Model mb = random_model(sig, tab, 3, b);
  CHECK(print_model(sig, tab, ma) == print_model(sig, tab, mb));

  // single-world sorts force nominal denotations
  Rng one(7);
  Model m1 = random_model(sig, tab, 1, one);
  for (const auto& s : sig.sorts()) CHECK(m1.world_count(s) == 1);
  for (const auto& [n, w] : m1.nom_val) CHECK(w == 0);

  // Monte-Carlo: relation density near 1/2 over 1000 models
  Rng mc(123);
  uint64_t present = 0, possible = 0;
  for (int i = 0; i < 1000; ++i) {
    Model m = random_model(sig, tab, 3, mc);
    for (const auto& [op, d] : sig.operators()) {
      uint64_t cells = m.world_count(d.result_sort);
      for (const auto& s : d.arg_sorts) cells *= m.world_count(s);
      possible += cells;
      auto it = m.relations.find(op);
      if (it != m.relations.end()) present += it->second.size();
    }
  }
  double density = double(present) / double(possible);
  CHECK(density > 0.45);
  CHECK(density < 0.55);
}

TEST_CASE("dual operator clause") {
  auto [sig, tab] = fixture();
  Rng rng(55);
  for (int i = 0; i < 200; ++i) {
    Model m = random_model(sig, tab, 3, rng);
    auto a1 = random_formula(sig, tab, "t", 2, rng);
    auto a2 = random_formula(sig, tab, "s", 2, rng);
    std::set<StateSymbol> fv;
    for (const auto& v : free_state_vars(a1)) fv.insert(v);
    for (const auto& v : free_state_vars(a2)) fv.insert(v);
    Assignment g = random_assignment(m, fv, rng);

    auto box = f_box(sig, "f", {a1, a2});
    auto dia_of_negs = f_app(sig, "f", {f_neg(a1), f_neg(a2)});
    for (int w = 0; w < m.world_count("s"); ++w) {
      WorldRef wr{"s", w};
      bool b = satisfies(sig, tab, m, g, wr, box);
      // definitional expansion
      CHECK(b == !satisfies(sig, tab, m, g, wr, dia_of_negs));
      // independent quantifier reading: every related pair has some argument true
      bool all_tuples = true;
      const auto it = m.relations.find("f");
      if (it != m.relations.end()) {
        for (const auto& t : it->second) {
          if (t[0] != w) continue;
          bool some = satisfies(sig, tab, m, g, {"t", t[1]}, a1) ||
                      satisfies(sig, tab, m, g, {"s", t[2]}, a2);
          if (!some) { all_tuples = false; break; }
        }
      }
      CHECK(b == all_tuples);
      // and the diamond agrees with its direct scan
      bool dia = satisfies(sig, tab, m, g, wr, f_app(sig, "f", {a1, a2}));
      CHECK(dia == diamond_direct(sig, tab, m, g, wr, "f", {a1, a2}));
    }
  }
}

TEST_CASE("satisfaction ignores assignments outside the free variables") {
  auto [sig, tab] = fixture();
  Rng rng(77);
  for (int i = 0; i < 200; ++i) {
    Model m = random_model(sig, tab, 3, rng);
    auto f = random_formula(sig, tab, "s", 3, rng);
    auto fv = free_state_vars(f);
    Assignment g1 = random_assignment(m, fv, rng);
    Assignment g2 = g1;
    for (const auto& [name, info] : tab.entries())
      if (info.kind == SymKind::StateVar && !g2.count(name))
        g2[name] = rng.below_int(m.world_count(info.sort));
    WorldRef w{"s", rng.below_int(m.world_count("s"))};
    CHECK(satisfies(sig, tab, m, g1, w, f) == satisfies(sig, tab, m, g2, w, f));
  }
}

TEST_CASE("@ formulas are world-independent") {
  auto [sig, tab] = fixture();
  Rng rng(88);
  for (int i = 0; i < 100; ++i) {
    Model m = random_model(sig, tab, 3, rng);
    auto body = random_formula(sig, tab, "t", 3, rng);
    StateSymbol k{SymKind::Nominal, "k", "t"};
    auto at = f_at(k, body, "s");
    Assignment g = random_assignment(m, free_state_vars(at), rng);
    bool first = satisfies(sig, tab, m, g, {"s", 0}, at);
    for (int w = 1; w < m.world_count("s"); ++w)
      CHECK(satisfies(sig, tab, m, g, {"s", w}, at) == first);
  }
}

TEST_CASE("generated submodels") {
  auto [sig, tab] = fixture();
  Model m = fixture_model(sig, tab);

  // X = all worlds: the submodel is the model itself
  std::map<std::string, std::set<int>> all;
  for (const auto& [s, ids] : m.worlds)
    for (size_t i = 0; i < ids.size(); ++i) all[s].insert(static_cast<int>(i));
  Model sub = generated_submodel(sig, tab, m, all);
  CHECK(print_model(sig, tab, sub) == print_model(sig, tab, m));

  // empty relations: only the seed world survives, other sorts get padding
  Model bare = m;
  bare.relations.clear();
  Model sub1 = generated_submodel(sig, tab, bare, {{"s", {0}}});
  CHECK(sub1.worlds["s"] == std::vector<std::string>{"u0"});
  CHECK(sub1.worlds["t"] == std::vector<std::string>{"_pad_t"});
  CHECK(sub1.relations.empty());
  for (const auto& s : sig.sorts()) CHECK(sub1.world_count(s) >= 1);
  // the nominal living on a dropped world loses its valuation entry
  CHECK(sub1.nom_val.count("j"));
  CHECK_FALSE(sub1.nom_val.count("k"));
  validate_model(sig, tab, sub1);
}

TEST_CASE("model files are validated") {
  auto [sig, tab] = fixture();
  CHECK_THROWS_AS(parse_model(sig, tab, "world s u0\nrel f u0 u0 u0\n"), Error);
  CHECK_THROWS_AS(parse_model(sig, tab, "world s u0\nval pt u0\n"), Error);
  CHECK_THROWS_AS(
      parse_model(sig, tab, "world s u0\nworld t v0\nnomval k v0\nnomval k v0\n"), Error);
  CHECK_THROWS_AS(parse_model(sig, tab, "world s u0\nworld s u0\n"), Error);
  // empty sorts violate the frame invariant
  CHECK_THROWS_AS(parse_model(sig, tab, "world s u0\n"), Error);
}

TEST_CASE("context remark against the generated-submodel oracle") {
  auto [sig, tab] = fixture();
  Rng rng(99);
  for (int i = 0; i < 200; ++i) {
    Model m = random_model(sig, tab, 3, rng);
    auto eta = random_nomc_context(sig, rng.coin() ? "s" : "t", 3, rng);
    auto phi = random_formula(sig, tab, hole_sort(eta), 2, rng);
    Assignment g = random_assignment(m, free_state_vars(phi), rng);
    WorldRef w{eta->sort, rng.below_int(m.world_count(eta->sort))};
    RemarkCheck r = check_context_remark(sig, tab, m, g, w, eta, phi);
    INFO(r.detail);
    CHECK(r.ok);
  }
}

TEST_CASE("substitution lemma: naming a world agrees with assigning it") {
  // M,g[x:=v],w |= f  iff  M,g,w |= f[j/x] when j is a fresh nominal for v
  auto [sig, tab] = fixture();
  SymbolTable tab2 = tab;
  tab2.add(SymKind::Nominal, "jfresh", "s");
  StateSymbol x{SymKind::StateVar, "x", "s"};
  StateSymbol j{SymKind::Nominal, "jfresh", "s"};
  Rng rng(314);
  int used = 0;
  for (int i = 0; i < 300; ++i) {
    Model m = random_model(sig, tab, 3, rng);
    auto f = random_formula(sig, tab, "s", 3, rng);
    if (!free_state_vars(f).count(x)) continue;
    auto sub = substitute(f, x, j);
    REQUIRE(sub.has_value());  // nominals are always substitutable
    ++used;
    int v = rng.below_int(m.world_count("s"));
    Model m2 = m;
    m2.nom_val["jfresh"] = v;
    std::set<StateSymbol> fv = free_state_vars(f);
    fv.erase(x);
    Assignment g = random_assignment(m, fv, rng);
    Assignment gx = g;
    gx["x"] = v;
    WorldRef w{"s", rng.below_int(m.world_count("s"))};
    CHECK(satisfies(sig, tab, m, gx, w, f) == satisfies(sig, tab2, m2, g, w, *sub));
  }
  CHECK(used > 50);
}

TEST_CASE("truth of nominal-free formulas survives generated submodels") {
  auto [sig, tab] = fixture();
  Rng rng(2718);
  // propositional-modal formulas only: their truth at w depends only on the
  // submodel generated by {w}
  std::function<FormulaPtr(const std::string&, int)> gen =
      [&](const std::string& sort, int depth) -> FormulaPtr {
    std::vector<std::string> props = tab.names_of(SymKind::Prop, sort);
    if (depth <= 0 || rng.below_int(4) == 0)
      return f_prop(props[rng.below(props.size())], sort);
    switch (rng.below_int(3)) {
      case 0: return f_neg(gen(sort, depth - 1));
      case 1: {
        auto a = gen(sort, depth - 1);
        return f_or(a, gen(sort, depth - 1));
      }
      default: {
        std::vector<const OperatorDecl*> ops;
        for (const auto& [name, d] : sig.operators())
          if (d.result_sort == sort) ops.push_back(&d);
        if (ops.empty()) return f_prop(props[rng.below(props.size())], sort);
        const OperatorDecl* d = ops[rng.below(ops.size())];
        std::vector<FormulaPtr> args;
        for (const auto& as : d->arg_sorts) args.push_back(gen(as, depth - 1));
        return f_app(sig, d->name, std::move(args));
      }
    }
  };
  for (int i = 0; i < 200; ++i) {
    Model m = random_model(sig, tab, 3, rng);
    std::string sort = rng.coin() ? "s" : "t";
    auto f = gen(sort, 4);
    WorldRef w{sort, rng.below_int(m.world_count(sort))};
    Model sub = generated_submodel(sig, tab, m, {{sort, {w.index}}});
    int wi = sub.world_index(sort, m.world_id(w));
    REQUIRE(wi >= 0);
    CHECK(satisfies(sig, tab, m, {}, w, f) ==
          satisfies(sig, tab, sub, {}, WorldRef{sort, wi}, f));
  }
}

TEST_CASE("soundness sweeps come back clean") {
  SweepOptions opt;
  opt.trials = 120;
  opt.seed = 0;
  for (SchemeId id : {SchemeId::SELFDUAL, SchemeId::BARCAN, SchemeId::NOM, SchemeId::Q2}) {
    SweepReport r = soundness_sweep(id, opt);
    INFO(r.scheme);
    CHECK(r.clean());
    CHECK(r.skipped == 0);
  }
}

TEST_CASE("negative control finds a counterexample") {
  // the hand-built two-world witness falsifies @_z phi -> phi directly
  WitnessCase w = negative_control_witness();
  CHECK_FALSE(satisfies(w.sig, w.tab, w.model, w.assignment, w.world, w.instance));
  CHECK_FALSE(valid_in_model(w.sig, w.tab, w.model, w.instance));

  SweepOptions opt;
  opt.trials = 1000;
  SweepReport r = negative_control_sweep(opt);
  CHECK_FALSE(r.clean());
}

TEST_CASE("sweep reports are deterministic") {
  SweepOptions opt;
  opt.trials = 50;
  opt.seed = 9;
  SweepReport a = soundness_sweep(SchemeId::AGREE, opt);
  SweepReport b = soundness_sweep(SchemeId::AGREE, opt);
  CHECK(a.counterexamples.size() == b.counterexamples.size());
  CHECK(a.clean());
}
