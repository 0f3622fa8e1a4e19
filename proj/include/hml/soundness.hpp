// Randomized axiom-soundness testing: instantiate a scheme with random
// well-sorted formulas over a random small vocabulary, evaluate the instance
// on a random model, and report every falsification.  Sound schemes are
// expected to come back clean; the deliberately broken control scheme is
// expected to fall over quickly.

#pragma once

#include "hml/eval.hpp"
#include "hml/random.hpp"
#include "hml/schemes.hpp"

namespace hml {

// Trials draw from independent per-trial seed streams, so reports are the
// same under any execution order; counterexamples are listed by trial index.
struct SweepOptions {
  int trials = 1000;
  uint64_t seed = 0;
  int max_worlds = 3;
  int depth = 3;
};

struct SweepCounterexample {
  int trial = 0;
  std::string vocabulary;  // .sig text
  std::string model;       // .mdl text
  std::string instance;    // formula text
  std::string world;
  std::string assignment;
};

struct SweepReport {
  std::string scheme;
  int trials = 0;
  int skipped = 0;  // trials where no side-condition-satisfying instance was found
  std::vector<SweepCounterexample> counterexamples;

  bool clean() const { return counterexamples.empty(); }
};

// Draws a scheme instance over the given vocabulary; respects every scheme
// side condition.  Returns nullopt when the vocabulary cannot host one.
std::optional<SchemeInstance> random_scheme_instance(const Signature& sig, const SymbolTable& tab,
                                                     SchemeId scheme, int depth, Rng& rng);

SweepReport soundness_sweep(SchemeId scheme, const SweepOptions& opt);

// The non-scheme @_z phi -> phi; counterexamples are the expected outcome.
SweepReport negative_control_sweep(const SweepOptions& opt);

// A hand-built two-world witness falsifying @_z phi -> phi, with the
// falsified instance; used to check the sweep against a known answer.
struct WitnessCase {
  Signature sig;
  SymbolTable tab;
  Model model;
  FormulaPtr instance;
  WorldRef world;
  Assignment assignment;
};
WitnessCase negative_control_witness();

}  // namespace hml
