// Seeded generation of signatures, models, formulas and contexts.
//
// All draws go through a splitmix64 stream, so a run is reproduced bit-exactly
// by its seed on any platform.

#pragma once

#include <cstdint>

#include "hml/context.hpp"
#include "hml/model.hpp"

namespace hml {

class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // Uniform in [0, n).
  uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
  int below_int(int n) { return static_cast<int>(below(static_cast<uint64_t>(n))); }
  bool coin() { return (next() & 1) != 0; }
  // Independent substream; tags keep trial streams decoupled.
  Rng fork(uint64_t tag) {
    uint64_t s = state_ ^ (0x632be59bd9b4e019ull * (tag + 1));
    Rng r(s);
    r.next();
    return r;
  }

 private:
  uint64_t state_;
};

// Worlds per sort drawn uniformly from 1..max_worlds; each relation tuple kept
// with probability 1/2, each prop/world membership with probability 1/2,
// nominal denotations uniform.
Model random_model(const Signature& sig, const SymbolTable& tab, int max_worlds, Rng& rng);

// Random assignment covering the given state variables.
Assignment random_assignment(const Model& m, const std::set<StateSymbol>& vars, Rng& rng);

// Small vocabulary for sweep trials: 1..3 sorts, a handful of operators
// (always at least one with arity >= 1), and two props/noms/svars per sort.
std::pair<Signature, SymbolTable> random_vocabulary(Rng& rng);

// Random well-sorted formula of the given sort with depth <= depth.
FormulaPtr random_formula(const Signature& sig, const SymbolTable& tab, const std::string& sort,
                          int depth, Rng& rng);
// As above but never mentions the given state variable (used for freshness
// side conditions).
FormulaPtr random_formula_avoiding(const Signature& sig, const SymbolTable& tab,
                                   const std::string& sort, int depth, Rng& rng,
                                   const StateSymbol& avoid);

// Random NomC context of the given outer sort, depth <= depth; returns null
// when the signature has no operator producing that sort (caller falls back
// to a bare hole).
ContextPtr random_nomc_context(const Signature& sig, const std::string& sort, int depth, Rng& rng);

}  // namespace hml
