// Finite sorted Kripke models: worlds per sort, one (n+1)-ary relation per
// operator, a valuation for propositions and nominals, and an optional
// default assignment for state variables.
//
// Model file grammar (.mdl), one directive per line, '#' comments:
//   world SORT ID
//   rel OP W W1 ... Wn
//   val PROP W
//   nomval NOM W
//   assign SVAR W

#pragma once

#include <map>

#include "hml/formula.hpp"

namespace hml {

struct WorldRef {
  std::string sort;
  int index = -1;

  bool operator==(const WorldRef& o) const { return sort == o.sort && index == o.index; }
  bool operator<(const WorldRef& o) const {
    return sort != o.sort ? sort < o.sort : index < o.index;
  }
};

// State-variable assignment: svar name -> world index (sorts live in the
// symbol table).
using Assignment = std::map<std::string, int>;

class Model {
 public:
  // sort -> world ids, in declaration order
  std::map<std::string, std::vector<std::string>> worlds;
  // operator -> tuples (head index, arg indices); sorts come from the operator
  std::map<std::string, std::vector<std::vector<int>>> relations;
  // prop -> set of world indices of the prop's sort
  std::map<std::string, std::set<int>> prop_val;
  // nominal -> world index (singletons by construction)
  std::map<std::string, int> nom_val;
  Assignment default_assignment;

  int world_count(const std::string& sort) const;
  int world_index(const std::string& sort, const std::string& id) const;  // -1 when absent
  const std::string& world_id(const WorldRef& w) const;
  bool has_world(const WorldRef& w) const;
};

// Validates sort-correctness of every tuple and valuation entry, nonempty
// world sets, and singleton nominal interpretations.  Throws Error.
void validate_model(const Signature& sig, const SymbolTable& tab, const Model& m);

Model parse_model(const Signature& sig, const SymbolTable& tab, std::string_view text);
Model load_model_file(const Signature& sig, const SymbolTable& tab, const std::string& path);
std::string print_model(const Signature& sig, const SymbolTable& tab, const Model& m);

}  // namespace hml
