// Many-sorted signatures and symbol tables.
//
// A signature declares sorts and sorted operator symbols; a symbol table
// declares the atomic vocabulary (propositions, nominals, state variables),
// each attached to one sort.  Atom names are globally unique so that a bare
// identifier in formula text resolves without annotations.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hml {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct OperatorDecl {
  std::string name;
  std::vector<std::string> arg_sorts;  // may be empty: 0-ary operators are allowed
  std::string result_sort;

  int arity() const { return static_cast<int>(arg_sorts.size()); }
};

class Signature {
 public:
  void add_sort(const std::string& name);
  void add_operator(OperatorDecl decl);

  bool has_sort(const std::string& name) const { return sort_set_.count(name) > 0; }
  const OperatorDecl* find_operator(const std::string& name) const;
  const OperatorDecl& operator_at(const std::string& name) const;  // throws on unknown name

  const std::vector<std::string>& sorts() const { return sorts_; }
  const std::map<std::string, OperatorDecl>& operators() const { return ops_; }

 private:
  std::vector<std::string> sorts_;  // declaration order
  std::set<std::string> sort_set_;
  std::map<std::string, OperatorDecl> ops_;
};

enum class SymKind { Prop, Nominal, StateVar };

const char* sym_kind_name(SymKind k);

// A nominal or a state variable (the subscripts of @ and the subjects of
// binders).  Propositions never appear as state symbols.
struct StateSymbol {
  SymKind kind = SymKind::Nominal;
  std::string name;
  std::string sort;

  bool operator==(const StateSymbol& o) const {
    return kind == o.kind && name == o.name && sort == o.sort;
  }
  bool operator!=(const StateSymbol& o) const { return !(*this == o); }
  bool operator<(const StateSymbol& o) const {
    if (name != o.name) return name < o.name;
    if (sort != o.sort) return sort < o.sort;
    return static_cast<int>(kind) < static_cast<int>(o.kind);
  }
};

class SymbolTable {
 public:
  struct Info {
    SymKind kind;
    std::string sort;
  };

  void add(SymKind kind, const std::string& name, const std::string& sort);

  std::optional<Info> lookup(const std::string& name) const;
  bool has(SymKind kind, const std::string& name, const std::string& sort) const;

  const std::map<std::string, Info>& entries() const { return entries_; }
  std::vector<std::string> names_of(SymKind kind, const std::string& sort) const;
  std::vector<StateSymbol> state_symbols_of(const std::string& sort) const;

  // The atom used to spell out the true:/false: constants of a sort
  // (first proposition in name order, then nominals, then state variables).
  std::optional<std::pair<SymKind, std::string>> canonical_atom(const std::string& sort) const;

 private:
  std::map<std::string, Info> entries_;  // atom names are globally unique
};

}  // namespace hml
