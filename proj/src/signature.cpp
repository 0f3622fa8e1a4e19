#include "hml/signature.hpp"

namespace hml {

void Signature::add_sort(const std::string& name) {
  if (name.empty()) throw Error("empty sort name");
  if (sort_set_.count(name)) throw Error("duplicate sort: " + name);
  sorts_.push_back(name);
  sort_set_.insert(name);
}

void Signature::add_operator(OperatorDecl decl) {
  if (decl.name.empty()) throw Error("empty operator name");
  if (ops_.count(decl.name)) throw Error("duplicate operator: " + decl.name);
  if (!has_sort(decl.result_sort))
    throw Error("operator " + decl.name + ": undeclared result sort " + decl.result_sort);
  for (const auto& s : decl.arg_sorts)
    if (!has_sort(s)) throw Error("operator " + decl.name + ": undeclared argument sort " + s);
  ops_.emplace(decl.name, std::move(decl));
}

const OperatorDecl* Signature::find_operator(const std::string& name) const {
  auto it = ops_.find(name);
  return it == ops_.end() ? nullptr : &it->second;
}

const OperatorDecl& Signature::operator_at(const std::string& name) const {
  const OperatorDecl* d = find_operator(name);
  if (!d) throw Error("unknown operator: " + name);
  return *d;
}

const char* sym_kind_name(SymKind k) {
  switch (k) {
    case SymKind::Prop: return "prop";
    case SymKind::Nominal: return "nom";
    case SymKind::StateVar: return "svar";
  }
  return "?";
}

void SymbolTable::add(SymKind kind, const std::string& name, const std::string& sort) {
  if (name.empty()) throw Error("empty symbol name");
  auto it = entries_.find(name);
  if (it != entries_.end())
    throw Error("duplicate symbol: " + name + " (already a " +
                sym_kind_name(it->second.kind) + " of sort " + it->second.sort + ")");
  entries_.emplace(name, Info{kind, sort});
}

std::optional<SymbolTable::Info> SymbolTable::lookup(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool SymbolTable::has(SymKind kind, const std::string& name, const std::string& sort) const {
  auto info = lookup(name);
  return info && info->kind == kind && info->sort == sort;
}

std::vector<std::string> SymbolTable::names_of(SymKind kind, const std::string& sort) const {
  std::vector<std::string> out;
  for (const auto& [name, info] : entries_)
    if (info.kind == kind && info.sort == sort) out.push_back(name);
  return out;
}

std::vector<StateSymbol> SymbolTable::state_symbols_of(const std::string& sort) const {
  std::vector<StateSymbol> out;
  for (const auto& [name, info] : entries_)
    if (info.sort == sort && (info.kind == SymKind::Nominal || info.kind == SymKind::StateVar))
      out.push_back(StateSymbol{info.kind, name, sort});
  return out;
}

std::optional<std::pair<SymKind, std::string>> SymbolTable::canonical_atom(
    const std::string& sort) const {
  for (SymKind k : {SymKind::Prop, SymKind::Nominal, SymKind::StateVar}) {
    for (const auto& [name, info] : entries_)
      if (info.kind == k && info.sort == sort) return std::make_pair(k, name);
  }
  return std::nullopt;
}

}  // namespace hml
