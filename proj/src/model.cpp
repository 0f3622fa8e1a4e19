#include "hml/model.hpp"

#include <fstream>
#include <sstream>

namespace hml {

int Model::world_count(const std::string& sort) const {
  auto it = worlds.find(sort);
  return it == worlds.end() ? 0 : static_cast<int>(it->second.size());
}

int Model::world_index(const std::string& sort, const std::string& id) const {
  auto it = worlds.find(sort);
  if (it == worlds.end()) return -1;
  for (size_t i = 0; i < it->second.size(); ++i)
    if (it->second[i] == id) return static_cast<int>(i);
  return -1;
}

const std::string& Model::world_id(const WorldRef& w) const {
  return worlds.at(w.sort).at(static_cast<size_t>(w.index));
}

bool Model::has_world(const WorldRef& w) const {
  return w.index >= 0 && w.index < world_count(w.sort);
}

void validate_model(const Signature& sig, const SymbolTable& tab, const Model& m) {
  for (const auto& s : sig.sorts())
    if (m.world_count(s) == 0) throw Error("model: empty world set for sort " + s);
  for (const auto& [sort, ids] : m.worlds) {
    if (!sig.has_sort(sort)) throw Error("model: undeclared sort " + sort);
    std::set<std::string> seen;
    for (const auto& id : ids)
      if (!seen.insert(id).second) throw Error("model: duplicate world " + id + " in sort " + sort);
  }
  for (const auto& [op, tuples] : m.relations) {
    const OperatorDecl* d = sig.find_operator(op);
    if (!d) throw Error("model: relation for undeclared operator " + op);
    for (const auto& t : tuples) {
      if (static_cast<int>(t.size()) != d->arity() + 1)
        throw Error("model: relation " + op + " tuple of wrong width");
      if (t[0] < 0 || t[0] >= m.world_count(d->result_sort))
        throw Error("model: relation " + op + " head out of range");
      for (int i = 0; i < d->arity(); ++i)
        if (t[i + 1] < 0 || t[i + 1] >= m.world_count(d->arg_sorts[i]))
          throw Error("model: relation " + op + " component out of range");
    }
  }
  for (const auto& [p, ws] : m.prop_val) {
    auto info = tab.lookup(p);
    if (!info || info->kind != SymKind::Prop) throw Error("model: valuation for non-prop " + p);
    for (int w : ws)
      if (w < 0 || w >= m.world_count(info->sort)) throw Error("model: valuation of " + p + " out of range");
  }
  for (const auto& [n, w] : m.nom_val) {
    auto info = tab.lookup(n);
    if (!info || info->kind != SymKind::Nominal) throw Error("model: nomval for non-nominal " + n);
    if (w < 0 || w >= m.world_count(info->sort)) throw Error("model: nomval of " + n + " out of range");
  }
  for (const auto& [x, w] : m.default_assignment) {
    auto info = tab.lookup(x);
    if (!info || info->kind != SymKind::StateVar) throw Error("model: assign for non-svar " + x);
    if (w < 0 || w >= m.world_count(info->sort)) throw Error("model: assign of " + x + " out of range");
  }
}

Model parse_model(const Signature& sig, const SymbolTable& tab, std::string_view text) {
  Model m;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error("model line " + std::to_string(lineno) + ": " + msg);
  };
  auto world_of = [&](const std::string& sort, const std::string& id) {
    int w = m.world_index(sort, id);
    if (w < 0) fail("unknown world " + id + " of sort " + sort);
    return w;
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> w;
    {
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) {
        if (tok[0] == '#') break;
        w.push_back(tok);
      }
    }
    if (w.empty()) continue;
    if (w[0] == "world") {
      if (w.size() != 3) fail("expected: world SORT ID");
      if (!sig.has_sort(w[1])) fail("undeclared sort " + w[1]);
      m.worlds[w[1]].push_back(w[2]);
    } else if (w[0] == "rel") {
      if (w.size() < 3) fail("expected: rel OP W W1 ... Wn");
      const OperatorDecl* d = sig.find_operator(w[1]);
      if (!d) fail("undeclared operator " + w[1]);
      if (static_cast<int>(w.size()) != d->arity() + 3) fail("wrong tuple width for " + w[1]);
      std::vector<int> t;
      t.push_back(world_of(d->result_sort, w[2]));
      for (int i = 0; i < d->arity(); ++i) t.push_back(world_of(d->arg_sorts[i], w[3 + i]));
      m.relations[w[1]].push_back(std::move(t));
    } else if (w[0] == "val") {
      if (w.size() != 3) fail("expected: val PROP W");
      auto info = tab.lookup(w[1]);
      if (!info || info->kind != SymKind::Prop) fail("not a proposition: " + w[1]);
      m.prop_val[w[1]].insert(world_of(info->sort, w[2]));
    } else if (w[0] == "nomval") {
      if (w.size() != 3) fail("expected: nomval NOM W");
      auto info = tab.lookup(w[1]);
      if (!info || info->kind != SymKind::Nominal) fail("not a nominal: " + w[1]);
      if (m.nom_val.count(w[1])) fail("nominal " + w[1] + " already has a denotation");
      m.nom_val[w[1]] = world_of(info->sort, w[2]);
    } else if (w[0] == "assign") {
      if (w.size() != 3) fail("expected: assign SVAR W");
      auto info = tab.lookup(w[1]);
      if (!info || info->kind != SymKind::StateVar) fail("not a state variable: " + w[1]);
      m.default_assignment[w[1]] = world_of(info->sort, w[2]);
    } else {
      fail("unknown directive: " + w[0]);
    }
  }
  validate_model(sig, tab, m);
  return m;
}

Model load_model_file(const Signature& sig, const SymbolTable& tab, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open model file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(sig, tab, buf.str());
}

std::string print_model(const Signature& sig, const SymbolTable& tab, const Model& m) {
  std::string out;
  for (const auto& s : sig.sorts()) {
    auto it = m.worlds.find(s);
    if (it == m.worlds.end()) continue;
    for (const auto& id : it->second) out += "world " + s + " " + id + "\n";
  }
  for (const auto& [op, tuples] : m.relations) {
    const OperatorDecl& d = sig.operator_at(op);
    for (const auto& t : tuples) {
      out += "rel " + op + " " + m.worlds.at(d.result_sort)[t[0]];
      for (int i = 0; i < d.arity(); ++i)
        out += " " + m.worlds.at(d.arg_sorts[i])[t[i + 1]];
      out += "\n";
    }
  }
  for (const auto& [p, ws] : m.prop_val)
    for (int w : ws) out += "val " + p + " " + m.worlds.at(tab.lookup(p)->sort)[w] + "\n";
  for (const auto& [n, w] : m.nom_val)
    out += "nomval " + n + " " + m.worlds.at(tab.lookup(n)->sort)[w] + "\n";
  for (const auto& [x, w] : m.default_assignment)
    out += "assign " + x + " " + m.worlds.at(tab.lookup(x)->sort)[w] + "\n";
  return out;
}

}  // namespace hml
