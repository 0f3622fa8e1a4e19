#include "hml/submodel.hpp"

#include <deque>

#include "hml/eval.hpp"

namespace hml {

std::map<std::string, std::set<int>> reachable_worlds(
    const Signature& sig, const Model& m, const std::map<std::string, std::set<int>>& x) {
  std::map<std::string, std::set<int>> out = x;
  std::deque<WorldRef> queue;
  for (const auto& [sort, ws] : x)
    for (int w : ws) queue.push_back(WorldRef{sort, w});
  while (!queue.empty()) {
    WorldRef w = queue.front();
    queue.pop_front();
    for (const auto& [op, tuples] : m.relations) {
      const OperatorDecl& d = sig.operator_at(op);
      if (d.result_sort != w.sort) continue;
      for (const auto& t : tuples) {
        if (t[0] != w.index) continue;
        for (int i = 0; i < d.arity(); ++i) {
          WorldRef c{d.arg_sorts[i], t[i + 1]};
          if (out[c.sort].insert(c.index).second) queue.push_back(c);
        }
      }
    }
  }
  return out;
}

Model generated_submodel(const Signature& sig, const SymbolTable& tab, const Model& m,
                         const std::map<std::string, std::set<int>>& x) {
  auto keep = reachable_worlds(sig, m, x);
  Model out;
  // old index -> new index, per sort
  std::map<std::string, std::map<int, int>> remap;
  for (const auto& s : sig.sorts()) {
    auto it = keep.find(s);
    if (it != keep.end()) {
      for (int w : it->second) {
        remap[s][w] = static_cast<int>(out.worlds[s].size());
        out.worlds[s].push_back(m.worlds.at(s)[w]);
      }
    }
    if (out.worlds[s].empty()) out.worlds[s].push_back("_pad_" + s);  // keeps W_s nonempty
  }
  for (const auto& [op, tuples] : m.relations) {
    const OperatorDecl& d = sig.operator_at(op);
    for (const auto& t : tuples) {
      auto head = remap[d.result_sort].find(t[0]);
      if (head == remap[d.result_sort].end()) continue;
      std::vector<int> nt;
      nt.push_back(head->second);
      bool ok = true;
      for (int i = 0; i < d.arity() && ok; ++i) {
        auto c = remap[d.arg_sorts[i]].find(t[i + 1]);
        if (c == remap[d.arg_sorts[i]].end()) ok = false;  // cannot happen after closure
        else nt.push_back(c->second);
      }
      if (ok) out.relations[op].push_back(std::move(nt));
    }
  }
  for (const auto& [p, ws] : m.prop_val) {
    const std::string& s = tab.lookup(p)->sort;
    for (int w : ws) {
      auto it = remap[s].find(w);
      if (it != remap[s].end()) out.prop_val[p].insert(it->second);
    }
  }
  for (const auto& [n, w] : m.nom_val) {
    const std::string& s = tab.lookup(n)->sort;
    auto it = remap[s].find(w);
    if (it != remap[s].end()) out.nom_val[n] = it->second;
  }
  for (const auto& [v, w] : m.default_assignment) {
    const std::string& s = tab.lookup(v)->sort;
    auto it = remap[s].find(w);
    if (it != remap[s].end()) out.default_assignment[v] = it->second;
  }
  return out;
}

std::optional<ContextPtr> path_context(const Signature& sig, const Model& m, const WorldRef& from,
                                       const WorldRef& to) {
  struct Edge {
    WorldRef parent;
    std::string op;
    int pos;
  };
  std::map<WorldRef, Edge> parent;
  std::set<WorldRef> seen{from};
  std::deque<WorldRef> queue{from};
  while (!queue.empty()) {
    WorldRef w = queue.front();
    queue.pop_front();
    if (w == to) break;
    for (const auto& [op, tuples] : m.relations) {
      const OperatorDecl& d = sig.operator_at(op);
      if (d.result_sort != w.sort) continue;
      for (const auto& t : tuples) {
        if (t[0] != w.index) continue;
        for (int i = 0; i < d.arity(); ++i) {
          WorldRef c{d.arg_sorts[i], t[i + 1]};
          if (seen.insert(c).second) {
            parent[c] = Edge{w, op, i};
            queue.push_back(c);
          }
        }
      }
    }
  }
  if (!seen.count(to)) return std::nullopt;
  ContextPtr ctx = c_hole(to.sort);
  WorldRef cur = to;
  while (!(cur == from)) {
    const Edge& e = parent.at(cur);
    const OperatorDecl& d = sig.operator_at(e.op);
    std::vector<ContextPtr> kids;
    for (int i = 0; i < d.arity(); ++i)
      kids.push_back(i == e.pos ? ctx : c_top(d.arg_sorts[i]));
    ctx = c_op(sig, e.op, std::move(kids));
    cur = e.parent;
  }
  return ctx;
}

RemarkCheck check_context_remark(const Signature& sig, const SymbolTable& tab, const Model& m,
                                 const Assignment& g, const WorldRef& w, const ContextPtr& eta,
                                 const FormulaPtr& phi) {
  const std::string hs = hole_sort(eta);
  if (phi->sort != hs) throw Error("check_context_remark: formula sort vs hole sort");
  auto reach = reachable_worlds(sig, m, {{w.sort, {w.index}}});

  std::optional<WorldRef> sat, unsat;
  for (int v : reach[hs]) {
    WorldRef wr{hs, v};
    if (satisfies(sig, tab, m, g, wr, phi)) {
      if (!sat) sat = wr;
    } else if (!unsat) {
      unsat = wr;
    }
  }

  bool eta_holds = satisfies(sig, tab, m, g, w, apply_context(sig, tab, eta, phi));
  if (eta_holds && !sat)
    return {false, "eta(phi) holds but no submodel world satisfies phi"};
  bool dual_holds = satisfies(sig, tab, m, g, w, apply_context_dual(sig, tab, eta, phi));
  if (!unsat && !dual_holds)
    return {false, "phi holds across the submodel but eta_box(phi) fails"};

  // Constructive converses along the discovered paths.
  if (sat) {
    auto path = path_context(sig, m, w, *sat);
    if (!path) return {false, "satisfying submodel world is unreachable"};
    if (!satisfies(sig, tab, m, g, w, apply_context(sig, tab, *path, phi)))
      return {false, "path context fails to witness the satisfying world"};
  }
  if (unsat) {
    auto path = path_context(sig, m, w, *unsat);
    if (!path) return {false, "refuting submodel world is unreachable"};
    if (satisfies(sig, tab, m, g, w, apply_context_dual(sig, tab, *path, phi)))
      return {false, "path context fails to refute the universal form"};
  }
  return {true, ""};
}

}  // namespace hml
