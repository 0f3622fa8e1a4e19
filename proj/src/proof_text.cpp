#include "hml/proof_text.hpp"

#include <fstream>
#include <sstream>

namespace hml {

namespace {

enum class BindType { Formula, Symbol, Sort, Op, Int, Ctx };

// Binding value types are determined by the key, uniformly across schemes.
BindType bind_type(const std::string& key) {
  if (key == "op") return BindType::Op;
  if (key == "pos") return BindType::Int;
  if (key == "s") return BindType::Sort;
  if (key == "x" || key == "y" || key == "z") return BindType::Symbol;
  if (key == "eta" || key == "theta") return BindType::Ctx;
  return BindType::Formula;
}

struct LineScanner {
  const std::string& text;
  size_t pos = 0;
  int lineno;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("proof line " + std::to_string(lineno) + ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  std::string word() {
    skip_ws();
    size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '{' && text[pos] != '}' && text[pos] != ';' && text[pos] != '=')
      ++pos;
    if (pos == start) fail("expected a token");
    return text.substr(start, pos - start);
  }
  std::string quoted() {
    skip_ws();
    if (pos >= text.size() || text[pos] != '"') fail("expected a quoted string");
    size_t start = ++pos;
    while (pos < text.size() && text[pos] != '"') ++pos;
    if (pos >= text.size()) fail("unterminated quote");
    return text.substr(start, pos++ - start);
  }
  bool peek(char c) {
    skip_ws();
    return pos < text.size() && text[pos] == c;
  }
  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  int integer() {
    std::string w = word();
    try {
      return std::stoi(w);
    } catch (...) {
      fail("expected an integer, got " + w);
    }
  }
};

StateSymbol lookup_symbol(const SymbolTable& tab, const std::string& name, LineScanner& sc) {
  auto info = tab.lookup(name);
  if (!info || info->kind == SymKind::Prop) sc.fail("not a state symbol: " + name);
  return StateSymbol{info->kind, name, info->sort};
}

std::map<std::string, Binding> parse_bindings(const Signature& sig, const SymbolTable& tab,
                                              LineScanner& sc, bool theory_params) {
  std::map<std::string, Binding> out;
  sc.expect('{');
  while (!sc.peek('}')) {
    std::string key = sc.word();
    sc.expect('=');
    if (sc.peek('"')) {
      std::string body = sc.quoted();
      if (!theory_params && bind_type(key) == BindType::Ctx)
        out[key] = parse_context(sig, body);
      else
        out[key] = parse_formula(sig, tab, body);
    } else {
      std::string v = sc.word();
      if (theory_params) {
        // bare theory params: integers stay integers, anything else is a name
        bool num = !v.empty() && (std::isdigit(static_cast<unsigned char>(v[0])) || v[0] == '-');
        if (num)
          out[key] = std::stoi(v);
        else
          out[key] = v;
      } else {
        switch (bind_type(key)) {
          case BindType::Int: out[key] = std::stoi(v); break;
          case BindType::Symbol: out[key] = lookup_symbol(tab, v, sc); break;
          default: out[key] = v; break;  // sort or operator name
        }
      }
    }
    if (sc.peek(';')) sc.expect(';');
  }
  sc.expect('}');
  return out;
}

Justification parse_just(const Signature& sig, const SymbolTable& tab, LineScanner& sc) {
  Justification j;
  std::string kw = sc.word();
  if (kw == "hyp") {
    j.kind = Justification::Hypothesis;
    j.name = sc.word();
  } else if (kw == "ax") {
    j.kind = Justification::Axiom;
    std::string name = sc.word();
    auto id = scheme_by_name(name);
    if (!id) sc.fail("unknown scheme: " + name);
    j.scheme.scheme = *id;
    if (sc.peek('{')) j.scheme.bind = parse_bindings(sig, tab, sc, false);
  } else if (kw == "thax") {
    j.kind = Justification::TheoryAxiom;
    j.name = sc.word();
    if (sc.peek('{')) j.params = parse_bindings(sig, tab, sc, true);
  } else if (kw == "mp") {
    j.kind = Justification::MP;
    j.i = sc.integer();
    j.j = sc.integer();
  } else if (kw == "ug") {
    j.kind = Justification::UG;
    j.op = sc.word();
    j.pos = sc.integer();
    j.i = sc.integer();
    while (sc.peek('"')) j.sides.push_back(parse_formula(sig, tab, sc.quoted()));
  } else if (kw == "gen") {
    j.kind = Justification::GEN;
    j.sym = lookup_symbol(tab, sc.word(), sc);
    j.i = sc.integer();
  } else if (kw == "genat") {
    j.kind = Justification::GEN_AT;
    j.sym = lookup_symbol(tab, sc.word(), sc);
    j.i = sc.integer();
  } else if (kw == "bcast") {
    j.kind = Justification::BROADCAST;
    j.sort = sc.word();
    j.i = sc.integer();
  } else if (kw == "paste0" || kw == "paste1") {
    j.kind = kw == "paste0" ? Justification::PASTE0 : Justification::PASTE1;
    j.sym = lookup_symbol(tab, sc.word(), sc);
    j.i = sc.integer();
  } else {
    sc.fail("unknown justification: " + kw);
  }
  return j;
}

std::string print_binding(const Binding& b) {
  if (const auto* f = std::get_if<FormulaPtr>(&b)) return '"' + print_formula(*f) + '"';
  if (const auto* z = std::get_if<StateSymbol>(&b)) return z->name;
  if (const auto* s = std::get_if<std::string>(&b)) return *s;
  if (const auto* i = std::get_if<int>(&b)) return std::to_string(*i);
  if (const auto* c = std::get_if<ContextPtr>(&b)) return '"' + print_context(*c) + '"';
  return "?";
}

std::string print_bindings(const std::map<std::string, Binding>& bind) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : bind) {
    if (!first) out += "; ";
    first = false;
    out += k + "=" + print_binding(v);
  }
  return out + "}";
}

std::string print_just(const Justification& j) {
  switch (j.kind) {
    case Justification::Hypothesis: return "hyp " + j.name;
    case Justification::Axiom: {
      std::string out = std::string("ax ") + scheme_name(j.scheme.scheme);
      if (!j.scheme.bind.empty()) out += " " + print_bindings(j.scheme.bind);
      return out;
    }
    case Justification::TheoryAxiom: {
      std::string out = "thax " + j.name;
      if (!j.params.empty()) out += " " + print_bindings(j.params);
      return out;
    }
    case Justification::MP:
      return "mp " + std::to_string(j.i) + " " + std::to_string(j.j);
    case Justification::UG: {
      std::string out = "ug " + j.op + " " + std::to_string(j.pos) + " " + std::to_string(j.i);
      for (const auto& s : j.sides) out += " \"" + print_formula(s) + '"';
      return out;
    }
    case Justification::GEN: return "gen " + j.sym.name + " " + std::to_string(j.i);
    case Justification::GEN_AT: return "genat " + j.sym.name + " " + std::to_string(j.i);
    case Justification::BROADCAST: return "bcast " + j.sort + " " + std::to_string(j.i);
    case Justification::PASTE0: return "paste0 " + j.sym.name + " " + std::to_string(j.i);
    case Justification::PASTE1: return "paste1 " + j.sym.name + " " + std::to_string(j.i);
  }
  return "?";
}

}  // namespace

ProofDoc parse_proof(const Signature& sig, const SymbolTable& tab, std::string_view text) {
  ProofDoc doc;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  int pending_milestone = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // strip comments, but keep milestone tags
    if (size_t hash = line.find('#'); hash != std::string::npos) {
      std::istringstream cs(line.substr(hash + 1));
      std::string kw;
      int k;
      if (cs >> kw >> k && kw == "milestone") pending_milestone = k;
      line = line.substr(0, hash);
    }
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    LineScanner sc{line, 0, lineno};
    std::string first = sc.word();
    if (first == "hyp") {
      std::string name = sc.word();
      FormulaPtr f = parse_formula(sig, tab, sc.quoted());
      doc.hypotheses.emplace_back(name, f);
      continue;
    }
    ProofLine ln;
    try {
      ln.index = std::stoi(first);
    } catch (...) {
      sc.fail("expected a line number or 'hyp', got " + first);
    }
    ln.sort = sc.word();
    ln.formula = parse_formula(sig, tab, sc.quoted());
    ln.just = parse_just(sig, tab, sc);
    if (!sc.done()) sc.fail("trailing input");
    if (pending_milestone) {
      doc.milestones[pending_milestone] = ln.index;
      pending_milestone = 0;
    }
    doc.lines.push_back(std::move(ln));
  }
  return doc;
}

ProofDoc load_proof_file(const Signature& sig, const SymbolTable& tab, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open proof file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_proof(sig, tab, buf.str());
}

std::string print_proof(const ProofDoc& doc) {
  std::string out;
  for (const auto& [name, f] : doc.hypotheses)
    out += "hyp " + name + " \"" + print_formula(f) + "\"\n";
  std::map<int, int> line_to_milestone;
  for (const auto& [k, idx] : doc.milestones) line_to_milestone[idx] = k;
  for (const auto& ln : doc.lines) {
    if (auto it = line_to_milestone.find(ln.index); it != line_to_milestone.end())
      out += "# milestone " + std::to_string(it->second) + "\n";
    out += std::to_string(ln.index) + " " + ln.sort + " \"" + print_formula(ln.formula) + "\" " +
           print_just(ln.just) + "\n";
  }
  return out;
}

}  // namespace hml
