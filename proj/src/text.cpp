#include "hml/text.hpp"

#include <fstream>
#include <sstream>

namespace hml {

namespace {

struct Token {
  enum Kind { LParen, RParen, Word, End } kind;
  std::string text;
  size_t pos;
};

bool is_word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '\'' || c == ':' || c == '-' || c == '>' || c == '<' || c == '@' ||
         c == '?' || c == '.' || c == '*' || c == '+' || c == '=';
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ >= text_.size()) {
      tok_ = {Token::End, "", pos_};
      return;
    }
    char c = text_[pos_];
    if (c == '(') { tok_ = {Token::LParen, "(", pos_++}; return; }
    if (c == ')') { tok_ = {Token::RParen, ")", pos_++}; return; }
    size_t start = pos_;
    while (pos_ < text_.size() && is_word_char(text_[pos_])) ++pos_;
    if (pos_ == start) throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    tok_ = {Token::Word, std::string(text_.substr(start, pos_ - start)), start};
  }

  std::string_view text_;
  size_t pos_ = 0;
  Token tok_{Token::End, "", 0};
};

struct FormulaParser {
  const Signature& sig;
  const SymbolTable& tab;
  Lexer lex;

  Token expect_word(const char* what) {
    Token t = lex.take();
    if (t.kind != Token::Word) throw ParseError(std::string("expected ") + what, t.pos);
    return t;
  }

  void expect_rparen() {
    Token t = lex.take();
    if (t.kind != Token::RParen) throw ParseError("expected ')'", t.pos);
  }

  StateSymbol state_symbol(const Token& t) {
    auto info = tab.lookup(t.text);
    if (!info || info->kind == SymKind::Prop)
      throw ParseError("not a state symbol: " + t.text, t.pos);
    return StateSymbol{info->kind, t.text, info->sort};
  }

  StateSymbol state_variable(const Token& t) {
    auto info = tab.lookup(t.text);
    if (!info || info->kind != SymKind::StateVar)
      throw ParseError("not a state variable: " + t.text, t.pos);
    return StateSymbol{SymKind::StateVar, t.text, info->sort};
  }

  std::string sort_name(const Token& t) {
    if (!sig.has_sort(t.text)) throw ParseError("unknown sort: " + t.text, t.pos);
    return t.text;
  }

  FormulaPtr atom(const Token& t) {
    // true:S / false:S constants
    if (t.text.rfind("true:", 0) == 0) return f_top(tab, sort_name({t.kind, t.text.substr(5), t.pos}));
    if (t.text.rfind("false:", 0) == 0) return f_bot(tab, sort_name({t.kind, t.text.substr(6), t.pos}));
    if (auto info = tab.lookup(t.text)) {
      switch (info->kind) {
        case SymKind::Prop: return f_prop(t.text, info->sort);
        case SymKind::Nominal: return f_nom(t.text, info->sort);
        case SymKind::StateVar: return f_svar(t.text, info->sort);
      }
    }
    if (const OperatorDecl* d = sig.find_operator(t.text); d && d->arity() == 0)
      return f_app(sig, t.text, {});
    throw ParseError("unknown identifier: " + t.text, t.pos);
  }

  FormulaPtr formula() {
    Token t = lex.take();
    if (t.kind == Token::Word) return atom(t);
    if (t.kind != Token::LParen) throw ParseError("expected a formula", t.pos);
    Token head = expect_word("a connective");
    FormulaPtr out = compound(head);
    expect_rparen();
    return out;
  }

  FormulaPtr compound(const Token& head) {
    const std::string& h = head.text;
    try {
      if (h == "not") return f_neg(formula());
      if (h == "or") { auto a = formula(); return f_or(a, formula()); }
      if (h == "and") { auto a = formula(); return f_and(a, formula()); }
      if (h == "->") { auto a = formula(); return f_impl(a, formula()); }
      if (h == "<->") { auto a = formula(); return f_iff(a, formula()); }
      if (h == "op" || h == "box") {
        Token name = expect_word("an operator name");
        const OperatorDecl* d = sig.find_operator(name.text);
        if (!d) throw ParseError("unknown operator: " + name.text, name.pos);
        std::vector<FormulaPtr> args;
        for (int i = 0; i < d->arity(); ++i) args.push_back(formula());
        return h == "op" ? f_app(sig, name.text, std::move(args))
                         : f_box(sig, name.text, std::move(args));
      }
      if (h == "box2") {
        // [p]g over the binary execution operator: box(exec, not p, g)
        if (!sig.find_operator("exec"))
          throw ParseError("box2 needs an operator named exec", head.pos);
        auto p = formula();
        auto g = formula();
        return f_box(sig, "exec", {f_neg(p), g});
      }
      if (h == "@") {
        StateSymbol z = state_symbol(expect_word("a state symbol"));
        std::string s = sort_name(expect_word("a sort"));
        return f_at(z, formula(), s);
      }
      if (h == "forall") { StateSymbol x = state_variable(expect_word("a state variable")); return f_forall(x, formula()); }
      if (h == "exists") { StateSymbol x = state_variable(expect_word("a state variable")); return f_exists(x, formula()); }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), head.pos);
    }
    throw ParseError("unknown connective: " + h, head.pos);
  }
};

void print_rec(const FormulaPtr& f, std::string& out) {
  FormulaPtr a, b;
  StateSymbol x;
  if (match_iff(f, &a, &b)) {
    out += "(<-> ";
    print_rec(a, out);
    out += ' ';
    print_rec(b, out);
    out += ')';
    return;
  }
  if (match_and(f, &a, &b)) {
    out += "(and ";
    print_rec(a, out);
    out += ' ';
    print_rec(b, out);
    out += ')';
    return;
  }
  if (match_exists(f, &x, &a)) {
    out += "(exists " + x.name + " ";
    print_rec(a, out);
    out += ')';
    return;
  }
  if (match_impl(f, &a, &b)) {
    out += "(-> ";
    print_rec(a, out);
    out += ' ';
    print_rec(b, out);
    out += ')';
    return;
  }
  switch (f->kind) {
    case FKind::Prop:
    case FKind::Nom:
    case FKind::SVar:
      out += f->name;
      return;
    case FKind::Neg:
      out += "(not ";
      print_rec(f->kids[0], out);
      out += ')';
      return;
    case FKind::Or:
      out += "(or ";
      print_rec(f->kids[0], out);
      out += ' ';
      print_rec(f->kids[1], out);
      out += ')';
      return;
    case FKind::App:
      if (f->kids.empty()) {
        out += f->name;  // 0-ary operators print bare, like their parse form
        return;
      }
      out += "(op " + f->name;
      for (const auto& k : f->kids) {
        out += ' ';
        print_rec(k, out);
      }
      out += ')';
      return;
    case FKind::At:
      out += "(@ " + f->sym.name + " " + f->sort + " ";
      print_rec(f->kids[0], out);
      out += ')';
      return;
    case FKind::Forall:
      out += "(forall " + f->sym.name + " ";
      print_rec(f->kids[0], out);
      out += ')';
      return;
  }
}

struct ContextParser {
  const Signature& sig;
  Lexer lex;

  ContextPtr context() {
    Token t = lex.take();
    if (t.kind == Token::Word) {
      if (t.text.rfind("hole:", 0) == 0) return c_hole(sort(t.text.substr(5), t.pos));
      if (t.text.rfind("top:", 0) == 0) return c_top(sort(t.text.substr(4), t.pos));
      throw ParseError("expected hole:SORT, top:SORT or (op ...)", t.pos);
    }
    if (t.kind != Token::LParen) throw ParseError("expected a context", t.pos);
    Token kw = lex.take();
    if (kw.kind != Token::Word || kw.text != "op")
      throw ParseError("expected 'op'", kw.pos);
    Token name = lex.take();
    if (name.kind != Token::Word) throw ParseError("expected an operator name", name.pos);
    const OperatorDecl* d = sig.find_operator(name.text);
    if (!d) throw ParseError("unknown operator: " + name.text, name.pos);
    std::vector<ContextPtr> kids;
    for (int i = 0; i < d->arity(); ++i) kids.push_back(context());
    Token r = lex.take();
    if (r.kind != Token::RParen) throw ParseError("expected ')'", r.pos);
    try {
      return c_op(sig, name.text, std::move(kids));
    } catch (const Error& e) {
      throw ParseError(e.what(), name.pos);
    }
  }

  std::string sort(const std::string& s, size_t pos) {
    if (!sig.has_sort(s)) throw ParseError("unknown sort: " + s, pos);
    return s;
  }
};

std::vector<std::string> split_words(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string w;
  while (in >> w) {
    if (w[0] == '#') break;
    out.push_back(w);
  }
  return out;
}

}  // namespace

FormulaPtr parse_formula(const Signature& sig, const SymbolTable& tab, std::string_view text) {
  FormulaParser p{sig, tab, Lexer(text)};
  FormulaPtr f = p.formula();
  Token t = p.lex.take();
  if (t.kind != Token::End) throw ParseError("trailing input", t.pos);
  return f;
}

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_rec(f, out);
  return out;
}

ContextPtr parse_context(const Signature& sig, std::string_view text) {
  ContextParser p{sig, Lexer(text)};
  ContextPtr c = p.context();
  Token t = p.lex.take();
  if (t.kind != Token::End) throw ParseError("trailing input", t.pos);
  return c;
}

std::string print_context(const ContextPtr& c) {
  switch (c->kind) {
    case CKind::Hole: return "hole:" + c->sort;
    case CKind::Top: return "top:" + c->sort;
    case CKind::Op: {
      std::string out = "(op " + c->op;
      for (const auto& k : c->kids) out += ' ' + print_context(k);
      return out + ')';
    }
  }
  throw Error("print_context: unreachable");
}

std::pair<Signature, SymbolTable> parse_signature(std::string_view text) {
  Signature sig;
  SymbolTable tab;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error("signature line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> w = split_words(line);
    if (w.empty()) continue;
    if (w[0] == "sort") {
      if (w.size() != 2) fail("expected: sort NAME");
      sig.add_sort(w[1]);
    } else if (w[0] == "op") {
      // op NAME : S1 ... Sn -> S
      if (w.size() < 5 || w[2] != ":") fail("expected: op NAME : S1 ... Sn -> S");
      size_t arrow = 0;
      for (size_t i = 3; i < w.size(); ++i)
        if (w[i] == "->") arrow = i;
      if (arrow == 0 || arrow + 2 != w.size()) fail("expected: op NAME : S1 ... Sn -> S");
      OperatorDecl d;
      d.name = w[1];
      for (size_t i = 3; i < arrow; ++i) d.arg_sorts.push_back(w[i]);
      d.result_sort = w[arrow + 1];
      if (tab.lookup(d.name)) fail("operator name collides with an atom: " + d.name);
      sig.add_operator(std::move(d));
    } else if (w[0] == "prop" || w[0] == "nom" || w[0] == "svar") {
      if (w.size() != 4 || w[2] != ":") fail("expected: " + w[0] + " NAME : SORT");
      if (!sig.has_sort(w[3])) fail("undeclared sort: " + w[3]);
      if (sig.find_operator(w[1])) fail("atom name collides with an operator: " + w[1]);
      SymKind k = w[0] == "prop" ? SymKind::Prop
                  : w[0] == "nom" ? SymKind::Nominal
                                  : SymKind::StateVar;
      tab.add(k, w[1], w[3]);
    } else {
      fail("unknown directive: " + w[0]);
    }
  }
  return {std::move(sig), std::move(tab)};
}

std::pair<Signature, SymbolTable> load_signature_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open signature file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_signature(buf.str());
}

std::string print_signature(const Signature& sig, const SymbolTable& tab) {
  std::string out;
  for (const auto& s : sig.sorts()) out += "sort " + s + "\n";
  for (const auto& [name, d] : sig.operators()) {
    out += "op " + name + " :";
    for (const auto& a : d.arg_sorts) out += ' ' + a;
    out += " -> " + d.result_sort + "\n";
  }
  for (const auto& [name, info] : tab.entries())
    out += std::string(sym_kind_name(info.kind)) + " " + name + " : " + info.sort + "\n";
  return out;
}

}  // namespace hml
