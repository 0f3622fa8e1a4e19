#include <cstring>
#include <fstream>
#include <sstream>

#include "hml/smc.hpp"
#include "hml/text.hpp"

namespace hml::smc {

namespace {

struct PTok {
  enum Kind { Ident, Number, Sym, End } kind = End;
  std::string text;
  size_t pos = 0;
};

struct PLexer {
  std::string_view text;
  size_t pos = 0;
  PTok tok;

  PLexer(std::string_view t) : text(t) { next(); }

  void next() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) {
      tok = {PTok::End, "", pos};
      return;
    }
    size_t start = pos;
    char c = text[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      tok = {PTok::Number, std::string(text.substr(start, pos - start)), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
        ++pos;
      tok = {PTok::Ident, std::string(text.substr(start, pos - start)), start};
      return;
    }
    for (const char* sym : {":=", "<=", ";", "+", "(", ")"}) {
      size_t len = std::strlen(sym);
      if (text.substr(pos, len) == sym) {
        pos += len;
        tok = {PTok::Sym, sym, start};
        return;
      }
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }

  bool at(PTok::Kind k, const char* t = nullptr) const {
    return tok.kind == k && (!t || tok.text == t);
  }
  PTok take() {
    PTok t = tok;
    next();
    return t;
  }
  void expect(const char* sym) {
    if (!at(PTok::Sym, sym)) throw ParseError(std::string("expected '") + sym + "'", tok.pos);
    next();
  }
};

struct ProgramParser {
  const Bundle& b;
  PLexer lex;

  FormulaPtr app(const std::string& op, std::vector<FormulaPtr> args) {
    return f_app(b.sig, op, std::move(args));
  }

  FormulaPtr aterm() {
    if (lex.at(PTok::Number)) {
      PTok t = lex.take();
      uint64_t n = std::stoull(t.text);
      if (n > kMaxNumeral) throw ParseError("numeral too large: " + t.text, t.pos);
      return app("aexp_nat", {nat_term(b, n)});
    }
    if (lex.at(PTok::Ident)) {
      PTok t = lex.take();
      try {
        return app("aexp_var", {var_term(b, t.text)});
      } catch (const Error&) {
        throw ParseError("unknown identifier: " + t.text, t.pos);
      }
    }
    if (lex.at(PTok::Sym, "(")) {
      lex.take();
      FormulaPtr a = aexp();
      lex.expect(")");
      return a;
    }
    throw ParseError("expected a number, an identifier or '('", lex.tok.pos);
  }

  FormulaPtr aexp() {
    FormulaPtr a = aterm();
    while (lex.at(PTok::Sym, "+")) {
      lex.take();
      a = app("add", {a, aterm()});
    }
    return a;
  }

  FormulaPtr bexp() {
    FormulaPtr a1 = aexp();
    lex.expect("<=");
    return app("leqb", {a1, aexp()});
  }

  FormulaPtr basic() {
    if (lex.at(PTok::Sym, "(")) {
      lex.take();
      FormulaPtr s = stmt();
      lex.expect(")");
      return s;
    }
    if (lex.at(PTok::Ident, "skip")) {
      lex.take();
      return app("skip", {});
    }
    if (lex.at(PTok::Ident, "if")) {
      lex.take();
      FormulaPtr cond = bexp();
      if (!lex.at(PTok::Ident, "then")) throw ParseError("expected 'then'", lex.tok.pos);
      lex.take();
      FormulaPtr s1 = basic();
      if (!lex.at(PTok::Ident, "else")) throw ParseError("expected 'else'", lex.tok.pos);
      lex.take();
      FormulaPtr s2 = basic();
      return app("ifelse", {cond, s1, s2});
    }
    if (lex.at(PTok::Ident, "while")) {
      lex.take();
      FormulaPtr cond = bexp();
      if (!lex.at(PTok::Ident, "do")) throw ParseError("expected 'do'", lex.tok.pos);
      lex.take();
      return app("while", {cond, basic()});
    }
    if (lex.at(PTok::Ident)) {
      PTok t = lex.take();
      FormulaPtr v;
      try {
        v = var_term(b, t.text);
      } catch (const Error&) {
        throw ParseError("unknown identifier: " + t.text, t.pos);
      }
      lex.expect(":=");
      return app("assign", {v, aexp()});
    }
    throw ParseError("expected a statement", lex.tok.pos);
  }

  FormulaPtr stmt() {
    FormulaPtr s = basic();
    if (lex.at(PTok::Sym, ";")) {
      lex.take();
      return app("seqs", {s, stmt()});  // right associative
    }
    return s;
  }
};

void print_aexp(const FormulaPtr& a, std::string& out) {
  if (a->name == "aexp_nat") {
    out += a->kids[0]->name;
  } else if (a->name == "aexp_var") {
    out += a->kids[0]->name;
  } else if (a->name == "add") {
    // + is left associative; parenthesize a right-nested addend
    print_aexp(a->kids[0], out);
    out += " + ";
    bool paren = a->kids[1]->name == "add";
    if (paren) out += "(";
    print_aexp(a->kids[1], out);
    if (paren) out += ")";
  } else {
    throw Error("print_program: not an arithmetic expression term");
  }
}

void print_bexp(const FormulaPtr& c, std::string& out) {
  if (c->name != "leqb") throw Error("print_program: not a boolean expression term");
  print_aexp(c->kids[0], out);
  out += " <= ";
  print_aexp(c->kids[1], out);
}

void print_stmt(const FormulaPtr& s, std::string& out, bool atomic) {
  if (s->name == "skip") {
    out += "skip";
  } else if (s->name == "assign") {
    out += s->kids[0]->name + " := ";
    print_aexp(s->kids[1], out);
  } else if (s->name == "ifelse") {
    out += "if ";
    print_bexp(s->kids[0], out);
    out += " then ";
    print_stmt(s->kids[1], out, true);
    out += " else ";
    print_stmt(s->kids[2], out, true);
  } else if (s->name == "while") {
    out += "while ";
    print_bexp(s->kids[0], out);
    out += " do ";
    print_stmt(s->kids[1], out, true);
  } else if (s->name == "seqs") {
    if (atomic) out += "(";
    print_stmt(s->kids[0], out, true);
    out += "; ";
    print_stmt(s->kids[1], out, false);
    if (atomic) out += ")";
  } else {
    throw Error("print_program: not a statement term");
  }
}

}  // namespace

FormulaPtr parse_program(const Bundle& b, std::string_view text) {
  ProgramParser p{b, PLexer(text)};
  FormulaPtr s = p.stmt();
  if (!p.lex.at(PTok::End)) throw ParseError("trailing input", p.lex.tok.pos);
  return s;
}

FormulaPtr load_program_file(const Bundle& b, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open program file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_program(b, buf.str());
}

std::string print_program(const FormulaPtr& stmt) {
  std::string out;
  print_stmt(stmt, out, false);
  return out;
}

FormulaPtr example_program(const Bundle& b) {
  return parse_program(b, "i1 := 1; i2 := 2; if i1 <= i2 then m := i1 else m := i2");
}

}  // namespace hml::smc
