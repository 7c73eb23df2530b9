// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "hammerforge/script/parser.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace hammerforge::script {

const char* tacticKeyword(Tactic::Kind k) {
  switch (k) {
    case Tactic::Kind::Let: return "let";
    case Tactic::Kind::Assume: return "assume";
    case Tactic::Kind::Exact: return "exact";
    case Tactic::Kind::Apply: return "apply";
    case Tactic::Kind::Rewrite: return "rewrite";
    case Tactic::Kind::Claim: return "claim";
    case Tactic::Kind::Aby: return "aby";
    case Tactic::Kind::Bullet: return "bullet";
  }
  return "?";
}

std::pair<std::size_t, std::size_t> lineColumn(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

namespace {

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind;
  std::string text;
  Span span;
};

bool identStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool identChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skipTrivia();
      if (pos_ >= src_.size()) break;
      out.push_back(next());
    }
    out.push_back(Token{Tok::End, "", Span{src_.size(), src_.size()}});
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t at) {
    auto [l, c] = lineColumn(src_, at);
    throw Error(ErrorCode::SyntaxError,
                std::to_string(l) + ":" + std::to_string(c) + ": " + msg, Span{at, at + 1});
  }

  void skipTrivia() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (src_.compare(pos_, 2, "//") == 0) {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else if (src_.compare(pos_, 2, "(*") == 0) {
        // Comments nest.
        const std::size_t start = pos_;
        int open = 0;
        do {
          if (pos_ + 1 >= src_.size()) fail("unterminated comment", start);
          if (src_.compare(pos_, 2, "(*") == 0) {
            ++open;
            pos_ += 2;
          } else if (src_.compare(pos_, 2, "*)") == 0) {
            --open;
            pos_ += 2;
          } else {
            ++pos_;
          }
        } while (open > 0);
      } else {
        break;
      }
    }
  }

  Token next() {
    const std::size_t start = pos_;
    const char c = src_[pos_];
    if (identStart(c)) {
      while (pos_ < src_.size() && identChar(src_[pos_])) ++pos_;
      return Token{Tok::Ident, std::string(src_.substr(start, pos_ - start)), Span{start, pos_}};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      return Token{Tok::Number, std::string(src_.substr(start, pos_ - start)), Span{start, pos_}};
    }
    static const char* const kSymbols[] = {"<->", ":=", "=>", "->", "<-", "/\\", "\\/", "(",
                                           ")",   "{",  "}",  ".",  ",",  ":",   "=",   "~",
                                           "-",   "+",  "*"};
    // `:e` is membership unless it begins a longer identifier (`x:eq`).
    if (src_.compare(pos_, 2, ":e") == 0 &&
        (pos_ + 2 >= src_.size() || !identChar(src_[pos_ + 2]))) {
      pos_ += 2;
      return Token{Tok::Sym, ":e", Span{start, pos_}};
    }
    for (const char* s : kSymbols) {
      const std::string_view sv(s);
      if (src_.compare(pos_, sv.size(), sv) == 0) {
        pos_ += sv.size();
        return Token{Tok::Sym, std::string(sv), Span{start, pos_}};
      }
    }
    fail(std::string("unexpected character '") + c + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

const std::set<std::string>& reservedWords() {
  static const std::set<std::string> kw = {
      "forall", "exists", "fun", "set", "prop", "let", "assume", "exact", "apply", "rewrite",
      "claim", "aby", "Qed", "Theorem", "Definition", "Parameter", "Axiom"};
  return kw;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src), toks_(Lexer(src).run()) {}

  Script script() {
    Script s;
    while (!atEnd()) s.items.push_back(item());
    return s;
  }

  ExprPtr standaloneExpr() {
    ExprPtr e = expr();
    if (!atEnd()) fail("unexpected '" + peek().text + "' after expression");
    return e;
  }

 private:
  // -- token helpers ---------------------------------------------------------

  const Token& peek(std::size_t k = 0) const {
    return toks_[std::min(pos_ + k, toks_.size() - 1)];
  }
  bool atEnd() const { return peek().kind == Tok::End; }
  bool isSym(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Sym && peek(k).text == s;
  }
  bool isWord(const char* s, std::size_t k = 0) const {
    return peek(k).kind == Tok::Ident && peek(k).text == s;
  }
  const Token& advance() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void fail(const std::string& msg) const { failAt(msg, peek().span); }
  [[noreturn]] void failAt(const std::string& msg, Span at,
                           ErrorCode code = ErrorCode::SyntaxError) const {
    auto [l, c] = lineColumn(src_, at.begin);
    throw Error(code, std::to_string(l) + ":" + std::to_string(c) + ": " + msg, at);
  }

  const Token& expectSym(const char* s) {
    if (!isSym(s)) fail(std::string("expected '") + s + "'" + found());
    return advance();
  }
  const Token& expectWord(const char* s) {
    if (!isWord(s)) fail(std::string("expected '") + s + "'" + found());
    return advance();
  }
  std::string found() const {
    return atEnd() ? " at end of input" : ", found '" + peek().text + "'";
  }
  std::string name() {
    if (peek().kind != Tok::Ident || reservedWords().count(peek().text)) {
      fail("expected a name" + found());
    }
    return advance().text;
  }

  // -- items -----------------------------------------------------------------

  Item item() {
    const Token& kw = peek();
    Item it;
    if (isWord("Parameter")) {
      advance();
      it.kind = Item::Kind::Parameter;
      it.name = name();
      expectSym(":");
      it.type = type();
    } else if (isWord("Axiom")) {
      advance();
      it.kind = Item::Kind::Axiom;
      it.name = name();
      expectSym(":");
      it.body = expr();
    } else if (isWord("Definition")) {
      advance();
      it.kind = Item::Kind::Definition;
      it.name = name();
      if (isSym(":")) {
        advance();
        it.type = type();
      }
      expectSym(":=");
      it.body = expr();
    } else if (isWord("Theorem")) {
      advance();
      it.kind = Item::Kind::Theorem;
      it.name = name();
      expectSym(":");
      it.body = expr();
      expectSym(".");
      const std::size_t proofBegin = peek().span.begin;
      it.proof = block({}, /*braced=*/false);
      if (!isWord("Qed")) fail("expected 'Qed'" + found());
      advance();
      const Token& dot = expectSym(".");
      it.proofSpan = Span{proofBegin, dot.span.end};
      it.span = Span{kw.span.begin, dot.span.end};
      return it;
    } else {
      fail("expected Parameter, Axiom, Definition or Theorem" + found());
    }
    const Token& dot = expectSym(".");
    it.span = Span{kw.span.begin, dot.span.end};
    return it;
  }

  // -- tactics ---------------------------------------------------------------

  static bool isBulletSym(const Token& t) {
    return t.kind == Tok::Sym && (t.text == "-" || t.text == "+" || t.text == "*");
  }

  // Parses tactics until Qed, `}`, end of input or a bullet in `stops`.
  Block block(const std::set<std::string>& stops, bool braced) {
    Block out;
    while (true) {
      const Token& t = peek();
      if (t.kind == Tok::End) {
        if (braced) failAt("unclosed '{'", t.span, ErrorCode::UnbalancedBlock);
        return out;
      }
      if (isWord("Qed")) {
        if (braced) failAt("'Qed' inside an open block", t.span, ErrorCode::UnbalancedBlock);
        return out;
      }
      if (isSym("}")) {
        if (!braced) failAt("unmatched '}'", t.span, ErrorCode::UnbalancedBlock);
        return out;
      }
      if (isBulletSym(t) && stops.count(t.text)) return out;
      out.push_back(tactic(stops));
    }
  }

  Tactic bracedBlock() {
    const Token& open = expectSym("{");
    Tactic b;
    b.kind = Tactic::Kind::Bullet;
    b.name = "{";
    b.block = block({}, /*braced=*/true);
    b.hasBlock = true;
    const Token& close = advance();  // `}` guaranteed by block()
    b.span = Span{open.span.begin, close.span.end};
    return b;
  }

  Tactic tactic(const std::set<std::string>& stops) {
    const Token& kw = peek();
    if (isBulletSym(kw)) {
      advance();
      Tactic b;
      b.kind = Tactic::Kind::Bullet;
      b.name = kw.text;
      std::set<std::string> inner = stops;
      inner.insert(kw.text);
      b.block = block(inner, /*braced=*/false);
      b.hasBlock = true;
      b.span = Span{kw.span.begin, b.block.empty() ? kw.span.end : b.block.back().span.end};
      return b;
    }
    if (isSym("{")) return bracedBlock();
    if (kw.kind != Tok::Ident) fail("expected a tactic" + found());

    Tactic t;
    const std::string word = kw.text;
    advance();
    if (word == "let") {
      t.kind = Tactic::Kind::Let;
      t.name = name();
      if (isSym(":")) {
        advance();
        t.type = type();
      }
    } else if (word == "assume") {
      t.kind = Tactic::Kind::Assume;
      t.name = name();
      if (isSym(":")) {
        advance();
        t.expr = expr();
      }
    } else if (word == "exact") {
      t.kind = Tactic::Kind::Exact;
      t.expr = expr();
    } else if (word == "apply") {
      t.kind = Tactic::Kind::Apply;
      ExprPtr e = expr();
      if (e->kind == Expr::Kind::Ident) {
        t.name = e->name;
      } else if (e->kind == Expr::Kind::App && e->args[0]->kind == Expr::Kind::Ident) {
        t.name = e->args[0]->name;
        t.args.assign(e->args.begin() + 1, e->args.end());
      } else {
        failAt("apply expects a name followed by arguments", e->span);
      }
    } else if (word == "rewrite") {
      t.kind = Tactic::Kind::Rewrite;
      if (isSym("<-")) {
        advance();
        t.reversed = true;
      }
      t.name = name();
      if (isWord("at")) {
        advance();
        if (peek().kind != Tok::Number) fail("expected an occurrence number" + found());
        const Token& n = advance();
        t.occurrence = std::stoul(n.text);
        t.explicitOccurrence = true;
        if (t.occurrence == 0) failAt("occurrences are counted from 1", n.span);
      }
    } else if (word == "claim") {
      t.kind = Tactic::Kind::Claim;
      t.name = name();
      expectSym(":");
      t.expr = expr();
    } else if (word == "aby") {
      t.kind = Tactic::Kind::Aby;
      while (peek().kind == Tok::Ident && !reservedWords().count(peek().text)) {
        t.deps.push_back(advance().text);
      }
    } else {
      failAt("unknown tactic '" + word + "'", kw.span);
    }
    const Token& dot = expectSym(".");
    t.span = Span{kw.span.begin, dot.span.end};
    if (t.kind == Tactic::Kind::Claim && isSym("{")) {
      Tactic body = bracedBlock();
      t.block = std::move(body.block);
      t.hasBlock = true;
      t.span.end = body.span.end;
    }
    return t;
  }

  // -- types -----------------------------------------------------------------

  kernel::Type type() {
    kernel::Type lhs = typeAtom();
    if (isSym("->")) {
      advance();
      return kernel::Type::arrow(lhs, type());
    }
    return lhs;
  }

  kernel::Type typeAtom() {
    if (isWord("set")) {
      advance();
      return kernel::Type::set();
    }
    if (isWord("prop")) {
      advance();
      return kernel::Type::prop();
    }
    if (isSym("(")) {
      advance();
      kernel::Type t = type();
      expectSym(")");
      return t;
    }
    fail("expected a type" + found());
  }

  // -- expressions -----------------------------------------------------------

  static ExprPtr make(Expr::Kind k, Span span, std::vector<ExprPtr> args, std::string name = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->span = span;
    e->args = std::move(args);
    e->name = std::move(name);
    return e;
  }

  ExprPtr expr() {
    ExprPtr lhs = imp();
    while (isSym("<->")) {
      advance();
      ExprPtr rhs = imp();
      lhs = make(Expr::Kind::Iff, Span{lhs->span.begin, rhs->span.end}, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr imp() {
    ExprPtr lhs = disj();
    if (isSym("->")) {
      advance();
      ExprPtr rhs = imp();
      return make(Expr::Kind::Imp, Span{lhs->span.begin, rhs->span.end}, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr disj() {
    ExprPtr lhs = conj();
    while (isSym("\\/")) {
      advance();
      ExprPtr rhs = conj();
      lhs = make(Expr::Kind::Or, Span{lhs->span.begin, rhs->span.end}, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr conj() {
    ExprPtr lhs = neg();
    while (isSym("/\\")) {
      advance();
      ExprPtr rhs = neg();
      lhs = make(Expr::Kind::And, Span{lhs->span.begin, rhs->span.end}, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr neg() {
    if (isSym("~")) {
      const Token& t = advance();
      ExprPtr a = neg();
      return make(Expr::Kind::Not, Span{t.span.begin, a->span.end}, {a});
    }
    if (isWord("forall") || isWord("exists") || isWord("fun")) return binder();
    return rel();
  }

  ExprPtr rel() {
    ExprPtr lhs = app();
    if (isSym("=") || isSym(":e")) {
      const bool eq = advance().text == "=";
      ExprPtr rhs = app();
      return make(eq ? Expr::Kind::Eq : Expr::Kind::In, Span{lhs->span.begin, rhs->span.end},
                  {lhs, rhs});
    }
    return lhs;
  }

  bool atomStart() const {
    return isSym("(") || (peek().kind == Tok::Ident && !reservedWords().count(peek().text));
  }

  ExprPtr app() {
    ExprPtr head = atom();
    if (!atomStart()) return head;
    std::vector<ExprPtr> args;
    if (head->kind == Expr::Kind::App) {
      args = head->args;
    } else {
      args.push_back(head);
    }
    while (atomStart()) args.push_back(atom());
    const Span span{head->span.begin, args.back()->span.end};
    return make(Expr::Kind::App, span, std::move(args));
  }

  ExprPtr atom() {
    if (isSym("(")) {
      const Token& open = advance();
      ExprPtr inner = expr();
      const Token& close = expectSym(")");
      // Keep the node but widen its span to the parentheses.
      auto e = std::make_shared<Expr>(*inner);
      e->span = Span{open.span.begin, close.span.end};
      return e;
    }
    if (peek().kind == Tok::Ident && !reservedWords().count(peek().text)) {
      const Token& t = advance();
      return make(Expr::Kind::Ident, t.span, {}, t.text);
    }
    fail("expected an expression" + found());
  }

  ExprPtr binder() {
    const Token& kw = advance();
    auto e = std::make_shared<Expr>();
    e->kind = kw.text == "forall" ? Expr::Kind::Forall
              : kw.text == "exists" ? Expr::Kind::Exists
                                    : Expr::Kind::Fun;
    if (isSym("(")) {
      while (isSym("(")) {
        advance();
        BinderGroup g;
        while (!isSym(":")) g.names.push_back(name());
        if (g.names.empty()) fail("expected binder names");
        expectSym(":");
        g.type = type();
        expectSym(")");
        e->binders.push_back(std::move(g));
      }
    } else {
      BinderGroup g;
      g.names.push_back(name());
      while (peek().kind == Tok::Ident && !reservedWords().count(peek().text)) {
        g.names.push_back(name());
      }
      if (isSym(":")) {
        advance();
        g.type = type();
      }
      e->binders.push_back(std::move(g));
    }
    if (e->kind == Expr::Kind::Fun && isSym("=>")) {
      advance();
    } else {
      expectSym(",");
    }
    ExprPtr body = expr();
    e->args.push_back(body);
    e->span = Span{kw.span.begin, body->span.end};
    return e;
  }

  std::string_view src_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// -- printing -----------------------------------------------------------------

enum Prec : int { kBinder = 0, kIff, kImp, kOr, kAnd, kNot, kRel, kApp, kAtom };

int precOf(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Ident: return kAtom;
    case Expr::Kind::App: return kApp;
    case Expr::Kind::Fun:
    case Expr::Kind::Forall:
    case Expr::Kind::Exists: return kBinder;
    case Expr::Kind::Imp: return kImp;
    case Expr::Kind::And: return kAnd;
    case Expr::Kind::Or: return kOr;
    case Expr::Kind::Iff: return kIff;
    case Expr::Kind::Not: return kNot;
    case Expr::Kind::Eq:
    case Expr::Kind::In: return kRel;
  }
  return kAtom;
}

std::string printAt(const Expr& e, int prec);

std::string printBare(const Expr& e) {
  auto bin = [&](const char* op, int l, int r) {
    return printAt(*e.args[0], l) + op + printAt(*e.args[1], r);
  };
  switch (e.kind) {
    case Expr::Kind::Ident: return e.name;
    case Expr::Kind::App: {
      std::string s = printAt(*e.args[0], kAtom);
      for (std::size_t i = 1; i < e.args.size(); ++i) s += " " + printAt(*e.args[i], kAtom);
      return s;
    }
    case Expr::Kind::Imp: return bin(" -> ", kOr, kImp);
    case Expr::Kind::Iff: return bin(" <-> ", kIff, kImp);
    case Expr::Kind::Or: return bin(" \\/ ", kOr, kAnd);
    case Expr::Kind::And: return bin(" /\\ ", kAnd, kNot);
    case Expr::Kind::Eq: return bin(" = ", kApp, kApp);
    case Expr::Kind::In: return bin(" :e ", kApp, kApp);
    case Expr::Kind::Not: return "~" + printAt(*e.args[0], kNot);
    case Expr::Kind::Fun:
    case Expr::Kind::Forall:
    case Expr::Kind::Exists: {
      std::string s = e.kind == Expr::Kind::Fun      ? "fun"
                      : e.kind == Expr::Kind::Forall ? "forall"
                                                     : "exists";
      auto names = [](const BinderGroup& g) {
        std::string out;
        for (std::size_t i = 0; i < g.names.size(); ++i) out += (i ? " " : "") + g.names[i];
        return out;
      };
      if (e.binders.size() == 1) {
        const auto& g = e.binders[0];
        s += " " + names(g);
        if (g.type) s += " : " + g.type->str();
      } else {
        for (const auto& g : e.binders) s += " (" + names(g) + " : " + g.type->str() + ")";
      }
      s += e.kind == Expr::Kind::Fun ? " => " : ", ";
      return s + printAt(*e.args[0], kBinder);
    }
  }
  return "?";
}

std::string printAt(const Expr& e, int prec) {
  std::string s = printBare(e);
  return precOf(e) < prec ? "(" + s + ")" : s;
}

void printBlock(std::ostringstream& os, const Block& b, int indent);

void printTacticTo(std::ostringstream& os, const Tactic& t, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  switch (t.kind) {
    case Tactic::Kind::Let:
      os << pad << "let " << t.name;
      if (t.type) os << " : " << t.type->str();
      os << ".\n";
      return;
    case Tactic::Kind::Assume:
      os << pad << "assume " << t.name;
      if (t.expr) os << " : " << printAt(*t.expr, kBinder);
      os << ".\n";
      return;
    case Tactic::Kind::Exact: os << pad << "exact " << printAt(*t.expr, kBinder) << ".\n"; return;
    case Tactic::Kind::Apply:
      os << pad << "apply " << t.name;
      for (const auto& a : t.args) os << " " << printAt(*a, kAtom);
      os << ".\n";
      return;
    case Tactic::Kind::Rewrite:
      os << pad << "rewrite " << (t.reversed ? "<- " : "") << t.name;
      if (t.explicitOccurrence) os << " at " << t.occurrence;
      os << ".\n";
      return;
    case Tactic::Kind::Claim:
      os << pad << "claim " << t.name << " : " << printAt(*t.expr, kBinder) << ".\n";
      if (t.hasBlock) {
        os << pad << "{\n";
        printBlock(os, t.block, indent + 2);
        os << pad << "}\n";
      }
      return;
    case Tactic::Kind::Aby:
      os << pad << "aby";
      for (const auto& d : t.deps) os << " " << d;
      os << ".\n";
      return;
    case Tactic::Kind::Bullet:
      if (t.name == "{") {
        os << pad << "{\n";
        printBlock(os, t.block, indent + 2);
        os << pad << "}\n";
      } else {
        os << pad << t.name << "\n";
        printBlock(os, t.block, indent + 2);
      }
      return;
  }
}

void printBlock(std::ostringstream& os, const Block& b, int indent) {
  for (const auto& t : b) printTacticTo(os, t, indent);
}

}  // namespace

Script parseScript(std::string_view text) { return Parser(text).script(); }

ExprPtr parseExpr(std::string_view text) { return Parser(text).standaloneExpr(); }

std::string printExpr(const Expr& e) { return printAt(e, kBinder); }

std::string printTactic(const Tactic& t, int indent) {
  std::ostringstream os;
  printTacticTo(os, t, indent);
  return os.str();
}

std::string printScript(const Script& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    const Item& it = s.items[i];
    if (i) os << "\n";
    switch (it.kind) {
      case Item::Kind::Parameter:
        os << "Parameter " << it.name << " : " << it.type->str() << ".\n";
        break;
      case Item::Kind::Axiom:
        os << "Axiom " << it.name << " : " << printExpr(*it.body) << ".\n";
        break;
      case Item::Kind::Definition:
        os << "Definition " << it.name;
        if (it.type) os << " : " << it.type->str();
        os << " := " << printExpr(*it.body) << ".\n";
        break;
      case Item::Kind::Theorem:
        os << "Theorem " << it.name << " : " << printExpr(*it.body) << ".\n";
        printBlock(os, it.proof, 0);
        os << "Qed.\n";
        break;
    }
  }
  return os.str();
}

}  // namespace hammerforge::script
