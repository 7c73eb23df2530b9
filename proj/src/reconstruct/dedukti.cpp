// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <cctype>
#include <set>

#include "hammerforge/reconstruct/reconstruct.hpp"

namespace hammerforge::reconstruct {

DkTerm DkTerm::ident(std::string name) {
  DkTerm t;
  t.kind = Kind::Ident;
  t.name = std::move(name);
  return t;
}

DkTerm DkTerm::app(std::vector<DkTerm> args) {
  if (args.size() == 1) return std::move(args.front());
  DkTerm t;
  t.kind = Kind::App;
  // Keep application spines flat.
  if (args.front().kind == Kind::App) {
    t.args = std::move(args.front().args);
    for (std::size_t i = 1; i < args.size(); ++i) t.args.push_back(std::move(args[i]));
  } else {
    t.args = std::move(args);
  }
  return t;
}

DkTerm DkTerm::binder(Kind kind, std::string var, DkTerm domain, DkTerm body) {
  DkTerm t;
  t.kind = kind;
  t.name = std::move(var);
  t.args.push_back(std::move(domain));
  t.args.push_back(std::move(body));
  return t;
}

const DkTerm* DkDecl::proved() const {
  if (type.kind == DkTerm::Kind::App && type.args.size() == 2 &&
      type.args[0].kind == DkTerm::Kind::Ident && type.args[0].name == "Prf") {
    return &type.args[1];
  }
  return nullptr;
}

namespace {

bool plainName(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'' && c != '!' &&
        c != '?') {
      return false;
    }
  }
  return s != "def" && s != "thm";
}

std::string printAtom(const DkTerm& t) {
  std::string s = printDk(t);
  return t.kind == DkTerm::Kind::Ident ? s : "(" + s + ")";
}

}  // namespace

std::string printDk(const DkTerm& t) {
  switch (t.kind) {
    case DkTerm::Kind::Ident:
      return plainName(t.name) ? t.name : "{|" + t.name + "|}";
    case DkTerm::Kind::App: {
      std::string s = printAtom(t.args[0]);
      for (std::size_t i = 1; i < t.args.size(); ++i) s += " " + printAtom(t.args[i]);
      return s;
    }
    case DkTerm::Kind::Lam:
      return printDk(DkTerm::ident(t.name)) + " : " + printDk(t.args[0]) + " => " + printDk(t.args[1]);
    case DkTerm::Kind::Pi: {
      std::string dom = t.args[0].kind == DkTerm::Kind::Pi ? printAtom(t.args[0]) : printDk(t.args[0]);
      if (t.name.empty()) return dom + " -> " + printDk(t.args[1]);
      return printDk(DkTerm::ident(t.name)) + " : " + dom + " -> " + printDk(t.args[1]);
    }
  }
  return "";
}

namespace {

struct Token {
  enum class Kind { Ident, Colon, Define, FatArrow, Arrow, LParen, RParen, Dot, End };
  Kind kind;
  std::string text;
  bool quoted = false;
  std::size_t offset;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) { tokenize(); }

  std::vector<DkDecl> decls() {
    std::vector<DkDecl> out;
    std::set<std::string> seen;
    while (peek().kind != Token::Kind::End) {
      DkDecl d;
      std::size_t begin = peek().offset;
      bool keyword = false;
      if (peek().kind == Token::Kind::Ident && !peek().quoted &&
          (peek().text == "def" || peek().text == "thm")) {
        next();
        keyword = true;
      }
      const Token& name = expect(Token::Kind::Ident, "a declaration name");
      d.name = name.text;
      if (!seen.insert(d.name).second) fail(name.offset, "duplicate declaration '" + d.name + "'");
      expect(Token::Kind::Colon, "':'");
      d.type = term();
      if (peek().kind == Token::Kind::Define) {
        next();
        d.kind = DkDecl::Kind::Defined;
        d.body = term();
      } else if (keyword) {
        fail(peek().offset, "expected ':=' after a def or thm type");
      }
      const Token& dot = expect(Token::Kind::Dot, "'.'");
      d.span = Span{begin, dot.offset + 1};
      out.push_back(std::move(d));
    }
    return out;
  }

 private:
  [[noreturn]] void fail(std::size_t offset, const std::string& message) const {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::SyntaxError,
                std::to_string(line) + ":" + std::to_string(col) + ": " + message,
                Span{offset, std::min(offset + 1, text_.size())});
  }

  void tokenize() {
    std::size_t i = 0;
    auto identChar = [](char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '!' ||
             c == '?';
    };
    while (i < text_.size()) {
      char c = text_[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (text_.compare(i, 2, "(;") == 0) {
        std::size_t start = i;
        int depth = 0;
        do {
          if (i + 1 >= text_.size()) fail(start, "unterminated comment");
          if (text_.compare(i, 2, "(;") == 0) {
            ++depth;
            i += 2;
          } else if (text_.compare(i, 2, ";)") == 0) {
            --depth;
            i += 2;
          } else {
            ++i;
          }
        } while (depth > 0);
      } else if (text_.compare(i, 2, "{|") == 0) {
        std::size_t close = text_.find("|}", i + 2);
        if (close == std::string_view::npos) fail(i, "unterminated quoted identifier");
        tokens_.push_back({Token::Kind::Ident, std::string(text_.substr(i + 2, close - i - 2)), true, i});
        i = close + 2;
      } else if (text_.compare(i, 2, ":=") == 0) {
        tokens_.push_back({Token::Kind::Define, ":=", false, i});
        i += 2;
      } else if (text_.compare(i, 2, "=>") == 0) {
        tokens_.push_back({Token::Kind::FatArrow, "=>", false, i});
        i += 2;
      } else if (text_.compare(i, 2, "->") == 0) {
        tokens_.push_back({Token::Kind::Arrow, "->", false, i});
        i += 2;
      } else if (c == ':' || c == '(' || c == ')' || c == '.') {
        Token::Kind k = c == ':'   ? Token::Kind::Colon
                        : c == '(' ? Token::Kind::LParen
                        : c == ')' ? Token::Kind::RParen
                                   : Token::Kind::Dot;
        tokens_.push_back({k, std::string(1, c), false, i});
        ++i;
      } else if (identChar(c)) {
        std::size_t start = i;
        while (i < text_.size() && identChar(text_[i])) ++i;
        tokens_.push_back({Token::Kind::Ident, std::string(text_.substr(start, i - start)), false, start});
      } else {
        fail(i, std::string("unexpected character '") + c + "'");
      }
    }
    tokens_.push_back({Token::Kind::End, "", false, text_.size()});
  }

  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < tokens_.size() - 1) ++pos_;
    return t;
  }
  const Token& expect(Token::Kind kind, const std::string& what) {
    if (peek().kind != kind) {
      fail(peek().offset, "expected " + what + (peek().kind == Token::Kind::End ? " at end of input"
                                                                                 : " before '" + peek().text + "'"));
    }
    return next();
  }

  // term := ident ':' app ('=>' | '->') term | app ['->' term]
  DkTerm term() {
    if (peek().kind == Token::Kind::Ident && peek(1).kind == Token::Kind::Colon) {
      std::string var = next().text;
      next();
      DkTerm domain = app();
      if (peek().kind == Token::Kind::FatArrow) {
        next();
        return DkTerm::binder(DkTerm::Kind::Lam, var, std::move(domain), term());
      }
      expect(Token::Kind::Arrow, "'=>' or '->'");
      return DkTerm::binder(DkTerm::Kind::Pi, var, std::move(domain), term());
    }
    DkTerm a = app();
    if (peek().kind == Token::Kind::Arrow) {
      next();
      return DkTerm::binder(DkTerm::Kind::Pi, "", std::move(a), term());
    }
    return a;
  }

  DkTerm app() {
    std::vector<DkTerm> parts;
    parts.push_back(atom());
    while (peek().kind == Token::Kind::Ident || peek().kind == Token::Kind::LParen) {
      parts.push_back(atom());
    }
    return DkTerm::app(std::move(parts));
  }

  DkTerm atom() {
    if (peek().kind == Token::Kind::LParen) {
      next();
      DkTerm t = term();
      expect(Token::Kind::RParen, "')'");
      return t;
    }
    return DkTerm::ident(expect(Token::Kind::Ident, "a term").text);
  }

  std::string_view text_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<DkDecl> parseDedukti(std::string_view text) { return Parser(text).decls(); }

}  // namespace hammerforge::reconstruct
