// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <cctype>
#include <map>
#include <set>
#include <sstream>

#include "hammerforge/tptp/tptp.hpp"

namespace hammerforge::tptp {

using kernel::Term;
using kernel::Type;

namespace {

// Arity and TPTP operator of the native connectives.
struct Native {
  std::size_t arity;
  const char* op;
};

std::optional<Native> nativeConnective(const std::string& name) {
  if (name == "True") return Native{0, "$true"};
  if (name == "False") return Native{0, "$false"};
  if (name == "not") return Native{1, "~"};
  if (name == "and") return Native{2, "&"};
  if (name == "or") return Native{2, "|"};
  if (name == "iff") return Native{2, "<=>"};
  if (auto m = kernel::familyMember(name)) return Native{m->first == "ex" ? 1u : 2u, m->first == "ex" ? "?" : "="};
  return std::nullopt;
}

std::string varName(std::size_t level) { return "X" + std::to_string(level); }

std::string th0Type(const Type& t, bool top) {
  switch (t.kind()) {
    case Type::Kind::Prop: return "$o";
    case Type::Kind::Set: return "$i";
    case Type::Kind::Arrow: {
      std::string s = th0Type(t.domain(), false) + " > " + th0Type(t.codomain(), true);
      return top ? s : "(" + s + ")";
    }
  }
  return "$i";
}

// Eta-expands `head args` to `arity` arguments using the head's type.
Term etaExpand(const Term& head, const std::vector<Term>& args, const Type& headType, std::size_t arity) {
  std::vector<Type> missing;
  Type t = headType;
  for (std::size_t i = 0; i < args.size(); ++i) t = t.codomain();
  for (std::size_t i = args.size(); i < arity; ++i) {
    missing.push_back(t.domain());
    t = t.codomain();
  }
  const auto m = static_cast<std::uint32_t>(missing.size());
  std::vector<Term> full;
  for (const auto& a : args) full.push_back(kernel::lift(a, m));
  for (std::uint32_t i = 0; i < m; ++i) full.push_back(Term::bvar(m - 1 - i));
  Term body = Term::app(head, full);
  for (std::size_t i = missing.size(); i-- > 0;) body = Term::lam("e", missing[i], body);
  return body;
}

class Th0Printer {
 public:
  explicit Th0Printer(const kernel::Signature& sig) : sig_(sig) {}

  std::string print(const Term& t, std::size_t depth) {
    switch (t.kind()) {
      case Term::Kind::BVar: return varName(depth - 1 - t.index());
      case Term::Kind::FVar: return mangle(t.name());
      case Term::Kind::Const: return application(t, depth);
      case Term::Kind::App: return application(t, depth);
      case Term::Kind::Lam:
        return "(^[" + varName(depth) + ":" + th0Type(t.binderType(), false) + "]: " +
               print(t.body(), depth + 1) + ")";
      case Term::Kind::All:
        return "(![" + varName(depth) + ":" + th0Type(t.binderType(), false) + "]: " +
               print(t.body(), depth + 1) + ")";
      case Term::Kind::Imp:
        return "(" + print(t.antecedent(), depth) + " => " + print(t.consequent(), depth) + ")";
    }
    return "";
  }

 private:
  std::string application(const Term& t, std::size_t depth) {
    kernel::Spine sp = kernel::spine(t);
    if (sp.head.is(Term::Kind::Const)) {
      if (auto nat = nativeConnective(sp.head.name())) {
        if (sp.args.size() < nat->arity) {
          return print(etaExpand(sp.head, sp.args, *sig_.constType(sp.head.name()), nat->arity), depth);
        }
        return native(sp.head.name(), *nat, sp.args, depth);
      }
    }
    std::string s = print1(sp.head, depth);
    if (sp.args.empty()) return s;
    std::string out = "(" + s;
    for (const auto& a : sp.args) out += " @ " + print(a, depth);
    return out + ")";
  }

  std::string print1(const Term& head, std::size_t depth) {
    if (head.is(Term::Kind::Const)) return mangle(head.name());
    return print(head, depth);
  }

  std::string native(const std::string& name, const Native& nat, const std::vector<Term>& args,
                     std::size_t depth) {
    // No connective takes more arguments than its arity at type o.
    std::string core;
    if (nat.arity == 0) {
      core = nat.op;
    } else if (std::string(nat.op) == "~") {
      core = "(~ " + print(args[0], depth) + ")";
    } else if (std::string(nat.op) == "?") {
      const Type dom = kernel::familyMember(name)->second;
      Term body = args[0].is(Term::Kind::Lam) ? args[0].body()
                                              : Term::app(kernel::lift(args[0], 1), Term::bvar(0));
      core = "(?[" + varName(depth) + ":" + th0Type(dom, false) + "]: " + print(body, depth + 1) + ")";
    } else {
      core = "(" + print(args[0], depth) + " " + nat.op + " " + print(args[1], depth) + ")";
    }
    return core;
  }

  const kernel::Signature& sig_;
};

Term unfoldConnectives(const kernel::Signature& sig, Term t) {
  for (;;) {
    std::set<std::string> logical;
    kernel::forEachConst(t, [&](const std::string& c) {
      if (kernel::isLogicalConst(c)) logical.insert(c);
    });
    if (logical.empty()) return t;
    t = kernel::normalize(sig, t, logical);
  }
}

void header(std::ostringstream& os, const ProblemBundle& b) {
  os << "% problem: " << b.problemId << "\n";
  os << "% origin: " << b.theorem << " " << b.origin.begin << "-" << b.origin.end << "\n";
  os << "% mode: " << modeName(b.mode) << "\n";
}

}  // namespace

std::string toTh0(const kernel::Signature& sig, const ProblemBundle& b, const Th0Options& opts) {
  std::ostringstream os;
  header(os, b);
  for (const auto& s : b.symbols) {
    os << "thf(" << s.id << "_type, type, " << s.id << ": " << th0Type(s.type, true) << ").\n";
  }
  Th0Printer p(sig);
  auto render = [&](const Term& t) { return p.print(opts.literalDefs ? unfoldConnectives(sig, t) : t, 0); };
  for (const auto& f : b.axioms) os << "thf(" << f.name << ", axiom, " << render(f.prop) << ").\n";
  os << "thf(" << b.conjecture.name << ", conjecture, " << render(b.conjecture.prop) << ").\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser for the emitted subset

namespace {

class Th0Parser {
 public:
  explicit Th0Parser(std::string_view src) : src_(src) {}

  ProblemBundle parse() {
    ProblemBundle b;
    bool haveConjecture = false;
    skip();
    if (pos_ >= src_.size()) fail("empty problem");
    while (pos_ < src_.size()) {
      expectWord("thf");
      expect("(");
      std::string name = word();
      expect(",");
      std::string role = word();
      expect(",");
      if (role == "type") {
        std::string id = word();
        expect(":");
        Type ty = type();
        std::string n = unmangleAt(id);
        symbols_.insert_or_assign(id, ty);
        b.symbols.push_back(Symbol{n, id, ty, false});
      } else if (role == "axiom" || role == "conjecture") {
        auto [t, ty] = formula();
        if (!ty.isProp()) fail("formula '" + name + "' is not of type $o");
        Formula f{name, name, role == "axiom" ? Origin::Fact : Origin::Conjecture, kernel::betaEta(t)};
        auto readings = readFormulaName(name);
        for (const auto& r : readings) {
          if ((role == "conjecture") != (r.origin == Origin::Conjecture)) continue;
          f.origin = r.origin;
          f.source = r.candidates.front();
          break;
        }
        if (role == "axiom") {
          b.axioms.push_back(std::move(f));
        } else {
          if (haveConjecture) fail("more than one conjecture");
          b.conjecture = std::move(f);
          haveConjecture = true;
        }
      } else {
        fail("unsupported role '" + role + "'");
      }
      expect(")");
      expect(".");
      skip();
    }
    if (!haveConjecture) fail("no conjecture");
    b.problemId = meta_["problem"];
    b.mode = meta_.count("mode") ? parseMode(meta_["mode"]) : Mode::Bushy;
    std::istringstream origin(meta_["origin"]);
    std::string range;
    origin >> b.theorem >> range;
    if (auto dash = range.find('-'); dash != std::string::npos) {
      b.origin = Span{std::stoul(range.substr(0, dash)), std::stoul(range.substr(dash + 1))};
    }
    b.goal = b.conjecture.prop;
    return b;
  }

 private:
  using Typed = std::pair<Term, Type>;

  [[noreturn]] void fail(const std::string& msg) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos_ && i < src_.size(); ++i) {
      if (src_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::SyntaxError, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }

  void skip() {
    while (pos_ < src_.size()) {
      if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
      } else if (src_[pos_] == '%') {
        std::size_t end = src_.find('\n', pos_);
        if (end == std::string_view::npos) end = src_.size();
        std::string_view line = src_.substr(pos_ + 1, end - pos_ - 1);
        if (auto colon = line.find(':'); colon != std::string_view::npos) {
          std::string key(trim(line.substr(0, colon)));
          if (key == "problem" || key == "origin" || key == "mode") {
            meta_[key] = std::string(trim(line.substr(colon + 1)));
          }
        }
        pos_ = end;
      } else {
        break;
      }
    }
  }

  static std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  }

  bool at(std::string_view tok) {
    skip();
    return src_.substr(pos_, tok.size()) == tok;
  }

  void expect(std::string_view tok) {
    if (!at(tok)) fail("expected '" + std::string(tok) + "'");
    pos_ += tok.size();
  }

  static bool wordChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string word() {
    skip();
    std::size_t start = pos_;
    if (pos_ < src_.size() && src_[pos_] == '$') ++pos_;
    while (pos_ < src_.size() && wordChar(src_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a name");
    return std::string(src_.substr(start, pos_ - start));
  }

  void expectWord(std::string_view w) {
    std::size_t save = pos_;
    if (word() != w) {
      pos_ = save;
      fail("expected '" + std::string(w) + "'");
    }
  }

  std::string unmangleAt(const std::string& id) {
    try {
      return unmangle(id);
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  Type type() {
    Type lhs = typeUnit();
    if (at(">")) {
      expect(">");
      return Type::arrow(lhs, type());
    }
    return lhs;
  }

  Type typeUnit() {
    if (at("(")) {
      expect("(");
      Type t = type();
      expect(")");
      return t;
    }
    std::string w = word();
    if (w == "$i") return Type::set();
    if (w == "$o") return Type::prop();
    fail("unknown type '" + w + "'");
  }

  Typed formula() {
    Typed u = unit();
    if (at("@")) {
      Term t = u.first;
      Type ty = u.second;
      while (at("@")) {
        expect("@");
        Typed a = unit();
        if (!ty.isArrow() || ty.domain() != a.second) fail("ill-typed application");
        t = Term::app(t, a.first);
        ty = ty.codomain();
      }
      return {t, ty};
    }
    for (const char* op : {"<=>", "=>", "&", "|", "="}) {
      if (!at(op)) continue;
      expect(op);
      Typed r = unit();
      std::string o = op;
      if (o == "=") {
        if (u.second != r.second) fail("equation between different types");
        return {Term::app(Term::constant(kernel::equalsName(u.second)), {u.first, r.first}), Type::prop()};
      }
      if (!u.second.isProp() || !r.second.isProp()) fail("connective applied to non-formulas");
      if (o == "=>") return {Term::imp(u.first, r.first), Type::prop()};
      const char* c = o == "&" ? "and" : o == "|" ? "or" : "iff";
      return {Term::app(Term::constant(c), {u.first, r.first}), Type::prop()};
    }
    return u;
  }

  Typed unit() {
    if (at("(")) {
      expect("(");
      Typed t = formula();
      expect(")");
      return t;
    }
    if (at("~")) {
      expect("~");
      Typed a = unit();
      if (!a.second.isProp()) fail("negation of a non-formula");
      return {Term::app(Term::constant("not"), a.first), Type::prop()};
    }
    for (const char* q : {"!", "?", "^"}) {
      if (!at(q)) continue;
      expect(q);
      expect("[");
      std::vector<std::pair<std::string, Type>> vars;
      do {
        if (!vars.empty()) expect(",");
        std::string v = word();
        expect(":");
        vars.emplace_back(v, type());
      } while (at(","));
      expect("]");
      expect(":");
      for (const auto& v : vars) env_.push_back(v);
      Typed body = unit();
      env_.erase(env_.end() - static_cast<std::ptrdiff_t>(vars.size()), env_.end());
      Term t = body.first;
      Type ty = body.second;
      for (std::size_t i = vars.size(); i-- > 0;) {
        const auto& [v, vt] = vars[i];
        if (*q == '^') {
          t = Term::lam(v, vt, t);
          ty = Type::arrow(vt, ty);
        } else {
          if (!ty.isProp()) fail("quantified body is not a formula");
          t = *q == '!' ? Term::all(v, vt, t)
                        : Term::app(Term::constant(kernel::existsName(vt)), Term::lam(v, vt, t));
        }
      }
      return {t, ty};
    }
    std::string w = word();
    if (w == "$true") return {Term::constant("True"), Type::prop()};
    if (w == "$false") return {Term::constant("False"), Type::prop()};
    if (std::isupper(static_cast<unsigned char>(w[0]))) {
      for (std::size_t i = env_.size(); i-- > 0;) {
        if (env_[i].first == w) {
          return {Term::bvar(static_cast<std::uint32_t>(env_.size() - 1 - i)), env_[i].second};
        }
      }
      fail("unbound variable '" + w + "'");
    }
    auto it = symbols_.find(w);
    if (it == symbols_.end()) fail("undeclared symbol '" + w + "'");
    return {Term::constant(unmangleAt(w)), it->second};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::map<std::string, std::string> meta_;
  std::map<std::string, Type> symbols_;
  std::vector<std::pair<std::string, Type>> env_;
};

}  // namespace

ProblemBundle parseTh0(std::string_view text) { return Th0Parser(text).parse(); }

}  // namespace hammerforge::tptp
