// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "oracles.hpp"

#include <stdlib.h>

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hammerforge/basis/basis.hpp"
#include "hammerforge/script/elaborate.hpp"

namespace hftest {

using k::ProofTerm;
using k::Term;
using k::Type;

std::string sourceDir() { return HF_SOURCE_DIR; }

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string miniCorpus() { return readFile(sourceDir() + "/corpus/mini.mg"); }

// ---- kernel fixtures ------------------------------------------------------

namespace {

const Type o = Type::prop();

Term andOf(Term a, Term b) { return Term::app(Term::constant("and"), {std::move(a), std::move(b)}); }

// Builds `λA B a b p H. body` with hypothesis props supplied by the caller.
ProofTerm andIShape(Type typeA, Term propA, Term propB, Term propH, ProofTerm body) {
  return ProofTerm::tlam(
      "A", typeA,
      ProofTerm::tlam(
          "B", o,
          ProofTerm::plam(
              "a", std::move(propA),
              ProofTerm::plam("b", std::move(propB),
                              ProofTerm::tlam("p", o, ProofTerm::plam("H", std::move(propH),
                                                                      std::move(body)))))));
}

Term fv(const char* n) { return Term::fvar(n); }

ProofTerm happ(std::initializer_list<const char*> hs) {
  auto it = hs.begin();
  ProofTerm d = ProofTerm::hyp(*it++);
  for (; it != hs.end(); ++it) d = ProofTerm::papp(d, ProofTerm::hyp(*it));
  return d;
}

Term hProp() { return Term::imp(fv("A"), Term::imp(fv("B"), fv("p"))); }

}  // namespace

Term andIStatement() {
  return Term::all("A", o,
                   Term::all("B", o,
                             Term::imp(Term::bvar(1),
                                       Term::imp(Term::bvar(0), andOf(Term::bvar(1), Term::bvar(0))))));
}

ProofTerm andIProof() {
  // Hypothesis props mention the bound variables by name (locally nameless).
  return andIShape(o, fv("A"), fv("B"), hProp(), happ({"H", "a", "b"}));
}

std::vector<Mutant> andIMutants() {
  Term stmt = andIStatement();
  Term hp = hProp();
  std::vector<Mutant> m;
  m.push_back({"arguments swapped", andIShape(o, fv("A"), fv("B"), hp, happ({"H", "b", "a"})), stmt});
  m.push_back({"unknown hypothesis", andIShape(o, fv("A"), fv("B"), hp, happ({"H", "a", "c"})), stmt});
  m.push_back({"first argument repeated", andIShape(o, fv("A"), fv("B"), hp, happ({"H", "a", "a"})), stmt});
  m.push_back({"argument dropped", andIShape(o, fv("A"), fv("B"), hp, happ({"H", "a"})), stmt});
  m.push_back({"extra argument", andIShape(o, fv("A"), fv("B"), hp, happ({"H", "a", "b", "b"})), stmt});
  m.push_back({"hypothesis prop changed", andIShape(o, fv("B"), fv("B"), hp, happ({"H", "a", "b"})), stmt});
  m.push_back({"continuation prop reordered",
               andIShape(o, fv("A"), fv("B"),
                         Term::imp(fv("B"), Term::imp(fv("A"), fv("p"))),
                         happ({"H", "a", "b"})),
               stmt});
  m.push_back({"binder at the wrong type", andIShape(Type::set(), fv("A"), fv("B"), hp, happ({"H", "a", "b"})),
               stmt});
  m.push_back({"unknown theorem",
               andIShape(o, fv("A"), fv("B"), hp,
                         ProofTerm::papp(ProofTerm::papp(ProofTerm::known("andJ"), ProofTerm::hyp("a")),
                                         ProofTerm::hyp("b"))),
               stmt});
  m.push_back({"claimed conjunction reversed", andIProof(),
               Term::all("A", o,
                         Term::all("B", o,
                                   Term::imp(Term::bvar(1), Term::imp(Term::bvar(0),
                                                                      andOf(Term::bvar(0), Term::bvar(1))))))});
  return m;
}

const k::Signature& propertySignature() {
  static std::once_flag once;
  static k::Signature sig;
  std::call_once(once, [] {
    auto dev = hammerforge::script::elaborate(hammerforge::basis::bootstrap(), R"(
Parameter a0 : set.
Parameter P0 : set -> prop.
Parameter R0 : set -> set -> prop.
Parameter g0 : set -> set -> set.
Parameter H0 : (set -> set) -> set.
Parameter K0 : (set -> prop) -> prop.
Parameter Q0 : prop -> set.
)");
    if (!dev.ok()) throw std::logic_error(dev.diagnostics.front().message);
    sig = dev.sig;
  });
  return sig;
}

TermGenerator::TermGenerator(std::uint32_t seed) : rng_(seed) {}

bool TermGenerator::coin(int percent) {
  return std::uniform_int_distribution<int>(0, 99)(rng_) < percent;
}

Type TermGenerator::randomType() {
  static const std::vector<Type> types = {
      Type::set(), Type::prop(), Type::arrow(Type::set(), Type::set()),
      Type::arrow(Type::set(), Type::prop()), Type::arrow(Type::prop(), Type::prop()),
      arrows({Type::set(), Type::set()}, Type::prop())};
  return types[std::uniform_int_distribution<std::size_t>(0, types.size() - 1)(rng_)];
}

Term TermGenerator::term(const Type& type, int depth) {
  for (;;) {
    std::vector<Type> env;
    Term t = gen(type, depth, env);
    if (termDepth(t) <= depth) return t;
  }
}

Term TermGenerator::leaf(const Type& type, int depth, std::vector<Type>& env) {
  std::vector<Term> options;
  for (std::size_t i = 0; i < env.size(); ++i) {
    if (env[env.size() - 1 - i] == type) options.push_back(Term::bvar(static_cast<std::uint32_t>(i)));
  }
  for (const auto& e : propertySignature().entries()) {
    if (e->isConst() && *e->type == type) options.push_back(Term::constant(e->name));
  }
  if (!options.empty()) {
    return options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng_)];
  }
  if (type.isArrow()) {
    env.push_back(type.domain());
    Term body = gen(type.codomain(), depth - 1, env);
    env.pop_back();
    return Term::lam("v", type.domain(), body);
  }
  throw std::logic_error("no leaf of type " + type.str());
}

Term TermGenerator::gen(const Type& type, int depth, std::vector<Type>& env) {
  if (depth <= 1 || coin(25)) return leaf(type, depth, env);
  int choice = std::uniform_int_distribution<int>(0, 9)(rng_);
  if (type.isArrow() && choice < 3) {
    env.push_back(type.domain());
    Term body = gen(type.codomain(), depth - 1, env);
    env.pop_back();
    return Term::lam("x", type.domain(), body);
  }
  if (type.isProp() && choice < 2) {
    return Term::imp(gen(type, depth - 1, env), gen(type, depth - 1, env));
  }
  if (type.isProp() && choice < 4) {
    Type dom = coin(70) ? Type::set() : Type::prop();
    env.push_back(dom);
    Term body = gen(type, depth - 1, env);
    env.pop_back();
    return Term::all("y", dom, body);
  }
  if (choice < 6 && depth >= 3) {
    // beta redex
    Type dom = coin(70) ? Type::set() : Type::prop();
    env.push_back(dom);
    Term body = gen(type, depth - 2, env);
    env.pop_back();
    return Term::app(Term::lam("z", dom, body), gen(dom, depth - 1, env));
  }
  if (choice < 7 && type.isArrow() && depth >= 3) {
    // eta expansion of some function
    Term f = gen(type, depth - 2, env);
    return Term::lam("w", type.domain(), Term::app(k::lift(f, 1), Term::bvar(0)));
  }
  Type dom = coin(65) ? Type::set() : Type::prop();
  return Term::app(gen(Type::arrow(dom, type), depth - 1, env), gen(dom, depth - 1, env));
}

int termDepth(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::App:
      return 1 + std::max(termDepth(t.fn()), termDepth(t.arg()));
    case Term::Kind::Imp:
      return 1 + std::max(termDepth(t.antecedent()), termDepth(t.consequent()));
    case Term::Kind::Lam:
    case Term::Kind::All:
      return 1 + termDepth(t.body());
    default:
      return 1;
  }
}

Term rehint(const Term& t, const std::string& prefix) {
  switch (t.kind()) {
    case Term::Kind::App:
      return Term::app(rehint(t.fn(), prefix), rehint(t.arg(), prefix));
    case Term::Kind::Imp:
      return Term::imp(rehint(t.antecedent(), prefix), rehint(t.consequent(), prefix));
    case Term::Kind::Lam:
      return Term::lam(prefix + t.name(), t.binderType(), rehint(t.body(), prefix));
    case Term::Kind::All:
      return Term::all(prefix + t.name(), t.binderType(), rehint(t.body(), prefix));
    default:
      return t;
  }
}

}  // namespace hftest

// ---- TPTP oracles ---------------------------------------------------------

namespace hftest {

namespace {

struct Tok {
  std::string text;
  std::size_t pos;
};

std::vector<Tok> tptpTokens(const std::string& s) {
  std::vector<Tok> out;
  std::size_t i = 0;
  const std::vector<std::string> ops = {"<=>", "=>", "<=", "<~>", "~|", "~&", "!=", "!>", "?*", "@+", "@-",
                                        "(", ")", "[", "]", ",", ".", ":", "!", "?", "^", "@", "&",
                                        "|", "~", "=", ">", "*", "+"};
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '%') {
      while (i < s.size() && s[i] != '\n') ++i;
    } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      std::size_t j = i + 1;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({s.substr(i, j - i), i});
      i = j;
    } else {
      bool found = false;
      for (const auto& op : ops) {
        if (s.compare(i, op.size(), op) == 0) {
          out.push_back({op, i});
          i += op.size();
          found = true;
          break;
        }
      }
      if (!found) {
        out.push_back({std::string(1, c), i});
        ++i;
      }
    }
  }
  return out;
}

bool lowerWord(const std::string& w) { return !w.empty() && std::islower(static_cast<unsigned char>(w[0])); }
bool upperWord(const std::string& w) { return !w.empty() && std::isupper(static_cast<unsigned char>(w[0])); }

struct OracleError {
  std::string msg;
};

class TokenStream {
 public:
  explicit TokenStream(std::vector<Tok> toks) : toks_(std::move(toks)) {}
  bool done() const { return i_ >= toks_.size(); }
  const std::string& peek() const {
    static const std::string eof = "<eof>";
    return done() ? eof : toks_[i_].text;
  }
  std::string next() {
    if (done()) throw OracleError{"unexpected end of input"};
    return toks_[i_++].text;
  }
  void expect(const std::string& t) {
    std::string got = next();
    if (got != t) throw OracleError{"expected '" + t + "', got '" + got + "'"};
  }
  bool accept(const std::string& t) {
    if (peek() != t) return false;
    ++i_;
    return true;
  }

 private:
  std::vector<Tok> toks_;
  std::size_t i_ = 0;
};

class FofOracle {
 public:
  explicit FofOracle(const std::string& text) : ts_(tptpTokens(text)) {}

  void run() {
    int conjectures = 0;
    std::set<std::string> names;
    while (!ts_.done()) {
      ts_.expect("fof");
      ts_.expect("(");
      std::string name = ts_.next();
      if (!lowerWord(name)) throw OracleError{"bad formula name " + name};
      if (!names.insert(name).second) throw OracleError{"duplicate name " + name};
      ts_.expect(",");
      std::string role = ts_.next();
      if (role == "conjecture") ++conjectures;
      else if (role != "axiom" && role != "hypothesis") throw OracleError{"bad role " + role};
      ts_.expect(",");
      vars_.clear();
      formula();
      ts_.expect(")");
      ts_.expect(".");
    }
    if (conjectures > 1) throw OracleError{"several conjectures"};
  }

 private:
  void formula() {
    unitary();
    const std::string& op = ts_.peek();
    if (op == "&" || op == "|") {
      while (ts_.accept(op)) unitary();
    } else if (op == "=>" || op == "<=>" || op == "<=" || op == "<~>" || op == "~|" || op == "~&") {
      ts_.next();
      unitary();
    }
  }

  void unitary() {
    if (ts_.accept("(")) {
      formula();
      ts_.expect(")");
      return;
    }
    if (ts_.accept("~")) {
      unitary();
      return;
    }
    if (ts_.peek() == "!" || ts_.peek() == "?") {
      ts_.next();
      ts_.expect("[");
      std::vector<std::string> bound;
      do {
        std::string v = ts_.next();
        if (!upperWord(v)) throw OracleError{"bad variable " + v};
        bound.push_back(v);
      } while (ts_.accept(","));
      ts_.expect("]");
      ts_.expect(":");
      for (auto& v : bound) vars_.push_back(v);
      unitary();
      vars_.resize(vars_.size() - bound.size());
      return;
    }
    atom();
  }

  void atom() {
    std::string w = ts_.peek();
    if (w == "$true" || w == "$false") {
      ts_.next();
      return;
    }
    if (lowerWord(w)) {
      // Could be a predicate or the left side of an equation.
      std::size_t arity = 0;
      ts_.next();
      if (ts_.accept("(")) {
        do {
          term();
          ++arity;
        } while (ts_.accept(","));
        ts_.expect(")");
      }
      if (ts_.peek() == "=" || ts_.peek() == "!=") {
        use(w, arity, false);
        ts_.next();
        term();
        return;
      }
      use(w, arity, true);
      return;
    }
    term();
    if (!(ts_.accept("=") || ts_.accept("!="))) throw OracleError{"expected an equation"};
    term();
  }

  void term() {
    std::string w = ts_.next();
    if (upperWord(w)) {
      if (std::find(vars_.begin(), vars_.end(), w) == vars_.end()) throw OracleError{"unbound " + w};
      return;
    }
    if (!lowerWord(w)) throw OracleError{"bad term token " + w};
    std::size_t arity = 0;
    if (ts_.accept("(")) {
      do {
        term();
        ++arity;
      } while (ts_.accept(","));
      ts_.expect(")");
    }
    use(w, arity, false);
  }

  void use(const std::string& f, std::size_t arity, bool predicate) {
    auto [it, fresh] = symbols_.emplace(f, std::make_pair(arity, predicate));
    if (!fresh && it->second != std::make_pair(arity, predicate)) {
      throw OracleError{"inconsistent use of " + f};
    }
  }

  TokenStream ts_;
  std::vector<std::string> vars_;
  std::map<std::string, std::pair<std::size_t, bool>> symbols_;
};

// Simple types as strings: "i", "o", or "(A>B)".
class Th0Oracle {
 public:
  explicit Th0Oracle(const std::string& text) : ts_(tptpTokens(text)) {}

  void run() {
    std::set<std::string> names;
    while (!ts_.done()) {
      ts_.expect("thf");
      ts_.expect("(");
      std::string name = ts_.next();
      if (!names.insert(name).second) throw OracleError{"duplicate name " + name};
      ts_.expect(",");
      std::string role = ts_.next();
      ts_.expect(",");
      if (role == "type") {
        std::string sym = ts_.next();
        if (!lowerWord(sym)) throw OracleError{"bad symbol " + sym};
        ts_.expect(":");
        if (!decls_.emplace(sym, type()).second) throw OracleError{"redeclared " + sym};
      } else if (role == "axiom" || role == "conjecture") {
        env_.clear();
        if (formula() != "o") throw OracleError{"formula " + name + " is not $o"};
      } else {
        throw OracleError{"bad role " + role};
      }
      ts_.expect(")");
      ts_.expect(".");
    }
  }

 private:
  std::string type() {
    std::string lhs = typeUnit();
    if (ts_.accept(">")) return "(" + lhs + ">" + type() + ")";
    return lhs;
  }
  std::string typeUnit() {
    if (ts_.accept("(")) {
      std::string t = type();
      ts_.expect(")");
      return t;
    }
    std::string w = ts_.next();
    if (w == "$i") return "i";
    if (w == "$o") return "o";
    throw OracleError{"bad type " + w};
  }

  // Splits "(A>B)" into A and B.
  static std::pair<std::string, std::string> arrow(const std::string& t) {
    if (t.size() < 3 || t[0] != '(') throw OracleError{"applying a non-function"};
    int depth = 0;
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
      if (t[i] == '(') ++depth;
      if (t[i] == ')') --depth;
      if (t[i] == '>' && depth == 0) return {t.substr(1, i - 1), t.substr(i + 1, t.size() - i - 2)};
    }
    throw OracleError{"malformed type"};
  }

  std::string formula() {
    std::string t = unit();
    if (ts_.peek() == "@") {
      while (ts_.accept("@")) {
        auto [dom, cod] = arrow(t);
        if (unit() != dom) throw OracleError{"argument type mismatch"};
        t = cod;
      }
      return t;
    }
    const std::string op = ts_.peek();
    if (op == "&" || op == "|" || op == "=>" || op == "<=>") {
      ts_.next();
      if (t != "o" || unit() != "o") throw OracleError{"connective on non-formula"};
      return "o";
    }
    if (op == "=") {
      ts_.next();
      if (unit() != t) throw OracleError{"equation type mismatch"};
      return "o";
    }
    return t;
  }

  std::string unit() {
    if (ts_.accept("(")) {
      std::string t = formula();
      ts_.expect(")");
      return t;
    }
    if (ts_.accept("~")) {
      if (unit() != "o") throw OracleError{"negating a non-formula"};
      return "o";
    }
    if (ts_.peek() == "!" || ts_.peek() == "?" || ts_.peek() == "^") {
      std::string q = ts_.next();
      ts_.expect("[");
      std::vector<std::pair<std::string, std::string>> bound;
      do {
        std::string v = ts_.next();
        if (!upperWord(v)) throw OracleError{"bad variable " + v};
        ts_.expect(":");
        bound.emplace_back(v, type());
      } while (ts_.accept(","));
      ts_.expect("]");
      ts_.expect(":");
      for (auto& b : bound) env_.push_back(b);
      std::string body = unit();
      env_.resize(env_.size() - bound.size());
      if (q != "^") {
        if (body != "o") throw OracleError{"quantified non-formula"};
        return "o";
      }
      for (std::size_t i = bound.size(); i-- > 0;) body = "(" + bound[i].second + ">" + body + ")";
      return body;
    }
    std::string w = ts_.next();
    if (w == "$true" || w == "$false") return "o";
    if (upperWord(w)) {
      for (std::size_t i = env_.size(); i-- > 0;) {
        if (env_[i].first == w) return env_[i].second;
      }
      throw OracleError{"unbound " + w};
    }
    auto it = decls_.find(w);
    if (it == decls_.end()) throw OracleError{"undeclared " + w};
    return it->second;
  }

  TokenStream ts_;
  std::map<std::string, std::string> decls_;
  std::vector<std::pair<std::string, std::string>> env_;
};

}  // namespace

std::string checkFof(const std::string& text) {
  try {
    FofOracle(text).run();
  } catch (const OracleError& e) {
    return e.msg;
  }
  return "";
}

std::string checkTh0(const std::string& text) {
  try {
    Th0Oracle(text).run();
  } catch (const OracleError& e) {
    return e.msg;
  }
  return "";
}

}  // namespace hftest

namespace hftest {

std::vector<SiteRef> sitesOf(const hammerforge::script::Development& dev) {
  std::vector<SiteRef> out;
  for (const auto& th : dev.theorems) {
    std::size_t seq = 0;
    for (const auto& e : th.trace) {
      if (e.site) out.push_back(SiteRef{&th, &e, ++seq});
    }
  }
  return out;
}

hammerforge::tptp::BundleRequest bushyRequest(const SiteRef& s) {
  hammerforge::tptp::BundleRequest r;
  r.problemId = "bushy_" + hammerforge::tptp::mangle(s.theorem->name) + "_" + std::to_string(s.seq);
  r.mode = hammerforge::tptp::Mode::Bushy;
  r.theorem = s.theorem->name;
  r.origin = s.entry->siteSpan;
  r.ctx = s.entry->goal.ctx;
  r.conclusion = s.entry->goal.conclusion;
  r.facts = s.entry->facts;
  r.hyps = s.entry->hyps;
  return r;
}

const hammerforge::script::Development& ordinalDevelopment() {
  static const hammerforge::script::Development dev = hammerforge::script::elaborate(
      hammerforge::basis::bootstrap(), readFile(sourceDir() + "/tests/fixtures/ordinal.mg"));
  return dev;
}

hammerforge::tptp::ProblemBundle ordinalBundle() {
  const auto& dev = ordinalDevelopment();
  for (const auto& s : sitesOf(dev)) {
    if (s.entry->kind == hammerforge::script::Tactic::Kind::Exact && s.entry->depth == 1) {
      return hammerforge::tptp::buildBundle(dev.sig.prefix(s.theorem->sigIndex), bushyRequest(s));
    }
  }
  throw std::logic_error("fixture site missing");
}

// ---- hammer oracles ------------------------------------------------------

std::size_t countTacticSites(const std::string& text) {
  // Drop (possibly nested) comments.
  std::string clean;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text.compare(i, 2, "(*") == 0) {
      ++depth;
      ++i;
    } else if (depth > 0 && text.compare(i, 2, "*)") == 0) {
      --depth;
      ++i;
    } else if (depth == 0) {
      clean += text[i];
    }
  }
  static const std::regex theorem(R"(\bTheorem\b[^.]*\.([\s\S]*?)\bQed\.)");
  static const std::regex keyword(R"(\b(let|assume|exact|apply|rewrite|claim)\b)");
  std::size_t n = 0;
  for (std::sregex_iterator it(clean.begin(), clean.end(), theorem), end; it != end; ++it) {
    std::string body = (*it)[1].str();
    n += static_cast<std::size_t>(
        std::distance(std::sregex_iterator(body.begin(), body.end(), keyword), std::sregex_iterator()));
  }
  return n;
}

std::vector<std::size_t> bruteForceSelection(const std::vector<hammerforge::Span>& spans,
                                             const std::vector<bool>& solved) {
  const std::size_t n = spans.size();
  std::vector<std::size_t> best;
  std::size_t bestChars = 0;
  bool found = false;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<std::size_t> pick;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (!solved[i]) ok = false;
      for (std::size_t j : pick) {
        if (spans[i].contains(spans[j]) || spans[j].contains(spans[i])) ok = false;
      }
      pick.push_back(i);
    }
    if (!ok) continue;
    std::size_t chars = 0;
    for (std::size_t i : pick) chars += spans[i].size();
    if (!found || chars > bestChars || (chars == bestChars && pick.size() < best.size())) {
      found = true;
      best = pick;
      bestChars = chars;
    }
  }
  return best;
}

namespace {

void growForest(std::mt19937& rng, std::size_t begin, std::size_t end, std::size_t& budget,
                std::vector<hammerforge::Span>& out) {
  // Split [begin, end) into a few disjoint children, each maybe nesting further.
  std::size_t pos = begin;
  while (budget > 0 && pos + 2 < end) {
    std::uniform_int_distribution<std::size_t> gap(0, 2);
    std::size_t b = pos + gap(rng);
    if (b + 2 > end) break;
    std::uniform_int_distribution<std::size_t> len(2, std::max<std::size_t>(2, (end - b)));
    std::size_t e = std::min(end, b + len(rng));
    if (e <= b || (b == begin && e == end)) {
      pos = b + 1;
      continue;
    }
    out.push_back(hammerforge::Span{b, e});
    --budget;
    if (std::uniform_int_distribution<int>(0, 1)(rng)) growForest(rng, b, e, budget, out);
    pos = e;
    if (std::uniform_int_distribution<int>(0, 3)(rng) == 0) break;
  }
}

}  // namespace

std::vector<hammerforge::Span> randomForest(std::mt19937& rng, std::size_t maxNodes) {
  std::vector<hammerforge::Span> out;
  std::size_t want = std::uniform_int_distribution<std::size_t>(1, maxNodes)(rng);
  std::size_t width = 20 + 8 * want;
  while (out.empty()) {
    std::size_t budget = want;
    growForest(rng, 0, width, budget, out);
  }
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

std::size_t expectedRewrittenSize(const std::string& original,
                                  const std::vector<hammerforge::Span>& spans,
                                  const std::vector<std::vector<std::string>>& deps) {
  std::size_t size = original.size();
  for (std::size_t i = 0; i < spans.size(); ++i) {
    std::string call = "aby";
    for (const auto& d : deps[i]) call += " " + d;
    call += ".";
    size = size - spans[i].size() + call.size();
  }
  return size;
}

// ---- prover fixtures ------------------------------------------------------

TempDir::TempDir() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "hftest-XXXXXX").string();
  if (!::mkdtemp(tmpl.data())) throw std::runtime_error("mkdtemp failed");
  path_ = tmpl;
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string TempDir::write(const std::string& name, const std::string& text) const {
  std::string full = path_ + "/" + name;
  std::filesystem::create_directories(std::filesystem::path(full).parent_path());
  std::ofstream out(full, std::ios::binary);
  out << text;
  return full;
}

hammerforge::driver::ProverSpec mockProver(const std::string& name, const std::string& table,
                                           hammerforge::driver::Dialect dialect) {
  hammerforge::driver::ProverSpec p;
  p.name = name;
  p.path = HF_MOCK_PROVER;
  p.args = {"--table", table, "--name", name, "{file}", "{timeout}"};
  p.dialect = dialect;
  return p;
}

}  // namespace hftest
