// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include "hammerforge/kernel/signature.hpp"

#include <map>
#include <mutex>

#include "hammerforge/error.hpp"

namespace hammerforge::kernel {

namespace {

// λP:T→o. ∀q:o. (∀x:T. P x ⇒ q) ⇒ q
Term existsDefiniens(const Type& t) {
  const Type pred = Type::arrow(t, Type::prop());
  Term inner = Term::all("x", t, Term::imp(Term::app(Term::bvar(2), Term::bvar(0)), Term::bvar(1)));
  return Term::lam("P", pred, Term::all("q", Type::prop(), Term::imp(inner, Term::bvar(0))));
}

// λx y:T. ∀Q:T→o. Q x ⇒ Q y
Term equalsDefiniens(const Type& t) {
  const Type pred = Type::arrow(t, Type::prop());
  Term body = Term::all("Q", pred, Term::imp(Term::app(Term::bvar(0), Term::bvar(2)),
                                             Term::app(Term::bvar(0), Term::bvar(1))));
  return Term::lam("x", t, Term::lam("y", t, body));
}

const Entry* generatedFamilyEntry(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const Entry>> cache;
  auto member = familyMember(name);
  if (!member) return nullptr;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second.get();
  auto e = std::make_shared<Entry>();
  e->kind = Entry::Kind::Def;
  e->name = name;
  const Type& t = member->second;
  if (member->first == "ex") {
    e->type = Type::arrow(Type::arrow(t, Type::prop()), Type::prop());
    e->definiens = existsDefiniens(t);
  } else {
    e->type = Type::arrow(t, Type::arrow(t, Type::prop()));
    e->definiens = equalsDefiniens(t);
  }
  auto [pos, _] = cache.emplace(name, std::move(e));
  return pos->second.get();
}

Type decodeAt(const std::string& code, std::size_t& pos) {
  if (pos >= code.size()) throw std::invalid_argument("truncated type code");
  const char c = code[pos++];
  if (c == 'i') return Type::set();
  if (c == 'o') return Type::prop();
  if (c == 'F') {
    Type dom = decodeAt(code, pos);
    Type cod = decodeAt(code, pos);
    return Type::arrow(dom, cod);
  }
  throw std::invalid_argument("bad type code");
}

}  // namespace

void Signature::add(Entry entry) {
  if (index_.count(entry.name) != 0) {
    throw Error(ErrorCode::DuplicateName, "duplicate declaration of '" + entry.name + "'");
  }
  // Family members may be materialized, but only with their canonical meaning.
  if (const Entry* gen = generatedFamilyEntry(entry.name)) {
    if (entry.kind != Entry::Kind::Def || !entry.definiens || !entry.type ||
        *entry.type != *gen->type || !alphaEq(*entry.definiens, *gen->definiens)) {
      throw Error(ErrorCode::DuplicateName, "'" + entry.name + "' is a reserved family name");
    }
  }
  if (isLogicalConst(entry.name) && entry.kind != Entry::Kind::Def) {
    throw Error(ErrorCode::DuplicateName, "'" + entry.name + "' is a reserved connective name");
  }
  index_.emplace(entry.name, entries_.size());
  entries_.push_back(std::make_shared<const Entry>(std::move(entry)));
}

const Entry* Signature::find(const std::string& name) const {
  auto it = index_.find(name);
  if (it != index_.end()) return entries_[it->second].get();
  return generatedFamilyEntry(name);
}

std::optional<std::size_t> Signature::indexOf(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Signature Signature::prefix(std::size_t n) const {
  Signature out;
  n = std::min(n, entries_.size());
  out.entries_.assign(entries_.begin(), entries_.begin() + static_cast<std::ptrdiff_t>(n));
  for (std::size_t i = 0; i < n; ++i) out.index_.emplace(entries_[i]->name, i);
  return out;
}

std::optional<Type> Signature::constType(const std::string& name) const {
  const Entry* e = find(name);
  if (e == nullptr || !e->isConst()) return std::nullopt;
  return e->type;
}

std::optional<Term> Signature::factProp(const std::string& name) const {
  const Entry* e = find(name);
  if (e == nullptr || !e->isFact()) return std::nullopt;
  return e->prop;
}

const Entry* Signature::def(const std::string& name) const {
  const Entry* e = find(name);
  return (e != nullptr && e->kind == Entry::Kind::Def) ? e : nullptr;
}

std::size_t Signature::height(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? 0 : it->second + 1;
}

std::string existsName(const Type& t) { return t.isSet() ? "ex" : "ex_" + t.code(); }
std::string equalsName(const Type& t) { return t.isSet() ? "eq" : "eq_" + t.code(); }

Type decodeTypeCode(const std::string& code) {
  std::size_t pos = 0;
  Type t = decodeAt(code, pos);
  if (pos != code.size()) throw std::invalid_argument("trailing type code");
  return t;
}

std::optional<std::pair<std::string, Type>> familyMember(const std::string& name) {
  if (name == "ex") return std::make_pair(std::string("ex"), Type::set());
  if (name == "eq") return std::make_pair(std::string("eq"), Type::set());
  for (const char* fam : {"ex", "eq"}) {
    const std::string prefix = std::string(fam) + "_";
    if (name.rfind(prefix, 0) != 0) continue;
    const std::string code = name.substr(prefix.size());
    if (code == "i") return std::nullopt;  // canonical name at set has no suffix
    try {
      return std::make_pair(std::string(fam), decodeTypeCode(code));
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool isLogicalConst(const std::string& name) {
  static const char* const kConnectives[] = {"True", "False", "not", "and", "or", "iff"};
  for (const char* c : kConnectives) {
    if (name == c) return true;
  }
  return familyMember(name).has_value();
}

}  // namespace hammerforge::kernel
