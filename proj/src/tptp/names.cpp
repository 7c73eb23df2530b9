// Copyright (c) 2026 The hammerforge authors. All rights reserved.
// Released under Apache 2.0 license as described in the file LICENSE.
#include <cctype>

#include "hammerforge/tptp/tptp.hpp"

namespace hammerforge::tptp {

namespace {

constexpr std::string_view kPrefix = "q__";

bool alnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

int hexValue(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

std::string escapeName(std::string_view name) {
  static const char* digits = "0123456789ABCDEF";
  std::string out;
  out.reserve(name.size());
  for (char c : name) {
    if (alnum(c)) {
      out += c;
    } else {
      const auto u = static_cast<unsigned char>(c);
      out += '_';
      out += digits[u >> 4];
      out += digits[u & 15];
    }
  }
  return out;
}

std::string unescapeName(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (alnum(c)) {
      out += c;
      continue;
    }
    if (c != '_') {
      throw Error(ErrorCode::UnmangleError, "unexpected character in '" + std::string(text) + "'");
    }
    if (i + 2 >= text.size()) {
      throw Error(ErrorCode::UnmangleError, "truncated escape in '" + std::string(text) + "'");
    }
    const int hi = hexValue(text[i + 1]);
    const int lo = hexValue(text[i + 2]);
    if (hi < 0 || lo < 0) {
      throw Error(ErrorCode::UnmangleError, "malformed escape in '" + std::string(text) + "'");
    }
    out += static_cast<char>(hi * 16 + lo);
    i += 2;
  }
  return out;
}

std::string mangle(std::string_view name) {
  std::string e = escapeName(name);
  if (!e.empty() && e[0] >= 'a' && e[0] <= 'z') return e;
  return std::string(kPrefix) + e;
}

std::string unmangle(std::string_view id) {
  if (id.substr(0, kPrefix.size()) == kPrefix) {
    std::string name = unescapeName(id.substr(kPrefix.size()));
    if (!name.empty() && name[0] >= 'a' && name[0] <= 'z') {
      throw Error(ErrorCode::UnmangleError, "needless prefix in '" + std::string(id) + "'");
    }
    return name;
  }
  if (id.empty() || !(id[0] >= 'a' && id[0] <= 'z')) {
    throw Error(ErrorCode::UnmangleError, "identifier '" + std::string(id) + "' is not lowercase");
  }
  return unescapeName(id);
}

std::string formulaName(Origin origin, std::string_view source, std::size_t ordinal) {
  std::string role;
  switch (origin) {
    case Origin::Fact: role = "axiom_"; break;
    case Origin::Hyp: role = "axiom_c_"; break;
    case Origin::Def: role = "axiom_d_"; break;
    case Origin::Conjecture: role = "conj_"; break;
  }
  return role + escapeName(source) + std::to_string(ordinal);
}

namespace {

// Every source name `rest` may encode: at least one trailing digit is the
// ordinal, further trailing digits may belong to the name.
std::vector<std::string> coreCandidates(std::string_view rest) {
  std::size_t digits = 0;
  while (digits < rest.size() && std::isdigit(static_cast<unsigned char>(rest[rest.size() - 1 - digits]))) {
    ++digits;
  }
  std::vector<std::string> out;
  for (std::size_t suffix = 1; suffix <= digits; ++suffix) {
    std::string_view core = rest.substr(0, rest.size() - suffix);
    if (core.empty()) continue;
    try {
      out.push_back(unescapeName(core));
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

std::vector<NameReading> readFormulaName(std::string_view id) {
  std::vector<NameReading> out;
  auto add = [&](Origin o, std::string_view rest) {
    auto c = coreCandidates(rest);
    if (!c.empty()) out.push_back(NameReading{o, std::move(c)});
  };
  auto starts = [&](std::string_view p) { return id.substr(0, p.size()) == p; };
  if (starts("conj_")) {
    add(Origin::Conjecture, id.substr(5));
  } else if (starts("axiom_")) {
    if (starts("axiom_c_")) add(Origin::Hyp, id.substr(8));
    if (starts("axiom_d_")) add(Origin::Def, id.substr(8));
    // A fact whose escaped name itself starts with `c_`/`d_` reads the same way.
    add(Origin::Fact, id.substr(6));
  }
  return out;
}

}  // namespace hammerforge::tptp
