// Copyright 2026 The nfst-overlay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nfst/ruleset.hpp"

#include <charconv>
#include <optional>
#include <vector>

#include "nfst/error.hpp"
#include "nfst/image_io.hpp"

namespace nfst {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r'; }

bool is_printable(unsigned char c) { return c >= 0x21 && c <= 0x7e; }

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Characters that always need a backslash in ruleset text.
bool is_special(char c) {
  switch (c) {
    case '\\': case ':': case '~': case '#': case '[': case ']': case '-':
      return true;
    default:
      return false;
  }
}

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct StateRef {
  std::uint64_t id;
  std::size_t line;
  std::size_t column;
};

// Parses labels within a single token. Positions are reported relative to
// the line.
class LabelParser {
 public:
  LabelParser(Token token, std::size_t line) : token_(token), line_(line) {}

  Transition parse(StateId src, StateId dst) {
    Transition t;
    t.src = src;
    t.dst = dst;
    if (peek() == '~') {
      ++pos_;
    } else if (peek() == '[') {
      t.input = parse_class();
    } else {
      t.input = SymbolClass::single(parse_symbol());
    }
    if (at_end() || peek() != ':') fail("expected ':' between input and output");
    ++pos_;
    if (at_end()) fail("missing output label");
    if (peek() == '~') {
      ++pos_;
      t.output = OutputLabel::epsilon();
    } else {
      t.output = OutputLabel::byte(parse_symbol());
    }
    if (!at_end()) fail("unexpected trailing characters in label");
    return t;
  }

 private:
  bool at_end() const { return pos_ >= token_.text.size(); }
  char peek() const { return token_.text[pos_]; }
  std::size_t column() const { return token_.column + pos_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line_, column(), msg);
  }

  Symbol parse_symbol() {
    if (at_end()) fail("expected a symbol");
    char c = peek();
    if (c == '\\') {
      ++pos_;
      if (at_end()) fail("dangling escape");
      char e = peek();
      ++pos_;
      switch (e) {
        case 't': return '\t';
        case 'n': return '\n';
        case 'r': return '\r';
        case 'x': {
          if (pos_ + 2 > token_.text.size()) fail("\\x needs two hex digits");
          int hi = hex_value(token_.text[pos_]);
          int lo = hex_value(token_.text[pos_ + 1]);
          if (hi < 0 || lo < 0) fail("\\x needs two hex digits");
          pos_ += 2;
          return static_cast<Symbol>(hi * 16 + lo);
        }
        default:
          if (is_special(e)) return static_cast<Symbol>(e);
          --pos_;
          fail(std::string("unknown escape '\\") + e + "'");
      }
    }
    if (!is_printable(static_cast<unsigned char>(c))) {
      fail("non-printable byte; use \\xNN");
    }
    if (c == ':' || c == '~' || c == '[' || c == ']') {
      fail(std::string("'") + c + "' must be escaped");
    }
    ++pos_;
    return static_cast<Symbol>(c);
  }

  SymbolClass parse_class() {
    const std::size_t open_column = column();
    ++pos_;  // '['
    SymbolClass cls;
    bool closed = false;
    while (!at_end()) {
      if (peek() == ']') {
        ++pos_;
        closed = true;
        break;
      }
      // A bare '-' is literal at either end of the class.
      Symbol lo;
      if (peek() == '-') {
        ++pos_;
        lo = '-';
      } else {
        lo = parse_symbol();
      }
      if (!at_end() && peek() == '-' && pos_ + 1 < token_.text.size() &&
          token_.text[pos_ + 1] != ']') {
        const std::size_t range_column = column();
        ++pos_;
        Symbol hi = parse_symbol();
        if (hi < lo) {
          throw ParseError(line_, range_column, "reversed range in class");
        }
        cls.add_range(lo, hi);
      } else {
        cls.add(lo);
      }
    }
    if (!closed) throw ParseError(line_, open_column, "unterminated class");
    if (cls.empty()) throw ParseError(line_, open_column, "empty class");
    return cls;
  }

  Token token_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

// Drops an unescaped '#' and everything after it.
std::string_view strip_comment(std::string_view line) {
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '\\') {
      ++i;
    } else if (line[i] == '#') {
      return line.substr(0, i);
    }
  }
  return line;
}

std::vector<Token> tokenize(std::string_view s, std::size_t base_column) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    if (i >= s.size()) break;
    std::size_t begin = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    out.push_back({s.substr(begin, i - begin), base_column + begin});
  }
  return out;
}

std::uint64_t parse_number(const Token& tok, std::size_t line) {
  std::uint64_t value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line, tok.column,
                     "expected a non-negative integer, got '" +
                         std::string(tok.text) + "'");
  }
  return value;
}

}  // namespace

Fst parse_ruleset(std::string_view text) {
  std::optional<std::uint64_t> states;
  std::optional<StateRef> start;
  std::vector<StateRef> accepts;
  struct PendingTrans {
    StateRef src;
    StateRef dst;
    Transition t;
  };
  std::vector<PendingTrans> trans;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    line = strip_comment(line);
    std::size_t first = 0;
    while (first < line.size() && is_space(line[first])) ++first;
    if (first == line.size()) continue;

    std::size_t colon = line.find(':', first);
    if (colon == std::string_view::npos) {
      throw ParseError(line_no, first + 1, "expected '<directive>:'");
    }
    std::string_view keyword = line.substr(first, colon - first);
    while (!keyword.empty() && is_space(keyword.back())) keyword.remove_suffix(1);
    auto args = tokenize(line.substr(colon + 1), colon + 2);

    auto expect_args = [&](std::size_t n) {
      if (args.size() != n) {
        throw ParseError(line_no, first + 1,
                         "'" + std::string(keyword) + ":' takes " +
                             std::to_string(n) + " argument(s), got " +
                             std::to_string(args.size()));
      }
    };
    auto state_ref = [&](const Token& tok) {
      return StateRef{parse_number(tok, line_no), line_no, tok.column};
    };

    if (keyword == "states") {
      if (states) throw ParseError(line_no, first + 1, "duplicate 'states:' directive");
      expect_args(1);
      states = parse_number(args[0], line_no);
      if (*states == 0) {
        throw ParseError(line_no, args[0].column, "state count must be positive");
      }
    } else if (keyword == "start") {
      if (start) throw ParseError(line_no, first + 1, "duplicate 'start:' directive");
      expect_args(1);
      start = state_ref(args[0]);
    } else if (keyword == "accept") {
      if (args.empty()) {
        throw ParseError(line_no, first + 1, "'accept:' needs at least one state");
      }
      for (const auto& a : args) accepts.push_back(state_ref(a));
    } else if (keyword == "trans") {
      expect_args(3);
      StateRef src = state_ref(args[0]);
      StateRef dst = state_ref(args[1]);
      LabelParser label(args[2], line_no);
      trans.push_back({src, dst, label.parse(0, 0)});
    } else {
      throw ParseError(line_no, first + 1,
                       "unknown directive '" + std::string(keyword) + "'");
    }
  }

  if (!states) throw ParseError(line_no, 1, "missing 'states:' directive");
  if (!start) throw ParseError(line_no, 1, "missing 'start:' directive");

  auto check = [&](const StateRef& r) -> StateId {
    if (r.id >= *states) {
      throw ParseError(r.line, r.column,
                       "state " + std::to_string(r.id) + " out of range (states: " +
                           std::to_string(*states) + ")");
    }
    return static_cast<StateId>(r.id);
  };

  Fst fst;
  fst.state_count = static_cast<std::size_t>(*states);
  fst.start = check(*start);
  for (const auto& a : accepts) fst.accepting.insert(check(a));
  for (auto& p : trans) {
    p.t.src = check(p.src);
    p.t.dst = check(p.dst);
    fst.transitions.push_back(p.t);
  }
  return fst;
}

std::string escape_symbol(Symbol s) {
  switch (s) {
    case '\t': return "\\t";
    case '\n': return "\\n";
    case '\r': return "\\r";
    default: break;
  }
  char c = static_cast<char>(s);
  if (is_special(c)) return std::string("\\") + c;
  if (is_printable(s)) return std::string(1, c);
  static constexpr char kHex[] = "0123456789abcdef";
  return std::string("\\x") + kHex[s >> 4] + kHex[s & 0xf];
}

namespace {

std::string format_class(const SymbolClass& cls) {
  const auto members = cls.members();
  if (members.size() == 1) return escape_symbol(members[0]);
  std::string out = "[";
  std::size_t i = 0;
  while (i < members.size()) {
    std::size_t j = i;
    while (j + 1 < members.size() && members[j + 1] == members[j] + 1) ++j;
    out += escape_symbol(members[i]);
    if (j > i + 1) {
      out += '-';
      out += escape_symbol(members[j]);
    } else if (j == i + 1) {
      out += escape_symbol(members[j]);
    }
    i = j + 1;
  }
  out += ']';
  return out;
}

}  // namespace

std::string format_ruleset(const Fst& fst) {
  std::string out;
  out += "states: " + std::to_string(fst.state_count) + "\n";
  out += "start: " + std::to_string(fst.start) + "\n";
  if (!fst.accepting.empty()) {
    out += "accept:";
    for (StateId s : fst.accepting) out += " " + std::to_string(s);
    out += "\n";
  }
  for (const auto& t : fst.transitions) {
    out += "trans: " + std::to_string(t.src) + " " + std::to_string(t.dst) + " ";
    out += t.input ? format_class(*t.input) : "~";
    out += ':';
    out += t.output.is_epsilon() ? "~" : escape_symbol(t.output.value());
    out += "\n";
  }
  return out;
}

std::uint32_t fst_digest(const Fst& fst) {
  const std::string text = format_ruleset(fst);
  return crc32(std::span(reinterpret_cast<const std::uint8_t*>(text.data()),
                         text.size()));
}

}  // namespace nfst
