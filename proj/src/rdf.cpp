#include "su/rdf.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>

#include "su/error.hpp"

namespace su {

std::string local_name(const Iri& iri) {
  const std::string& v = iri.value;
  auto pos = v.find_last_of("#/:");
  if (pos == std::string::npos || pos + 1 >= v.size()) return v;
  return v.substr(pos + 1);
}

Literal plain_literal(std::string lexical) {
  return Literal{std::move(lexical), std::nullopt, std::nullopt};
}

Literal typed_literal(std::string lexical, const Iri& datatype) {
  return Literal{std::move(lexical), datatype, std::nullopt};
}

Literal lang_literal(std::string lexical, std::string lang) {
  return Literal{std::move(lexical), std::nullopt, std::move(lang)};
}

namespace {

std::string escape_literal(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out;
}

void append_utf8(std::string& out, std::uint32_t cp) {
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

bool is_space(char c) { return c == ' ' || c == '\t'; }

class LineParser {
 public:
  LineParser(std::string_view line, std::size_t lineno)
      : line_(line), lineno_(lineno) {}

  std::vector<Term> terms() {
    std::vector<Term> out;
    for (;;) {
      skip_space();
      if (at_end()) fail("missing terminal dot");
      char c = line_[pos_];
      if (c == '.') {
        ++pos_;
        skip_space();
        if (!at_end() && line_[pos_] != '#') fail("trailing characters after dot");
        return out;
      }
      if (c == '<') {
        out.emplace_back(read_iri());
      } else if (c == '"') {
        out.emplace_back(read_literal());
      } else if (c == '_' ) {
        fail("blank nodes are not supported");
      } else {
        fail(std::string("malformed term starting with '") + c + "'");
      }
    }
  }

 private:
  [[noreturn]] void fail(const std::string& reason) const {
    throw ParseError(lineno_, reason);
  }

  bool at_end() const { return pos_ >= line_.size(); }

  void skip_space() {
    while (!at_end() && is_space(line_[pos_])) ++pos_;
  }

  Iri read_iri() {
    ++pos_;  // '<'
    std::string value;
    while (!at_end() && line_[pos_] != '>') {
      char c = line_[pos_];
      if (is_space(c) || c == '<' || c == '"') fail("invalid character in IRI");
      value += c;
      ++pos_;
    }
    if (at_end()) fail("unterminated IRI");
    ++pos_;  // '>'
    if (value.empty()) fail("empty IRI");
    return Iri(std::move(value));
  }

  std::uint32_t read_hex(std::size_t digits) {
    if (pos_ + digits > line_.size()) fail("truncated unicode escape");
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      char c = line_[pos_++];
      cp <<= 4;
      if (c >= '0' && c <= '9') cp |= static_cast<std::uint32_t>(c - '0');
      else if (c >= 'a' && c <= 'f') cp |= static_cast<std::uint32_t>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F') cp |= static_cast<std::uint32_t>(c - 'A' + 10);
      else fail("invalid hex digit in unicode escape");
    }
    return cp;
  }

  Literal read_literal() {
    ++pos_;  // '"'
    std::string lex;
    for (;;) {
      if (at_end()) fail("unterminated literal");
      char c = line_[pos_++];
      if (c == '"') break;
      if (c != '\\') {
        lex += c;
        continue;
      }
      if (at_end()) fail("dangling escape");
      char e = line_[pos_++];
      switch (e) {
        case '"': lex += '"'; break;
        case '\\': lex += '\\'; break;
        case 'n': lex += '\n'; break;
        case 'r': lex += '\r'; break;
        case 't': lex += '\t'; break;
        case 'u': append_utf8(lex, read_hex(4)); break;
        case 'U': append_utf8(lex, read_hex(8)); break;
        default: fail(std::string("unknown escape \\") + e);
      }
    }
    Literal lit{std::move(lex), std::nullopt, std::nullopt};
    if (!at_end() && line_[pos_] == '@') {
      ++pos_;
      std::string lang;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(line_[pos_])) ||
                           line_[pos_] == '-')) {
        lang += line_[pos_++];
      }
      if (lang.empty()) fail("empty language tag");
      lit.lang = std::move(lang);
    } else if (line_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (at_end() || line_[pos_] != '<') fail("datatype must be an IRI");
      lit.datatype = read_iri();
    }
    return lit;
  }

  std::string_view line_;
  std::size_t lineno_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_nquads(const Iri& iri) { return "<" + iri.value + ">"; }

std::string to_nquads(const Literal& lit) {
  std::string out = "\"" + escape_literal(lit.lexical) + "\"";
  if (lit.lang) out += "@" + *lit.lang;
  else if (lit.datatype) out += "^^" + to_nquads(*lit.datatype);
  return out;
}

std::string to_nquads(const Term& term) {
  return term.is_iri() ? to_nquads(term.iri()) : to_nquads(term.literal());
}

std::string to_nquads(const Quad& q) {
  return to_nquads(q.s) + " " + to_nquads(q.p) + " " + to_nquads(q.o) + " " +
         to_nquads(q.g) + " .";
}

std::vector<Quad> parse_nquads(std::string_view text) {
  std::vector<Quad> out;
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineno;
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }

    auto terms = LineParser(line, lineno).terms();
    if (terms.size() != 4) {
      throw ParseError(lineno, "expected 4 terms, found " + std::to_string(terms.size()));
    }
    if (!terms[0].is_iri()) throw ParseError(lineno, "literal in subject position");
    if (!terms[1].is_iri()) throw ParseError(lineno, "literal in predicate position");
    if (!terms[3].is_iri()) throw ParseError(lineno, "literal in graph position");
    out.push_back(Quad{terms[0].iri(), terms[1].iri(), terms[2], terms[3].iri()});
    if (end == text.size()) break;
  }
  return out;
}

std::string write_nquads(const std::vector<Quad>& quads) {
  using Key = std::array<std::string, 4>;
  std::vector<Key> keys;
  keys.reserve(quads.size());
  for (const auto& q : quads) {
    keys.push_back({to_nquads(q.g), to_nquads(q.s), to_nquads(q.p), to_nquads(q.o)});
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::string out;
  for (const auto& k : keys) {
    out += k[1] + " " + k[2] + " " + k[3] + " " + k[0] + " .\n";
  }
  return out;
}

}  // namespace su
