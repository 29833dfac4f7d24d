#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "mgl/error.hpp"

namespace mgl {

struct Token {
  std::string text;
  size_t pos;
};

// Shared tokenizer for the formula, type and lambda-term surface syntax.
// Symbol tokens: parens, braces, dot, colon, comma, equals, tilde, arrow,
// the two lattice connectives, and lone backslash.
inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < src.size()) {
    char c = src[i];
    if (isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (isalnum(static_cast<unsigned char>(src[j])) ||
                                src[j] == '_' || src[j] == '\''))
        ++j;
      out.push_back({src.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({src.substr(i, j - i), i});
      i = j;
      continue;
    }
    switch (c) {
      case '(': case ')': case '{': case '}': case '.': case ':': case ',':
      case '=': case '~':
        out.push_back({std::string(1, c), i});
        ++i;
        continue;
      case '-':
        if (i + 1 < src.size() && src[i + 1] == '>') {
          out.push_back({"->", i});
          i += 2;
          continue;
        }
        fail("ParseError", "stray '-' at position " + std::to_string(i));
      case '/':
        if (i + 1 < src.size() && src[i + 1] == '\\') {
          out.push_back({"/\\", i});
          i += 2;
          continue;
        }
        fail("ParseError", "stray '/' at position " + std::to_string(i));
      case '\\':
        if (i + 1 < src.size() && src[i + 1] == '/') {
          out.push_back({"\\/", i});
          i += 2;
          continue;
        }
        out.push_back({"\\", i});
        ++i;
        continue;
      default:
        fail("ParseError", std::string("unexpected character '") + c + "' at position " +
                               std::to_string(i));
    }
  }
  return out;
}

// Cursor over a token stream with the usual peek/expect helpers.
struct TokenCursor {
  std::vector<Token> toks;
  size_t i = 0;

  explicit TokenCursor(const std::string& src) : toks(tokenize(src)) {}

  bool done() const { return i >= toks.size(); }
  const std::string& peek() const {
    static const std::string kEnd = "<end>";
    return done() ? kEnd : toks[i].text;
  }
  bool at(const std::string& s) const { return !done() && toks[i].text == s; }
  std::string next() {
    if (done()) fail("ParseError", "unexpected end of input");
    return toks[i++].text;
  }
  void expect(const std::string& s) {
    if (!at(s)) fail("ParseError", "expected '" + s + "', found '" + peek() + "'");
    ++i;
  }
  bool eat(const std::string& s) {
    if (!at(s)) return false;
    ++i;
    return true;
  }
  std::string ident() {
    if (done()) fail("ParseError", "expected identifier, found end of input");
    const std::string& t = toks[i].text;
    if (!(isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_'))
      fail("ParseError", "expected identifier, found '" + t + "'");
    return toks[i++].text;
  }
};

}  // namespace mgl
