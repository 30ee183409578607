#pragma once

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wavecone::dsl {

struct SourceSpan {
  int line = 1;
  int column = 1;
};

/// Syntax or validation failure with its position in the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& file, SourceSpan at, const std::string& message, std::set<std::string> expected = {})
      : std::runtime_error(format(file, at, message, expected)),
        file_(file),
        at_(at),
        message_(message),
        expected_(std::move(expected)) {}

  const std::string& file() const { return file_; }
  int line() const { return at_.line; }
  int column() const { return at_.column; }
  const std::string& message() const { return message_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  static std::string format(const std::string& file, SourceSpan at, const std::string& message,
                            const std::set<std::string>& expected) {
    std::string out = file + ":" + std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + message;
    if (!expected.empty()) {
      out += " (expected one of:";
      for (const auto& e : expected) out += " " + e;
      out += ")";
    }
    return out;
  }

  std::string file_;
  SourceSpan at_;
  std::string message_;
  std::set<std::string> expected_;
};

enum class TokenKind { identifier, integer, symbol, end };

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  SourceSpan span;
};

inline std::string describe(const Token& t) {
  switch (t.kind) {
    case TokenKind::end: return "end of input";
    case TokenKind::integer: return "integer '" + t.text + "'";
    case TokenKind::identifier: return "identifier '" + t.text + "'";
    case TokenKind::symbol: return "'" + t.text + "'";
  }
  return t.text;
}

/// Splits text into identifiers, unsigned integers and single-character symbols.
/// '#' starts a comment running to the end of the line.
inline std::vector<Token> tokenize(std::string_view text, const std::string& file) {
  static constexpr std::string_view symbols = "{}[],;=+-*/^";
  std::vector<Token> out;
  SourceSpan pos;
  std::size_t i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j, ++i) {
      if (text[i] == '\n') {
        ++pos.line;
        pos.column = 1;
      } else {
        ++pos.column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const SourceSpan start = pos;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      out.push_back({TokenKind::identifier, std::string(text.substr(i, j - i)), start});
      advance(j - i);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      out.push_back({TokenKind::integer, std::string(text.substr(i, j - i)), start});
      advance(j - i);
    } else if (symbols.find(c) != std::string_view::npos) {
      out.push_back({TokenKind::symbol, std::string(1, c), start});
      advance(1);
    } else {
      throw ParseError(file, start, std::string("unexpected character '") + c + "'");
    }
  }
  out.push_back({TokenKind::end, "", pos});
  return out;
}

}  // namespace wavecone::dsl
