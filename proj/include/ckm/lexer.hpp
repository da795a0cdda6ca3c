#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ckm/diagnostics.hpp"

namespace ckm {

enum class TokenKind {
  identifier,
  keyword,
  punctuation,
  string_literal,
  number_literal,
  comment,
  eof,
};

/// One lexeme plus the whitespace that preceded it. Concatenating
/// leading_trivia + text over the whole stream reproduces the input file.
struct Token {
  TokenKind kind = TokenKind::eof;
  std::string text;
  std::string leading_trivia;
  SourceLocation location;
};

struct LexResult {
  std::vector<Token> tokens;
  std::vector<Diagnostic> diagnostics;
};

/// Lexes a source file into a full-fidelity token stream. Never throws:
/// lexical problems (unterminated strings or comments, stray characters,
/// generic type arguments) become diagnostics, and the offending bytes stay
/// in the stream as tokens or trivia.
LexResult tokenize(std::string_view source, const std::string& file);

const char* to_string(TokenKind kind);

}  // namespace ckm
