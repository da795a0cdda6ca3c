#include "ckm/lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace ckm {

namespace {

const std::array<std::string_view, 50> kKeywords = {
    "abstract", "assert",     "boolean",  "break",      "byte",   "case",    "catch",
    "char",     "class",      "const",    "continue",   "default", "do",     "double",
    "else",     "enum",       "extends",  "final",      "finally", "float",  "for",
    "goto",     "if",         "implements", "import",   "instanceof", "int", "interface",
    "long",     "native",     "new",      "package",    "private", "protected", "public",
    "return",   "short",      "static",   "strictfp",   "super",   "switch", "synchronized",
    "this",     "throw",      "throws",   "transient",  "try",     "void",   "volatile",
    "while"};

// 'true', 'false', 'null' stay identifiers; the parser treats them as literals.
bool is_keyword(std::string_view word) {
  return std::binary_search(kKeywords.begin(), kKeywords.end(), word);
}

const std::array<std::string_view, 14> kMultiPunct = {"!=", "%=", "&&", "*=", "++", "+=", "--",
                                                      "-=", "->", "/=", "<=", "==", ">=", "||"};

bool is_ident_head(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_ident_tail(char c) {
  return is_ident_head(c) || std::isdigit(static_cast<unsigned char>(c));
}

class Lexer {
 public:
  Lexer(std::string_view source, const std::string& file) : src_(source), file_(file) {}

  LexResult run() {
    std::string trivia;
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        trivia += c;
        advance();
        continue;
      }
      Token token = next_token();
      token.leading_trivia = std::move(trivia);
      trivia.clear();
      result_.tokens.push_back(std::move(token));
    }
    Token eof;
    eof.kind = TokenKind::eof;
    eof.leading_trivia = std::move(trivia);
    eof.location = here();
    result_.tokens.push_back(std::move(eof));
    strip_generics();
    return std::move(result_);
  }

 private:
  SourceLocation here() const { return {file_, line_, column_}; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  Token make(TokenKind kind, size_t start, SourceLocation loc) {
    return Token{kind, std::string(src_.substr(start, pos_ - start)), "", std::move(loc)};
  }

  void diagnose(Severity severity, SourceLocation loc, std::string message) {
    result_.diagnostics.push_back(Diagnostic{severity, std::move(loc), std::move(message)});
  }

  Token next_token() {
    SourceLocation loc = here();
    size_t start = pos_;
    char c = src_[pos_];

    if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
      while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      return make(TokenKind::comment, start, loc);
    }
    if (c == '/' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '*') {
      advance();
      advance();
      while (pos_ < src_.size()) {
        if (src_[pos_] == '*' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
          advance();
          advance();
          return make(TokenKind::comment, start, loc);
        }
        advance();
      }
      diagnose(Severity::error, loc, "unterminated block comment");
      return make(TokenKind::comment, start, loc);
    }
    if (c == '"' || c == '\'') {
      char quote = c;
      advance();
      while (pos_ < src_.size() && src_[pos_] != quote && src_[pos_] != '\n') {
        if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) advance();
        advance();
      }
      if (pos_ < src_.size() && src_[pos_] == quote) {
        advance();
      } else {
        diagnose(Severity::error, loc, "unterminated string literal");
      }
      return make(TokenKind::string_literal, start, loc);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      if (pos_ + 1 < src_.size() && src_[pos_] == '.' &&
          std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
        advance();
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
      }
      if (pos_ < src_.size() && (src_[pos_] == 'f' || src_[pos_] == 'F' || src_[pos_] == 'd' ||
                                 src_[pos_] == 'D' || src_[pos_] == 'l' || src_[pos_] == 'L')) {
        advance();
      }
      return make(TokenKind::number_literal, start, loc);
    }
    if (is_ident_head(c)) {
      while (pos_ < src_.size() && is_ident_tail(src_[pos_])) advance();
      std::string_view word = src_.substr(start, pos_ - start);
      return make(is_keyword(word) ? TokenKind::keyword : TokenKind::identifier, start, loc);
    }

    for (std::string_view op : kMultiPunct) {
      if (src_.substr(pos_).starts_with(op)) {
        advance();
        advance();
        return make(TokenKind::punctuation, start, loc);
      }
    }
    if (std::string_view("{}()[];,.<>=!+-*/%&|^~?:@").find(c) != std::string_view::npos) {
      advance();
      return make(TokenKind::punctuation, start, loc);
    }

    diagnose(Severity::error, loc, std::string("unexpected character '") + c + "'");
    advance();
    return make(TokenKind::punctuation, start, loc);
  }

  // Folds balanced `<...>` groups that look like generic type arguments into
  // the trivia of the following token, with one warning per group. A group
  // qualifies when it opens right after an identifier and contains only
  // names, commas, dots, wildcards, and nested angles up to the matching '>'.
  void strip_generics() {
    std::vector<Token>& tokens = result_.tokens;
    std::vector<Token> kept;
    kept.reserve(tokens.size());
    size_t i = 0;
    while (i < tokens.size()) {
      const Token& token = tokens[i];
      bool after_identifier = !kept.empty() && kept.back().kind == TokenKind::identifier;
      if (token.kind == TokenKind::punctuation && token.text == "<" && after_identifier) {
        size_t end = match_generic_group(i);
        if (end != 0) {
          diagnose(Severity::warning, tokens[i].location,
                   "generic type arguments are not supported and were ignored");
          std::string folded;
          for (size_t j = i; j <= end; ++j) folded += tokens[j].leading_trivia + tokens[j].text;
          size_t next = end + 1;
          tokens[next].leading_trivia = folded + tokens[next].leading_trivia;
          i = next;
          continue;
        }
      }
      kept.push_back(tokens[i]);
      ++i;
    }
    tokens = std::move(kept);
  }

  // Returns the index of the matching '>' or 0 when the run from `open`
  // does not form a generic argument group.
  size_t match_generic_group(size_t open) const {
    const std::vector<Token>& tokens = result_.tokens;
    int depth = 0;
    for (size_t j = open; j < tokens.size(); ++j) {
      const Token& t = tokens[j];
      if (t.kind == TokenKind::identifier) continue;
      if (t.kind == TokenKind::keyword) {
        if (t.text == "extends" || t.text == "super" || is_primitive_word(t.text)) continue;
        return 0;
      }
      if (t.kind != TokenKind::punctuation) return 0;
      if (t.text == "<") {
        ++depth;
      } else if (t.text == ">") {
        --depth;
        if (depth == 0) return j;
      } else if (t.text != "," && t.text != "." && t.text != "?" && t.text != "[" &&
                 t.text != "]") {
        return 0;
      }
    }
    return 0;
  }

  static bool is_primitive_word(const std::string& word) {
    return word == "boolean" || word == "byte" || word == "short" || word == "int" ||
           word == "long" || word == "char" || word == "float" || word == "double";
  }

  std::string_view src_;
  const std::string& file_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  LexResult result_;
};

}  // namespace

LexResult tokenize(std::string_view source, const std::string& file) {
  return Lexer(source, file).run();
}

const char* to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::keyword: return "keyword";
    case TokenKind::punctuation: return "punctuation";
    case TokenKind::string_literal: return "string-literal";
    case TokenKind::number_literal: return "number-literal";
    case TokenKind::comment: return "comment";
    case TokenKind::eof: return "eof";
  }
  return "unknown";
}

}  // namespace ckm
