#include "ckm/parser.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ckm {
namespace {

constexpr std::array<std::string_view, 9> kPrimitiveTypes = {
    "boolean", "byte", "char", "double", "float", "int", "long", "short", "void"};

constexpr std::array<std::string_view, 11> kModifiers = {
    "abstract", "final",    "native",    "private",   "protected", "public",
    "static",   "strictfp", "synchronized", "transient", "volatile"};

bool is_primitive_keyword(const Token& tok) {
  return tok.kind == TokenKind::keyword &&
         std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), tok.text) !=
             kPrimitiveTypes.end();
}

bool is_modifier(const Token& tok) {
  return tok.kind == TokenKind::keyword &&
         std::find(kModifiers.begin(), kModifiers.end(), tok.text) !=
             kModifiers.end();
}

/// Result of a side-effect-free type lookahead: the dotted name, how many
/// `[]` pairs followed it, and the index of the first token past the type.
struct TypeScan {
  std::string name;
  int array_dims = 0;
  std::size_t end = 0;
};

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) {
    toks_.reserve(tokens.size());
    for (const Token& tok : tokens) {
      if (tok.kind != TokenKind::comment) toks_.push_back(&tok);
    }
  }

  SyntaxUnit run() {
    if (toks_.empty()) return std::move(unit_);
    unit_.file = toks_.front()->location.file;
    skip_annotations();
    parse_package_decl();
    while (at_keyword("import")) parse_import_decl();
    while (!at_eof()) {
      skip_annotations();
      if (match_punct(";")) continue;
      while (is_modifier(peek())) advance();
      if (at_keyword("class") || at_keyword("interface")) {
        parse_type_decl();
      } else if (at_eof()) {
        break;
      } else {
        error_here("expected a class or interface declaration");
        recover_to_type_decl();
      }
    }
    return std::move(unit_);
  }

 private:
  // ---- cursor ----------------------------------------------------------

  const Token& peek(std::size_t offset = 0) const {
    std::size_t i = pos_ + offset;
    return i < toks_.size() ? *toks_[i] : *toks_.back();
  }

  const Token& advance() {
    const Token& tok = peek();
    if (pos_ + 1 < toks_.size()) ++pos_;
    return tok;
  }

  bool at_eof() const { return peek().kind == TokenKind::eof; }

  bool at_punct(std::string_view text, std::size_t offset = 0) const {
    const Token& tok = peek(offset);
    return tok.kind == TokenKind::punctuation && tok.text == text;
  }

  bool at_keyword(std::string_view text, std::size_t offset = 0) const {
    const Token& tok = peek(offset);
    return tok.kind == TokenKind::keyword && tok.text == text;
  }

  bool at_identifier(std::size_t offset = 0) const {
    return peek(offset).kind == TokenKind::identifier;
  }

  bool match_punct(std::string_view text) {
    if (!at_punct(text)) return false;
    advance();
    return true;
  }

  bool match_keyword(std::string_view text) {
    if (!at_keyword(text)) return false;
    advance();
    return true;
  }

  /// Consumes the expected punctuation or reports an error (not consuming).
  bool expect_punct(std::string_view text) {
    if (match_punct(text)) return true;
    error_here(std::string("expected '") + std::string(text) + "' before '" +
               describe(peek()) + "'");
    return false;
  }

  static std::string describe(const Token& tok) {
    if (tok.kind == TokenKind::eof) return "end of file";
    return std::string(tok.text);
  }

  // ---- diagnostics -----------------------------------------------------

  void report(Severity severity, const SourceLocation& loc, std::string message) {
    unit_.diagnostics.push_back({severity, loc, std::move(message)});
  }

  void error_here(std::string message) {
    report(Severity::error, peek().location, std::move(message));
  }

  void warn_here(std::string message) {
    report(Severity::warning, peek().location, std::move(message));
  }

  // ---- recovery --------------------------------------------------------

  /// Skips a balanced `{...}` region, current token included if it opens one.
  void skip_balanced_braces() {
    while (!at_eof() && !at_punct("{")) advance();
    if (at_eof()) {
      error_here("unexpected end of file: unbalanced braces");
      return;
    }
    int depth = 0;
    while (!at_eof()) {
      if (at_punct("{")) ++depth;
      if (at_punct("}")) {
        --depth;
        advance();
        if (depth == 0) return;
        continue;
      }
      advance();
    }
    error_here("unexpected end of file: unbalanced braces");
  }

  /// Skips to the next `;` at bracket depth zero (consumed) or to a `}` that
  /// would close the enclosing scope (left for the caller). Semicolons inside
  /// parentheses — a `for` header, say — do not end the recovery.
  void recover_to_boundary() {
    int depth = 0;
    while (!at_eof()) {
      if (at_punct("{") || at_punct("(") || at_punct("[")) {
        ++depth;
      } else if (at_punct("}")) {
        if (depth == 0) return;
        --depth;
      } else if (at_punct(")") || at_punct("]")) {
        if (depth > 0) --depth;  // stray closers at depth zero are skipped
      } else if (at_punct(";") && depth == 0) {
        advance();
        return;
      }
      advance();
    }
  }

  void recover_to_type_decl() {
    while (!at_eof() && !at_keyword("class") && !at_keyword("interface") &&
           !at_keyword("package") && !at_keyword("import")) {
      advance();
    }
  }

  // ---- shared pieces ---------------------------------------------------

  /// Consumes any `@Name` / `@Name(...)` markers, each with a warning.
  void skip_annotations() {
    while (at_punct("@")) {
      warn_here("annotations are not supported and were ignored");
      advance();
      if (at_identifier()) {
        advance();
        while (at_punct(".") && at_identifier(1)) {
          advance();
          advance();
        }
      }
      if (at_punct("(")) skip_balanced_parens();
    }
  }

  void skip_balanced_parens() {
    int depth = 0;
    while (!at_eof()) {
      if (at_punct("(")) ++depth;
      if (at_punct(")")) {
        --depth;
        advance();
        if (depth == 0) return;
        continue;
      }
      advance();
    }
    error_here("unexpected end of file: unbalanced parentheses");
  }

  /// Parses `ident {. ident}` starting at the current token.
  std::string parse_qualified_name() {
    std::string name;
    if (!at_identifier()) {
      error_here(std::string("expected a name before '") + describe(peek()) + "'");
      return name;
    }
    name = std::string(advance().text);
    while (at_punct(".") && at_identifier(1)) {
      advance();
      name += '.';
      name += advance().text;
    }
    return name;
  }

  /// Looks at a type reference starting at `from` without consuming tokens
  /// or emitting diagnostics. Used to tell local declarations apart from
  /// expression statements.
  std::optional<TypeScan> scan_type(std::size_t from) const {
    TypeScan scan;
    const Token& first = peek(from - pos_);
    std::size_t i = from;
    if (is_primitive_keyword(first)) {
      scan.name = std::string(first.text);
      ++i;
    } else if (first.kind == TokenKind::identifier) {
      scan.name = std::string(first.text);
      ++i;
      while (at_punct(".", i - pos_) && at_identifier(i - pos_ + 1)) {
        scan.name += '.';
        scan.name += peek(i - pos_ + 1).text;
        i += 2;
      }
    } else {
      return std::nullopt;
    }
    while (at_punct("[", i - pos_) && at_punct("]", i - pos_ + 1)) {
      ++scan.array_dims;
      i += 2;
    }
    scan.end = i;
    return scan;
  }

  /// Commits a previously scanned type: advances past it and reports the
  /// array degradation, if any. Returns the element type name.
  std::string consume_type(const TypeScan& scan) {
    if (scan.array_dims > 0) {
      warn_here("array types are not supported; the element type was used");
    }
    pos_ = std::min(scan.end, toks_.size() - 1);
    return scan.name;
  }

  // ---- declarations ----------------------------------------------------

  void parse_package_decl() {
    if (!match_keyword("package")) return;
    unit_.package_name = parse_qualified_name();
    expect_punct(";");
  }

  void parse_import_decl() {
    advance();  // 'import'
    if (at_keyword("static")) {
      warn_here("static imports are not supported and were ignored");
      recover_to_boundary();
      return;
    }
    if (!at_identifier()) {
      error_here(std::string("expected an import name before '") +
                 describe(peek()) + "'");
      recover_to_boundary();
      return;
    }
    std::string name(advance().text);
    bool wildcard = false;
    while (at_punct(".")) {
      if (at_punct("*", 1)) {
        advance();
        advance();
        wildcard = true;
        break;
      }
      if (!at_identifier(1)) break;
      advance();
      name += '.';
      name += advance().text;
    }
    if (wildcard) {
      warn_here("wildcard imports are not supported and were ignored");
    } else {
      unit_.imports.push_back(std::move(name));
    }
    expect_punct(";");
  }

  void parse_type_decl() {
    RawTypeDecl decl;
    decl.kind = at_keyword("interface") ? ClassKind::Interface : ClassKind::Class;
    advance();  // 'class' | 'interface'
    decl.loc = peek().location;
    if (!at_identifier()) {
      error_here(std::string("expected a type name before '") +
                 describe(peek()) + "'");
      recover_to_type_decl();
      return;
    }
    decl.name = std::string(advance().text);
    if (match_keyword("extends")) {
      decl.extends_names.push_back(parse_qualified_name());
      while (match_punct(",")) decl.extends_names.push_back(parse_qualified_name());
    }
    if (match_keyword("implements")) {
      decl.implements_names.push_back(parse_qualified_name());
      while (match_punct(",")) {
        decl.implements_names.push_back(parse_qualified_name());
      }
    }
    if (!expect_punct("{")) {
      recover_to_type_decl();
      return;
    }
    current_class_ = decl.name;
    while (!at_eof() && !at_punct("}")) parse_member(decl);
    if (!match_punct("}")) {
      error_here("unexpected end of file in a class body");
    }
    current_class_.clear();
    unit_.type_decls.push_back(std::move(decl));
  }

  void parse_member(RawTypeDecl& decl) {
    skip_annotations();
    if (match_punct(";")) return;
    if (at_punct("}") || at_eof()) return;
    while (is_modifier(peek())) advance();
    skip_annotations();

    if (at_keyword("class") || at_keyword("interface")) {
      error_here("nested type declarations are not supported");
      skip_balanced_braces();
      return;
    }
    if (at_punct("{")) {
      error_here("initializer blocks are not supported");
      skip_balanced_braces();
      return;
    }

    // Constructor: the class name followed directly by a parameter list.
    if (at_identifier() && peek().text == current_class_ && at_punct("(", 1)) {
      RawMethod method;
      method.name = std::string(peek().text);
      method.is_constructor = true;
      method.loc = peek().location;
      advance();
      parse_method_rest(method);
      decl.methods.push_back(std::move(method));
      return;
    }

    std::optional<TypeScan> type = scan_type(pos_);
    if (!type || !at_identifier(type->end - pos_)) {
      error_here(std::string("expected a member declaration before '") +
                 describe(peek()) + "'");
      recover_to_boundary();
      return;
    }
    std::string type_name = consume_type(*type);
    const Token& name_tok = advance();

    if (at_punct("(")) {
      RawMethod method;
      method.name = std::string(name_tok.text);
      method.return_type_name = std::move(type_name);
      method.loc = name_tok.location;
      parse_method_rest(method);
      decl.methods.push_back(std::move(method));
      return;
    }

    RawField field;
    field.type_name = std::move(type_name);
    field.name = std::string(name_tok.text);
    field.loc = name_tok.location;
    decl.fields.push_back(std::move(field));
    if (at_punct("[")) {
      warn_here("array types are not supported; the element type was used");
      while (match_punct("[")) match_punct("]");
    }
    if (at_punct("=")) {
      // Field initializers sit outside the method-scoped fact extraction;
      // their tokens are skipped wholesale.
      recover_to_initializer_end();
    }
    if (at_punct(",")) {
      warn_here("multiple declarators in one field declaration are not "
                "supported; only the first was kept");
      recover_to_boundary();
      return;
    }
    expect_punct(";");
  }

  /// Skips an initializer up to (not including) `;` or `,` at depth zero.
  void recover_to_initializer_end() {
    int depth = 0;
    while (!at_eof()) {
      if (at_punct("(") || at_punct("{") || at_punct("[")) ++depth;
      else if (at_punct(")") || at_punct("}") || at_punct("]")) {
        if (depth == 0) return;
        --depth;
      } else if ((at_punct(";") || at_punct(",")) && depth == 0) {
        return;
      }
      advance();
    }
  }

  void parse_method_rest(RawMethod& method) {
    advance();  // '('
    if (!at_punct(")")) {
      parse_param(method);
      while (match_punct(",")) parse_param(method);
    }
    expect_punct(")");
    if (match_punct(";")) return;  // bodiless (interface / abstract)
    if (!at_punct("{")) {
      error_here(std::string("expected a method body before '") +
                 describe(peek()) + "'");
      recover_to_boundary();
      return;
    }
    scopes_.clear();
    scopes_.emplace_back();
    for (const RawParam& param : method.params) {
      scopes_.back().emplace_back(param.name, param.type_name);
    }
    chain_sink_ = &method.chains;
    parse_block();
    chain_sink_ = nullptr;
    scopes_.clear();
  }

  void parse_param(RawMethod& method) {
    std::optional<TypeScan> type = scan_type(pos_);
    if (!type) {
      error_here(std::string("expected a parameter type before '") +
                 describe(peek()) + "'");
      recover_to_param_end();
      return;
    }
    RawParam param;
    param.type_name = consume_type(*type);
    if (!at_identifier()) {
      error_here(std::string("expected a parameter name before '") +
                 describe(peek()) + "'");
      recover_to_param_end();
      return;
    }
    param.name = std::string(advance().text);
    if (at_punct("[")) {
      warn_here("array types are not supported; the element type was used");
      while (match_punct("[")) match_punct("]");
    }
    method.params.push_back(std::move(param));
  }

  /// Skips to the `,` or `)` ending the current parameter (not consumed).
  void recover_to_param_end() {
    int depth = 0;
    while (!at_eof()) {
      if (at_punct("(")) ++depth;
      else if (at_punct(")")) {
        if (depth == 0) return;
        --depth;
      } else if (at_punct(",") && depth == 0) {
        return;
      } else if (at_punct("{") || at_punct(";")) {
        return;  // runaway parameter list; let the caller cope
      }
      advance();
    }
  }

  // ---- statements ------------------------------------------------------

  void parse_block() {
    advance();  // '{'
    scopes_.emplace_back();
    while (!at_eof() && !at_punct("}")) parse_statement();
    scopes_.pop_back();
    if (!match_punct("}")) {
      error_here("unexpected end of file in a block");
    }
  }

  void parse_statement() {
    if (at_punct("{")) {
      parse_block();
      return;
    }
    if (match_punct(";")) return;
    if (match_keyword("return")) {
      if (!at_punct(";")) scan_expression();
      finish_statement();
      return;
    }
    if (at_keyword("if") || at_keyword("while")) {
      bool is_if = at_keyword("if");
      advance();
      if (expect_punct("(")) {
        scan_expression();
        expect_punct(")");
      }
      parse_statement();
      if (is_if && match_keyword("else")) parse_statement();
      return;
    }
    if (peek().kind == TokenKind::keyword && !at_keyword("this") &&
        !at_keyword("new") && !is_primitive_keyword(peek())) {
      error_here(std::string("unsupported statement '") + describe(peek()) + "'");
      recover_to_boundary();
      return;
    }

    // Local declaration: a type followed by a fresh name.
    std::optional<TypeScan> type = scan_type(pos_);
    if (type && at_identifier(type->end - pos_)) {
      std::string type_name = consume_type(*type);
      std::string name(advance().text);
      if (at_punct("[")) {
        warn_here("array types are not supported; the element type was used");
        while (match_punct("[")) match_punct("]");
      }
      scopes_.back().emplace_back(name, type_name);
      if (match_punct("=")) scan_expression();
      if (at_punct(",")) {
        warn_here("multiple declarators in one local declaration are not "
                  "supported; only the first was kept");
        recover_to_boundary();
        return;
      }
      finish_statement();
      return;
    }

    // Expression statement (assignments included; `=` scans as an operator).
    scan_expression();
    finish_statement();
  }

  /// Consumes the statement's closing `;`, recovering past stray tokens so
  /// the enclosing block loop always makes progress.
  void finish_statement() {
    if (match_punct(";")) return;
    error_here(std::string("expected ';' before '") + describe(peek()) + "'");
    if (at_punct("}") || at_eof()) return;  // the block loop handles these
    recover_to_boundary();
  }

  // ---- expressions -----------------------------------------------------

  /// Expression scans stop at `;`, `}`, eof, and at any `)` or `,` they did
  /// not open themselves: balanced groups are consumed by recursion, so a
  /// closer or separator seen here always belongs to the caller.
  bool at_stop() const {
    return at_eof() || at_punct(";") || at_punct("}") || at_punct(")") ||
           at_punct(",");
  }

  /// Walks one expression, recording every `this`/identifier-rooted postfix
  /// chain it contains. Operators and literals are structural noise here.
  void scan_expression() {
    while (!at_stop()) {
      if (at_keyword("this") || at_identifier()) {
        parse_chain();
        continue;
      }
      if (at_punct("(")) {
        advance();
        scan_expression();
        expect_punct(")");
        continue;
      }
      if (at_keyword("new")) {
        report(Severity::error, peek().location,
               "object creation expressions are not supported");
        advance();
        if (at_identifier()) parse_qualified_name();
        if (at_punct("(")) skip_balanced_parens();
        while (at_punct("[")) {
          int depth = 0;
          while (!at_eof()) {
            if (at_punct("[")) ++depth;
            if (at_punct("]")) {
              advance();
              if (--depth == 0) break;
              continue;
            }
            advance();
          }
        }
        continue;
      }
      if (at_punct("->")) {
        error_here("lambda expressions are not supported");
        skip_expression_tail();
        return;
      }
      advance();  // literal or operator
    }
  }

  void skip_expression_tail() {
    int depth = 0;
    while (!at_eof()) {
      if (at_punct("(") || at_punct("[") || at_punct("{")) {
        ++depth;
      } else if (at_punct(")") || at_punct("]") || at_punct("}")) {
        if (depth == 0) return;
        --depth;
      } else if (depth == 0 && at_stop()) {
        return;
      }
      advance();
    }
  }

  void parse_chain() {
    RawChain chain;
    chain.loc = peek().location;
    if (at_keyword("this")) {
      chain.base = RawChain::Base::this_ref;
      advance();
    } else {
      std::string name(advance().text);
      if (at_punct("(")) {
        chain.base = RawChain::Base::bare_call;
        chain.base_name = std::move(name);
        chain.base_arity = parse_arguments();
      } else {
        chain.base = RawChain::Base::ident;
        chain.base_name = std::move(name);
        chain.base_local_type = lookup_local(chain.base_name);
      }
    }
    while (at_punct(".")) {
      if (!at_identifier(1)) {
        report(Severity::error, peek(1).location,
               std::string("expected a member name after '.' before '") +
                   describe(peek(1)) + "'");
        advance();
        break;
      }
      advance();  // '.'
      RawSegment segment;
      segment.loc = peek().location;
      segment.name = std::string(advance().text);
      if (at_punct("(")) segment.call_arity = parse_arguments();
      chain.segments.push_back(std::move(segment));
    }
    if (chain_sink_ != nullptr) chain_sink_->push_back(std::move(chain));
  }

  /// Consumes a call's `( ... )`, scanning each argument expression for
  /// nested chains. Returns the argument count.
  int parse_arguments() {
    advance();  // '('
    if (match_punct(")")) return 0;
    int arity = 0;
    while (true) {
      scan_expression();
      ++arity;
      if (match_punct(",")) continue;
      break;
    }
    expect_punct(")");
    return arity;
  }

  std::optional<std::string> lookup_local(const std::string& name) const {
    for (auto frame = scopes_.rbegin(); frame != scopes_.rend(); ++frame) {
      for (auto entry = frame->rbegin(); entry != frame->rend(); ++entry) {
        if (entry->first == name) return entry->second;
      }
    }
    return std::nullopt;
  }

  std::vector<const Token*> toks_;
  std::size_t pos_ = 0;
  SyntaxUnit unit_;
  std::string current_class_;
  std::vector<std::vector<std::pair<std::string, std::string>>> scopes_;
  std::vector<RawChain>* chain_sink_ = nullptr;
};

}  // namespace

SyntaxUnit parse_unit(const std::vector<Token>& tokens) {
  return Parser(tokens).run();
}

SyntaxUnit parse_source(std::string_view source, const std::string& file) {
  LexResult lexed = tokenize(source, file);
  SyntaxUnit unit = parse_unit(lexed.tokens);
  unit.file = file;
  unit.diagnostics.insert(unit.diagnostics.begin(), lexed.diagnostics.begin(),
                          lexed.diagnostics.end());
  return unit;
}

}  // namespace ckm
