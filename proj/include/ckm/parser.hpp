#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ckm/lexer.hpp"
#include "ckm/model.hpp"

namespace ckm {

/// One `.name` or `.name(args)` step of a postfix chain.
struct RawSegment {
  std::string name;
  std::optional<int> call_arity;  // engaged for call segments
  SourceLocation loc;
};

/// A postfix expression recorded for later resolution: a base (``this``, an
/// identifier, or an unqualified call) followed by member/call segments.
/// Identifier bases that named a local or parameter carry their declared
/// type; the rest are field candidates for the model builder.
struct RawChain {
  enum class Base { this_ref, ident, bare_call, unknown };
  Base base = Base::unknown;
  std::string base_name;
  int base_arity = 0;                          // bare_call only
  std::optional<std::string> base_local_type;  // ident naming a local/param
  SourceLocation loc;
  std::vector<RawSegment> segments;
};

struct RawParam {
  std::string type_name;
  std::string name;
};

struct RawField {
  std::string type_name;
  std::string name;
  SourceLocation loc;
};

struct RawMethod {
  std::string name;
  bool is_constructor = false;
  std::string return_type_name;  // empty for constructors
  std::vector<RawParam> params;
  std::vector<RawChain> chains;
  SourceLocation loc;
};

struct RawTypeDecl {
  std::string name;
  ClassKind kind = ClassKind::Class;
  std::vector<std::string> extends_names;
  std::vector<std::string> implements_names;
  std::vector<RawField> fields;
  std::vector<RawMethod> methods;
  SourceLocation loc;
};

/// Parse result for one source file.
struct SyntaxUnit {
  std::string file;
  std::string package_name;  // empty = default package
  std::vector<std::string> imports;
  std::vector<RawTypeDecl> type_decls;
  std::vector<Diagnostic> diagnostics;
};

/// Parses a token stream (which must end in eof) into a SyntaxUnit.
/// Recovers at declaration boundaries; problems become diagnostics.
SyntaxUnit parse_unit(const std::vector<Token>& tokens);

/// tokenize + parse_unit, with lexer diagnostics merged into the unit.
SyntaxUnit parse_source(std::string_view source, const std::string& file);

}  // namespace ckm
