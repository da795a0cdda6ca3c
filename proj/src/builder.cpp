#include "ckm/builder.hpp"

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "ckm/errors.hpp"
#include "ckm/lexer.hpp"

namespace ckm {
namespace {

/// A class declaration that survived duplicate-FQN arbitration.
struct Entry {
  const RawTypeDecl* decl = nullptr;
  const SyntaxUnit* unit = nullptr;
  std::string fqn;
};

/// Name-resolution scopes derived from one source file.
struct UnitContext {
  std::map<std::string, std::string> same_file;  // simple name -> FQN
  std::map<std::string, std::string> imports;    // simple name -> FQN
};

/// In-corpus ancestry of one class: entry indices nearest-first, plus
/// whether any ancestor (or the class itself) is outside the corpus.
struct Ancestry {
  std::vector<std::size_t> indices;
  bool has_external = false;
};

class ModelBuilder {
 public:
  explicit ModelBuilder(const std::vector<SyntaxUnit>& units) : units_(units) {}

  ClassModel build(std::vector<Diagnostic> extra_diagnostics) {
    diagnostics_ = std::move(extra_diagnostics);
    for (const SyntaxUnit& unit : units_) {
      diagnostics_.insert(diagnostics_.end(), unit.diagnostics.begin(),
                          unit.diagnostics.end());
    }
    collect_entries();
    build_contexts();
    declare_classes();
    resolve_bodies();
    add_stubs();
    return ClassModel::from_classes(std::move(classes_), std::move(diagnostics_));
  }

 private:
  // ---- pass 1: duplicate arbitration ------------------------------------

  void collect_entries() {
    std::vector<Entry> candidates;
    for (const SyntaxUnit& unit : units_) {
      for (const RawTypeDecl& decl : unit.type_decls) {
        std::string fqn = unit.package_name.empty()
                              ? decl.name
                              : unit.package_name + "." + decl.name;
        candidates.push_back({&decl, &unit, std::move(fqn)});
      }
    }
    // The winner among duplicates is fixed by source position, not by the
    // order units happened to arrive in: build() must be permutation-proof.
    std::sort(candidates.begin(), candidates.end(),
              [](const Entry& a, const Entry& b) {
                return std::tie(a.decl->loc.file, a.decl->loc.line,
                                a.decl->loc.column, a.fqn) <
                       std::tie(b.decl->loc.file, b.decl->loc.line,
                                b.decl->loc.column, b.fqn);
              });
    for (Entry& cand : candidates) {
      auto [it, inserted] = index_.try_emplace(cand.fqn, entries_.size());
      if (inserted) {
        entries_.push_back(std::move(cand));
        continue;
      }
      const Entry& winner = entries_[it->second];
      diagnostics_.push_back(
          {Severity::error, cand.decl->loc,
           "duplicate class declaration '" + cand.fqn + "'; the declaration in '" +
               winner.decl->loc.file + "' wins"});
    }
  }

  // ---- pass 2: scopes ----------------------------------------------------

  void build_contexts() {
    for (const SyntaxUnit& unit : units_) {
      UnitContext ctx;
      for (const RawTypeDecl& decl : unit.type_decls) {
        std::string fqn = unit.package_name.empty()
                              ? decl.name
                              : unit.package_name + "." + decl.name;
        ctx.same_file.try_emplace(decl.name, std::move(fqn));
      }
      for (const std::string& import : unit.imports) {
        ctx.imports.try_emplace(simple_name(import), import);
      }
      contexts_.emplace(&unit, std::move(ctx));
    }
  }

  /// Binds a written type name: same file, then imports, then same
  /// package, then an external stub spelled exactly as written.
  std::string resolve_type(const std::string& written, const SyntaxUnit& unit,
                           bool register_stub_use) {
    if (is_primitive(written)) return written;
    std::string resolved;
    if (written.find('.') != std::string::npos) {
      resolved = written;  // qualified: in-corpus if declared, else a stub
    } else {
      const UnitContext& ctx = contexts_.at(&unit);
      auto same = ctx.same_file.find(written);
      auto imported = ctx.imports.find(written);
      if (same != ctx.same_file.end()) {
        resolved = same->second;
      } else if (imported != ctx.imports.end()) {
        resolved = imported->second;
      } else {
        std::string candidate = unit.package_name.empty()
                                    ? written
                                    : unit.package_name + "." + written;
        resolved = index_.count(candidate) != 0 ? candidate : written;
      }
    }
    if (register_stub_use) register_stub(resolved);
    return resolved;
  }

  void register_stub(const std::string& fqn) {
    if (index_.count(fqn) == 0) stubs_.insert(fqn);
  }

  // ---- pass 3: declarations ----------------------------------------------

  void declare_classes() {
    classes_.reserve(entries_.size());
    method_tables_.resize(entries_.size());
    ancestries_.resize(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const Entry& entry = entries_[i];
      const SyntaxUnit& unit = *entry.unit;
      ClassInfo cls;
      cls.fqn = entry.fqn;
      cls.package = unit.package_name;
      cls.kind = entry.decl->kind;
      cls.is_external = false;
      for (const std::string& name : entry.decl->extends_names) {
        if (!name.empty()) cls.parents.push_back(resolve_type(name, unit, true));
      }
      for (const std::string& name : entry.decl->implements_names) {
        if (!name.empty()) cls.parents.push_back(resolve_type(name, unit, true));
      }
      for (const RawField& raw : entry.decl->fields) {
        cls.fields.push_back({raw.name, resolve_type(raw.type_name, unit, true)});
      }
      for (const RawMethod& raw : entry.decl->methods) {
        MethodInfo method;
        method.name = raw.name;
        method.arity = static_cast<int>(raw.params.size());
        for (const RawParam& param : raw.params) {
          method.param_types.push_back(resolve_type(param.type_name, unit, true));
        }
        method.return_type = raw.is_constructor
                                 ? std::string("void")
                                 : resolve_type(raw.return_type_name, unit, true);
        method_tables_[i].try_emplace(
            std::make_pair(method.name, method.arity), method.return_type);
        cls.methods.push_back(std::move(method));
      }
      classes_.push_back(std::move(cls));
    }
  }

  // ---- ancestry ------------------------------------------------------------

  const Ancestry& ancestry_of(std::size_t idx) {
    if (ancestries_[idx]) return *ancestries_[idx];
    Ancestry result;
    std::set<std::size_t> seen{idx};
    std::vector<std::size_t> frontier{idx};
    while (!frontier.empty()) {
      std::vector<std::size_t> next;
      std::set<std::string> level;  // sorted: nearest-first, ties by FQN
      for (std::size_t at : frontier) {
        for (const std::string& parent : classes_[at].parents) {
          level.insert(parent);
        }
      }
      for (const std::string& parent : level) {
        auto it = index_.find(parent);
        if (it == index_.end()) {
          result.has_external = true;
          continue;
        }
        if (!seen.insert(it->second).second) continue;
        result.indices.push_back(it->second);
        next.push_back(it->second);
      }
      frontier = std::move(next);
    }
    ancestries_[idx] = std::move(result);
    return *ancestries_[idx];
  }

  /// The declared type of `name` on the class or its nearest ancestor.
  std::optional<std::string> field_lookup(std::size_t idx, const std::string& name) {
    auto own = [&](std::size_t at) -> std::optional<std::string> {
      for (const FieldInfo& field : classes_[at].fields) {
        if (field.name == name) return field.declared_type;
      }
      return std::nullopt;
    };
    if (auto hit = own(idx)) return hit;
    for (std::size_t anc : ancestry_of(idx).indices) {
      if (auto hit = own(anc)) return hit;
    }
    return std::nullopt;
  }

  /// Return type of (name, arity) on the class or an ancestor, if declared.
  const std::string* find_method(std::size_t idx, const std::string& name, int arity) {
    auto key = std::make_pair(name, arity);
    auto it = method_tables_[idx].find(key);
    if (it != method_tables_[idx].end()) return &it->second;
    for (std::size_t anc : ancestry_of(idx).indices) {
      auto hit = method_tables_[anc].find(key);
      if (hit != method_tables_[anc].end()) return &hit->second;
    }
    return nullptr;
  }

  // ---- pass 4: bodies -------------------------------------------------------

  void resolve_bodies() {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const std::vector<RawMethod>& raws = entries_[i].decl->methods;
      for (std::size_t j = 0; j < raws.size(); ++j) {
        for (const RawChain& chain : raws[j].chains) {
          walk_chain(i, chain, classes_[i].methods[j]);
        }
      }
    }
  }

  /// A receiver cursor for a declared type: primitives end the walk.
  static std::optional<std::string> cursor_for(const std::string& type) {
    if (is_primitive(type)) return std::nullopt;
    return type;
  }

  /// Records one call on a known receiver type. Returns the type the chain
  /// continues with — engaged only when the invoked method's return type is
  /// declared in-corpus, since anything else cannot be searched further.
  std::optional<std::string> emit_call(const std::string& receiver,
                                       const std::string& name, int arity,
                                       const SourceLocation& loc,
                                       MethodInfo& method) {
    auto it = index_.find(receiver);
    if (it == index_.end()) {
      // A stub receiver: the call is trusted and still counts as coupling.
      register_stub(receiver);
      method.calls.push_back({receiver, name, arity, true});
      return std::nullopt;
    }
    if (const std::string* ret = find_method(it->second, name, arity)) {
      method.calls.push_back({receiver, name, arity, true});
      if (index_.count(*ret) != 0) return *ret;
      return std::nullopt;
    }
    if (ancestry_of(it->second).has_external) {
      // Some ancestor lives outside the corpus; the method may be there.
      method.calls.push_back({receiver, name, arity, true});
      return std::nullopt;
    }
    method.calls.push_back({receiver, name, arity, false});
    diagnostics_.push_back({Severity::warning, loc,
                            "unresolved call '" + name + "/" +
                                std::to_string(arity) + "' on '" + receiver + "'"});
    return std::nullopt;
  }

  /// Follows a `.field` hop on a known type; in-corpus declarations only.
  std::optional<std::string> hop_field(const std::string& type, const std::string& name) {
    auto it = index_.find(type);
    if (it == index_.end()) return std::nullopt;
    if (auto declared = field_lookup(it->second, name)) return cursor_for(*declared);
    return std::nullopt;
  }

  void walk_chain(std::size_t self, const RawChain& chain, MethodInfo& method) {
    const Entry& entry = entries_[self];
    std::optional<std::string> cursor;  // declared type to the left of the dot
    bool any_call = false;
    std::size_t first_segment = 0;

    switch (chain.base) {
      case RawChain::Base::this_ref: {
        cursor = entry.fqn;
        if (!chain.segments.empty() && !chain.segments.front().call_arity) {
          // `this.f` reads an attribute; an unknown name ends the chain.
          const RawSegment& seg = chain.segments.front();
          std::optional<std::string> declared = field_lookup(self, seg.name);
          if (!declared) {
            diagnostics_.push_back({Severity::warning, seg.loc,
                                    "unknown field '" + seg.name + "' on '" +
                                        entry.fqn + "'"});
            return;
          }
          method.attributes_used.push_back(seg.name);
          cursor = cursor_for(*declared);
          first_segment = 1;
        }
        break;
      }
      case RawChain::Base::bare_call:
        cursor = emit_call(entry.fqn, chain.base_name, chain.base_arity,
                           chain.loc, method);
        any_call = true;
        break;
      case RawChain::Base::ident:
        if (chain.base_local_type) {
          // Locals and parameters shadow fields: no attribute is recorded.
          cursor = cursor_for(
              resolve_type(*chain.base_local_type, *entry.unit, false));
        } else if (std::optional<std::string> declared =
                       field_lookup(self, chain.base_name)) {
          method.attributes_used.push_back(chain.base_name);
          cursor = cursor_for(*declared);
        } else {
          cursor = std::nullopt;  // not a fact we track (class ref, typo, ...)
        }
        break;
      case RawChain::Base::unknown:
        return;
    }

    for (std::size_t k = first_segment; k < chain.segments.size(); ++k) {
      const RawSegment& seg = chain.segments[k];
      if (seg.call_arity) {
        if (cursor) {
          cursor = emit_call(*cursor, seg.name, *seg.call_arity, seg.loc, method);
          any_call = true;
          continue;
        }
        if (!any_call) {
          method.calls.push_back({"", seg.name, *seg.call_arity, false});
          diagnostics_.push_back(
              {Severity::warning, seg.loc,
               "unresolved call '" + seg.name + "/" +
                   std::to_string(*seg.call_arity) + "': receiver type is unknown"});
        }
        return;  // nothing past a call on an unknown receiver is reliable
      }
      if (cursor) cursor = hop_field(*cursor, seg.name);
    }
  }

  // ---- pass 5: stubs --------------------------------------------------------

  void add_stubs() {
    for (const std::string& fqn : stubs_) {
      ClassInfo stub;
      stub.fqn = fqn;
      stub.package = package_of(fqn);
      stub.kind = ClassKind::Class;
      stub.is_external = true;
      classes_.push_back(std::move(stub));
    }
  }

  const std::vector<SyntaxUnit>& units_;
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> index_;  // FQN -> entry index
  std::map<const SyntaxUnit*, UnitContext> contexts_;
  std::vector<ClassInfo> classes_;
  std::vector<std::map<std::pair<std::string, int>, std::string>> method_tables_;
  std::vector<std::optional<Ancestry>> ancestries_;
  std::set<std::string> stubs_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace

ClassModel build_model(const std::vector<SyntaxUnit>& units,
                       std::vector<Diagnostic> extra_diagnostics) {
  return ModelBuilder(units).build(std::move(extra_diagnostics));
}

std::vector<std::string> list_source_files(const std::vector<std::string>& paths,
                                           const std::string& suffix) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const std::string& path : paths) {
    std::error_code ec;
    fs::file_status status = fs::status(path, ec);
    if (ec || status.type() == fs::file_type::not_found) {
      throw ArgumentError("path does not exist: " + path);
    }
    if (fs::is_directory(status)) {
      for (fs::recursive_directory_iterator it(path, ec), end; it != end;
           it.increment(ec)) {
        if (ec) break;
        if (!it->is_regular_file()) continue;
        std::string name = it->path().generic_string();
        if (name.size() >= suffix.size() &&
            name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
          files.push_back(std::move(name));
        }
      }
    } else {
      files.push_back(fs::path(path).generic_string());
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

namespace {

/// Parse outcome for one file slot; io diagnostics stay separate so they
/// can be merged deterministically even when the file never parsed.
struct FileSlot {
  std::optional<SyntaxUnit> unit;
  std::vector<Diagnostic> io_diagnostics;
};

FileSlot parse_one_file(const std::string& path) {
  FileSlot slot;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    slot.io_diagnostics.push_back({Severity::warning,
                                   {path, 1, 1},
                                   "could not read file; it was skipped"});
    return slot;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  slot.unit = parse_source(buffer.str(), path);
  return slot;
}

}  // namespace

ClassModel analyze_paths(const std::vector<std::string>& paths,
                         const AnalyzeOptions& options) {
  std::vector<std::string> files = list_source_files(paths, options.suffix);
  std::vector<Diagnostic> extra;
  if (files.empty()) {
    extra.push_back({Severity::warning,
                     {"<analyze>", 1, 1},
                     "no source files found under the given paths"});
    return build_model({}, std::move(extra));
  }

  std::vector<FileSlot> slots(files.size());
  int workers = std::max(1, options.jobs);
  if (workers == 1 || files.size() < 2) {
    for (std::size_t i = 0; i < files.size(); ++i) slots[i] = parse_one_file(files[i]);
  } else {
    workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), files.size()));
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          std::size_t i = cursor.fetch_add(1);
          if (i >= slots.size()) break;
          slots[i] = parse_one_file(files[i]);
        }
      });
    }
    for (std::thread& worker : pool) worker.join();
  }

  // Merge in path order: the outcome is identical for any worker count.
  std::vector<SyntaxUnit> units;
  units.reserve(slots.size());
  for (FileSlot& slot : slots) {
    extra.insert(extra.end(), slot.io_diagnostics.begin(), slot.io_diagnostics.end());
    if (slot.unit) units.push_back(std::move(*slot.unit));
  }
  return build_model(units, std::move(extra));
}

}  // namespace ckm
