#include "ckm/metrics.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ckm/errors.hpp"

namespace ckm {
namespace {

/// Looks up a non-external class or throws the precondition error.
const ClassInfo& require_in_corpus(const ClassModel& model, std::string_view fqn) {
  const ClassInfo* cls = model.find(fqn);
  if (cls == nullptr) {
    throw NotFoundError("unknown class '" + std::string(fqn) + "'");
  }
  if (cls->is_external) {
    throw NotFoundError("class '" + std::string(fqn) +
                        "' is external and carries no metrics");
  }
  return *cls;
}

bool is_constructor(const ClassInfo& cls, const MethodInfo& method) {
  return method.name == simple_name(cls.fqn);
}

/// The methods LCOM/RFC range over, honoring the constructor option.
std::vector<const MethodInfo*> method_population(const ClassInfo& cls,
                                                 const MetricsOptions& options) {
  std::vector<const MethodInfo*> methods;
  for (const MethodInfo& method : cls.methods) {
    if (!options.include_constructors && is_constructor(cls, method)) continue;
    methods.push_back(&method);
  }
  return methods;
}

bool attributes_intersect(const MethodInfo& a, const MethodInfo& b) {
  // Both lists are sorted; a single merge pass finds any common element.
  auto ia = a.attributes_used.begin();
  auto ib = b.attributes_used.begin();
  while (ia != a.attributes_used.end() && ib != b.attributes_used.end()) {
    if (*ia == *ib) return true;
    if (*ia < *ib) ++ia;
    else ++ib;
  }
  return false;
}

/// Plain array-based disjoint-set union with path halving.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  int component_count() {
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < parent_.size(); ++i) roots.insert(find(i));
    return static_cast<int>(roots.size());
  }

 private:
  std::vector<std::size_t> parent_;
};

/// Shared LCOM machinery: pair counts and sharing-graph components.
struct CohesionFacts {
  int disjoint_pairs = 0;  // P
  int sharing_pairs = 0;   // Q
  int components = 0;      // LCOM3
  int components_with_calls = 0;  // LCOM4
};

CohesionFacts cohesion_facts(const ClassInfo& cls, const MetricsOptions& options) {
  std::vector<const MethodInfo*> methods = method_population(cls, options);
  CohesionFacts facts;
  std::size_t n = methods.size();
  if (n == 0) return facts;

  DisjointSet sharing(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (attributes_intersect(*methods[i], *methods[j])) {
        ++facts.sharing_pairs;
        sharing.unite(i, j);
      } else {
        ++facts.disjoint_pairs;
      }
    }
  }
  facts.components = sharing.component_count();

  // The call-augmented graph: an extra edge whenever method i invokes
  // another method of this same class that is part of the population.
  std::map<std::pair<std::string, int>, std::size_t> by_signature;
  for (std::size_t i = 0; i < n; ++i) {
    by_signature.try_emplace({methods[i]->name, methods[i]->arity}, i);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (const CallSite& call : methods[i]->calls) {
      if (call.target_class != cls.fqn) continue;
      auto it = by_signature.find({call.target_method, call.arity});
      if (it != by_signature.end()) sharing.unite(i, it->second);
    }
  }
  facts.components_with_calls = sharing.component_count();
  return facts;
}

}  // namespace

std::string to_string(DependencyReason reason) {
  switch (reason) {
    case DependencyReason::field_type: return "field-type";
    case DependencyReason::param_type: return "param-type";
    case DependencyReason::return_type: return "return-type";
    case DependencyReason::call: return "call";
    case DependencyReason::parent: return "parent";
  }
  return "unknown";
}

std::vector<DependencyEdge> dependency_edges(const ClassModel& model) {
  std::vector<DependencyEdge> edges;
  for (const ClassInfo& cls : model.classes()) {
    if (cls.is_external) continue;
    std::map<std::string, std::set<DependencyReason>> out;
    auto add = [&](const std::string& to, DependencyReason reason) {
      if (to.empty() || to == cls.fqn || is_primitive(to)) return;
      if (model.find(to) == nullptr) return;
      out[to].insert(reason);
    };
    for (const std::string& parent : cls.parents) {
      add(parent, DependencyReason::parent);
    }
    for (const FieldInfo& field : cls.fields) {
      add(field.declared_type, DependencyReason::field_type);
    }
    for (const MethodInfo& method : cls.methods) {
      for (const std::string& type : method.param_types) {
        add(type, DependencyReason::param_type);
      }
      add(method.return_type, DependencyReason::return_type);
      for (const CallSite& call : method.calls) {
        if (call.resolved) add(call.target_class, DependencyReason::call);
      }
    }
    for (auto& [to, reasons] : out) {
      edges.push_back({cls.fqn, to, {reasons.begin(), reasons.end()}});
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

int efferent_coupling(const ClassModel& model, std::string_view class_fqn) {
  const ClassInfo& cls = require_in_corpus(model, class_fqn);
  int degree = 0;
  for (const DependencyEdge& edge : dependency_edges(model)) {
    if (edge.from_fqn == cls.fqn) ++degree;
  }
  return degree;
}

int afferent_coupling(const ClassModel& model, std::string_view class_fqn) {
  const ClassInfo& cls = require_in_corpus(model, class_fqn);
  int degree = 0;
  for (const DependencyEdge& edge : dependency_edges(model)) {
    if (edge.to_fqn == cls.fqn) ++degree;
  }
  return degree;
}

std::pair<int, int> package_coupling(const ClassModel& model,
                                     std::string_view package) {
  std::vector<std::string> known = model.packages();
  if (std::find(known.begin(), known.end(), package) == known.end()) {
    throw NotFoundError("unknown package '" + std::string(package) + "'");
  }
  std::set<std::string> outgoing;
  std::set<std::string> incoming;
  for (const DependencyEdge& edge : dependency_edges(model)) {
    const ClassInfo* from = model.find(edge.from_fqn);
    const ClassInfo* to = model.find(edge.to_fqn);
    if (from == nullptr || to == nullptr) continue;
    bool from_member = !from->is_external && from->package == package;
    bool to_member = !to->is_external && to->package == package;
    if (from_member && to->package != package) outgoing.insert(edge.to_fqn);
    if (to_member && from->package != package) incoming.insert(edge.from_fqn);
  }
  return {static_cast<int>(outgoing.size()), static_cast<int>(incoming.size())};
}

namespace {

int dit_walk(const ClassModel& model, const ClassInfo& cls,
             std::map<std::string, int>& memo, std::vector<std::string>& stack) {
  auto done = memo.find(cls.fqn);
  if (done != memo.end()) {
    if (done->second >= 0) return done->second;
    // A negative memo marks a class currently on the walk stack: a cycle.
    std::string path;
    auto at = std::find(stack.begin(), stack.end(), cls.fqn);
    for (; at != stack.end(); ++at) path += *at + " -> ";
    throw AnalysisError("inheritance cycle: " + path + cls.fqn);
  }
  memo[cls.fqn] = -1;
  stack.push_back(cls.fqn);
  int best = 0;
  for (const std::string& parent : cls.parents) {
    const ClassInfo* up = model.find(parent);
    if (up == nullptr || up->is_external) continue;  // chain ends at the corpus edge
    best = std::max(best, dit_walk(model, *up, memo, stack) + 1);
  }
  stack.pop_back();
  memo[cls.fqn] = best;
  return best;
}

}  // namespace

int depth_of_inheritance(const ClassModel& model, std::string_view class_fqn) {
  const ClassInfo& cls = require_in_corpus(model, class_fqn);
  std::map<std::string, int> memo;
  std::vector<std::string> stack;
  return dit_walk(model, cls, memo, stack);
}

int coupling_between_objects(const ClassModel& model, std::string_view class_fqn) {
  const ClassInfo& cls = require_in_corpus(model, class_fqn);
  std::set<std::string> used;
  auto add = [&](const std::string& type) {
    if (type.empty() || type == cls.fqn || is_primitive(type)) return;
    if (model.find(type) == nullptr) return;
    used.insert(type);
  };
  for (const MethodInfo& method : cls.methods) {
    for (const std::string& type : method.param_types) add(type);
    add(method.return_type);
    for (const CallSite& call : method.calls) add(call.target_class);
  }
  return static_cast<int>(used.size());
}

int response_for_class(const ClassModel& model, std::string_view class_fqn,
                       const MetricsOptions& options) {
  const ClassInfo& cls = require_in_corpus(model, class_fqn);
  std::set<std::tuple<std::string, std::string, int>> response;
  for (const MethodInfo* method : method_population(cls, options)) {
    response.insert({cls.fqn, method->name, method->arity});
    for (const CallSite& call : method->calls) {
      if (!call.resolved || call.target_class.empty()) continue;
      if (!options.include_constructors &&
          call.target_method == simple_name(call.target_class)) {
        continue;
      }
      response.insert({call.target_class, call.target_method, call.arity});
    }
  }
  return static_cast<int>(response.size());
}

int lcom1(const ClassModel& model, std::string_view class_fqn,
          const MetricsOptions& options) {
  const ClassInfo& cls = require_in_corpus(model, class_fqn);
  return cohesion_facts(cls, options).disjoint_pairs;
}

int lcom2(const ClassModel& model, std::string_view class_fqn,
          const MetricsOptions& options) {
  const ClassInfo& cls = require_in_corpus(model, class_fqn);
  CohesionFacts facts = cohesion_facts(cls, options);
  return std::max(facts.disjoint_pairs - facts.sharing_pairs, 0);
}

int lcom3(const ClassModel& model, std::string_view class_fqn,
          const MetricsOptions& options) {
  const ClassInfo& cls = require_in_corpus(model, class_fqn);
  return cohesion_facts(cls, options).components;
}

int lcom4(const ClassModel& model, std::string_view class_fqn,
          const MetricsOptions& options) {
  const ClassInfo& cls = require_in_corpus(model, class_fqn);
  return cohesion_facts(cls, options).components_with_calls;
}

std::vector<MetricsRow> compute_all(const ClassModel& model,
                                    const MetricsOptions& options) {
  // One shared edge scan instead of per-class rescans keeps this linear
  // enough for large generated corpora.
  std::vector<DependencyEdge> edges = dependency_edges(model);
  std::map<std::string, int> out_degree;
  std::map<std::string, int> in_degree;
  for (const DependencyEdge& edge : edges) {
    ++out_degree[edge.from_fqn];
    ++in_degree[edge.to_fqn];
  }

  std::vector<MetricsRow> rows;
  for (const ClassInfo& cls : model.classes()) {
    if (cls.is_external) continue;
    MetricsRow row;
    row.class_fqn = cls.fqn;
    auto out = out_degree.find(cls.fqn);
    auto in = in_degree.find(cls.fqn);
    row.ce = out == out_degree.end() ? 0 : out->second;
    row.ca = in == in_degree.end() ? 0 : in->second;
    row.dit = depth_of_inheritance(model, cls.fqn);
    row.cbo = coupling_between_objects(model, cls.fqn);
    row.rfc = response_for_class(model, cls.fqn, options);
    CohesionFacts facts = cohesion_facts(cls, options);
    row.lcom1 = facts.disjoint_pairs;
    row.lcom2 = std::max(facts.disjoint_pairs - facts.sharing_pairs, 0);
    row.lcom3 = facts.components;
    row.lcom4 = facts.components_with_calls;
    row.method_count = static_cast<int>(method_population(cls, options).size());
    row.field_count = static_cast<int>(cls.fields.size());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace ckm
