#include "ckm/generator.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ckm/errors.hpp"

namespace ckm {
namespace {

/// splitmix64 (Steele, Lea, Flood; public domain reference constants).
/// Chosen because the whole sequence is pinned by these three constants,
/// so identical specs replay identically everywhere.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform draw in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  /// True with probability p (53-bit uniform comparison).
  bool chance(double p) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return u < p;
  }

 private:
  std::uint64_t state_;
};

void check_spec(const GenSpec& spec) {
  auto in_unit_range = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (spec.n_classes < 0) throw GenerationError("n_classes must be >= 0");
  if (spec.n_packages < 1) throw GenerationError("n_packages must be >= 1");
  if (spec.max_methods < 0) throw GenerationError("max_methods must be >= 0");
  if (spec.max_fields < 0) throw GenerationError("max_fields must be >= 0");
  if (!in_unit_range(spec.inheritance_prob)) {
    throw GenerationError("inheritance_prob must lie in [0, 1]");
  }
  if (!in_unit_range(spec.cross_class_call_prob)) {
    throw GenerationError("cross_class_call_prob must lie in [0, 1]");
  }
  if (!in_unit_range(spec.attribute_sharing)) {
    throw GenerationError("attribute_sharing must lie in [0, 1]");
  }
  if (spec.max_fields == 0 && spec.attribute_sharing > 0.0) {
    throw GenerationError(
        "attribute_sharing > 0 requires max_fields >= 1: the shared hub "
        "attribute needs somewhere to live");
  }
}

std::string class_name_at(const GenSpec& spec, int index) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "C%04d", index);
  return "gen.p" + std::to_string(index % spec.n_packages) + "." + buffer;
}

std::string external_name(std::uint64_t index) {
  return "ext.E" + std::to_string(index);
}

class Generator {
 public:
  explicit Generator(const GenSpec& spec) : spec_(spec), rng_(spec.seed) {}

  ClassModel run() {
    for (int i = 0; i < spec_.n_classes; ++i) names_.push_back(class_name_at(spec_, i));
    for (int i = 0; i < spec_.n_classes; ++i) build_structure(i);
    for (int i = 0; i < spec_.n_classes; ++i) draw_calls(i);
    for (const std::string& fqn : stubs_) {
      ClassInfo stub;
      stub.fqn = fqn;
      stub.package = package_of(fqn);
      stub.is_external = true;
      classes_.push_back(std::move(stub));
    }
    return ClassModel::from_classes(std::move(classes_));
  }

 private:
  std::string external_ref() {
    std::string fqn = external_name(rng_.below(3));
    stubs_.insert(fqn);
    return fqn;
  }

  /// Some other in-corpus class, uniform; self excluded.
  int other_class(int self) {
    int pick = static_cast<int>(rng_.below(static_cast<std::uint64_t>(spec_.n_classes - 1)));
    return pick >= self ? pick + 1 : pick;
  }

  /// A type for a field/parameter/return slot: mostly primitives, with
  /// in-corpus and external references mixed in to exercise every edge kind.
  std::string pick_type(int self) {
    std::uint64_t roll = rng_.below(100);
    if (roll < 55) return "int";
    if (roll < 70) return "boolean";
    if (roll < 85 && spec_.n_classes > 1) return names_[static_cast<std::size_t>(other_class(self))];
    if (roll < 85) return "int";  // single-class corpus: nothing to point at
    return external_ref();
  }

  void build_structure(int index) {
    ClassInfo cls;
    cls.fqn = names_[static_cast<std::size_t>(index)];
    cls.package = package_of(cls.fqn);
    cls.kind = rng_.chance(0.15) ? ClassKind::Interface : ClassKind::Class;

    // Parents come only from earlier classes, so cycles cannot form.
    if (index > 0 && rng_.chance(spec_.inheritance_prob)) {
      int first = static_cast<int>(rng_.below(static_cast<std::uint64_t>(index)));
      cls.parents.push_back(names_[static_cast<std::size_t>(first)]);
      if (rng_.chance(spec_.inheritance_prob / 2.0)) {
        int second = static_cast<int>(rng_.below(static_cast<std::uint64_t>(index)));
        if (second != first) cls.parents.push_back(names_[static_cast<std::size_t>(second)]);
      }
    }
    if (rng_.chance(spec_.inheritance_prob * 0.2)) {
      cls.parents.push_back(external_ref());
    }

    int n_fields = spec_.attribute_sharing > 0.0
                       ? 1 + static_cast<int>(rng_.below(
                                 static_cast<std::uint64_t>(spec_.max_fields)))
                       : static_cast<int>(rng_.below(
                             static_cast<std::uint64_t>(spec_.max_fields) + 1));
    for (int f = 0; f < n_fields; ++f) {
      cls.fields.push_back({"f" + std::to_string(f), pick_type(index)});
    }

    if (rng_.chance(0.2)) {
      MethodInfo ctor;
      ctor.name = simple_name(cls.fqn);
      ctor.arity = static_cast<int>(rng_.below(3));
      for (int p = 0; p < ctor.arity; ++p) ctor.param_types.push_back(pick_type(index));
      ctor.return_type = "void";
      cls.methods.push_back(std::move(ctor));
    }
    int n_methods = static_cast<int>(
        rng_.below(static_cast<std::uint64_t>(spec_.max_methods) + 1));
    for (int m = 0; m < n_methods; ++m) {
      MethodInfo method;
      method.name = "m" + std::to_string(m);
      method.arity = static_cast<int>(rng_.below(3));
      for (int p = 0; p < method.arity; ++p) method.param_types.push_back(pick_type(index));
      if (rng_.chance(0.15) && spec_.n_classes > 1) {
        method.return_type = names_[static_cast<std::size_t>(other_class(index))];
      } else if (rng_.chance(0.1)) {
        method.return_type = "int";
      } else {
        method.return_type = "void";
      }
      cls.methods.push_back(std::move(method));
    }

    // Attribute assignment drives cohesion. Every method owns a modular
    // slice of the field list (disjoint across methods), and with
    // probability `attribute_sharing` it also touches the hub field f0.
    // sharing = 1 therefore connects everything through f0 (LCOM3 = 1);
    // sharing = 0 leaves the slices pairwise disjoint (LCOM1 = C(m,2)).
    std::size_t n_total = cls.methods.size();
    for (std::size_t k = 0; k < n_total; ++k) {
      MethodInfo& method = cls.methods[k];
      if (rng_.chance(spec_.attribute_sharing) && n_fields > 0) {
        method.attributes_used.push_back("f0");
      }
      for (int f = 0; f < n_fields; ++f) {
        if (static_cast<std::size_t>(f) % n_total == k) {
          method.attributes_used.push_back("f" + std::to_string(f));
        }
      }
    }

    classes_.push_back(std::move(cls));
  }

  void draw_calls(int index) {
    ClassInfo& cls = classes_[static_cast<std::size_t>(index)];
    for (std::size_t k = 0; k < cls.methods.size(); ++k) {
      MethodInfo& method = cls.methods[k];
      if (spec_.n_classes > 1 && rng_.chance(spec_.cross_class_call_prob)) {
        int count = 1 + static_cast<int>(rng_.below(2));
        for (int c = 0; c < count; ++c) {
          int target = other_class(index);
          const ClassInfo& callee = classes_[static_cast<std::size_t>(target)];
          std::vector<const MethodInfo*> plain;
          for (const MethodInfo& mi : callee.methods) {
            if (mi.name != simple_name(callee.fqn)) plain.push_back(&mi);
          }
          if (plain.empty()) continue;
          const MethodInfo& picked = *plain[rng_.below(plain.size())];
          method.calls.push_back({callee.fqn, picked.name, picked.arity, true});
        }
      }
      if (cls.methods.size() > 1 && rng_.chance(0.25)) {
        std::size_t peer = rng_.below(cls.methods.size() - 1);
        if (peer >= k) ++peer;
        method.calls.push_back(
            {cls.fqn, cls.methods[peer].name, cls.methods[peer].arity, true});
      }
      if (rng_.chance(0.1)) {
        method.calls.push_back({external_ref(),
                                "call" + std::to_string(rng_.below(4)),
                                static_cast<int>(rng_.below(3)), true});
      }
      if (rng_.chance(0.05)) {
        method.calls.push_back({"", "unknown" + std::to_string(rng_.below(3)),
                                static_cast<int>(rng_.below(2)), false});
      }
      if (spec_.n_classes > 1 && rng_.chance(0.05)) {
        method.calls.push_back({names_[static_cast<std::size_t>(other_class(index))],
                                "missing" + std::to_string(rng_.below(3)),
                                static_cast<int>(rng_.below(2)), false});
      }
    }
  }

  const GenSpec& spec_;
  SplitMix64 rng_;
  std::vector<std::string> names_;
  std::vector<ClassInfo> classes_;
  std::set<std::string> stubs_;
};

}  // namespace

ClassModel generate(const GenSpec& spec) {
  check_spec(spec);
  return Generator(spec).run();
}

}  // namespace ckm
