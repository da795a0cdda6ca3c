#pragma once

#include <cstdint>

#include "ckm/model.hpp"

namespace ckm {

/// Tunable shape of a synthetic corpus. The two probability knobs and the
/// sharing knob steer coupling and cohesion independently, which is what
/// the correlation demonstrations dial.
struct GenSpec {
  std::uint64_t seed = 1;
  int n_classes = 0;
  int n_packages = 1;
  int max_methods = 4;
  int max_fields = 4;
  double inheritance_prob = 0.3;
  double cross_class_call_prob = 0.5;
  /// 1 = every method pair shares an attribute; 0 = disjoint partitions.
  double attribute_sharing = 0.5;
};

/// Builds a valid, acyclic model from a GenSpec. The same seed and
/// parameters always produce a structurally identical model; the PRNG is
/// splitmix64, so behavior is pinned across platforms. Throws
/// GenerationError when a knob is out of range or unsatisfiable (for
/// example max_fields = 0 with attribute_sharing > 0).
ClassModel generate(const GenSpec& spec);

}  // namespace ckm
