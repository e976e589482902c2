#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mapforge/common.hpp"
#include "mapforge/planar_map.hpp"

namespace mapforge {

struct CheckResult {
  std::string name;
  bool ok = true;
  bool skipped = false;  // an earlier structural check failed
  std::string detail;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool ok() const;
  const CheckResult* find(const std::string& name) const;
};

struct VerifyOptions {
  // Vertices used as sources for the winding and two-point checks; all
  // vertices when the map has at most this many.
  std::size_t probes = 64;
  std::uint64_t seed = 0;
};

// Check names, in order: simplicity, euler, orientation, minimality,
// round_trip, sandwich, leftmost_identity, winding_bound, two_point_bound.
// Without an orientation the minimal one is computed. The label checks run on
// the closure of the opened tree, which is isomorphic to m.
VerifyReport verify_map(const PlanarMap& m, const std::optional<EdgeOrientation>& ori, Family f,
                        const VerifyOptions& opt = {});

}  // namespace mapforge
