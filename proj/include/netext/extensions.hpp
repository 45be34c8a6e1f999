#pragma once

// Candidate extensions F: X -> Y of the net function f. Built-ins operate
// per component (block-diagonal); plugin candidates receive the whole product
// point, so cross-component maps are expressible externally.

#include <functional>
#include <memory>
#include <string>

#include "netext/modulus.hpp"
#include "netext/net.hpp"
#include "netext/spaces.hpp"
#include "netext/symmetrize.hpp"

namespace netext {

struct ExtensionCandidate {
  std::string name;
  bool claims_extends_f = false;
  bool claims_uniformly_continuous = false;
  // F_p for a single exponent
  std::function<RealVector(int p, const RealVector&)> component;
  // the full map on product points
  ProductMap product;

  VectorMap component_map(int p) const {
    auto c = component;
    return [c, p](const RealVector& v) { return c(p, v); };
  }
};

// F_p = M_p: extends f by construction (gamma = 0); its modulus at scale s is
// at least s^(2/P), which approaches 1 as the truncation P grows
ExtensionCandidate natural_extension();

// F_p(x) = M_p(nearest net point of x): extends f, constant on the interior
// of each Voronoi cell, hence discontinuous across cell boundaries
ExtensionCandidate nearest_point_extension(std::shared_ptr<const NetHandle> net);

// F = 0: uniformly continuous with omega identically 0, but gamma grows like
// the net radius
ExtensionCandidate zero_extension();

// external program speaking the JSON line protocol; calls are serialized per
// plugin instance
ExtensionCandidate load_plugin_extension(const std::string& command, double timeout_seconds = 10.0);

ExtensionCandidate extension_by_name(const std::string& name_or_command,
                                     std::shared_ptr<const NetHandle> net_for_nearest,
                                     double plugin_timeout_seconds = 10.0);

// measurement vs. declared claims; contradicted claims are flagged, never
// silently accepted
struct ClaimAudit {
  bool extends_f_consistent = true;
  bool uniformly_continuous_consistent = true;
  std::string notes;
};

ClaimAudit audit_claims(const ExtensionCandidate& candidate, const GammaEstimate& gamma,
                        const ModulusTable& omega, double uc_floor = 0.05);

}  // namespace netext
