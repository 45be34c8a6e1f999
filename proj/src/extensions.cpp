#include "netext/extensions.hpp"

#include <mutex>

#include "netext/mazur.hpp"
#include "netext/plugin_process.hpp"

namespace netext {
namespace {

ProductMap block_diagonal(std::function<RealVector(int, const RealVector&)> component) {
  return [component](const ProductPoint& x) {
    std::vector<RealVector> comps;
    comps.reserve(x.components().size());
    for (int p = x.p0(); p <= x.p_max(); ++p) comps.push_back(component(p, x.component(p)));
    return ProductPoint(x.shape(), std::move(comps));
  };
}

}  // namespace

ExtensionCandidate natural_extension() {
  ExtensionCandidate c;
  c.name = "natural";
  c.claims_extends_f = true;
  c.claims_uniformly_continuous = false;
  c.component = [](int p, const RealVector& v) { return mazur(v, p); };
  c.product = block_diagonal(c.component);
  return c;
}

ExtensionCandidate nearest_point_extension(std::shared_ptr<const NetHandle> net) {
  if (net == nullptr) throw InvalidInput("nearest_point_extension: null net");
  ExtensionCandidate c;
  c.name = "nearest";
  c.claims_extends_f = true;
  c.claims_uniformly_continuous = false;
  c.component = [net](int p, const RealVector& v) {
    const NearestResult r = net->nearest(v);
    return mazur(net->point(r.index), p);
  };
  c.product = block_diagonal(c.component);
  return c;
}

ExtensionCandidate zero_extension() {
  ExtensionCandidate c;
  c.name = "zero";
  c.claims_extends_f = false;
  c.claims_uniformly_continuous = true;
  c.component = [](int, const RealVector& v) { return RealVector::zeros(v.dim()); };
  c.product = block_diagonal(c.component);
  return c;
}

ExtensionCandidate load_plugin_extension(const std::string& command, double timeout_seconds) {
  struct SharedPlugin {
    PluginProcess process;
    std::mutex mutex;
    SharedPlugin(const std::string& cmd, double timeout) : process(cmd, timeout) {}
  };
  auto shared = std::make_shared<SharedPlugin>(command, timeout_seconds);

  ExtensionCandidate c;
  c.name = "plugin:" + command;
  c.claims_extends_f = false;
  c.claims_uniformly_continuous = false;
  c.product = [shared](const ProductPoint& x) {
    std::lock_guard<std::mutex> lock(shared->mutex);
    return shared->process.call(x);
  };
  c.component = [shared](int p, const RealVector& v) {
    std::lock_guard<std::mutex> lock(shared->mutex);
    const ProductShape shape{p, p, v.dim()};
    const ProductPoint y = shared->process.call(ProductPoint(shape, {v}));
    return y.component(p);
  };
  return c;
}

ExtensionCandidate extension_by_name(const std::string& name_or_command,
                                     std::shared_ptr<const NetHandle> net_for_nearest,
                                     double plugin_timeout_seconds) {
  if (name_or_command == "natural") return natural_extension();
  if (name_or_command == "zero") return zero_extension();
  if (name_or_command == "nearest") return nearest_point_extension(std::move(net_for_nearest));
  return load_plugin_extension(name_or_command, plugin_timeout_seconds);
}

ClaimAudit audit_claims(const ExtensionCandidate& candidate, const GammaEstimate& gamma,
                        const ModulusTable& omega, double uc_floor) {
  ClaimAudit audit;
  if (candidate.claims_extends_f && gamma.value != 0.0) {
    audit.extends_f_consistent = false;
    audit.notes += "claimed extends_f but measured gamma = " + std::to_string(gamma.value) + "; ";
  }
  if (candidate.claims_uniformly_continuous) {
    const double smallest = omega.estimates().front();
    if (smallest > uc_floor) {
      audit.uniformly_continuous_consistent = false;
      audit.notes += "claimed uniformly_continuous but omega_hat(" +
                     std::to_string(omega.scales().front()) + ") = " + std::to_string(smallest) +
                     " exceeds floor " + std::to_string(uc_floor) + "; ";
    }
  }
  return audit;
}

}  // namespace netext
