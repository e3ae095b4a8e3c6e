#include "flexshare/types.hpp"

#include <cmath>
#include <sstream>

#include "flexshare/errors.hpp"

namespace flexshare {

namespace {

template <typename Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& id, const char* what) {
    auto it = m.find(id);
    if (it == m.end()) {
        std::ostringstream msg;
        msg << "unknown " << what << " '" << id << "'";
        throw ValidationError(msg.str());
    }
    return it->second;
}

} // namespace

const VnfSpec& Pop::vnf(const VnfId& id) const { return lookup(vnfs, id, "VNF"); }
const ServiceSpec& Pop::service(const ServiceId& id) const { return lookup(services, id, "service"); }
const VmSpec& Pop::vm(const VmId& id) const { return lookup(vms, id, "VM"); }

std::vector<VnfId> Pop::required_vnfs(const ServiceId& id) const {
    std::vector<VnfId> out;
    for (const auto& [v, rate] : service(id).rates) {
        if (rate > 0.0) out.push_back(v);
    }
    return out;
}

void Pop::validate() const {
    for (const auto& [id, v] : vnfs) {
        if (id != v.id) throw ValidationError("vnfs: key/id mismatch for '" + id + "'");
        if (!(v.load > 0.0) || !std::isfinite(v.load)) {
            throw ValidationError("vnfs." + id + ".load: must be finite and > 0");
        }
    }
    for (const auto& [id, m] : vms) {
        if (id != m.id) throw ValidationError("vms: key/id mismatch for '" + id + "'");
        if (!(m.max_capability > 0.0) || !std::isfinite(m.max_capability)) {
            throw ValidationError("vms." + id + ".max_capability: must be finite and > 0");
        }
        if (m.fixed_cost < 0.0 || m.prop_cost < 0.0) {
            throw ValidationError("vms." + id + ": costs must be nonnegative");
        }
    }
    for (const auto& [id, s] : services) {
        if (id != s.id) throw ValidationError("services: key/id mismatch for '" + id + "'");
        if (!(s.max_delay > 0.0) || !std::isfinite(s.max_delay)) {
            throw ValidationError("services." + id + ".max_delay: must be finite and > 0");
        }
        bool any = false;
        for (const auto& [v, rate] : s.rates) {
            if (vnfs.find(v) == vnfs.end()) {
                throw ValidationError("services." + id + ".rates: dangling VNF reference '" + v + "'");
            }
            if (rate < 0.0 || !std::isfinite(rate)) {
                throw ValidationError("services." + id + ".rates." + v + ": must be finite and >= 0");
            }
            any = any || rate > 0.0;
        }
        if (!any) throw ValidationError("services." + id + ": needs at least one positive rate");
    }
}

Pop Pop::scaled(double n) const {
    if (!(n > 0.0)) throw ValidationError("traffic multiplier must be > 0");
    Pop out = *this;
    for (auto& [id, s] : out.services) {
        for (auto& [v, rate] : s.rates) rate *= n;
    }
    return out;
}

} // namespace flexshare
