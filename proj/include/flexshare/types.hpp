#pragma once

#include <map>
#include <string>
#include <vector>

namespace flexshare {

using VnfId = std::string;
using ServiceId = std::string;
using VmId = std::string;

/// A VNF type. `load` is l(v): capability units consumed per flow per time unit.
struct VnfSpec {
    VnfId id;
    double load = 1.0;
};

/// A requested service: per-VNF flow arrival rates and an end-to-end delay target.
struct ServiceSpec {
    ServiceId id;
    std::map<VnfId, double> rates; // flows per time unit; absent VNF means 0
    double max_delay = 0.0;        // time units

    double rate(const VnfId& v) const {
        auto it = rates.find(v);
        return it == rates.end() ? 0.0 : it->second;
    }
};

/// A VM of the PoP: capability ceiling and activation/usage costs.
struct VmSpec {
    VmId id;
    double max_capability = 0.0; // C(m)
    double fixed_cost = 0.0;     // paid once if the VM is active
    double prop_cost = 0.0;      // per capability unit in use
};

/// How traffic priorities are expressed inside a shared VNF instance.
struct PriorityModel {
    enum class Kind {
        per_service, // one deterministic level per service, uniform across VNFs
        per_vnf,     // one deterministic level per (service, VNF instance)
        per_flow     // per-flow draw: uniform on [center-jitter, center+jitter]
    };
    Kind kind = Kind::per_vnf;
    double jitter = 1.0; // only meaningful for per_flow; must stay > 0

    bool per_flow() const { return kind == Kind::per_flow; }
};

/// The static catalog of one PoP: VNF types, requested services, VM inventory.
struct Pop {
    std::map<VnfId, VnfSpec> vnfs;
    std::map<ServiceId, ServiceSpec> services;
    std::map<VmId, VmSpec> vms;

    const VnfSpec& vnf(const VnfId& id) const;
    const ServiceSpec& service(const ServiceId& id) const;
    const VmSpec& vm(const VmId& id) const;

    /// VNFs a service actually uses (rate > 0), in id order.
    std::vector<VnfId> required_vnfs(const ServiceId& id) const;

    /// Throws ValidationError on broken invariants (dangling rates, bad bounds).
    void validate() const;

    /// Copy with every arrival rate multiplied by n.
    Pop scaled(double n) const;
};

} // namespace flexshare
