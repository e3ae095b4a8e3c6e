#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "flexshare/queueing.hpp"
#include "flexshare/types.hpp"

namespace flexshare {

/// One active VM: the VNF it runs, its assigned capability mu(m), and the
/// services routed through it with their priority parameter (a level for
/// deterministic models, a center for the per-flow model).
struct InstanceState {
    VnfId vnf;
    double capability = 0.0;
    std::map<ServiceId, double> services;

    bool hosts(const ServiceId& s) const { return services.count(s) > 0; }
};

/// Full PoP decision state. A VM id present in `instances` means y(v,m)=1
/// for that instance's VNF; a service listed under an instance means
/// x(s,v,m)=1. One VNF per VM is structural.
struct Deployment {
    PriorityModel model;
    std::map<VmId, InstanceState> instances;

    bool vm_active(const VmId& m) const { return instances.count(m) > 0; }
    const InstanceState* instance(const VmId& m) const;

    /// VM ids currently running `v`, in id order.
    std::vector<VmId> instances_running(const VnfId& v) const;

    /// VM ids hosting service `s`, in id order.
    std::vector<VmId> instances_of_service(const ServiceId& s) const;

    bool service_deployed(const ServiceId& s) const { return !instances_of_service(s).empty(); }

    std::vector<ServiceId> deployed_services() const;

    /// Offered load l(v) * sum of assigned rates on VM m.
    double instance_load(const Pop& pop, const VmId& m) const;

    /// Competing services at instance m as (service, rate, priority param).
    std::vector<PriorityEntry> population(const Pop& pop, const VmId& m) const;

    /// Arrival rate prioritized over `s` at instance m, per the deployment's
    /// priority model.
    double overtake_rate(const Pop& pop, const VmId& m, const ServiceId& s) const;

    /// End-to-end mean delay of a deployed service: sum of its per-instance
    /// sojourn times. A service using no instance gets 0.
    double service_delay(const Pop& pop, const ServiceId& s) const;

    /// Activation cost plus capability cost over all active VMs.
    double total_cost(const Pop& pop) const;

    /// Structural and queueing invariants: hosted VNFs exist, every
    /// assigned service has positive rate at the hosted VNF, mu within
    /// (offered load, C(m)]. Throws on violation.
    void check_invariants(const Pop& pop) const;
};

} // namespace flexshare
