#include "flexshare/deployment.hpp"

#include <sstream>

#include "flexshare/errors.hpp"

namespace flexshare {

const InstanceState* Deployment::instance(const VmId& m) const {
    auto it = instances.find(m);
    return it == instances.end() ? nullptr : &it->second;
}

std::vector<VmId> Deployment::instances_running(const VnfId& v) const {
    std::vector<VmId> out;
    for (const auto& [m, inst] : instances) {
        if (inst.vnf == v) out.push_back(m);
    }
    return out;
}

std::vector<VmId> Deployment::instances_of_service(const ServiceId& s) const {
    std::vector<VmId> out;
    for (const auto& [m, inst] : instances) {
        if (inst.hosts(s)) out.push_back(m);
    }
    return out;
}

std::vector<ServiceId> Deployment::deployed_services() const {
    std::map<ServiceId, bool> seen;
    for (const auto& [m, inst] : instances) {
        for (const auto& [s, level] : inst.services) seen[s] = true;
    }
    std::vector<ServiceId> out;
    for (const auto& [s, flag] : seen) out.push_back(s);
    return out;
}

double Deployment::instance_load(const Pop& pop, const VmId& m) const {
    const InstanceState* inst = instance(m);
    if (inst == nullptr) return 0.0;
    double total = 0.0;
    for (const auto& [s, level] : inst->services) total += pop.service(s).rate(inst->vnf);
    return pop.vnf(inst->vnf).load * total;
}

std::vector<PriorityEntry> Deployment::population(const Pop& pop, const VmId& m) const {
    const InstanceState* inst = instance(m);
    if (inst == nullptr) throw std::invalid_argument("population: VM '" + m + "' is inactive");
    std::vector<PriorityEntry> out;
    for (const auto& [s, level] : inst->services) {
        out.push_back({s, pop.service(s).rate(inst->vnf), level});
    }
    return out;
}

double Deployment::overtake_rate(const Pop& pop, const VmId& m, const ServiceId& s) const {
    const auto entries = population(pop, m);
    if (model.per_flow()) return overtake_rate_per_flow(s, entries, model.jitter);
    return overtake_rate_per_vnf(s, entries);
}

double Deployment::service_delay(const Pop& pop, const ServiceId& s) const {
    double total = 0.0;
    for (const auto& [m, inst] : instances) {
        if (!inst.hosts(s)) continue;
        const double l = pop.vnf(inst.vnf).load;
        const double lambda = pop.service(s).rate(inst.vnf);
        total += sojourn_time(l, inst.capability, overtake_rate(pop, m, s), lambda);
    }
    return total;
}

double Deployment::total_cost(const Pop& pop) const {
    double cost = 0.0;
    for (const auto& [m, inst] : instances) {
        const VmSpec& spec = pop.vm(m);
        cost += spec.fixed_cost + spec.prop_cost * inst.capability;
    }
    return cost;
}

void Deployment::check_invariants(const Pop& pop) const {
    for (const auto& [m, inst] : instances) {
        const VmSpec& spec = pop.vm(m);
        pop.vnf(inst.vnf);
        std::ostringstream where;
        where << "instance " << m << " (" << inst.vnf << ")";
        if (inst.services.empty()) {
            throw ValidationError(where.str() + ": active VM without services");
        }
        for (const auto& [s, level] : inst.services) {
            if (pop.service(s).rate(inst.vnf) <= 0.0) {
                throw ValidationError(where.str() + ": service '" + s + "' does not use this VNF");
            }
        }
        const double load = instance_load(pop, m);
        if (!(inst.capability > load)) {
            throw UnstableQueueError(where.str() + ": capability does not exceed offered load");
        }
        if (inst.capability > spec.max_capability + 1e-9) {
            throw ValidationError(where.str() + ": capability above the VM ceiling");
        }
    }
}

} // namespace flexshare
