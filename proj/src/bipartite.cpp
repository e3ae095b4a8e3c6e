#include "flexshare/bipartite.hpp"

#include <algorithm>
#include <limits>

#include "flexshare/errors.hpp"
#include "flexshare/hungarian.hpp"

namespace flexshare {

namespace {
constexpr double kCostEpsilon = 1e-6; // keeps reuse edges strictly positive
constexpr double kInf = std::numeric_limits<double>::infinity();
} // namespace

std::vector<VmId> BipartiteGraph::options(const VnfId& v) const {
    std::vector<VmId> out;
    for (const auto& [key, cost] : edges) {
        if (key.first == v) out.push_back(key.second);
    }
    return out;
}

double edge_cost(const Pop& pop, const Deployment& dep, const VnfId& v, const VmId& m,
                 const ServiceId& incoming) {
    const VmSpec& spec = pop.vm(m);
    const double activation = dep.vm_active(m) ? 0.0 : spec.fixed_cost;
    const double extra = pop.vnf(v).load * pop.service(incoming).rate(v) + kCostEpsilon;
    return activation + spec.prop_cost * extra;
}

BipartiteGraph build_graph(const Pop& pop, const Deployment& dep, const ServiceId& incoming) {
    BipartiteGraph graph;
    graph.vnfs = pop.required_vnfs(incoming);
    for (const auto& [m, spec] : pop.vms) graph.vms.push_back(m);

    const ServiceSpec& svc = pop.service(incoming);
    for (const auto& v : graph.vnfs) {
        bool any = false;
        for (const auto& [m, spec] : pop.vms) {
            const InstanceState* inst = dep.instance(m);
            bool admissible = false;
            if (inst == nullptr) {
                admissible = true;
            } else if (inst->vnf == v && !inst->hosts(incoming)) {
                // reuse allowed only while the combined load stays below the ceiling
                std::vector<double> rates{svc.rate(v)};
                for (const auto& [s, level] : inst->services) rates.push_back(pop.service(s).rate(v));
                admissible = instance_stable(pop.vnf(v).load, rates, spec.max_capability);
            }
            if (admissible) {
                graph.edges[{v, m}] = edge_cost(pop, dep, v, m, incoming);
                any = true;
            }
        }
        if (!any) {
            throw InsufficientResourcesError("no admissible VM for VNF '" + v + "' of service '" +
                                             incoming + "'");
        }
    }
    return graph;
}

namespace {

std::vector<std::vector<double>> cost_matrix(const BipartiteGraph& graph) {
    std::vector<std::vector<double>> cost(graph.vnfs.size(),
                                          std::vector<double>(graph.vms.size(), kInf));
    for (std::size_t i = 0; i < graph.vnfs.size(); ++i) {
        for (std::size_t j = 0; j < graph.vms.size(); ++j) {
            auto it = graph.edges.find({graph.vnfs[i], graph.vms[j]});
            if (it != graph.edges.end()) cost[i][j] = it->second;
        }
    }
    return cost;
}

} // namespace

std::optional<std::map<VnfId, VmId>> hungarian_solve(const BipartiteGraph& graph) {
    if (graph.vnfs.empty()) return std::map<VnfId, VmId>{};
    auto cost = cost_matrix(graph);
    const auto base = min_cost_assignment(cost);
    if (!base) return std::nullopt;
    const double optimum = assignment_cost(cost, *base);
    const double slack = 1e-9 * (1.0 + std::abs(optimum));

    // Canonical tie-break: walk VNFs in id order and pin each to the lowest-id
    // VM that still allows completing an optimal matching.
    std::map<VnfId, VmId> result;
    double fixed_cost_sum = 0.0;
    std::vector<char> vm_taken(graph.vms.size(), 0);
    std::vector<std::vector<double>> rest(cost.begin() + 1, cost.end());
    for (std::size_t i = 0; i < graph.vnfs.size(); ++i) {
        bool pinned = false;
        for (std::size_t j = 0; j < graph.vms.size() && !pinned; ++j) {
            if (vm_taken[j] || !(cost[i][j] < kInf)) continue;
            // cost of the remaining rows with column j withheld
            std::vector<std::vector<double>> reduced;
            reduced.reserve(graph.vnfs.size() - i - 1);
            for (std::size_t r = i + 1; r < graph.vnfs.size(); ++r) {
                std::vector<double> row = cost[r];
                row[j] = kInf;
                for (std::size_t t = 0; t < graph.vms.size(); ++t) {
                    if (vm_taken[t]) row[t] = kInf;
                }
                reduced.push_back(std::move(row));
            }
            double completion = 0.0;
            bool ok = true;
            if (!reduced.empty()) {
                const auto sub = min_cost_assignment(reduced);
                if (!sub) {
                    ok = false;
                } else {
                    completion = assignment_cost(reduced, *sub);
                }
            }
            if (ok && fixed_cost_sum + cost[i][j] + completion <= optimum + slack) {
                result[graph.vnfs[i]] = graph.vms[j];
                fixed_cost_sum += cost[i][j];
                vm_taken[j] = 1;
                pinned = true;
            }
        }
        if (!pinned) return std::nullopt; // cannot happen when base exists
    }
    return result;
}

void apply_assignment(const Pop& pop, Deployment& dep, const std::map<VnfId, VmId>& assignment,
                      const ServiceId& incoming) {
    for (const auto& [v, m] : assignment) {
        auto it = dep.instances.find(m);
        if (it == dep.instances.end()) {
            InstanceState inst;
            inst.vnf = v;
            inst.services[incoming] = 0.0;
            dep.instances[m] = std::move(inst);
        } else {
            if (it->second.vnf != v) {
                throw ValidationError("assignment routes '" + v + "' to VM '" + m +
                                      "' which runs '" + it->second.vnf + "'");
            }
            it->second.services[incoming] = 0.0;
        }
    }
}

} // namespace flexshare
