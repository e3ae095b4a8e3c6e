#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flexshare/deployment.hpp"
#include "flexshare/types.hpp"

namespace flexshare {

/// Feasible (VNF, VM) options for the service being deployed, labeled with
/// the marginal cost of each choice. Left side: the VNFs the service needs;
/// right side: candidate VMs.
struct BipartiteGraph {
    std::vector<VnfId> vnfs;
    std::vector<VmId> vms;
    std::map<std::pair<VnfId, VmId>, double> edges;

    bool has_edge(const VnfId& v, const VmId& m) const { return edges.count({v, m}) > 0; }
    void remove_edge(const VnfId& v, const VmId& m) { edges.erase({v, m}); }
    std::size_t edge_count() const { return edges.size(); }

    /// Candidate VMs for one VNF, in id order.
    std::vector<VmId> options(const VnfId& v) const;
};

/// Marginal cost of serving `incoming`'s VNF v from VM m: the activation
/// cost if m is idle, plus the capability increment needed for stability
/// (with a small epsilon so reuse is never free).
double edge_cost(const Pop& pop, const Deployment& dep, const VnfId& v, const VmId& m,
                 const ServiceId& incoming);

/// Builds the option graph for `incoming`: an edge to every idle VM, and to
/// every VM already running the same VNF whose capability ceiling keeps the
/// combined load stable. Throws InsufficientResourcesError when some
/// required VNF has no option at all.
BipartiteGraph build_graph(const Pop& pop, const Deployment& dep, const ServiceId& incoming);

/// Minimum-cost matching of every required VNF to a distinct VM. Among
/// equal-cost matchings, prefers lower VM ids (VNFs scanned in id order).
/// Returns nullopt when no complete matching remains.
std::optional<std::map<VnfId, VmId>> hungarian_solve(const BipartiteGraph& graph);

/// Records the matching into the deployment: activates fresh VMs with the
/// matched VNF and routes `incoming` through every matched instance.
/// Capabilities and priorities are decided later.
void apply_assignment(const Pop& pop, Deployment& dep, const std::map<VnfId, VmId>& assignment,
                      const ServiceId& incoming);

} // namespace flexshare
