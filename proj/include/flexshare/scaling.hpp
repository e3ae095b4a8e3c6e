#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flexshare/deployment.hpp"
#include "flexshare/types.hpp"

namespace flexshare {

/// One service routed through a roster instance. In quota mode `overtake`
/// is only meaningful when `fixed` is set (single-service instances pin it
/// to lambda/2); otherwise it is a decision variable. In realized mode it
/// is always fixed.
struct RosterEntry {
    ServiceId service;
    double rate = 0.0;
    double overtake = 0.0;
    bool fixed = false;
};

/// One active VM of the capability program.
struct RosterInstance {
    VmId vm;
    VnfId vnf;
    double load = 1.0;           // l(v)
    double max_capability = 0.0; // C(m)
    double prop_cost = 0.0;      // kappa_p(m)
    std::vector<RosterEntry> services;

    double rate_sum() const;
    /// Total overtake budget of a shared instance: |S|/2 times the rate sum,
    /// with |S| counted on this instance.
    double quota_mass() const;
};

/// Capability-and-priority program over the active instances: choose mu(m)
/// (and, in quota mode, the per-service overtake rates) minimizing cost
/// under the capability ceilings and every service's delay target.
struct ScalingProblem {
    std::vector<RosterInstance> instances;
    std::map<ServiceId, double> max_delay;
    double fixed_cost_total = 0.0; // activation costs; constant offset
    bool quota_mode = false;

    const RosterInstance* find(const VmId& m) const;
};

enum class SolveStatus { feasible, infeasible };

struct ScalingSolution {
    SolveStatus status = SolveStatus::infeasible;
    std::map<VmId, double> capability;
    std::map<std::pair<VmId, ServiceId>, double> quota; // overtake rates used
    double objective = 0.0;                             // includes fixed costs
    std::vector<std::pair<VmId, double>> violated_capacity; // nonempty iff infeasible

    double quota_of(const VmId& m, const ServiceId& s) const;
};

/// Quota-mode program for the current deployment: one overtake variable per
/// (service, shared instance), and the averaging constraint per instance;
/// single-service instances are pinned at lambda/2.
ScalingProblem build_problem(const Pop& pop, const Deployment& dep);

/// Mu-only program: overtake rates fixed from the given per-instance values
/// (keyed (vm, service)); used to price a concrete priority assignment.
ScalingProblem build_realized_problem(const Pop& pop, const Deployment& dep,
                                      const std::map<std::pair<VmId, ServiceId>, double>& overtake);

/// Solves the program with a log-barrier interior scheme. Feasible results
/// are verified against every constraint to 1e-6 before being reported.
/// Infeasible results carry the elastic relaxation's violated capacity list
/// plus the elastic point's capability/quota values (useful as a hint).
/// Throws NumericalError when the scheme cannot converge either way.
ScalingSolution solve(const ScalingProblem& problem);

/// Elastic relaxation: allow mu(m) <= C(m) + slack(m), minimize total slack,
/// and report the VMs whose slack stays above 1e-6. Throws std::logic_error
/// when the problem is actually feasible.
std::vector<std::pair<VmId, double>> find_violated_capacity(const ScalingProblem& problem);

/// Priority parameters per instance derived from a quota-mode solution:
/// deterministic levels -quota for per-VNF models, and for the per-flow
/// model the centers solving the overtake equations in the least-squares
/// sense (anchored at mean zero, clamped to the +-2j box).
std::map<VmId, std::map<ServiceId, double>> map_priorities(const ScalingProblem& problem,
                                                           const ScalingSolution& solution,
                                                           const PriorityModel& model);

} // namespace flexshare
