#pragma once

#include <string>
#include <vector>

#include "flexshare/types.hpp"

namespace flexshare {

/// One service competing at a VNF instance. `level` is a deterministic
/// priority for the stepwise model, or a distribution center for the
/// per-flow model.
struct PriorityEntry {
    ServiceId service;
    double rate = 0.0;
    double level = 0.0;
};

/// Mean sojourn time of a tagged service's flows in a preemptive-priority
/// M/M/1 instance:
///
///   S = (l/mu) * 1/(1 - l*Lambda/mu) * 1/(1 - l*(Lambda+lambda)/mu)
///
/// where Lambda is the arrival rate of flows prioritized over the tagged
/// service and lambda its own rate. Throws UnstableQueueError when
/// l*(Lambda+lambda) >= mu.
double sojourn_time(double load, double capability, double higher_rate, double own_rate);

/// Shared-FIFO reference figure 1/(mu - l*sum_rates), kept for comparison
/// against the equal-priority value of sojourn_time. Throws on instability.
double fifo_sojourn(double load, double capability, double total_rate);

/// Step function used by deterministic priorities: 1 above zero, 1/2 at
/// zero (ties split the other service's traffic evenly), 0 below.
double heaviside(double z);

/// Rate of traffic served before `target` under deterministic levels:
/// sum over other services of H(level_t - level_target) * rate_t.
/// The population must contain the target; own traffic is excluded.
double overtake_rate_per_vnf(const ServiceId& target, const std::vector<PriorityEntry>& population);

/// Probability that a flow with uniform priority centered at center_t
/// outranks one centered at center_s, both with half-width `jitter`:
/// 1 if the centers differ by more than 2j, 0 if by less than -2j, and
/// 1/2 + (center_t - center_s)/(4j) in between.
double overtake_probability(double center_s, double center_t, double jitter);

/// Per-flow counterpart of overtake_rate_per_vnf: sum over other services
/// of q(target, t) * rate_t with q from overtake_probability.
double overtake_rate_per_flow(const ServiceId& target, const std::vector<PriorityEntry>& population,
                              double jitter);

/// Whether an instance of a VNF with per-flow requirement `load` can host
/// the given arrival rates within capability ceiling `max_capability`:
/// strict inequality, the boundary is unstable.
bool instance_stable(double load, const std::vector<double>& rates, double max_capability);

} // namespace flexshare
