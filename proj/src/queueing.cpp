#include "flexshare/queueing.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "flexshare/errors.hpp"

namespace flexshare {

double sojourn_time(double load, double capability, double higher_rate, double own_rate) {
    if (load <= 0.0 || capability <= 0.0) {
        throw std::invalid_argument("sojourn_time: load and capability must be positive");
    }
    if (higher_rate < 0.0 || own_rate < 0.0) {
        throw std::invalid_argument("sojourn_time: arrival rates must be nonnegative");
    }
    const double occupied = load * (higher_rate + own_rate);
    if (occupied >= capability) {
        std::ostringstream msg;
        msg << "unstable queue: load " << occupied << " >= capability " << capability;
        throw UnstableQueueError(msg.str());
    }
    const double hi = load * higher_rate / capability;
    return (load / capability) / ((1.0 - hi) * (1.0 - occupied / capability));
}

double fifo_sojourn(double load, double capability, double total_rate) {
    const double served = capability / load;
    if (total_rate >= served) {
        throw UnstableQueueError("unstable queue: FIFO load at or above capability");
    }
    return 1.0 / (served - total_rate);
}

double heaviside(double z) {
    if (z > 0.0) return 1.0;
    if (z < 0.0) return 0.0;
    return 0.5;
}

double overtake_rate_per_vnf(const ServiceId& target, const std::vector<PriorityEntry>& population) {
    const PriorityEntry* self = nullptr;
    for (const auto& e : population) {
        if (e.service == target) {
            self = &e;
            break;
        }
    }
    if (self == nullptr) {
        throw std::invalid_argument("overtake_rate_per_vnf: target service not in population");
    }
    double rate = 0.0;
    for (const auto& e : population) {
        if (e.service == target) continue;
        if (e.rate < 0.0) throw std::invalid_argument("overtake_rate_per_vnf: negative rate");
        rate += heaviside(e.level - self->level) * e.rate;
    }
    return rate;
}

double overtake_probability(double center_s, double center_t, double jitter) {
    if (!(jitter > 0.0) || !std::isfinite(jitter)) {
        throw std::invalid_argument("overtake_probability: jitter must be finite and positive");
    }
    const double gap = center_t - center_s;
    if (gap > 2.0 * jitter) return 1.0;
    if (gap < -2.0 * jitter) return 0.0;
    return 0.5 + gap / (4.0 * jitter);
}

double overtake_rate_per_flow(const ServiceId& target, const std::vector<PriorityEntry>& population,
                              double jitter) {
    const PriorityEntry* self = nullptr;
    for (const auto& e : population) {
        if (e.service == target) {
            self = &e;
            break;
        }
    }
    if (self == nullptr) {
        throw std::invalid_argument("overtake_rate_per_flow: target service not in population");
    }
    double rate = 0.0;
    for (const auto& e : population) {
        if (e.service == target) continue;
        if (e.rate < 0.0) throw std::invalid_argument("overtake_rate_per_flow: negative rate");
        rate += overtake_probability(self->level, e.level, jitter) * e.rate;
    }
    return rate;
}

bool instance_stable(double load, const std::vector<double>& rates, double max_capability) {
    double total = 0.0;
    for (double r : rates) total += r;
    return load * total < max_capability;
}

} // namespace flexshare
