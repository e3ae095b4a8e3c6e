#include "flexshare/scaling.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "flexshare/errors.hpp"

namespace flexshare {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSlackThreshold = 1e-6; // capability slack that certifies infeasibility
constexpr double kVerifyTol = 1e-6;
} // namespace

double RosterInstance::rate_sum() const {
    double total = 0.0;
    for (const auto& e : services) total += e.rate;
    return total;
}

double RosterInstance::quota_mass() const {
    return 0.5 * static_cast<double>(services.size()) * rate_sum();
}

const RosterInstance* ScalingProblem::find(const VmId& m) const {
    for (const auto& inst : instances) {
        if (inst.vm == m) return &inst;
    }
    return nullptr;
}

double ScalingSolution::quota_of(const VmId& m, const ServiceId& s) const {
    auto it = quota.find({m, s});
    return it == quota.end() ? 0.0 : it->second;
}

ScalingProblem build_problem(const Pop& pop, const Deployment& dep) {
    ScalingProblem problem;
    problem.quota_mode = true;
    for (const auto& [m, inst] : dep.instances) {
        const VnfSpec& vnf = pop.vnf(inst.vnf);
        const VmSpec& vm = pop.vm(m);
        RosterInstance ri;
        ri.vm = m;
        ri.vnf = inst.vnf;
        ri.load = vnf.load;
        ri.max_capability = vm.max_capability;
        ri.prop_cost = vm.prop_cost;
        for (const auto& [s, level] : inst.services) {
            RosterEntry e;
            e.service = s;
            e.rate = pop.service(s).rate(inst.vnf);
            ri.services.push_back(e);
        }
        if (ri.services.size() == 1 || ri.rate_sum() <= 0.0) {
            for (auto& e : ri.services) {
                e.fixed = true;
                e.overtake = 0.5 * e.rate; // averaging constraint with a single member
            }
        }
        problem.instances.push_back(std::move(ri));
        problem.fixed_cost_total += vm.fixed_cost;
        for (const auto& [s, level] : inst.services) {
            problem.max_delay[s] = pop.service(s).max_delay;
        }
    }
    return problem;
}

ScalingProblem build_realized_problem(
    const Pop& pop, const Deployment& dep,
    const std::map<std::pair<VmId, ServiceId>, double>& overtake) {
    ScalingProblem problem = build_problem(pop, dep);
    problem.quota_mode = false;
    for (auto& inst : problem.instances) {
        for (auto& e : inst.services) {
            auto it = overtake.find({inst.vm, e.service});
            if (it == overtake.end()) {
                throw std::invalid_argument("build_realized_problem: missing overtake rate for (" +
                                            inst.vm + ", " + e.service + ")");
            }
            e.fixed = true;
            e.overtake = it->second;
        }
    }
    return problem;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct SojournDerivs {
    double value, d_mu, d_ov, d_mu_mu, d_mu_ov, d_ov_ov;
};

// S = l*mu / (u*w), u = mu - l*ov, w = mu - l*(ov + lambda). Caller
// guarantees w > 0.
SojournDerivs sojourn_derivs(double l, double mu, double ov, double lambda) {
    const double u = mu - l * ov;
    const double w = mu - l * (ov + lambda);
    const double p = u * w;
    const double q = u + w;
    const double p2 = p * p;
    const double p3 = p2 * p;
    SojournDerivs d;
    d.value = l * mu / p;
    d.d_mu = l * (p - mu * q) / p2;
    d.d_ov = l * l * mu * q / p2;
    d.d_mu_mu = 2.0 * l * (mu * q * q - mu * p - q * p) / p3;
    d.d_mu_ov = l * l * (2.0 * mu * p + q * p - 2.0 * mu * q * q) / p3;
    d.d_ov_ov = 2.0 * l * l * l * mu * (q * q - p) / p3;
    return d;
}

// Affine form c0 + sum coef_i * x_i, used for the overtake rates under the
// per-instance averaging constraint.
struct LinExpr {
    double c0 = 0.0;
    std::vector<std::pair<int, double>> terms;

    double eval(const VectorXd& x) const {
        double v = c0;
        for (const auto& [idx, coef] : terms) v += coef * x[idx];
        return v;
    }
};

struct LinCon {
    LinExpr expr; // constraint expr > 0
};

struct DelayTerm {
    int instance;  // roster index
    int entry;     // service slot within the instance
};

struct DelayCon {
    ServiceId service;
    double limit;
    std::vector<DelayTerm> terms;
};

// Barrier formulation of one ScalingProblem. Elastic mode adds a slack
// variable per instance on the capability ceiling and minimizes total slack
// instead of cost.
class BarrierProgram {
public:
    BarrierProgram(const ScalingProblem& problem, bool elastic)
        : problem_(problem), elastic_(elastic) {
        const int m = static_cast<int>(problem.instances.size());
        n_ = m;
        quota_offset_.assign(m, -1);
        if (problem.quota_mode) {
            for (int i = 0; i < m; ++i) {
                const auto& inst = problem.instances[i];
                const int k = static_cast<int>(inst.services.size());
                if (k >= 2 && !inst.services.front().fixed) {
                    quota_offset_[i] = n_;
                    n_ += k - 1;
                }
            }
        }
        sigma_offset_ = elastic_ ? n_ : -1;
        if (elastic_) n_ += m;

        objective_ = VectorXd::Zero(n_);
        for (int i = 0; i < m; ++i) {
            if (elastic_) {
                objective_[sigma_offset_ + i] = 1.0;
            } else {
                objective_[i] = problem.instances[i].prop_cost;
            }
        }
        build_overtake_exprs();
        build_constraints();
    }

    int size() const { return n_; }

    LinExpr overtake_expr(int i, int j) const { return overtake_[i][j]; }

    double objective_value(const VectorXd& x) const { return objective_.dot(x); }

    // Largest constraint shortfall (positive means infeasible); used for the
    // final verification of reported solutions.
    double max_violation(const VectorXd& x) const {
        double worst = -kInf;
        for (const auto& con : lin_) worst = std::max(worst, -con.expr.eval(x));
        for (const auto& con : delay_) {
            double total = 0.0;
            for (const auto& term : con.terms) {
                const auto& inst = problem_.instances[term.instance];
                const auto& entry = inst.services[term.entry];
                const double ov = overtake_[term.instance][term.entry].eval(x);
                const double w = x[term.instance] - inst.load * (ov + entry.rate);
                if (w <= 0.0) return kInf;
                total += sojourn_derivs(inst.load, x[term.instance], ov, entry.rate).value;
            }
            worst = std::max(worst, total - con.limit);
        }
        return worst;
    }

    bool domain_ok(const VectorXd& x) const {
        for (const auto& con : lin_) {
            if (!(con.expr.eval(x) > 0.0)) return false;
        }
        for (const auto& con : delay_) {
            double total = 0.0;
            for (const auto& term : con.terms) {
                const auto& inst = problem_.instances[term.instance];
                const auto& entry = inst.services[term.entry];
                const double ov = overtake_[term.instance][term.entry].eval(x);
                const double w = x[term.instance] - inst.load * (ov + entry.rate);
                if (!(w > 0.0)) return false;
                total += sojourn_derivs(inst.load, x[term.instance], ov, entry.rate).value;
            }
            if (!(total < con.limit)) return false;
        }
        return true;
    }

    double barrier_value(const VectorXd& x, double t) const {
        double phi = t * objective_.dot(x);
        for (const auto& con : lin_) {
            const double g = con.expr.eval(x);
            if (!(g > 0.0)) return kInf;
            phi -= std::log(g);
        }
        for (const auto& con : delay_) {
            double total = 0.0;
            for (const auto& term : con.terms) {
                const auto& inst = problem_.instances[term.instance];
                const auto& entry = inst.services[term.entry];
                const double ov = overtake_[term.instance][term.entry].eval(x);
                const double w = x[term.instance] - inst.load * (ov + entry.rate);
                if (!(w > 0.0)) return kInf;
                total += sojourn_derivs(inst.load, x[term.instance], ov, entry.rate).value;
            }
            const double g = con.limit - total;
            if (!(g > 0.0)) return kInf;
            phi -= std::log(g);
        }
        return phi;
    }

    void derivatives(const VectorXd& x, double t, VectorXd& grad, MatrixXd& hess) const {
        grad = t * objective_;
        hess = MatrixXd::Zero(n_, n_);
        for (const auto& con : lin_) {
            const double g = con.expr.eval(x);
            const double inv = 1.0 / g;
            for (const auto& [a, ca] : con.expr.terms) {
                grad[a] -= ca * inv;
                for (const auto& [b, cb] : con.expr.terms) {
                    hess(a, b) += ca * cb * inv * inv;
                }
            }
        }
        std::vector<std::pair<int, double>> dg; // sparse gradient of sum-of-sojourns
        for (const auto& con : delay_) {
            double total = 0.0;
            dg.clear();
            std::vector<SojournDerivs> derivs(con.terms.size());
            for (std::size_t k = 0; k < con.terms.size(); ++k) {
                const auto& term = con.terms[k];
                const auto& inst = problem_.instances[term.instance];
                const auto& entry = inst.services[term.entry];
                const auto& expr = overtake_[term.instance][term.entry];
                const double ov = expr.eval(x);
                derivs[k] = sojourn_derivs(inst.load, x[term.instance], ov, entry.rate);
                total += derivs[k].value;
                dg.emplace_back(term.instance, derivs[k].d_mu);
                for (const auto& [idx, coef] : expr.terms) {
                    dg.emplace_back(idx, derivs[k].d_ov * coef);
                }
            }
            const double g = con.limit - total;
            const double inv = 1.0 / g;
            // -log(limit - total): gradient inv * d(total), hessian
            // inv^2 * d(total) d(total)^T + inv * d2(total)
            for (const auto& [a, va] : dg) grad[a] += inv * va;
            for (const auto& [a, va] : dg) {
                for (const auto& [b, vb] : dg) hess(a, b) += inv * inv * va * vb;
            }
            for (std::size_t k = 0; k < con.terms.size(); ++k) {
                const auto& term = con.terms[k];
                const auto& expr = overtake_[term.instance][term.entry];
                const int mu = term.instance;
                hess(mu, mu) += inv * derivs[k].d_mu_mu;
                for (const auto& [a, ca] : expr.terms) {
                    hess(mu, a) += inv * derivs[k].d_mu_ov * ca;
                    hess(a, mu) += inv * derivs[k].d_mu_ov * ca;
                    for (const auto& [b, cb] : expr.terms) {
                        hess(a, b) += inv * derivs[k].d_ov_ov * ca * cb;
                    }
                }
            }
        }
    }

    int constraint_count() const { return static_cast<int>(lin_.size() + delay_.size()); }

    // Strictly feasible start. Quota variables come from `hint` (values per
    // (instance, entry)), blended toward the equal split to stay interior.
    std::optional<VectorXd> interior_start(
        const std::map<std::pair<int, int>, double>* hint) const {
        VectorXd x = VectorXd::Zero(n_);
        const int m = static_cast<int>(problem_.instances.size());
        for (int i = 0; i < m; ++i) {
            const auto& inst = problem_.instances[i];
            if (quota_offset_[i] < 0) continue;
            const int k = static_cast<int>(inst.services.size());
            const double mass = inst.quota_mass();
            const double equal = mass / k;
            for (int j = 0; j < k - 1; ++j) {
                double v = equal;
                if (hint != nullptr) {
                    auto it = hint->find({i, j});
                    if (it != hint->end()) v = 0.98 * it->second + 0.02 * equal;
                }
                x[quota_offset_[i] + j] = std::min(std::max(v, 1e-12), mass * (1.0 - 1e-12));
            }
            // keep the implied last quota strictly positive
            double rest = mass;
            for (int j = 0; j < k - 1; ++j) rest -= x[quota_offset_[i] + j];
            if (rest <= mass * 1e-12) {
                const double scale = (mass * (1.0 - 1e-6)) / (mass - rest);
                for (int j = 0; j < k - 1; ++j) x[quota_offset_[i] + j] *= scale;
            }
        }
        // capability: elastic mode picks mu large enough for every delay
        // share, cost mode starts at the ceiling.
        std::map<ServiceId, int> spread;
        for (const auto& con : delay_) spread[con.service] = static_cast<int>(con.terms.size());
        for (int i = 0; i < m; ++i) {
            const auto& inst = problem_.instances[i];
            double lower = inst.load * inst.rate_sum();
            for (int j = 0; j < static_cast<int>(inst.services.size()); ++j) {
                const double ov = overtake_[i][j].eval(x);
                lower = std::max(lower, inst.load * (ov + inst.services[j].rate));
            }
            if (elastic_) {
                double need = lower * (1.0 + 1e-6) + 1e-12;
                for (int j = 0; j < static_cast<int>(inst.services.size()); ++j) {
                    const auto& entry = inst.services[j];
                    auto dit = problem_.max_delay.find(entry.service);
                    const double share =
                        0.5 * dit->second / std::max(1, spread[entry.service]);
                    need = std::max(need, stable_capability(inst.load, overtake_[i][j].eval(x),
                                                            entry.rate, share));
                }
                x[i] = need;
                x[sigma_offset_ + i] =
                    std::max(0.0, need - inst.max_capability) + 0.01 * std::max(1.0, inst.max_capability);
            } else {
                const double cap = inst.max_capability * (1.0 - 1e-9);
                if (cap <= lower) return std::nullopt;
                x[i] = cap;
            }
        }
        if (!domain_ok(x)) return std::nullopt;
        return x;
    }

    const std::vector<int>& quota_offsets() const { return quota_offset_; }
    int sigma_offset() const { return sigma_offset_; }
    bool elastic() const { return elastic_; }

private:
    // smallest capability giving sojourn <= target for fixed rates
    static double stable_capability(double l, double ov, double rate, double target) {
        const double a = l * ov;
        const double b = l * (ov + rate);
        const double lin = target * (a + b) + l;
        const double disc = lin * lin - 4.0 * target * target * a * b;
        const double root = (lin + std::sqrt(std::max(disc, 0.0))) / (2.0 * target);
        return root * (1.0 + 1e-9) + 1e-15;
    }

    void build_overtake_exprs() {
        const int m = static_cast<int>(problem_.instances.size());
        overtake_.resize(m);
        for (int i = 0; i < m; ++i) {
            const auto& inst = problem_.instances[i];
            const int k = static_cast<int>(inst.services.size());
            overtake_[i].resize(k);
            for (int j = 0; j < k; ++j) {
                LinExpr expr;
                if (quota_offset_[i] < 0 || inst.services[j].fixed) {
                    expr.c0 = inst.services[j].overtake;
                } else if (j < k - 1) {
                    expr.terms.emplace_back(quota_offset_[i] + j, 1.0);
                } else {
                    expr.c0 = inst.quota_mass();
                    for (int jj = 0; jj < k - 1; ++jj) {
                        expr.terms.emplace_back(quota_offset_[i] + jj, -1.0);
                    }
                }
                overtake_[i][j] = std::move(expr);
            }
        }
    }

    void build_constraints() {
        const int m = static_cast<int>(problem_.instances.size());
        for (int i = 0; i < m; ++i) {
            const auto& inst = problem_.instances[i];
            // capability ceiling (with slack when elastic)
            LinCon cap;
            cap.expr.c0 = inst.max_capability;
            cap.expr.terms.emplace_back(i, -1.0);
            if (elastic_) cap.expr.terms.emplace_back(sigma_offset_ + i, 1.0);
            lin_.push_back(std::move(cap));
            // whole-instance stability: mu above the total offered load
            LinCon tot;
            tot.expr.c0 = -inst.load * inst.rate_sum();
            tot.expr.terms.emplace_back(i, 1.0);
            lin_.push_back(std::move(tot));
            // per-service stability margin
            for (int j = 0; j < static_cast<int>(inst.services.size()); ++j) {
                const auto& expr = overtake_[i][j];
                LinCon stab;
                stab.expr.c0 = -inst.load * (expr.c0 + inst.services[j].rate);
                stab.expr.terms.emplace_back(i, 1.0);
                for (const auto& [idx, coef] : expr.terms) {
                    stab.expr.terms.emplace_back(idx, -inst.load * coef);
                }
                lin_.push_back(std::move(stab));
            }
            // quota simplex
            if (quota_offset_[i] >= 0) {
                const int k = static_cast<int>(inst.services.size());
                for (int j = 0; j < k - 1; ++j) {
                    LinCon pos;
                    pos.expr.terms.emplace_back(quota_offset_[i] + j, 1.0);
                    lin_.push_back(std::move(pos));
                }
                LinCon rest;
                rest.expr.c0 = inst.quota_mass();
                for (int j = 0; j < k - 1; ++j) {
                    rest.expr.terms.emplace_back(quota_offset_[i] + j, -1.0);
                }
                lin_.push_back(std::move(rest));
            }
            if (elastic_) {
                LinCon spos;
                spos.expr.terms.emplace_back(sigma_offset_ + i, 1.0);
                lin_.push_back(std::move(spos));
            }
        }
        // one delay constraint per service
        std::map<ServiceId, DelayCon> cons;
        for (int i = 0; i < m; ++i) {
            const auto& inst = problem_.instances[i];
            for (int j = 0; j < static_cast<int>(inst.services.size()); ++j) {
                const ServiceId& s = inst.services[j].service;
                auto& con = cons[s];
                con.service = s;
                con.limit = problem_.max_delay.at(s);
                con.terms.push_back({i, j});
            }
        }
        for (auto& [s, con] : cons) delay_.push_back(std::move(con));
    }

    const ScalingProblem& problem_;
    bool elastic_;
    int n_ = 0;
    std::vector<int> quota_offset_;
    int sigma_offset_ = -1;
    VectorXd objective_;
    std::vector<std::vector<LinExpr>> overtake_;
    std::vector<LinCon> lin_;
    std::vector<DelayCon> delay_;
};

// Damped Newton descent on the barrier objective for one value of t.
bool newton_minimize(const BarrierProgram& prog, VectorXd& x, double t) {
    VectorXd grad;
    MatrixXd hess;
    for (int iter = 0; iter < 80; ++iter) {
        prog.derivatives(x, t, grad, hess);
        VectorXd step;
        double damping = 0.0;
        for (int attempt = 0; attempt < 24; ++attempt) {
            MatrixXd h = hess;
            if (damping > 0.0) h.diagonal().array() += damping;
            Eigen::LDLT<MatrixXd> ldlt(h);
            if (ldlt.info() == Eigen::Success) {
                step = ldlt.solve(-grad);
                if (step.allFinite() && grad.dot(step) < 0.0) break;
            }
            damping = damping == 0.0 ? 1e-10 : damping * 100.0;
            step.resize(0);
        }
        if (step.size() == 0) return false;
        const double decrement = -grad.dot(step);
        if (decrement * 0.5 < 1e-11) return true;
        const double phi0 = prog.barrier_value(x, t);
        double alpha = 1.0;
        bool moved = false;
        while (alpha > 1e-14) {
            VectorXd trial = x + alpha * step;
            if (prog.domain_ok(trial) &&
                prog.barrier_value(trial, t) <= phi0 - 0.25 * alpha * decrement) {
                x = trial;
                moved = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!moved) return true; // stalled at the boundary of progress
    }
    return true;
}

bool barrier_minimize(const BarrierProgram& prog, VectorXd& x) {
    const double m = std::max(1, prog.constraint_count());
    double t = 1.0;
    while (true) {
        if (!newton_minimize(prog, x, t)) return false;
        if (m / t < 1e-10) return true;
        t *= 15.0;
        if (t > 1e14) return true;
    }
}

struct ElasticOutcome {
    std::vector<std::pair<VmId, double>> violated;
    VectorXd point;
    double total_slack = 0.0;
};

ElasticOutcome solve_elastic(const ScalingProblem& problem) {
    BarrierProgram prog(problem, true);
    auto start = prog.interior_start(nullptr);
    if (!start) throw NumericalError("elastic relaxation: no interior start");
    VectorXd x = *start;
    if (!barrier_minimize(prog, x)) {
        throw NumericalError("elastic relaxation: barrier failed to converge");
    }
    ElasticOutcome out;
    out.point = x;
    for (std::size_t i = 0; i < problem.instances.size(); ++i) {
        const double slack = x[prog.sigma_offset() + static_cast<int>(i)];
        out.total_slack += slack;
        if (slack > kSlackThreshold) out.violated.emplace_back(problem.instances[i].vm, slack);
    }
    return out;
}

void fill_solution_from_point(const ScalingProblem& problem, const BarrierProgram& prog,
                              const VectorXd& x, ScalingSolution& sol) {
    sol.capability.clear();
    sol.quota.clear();
    for (std::size_t i = 0; i < problem.instances.size(); ++i) {
        const auto& inst = problem.instances[i];
        sol.capability[inst.vm] = x[static_cast<int>(i)];
        for (std::size_t j = 0; j < inst.services.size(); ++j) {
            sol.quota[{inst.vm, inst.services[j].service}] =
                prog.overtake_expr(static_cast<int>(i), static_cast<int>(j)).eval(x);
        }
    }
}

std::map<std::pair<int, int>, double> quota_hint_from_point(const ScalingProblem& problem,
                                                            const BarrierProgram& from,
                                                            const VectorXd& x) {
    std::map<std::pair<int, int>, double> hint;
    for (std::size_t i = 0; i < problem.instances.size(); ++i) {
        const auto& inst = problem.instances[i];
        for (std::size_t j = 0; j + 1 < inst.services.size(); ++j) {
            hint[{static_cast<int>(i), static_cast<int>(j)}] =
                from.overtake_expr(static_cast<int>(i), static_cast<int>(j)).eval(x);
        }
    }
    return hint;
}

} // namespace

ScalingSolution solve(const ScalingProblem& problem) {
    ScalingSolution sol;
    if (problem.instances.empty()) {
        sol.status = SolveStatus::feasible;
        sol.objective = problem.fixed_cost_total;
        return sol;
    }
    BarrierProgram cost_prog(problem, false);

    std::vector<VectorXd> starts;
    if (auto direct = cost_prog.interior_start(nullptr)) starts.push_back(*direct);

    std::optional<ElasticOutcome> elastic;
    if (starts.empty() || problem.quota_mode) {
        elastic = solve_elastic(problem);
        if (!elastic->violated.empty()) {
            sol.status = SolveStatus::infeasible;
            sol.objective = kInf;
            sol.violated_capacity = elastic->violated;
            BarrierProgram eprog(problem, true);
            fill_solution_from_point(problem, eprog, elastic->point, sol);
            return sol;
        }
        BarrierProgram eprog(problem, true);
        const auto hint = quota_hint_from_point(problem, eprog, elastic->point);
        if (auto from_elastic = cost_prog.interior_start(&hint)) starts.push_back(*from_elastic);
    }

    double best = kInf;
    VectorXd best_x;
    for (auto& x : starts) {
        if (!barrier_minimize(cost_prog, x)) continue;
        if (cost_prog.max_violation(x) > kVerifyTol) continue;
        const double obj = cost_prog.objective_value(x);
        if (obj < best) {
            best = obj;
            best_x = x;
        }
    }
    if (best < kInf) {
        sol.status = SolveStatus::feasible;
        sol.objective = problem.fixed_cost_total + best;
        fill_solution_from_point(problem, cost_prog, best_x, sol);
        return sol;
    }

    // Elastic said feasible but no strict interior was reachable: accept the
    // elastic point with capabilities clipped to the ceilings, if it checks
    // out to tolerance.
    if (elastic) {
        BarrierProgram eprog(problem, true);
        VectorXd x = elastic->point.head(cost_prog.size());
        for (std::size_t i = 0; i < problem.instances.size(); ++i) {
            x[static_cast<int>(i)] =
                std::min(x[static_cast<int>(i)], problem.instances[i].max_capability);
        }
        if (cost_prog.max_violation(x) <= kVerifyTol) {
            sol.status = SolveStatus::feasible;
            sol.objective = problem.fixed_cost_total + cost_prog.objective_value(x);
            fill_solution_from_point(problem, cost_prog, x, sol);
            return sol;
        }
    }
    throw NumericalError("capability program: no convergent solve");
}

std::vector<std::pair<VmId, double>> find_violated_capacity(const ScalingProblem& problem) {
    const auto outcome = solve_elastic(problem);
    if (outcome.violated.empty()) {
        throw std::logic_error("find_violated_capacity: problem is feasible");
    }
    return outcome.violated;
}

std::map<VmId, std::map<ServiceId, double>> map_priorities(const ScalingProblem& problem,
                                                           const ScalingSolution& solution,
                                                           const PriorityModel& model) {
    if (solution.status != SolveStatus::feasible) {
        throw std::invalid_argument("map_priorities: solution is not feasible");
    }
    std::map<VmId, std::map<ServiceId, double>> params;
    for (const auto& inst : problem.instances) {
        auto& out = params[inst.vm];
        const int k = static_cast<int>(inst.services.size());
        if (!model.per_flow()) {
            // larger quota means more traffic ahead, hence lower priority
            for (const auto& e : inst.services) {
                out[e.service] = -solution.quota_of(inst.vm, e.service);
            }
            continue;
        }
        if (k == 1) {
            out[inst.services.front().service] = 0.0;
            continue;
        }
        // Least-squares centers for the overtake equations in the linear
        // regime, gauge-fixed to mean zero and clamped to the +-2j box.
        const double j4 = 4.0 * model.jitter;
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(k, k);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
        for (int s = 0; s < k; ++s) {
            double other = 0.0;
            for (int t = 0; t < k; ++t) {
                if (t == s) continue;
                a(s, t) = inst.services[t].rate / j4;
                a(s, s) -= inst.services[t].rate / j4;
                other += inst.services[t].rate;
            }
            b[s] = solution.quota_of(inst.vm, inst.services[s].service) - 0.5 * other;
        }
        Eigen::VectorXd r = a.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
        if (!r.allFinite()) r.setZero(); // duplicated services degenerate the system
        r.array() -= r.mean();
        const double box = 2.0 * model.jitter;
        for (int s = 0; s < k; ++s) {
            out[inst.services[s].service] = std::clamp(r[s], -box, box);
        }
    }
    return params;
}

} // namespace flexshare
