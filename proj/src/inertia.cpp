#include "rdvswarm/inertia.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rdvswarm {

double delta_at(int iteration, int max_iterations, double sharpness) {
    if (max_iterations < 1) {
        throw std::invalid_argument("max_iterations must be at least 1");
    }
    if (iteration < 0 || iteration > max_iterations) {
        throw std::invalid_argument("iteration out of range for decay gate");
    }
    if (!(sharpness > 0.0)) {
        throw std::invalid_argument("decay sharpness must be positive");
    }
    return std::exp(-sharpness * static_cast<double>(iteration) /
                    static_cast<double>(max_iterations));
}

RdvStep rdv_weight(const RdvState& state, int iteration, double rand_draw) {
    RdvState next = state;
    if (delta_at(iteration, state.max_iterations, state.decay_sharpness) < rand_draw) {
        // Geometric damping can underflow on very long runs; pin alpha at
        // the smallest normal so it stays strictly positive.
        next.alpha = std::max(next.alpha * next.alpha_dump,
                              std::numeric_limits<double>::min());
    }
    return {next.alpha, next};
}

IwKind iw_kind_from_name(const std::string& name) {
    if (name == "constant") {
        return IwKind::constant;
    }
    if (name == "linear") {
        return IwKind::linear_decreasing;
    }
    if (name == "random") {
        return IwKind::random_uniform;
    }
    if (name == "rdv") {
        return IwKind::rdv;
    }
    throw std::invalid_argument("unknown inertia strategy '" + name + "'");
}

std::string iw_name(IwKind kind) {
    switch (kind) {
        case IwKind::constant:
            return "constant";
        case IwKind::linear_decreasing:
            return "linear";
        case IwKind::random_uniform:
            return "random";
        case IwKind::rdv:
            return "rdv";
    }
    throw std::invalid_argument("unknown inertia strategy");
}

void validate(const IwConfig& cfg) {
    switch (cfg.kind) {
        case IwKind::constant:
            if (!(cfg.constant_weight > 0.0)) {
                throw std::invalid_argument("constant inertia weight must be positive");
            }
            return;
        case IwKind::linear_decreasing:
            if (cfg.w_min > cfg.w_max) {
                throw std::invalid_argument("linear schedule needs w_min <= w_max");
            }
            if (!(cfg.w_min > 0.0)) {
                throw std::invalid_argument("linear schedule needs w_min > 0");
            }
            return;
        case IwKind::random_uniform:
            return;
        case IwKind::rdv:
            if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0) {
                throw std::invalid_argument("alpha must lie in (0, 1]");
            }
            if (!(cfg.alpha_dump > 0.0) || cfg.alpha_dump > 1.0) {
                throw std::invalid_argument("alpha_dump must lie in (0, 1]");
            }
            if (!(cfg.decay_sharpness > 0.0)) {
                throw std::invalid_argument("decay sharpness must be positive");
            }
            return;
    }
    throw std::invalid_argument("unknown inertia strategy");
}

double baseline_weight(const IwConfig& cfg, int iteration, int max_iterations,
                       double rand_draw) {
    switch (cfg.kind) {
        case IwKind::constant:
            return cfg.constant_weight;
        case IwKind::linear_decreasing: {
            if (cfg.w_min > cfg.w_max) {
                throw std::invalid_argument("linear schedule needs w_min <= w_max");
            }
            if (max_iterations < 1) {
                throw std::invalid_argument("max_iterations must be at least 1");
            }
            const double frac =
                static_cast<double>(iteration) / static_cast<double>(max_iterations);
            return cfg.w_max - (cfg.w_max - cfg.w_min) * frac;
        }
        case IwKind::random_uniform:
            return rand_draw;
        case IwKind::rdv:
            throw std::invalid_argument("rdv is not a baseline strategy");
    }
    throw std::invalid_argument("unknown inertia strategy");
}

InertiaSchedule::InertiaSchedule(const IwConfig& cfg, int max_iterations)
    : cfg_(cfg), max_iterations_(max_iterations) {
    validate(cfg_);
    if (max_iterations_ < 1) {
        throw std::invalid_argument("max_iterations must be at least 1");
    }
    rdv_ = RdvState{cfg_.alpha, cfg_.alpha_dump, max_iterations_, cfg_.decay_sharpness};
}

double InertiaSchedule::next(int iteration, RunRng& rng) {
    switch (cfg_.kind) {
        case IwKind::constant:
        case IwKind::linear_decreasing:
            return baseline_weight(cfg_, iteration, max_iterations_, 0.0);
        case IwKind::random_uniform:
            return baseline_weight(cfg_, iteration, max_iterations_, rng.uniform01());
        case IwKind::rdv: {
            if (cfg_.damp_per_iteration && iteration == cached_iteration_) {
                return cached_weight_;
            }
            const RdvStep step = rdv_weight(rdv_, iteration, rng.uniform01());
            rdv_ = step.state;
            cached_iteration_ = iteration;
            cached_weight_ = step.weight;
            return step.weight;
        }
    }
    throw std::invalid_argument("unknown inertia strategy");
}

}  // namespace rdvswarm
