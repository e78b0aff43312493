#pragma once

#include <string>

#include "rdvswarm/rng.hpp"

namespace rdvswarm {

/// Decay gate exp(-sharpness * iteration / max_iterations): starts at 1 and
/// falls toward exp(-sharpness), so damping events become more likely as the
/// run progresses. RNG-free.
double delta_at(int iteration, int max_iterations, double sharpness = 1.0);

/// Mutable state of the random-descending-velocity schedule.
struct RdvState {
    double alpha = 0.4;
    double alpha_dump = 0.9;
    int max_iterations = 100;
    double decay_sharpness = 1.0;
};

struct RdvStep {
    double weight;
    RdvState state;
};

/// One schedule query: when the gate has decayed below the random draw,
/// alpha is damped by alpha_dump first; the (possibly damped) alpha is the
/// inertia weight. Pure in (state, iteration, rand_draw).
RdvStep rdv_weight(const RdvState& state, int iteration, double rand_draw);

enum class IwKind { constant, linear_decreasing, random_uniform, rdv };

IwKind iw_kind_from_name(const std::string& name);
std::string iw_name(IwKind kind);

/// Full strategy selection. Only the fields of the chosen kind matter.
struct IwConfig {
    IwKind kind = IwKind::rdv;
    double constant_weight = 1.0;   // constant
    double w_max = 0.9;             // linear_decreasing
    double w_min = 0.4;
    double alpha = 0.4;             // rdv
    double alpha_dump = 0.9;
    double decay_sharpness = 1.0;
    bool damp_per_iteration = false;  // default: damp on every particle query
};

void validate(const IwConfig& cfg);

/// Weight for the non-RDV variants; pure in (iteration, rand_draw).
/// rand_draw is only read by random_uniform.
double baseline_weight(const IwConfig& cfg, int iteration, int max_iterations,
                       double rand_draw);

/// Per-run schedule owned by a single optimizer run. constant and
/// linear_decreasing never touch the random stream; random_uniform and rdv
/// consume exactly one draw per damping opportunity.
class InertiaSchedule {
public:
    InertiaSchedule(const IwConfig& cfg, int max_iterations);

    /// Weight for one particle update at `iteration`. In rdv per-iteration
    /// mode only the first query of an iteration draws; later queries reuse
    /// the cached weight.
    double next(int iteration, RunRng& rng);

    double current_alpha() const { return rdv_.alpha; }
    const IwConfig& config() const { return cfg_; }

private:
    IwConfig cfg_;
    int max_iterations_;
    RdvState rdv_;
    int cached_iteration_ = -1;
    double cached_weight_ = 0.0;
};

}  // namespace rdvswarm
