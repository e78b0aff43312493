#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "rdvswarm/inertia.hpp"
#include "rdvswarm/nar_net.hpp"
#include "rdvswarm/series_io.hpp"

namespace rdvswarm {

struct PsoConfig {
    int swarm_size = 30;
    int max_iterations = 100;
    double c1 = 2.0;
    double c2 = 2.0;
    double position_limit = 10.0;  // symmetric clamp at +/- limit
    double init_position_low = -1.0;
    double init_position_high = 1.0;
    double init_velocity_low = -0.1;
    double init_velocity_high = 0.1;
    std::uint64_t seed = 1;
};

void validate(const PsoConfig& config);

struct Particle {
    std::vector<double> position;
    std::vector<double> velocity;
    std::vector<double> pbest_position;
    double pbest_fitness = std::numeric_limits<double>::infinity();
};

/// One row per iteration of a run.
struct TracePoint {
    double best_fitness;       // best-so-far; non-increasing across rows
    double mean_abs_velocity;  // mean |v| over all particles and dimensions
    double inertia_weight;     // weight served by the iteration's last query
};

using ConvergenceTrace = std::vector<TracePoint>;

struct RunResult {
    std::vector<double> gbest_position;
    double gbest_fitness = std::numeric_limits<double>::infinity();
    ConvergenceTrace trace;
    double elapsed_seconds = 0.0;
    int iterations_run = 0;
};

/// total: finite for every in-bounds position, so a non-finite value aborts
/// the run (NonFiniteObjectiveError naming particle and iteration). With
/// total=false a non-finite value is scored as worst-possible instead.
struct Objective {
    std::function<double(std::span<const double>)> fn;
    bool total = true;
};

/// Velocity recurrence for one coordinate.
double update_velocity(double velocity, double position, double pbest, double gbest,
                       double w, double c1, double c2, double r1, double r2);

/// Position step with the symmetric clamp at +/- limit.
double update_position(double position, double velocity, double limit);

/// Called after each completed iteration with the live swarm.
using IterationObserver =
    std::function<void(int iteration, std::span<const Particle> swarm, double gbest_fitness)>;

/// Full optimizer run. Draw order per particle and iteration: one optional
/// strategy draw (rdv / random only), then r1, r2 per dimension. Personal
/// and global bests update inside the particle loop, so later particles see
/// earlier improvements within the same iteration.
RunResult run_pso(const PsoConfig& config, int dim, const Objective& objective,
                  const IwConfig& iw, const IterationObserver& observer = {});

/// Training objective for a forecaster: install the candidate parameters,
/// one-step-predict every dataset row, and return the Euclidean norm of the
/// scaled-domain residuals. Rows hold raw values; scaling happens here.
Objective forecast_fitness(const NarNetwork& net_template, const Scaler& scaler,
                           const LagDataset& data);

/// Residual norm of a fitted network over a dataset, in raw or scaled units.
double forecast_position_error(const NarNetwork& net, const Scaler& scaler,
                               const LagDataset& data, bool raw_units);

/// Audit variant of the residual norm using the unsquared distance reading:
/// sqrt of the sum of signed residuals. DegenerateError on a negative
/// radicand. Never used as a training objective.
double forecast_position_error_literal(const NarNetwork& net, const Scaler& scaler,
                                       const LagDataset& data, bool raw_units);

/// CSV rendering: header iteration,best_fitness,mean_abs_velocity,inertia_weight.
std::string trace_csv(const ConvergenceTrace& trace);

}  // namespace rdvswarm
