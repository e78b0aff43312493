#include "rdvswarm/pso_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "rdvswarm/errors.hpp"
#include "rdvswarm/format.hpp"
#include "rdvswarm/metrics.hpp"

namespace rdvswarm {

void validate(const PsoConfig& config) {
    if (config.swarm_size < 1) {
        throw std::invalid_argument("swarm size must be at least 1");
    }
    if (config.max_iterations < 1) {
        throw std::invalid_argument("iteration count must be at least 1");
    }
    if (!(config.c1 >= 0.0) || !(config.c2 >= 0.0)) {
        throw std::invalid_argument("acceleration coefficients must be non-negative");
    }
    if (!(config.position_limit > 0.0)) {
        throw std::invalid_argument("position limit must be positive");
    }
    if (!(config.init_position_low < config.init_position_high)) {
        throw std::invalid_argument("initial position range is empty");
    }
    if (!(config.init_velocity_low < config.init_velocity_high)) {
        throw std::invalid_argument("initial velocity range is empty");
    }
}

double update_velocity(double velocity, double position, double pbest, double gbest,
                       double w, double c1, double c2, double r1, double r2) {
    return w * velocity + c1 * r1 * (pbest - position) + c2 * r2 * (gbest - position);
}

double update_position(double position, double velocity, double limit) {
    return std::clamp(position + velocity, -limit, limit);
}

namespace {

double evaluate(const Objective& objective, std::span<const double> position,
                int particle, int iteration) {
    const double f = objective.fn(position);
    if (std::isfinite(f)) {
        return f;
    }
    if (objective.total) {
        const std::string where =
            iteration < 0 ? "initialization" : "iteration " + std::to_string(iteration);
        throw NonFiniteObjectiveError("objective returned a non-finite value for particle " +
                                      std::to_string(particle) + " at " + where);
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace

RunResult run_pso(const PsoConfig& config, int dim, const Objective& objective,
                  const IwConfig& iw, const IterationObserver& observer) {
    validate(config);
    validate(iw);
    if (dim < 1) {
        throw std::invalid_argument("dimension must be at least 1");
    }
    if (!objective.fn) {
        throw std::invalid_argument("objective has no function");
    }

    const auto t0 = std::chrono::steady_clock::now();
    RunRng rng(config.seed);
    InertiaSchedule schedule(iw, config.max_iterations);
    const auto n = static_cast<std::size_t>(config.swarm_size);
    const auto d = static_cast<std::size_t>(dim);

    std::vector<Particle> swarm(n);
    for (auto& p : swarm) {
        p.position.resize(d);
        p.velocity.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            p.position[j] = rng.uniform(config.init_position_low, config.init_position_high);
        }
        for (std::size_t j = 0; j < d; ++j) {
            p.velocity[j] = rng.uniform(config.init_velocity_low, config.init_velocity_high);
        }
    }

    RunResult out;
    for (std::size_t i = 0; i < n; ++i) {
        auto& p = swarm[i];
        p.pbest_position = p.position;
        p.pbest_fitness = evaluate(objective, p.position, static_cast<int>(i), -1);
        if (i == 0 || p.pbest_fitness < out.gbest_fitness) {
            out.gbest_position = p.pbest_position;
            out.gbest_fitness = p.pbest_fitness;
        }
    }

    out.trace.reserve(static_cast<std::size_t>(config.max_iterations));
    for (int t = 0; t < config.max_iterations; ++t) {
        double last_weight = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            auto& p = swarm[i];
            const double w = schedule.next(t, rng);
            last_weight = w;
            for (std::size_t j = 0; j < d; ++j) {
                const double r1 = rng.uniform01();
                const double r2 = rng.uniform01();
                p.velocity[j] =
                    update_velocity(p.velocity[j], p.position[j], p.pbest_position[j],
                                    out.gbest_position[j], w, config.c1, config.c2, r1, r2);
                p.position[j] =
                    update_position(p.position[j], p.velocity[j], config.position_limit);
            }
            const double f = evaluate(objective, p.position, static_cast<int>(i), t);
            if (f < p.pbest_fitness) {
                p.pbest_fitness = f;
                p.pbest_position = p.position;
            }
            if (f < out.gbest_fitness) {
                out.gbest_fitness = f;
                out.gbest_position = p.position;
            }
        }

        double abs_velocity = 0.0;
        for (const auto& p : swarm) {
            for (double v : p.velocity) {
                abs_velocity += std::fabs(v);
            }
        }
        abs_velocity /= static_cast<double>(n * d);
        out.trace.push_back({out.gbest_fitness, abs_velocity, last_weight});
        if (observer) {
            observer(t, swarm, out.gbest_fitness);
        }
    }

    out.iterations_run = config.max_iterations;
    out.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

Objective forecast_fitness(const NarNetwork& net_template, const Scaler& scaler,
                           const LagDataset& data) {
    if (data.size() == 0) {
        throw std::invalid_argument("lag dataset is empty");
    }
    if (data.lags != net_template.lags) {
        throw std::invalid_argument("dataset lag count " + std::to_string(data.lags) +
                                    " does not match network lag count " +
                                    std::to_string(net_template.lags));
    }
    // Scale once up front; candidate evaluation then runs entirely in the
    // scaled domain.
    auto inputs = data.inputs;
    auto targets = data.targets;
    for (auto& row : inputs) {
        for (double& x : row) {
            x = transform(scaler, x);
        }
    }
    for (double& y : targets) {
        y = transform(scaler, y);
    }

    Objective objective;
    objective.total = false;
    objective.fn = [net_template, inputs = std::move(inputs),
                    targets = std::move(targets)](std::span<const double> params) {
        const NarNetwork net =
            with_params(net_template, std::vector<double>(params.begin(), params.end()));
        double acc = 0.0;
        for (std::size_t k = 0; k < targets.size(); ++k) {
            const double pred = forward(net, inputs[k]);
            if (!std::isfinite(pred)) {
                return std::numeric_limits<double>::infinity();
            }
            const double r = targets[k] - pred;
            acc += r * r;
        }
        return std::isfinite(acc) ? std::sqrt(acc)
                                  : std::numeric_limits<double>::infinity();
    };
    return objective;
}

double forecast_position_error(const NarNetwork& net, const Scaler& scaler,
                               const LagDataset& data, bool raw_units) {
    if (data.size() == 0) {
        throw std::invalid_argument("lag dataset is empty");
    }
    std::vector<double> window(static_cast<std::size_t>(data.lags));
    double acc = 0.0;
    for (std::size_t k = 0; k < data.size(); ++k) {
        for (std::size_t j = 0; j < window.size(); ++j) {
            window[j] = transform(scaler, data.inputs[k][j]);
        }
        const double pred = forward(net, window);
        const double r = raw_units ? data.targets[k] - invert(scaler, pred)
                                   : transform(scaler, data.targets[k]) - pred;
        acc += r * r;
    }
    return std::sqrt(acc);
}

double forecast_position_error_literal(const NarNetwork& net, const Scaler& scaler,
                                       const LagDataset& data, bool raw_units) {
    if (data.size() == 0) {
        throw std::invalid_argument("lag dataset is empty");
    }
    std::vector<double> targets;
    std::vector<double> predictions;
    targets.reserve(data.size());
    predictions.reserve(data.size());
    std::vector<double> window(static_cast<std::size_t>(data.lags));
    for (std::size_t k = 0; k < data.size(); ++k) {
        for (std::size_t j = 0; j < window.size(); ++j) {
            window[j] = transform(scaler, data.inputs[k][j]);
        }
        const double pred = forward(net, window);
        if (raw_units) {
            targets.push_back(data.targets[k]);
            predictions.push_back(invert(scaler, pred));
        } else {
            targets.push_back(transform(scaler, data.targets[k]));
            predictions.push_back(pred);
        }
    }
    return position_error_literal(targets, predictions);
}

std::string trace_csv(const ConvergenceTrace& trace) {
    std::string out = "iteration,best_fitness,mean_abs_velocity,inertia_weight\n";
    for (std::size_t t = 0; t < trace.size(); ++t) {
        out += std::to_string(t);
        out += ',';
        out += format_double(trace[t].best_fitness);
        out += ',';
        out += format_double(trace[t].mean_abs_velocity);
        out += ',';
        out += format_double(trace[t].inertia_weight);
        out += '\n';
    }
    return out;
}

}  // namespace rdvswarm
