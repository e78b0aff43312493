#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rdvswarm/series_io.hpp"

namespace rdvswarm {

enum class Activation { identity, tanh, step };

Activation activation_from_name(const std::string& name);
std::string activation_name(Activation act);

/// Lag-based feed-forward forecaster. Layer widths run
/// lags -> hidden_sizes... -> 1. params is the flat layout the optimizer
/// searches: for each layer, fan_out * fan_in weights grouped by destination
/// neuron, then one threshold per destination neuron. Thresholds are
/// subtracted from the weighted input sum before activation.
struct NarNetwork {
    int lags = 12;
    std::vector<int> hidden_sizes{10};
    Activation hidden_activation = Activation::tanh;
    Activation output_activation = Activation::identity;
    std::vector<double> params;
};

/// Total parameter count: sum over layers of fan_in*fan_out + fan_out.
std::size_t param_count(int lags, std::span<const int> hidden_sizes);

/// Validated network with zero-initialized parameters.
NarNetwork make_network(int lags, std::vector<int> hidden_sizes,
                        Activation hidden_activation, Activation output_activation);

/// Single pass over one lag window (oldest value first), in the scaled
/// domain the parameters were trained in.
double forward(const NarNetwork& net, std::span<const double> lag_window);

/// Copy of net carrying a new flat parameter vector.
NarNetwork with_params(const NarNetwork& net, std::vector<double> params);

/// Next raw-unit value after `history` (raw units): the last `lags` values
/// are scaled, passed through the network, and the output is mapped back.
double predict_one_step(const NarNetwork& net, const Scaler& scaler,
                        std::span<const double> history);

/// Iterated one-step prediction: each output is appended to the working
/// history and fed back. Returns `horizon` raw-unit values.
std::vector<double> forecast_recursive(const NarNetwork& net, const Scaler& scaler,
                                       std::span<const double> history, int horizon);

void save_model(const NarNetwork& net, const Scaler& scaler,
                const std::filesystem::path& path);

struct SavedModel {
    NarNetwork net;
    Scaler scaler;
};

SavedModel load_model(const std::filesystem::path& path);

}  // namespace rdvswarm
