#include "rdvswarm/nar_net.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "rdvswarm/errors.hpp"

namespace rdvswarm {

namespace {

double activate(Activation act, double x) {
    switch (act) {
        case Activation::identity:
            return x;
        case Activation::tanh:
            return std::tanh(x);
        case Activation::step:
            return x > 0.0 ? 1.0 : 0.0;
    }
    throw std::invalid_argument("unknown activation");
}

void validate_shape(int lags, std::span<const int> hidden_sizes) {
    if (lags < 1) {
        throw std::invalid_argument("lag count must be at least 1");
    }
    for (int width : hidden_sizes) {
        if (width < 1) {
            throw std::invalid_argument("hidden layer widths must be at least 1");
        }
    }
}

}  // namespace

Activation activation_from_name(const std::string& name) {
    if (name == "identity") {
        return Activation::identity;
    }
    if (name == "tanh") {
        return Activation::tanh;
    }
    if (name == "step") {
        return Activation::step;
    }
    throw std::invalid_argument("unknown activation '" + name + "'");
}

std::string activation_name(Activation act) {
    switch (act) {
        case Activation::identity:
            return "identity";
        case Activation::tanh:
            return "tanh";
        case Activation::step:
            return "step";
    }
    throw std::invalid_argument("unknown activation");
}

std::size_t param_count(int lags, std::span<const int> hidden_sizes) {
    validate_shape(lags, hidden_sizes);
    std::size_t count = 0;
    std::size_t fan_in = static_cast<std::size_t>(lags);
    for (int width : hidden_sizes) {
        const auto fan_out = static_cast<std::size_t>(width);
        count += fan_in * fan_out + fan_out;
        fan_in = fan_out;
    }
    count += fan_in + 1;  // output neuron
    return count;
}

NarNetwork make_network(int lags, std::vector<int> hidden_sizes,
                        Activation hidden_activation, Activation output_activation) {
    validate_shape(lags, hidden_sizes);
    if (output_activation == Activation::tanh) {
        throw std::invalid_argument(
            "output activation must be identity or step; tanh cannot reach the "
            "full scaled range");
    }
    NarNetwork net;
    net.lags = lags;
    net.hidden_sizes = std::move(hidden_sizes);
    net.hidden_activation = hidden_activation;
    net.output_activation = output_activation;
    net.params.assign(param_count(lags, net.hidden_sizes), 0.0);
    return net;
}

double forward(const NarNetwork& net, std::span<const double> lag_window) {
    if (lag_window.size() != static_cast<std::size_t>(net.lags)) {
        throw std::invalid_argument("lag window has length " +
                                    std::to_string(lag_window.size()) + ", expected " +
                                    std::to_string(net.lags));
    }
    if (net.params.size() != param_count(net.lags, net.hidden_sizes)) {
        throw std::invalid_argument("parameter vector has wrong length");
    }

    std::vector<double> current(lag_window.begin(), lag_window.end());
    std::vector<double> next;
    std::size_t offset = 0;
    const std::size_t n_layers = net.hidden_sizes.size() + 1;
    for (std::size_t layer = 0; layer < n_layers; ++layer) {
        const bool is_output = layer + 1 == n_layers;
        const std::size_t fan_out =
            is_output ? 1 : static_cast<std::size_t>(net.hidden_sizes[layer]);
        const std::size_t fan_in = current.size();
        const Activation act = is_output ? net.output_activation : net.hidden_activation;
        const double* weights = net.params.data() + offset;
        const double* thresholds = weights + fan_in * fan_out;

        next.resize(fan_out);
        for (std::size_t k = 0; k < fan_out; ++k) {
            double s = 0.0;
            const double* wk = weights + k * fan_in;
            for (std::size_t j = 0; j < fan_in; ++j) {
                s += wk[j] * current[j];
            }
            s -= thresholds[k];
            next[k] = activate(act, s);
        }
        current.swap(next);
        offset += fan_in * fan_out + fan_out;
    }
    return current[0];
}

NarNetwork with_params(const NarNetwork& net, std::vector<double> params) {
    if (params.size() != param_count(net.lags, net.hidden_sizes)) {
        throw std::invalid_argument("parameter vector has length " +
                                    std::to_string(params.size()) + ", expected " +
                                    std::to_string(param_count(net.lags, net.hidden_sizes)));
    }
    NarNetwork out = net;
    out.params = std::move(params);
    return out;
}

double predict_one_step(const NarNetwork& net, const Scaler& scaler,
                        std::span<const double> history) {
    const auto m = static_cast<std::size_t>(net.lags);
    if (history.size() < m) {
        throw std::invalid_argument("insufficient history: need at least " +
                                    std::to_string(m) + " values, got " +
                                    std::to_string(history.size()));
    }
    std::vector<double> window(m);
    const std::size_t start = history.size() - m;
    for (std::size_t j = 0; j < m; ++j) {
        window[j] = transform(scaler, history[start + j]);
    }
    return invert(scaler, forward(net, window));
}

std::vector<double> forecast_recursive(const NarNetwork& net, const Scaler& scaler,
                                       std::span<const double> history, int horizon) {
    if (horizon < 0) {
        throw std::invalid_argument("forecast horizon must be non-negative");
    }
    std::vector<double> working(history.begin(), history.end());
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(horizon));
    for (int h = 0; h < horizon; ++h) {
        const double next = predict_one_step(net, scaler, working);
        working.push_back(next);
        out.push_back(next);
    }
    return out;
}

void save_model(const NarNetwork& net, const Scaler& scaler,
                const std::filesystem::path& path) {
    nlohmann::json doc;
    doc["m"] = net.lags;
    doc["hidden_sizes"] = net.hidden_sizes;
    doc["activations"] = {{"hidden", activation_name(net.hidden_activation)},
                          {"output", activation_name(net.output_activation)}};
    doc["params"] = net.params;
    doc["scaler"] = {{"min", scaler.min}, {"max", scaler.max}};

    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write model file '" + path.string() + "'");
    }
    out << doc.dump(2) << '\n';
    if (!out) {
        throw DataError("failed while writing model file '" + path.string() + "'");
    }
}

SavedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open model file '" + path.string() + "'");
    }
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("model file '" + path.string() + "' is not valid JSON: " + e.what());
    }

    try {
        SavedModel model;
        model.net = make_network(
            doc.at("m").get<int>(), doc.at("hidden_sizes").get<std::vector<int>>(),
            activation_from_name(doc.at("activations").at("hidden").get<std::string>()),
            activation_from_name(doc.at("activations").at("output").get<std::string>()));
        model.net = with_params(model.net, doc.at("params").get<std::vector<double>>());
        model.scaler.min = doc.at("scaler").at("min").get<double>();
        model.scaler.max = doc.at("scaler").at("max").get<double>();
        if (!(model.scaler.min < model.scaler.max)) {
            throw DataError("model file '" + path.string() + "' has an invalid scaler");
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw DataError("model file '" + path.string() + "' is malformed: " + e.what());
    } catch (const std::invalid_argument& e) {
        throw DataError("model file '" + path.string() + "' is malformed: " + e.what());
    }
}

}  // namespace rdvswarm
