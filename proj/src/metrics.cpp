#include "rdvswarm/metrics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rdvswarm/errors.hpp"

namespace rdvswarm {

namespace {

void validate_pair(std::span<const double> observed, std::span<const double> predicted,
                   std::size_t min_n) {
    if (observed.size() != predicted.size()) {
        throw std::invalid_argument("observed and predicted lengths differ: " +
                                    std::to_string(observed.size()) + " vs " +
                                    std::to_string(predicted.size()));
    }
    if (observed.size() < min_n) {
        throw std::invalid_argument("need at least " + std::to_string(min_n) +
                                    " points, got " + std::to_string(observed.size()));
    }
}

}  // namespace

MetricsReport compute_metrics(std::span<const double> observed,
                              std::span<const double> predicted) {
    validate_pair(observed, predicted, 2);
    const std::size_t n = observed.size();

    double obs_mean = 0.0;
    for (double y : observed) {
        obs_mean += y;
    }
    obs_mean /= static_cast<double>(n);

    double sq_err = 0.0;       // sum (P - O)^2
    double sq_obs = 0.0;       // sum O^2
    double abs_err = 0.0;      // sum |O - P|
    double abs_obs = 0.0;      // sum |O|
    double ss_tot = 0.0;       // sum (O - mean)^2
    double ape = 0.0;          // sum |O - P| / |O|
    std::size_t zero_at = n;   // first index with observed == 0, if any
    for (std::size_t i = 0; i < n; ++i) {
        const double o = observed[i];
        const double p = predicted[i];
        const double e = o - p;
        sq_err += e * e;
        sq_obs += o * o;
        abs_err += std::fabs(e);
        abs_obs += std::fabs(o);
        ss_tot += (o - obs_mean) * (o - obs_mean);
        if (o == 0.0) {
            if (zero_at == n) {
                zero_at = i;
            }
        } else {
            ape += std::fabs(e) / std::fabs(o);
        }
    }

    if (ss_tot == 0.0) {
        throw DegenerateError("observed values are constant; r-squared is undefined");
    }
    // A non-constant observed vector has at least one non-zero entry, so the
    // nrmse and wape denominators cannot vanish here.

    MetricsReport report;
    report.n = n;
    report.nrmse = std::sqrt(sq_err / sq_obs);
    report.mae = abs_err / static_cast<double>(n);
    report.wape = abs_err / abs_obs;
    report.r_squared = 1.0 - sq_err / ss_tot;
    if (zero_at == n) {
        report.mape = ape / static_cast<double>(n);
    } else {
        report.mape_note =
            "mape undefined: observed value is zero at index " + std::to_string(zero_at);
    }
    return report;
}

double nmse(std::span<const double> observed, std::span<const double> predicted) {
    validate_pair(observed, predicted, 1);
    double sq_err = 0.0;
    double sq_obs = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        const double e = observed[i] - predicted[i];
        sq_err += e * e;
        sq_obs += observed[i] * observed[i];
    }
    if (sq_obs == 0.0) {
        throw DegenerateError("observed values are all zero; nmse is undefined");
    }
    return sq_err / sq_obs;
}

double position_error(std::span<const double> a, std::span<const double> b) {
    validate_pair(a, b, 1);
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = b[j] - a[j];
        acc += d * d;
    }
    return std::sqrt(acc);
}

double position_error_literal(std::span<const double> a, std::span<const double> b) {
    validate_pair(a, b, 1);
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        acc += b[j] - a[j];
    }
    if (acc < 0.0) {
        throw DegenerateError("literal distance undefined: coordinate differences sum to " +
                              std::to_string(acc));
    }
    return std::sqrt(acc);
}

}  // namespace rdvswarm
