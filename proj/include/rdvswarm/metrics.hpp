#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>

namespace rdvswarm {

/// Accuracy scores for one (observed, predicted) pair. mape is a ratio, not
/// a percentage, and is absent whenever an observed value is zero; mape_note
/// then says why.
struct MetricsReport {
    double nrmse = 0.0;
    double mae = 0.0;
    std::optional<double> mape;
    double wape = 0.0;
    double r_squared = 0.0;
    std::size_t n = 0;
    std::string mape_note;
};

/// Computes all scores in one pass. Requires matching lengths, n >= 2, and a
/// non-constant observed vector (otherwise r-squared is undefined).
MetricsReport compute_metrics(std::span<const double> observed,
                              std::span<const double> predicted);

/// Unrooted companion of nrmse: sum((P-O)^2) / sum(O^2).
double nmse(std::span<const double> observed, std::span<const double> predicted);

/// Euclidean distance between two points of equal dimension.
double position_error(std::span<const double> a, std::span<const double> b);

/// Unsquared reading of the distance, sqrt(sum(b_j - a_j)), kept for
/// auditability. A negative radicand is a DegenerateError.
double position_error_literal(std::span<const double> a, std::span<const double> b);

}  // namespace rdvswarm
