#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace rdvswarm {

/// Calendar month label (YYYY-MM), month in 1..12.
struct YearMonth {
    int year = 0;
    int month = 0;

    friend bool operator==(const YearMonth&, const YearMonth&) = default;
};

YearMonth next_month(YearMonth ym);
std::string format_month(YearMonth ym);

/// Ordered monthly observations: consecutive months, finite values.
struct TimeSeries {
    std::vector<YearMonth> timestamps;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
};

/// Reads a `month,value` CSV (header required, months consecutive, values
/// finite). Malformed content raises DataError naming the data row.
TimeSeries load_series(const std::filesystem::path& path);

/// Renders a series back to the same CSV dialect load_series accepts.
std::string series_csv(const TimeSeries& series);

/// Min-max bounds, fitted on the training segment only.
struct Scaler {
    double min = 0.0;
    double max = 1.0;
};

/// Bounds of `train_values`; a constant segment is a DegenerateError.
Scaler fit_scaler(std::span<const double> train_values);

/// (x - min) / (max - min); maps the fitted range onto [0, 1].
double transform(const Scaler& s, double x);

/// Exact inverse of transform.
double invert(const Scaler& s, double u);

/// Supervised one-step-ahead view of a series: window k covers source
/// indices [k, k+lags) oldest first, its target is index k + lags.
/// Values are kept in raw (untransformed) units.
struct LagDataset {
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    int lags = 0;

    std::size_t size() const { return targets.size(); }
};

LagDataset make_lag_dataset(std::span<const double> values, int lags);

/// Chronological train/validation/test proportions; must sum to 1.
struct SplitRatios {
    double train = 0.70;
    double val = 0.15;
    double test = 0.15;
};

struct SeriesSplit {
    std::vector<double> train;
    std::vector<double> val;
    std::vector<double> test;
};

/// Order-preserving split. Validation and test sizes are floor(ratio * n);
/// training keeps the remainder so every element lands in exactly one
/// segment.
SeriesSplit split_series(std::span<const double> values, const SplitRatios& ratios);

/// Seeded random partition of lag-dataset row indices (the alternative to
/// the chronological split). Segment sizes follow the same floor rule;
/// indices are sorted within each segment.
struct RowSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> val;
    std::vector<std::size_t> test;
};

RowSplit random_row_split(std::size_t n_rows, const SplitRatios& ratios, std::uint64_t seed);

}  // namespace rdvswarm
