#include "rdvswarm/series_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rdvswarm/errors.hpp"
#include "rdvswarm/format.hpp"
#include "rdvswarm/rng.hpp"

namespace rdvswarm {

namespace {

constexpr double kRatioSumTolerance = 1e-9;

[[noreturn]] void row_error(std::size_t row, const std::string& what) {
    throw DataError("data row " + std::to_string(row) + ": " + what);
}

bool parse_int(std::string_view text, int& out) {
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto res = std::from_chars(first, last, out);
    return res.ec == std::errc{} && res.ptr == last;
}

YearMonth parse_month(std::string_view field, std::size_t row) {
    if (field.size() != 7 || field[4] != '-') {
        row_error(row, "month must be YYYY-MM, got '" + std::string(field) + "'");
    }
    YearMonth ym;
    if (!parse_int(field.substr(0, 4), ym.year) || !parse_int(field.substr(5, 2), ym.month)) {
        row_error(row, "month must be YYYY-MM, got '" + std::string(field) + "'");
    }
    if (ym.month < 1 || ym.month > 12) {
        row_error(row, "month out of range in '" + std::string(field) + "'");
    }
    return ym;
}

double parse_value(std::string_view field, std::size_t row) {
    if (field.empty()) {
        row_error(row, "missing value");
    }
    double v = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last) {
        row_error(row, "value '" + std::string(field) + "' is not a decimal number");
    }
    if (!std::isfinite(v)) {
        row_error(row, "value '" + std::string(field) + "' is not finite");
    }
    return v;
}

std::string strip_line(std::string line) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
        line.pop_back();
    }
    return line;
}

}  // namespace

YearMonth next_month(YearMonth ym) {
    if (ym.month == 12) {
        return {ym.year + 1, 1};
    }
    return {ym.year, ym.month + 1};
}

std::string format_month(YearMonth ym) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
    return buf;
}

TimeSeries load_series(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw DataError("cannot open series file '" + path.string() + "'");
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("series file '" + path.string() + "' is empty");
    }
    // Tolerate a UTF-8 byte-order mark in front of the header.
    line = strip_line(std::move(line));
    if (line.rfind("\xef\xbb\xbf", 0) == 0) {
        line.erase(0, 3);
    }
    if (line != "month,value") {
        throw DataError("expected header 'month,value', got '" + line + "'");
    }

    TimeSeries series;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        line = strip_line(std::move(line));
        ++row;
        if (line.empty()) {
            row_error(row, "empty row");
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            row_error(row, "expected exactly two comma-separated fields");
        }
        const YearMonth ym = parse_month(std::string_view(line).substr(0, comma), row);
        const double value = parse_value(std::string_view(line).substr(comma + 1), row);
        if (!series.timestamps.empty() && !(ym == next_month(series.timestamps.back()))) {
            row_error(row, "month " + format_month(ym) + " does not follow " +
                               format_month(series.timestamps.back()) +
                               " (gap, duplicate, or out of order)");
        }
        series.timestamps.push_back(ym);
        series.values.push_back(value);
    }
    if (series.values.empty()) {
        throw DataError("series file '" + path.string() + "' has no data rows");
    }
    return series;
}

std::string series_csv(const TimeSeries& series) {
    std::string out = "month,value\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        out += format_month(series.timestamps[i]);
        out += ',';
        out += format_double(series.values[i]);
        out += '\n';
    }
    return out;
}

Scaler fit_scaler(std::span<const double> train_values) {
    if (train_values.size() < 2) {
        throw std::invalid_argument("fit_scaler needs at least two values");
    }
    Scaler s{train_values[0], train_values[0]};
    for (double v : train_values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("fit_scaler given a non-finite value");
        }
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    if (s.min == s.max) {
        throw DegenerateError("training segment is constant; min-max scaling is undefined");
    }
    return s;
}

double transform(const Scaler& s, double x) { return (x - s.min) / (s.max - s.min); }

double invert(const Scaler& s, double u) { return u * (s.max - s.min) + s.min; }

LagDataset make_lag_dataset(std::span<const double> values, int lags) {
    if (lags < 1) {
        throw std::invalid_argument("lag count must be at least 1");
    }
    if (values.size() <= static_cast<std::size_t>(lags)) {
        throw std::invalid_argument("insufficient history: need more than " +
                                    std::to_string(lags) + " values, got " +
                                    std::to_string(values.size()));
    }
    LagDataset data;
    data.lags = lags;
    const std::size_t rows = values.size() - static_cast<std::size_t>(lags);
    data.inputs.reserve(rows);
    data.targets.reserve(rows);
    for (std::size_t k = 0; k < rows; ++k) {
        data.inputs.emplace_back(values.begin() + k, values.begin() + k + lags);
        data.targets.push_back(values[k + lags]);
    }
    return data;
}

namespace {

struct SplitSizes {
    std::size_t train, val, test;
};

SplitSizes split_sizes(std::size_t n, const SplitRatios& ratios) {
    if (!(ratios.train > 0.0) || !(ratios.val > 0.0) || !(ratios.test > 0.0)) {
        throw std::invalid_argument("split ratios must all be positive");
    }
    const double sum = ratios.train + ratios.val + ratios.test;
    if (std::fabs(sum - 1.0) > kRatioSumTolerance) {
        throw std::invalid_argument("split ratios must sum to 1, got " + format_double(sum));
    }
    SplitSizes sizes{};
    sizes.val = static_cast<std::size_t>(std::floor(ratios.val * static_cast<double>(n)));
    sizes.test = static_cast<std::size_t>(std::floor(ratios.test * static_cast<double>(n)));
    if (sizes.val + sizes.test >= n) {
        throw std::invalid_argument("split leaves no training data");
    }
    sizes.train = n - sizes.val - sizes.test;
    if (sizes.train == 0 || sizes.val == 0 || sizes.test == 0) {
        throw std::invalid_argument("split produces an empty segment");
    }
    return sizes;
}

}  // namespace

SeriesSplit split_series(std::span<const double> values, const SplitRatios& ratios) {
    if (values.size() < 10) {
        throw DataError("series too short to split: need at least 10 values, got " +
                        std::to_string(values.size()));
    }
    const SplitSizes sizes = split_sizes(values.size(), ratios);
    SeriesSplit split;
    split.train.assign(values.begin(), values.begin() + sizes.train);
    split.val.assign(values.begin() + sizes.train, values.begin() + sizes.train + sizes.val);
    split.test.assign(values.begin() + sizes.train + sizes.val, values.end());
    return split;
}

RowSplit random_row_split(std::size_t n_rows, const SplitRatios& ratios, std::uint64_t seed) {
    if (n_rows < 10) {
        throw DataError("too few rows to split: need at least 10, got " +
                        std::to_string(n_rows));
    }
    const SplitSizes sizes = split_sizes(n_rows, ratios);

    std::vector<std::size_t> order(n_rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Fisher-Yates driven by the documented uniform mapping, so the same
    // seed yields the same partition on every platform.
    RunRng rng(seed);
    for (std::size_t i = n_rows - 1; i > 0; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(i + 1));
        std::swap(order[i], order[j]);
    }

    RowSplit split;
    split.train.assign(order.begin(), order.begin() + sizes.train);
    split.val.assign(order.begin() + sizes.train, order.begin() + sizes.train + sizes.val);
    split.test.assign(order.begin() + sizes.train + sizes.val, order.end());
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.val.begin(), split.val.end());
    std::sort(split.test.begin(), split.test.end());
    return split;
}

}  // namespace rdvswarm
