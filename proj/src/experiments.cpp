#include "rdvswarm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rdvswarm/errors.hpp"
#include "rdvswarm/format.hpp"
#include "rdvswarm/rng.hpp"

namespace rdvswarm {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Tag mixed into the seed that shuffles rows in random-split mode, so the
// partition stream is independent of the optimizer stream.
constexpr std::uint64_t kRowSplitTag = 0x726f7773ULL;  // "rows"

}  // namespace

std::uint64_t row_split_seed(std::uint64_t base_seed) {
    return derive_seed(base_seed, kRowSplitTag);
}

namespace {

/// Runs body(0..n-1) on `jobs` workers pulling indices from a shared
/// counter. Results must be written to pre-assigned slots; the first
/// exception is rethrown after all workers stop.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& body) {
    if (jobs < 1) {
        throw std::invalid_argument("jobs must be at least 1");
    }
    if (jobs == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto work = [&] {
        while (!failed.load()) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            try {
                body(i);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
                failed.store(true);
                return;
            }
        }
    };

    const auto worker_count = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    std::vector<std::thread> workers;
    workers.reserve(worker_count);
    for (std::size_t w = 0; w < worker_count; ++w) {
        workers.emplace_back(work);
    }
    for (auto& t : workers) {
        t.join();
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }
}

void validate_grid(const std::vector<double>& grid, const std::string& name) {
    if (grid.empty()) {
        throw std::invalid_argument(name + " grid is empty");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || grid[i] > 1.0) {
            throw std::invalid_argument(name + " grid values must lie in (0, 1]");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw std::invalid_argument(name + " grid must be strictly increasing");
        }
    }
}

}  // namespace

Objective benchmark_objective(const std::string& name, int dim) {
    if (dim < 1) {
        throw std::invalid_argument("dimension must be at least 1");
    }
    Objective objective;
    objective.total = true;
    if (name == "sphere") {
        objective.fn = [](std::span<const double> x) {
            double acc = 0.0;
            for (double v : x) {
                acc += v * v;
            }
            return acc;
        };
    } else if (name == "rastrigin") {
        objective.fn = [](std::span<const double> x) {
            double acc = 10.0 * static_cast<double>(x.size());
            for (double v : x) {
                acc += v * v - 10.0 * std::cos(2.0 * kPi * v);
            }
            return acc;
        };
    } else if (name == "rosenbrock") {
        if (dim < 2) {
            throw std::invalid_argument("rosenbrock needs dimension >= 2");
        }
        objective.fn = [](std::span<const double> x) {
            double acc = 0.0;
            for (std::size_t i = 0; i + 1 < x.size(); ++i) {
                const double a = x[i + 1] - x[i] * x[i];
                const double b = 1.0 - x[i];
                acc += 100.0 * a * a + b * b;
            }
            return acc;
        };
    } else {
        throw std::invalid_argument("unknown benchmark function '" + name + "'");
    }
    return objective;
}

SweepResult grid_sweep(const SweepSpec& spec, int dim, const Objective& objective) {
    validate_grid(spec.alpha_grid, "alpha");
    validate_grid(spec.dump_grid, "alpha_dump");
    if (spec.runs_per_cell < 1) {
        throw std::invalid_argument("runs per cell must be at least 1");
    }
    validate(spec.base);

    SweepResult result;
    result.cells.resize(spec.alpha_grid.size() * spec.dump_grid.size());
    const std::size_t dump_count = spec.dump_grid.size();

    parallel_for(result.cells.size(), spec.jobs, [&](std::size_t cell_index) {
        const double alpha = spec.alpha_grid[cell_index / dump_count];
        const double dump = spec.dump_grid[cell_index % dump_count];

        IwConfig iw;
        iw.kind = IwKind::rdv;
        iw.alpha = alpha;
        iw.alpha_dump = dump;
        iw.decay_sharpness = spec.decay_sharpness;
        iw.damp_per_iteration = spec.damp_per_iteration;

        double sum = 0.0;
        double best = std::numeric_limits<double>::infinity();
        int finished = 0;
        for (int r = 0; r < spec.runs_per_cell; ++r) {
            PsoConfig cfg = spec.base;
            cfg.seed = derive_seed(spec.base.seed, cell_index, static_cast<std::uint64_t>(r));
            try {
                const RunResult run = run_pso(cfg, dim, objective, iw);
                sum += run.gbest_fitness;
                best = std::min(best, run.gbest_fitness);
                ++finished;
            } catch (const NonFiniteObjectiveError&) {
                // Aborted runs are dropped; the cell keeps its survivors.
            }
        }
        if (finished == 0) {
            throw std::runtime_error("all " + std::to_string(spec.runs_per_cell) +
                                     " runs aborted for cell alpha=" + format_double(alpha) +
                                     ", alpha_dump=" + format_double(dump));
        }
        SweepCell& cell = result.cells[cell_index];
        cell.alpha = alpha;
        cell.alpha_dump = dump;
        cell.mean_pe = sum / static_cast<double>(finished);
        cell.best_pe = best;
        cell.runs = finished;
    });

    result.best_index = 0;
    for (std::size_t i = 1; i < result.cells.size(); ++i) {
        const double score =
            spec.score_by_min ? result.cells[i].best_pe : result.cells[i].mean_pe;
        const double incumbent = spec.score_by_min ? result.cells[result.best_index].best_pe
                                                   : result.cells[result.best_index].mean_pe;
        if (score < incumbent) {
            result.best_index = i;
        }
    }
    return result;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = "alpha,alpha_dump,mean_pe,best_pe,runs\n";
    for (const auto& cell : result.cells) {
        out += format_double(cell.alpha);
        out += ',';
        out += format_double(cell.alpha_dump);
        out += ',';
        out += format_double(cell.mean_pe);
        out += ',';
        out += format_double(cell.best_pe);
        out += ',';
        out += std::to_string(cell.runs);
        out += '\n';
    }
    return out;
}

std::optional<int> stabilization_iteration(const ConvergenceTrace& trace, int window,
                                           double rel_tol) {
    if (window < 2) {
        throw std::invalid_argument("stabilization window must be at least 2");
    }
    if (rel_tol < 0.0) {
        throw std::invalid_argument("stabilization tolerance must be non-negative");
    }
    if (trace.size() < static_cast<std::size_t>(window)) {
        throw std::invalid_argument("trace shorter than the stabilization window");
    }
    const auto w = static_cast<std::size_t>(window);
    for (std::size_t t = 0; t + w <= trace.size(); ++t) {
        double lo = trace[t].mean_abs_velocity;
        double hi = lo;
        double mean = 0.0;
        for (std::size_t i = t; i < t + w; ++i) {
            const double v = trace[i].mean_abs_velocity;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            mean += v;
        }
        mean /= static_cast<double>(w);
        if (hi - lo <= rel_tol * mean) {
            return static_cast<int>(t);
        }
    }
    return std::nullopt;
}

namespace {

SegmentEval score_segment(std::span<const double> observed, std::span<const double> predicted,
                          const Scaler& scaler) {
    SegmentEval eval;
    eval.raw = compute_metrics(observed, predicted);
    std::vector<double> obs_scaled(observed.size());
    std::vector<double> pred_scaled(predicted.size());
    for (std::size_t i = 0; i < observed.size(); ++i) {
        obs_scaled[i] = transform(scaler, observed[i]);
        pred_scaled[i] = transform(scaler, predicted[i]);
    }
    eval.scaled = compute_metrics(obs_scaled, pred_scaled);
    return eval;
}

LagDataset select_rows(const LagDataset& data, const std::vector<std::size_t>& rows) {
    LagDataset out;
    out.lags = data.lags;
    out.inputs.reserve(rows.size());
    out.targets.reserve(rows.size());
    for (std::size_t r : rows) {
        out.inputs.push_back(data.inputs[r]);
        out.targets.push_back(data.targets[r]);
    }
    return out;
}

SegmentEval score_rows(const NarNetwork& net, const Scaler& scaler, const LagDataset& data,
                       const std::vector<std::size_t>& rows) {
    std::vector<double> observed;
    std::vector<double> predicted;
    observed.reserve(rows.size());
    predicted.reserve(rows.size());
    std::vector<double> window(static_cast<std::size_t>(data.lags));
    for (std::size_t r : rows) {
        for (std::size_t j = 0; j < window.size(); ++j) {
            window[j] = transform(scaler, data.inputs[r][j]);
        }
        observed.push_back(data.targets[r]);
        predicted.push_back(invert(scaler, forward(net, window)));
    }
    return score_segment(observed, predicted, scaler);
}

void validate_task(const ForecastTask& task) {
    if (task.lags < 1) {
        throw std::invalid_argument("lag count must be at least 1");
    }
    if (task.values.size() < 10) {
        throw DataError("series too short to train on: need at least 10 values, got " +
                        std::to_string(task.values.size()));
    }
}

}  // namespace

TrainedForecaster train_forecaster(const ForecastTask& task, const PsoConfig& pso,
                                   const IwConfig& iw) {
    validate_task(task);
    const NarNetwork net_template = make_network(task.lags, task.hidden_sizes,
                                                 task.hidden_activation,
                                                 task.output_activation);
    const auto dim = static_cast<int>(param_count(task.lags, task.hidden_sizes));

    TrainedForecaster out;
    if (task.random_split) {
        const LagDataset all_rows = make_lag_dataset(task.values, task.lags);
        const RowSplit rows =
            random_row_split(all_rows.size(), task.ratios, row_split_seed(pso.seed));
        std::vector<double> train_values;
        train_values.reserve(rows.train.size() * (static_cast<std::size_t>(task.lags) + 1));
        for (std::size_t r : rows.train) {
            train_values.insert(train_values.end(), all_rows.inputs[r].begin(),
                                all_rows.inputs[r].end());
            train_values.push_back(all_rows.targets[r]);
        }
        out.scaler = fit_scaler(train_values);

        out.train_data = select_rows(all_rows, rows.train);
        const Objective objective = forecast_fitness(net_template, out.scaler, out.train_data);
        out.run = run_pso(pso, dim, objective, iw);
        out.net = with_params(net_template, out.run.gbest_position);
        out.train_pe_scaled =
            forecast_position_error(out.net, out.scaler, out.train_data, false);
        out.train_pe_raw = forecast_position_error(out.net, out.scaler, out.train_data, true);
        out.val = score_rows(out.net, out.scaler, all_rows, rows.val);
        out.test = score_rows(out.net, out.scaler, all_rows, rows.test);
        return out;
    }

    const SeriesSplit split = split_series(task.values, task.ratios);
    out.scaler = fit_scaler(split.train);
    out.train_data = make_lag_dataset(split.train, task.lags);
    const Objective objective = forecast_fitness(net_template, out.scaler, out.train_data);
    out.run = run_pso(pso, dim, objective, iw);
    out.net = with_params(net_template, out.run.gbest_position);
    out.train_pe_scaled = forecast_position_error(out.net, out.scaler, out.train_data, false);
    out.train_pe_raw = forecast_position_error(out.net, out.scaler, out.train_data, true);

    // Walk-forward scoring: each point is predicted from the actual values
    // before it, so windows may straddle the segment boundary.
    const std::span<const double> values(task.values);
    auto score_range = [&](std::size_t start, std::size_t end) {
        std::vector<double> predicted;
        predicted.reserve(end - start);
        for (std::size_t i = start; i < end; ++i) {
            predicted.push_back(predict_one_step(out.net, out.scaler, values.subspan(0, i)));
        }
        return score_segment(values.subspan(start, end - start), predicted, out.scaler);
    };
    const std::size_t val_start = split.train.size();
    const std::size_t test_start = val_start + split.val.size();
    out.val = score_range(val_start, test_start);
    out.test = score_range(test_start, task.values.size());
    return out;
}

namespace {

/// Per-trial values of one accuracy metric; nullopt when a trial lacks it.
std::vector<std::optional<double>> metric_column(const VariantOutcome& variant,
                                                 const std::string& metric) {
    std::vector<std::optional<double>> column;
    column.reserve(variant.trials.size());
    for (const auto& trial : variant.trials) {
        const MetricsReport& m = trial.test_raw;
        if (metric == "nrmse") {
            column.push_back(m.nrmse);
        } else if (metric == "mae") {
            column.push_back(m.mae);
        } else if (metric == "mape") {
            column.push_back(m.mape);
        } else if (metric == "wape") {
            column.push_back(m.wape);
        } else if (metric == "r2") {
            column.push_back(m.r_squared);
        } else {
            throw std::invalid_argument("unknown metric '" + metric + "'");
        }
    }
    return column;
}

std::optional<RunSummary> summarize_present(const std::vector<std::optional<double>>& column) {
    std::vector<double> present;
    present.reserve(column.size());
    for (const auto& v : column) {
        if (v) {
            present.push_back(*v);
        }
    }
    if (present.empty()) {
        return std::nullopt;
    }
    return summarize_runs(present);
}

MetricComparison compare_metric(const VariantOutcome& a, const VariantOutcome& b,
                                const std::string& metric, double alpha_level, Tail tail) {
    MetricComparison cmp;
    cmp.metric = metric;
    const auto col_a = metric_column(a, metric);
    const auto col_b = metric_column(b, metric);
    cmp.a = summarize_present(col_a);
    cmp.b = summarize_present(col_b);

    std::vector<double> full_a;
    std::vector<double> full_b;
    for (std::size_t k = 0; k < col_a.size(); ++k) {
        if (!col_a[k] || !col_b[k]) {
            cmp.note = metric + " undefined in trial " + std::to_string(k) +
                       "; paired test skipped";
            return cmp;
        }
        full_a.push_back(*col_a[k]);
        full_b.push_back(*col_b[k]);
    }
    try {
        cmp.ttest = paired_t_test(full_a, full_b, alpha_level, tail);
    } catch (const DegenerateError& e) {
        cmp.note = e.what();
    }
    return cmp;
}

ConvergenceComparison compare_quantity(
    const std::string& quantity, const std::vector<std::optional<double>>& col_a,
    const std::vector<std::optional<double>>& col_b) {
    ConvergenceComparison cmp;
    cmp.quantity = quantity;
    cmp.a = summarize_present(col_a);
    cmp.b = summarize_present(col_b);
    if (!cmp.a || !cmp.b) {
        cmp.note = "not observed in any trial of one variant";
        return cmp;
    }
    auto improvement = [&](double baseline, double proposed) -> std::optional<double> {
        try {
            return improvement_pct(baseline, proposed);
        } catch (const DegenerateError& e) {
            if (cmp.note.empty()) {
                cmp.note = e.what();
            }
            return std::nullopt;
        }
    };
    cmp.improvement_min_pct = improvement(cmp.b->min, cmp.a->min);
    cmp.improvement_max_pct = improvement(cmp.b->max, cmp.a->max);
    cmp.improvement_mean_pct = improvement(cmp.b->mean, cmp.a->mean);
    return cmp;
}

std::vector<std::optional<double>> trial_column(
    const VariantOutcome& variant, const std::function<std::optional<double>(const TrialRecord&)>& get) {
    std::vector<std::optional<double>> column;
    column.reserve(variant.trials.size());
    for (const auto& trial : variant.trials) {
        column.push_back(get(trial));
    }
    return column;
}

}  // namespace

ComparisonReport compare_variants(const ForecastTask& task,
                                  const std::vector<std::pair<std::string, IwConfig>>& variants,
                                  int trials, const PsoConfig& base, int jobs,
                                  int stab_window, double stab_rel_tol, double alpha_level,
                                  Tail tail) {
    if (variants.size() < 2) {
        throw std::invalid_argument("comparison needs at least two variants");
    }
    if (trials < 2) {
        throw std::invalid_argument("comparison needs at least two trials");
    }
    for (const auto& [name, iw] : variants) {
        if (name.empty()) {
            throw std::invalid_argument("variant name is empty");
        }
        validate(iw);
    }
    validate_task(task);

    ComparisonReport report;
    report.trials = trials;
    report.alpha_level = alpha_level;
    report.tail = tail;
    report.variants.resize(variants.size());
    for (std::size_t v = 0; v < variants.size(); ++v) {
        report.variants[v].name = variants[v].first;
        report.variants[v].iw = variants[v].second;
        report.variants[v].trials.resize(static_cast<std::size_t>(trials));
    }

    const auto n_trials = static_cast<std::size_t>(trials);
    parallel_for(variants.size() * n_trials, jobs, [&](std::size_t index) {
        const std::size_t v = index / n_trials;
        const std::size_t k = index % n_trials;
        PsoConfig cfg = base;
        cfg.seed = derive_seed(base.seed, k);  // paired: same seed across variants
        const TrainedForecaster tf = train_forecaster(task, cfg, variants[v].second);

        TrialRecord& record = report.variants[v].trials[k];
        record.seed = cfg.seed;
        record.test_raw = tf.test.raw;
        record.pe_scaled = tf.train_pe_scaled;
        record.pe_raw = tf.train_pe_raw;
        record.elapsed_seconds = tf.run.elapsed_seconds;
        record.stabilization = stabilization_iteration(tf.run.trace, stab_window, stab_rel_tol);
    });

    const VariantOutcome& a = report.variants[0];
    const VariantOutcome& b = report.variants[1];
    for (const char* metric : {"nrmse", "mae", "mape", "wape", "r2"}) {
        report.accuracy.push_back(compare_metric(a, b, metric, alpha_level, tail));
    }

    auto pe_raw = [](const TrialRecord& t) { return std::optional<double>(t.pe_raw); };
    auto pe_scaled = [](const TrialRecord& t) { return std::optional<double>(t.pe_scaled); };
    auto elapsed = [](const TrialRecord& t) { return std::optional<double>(t.elapsed_seconds); };
    auto stab = [](const TrialRecord& t) -> std::optional<double> {
        if (t.stabilization) {
            return static_cast<double>(*t.stabilization);
        }
        return std::nullopt;
    };
    report.convergence.push_back(compare_quantity("position_error_raw", trial_column(a, pe_raw),
                                                  trial_column(b, pe_raw)));
    report.convergence.push_back(compare_quantity(
        "position_error_scaled", trial_column(a, pe_scaled), trial_column(b, pe_scaled)));
    report.convergence.push_back(compare_quantity("elapsed_seconds", trial_column(a, elapsed),
                                                  trial_column(b, elapsed)));
    report.convergence.push_back(compare_quantity(
        "stabilization_iteration", trial_column(a, stab), trial_column(b, stab)));
    return report;
}

TimeSeries synthetic_monthly_series(const SyntheticSpec& spec) {
    if (spec.n < 1) {
        throw std::invalid_argument("series length must be at least 1");
    }
    if (!(spec.period > 0.0)) {
        throw std::invalid_argument("seasonal period must be positive");
    }
    if (spec.amplitude < 0.0 || spec.noise_sd < 0.0) {
        throw std::invalid_argument("amplitude and noise level must be non-negative");
    }
    if (spec.start.month < 1 || spec.start.month > 12) {
        throw std::invalid_argument("start month out of range");
    }

    TimeSeries series;
    series.timestamps.reserve(static_cast<std::size_t>(spec.n));
    series.values.reserve(static_cast<std::size_t>(spec.n));
    RunRng rng(spec.seed);
    YearMonth ym = spec.start;
    for (int t = 0; t < spec.n; ++t) {
        const double trend = spec.base + spec.slope * static_cast<double>(t);
        const double seasonal =
            spec.amplitude * std::sin(2.0 * kPi * static_cast<double>(t) / spec.period);
        series.timestamps.push_back(ym);
        series.values.push_back(trend + seasonal + spec.noise_sd * rng.normal());
        ym = next_month(ym);
    }
    return series;
}

}  // namespace rdvswarm
