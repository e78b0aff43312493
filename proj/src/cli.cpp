#include "rdvswarm/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdvswarm/errors.hpp"
#include "rdvswarm/experiments.hpp"
#include "rdvswarm/format.hpp"
#include "rdvswarm/report.hpp"
#include "rdvswarm/version.hpp"

namespace rdvswarm::cli {

namespace {

double parse_double(const std::string& text) {
    if (text.empty()) {
        throw std::invalid_argument("expected a number, got an empty field");
    }
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || !std::isfinite(v)) {
        throw std::invalid_argument("'" + text + "' is not a finite number");
    }
    return v;
}

std::vector<std::string> split_on(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (true) {
        const std::size_t pos = text.find(sep, begin);
        if (pos == std::string::npos) {
            parts.push_back(text.substr(begin));
            return parts;
        }
        parts.push_back(text.substr(begin, pos - begin));
        begin = pos + 1;
    }
}

/// Inertia strategy spec: KIND[:PARAM...] with an optional NAME= prefix.
/// Examples: rdv, rdv:0.4:0.9, rdv:0.4:0.9:1.0, constant:1, linear:0.9:0.4,
/// random, tuned=rdv:0.3:0.85.
std::pair<std::string, IwConfig> parse_variant(const std::string& spec) {
    std::string name = spec;
    std::string body = spec;
    const std::size_t eq = spec.find('=');
    if (eq != std::string::npos) {
        name = spec.substr(0, eq);
        body = spec.substr(eq + 1);
        if (name.empty() || body.empty()) {
            throw std::invalid_argument("variant '" + spec + "' has an empty name or spec");
        }
    }
    const std::vector<std::string> parts = split_on(body, ':');
    IwConfig cfg;
    cfg.kind = iw_kind_from_name(parts[0]);
    switch (cfg.kind) {
        case IwKind::constant:
            if (parts.size() > 2) {
                throw std::invalid_argument("constant takes at most one parameter");
            }
            if (parts.size() == 2) {
                cfg.constant_weight = parse_double(parts[1]);
            }
            break;
        case IwKind::linear_decreasing:
            if (parts.size() != 1 && parts.size() != 3) {
                throw std::invalid_argument("linear takes either no parameters or W_MAX:W_MIN");
            }
            if (parts.size() == 3) {
                cfg.w_max = parse_double(parts[1]);
                cfg.w_min = parse_double(parts[2]);
            }
            break;
        case IwKind::random_uniform:
            if (parts.size() > 1) {
                throw std::invalid_argument("random takes no parameters");
            }
            break;
        case IwKind::rdv:
            if (parts.size() > 4) {
                throw std::invalid_argument("rdv takes at most ALPHA:ALPHA_DUMP:SHARPNESS");
            }
            if (parts.size() >= 2) {
                cfg.alpha = parse_double(parts[1]);
            }
            if (parts.size() >= 3) {
                cfg.alpha_dump = parse_double(parts[2]);
            }
            if (parts.size() >= 4) {
                cfg.decay_sharpness = parse_double(parts[3]);
            }
            break;
    }
    validate(cfg);
    return {name, cfg};
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        throw DataError("cannot write file '" + path.string() + "'");
    }
    out << content;
    if (!out) {
        throw DataError("failed while writing file '" + path.string() + "'");
    }
}

// ---- option bundles ----------------------------------------------------

struct IwOptions {
    std::string kind = "rdv";
    IwConfig cfg;

    IwConfig resolve() const {
        IwConfig out = cfg;
        out.kind = iw_kind_from_name(kind);
        validate(out);
        return out;
    }
};

void add_pso_options(CLI::App* cmd, PsoConfig& cfg) {
    cmd->add_option("--swarm", cfg.swarm_size, "Particles in the swarm")
        ->capture_default_str();
    cmd->add_option("--iters", cfg.max_iterations, "Optimizer iterations")
        ->capture_default_str();
    cmd->add_option("--c1", cfg.c1, "Personal-best acceleration coefficient")
        ->capture_default_str();
    cmd->add_option("--c2", cfg.c2, "Global-best acceleration coefficient")
        ->capture_default_str();
    cmd->add_option("--limit", cfg.position_limit, "Symmetric position clamp")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Base random seed")
        ->envname("RDV_SWARM_SEED")
        ->capture_default_str();
}

void add_iw_options(CLI::App* cmd, IwOptions& iw) {
    cmd->add_option("--iw", iw.kind, "Inertia strategy")
        ->check(CLI::IsMember({"constant", "linear", "random", "rdv"}))
        ->capture_default_str();
    cmd->add_option("--w", iw.cfg.constant_weight, "Weight for --iw constant")
        ->capture_default_str();
    cmd->add_option("--w-max", iw.cfg.w_max, "Start weight for --iw linear")
        ->capture_default_str();
    cmd->add_option("--w-min", iw.cfg.w_min, "End weight for --iw linear")
        ->capture_default_str();
    cmd->add_option("--alpha", iw.cfg.alpha, "Initial weight for --iw rdv")
        ->capture_default_str();
    cmd->add_option("--alpha-dump", iw.cfg.alpha_dump, "Damping factor for --iw rdv")
        ->capture_default_str();
    cmd->add_option("--decay-sharpness", iw.cfg.decay_sharpness,
                    "Decay-gate sharpness for --iw rdv")
        ->capture_default_str();
    cmd->add_flag("--damp-per-iteration", iw.cfg.damp_per_iteration,
                  "Damp alpha once per iteration instead of per particle query");
}

struct ArchOptions {
    std::string data;
    int lags = 12;
    std::vector<int> hidden{10};
    std::string hidden_act = "tanh";
    std::string output_act = "identity";
    std::vector<double> split{0.70, 0.15, 0.15};
    bool random_split = false;

    ForecastTask task(std::vector<double> values) const {
        if (split.size() != 3) {
            throw std::invalid_argument("--split needs exactly three ratios");
        }
        ForecastTask task;
        task.values = std::move(values);
        task.ratios = SplitRatios{split[0], split[1], split[2]};
        task.lags = lags;
        task.hidden_sizes = hidden;
        task.hidden_activation = activation_from_name(hidden_act);
        task.output_activation = activation_from_name(output_act);
        task.random_split = random_split;
        return task;
    }

    nlohmann::json arch_json() const {
        return {{"lags", lags},
                {"hidden_sizes", hidden},
                {"activations", {{"hidden", hidden_act}, {"output", output_act}}},
                {"params", param_count(lags, hidden)}};
    }
};

CLI::Option* add_arch_options(CLI::App* cmd, ArchOptions& arch, bool data_required) {
    auto* data_opt = cmd->add_option("--data", arch.data, "Series CSV (month,value header)");
    if (data_required) {
        data_opt->required();
    }
    cmd->add_option("--lags", arch.lags, "Lag window length")->capture_default_str();
    cmd->add_option("--hidden", arch.hidden, "Hidden layer widths, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_option("--activation", arch.hidden_act, "Hidden activation")
        ->check(CLI::IsMember({"identity", "tanh", "step"}))
        ->capture_default_str();
    cmd->add_option("--output-activation", arch.output_act, "Output activation")
        ->check(CLI::IsMember({"identity", "step"}))
        ->capture_default_str();
    cmd->add_option("--split", arch.split, "Train,val,test ratios, comma separated")
        ->delimiter(',')
        ->capture_default_str();
    cmd->add_flag("--random-split", arch.random_split,
                  "Partition lag rows at random instead of chronologically");
    return data_opt;
}

struct StabOptions {
    int window = 3;
    double rel_tol = 0.05;
};

void add_stab_options(CLI::App* cmd, StabOptions& stab) {
    cmd->add_option("--stab-window", stab.window, "Stabilization detection window")
        ->capture_default_str();
    cmd->add_option("--stab-rel-tol", stab.rel_tol, "Stabilization relative tolerance")
        ->capture_default_str();
}

nlohmann::json envelope(const char* command) {
    return {{"tool", "rdvswarm"}, {"version", kVersion}, {"command", command}};
}

nlohmann::json stabilization_json(const std::optional<int>& stab) {
    return stab ? nlohmann::json(*stab) : nlohmann::json(nullptr);
}

// ---- subcommand handlers -------------------------------------------------

struct TrainOptions {
    ArchOptions arch;
    PsoConfig pso;
    IwOptions iw;
    StabOptions stab;
    std::string out_prefix;
    bool report_nmse = false;
    bool literal_pe = false;
};

void run_train(const TrainOptions& opt) {
    const IwConfig iw = opt.iw.resolve();
    const TimeSeries series = load_series(opt.arch.data);
    const ForecastTask task = opt.arch.task(series.values);
    const TrainedForecaster tf = train_forecaster(task, opt.pso, iw);

    const double pe_scaled =
        opt.literal_pe
            ? forecast_position_error_literal(tf.net, tf.scaler, tf.train_data, false)
            : tf.train_pe_scaled;
    const double pe_raw =
        opt.literal_pe
            ? forecast_position_error_literal(tf.net, tf.scaler, tf.train_data, true)
            : tf.train_pe_raw;
    const std::optional<int> stab =
        stabilization_iteration(tf.run.trace, opt.stab.window, opt.stab.rel_tol);

    nlohmann::json doc = envelope("train");
    doc["data"] = opt.arch.data;
    doc["n"] = series.size();
    doc["split"] = {{"ratios", opt.arch.split},
                    {"mode", task.random_split ? "random_rows" : "chronological"}};
    doc["arch"] = opt.arch.arch_json();
    doc["pso"] = pso_json(opt.pso);
    doc["iw"] = iw_json(iw);
    doc["scaler"] = {{"min", tf.scaler.min}, {"max", tf.scaler.max}};
    doc["metrics"] = {{"val",
                       {{"raw", metrics_json(tf.val.raw, opt.report_nmse)},
                        {"scaled", metrics_json(tf.val.scaled, opt.report_nmse)}}},
                      {"test",
                       {{"raw", metrics_json(tf.test.raw, opt.report_nmse)},
                        {"scaled", metrics_json(tf.test.scaled, opt.report_nmse)}}}};
    doc["convergence"] = {{"final_pe_scaled", pe_scaled},
                          {"final_pe_raw", pe_raw},
                          {"iterations", tf.run.iterations_run},
                          {"elapsed_seconds", tf.run.elapsed_seconds},
                          {"stabilization_iteration", stabilization_json(stab)},
                          {"stab_window", opt.stab.window},
                          {"stab_rel_tol", opt.stab.rel_tol}};
    if (opt.literal_pe) {
        doc["convergence"]["pe_formula"] = "literal";
    }

    if (!opt.out_prefix.empty()) {
        const std::string model_path = opt.out_prefix + ".model.json";
        const std::string trace_path = opt.out_prefix + ".trace.csv";
        const std::string report_path = opt.out_prefix + ".report.json";
        doc["artifacts"] = {
            {"model", model_path}, {"trace", trace_path}, {"report", report_path}};
        save_model(tf.net, tf.scaler, model_path);
        write_text_file(trace_path, trace_csv(tf.run.trace));
        write_text_file(report_path, doc.dump(2) + "\n");
    }
    std::cout << doc.dump(2) << '\n';
}

struct ForecastOptions {
    std::string model;
    std::string data;
    int horizon = 12;
    std::string out;
};

void run_forecast(const ForecastOptions& opt) {
    const SavedModel model = load_model(opt.model);
    const TimeSeries series = load_series(opt.data);
    if (series.size() < static_cast<std::size_t>(model.net.lags)) {
        throw DataError("history has " + std::to_string(series.size()) +
                        " values but the model needs " + std::to_string(model.net.lags));
    }
    const std::vector<double> predictions =
        forecast_recursive(model.net, model.scaler, series.values, opt.horizon);

    TimeSeries ahead;
    YearMonth ym = series.timestamps.back();
    for (double v : predictions) {
        ym = next_month(ym);
        ahead.timestamps.push_back(ym);
        ahead.values.push_back(v);
    }
    const std::string csv = series_csv(ahead);
    if (opt.out.empty()) {
        std::cout << csv;
    } else {
        write_text_file(opt.out, csv);
        std::cout << "wrote " << opt.out << '\n';
    }
}

struct SweepOptions {
    std::string alpha_grid = "0.1:1.0:0.1";
    std::string dump_grid = "0.5:0.95:0.05";
    int runs = 1;
    int jobs = 1;
    bool score_min = false;
    double decay_sharpness = 1.0;
    bool damp_per_iteration = false;
    std::string function;
    int dim = 10;
    ArchOptions arch;
    PsoConfig pso;
    std::string out;
};

void run_sweep(const SweepOptions& opt) {
    SweepSpec spec;
    spec.alpha_grid = parse_grid(opt.alpha_grid);
    spec.dump_grid = parse_grid(opt.dump_grid);
    spec.runs_per_cell = opt.runs;
    spec.base = opt.pso;
    spec.decay_sharpness = opt.decay_sharpness;
    spec.damp_per_iteration = opt.damp_per_iteration;
    spec.score_by_min = opt.score_min;
    spec.jobs = opt.jobs;

    Objective objective;
    int dim = 0;
    if (!opt.function.empty()) {
        objective = benchmark_objective(opt.function, opt.dim);
        dim = opt.dim;
    } else {
        const TimeSeries series = load_series(opt.arch.data);
        const ForecastTask task = opt.arch.task(series.values);
        const NarNetwork net_template =
            make_network(task.lags, task.hidden_sizes, task.hidden_activation,
                         task.output_activation);
        dim = static_cast<int>(param_count(task.lags, task.hidden_sizes));
        if (task.random_split) {
            const LagDataset all_rows = make_lag_dataset(task.values, task.lags);
            const RowSplit rows = random_row_split(all_rows.size(), task.ratios,
                                                   row_split_seed(opt.pso.seed));
            std::vector<double> train_values;
            for (std::size_t r : rows.train) {
                train_values.insert(train_values.end(), all_rows.inputs[r].begin(),
                                    all_rows.inputs[r].end());
                train_values.push_back(all_rows.targets[r]);
            }
            const Scaler scaler = fit_scaler(train_values);
            LagDataset train_rows;
            train_rows.lags = all_rows.lags;
            for (std::size_t r : rows.train) {
                train_rows.inputs.push_back(all_rows.inputs[r]);
                train_rows.targets.push_back(all_rows.targets[r]);
            }
            objective = forecast_fitness(net_template, scaler, train_rows);
        } else {
            const SeriesSplit split = split_series(task.values, task.ratios);
            const Scaler scaler = fit_scaler(split.train);
            const LagDataset train_data = make_lag_dataset(split.train, task.lags);
            objective = forecast_fitness(net_template, scaler, train_data);
        }
    }

    const SweepResult result = grid_sweep(spec, dim, objective);
    const std::string csv = sweep_csv(result);
    if (opt.out.empty()) {
        std::cout << csv;
    } else {
        write_text_file(opt.out, csv);
        const SweepCell& best = result.cells[result.best_index];
        nlohmann::json line = {{"cells", result.cells.size()},
                               {"best",
                                {{"alpha", best.alpha},
                                 {"alpha_dump", best.alpha_dump},
                                 {"mean_pe", best.mean_pe},
                                 {"best_pe", best.best_pe},
                                 {"runs", best.runs}}},
                               {"out", opt.out}};
        std::cout << line.dump() << '\n';
    }
}

struct CompareOptions {
    ArchOptions arch;
    PsoConfig pso;
    StabOptions stab;
    std::vector<std::string> variant_specs;
    int trials = 10;
    int jobs = 1;
    std::string tail = "one";
    double significance = 0.05;
    bool report_nmse = false;
    std::string out;
};

void run_compare(const CompareOptions& opt) {
    if (opt.variant_specs.size() < 2) {
        throw std::invalid_argument("compare needs at least two --variant specs");
    }
    std::vector<std::pair<std::string, IwConfig>> variants;
    variants.reserve(opt.variant_specs.size());
    for (const auto& spec : opt.variant_specs) {
        variants.push_back(parse_variant(spec));
    }
    const Tail tail = opt.tail == "one" ? Tail::one_tailed : Tail::two_tailed;

    const TimeSeries series = load_series(opt.arch.data);
    const ForecastTask task = opt.arch.task(series.values);
    const ComparisonReport report =
        compare_variants(task, variants, opt.trials, opt.pso, opt.jobs, opt.stab.window,
                         opt.stab.rel_tol, opt.significance, tail);

    nlohmann::json doc = envelope("compare");
    doc["data"] = opt.arch.data;
    doc["n"] = series.size();
    doc["arch"] = opt.arch.arch_json();
    doc["pso"] = pso_json(opt.pso);
    doc.update(comparison_json(report, opt.report_nmse));
    if (!opt.out.empty()) {
        write_text_file(opt.out, doc.dump(2) + "\n");
    }
    std::cout << doc.dump(2) << '\n';
}

struct BenchOptions {
    std::string function = "sphere";
    int dim = 10;
    PsoConfig pso;
    IwOptions iw;
    StabOptions stab;
    std::string out_prefix;
};

void run_bench(const BenchOptions& opt) {
    const IwConfig iw = opt.iw.resolve();
    const Objective objective = benchmark_objective(opt.function, opt.dim);
    const RunResult run = run_pso(opt.pso, opt.dim, objective, iw);
    const std::optional<int> stab =
        stabilization_iteration(run.trace, opt.stab.window, opt.stab.rel_tol);

    nlohmann::json doc = envelope("bench");
    doc["function"] = opt.function;
    doc["dim"] = opt.dim;
    doc["pso"] = pso_json(opt.pso);
    doc["iw"] = iw_json(iw);
    doc["result"] = {{"gbest_fitness", run.gbest_fitness},
                     {"iterations", run.iterations_run},
                     {"elapsed_seconds", run.elapsed_seconds},
                     {"stabilization_iteration", stabilization_json(stab)},
                     {"stab_window", opt.stab.window},
                     {"stab_rel_tol", opt.stab.rel_tol}};
    if (!opt.out_prefix.empty()) {
        const std::string trace_path = opt.out_prefix + ".trace.csv";
        const std::string report_path = opt.out_prefix + ".report.json";
        doc["artifacts"] = {{"trace", trace_path}, {"report", report_path}};
        write_text_file(trace_path, trace_csv(run.trace));
        write_text_file(report_path, doc.dump(2) + "\n");
    }
    std::cout << doc.dump(2) << '\n';
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    const std::vector<std::string> parts = split_on(text, ':');
    if (parts.size() == 1) {
        return {parse_double(parts[0])};
    }
    if (parts.size() != 3) {
        throw std::invalid_argument("grid '" + text + "' must be VALUE or START:STOP:STEP");
    }
    const double start = parse_double(parts[0]);
    const double stop = parse_double(parts[1]);
    const double step = parse_double(parts[2]);
    if (!(step > 0.0)) {
        throw std::invalid_argument("grid step must be positive");
    }
    if (start > stop + 1e-9) {
        throw std::invalid_argument("grid start exceeds stop");
    }
    std::vector<double> grid;
    for (double v = start; v <= stop + 1e-9; v += step) {
        // Snap accumulated float drift so grid values print cleanly and the
        // stop value is hit exactly when reachable.
        double snapped = std::round(v * 1e9) / 1e9;
        if (std::fabs(snapped - stop) <= 1e-9) {
            snapped = stop;
        }
        grid.push_back(snapped);
    }
    return grid;
}

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"Swarm-trained lag forecaster and inertia-weight lab"};
    app.name("rdvswarm");
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    TrainOptions train;
    auto* train_cmd =
        app.add_subcommand("train", "Fit a forecaster on a series and report its scores");
    add_arch_options(train_cmd, train.arch, true);
    add_pso_options(train_cmd, train.pso);
    add_iw_options(train_cmd, train.iw);
    add_stab_options(train_cmd, train.stab);
    train_cmd->add_option("--out", train.out_prefix,
                          "Prefix for .model.json, .trace.csv, and .report.json");
    train_cmd->add_flag("--nmse", train.report_nmse,
                        "Also report the unrooted variant of nrmse");
    train_cmd->add_flag("--literal-pe", train.literal_pe,
                        "Report position error with the unsquared literal formula");

    ForecastOptions forecast;
    auto* forecast_cmd =
        app.add_subcommand("forecast", "Roll a saved model forward past a series");
    forecast_cmd->add_option("--model", forecast.model, "Model JSON from train --out")
        ->required();
    forecast_cmd->add_option("--data", forecast.data, "History CSV (month,value header)")
        ->required();
    forecast_cmd->add_option("--horizon", forecast.horizon, "Months to forecast")
        ->capture_default_str();
    forecast_cmd->add_option("--out", forecast.out, "Write the forecast CSV here");

    SweepOptions sweep;
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Grid-search (alpha, alpha_dump) for the rdv schedule");
    sweep_cmd->add_option("--alpha-grid", sweep.alpha_grid, "alpha grid START:STOP:STEP")
        ->capture_default_str();
    sweep_cmd->add_option("--dump-grid", sweep.dump_grid, "alpha_dump grid START:STOP:STEP")
        ->capture_default_str();
    sweep_cmd->add_option("--runs", sweep.runs, "Runs per grid cell")->capture_default_str();
    sweep_cmd->add_option("--jobs", sweep.jobs, "Worker threads")->capture_default_str();
    sweep_cmd->add_flag("--score-min", sweep.score_min,
                        "Rank cells by their best run instead of the mean");
    sweep_cmd->add_option("--decay-sharpness", sweep.decay_sharpness,
                          "Decay-gate sharpness for the swept schedule")
        ->capture_default_str();
    sweep_cmd->add_flag("--damp-per-iteration", sweep.damp_per_iteration,
                        "Damp alpha once per iteration instead of per particle query");
    auto* sweep_fn = sweep_cmd->add_option("--function", sweep.function,
                                           "Benchmark objective to sweep on")
                         ->check(CLI::IsMember({"sphere", "rastrigin", "rosenbrock"}));
    sweep_cmd->add_option("--dim", sweep.dim, "Benchmark dimension")->capture_default_str();
    auto* sweep_data = add_arch_options(sweep_cmd, sweep.arch, false);
    sweep_fn->excludes(sweep_data);
    sweep_data->excludes(sweep_fn);
    add_pso_options(sweep_cmd, sweep.pso);
    sweep_cmd->add_option("--out", sweep.out, "Write the sweep CSV here");

    CompareOptions compare;
    auto* compare_cmd = app.add_subcommand(
        "compare", "Train inertia variants on paired seeds and test the differences");
    add_arch_options(compare_cmd, compare.arch, true);
    add_pso_options(compare_cmd, compare.pso);
    add_stab_options(compare_cmd, compare.stab);
    compare_cmd
        ->add_option("--variant", compare.variant_specs,
                     "Strategy spec NAME=KIND[:PARAM...] (first is proposed, second baseline)")
        ->expected(-1);
    compare_cmd->add_option("--runs", compare.trials, "Paired trials per variant")
        ->capture_default_str();
    compare_cmd->add_option("--jobs", compare.jobs, "Worker threads")->capture_default_str();
    compare_cmd->add_option("--tail", compare.tail, "t-test tail")
        ->check(CLI::IsMember({"one", "two"}))
        ->capture_default_str();
    compare_cmd->add_option("--significance", compare.significance, "Significance level")
        ->capture_default_str();
    compare_cmd->add_flag("--nmse", compare.report_nmse,
                          "Also report the unrooted variant of nrmse");
    compare_cmd->add_option("--out", compare.out, "Write the comparison JSON here");

    BenchOptions bench;
    auto* bench_cmd =
        app.add_subcommand("bench", "Run the optimizer once on a benchmark function");
    bench_cmd->add_option("--function", bench.function, "Benchmark objective")
        ->check(CLI::IsMember({"sphere", "rastrigin", "rosenbrock"}))
        ->capture_default_str();
    bench_cmd->add_option("--dim", bench.dim, "Benchmark dimension")->capture_default_str();
    add_pso_options(bench_cmd, bench.pso);
    add_iw_options(bench_cmd, bench.iw);
    add_stab_options(bench_cmd, bench.stab);
    bench_cmd->add_option("--out", bench.out_prefix,
                          "Prefix for .trace.csv and .report.json");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("rdvswarm");
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (train_cmd->parsed()) {
            run_train(train);
        } else if (forecast_cmd->parsed()) {
            run_forecast(forecast);
        } else if (sweep_cmd->parsed()) {
            if (sweep.function.empty() && sweep.arch.data.empty()) {
                throw std::invalid_argument("sweep needs either --function or --data");
            }
            run_sweep(sweep);
        } else if (compare_cmd->parsed()) {
            run_compare(compare);
        } else if (bench_cmd->parsed()) {
            run_bench(bench);
        }
        return 0;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const DegenerateError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace rdvswarm::cli
