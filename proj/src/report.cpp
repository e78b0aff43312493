#include "rdvswarm/report.hpp"

#include "rdvswarm/format.hpp"

namespace rdvswarm {

namespace {

double round9(double v) { return round_significant(v, 9); }

}  // namespace

nlohmann::json metrics_json(const MetricsReport& report, bool include_nmse) {
    nlohmann::json doc;
    doc["nrmse"] = round9(report.nrmse);
    doc["mae"] = round9(report.mae);
    if (report.mape) {
        doc["mape"] = round9(*report.mape);
    } else {
        doc["mape"] = nullptr;
        doc["mape_note"] = report.mape_note;
    }
    doc["wape"] = round9(report.wape);
    doc["r2"] = round9(report.r_squared);
    doc["n"] = report.n;
    if (include_nmse) {
        // nrmse is the square root of the unrooted score, so squaring it
        // recovers nmse to within rounding.
        doc["nmse"] = round9(report.nrmse * report.nrmse);
    }
    return doc;
}

nlohmann::json summary_json(const RunSummary& summary) {
    return {{"min", summary.min}, {"max", summary.max}, {"mean", summary.mean}};
}

nlohmann::json ttest_json(const TTestResult& result) {
    return {{"mean_a", result.mean_a},
            {"mean_b", result.mean_b},
            {"sd_a", result.sd_a},
            {"sd_b", result.sd_b},
            {"df", result.df},
            {"t_stat", result.t_stat},
            {"p_value", result.p_value},
            {"alpha_level", result.alpha_level},
            {"significant", result.significant},
            {"tail", tail_name(result.tail)}};
}

nlohmann::json iw_json(const IwConfig& cfg) {
    nlohmann::json doc;
    doc["iw"] = iw_name(cfg.kind);
    switch (cfg.kind) {
        case IwKind::constant:
            doc["w"] = cfg.constant_weight;
            break;
        case IwKind::linear_decreasing:
            doc["w_max"] = cfg.w_max;
            doc["w_min"] = cfg.w_min;
            break;
        case IwKind::random_uniform:
            break;
        case IwKind::rdv:
            doc["alpha"] = cfg.alpha;
            doc["alpha_dump"] = cfg.alpha_dump;
            doc["decay_sharpness"] = cfg.decay_sharpness;
            if (cfg.damp_per_iteration) {
                doc["damp_per_iteration"] = true;
            }
            break;
    }
    return doc;
}

nlohmann::json pso_json(const PsoConfig& cfg) {
    return {{"swarm", cfg.swarm_size},
            {"iters", cfg.max_iterations},
            {"c1", cfg.c1},
            {"c2", cfg.c2},
            {"limit", cfg.position_limit},
            {"init_position", {cfg.init_position_low, cfg.init_position_high}},
            {"init_velocity", {cfg.init_velocity_low, cfg.init_velocity_high}},
            {"seed", cfg.seed}};
}

nlohmann::json comparison_json(const ComparisonReport& report, bool include_nmse) {
    nlohmann::json doc;
    doc["trials"] = report.trials;
    doc["alpha_level"] = report.alpha_level;
    doc["tail"] = tail_name(report.tail);

    doc["variants"] = nlohmann::json::array();
    for (const auto& variant : report.variants) {
        nlohmann::json v;
        v["name"] = variant.name;
        v["iw"] = iw_json(variant.iw);
        v["trials"] = nlohmann::json::array();
        for (const auto& trial : variant.trials) {
            nlohmann::json t;
            t["seed"] = trial.seed;
            t["test"] = metrics_json(trial.test_raw, include_nmse);
            t["pe_scaled"] = trial.pe_scaled;
            t["pe_raw"] = trial.pe_raw;
            t["elapsed_seconds"] = trial.elapsed_seconds;
            if (trial.stabilization) {
                t["stabilization_iteration"] = *trial.stabilization;
            } else {
                t["stabilization_iteration"] = nullptr;
            }
            v["trials"].push_back(std::move(t));
        }
        doc["variants"].push_back(std::move(v));
    }

    doc["accuracy"] = nlohmann::json::array();
    for (const auto& cmp : report.accuracy) {
        nlohmann::json c;
        c["metric"] = cmp.metric;
        c["a"] = cmp.a ? summary_json(*cmp.a) : nlohmann::json(nullptr);
        c["b"] = cmp.b ? summary_json(*cmp.b) : nlohmann::json(nullptr);
        c["ttest"] = cmp.ttest ? ttest_json(*cmp.ttest) : nlohmann::json(nullptr);
        if (!cmp.note.empty()) {
            c["note"] = cmp.note;
        }
        doc["accuracy"].push_back(std::move(c));
    }

    doc["convergence"] = nlohmann::json::array();
    for (const auto& cmp : report.convergence) {
        nlohmann::json c;
        c["quantity"] = cmp.quantity;
        c["a"] = cmp.a ? summary_json(*cmp.a) : nlohmann::json(nullptr);
        c["b"] = cmp.b ? summary_json(*cmp.b) : nlohmann::json(nullptr);
        auto set_pct = [&c](const char* key, const std::optional<double>& v) {
            c[key] = v ? nlohmann::json(*v) : nlohmann::json(nullptr);
        };
        set_pct("improvement_min_pct", cmp.improvement_min_pct);
        set_pct("improvement_max_pct", cmp.improvement_max_pct);
        set_pct("improvement_mean_pct", cmp.improvement_mean_pct);
        if (!cmp.note.empty()) {
            c["note"] = cmp.note;
        }
        doc["convergence"].push_back(std::move(c));
    }
    return doc;
}

}  // namespace rdvswarm
