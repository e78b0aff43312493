#pragma once

#include <json.hpp>

#include "rdvswarm/experiments.hpp"
#include "rdvswarm/inertia.hpp"
#include "rdvswarm/metrics.hpp"
#include "rdvswarm/pso_engine.hpp"
#include "rdvswarm/stats.hpp"

namespace rdvswarm {

/// Metric values are rounded to nine significant digits before emission so
/// reports are stable re-parse targets. include_nmse adds the unrooted
/// variant of nrmse.
nlohmann::json metrics_json(const MetricsReport& report, bool include_nmse = false);

nlohmann::json summary_json(const RunSummary& summary);

nlohmann::json ttest_json(const TTestResult& result);

/// Strategy descriptor, e.g. {"iw":"rdv","alpha":0.4,"alpha_dump":0.9,
/// "decay_sharpness":1.0}. Only the chosen kind's fields appear.
nlohmann::json iw_json(const IwConfig& cfg);

nlohmann::json pso_json(const PsoConfig& cfg);

nlohmann::json comparison_json(const ComparisonReport& report, bool include_nmse = false);

}  // namespace rdvswarm
