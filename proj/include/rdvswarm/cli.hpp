#pragma once

#include <string>
#include <vector>

namespace rdvswarm::cli {

/// Runs one command given argv-style arguments (subcommand first, no
/// program name) and returns the process exit code: 0 success, 2 usage or
/// argument error, 3 unreadable or malformed data, 4 degenerate statistic.
int dispatch(const std::vector<std::string>& args);

/// Expands "start:stop:step" (stop included when reachable within 1e-9) or
/// a single value into a grid. Values are snapped to nine decimals.
std::vector<double> parse_grid(const std::string& text);

}  // namespace rdvswarm::cli
