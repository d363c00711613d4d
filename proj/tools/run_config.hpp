#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsconvex/convexity_classes.hpp"

namespace hsconvex::cli {

/// Thrown when --help was requested; carries the text to print.
struct HelpRequested {
    std::string text;
};

/// Fully resolved run configuration: defaults, then config file, then flags,
/// with later layers overriding earlier ones. A run is reproducible from this
/// plus the seed.
struct RunConfig {
    std::string subcommand;

    std::optional<std::string> f;
    std::optional<std::string> g;
    std::optional<std::string> h;
    std::optional<double> s;
    std::optional<double> a;
    std::optional<double> b;
    std::optional<std::string> theorem;
    std::optional<std::string> klass;  // "class" in flags and config files
    std::optional<int> prop;

    double tol = 1e-10;
    int grid = 41;
    std::string format = "json";
    std::optional<std::string> out;
    std::uint64_t seed = 42;
    bool check_hypothesis = false;
    bool chain = false;
    std::optional<double> p;

    // Search knobs beyond the grid size.
    std::optional<double> search_tolerance_scale;
    std::optional<std::int64_t> search_budget;
    std::optional<int> refine_top_k;

    SearchConfig search_config() const;
};

/// Parses argv (and an optional --config JSON file). Throws
/// std::invalid_argument / CLI11 errors on bad usage; the caller maps those
/// to exit status 2.
RunConfig parse_arguments(const std::vector<std::string>& args);

}  // namespace hsconvex::cli
