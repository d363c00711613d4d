#pragma once

#include <string>

#include <json.hpp>

#include "hsconvex/convexity_classes.hpp"
#include "hsconvex/hadamard.hpp"
#include "hsconvex/means.hpp"
#include "run_config.hpp"

namespace hsconvex::cli {

using ordered_json = nlohmann::ordered_json;

/// Serializes the document with stable key order and every floating-point
/// number printed with 17 significant digits, so identical runs produce
/// byte-identical output.
std::string dump_canonical(const ordered_json& doc);

ordered_json config_json(const RunConfig& config);
ordered_json verdict_json(const MembershipVerdict& verdict);
ordered_json inequality_json(const InequalityReport& report);
ordered_json chain_json(const ChainReport& report);
ordered_json proposition_json(const PropositionReport& report);

/// Assembles {version, seed, config, reports} and renders it in the requested
/// format ("json", "csv" or "text").
std::string render_document(const RunConfig& config, const std::vector<ordered_json>& reports);

/// True when every report in the array says its checks held.
bool all_reports_hold(const std::vector<ordered_json>& reports);

}  // namespace hsconvex::cli
