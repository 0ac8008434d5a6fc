#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "gridnet/ingest.hpp"

namespace gridnet {

struct AnalyzeOptions {
    std::uint64_t seed = 0;
    bool with_cost = false;
    unsigned baseline_trials = 10;
    double removal_step = 0.05;
    bool with_resilience = true;
};

/// Runs the full per-component pipeline and assembles the report bundle.
/// Sections that cannot be computed (too small a component, missing ampacity
/// data, cost disabled) carry a "skipped" entry with the reason instead of
/// failing the run. Every section is tagged with the component id and the
/// input digest. Identical records, options and seed produce an identical
/// bundle.
nlohmann::json build_bundle(const GridRecords& records, const AnalyzeOptions& options);

/// Writes bundle.json plus the plot-data CSVs (metrics, per-component CCDFs,
/// removal traces, cost surface and markers) into out_dir, creating it first.
void write_bundle_outputs(const nlohmann::json& bundle, const std::filesystem::path& out_dir);

/// Renders one of the text tables from a bundle:
/// metrics | weighted | critical-edges | centrality.
/// Values are shown with 6 significant digits; skipped sections render as
/// "skipped" rows. Throws ValidationError on an unknown table name.
std::string render_table(const nlohmann::json& bundle, std::string_view table);

} // namespace gridnet
