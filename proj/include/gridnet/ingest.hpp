#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gridnet/grid_graph.hpp"

namespace gridnet {

/// Parsed but not yet graph-validated content of a grid description.
struct GridRecords {
    std::vector<NodeRecord> nodes;
    std::vector<EdgeRecord> edges;
};

/// Parses the two CSV tables of a grid description.
/// nodes.csv: `id,kind` with kind in {substation, transformer, consumer}.
/// edges.csv: `from,to,resistance_ohm_per_km,length_km,is_link,max_current_a`
/// where is_link is 0/1, resistance and length may be empty only on link rows
/// and max_current_a may always be empty. Every error is a ParseError carrying
/// the 1-based line number and the offending field.
GridRecords parse_grid_csv(std::istream& nodes_csv, std::istream& edges_csv);

/// Parses the JSON mirror: {"version": 1, "nodes": [...], "edges": [...]}
/// with the same field names as the CSV headers.
GridRecords parse_grid_json(std::istream& in);

/// Writes records back out; parse(write(r)) reproduces r exactly.
void write_nodes_csv(const GridRecords& records, std::ostream& out);
void write_edges_csv(const GridRecords& records, std::ostream& out);
void write_grid_json(const GridRecords& records, std::ostream& out);

/// Loads records from a grid directory (nodes.csv + edges.csv) or a JSON file.
GridRecords load_grid_records(const std::filesystem::path& path);

/// load_grid_records followed by graph construction.
GridGraph load_grid(const std::filesystem::path& path);

/// 16-hex-digit digest of the records' canonical JSON form, used to tie a
/// report to its input.
std::string grid_digest(const GridRecords& records);

struct WeightDist {
    enum class Kind { Constant, Uniform };
    Kind kind = Kind::Constant;
    double a = 1.0; // constant value, or lower bound
    double b = 1.0; // upper bound (uniform only)

    static WeightDist constant(double w) { return {Kind::Constant, w, w}; }
    static WeightDist uniform(double lo, double hi) { return {Kind::Uniform, lo, hi}; }
};

/// Recipe for a random connected test grid. Resistances come from weight_dist
/// (lengths fixed at 1 km); ampacities are drawn from current_dist when given,
/// otherwise absent.
struct SyntheticSpec {
    std::size_t order = 0;
    std::size_t size = 0;
    WeightDist weight_dist;
    std::uint64_t seed = 0;
    std::optional<WeightDist> current_dist;
};

/// Connected graph with exactly spec.order nodes and spec.size edges,
/// identical for identical specs. Throws InfeasibleError when no connected
/// simple graph fits the order/size pair.
GridGraph generate_synthetic_grid(const SyntheticSpec& spec);

} // namespace gridnet
