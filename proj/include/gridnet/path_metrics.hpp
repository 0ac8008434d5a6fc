#pragma once

#include <cstdint>

#include "gridnet/grid_graph.hpp"

namespace gridnet {

/// Per-component summary of every scalar the analysis pipeline reports.
/// For a single-node component all path statistics are 0.
struct MetricsReport {
    std::size_t order = 0;
    std::size_t size = 0;
    double avg_degree = 0.0;
    double apl = 0.0;
    double cpl = 0.0;
    double cc = 0.0;
    double wcpl = 0.0;
    double edge_avg_weight = 0.0;
    double nwcpl = 0.0;
    double avg_traversed_increase_pct = 0.0;
};

/// Mean hop distance over ordered vertex pairs. Requires a connected graph of
/// order >= 2 (DisconnectedError / ValidationError otherwise).
double average_path_length(const GridGraph& g);

/// Median over vertices of the mean hop distance to every other vertex; an
/// even count of vertices takes the arithmetic mean of the central two.
double characteristic_path_length(const GridGraph& g);

/// Mean over all vertices of the neighborhood link density; vertices of
/// degree < 2 contribute 0.
double clustering_coefficient(const GridGraph& g);

/// CPL over minimum-resistance (Dijkstra) distances, in Ohm.
double weighted_cpl(const GridGraph& g);

/// WCPL divided by the mean edge weight. Throws ValidationError when the mean
/// edge weight is not positive.
double normalized_wcpl(double wcpl, double edge_avg_weight);

/// Sum of incident edge weights of v, in Ohm. Isolated vertex: 0.
double weighted_degree(const GridGraph& g, std::uint32_t v);

/// Mean hop counts over ordered pairs, along unweighted shortest paths and
/// along minimum-weight paths (fewest hops breaking weight ties).
struct PairHopStats {
    double mean_hops_unweighted = 0.0;
    double mean_hops_weighted = 0.0;
};
PairHopStats pair_hop_stats(const GridGraph& g);

/// Percentage increase of the mean weighted-path hop count over the mean
/// unweighted hop count: 100 * (mean_w - mean_u) / mean_u.
double traversed_nodes_increase(const GridGraph& g);

/// All scalar metrics in one pass. Requires a connected graph.
MetricsReport compute_metrics(const GridGraph& g);

} // namespace gridnet
