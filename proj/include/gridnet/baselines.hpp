#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "gridnet/grid_graph.hpp"
#include "gridnet/path_metrics.hpp"

namespace gridnet {

/// Edge list of a connected graph with exactly `order` nodes and `size`
/// edges: a uniform random labeled spanning tree plus distinct extra edges
/// drawn uniformly from the remaining pairs. Throws InfeasibleError when the
/// size bounds (order-1 <= size <= order*(order-1)/2) do not hold.
std::vector<std::pair<std::uint32_t, std::uint32_t>>
random_connected_edge_set(std::size_t order, std::size_t size, std::mt19937_64& rng);

/// The same construction packaged as a unit-weight GridGraph with node ids
/// n0, n1, ... Deterministic per seed.
GridGraph random_connected_graph(std::size_t order, std::size_t size, std::uint64_t seed);

struct BaselineMetrics {
    double apl = 0.0;
    double cpl = 0.0;
    double cc = 0.0;
};

/// Mean APL/CPL/CC over `trials` random connected graphs, trial t seeded
/// seed + t.
BaselineMetrics baseline_metrics(std::size_t order, std::size_t size, std::uint64_t seed,
                                 unsigned trials);

struct SmallWorldVerdict {
    double cpl_ratio = 0.0;
    double cc_ratio = 0.0;
    bool cc_ratio_defined = false; // false when the baseline CC is 0
    bool ws_condition_holds = false;
    bool is_small_world = false;
};

/// Small-world check of a sample against its matched random baseline:
/// CPL comparable (ratio <= cpl_tolerance) and CC dominant
/// (ratio >= cc_dominance). ws_condition_holds operationalizes
/// N >> <k> >> ln N >> 1 as N > 10<k>, <k> > 2 ln N, ln N > 1.
SmallWorldVerdict small_world_test(const MetricsReport& sample, const BaselineMetrics& baseline,
                                   double cpl_tolerance = 2.0, double cc_dominance = 4.0);

} // namespace gridnet
