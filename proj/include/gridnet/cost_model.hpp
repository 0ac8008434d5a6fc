#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridnet/grid_graph.hpp"

namespace gridnet {

/// One loopless (no repeated node) path, with its weight recomputed as the
/// left-to-right sum of edge weights along the node sequence.
struct LooplessPath {
    double weight = 0.0;
    std::vector<std::uint32_t> nodes;
};

/// Up to k minimum-weight loopless paths from source to sink in non-decreasing
/// weight. Ties resolve by fewer hops, then lexicographically smaller node
/// sequence. Returns fewer than k paths when fewer exist; empty when sink is
/// unreachable. Throws ValidationError on invalid endpoints.
std::vector<LooplessPath> k_shortest_loopless_paths(const GridGraph& g, std::uint32_t source,
                                                    std::uint32_t sink, std::size_t k);

/// Transport loss along cables: WCPL over the mean edge weight (same value the
/// metrics report exposes as nwcpl).
double line_losses(const GridGraph& g);

/// Mean number of interior nodes on the minimum-weight path (fewest hops
/// among weight ties), over unordered pairs.
double substation_losses(const GridGraph& g);

/// Mean of the surviving largest-component fraction after removing 20% of the
/// nodes, averaged between the random policy (10 trials) and the recomputed
/// weighted-degree policy; removal step 0.05.
double robustness(const GridGraph& g, std::uint64_t seed);

/// Path diversity: sample floor(0.4 N) nodes without replacement, first half
/// (rounded up) sources and the rest sinks; for every source-sink pair sum the
/// weights of the 10 cheapest loopless paths, reusing the costliest found path
/// for the missing entries when fewer than 10 exist. The grand total is
/// normalized by WCPL. Requires N >= 5.
double redundancy(const GridGraph& g, std::uint64_t seed);

/// WCPL of the ampacity-weighted graph over the mean ampacity. Requires every
/// edge to carry max_current; offenders are listed in the error.
double capacity(const GridGraph& g);

/// Dissipation cost: line_losses + substation_losses.
double alpha(const GridGraph& g);

/// Reliability cost: redundancy / (robustness * ln(capacity)). Throws
/// ValidationError when capacity <= 1 or robustness == 0.
double beta(const GridGraph& g, std::uint64_t seed);

/// Every cost constituent, computed once.
struct CostParams {
    double l_line = 0.0;
    double l_substation = 0.0;
    double rob = 0.0;
    double red = 0.0;
    double cap = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

CostParams cost_params(const GridGraph& g, std::uint64_t seed);

/// Inclusive linear range sampled at `count` points (count == 1 yields lo).
struct AxisRange {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t count = 0;
};

struct PricePoint {
    double alpha = 0.0;
    double beta = 0.0;
    double price = 0.0;
};

/// A network pinned onto the surface at its own (alpha, beta).
struct PriceMarker {
    std::string network_id;
    double alpha = 0.0;
    double beta = 0.0;
};

struct PriceSurface {
    double base = 0.0;
    double alpha_ref = 0.0;
    double beta_ref = 0.0;
    std::vector<double> alphas;
    std::vector<double> betas;
    std::vector<PricePoint> points; // row-major: alpha outer, beta inner
    std::vector<PriceMarker> markers;
};

/// price(alpha, beta) = base * (1 + (alpha/alpha_ref)^2 + (beta/beta_ref)^2)
/// over the grid spanned by the two ranges. Throws ValidationError on empty
/// ranges or nonpositive reference scales.
PriceSurface price_surface(const AxisRange& alpha_range, const AxisRange& beta_range, double base,
                           double alpha_ref, double beta_ref,
                           std::vector<PriceMarker> markers = {});

} // namespace gridnet
