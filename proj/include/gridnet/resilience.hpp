#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gridnet/grid_graph.hpp"

namespace gridnet {

enum class RemovalKind { Random, Degree, Betweenness, WeightedDegree };

const char* to_string(RemovalKind kind);

struct RemovalPolicy {
    RemovalKind kind = RemovalKind::Random;
    std::uint64_t seed = 0; // used by Random only
    /// true: re-rank the metric on the surviving graph before every batch;
    /// false: rank once on the initial graph.
    bool recompute = true;
};

struct TracePoint {
    double f = 0.0; // fraction of the ORIGINAL order removed so far
    double s = 0.0; // largest-connected-component order / original order
};

struct RemovalTrace {
    std::vector<TracePoint> points; // starts at (0, s0), ends at (1, 0)
    RemovalPolicy policy;
    std::size_t original_order = 0;
};

/// Removes batches of ceil(step * N0) nodes until none remain, recording
/// (f, s) after each batch. Deterministic policies pick the highest metric
/// first with ties broken by ascending node index; the random policy draws
/// uniformly without replacement, seeded. Requires a connected graph.
RemovalTrace simulate_removal(const GridGraph& g, RemovalPolicy policy, double step);

/// s at the largest recorded f' <= f (step function, right-open).
double robustness_at(const RemovalTrace& trace, double f);

/// One trace per policy. Random policies are averaged pointwise over `trials`
/// runs seeded seed+0 .. seed+trials-1; other policies run once.
std::vector<RemovalTrace> compare_policies(const GridGraph& g,
                                           std::span<const RemovalPolicy> policies, double step,
                                           unsigned trials);

} // namespace gridnet
