#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "gridnet/grid_graph.hpp"

namespace gridnet {

/// Unweighted combinatorial Laplacian L = D - A over the simple view of g
/// (parallel bundles count once, D holds distinct-neighbor degrees).
Eigen::MatrixXd laplacian(const GridGraph& g);

struct Bisection {
    std::vector<std::uint32_t> side_a;         // positive Fiedler components
    std::vector<std::uint32_t> side_b;         // negative Fiedler components
    std::vector<std::uint32_t> critical_edges; // ids into g.edges(), crossing the cut
    double fiedler_value = 0.0;                // second-smallest Laplacian eigenvalue
};

/// Splits a connected graph of order >= 2 along the sign of the Fiedler
/// vector. Components with |v_i| < 1e-12 go to the currently smaller side
/// (ties to side_a). Dense symmetric eigensolve up to order 512; shift-invert
/// inverse iteration above, residual |Lv - lambda v|_inf < 1e-8.
Bisection fiedler_bisect(const GridGraph& g);

/// Bisection tree. Children cover the two sides of the parent cut; when a side
/// is internally disconnected the recursion descends into its largest
/// connected component and says so in the flag.
struct BisectionTree {
    GridGraph graph; // the graph this level's cut was computed on
    Bisection cut;
    bool a_used_largest_component = false;
    bool b_used_largest_component = false;
    std::unique_ptr<BisectionTree> child_a;
    std::unique_ptr<BisectionTree> child_b;
};

/// Recursively bisects depth levels deep (depth >= 1); stops early on sides of
/// order < 2.
BisectionTree recursive_bisect(const GridGraph& g, unsigned depth);

} // namespace gridnet
