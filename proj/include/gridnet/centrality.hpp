#pragma once

#include <cstdint>
#include <vector>

#include "gridnet/grid_graph.hpp"

namespace gridnet {

enum class BetweennessMode {
    /// Each unordered pair distributes one unit of credit over the interior
    /// vertices of its shortest paths: credit(v) = sigma_st(v) / sigma_st.
    FractionalPairShare,
    /// Plain count of shortest paths containing the vertex as interior.
    RawPathCount,
};

struct BetweennessVector {
    std::vector<double> values; // indexed by vertex
    bool weighted_paths = false;
    BetweennessMode mode = BetweennessMode::FractionalPairShare;
};

/// Betweenness over all unordered pairs, endpoints excluded, each pair counted
/// once. weighted selects minimum-resistance paths instead of fewest-hop
/// paths. Requires a connected graph of order >= 2.
BetweennessVector betweenness(const GridGraph& g, bool use_weights,
                              BetweennessMode mode = BetweennessMode::FractionalPairShare);

struct CentralityEntry {
    std::uint32_t rank = 0; // 1-based
    std::uint32_t node = 0;
    double score = 0.0;
};

struct CentralityRanking {
    std::vector<CentralityEntry> entries; // descending score, ties by node index
    bool weighted = false;
    unsigned iterations = 0;
};

/// Dominant-eigenvector scores of the (binary or weighted) adjacency matrix,
/// computed by power iteration, all positive, unit Euclidean norm. Converges
/// when the successive-vector infinity-norm difference drops below 1e-10;
/// throws ConvergenceError with the last difference after 10000 iterations.
/// Requires a connected graph.
CentralityRanking eigenvector_centrality(const GridGraph& g, bool use_weights);

} // namespace gridnet
