#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gridnet/grid_graph.hpp"

namespace gridnet::detail {

/// Flat adjacency over the simple view of a graph (parallel bundles already
/// collapsed to their minimum weight). All algorithms below accept an optional
/// alive mask; dead vertices are treated as absent.
struct Csr {
    std::uint32_t n = 0;
    std::vector<std::uint32_t> offsets;
    struct Arc {
        std::uint32_t to = 0;
        double w = 0.0;
    };
    std::vector<Arc> arcs;

    static Csr from_graph(const GridGraph& g);

    /// Same topology but arcs weighted by ampacity, parallel bundles collapsed
    /// to the minimum ampacity. Requires every edge to carry max_current.
    static Csr from_graph_currents(const GridGraph& g);

    std::span<const Arc> out(std::uint32_t v) const {
        return {arcs.data() + offsets[v], arcs.data() + offsets[v + 1]};
    }
};

inline constexpr std::int32_t kUnreachable = -1;

/// Hop distances from s; kUnreachable where not reachable.
void bfs_hops(const Csr& g, std::uint32_t s, const std::vector<char>* alive,
              std::vector<std::int32_t>& hops);

/// Minimum-weight distances from s; +inf where not reachable.
void dijkstra(const Csr& g, std::uint32_t s, const std::vector<char>* alive,
              std::vector<double>& dist);

struct DistHop {
    double w = 0.0;
    std::int32_t h = kUnreachable;
};

/// Minimum-weight distances with the hop count of the fewest-hop path among
/// all minimum-weight paths (lexicographic (weight, hops) relaxation).
void dijkstra_hops(const Csr& g, std::uint32_t s, const std::vector<char>* alive,
                   std::vector<DistHop>& out);

/// Brandes accumulation over all sources. Each unordered pair contributes once.
/// fractional == true: per-pair credit sigma_st(v)/sigma_st (the default mode);
/// fractional == false: raw count of shortest paths containing v.
std::vector<double> brandes(const Csr& g, const std::vector<char>* alive, bool weighted,
                            bool fractional);

/// Size of the largest connected component among alive vertices.
std::size_t largest_component_size(const Csr& g, const std::vector<char>* alive);

} // namespace gridnet::detail
