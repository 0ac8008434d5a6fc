#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gridnet/errors.hpp"

namespace gridnet {

/// Role of a node in the physical grid. The role does not influence any of the
/// topological metrics; it is carried through so reports can echo it back.
enum class NodeKind { Substation, Transformer, Consumer };

const char* to_string(NodeKind kind);
std::optional<NodeKind> node_kind_from_string(std::string_view text);

struct NodeRecord {
    std::string id;
    NodeKind kind = NodeKind::Substation;
};

/// One cable or link between two named nodes, as it appears in input data.
/// Regular edges need a resistance (Ohm/km) and a length (km); link edges
/// (busbars, switches) need neither. Ampacity is optional everywhere.
struct EdgeRecord {
    std::string endpoint_a;
    std::string endpoint_b;
    std::optional<double> resistance_ohm_per_km;
    std::optional<double> length_km;
    bool is_link = false;
    std::optional<double> max_current_a;
};

/// Conventional near-zero weight given to link edges so they are always
/// preferred by shortest-path computations without ever tying a real cable.
inline constexpr double kLinkWeight = 1e-9;

/// Internal edge: endpoints are dense node indices, weight is total resistance.
struct GridEdge {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    double weight = 0.0;
    std::optional<double> max_current;
};

/// Immutable weighted undirected multigraph over the grid's nodes.
///
/// Parallel edges are kept (they count toward size() and degree()), but the
/// neighbor view used by path and matrix computations collapses each parallel
/// bundle to its minimum-weight member.
class GridGraph {
public:
    struct Neighbor {
        std::uint32_t node = 0;
        double weight = 0.0;
    };

    GridGraph() = default;

    /// Validates records and assembles the graph. Throws ValidationError on an
    /// unknown endpoint id, a self-loop, a duplicate node id, a missing or
    /// negative resistance/length on a regular edge, or a non-positive ampacity.
    static GridGraph build(std::vector<NodeRecord> nodes, const std::vector<EdgeRecord>& edges);

    /// Assembles a graph from already-resolved edges (generators, subgraphs).
    /// Throws ValidationError on out-of-range endpoints or self-loops.
    static GridGraph from_edges(std::vector<NodeRecord> nodes, std::vector<GridEdge> edges);

    std::size_t order() const noexcept { return nodes_.size(); }
    std::size_t size() const noexcept { return edges_.size(); }
    bool empty() const noexcept { return nodes_.empty(); }

    const std::vector<NodeRecord>& nodes() const noexcept { return nodes_; }
    const NodeRecord& node(std::uint32_t v) const { return nodes_.at(v); }
    const std::vector<GridEdge>& edges() const noexcept { return edges_; }

    /// Dense index of the node with the given id, if any.
    std::optional<std::uint32_t> find_node(std::string_view id) const;

    /// Number of incident edges (parallel edges counted individually).
    std::size_t degree(std::uint32_t v) const;

    /// Sum of the weights of all incident edges, in Ohm.
    double weighted_degree(std::uint32_t v) const;

    /// 2M/N. Throws ValidationError on an empty graph.
    double avg_degree() const;

    /// Mean weight over all edges (parallel edges and links included).
    /// 0 for an edgeless graph.
    double edge_avg_weight() const;

    /// Distinct neighbors of v, sorted by index, each with the minimum weight
    /// over the parallel bundle.
    std::span<const Neighbor> neighbors(std::uint32_t v) const;

    bool is_connected() const;

    /// Connected components as standalone graphs, ordered by descending order
    /// with ties broken by smallest original node id. Each component's
    /// origin() maps its dense indices back to indices in this graph.
    std::vector<GridGraph> connected_components() const;

    /// Subgraph induced by the given node indices (kept in the given order),
    /// retaining all edges, including parallel ones, between kept nodes.
    GridGraph induced_subgraph(std::span<const std::uint32_t> keep) const;

    /// For graphs produced by connected_components() / induced_subgraph(): the
    /// index of each node in the directly built ancestor graph (chained
    /// subgraph extraction composes the mapping). Identity for built graphs.
    const std::vector<std::uint32_t>& origin() const noexcept { return origin_; }

private:
    void finalize();

    std::vector<NodeRecord> nodes_;
    std::vector<GridEdge> edges_;
    std::vector<std::uint32_t> origin_;
    // simple view (parallel bundles collapsed), CSR layout
    std::vector<std::uint32_t> simple_offsets_;
    std::vector<Neighbor> simple_adj_;
    std::vector<std::uint32_t> multi_degree_;
    std::vector<double> weighted_degree_;
};

struct OrderSizeDegree {
    std::size_t order = 0;
    std::size_t size = 0;
    double avg_degree = 0.0;
};

/// (N, M, 2M/N) in one call. Throws ValidationError on an empty graph.
OrderSizeDegree order_size_avg_degree(const GridGraph& g);

} // namespace gridnet
