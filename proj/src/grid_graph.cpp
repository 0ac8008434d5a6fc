#include "gridnet/grid_graph.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace gridnet {

const char* to_string(NodeKind kind) {
    switch (kind) {
    case NodeKind::Substation: return "substation";
    case NodeKind::Transformer: return "transformer";
    case NodeKind::Consumer: return "consumer";
    }
    return "substation";
}

std::optional<NodeKind> node_kind_from_string(std::string_view text) {
    if (text == "substation") return NodeKind::Substation;
    if (text == "transformer") return NodeKind::Transformer;
    if (text == "consumer") return NodeKind::Consumer;
    return std::nullopt;
}

GridGraph GridGraph::build(std::vector<NodeRecord> nodes, const std::vector<EdgeRecord>& edges) {
    std::unordered_map<std::string_view, std::uint32_t> index;
    index.reserve(nodes.size());
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
        auto [it, inserted] = index.emplace(nodes[i].id, i);
        if (!inserted)
            throw ValidationError("duplicate node id \"" + nodes[i].id + "\"");
    }

    std::vector<GridEdge> resolved;
    resolved.reserve(edges.size());
    for (const EdgeRecord& e : edges) {
        auto a = index.find(e.endpoint_a);
        if (a == index.end())
            throw ValidationError("edge endpoint \"" + e.endpoint_a + "\" is not a declared node");
        auto b = index.find(e.endpoint_b);
        if (b == index.end())
            throw ValidationError("edge endpoint \"" + e.endpoint_b + "\" is not a declared node");
        if (a->second == b->second)
            throw ValidationError("self-loop on node \"" + e.endpoint_a + "\"");

        double weight = kLinkWeight;
        if (!e.is_link) {
            if (!e.resistance_ohm_per_km)
                throw ValidationError("edge " + e.endpoint_a + "-" + e.endpoint_b +
                                      " is missing resistance_ohm_per_km");
            if (!e.length_km)
                throw ValidationError("edge " + e.endpoint_a + "-" + e.endpoint_b +
                                      " is missing length_km");
            if (*e.resistance_ohm_per_km < 0.0)
                throw ValidationError("negative resistance on edge " + e.endpoint_a + "-" +
                                      e.endpoint_b);
            if (*e.length_km < 0.0)
                throw ValidationError("negative length on edge " + e.endpoint_a + "-" +
                                      e.endpoint_b);
            weight = *e.resistance_ohm_per_km * *e.length_km;
            if (weight <= 0.0)
                throw ValidationError("edge " + e.endpoint_a + "-" + e.endpoint_b +
                                      " has zero weight; resistance and length must be positive");
        }
        if (e.max_current_a && *e.max_current_a <= 0.0)
            throw ValidationError("non-positive max_current_a on edge " + e.endpoint_a + "-" +
                                  e.endpoint_b);
        resolved.push_back(GridEdge{a->second, b->second, weight, e.max_current_a});
    }
    return from_edges(std::move(nodes), std::move(resolved));
}

GridGraph GridGraph::from_edges(std::vector<NodeRecord> nodes, std::vector<GridEdge> edges) {
    GridGraph g;
    g.nodes_ = std::move(nodes);
    for (const GridEdge& e : edges) {
        if (e.a >= g.nodes_.size() || e.b >= g.nodes_.size())
            throw ValidationError("edge endpoint index out of range");
        if (e.a == e.b)
            throw ValidationError("self-loop on node \"" + g.nodes_[e.a].id + "\"");
        if (e.weight <= 0.0)
            throw ValidationError("edge " + g.nodes_[e.a].id + "-" + g.nodes_[e.b].id +
                                  " has non-positive weight");
    }
    g.edges_ = std::move(edges);
    g.origin_.resize(g.nodes_.size());
    for (std::uint32_t i = 0; i < g.origin_.size(); ++i)
        g.origin_[i] = i;
    g.finalize();
    return g;
}

void GridGraph::finalize() {
    const std::size_t n = nodes_.size();
    multi_degree_.assign(n, 0);
    weighted_degree_.assign(n, 0.0);
    for (const GridEdge& e : edges_) {
        ++multi_degree_[e.a];
        ++multi_degree_[e.b];
        weighted_degree_[e.a] += e.weight;
        weighted_degree_[e.b] += e.weight;
    }

    // Simple view: bucket incident arcs per node, then collapse parallels.
    std::vector<std::vector<Neighbor>> buckets(n);
    for (std::uint32_t i = 0; i < n; ++i)
        buckets[i].reserve(multi_degree_[i]);
    for (const GridEdge& e : edges_) {
        buckets[e.a].push_back(Neighbor{e.b, e.weight});
        buckets[e.b].push_back(Neighbor{e.a, e.weight});
    }
    simple_offsets_.assign(n + 1, 0);
    simple_adj_.clear();
    for (std::uint32_t v = 0; v < n; ++v) {
        auto& arcs = buckets[v];
        std::sort(arcs.begin(), arcs.end(), [](const Neighbor& x, const Neighbor& y) {
            return x.node != y.node ? x.node < y.node : x.weight < y.weight;
        });
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            if (i == 0 || arcs[i].node != arcs[i - 1].node)
                simple_adj_.push_back(arcs[i]);
        }
        simple_offsets_[v + 1] = static_cast<std::uint32_t>(simple_adj_.size());
    }
}

std::optional<std::uint32_t> GridGraph::find_node(std::string_view id) const {
    for (std::uint32_t i = 0; i < nodes_.size(); ++i)
        if (nodes_[i].id == id) return i;
    return std::nullopt;
}

std::size_t GridGraph::degree(std::uint32_t v) const {
    if (v >= nodes_.size()) throw ValidationError("unknown vertex index");
    return multi_degree_[v];
}

double GridGraph::weighted_degree(std::uint32_t v) const {
    if (v >= nodes_.size()) throw ValidationError("unknown vertex index");
    return weighted_degree_[v];
}

double GridGraph::avg_degree() const {
    if (nodes_.empty()) throw ValidationError("average degree of an empty graph");
    return 2.0 * static_cast<double>(edges_.size()) / static_cast<double>(nodes_.size());
}

double GridGraph::edge_avg_weight() const {
    if (edges_.empty()) return 0.0;
    double sum = 0.0;
    for (const GridEdge& e : edges_) sum += e.weight;
    return sum / static_cast<double>(edges_.size());
}

std::span<const GridGraph::Neighbor> GridGraph::neighbors(std::uint32_t v) const {
    if (v >= nodes_.size()) throw ValidationError("unknown vertex index");
    return {simple_adj_.data() + simple_offsets_[v],
            simple_adj_.data() + simple_offsets_[v + 1]};
}

namespace {

std::vector<std::uint32_t> component_labels(const GridGraph& g, std::uint32_t& count) {
    const std::uint32_t n = static_cast<std::uint32_t>(g.order());
    std::vector<std::uint32_t> label(n, std::numeric_limits<std::uint32_t>::max());
    std::vector<std::uint32_t> stack;
    count = 0;
    for (std::uint32_t s = 0; s < n; ++s) {
        if (label[s] != std::numeric_limits<std::uint32_t>::max()) continue;
        label[s] = count;
        stack.push_back(s);
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            for (const auto& nb : g.neighbors(v)) {
                if (label[nb.node] == std::numeric_limits<std::uint32_t>::max()) {
                    label[nb.node] = count;
                    stack.push_back(nb.node);
                }
            }
        }
        ++count;
    }
    return label;
}

} // namespace

bool GridGraph::is_connected() const {
    if (nodes_.empty()) return true;
    std::uint32_t count = 0;
    component_labels(*this, count);
    return count == 1;
}

std::vector<GridGraph> GridGraph::connected_components() const {
    std::uint32_t count = 0;
    std::vector<std::uint32_t> label = component_labels(*this, count);

    std::vector<std::vector<std::uint32_t>> members(count);
    for (std::uint32_t v = 0; v < label.size(); ++v)
        members[label[v]].push_back(v);

    std::vector<std::uint32_t> comp_order(count);
    for (std::uint32_t c = 0; c < count; ++c) comp_order[c] = c;
    std::sort(comp_order.begin(), comp_order.end(), [&](std::uint32_t x, std::uint32_t y) {
        if (members[x].size() != members[y].size())
            return members[x].size() > members[y].size();
        return nodes_[members[x].front()].id < nodes_[members[y].front()].id;
    });

    std::vector<GridGraph> out;
    out.reserve(count);
    for (std::uint32_t c : comp_order)
        out.push_back(induced_subgraph(members[c]));
    return out;
}

GridGraph GridGraph::induced_subgraph(std::span<const std::uint32_t> keep) const {
    constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> remap(nodes_.size(), kAbsent);
    GridGraph sub;
    sub.nodes_.reserve(keep.size());
    sub.origin_.reserve(keep.size());
    for (std::uint32_t v : keep) {
        if (v >= nodes_.size()) throw ValidationError("unknown vertex index");
        if (remap[v] != kAbsent) throw ValidationError("duplicate vertex in subgraph selection");
        remap[v] = static_cast<std::uint32_t>(sub.nodes_.size());
        sub.nodes_.push_back(nodes_[v]);
        sub.origin_.push_back(origin_[v]);
    }
    for (const GridEdge& e : edges_) {
        if (remap[e.a] != kAbsent && remap[e.b] != kAbsent)
            sub.edges_.push_back(GridEdge{remap[e.a], remap[e.b], e.weight, e.max_current});
    }
    sub.finalize();
    return sub;
}

OrderSizeDegree order_size_avg_degree(const GridGraph& g) {
    return OrderSizeDegree{g.order(), g.size(), g.avg_degree()};
}

} // namespace gridnet
