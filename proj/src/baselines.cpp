#include "gridnet/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <string>
#include <unordered_set>

#include "gridnet/errors.hpp"

namespace gridnet {

namespace {

// Decodes a Pruefer sequence of length n-2 into a labeled tree, which is a
// bijection onto the labeled trees on n nodes: a uniform random sequence
// yields a uniform random spanning tree.
std::vector<std::pair<std::uint32_t, std::uint32_t>>
tree_from_pruefer(const std::vector<std::uint32_t>& seq, std::uint32_t n) {
    std::vector<std::uint32_t> remaining_degree(n, 1);
    for (std::uint32_t v : seq) remaining_degree[v] += 1;

    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    edges.reserve(n - 1);

    // Leaves (degree 1) kept in a min-heap so extraction is deterministic
    // given the sequence.
    std::vector<std::uint32_t> heap;
    heap.reserve(n);
    for (std::uint32_t v = 0; v < n; ++v)
        if (remaining_degree[v] == 1) heap.push_back(v);
    std::make_heap(heap.begin(), heap.end(), std::greater<>());

    for (std::uint32_t v : seq) {
        std::pop_heap(heap.begin(), heap.end(), std::greater<>());
        std::uint32_t leaf = heap.back();
        heap.pop_back();
        edges.emplace_back(std::min(leaf, v), std::max(leaf, v));
        if (--remaining_degree[v] == 1) {
            heap.push_back(v);
            std::push_heap(heap.begin(), heap.end(), std::greater<>());
        }
    }

    std::pop_heap(heap.begin(), heap.end(), std::greater<>());
    std::uint32_t a = heap.back();
    heap.pop_back();
    std::uint32_t b = heap.front();
    edges.emplace_back(std::min(a, b), std::max(a, b));
    return edges;
}

std::uint64_t pair_code(std::uint32_t a, std::uint32_t b, std::uint32_t n) {
    return std::uint64_t(std::min(a, b)) * n + std::max(a, b);
}

} // namespace

std::vector<std::pair<std::uint32_t, std::uint32_t>>
random_connected_edge_set(std::size_t order, std::size_t size, std::mt19937_64& rng) {
    if (order < 2)
        throw InfeasibleError("random connected graph needs at least 2 nodes");
    const std::size_t max_edges = order * (order - 1) / 2;
    if (size < order - 1 || size > max_edges) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "no connected simple graph with %zu nodes and %zu edges "
                      "(feasible range %zu..%zu)",
                      order, size, order - 1, max_edges);
        throw InfeasibleError(buf);
    }

    const auto n = static_cast<std::uint32_t>(order);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    if (n == 2) {
        edges.emplace_back(0, 1);
    } else {
        std::vector<std::uint32_t> seq(n - 2);
        std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
        for (auto& v : seq) v = pick(rng);
        edges = tree_from_pruefer(seq, n);
    }

    std::size_t extras = size - (order - 1);
    if (extras == 0) return edges;

    std::unordered_set<std::uint64_t> used;
    used.reserve(size * 2);
    for (auto [a, b] : edges) used.insert(pair_code(a, b, n));

    const std::size_t free_pairs = max_edges - (order - 1);
    if (extras * 3 >= free_pairs) {
        // Dense case: rejection would thrash, so shuffle the complement.
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pool;
        pool.reserve(free_pairs);
        for (std::uint32_t a = 0; a + 1 < n; ++a)
            for (std::uint32_t b = a + 1; b < n; ++b)
                if (!used.count(pair_code(a, b, n))) pool.emplace_back(a, b);
        std::shuffle(pool.begin(), pool.end(), rng);
        edges.insert(edges.end(), pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(extras));
        return edges;
    }

    std::uniform_int_distribution<std::uint32_t> pick(0, n - 1);
    while (extras > 0) {
        std::uint32_t a = pick(rng);
        std::uint32_t b = pick(rng);
        if (a == b) continue;
        std::uint64_t code = pair_code(a, b, n);
        if (used.count(code)) continue;
        used.insert(code);
        edges.emplace_back(std::min(a, b), std::max(a, b));
        --extras;
    }
    return edges;
}

GridGraph random_connected_graph(std::size_t order, std::size_t size, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto edge_set = random_connected_edge_set(order, size, rng);

    std::vector<NodeRecord> nodes;
    nodes.reserve(order);
    for (std::size_t i = 0; i < order; ++i)
        nodes.push_back({"n" + std::to_string(i), NodeKind::Consumer});

    std::vector<EdgeRecord> edges;
    edges.reserve(edge_set.size());
    for (auto [a, b] : edge_set) {
        EdgeRecord e;
        e.endpoint_a = "n" + std::to_string(a);
        e.endpoint_b = "n" + std::to_string(b);
        e.resistance_ohm_per_km = 1.0;
        e.length_km = 1.0;
        edges.push_back(std::move(e));
    }
    return GridGraph::build(std::move(nodes), std::move(edges));
}

BaselineMetrics baseline_metrics(std::size_t order, std::size_t size, std::uint64_t seed,
                                 unsigned trials) {
    if (trials == 0) throw ValidationError("baseline_metrics needs at least one trial");
    BaselineMetrics acc;
    for (unsigned t = 0; t < trials; ++t) {
        GridGraph g = random_connected_graph(order, size, seed + t);
        acc.apl += average_path_length(g);
        acc.cpl += characteristic_path_length(g);
        acc.cc += clustering_coefficient(g);
    }
    acc.apl /= trials;
    acc.cpl /= trials;
    acc.cc /= trials;
    return acc;
}

SmallWorldVerdict small_world_test(const MetricsReport& sample, const BaselineMetrics& baseline,
                                   double cpl_tolerance, double cc_dominance) {
    if (baseline.cpl <= 0.0)
        throw ValidationError("baseline CPL must be positive for the small-world test");

    SmallWorldVerdict v;
    v.cpl_ratio = sample.cpl / baseline.cpl;
    if (baseline.cc > 0.0) {
        v.cc_ratio = sample.cc / baseline.cc;
        v.cc_ratio_defined = true;
    }

    double n = static_cast<double>(sample.order);
    double k = sample.avg_degree;
    double ln_n = std::log(n);
    v.ws_condition_holds = n > 10.0 * k && k > 2.0 * ln_n && ln_n > 1.0;

    bool cpl_ok = v.cpl_ratio <= cpl_tolerance;
    bool cc_ok = v.cc_ratio_defined && v.cc_ratio >= cc_dominance;
    v.is_small_world = cpl_ok && cc_ok;
    return v;
}

} // namespace gridnet
