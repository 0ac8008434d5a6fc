#include "gridnet/path_metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#include "gridnet/detail/parallel.hpp"
#include "gridnet/detail/shortest_paths.hpp"

namespace gridnet {

namespace {

constexpr std::size_t kSweepBlock = 16;

void require_connected(const GridGraph& g, const char* op) {
    if (g.order() < 2)
        throw ValidationError(std::string(op) + " requires at least two vertices");
    if (!g.is_connected())
        throw DisconnectedError(std::string(op) +
                                " requires a connected graph; split into components first");
}

double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) return values[n / 2];
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

// Per-source row sums of hop distances. Throws on unreachable vertices.
std::vector<double> hop_row_sums(const detail::Csr& csr) {
    std::vector<double> rows(csr.n, 0.0);
    std::atomic<bool> disconnected{false};
    detail::parallel_blocks(csr.n, kSweepBlock,
                            [&](std::size_t begin, std::size_t end, std::size_t) {
        std::vector<std::int32_t> hops;
        for (std::size_t s = begin; s < end; ++s) {
            detail::bfs_hops(csr, static_cast<std::uint32_t>(s), nullptr, hops);
            double sum = 0.0;
            for (std::uint32_t t = 0; t < csr.n; ++t) {
                if (hops[t] == detail::kUnreachable) {
                    disconnected = true;
                    return;
                }
                sum += hops[t];
            }
            rows[s] = sum;
        }
    });
    if (disconnected)
        throw DisconnectedError("path metrics require a connected graph; "
                                "split into components first");
    return rows;
}

struct WeightedRows {
    std::vector<double> weight_sum; // per source, Ohm
    std::vector<double> hop_sum;    // per source, fewest-hop tie-break
};

WeightedRows weighted_row_sums(const detail::Csr& csr) {
    WeightedRows rows;
    rows.weight_sum.assign(csr.n, 0.0);
    rows.hop_sum.assign(csr.n, 0.0);
    std::atomic<bool> disconnected{false};
    detail::parallel_blocks(csr.n, kSweepBlock,
                            [&](std::size_t begin, std::size_t end, std::size_t) {
        std::vector<detail::DistHop> row;
        for (std::size_t s = begin; s < end; ++s) {
            detail::dijkstra_hops(csr, static_cast<std::uint32_t>(s), nullptr, row);
            double wsum = 0.0, hsum = 0.0;
            for (std::uint32_t t = 0; t < csr.n; ++t) {
                if (row[t].h == detail::kUnreachable) {
                    disconnected = true;
                    return;
                }
                wsum += row[t].w;
                hsum += row[t].h;
            }
            rows.weight_sum[s] = wsum;
            rows.hop_sum[s] = hsum;
        }
    });
    if (disconnected)
        throw DisconnectedError("path metrics require a connected graph; "
                                "split into components first");
    return rows;
}

} // namespace

double average_path_length(const GridGraph& g) {
    require_connected(g, "average path length");
    const auto csr = detail::Csr::from_graph(g);
    const auto rows = hop_row_sums(csr);
    double total = 0.0;
    for (double r : rows) total += r;
    const double n = static_cast<double>(g.order());
    return total / (n * (n - 1.0));
}

double characteristic_path_length(const GridGraph& g) {
    require_connected(g, "characteristic path length");
    const auto csr = detail::Csr::from_graph(g);
    auto rows = hop_row_sums(csr);
    const double denom = static_cast<double>(g.order()) - 1.0;
    for (double& r : rows) r /= denom;
    return median(std::move(rows));
}

double clustering_coefficient(const GridGraph& g) {
    if (g.order() == 0)
        throw ValidationError("clustering coefficient of an empty graph");
    const std::uint32_t n = static_cast<std::uint32_t>(g.order());
    std::vector<char> mark(n, 0);
    double total = 0.0;
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto ns = g.neighbors(v);
        const std::size_t k = ns.size();
        if (k < 2) continue;
        for (const auto& nb : ns) mark[nb.node] = 1;
        std::size_t links = 0;
        for (const auto& nb : ns)
            for (const auto& nb2 : g.neighbors(nb.node))
                if (nb2.node > nb.node && mark[nb2.node]) ++links;
        for (const auto& nb : ns) mark[nb.node] = 0;
        total += static_cast<double>(links) * 2.0 / (static_cast<double>(k) * (k - 1.0));
    }
    return total / static_cast<double>(n);
}

double weighted_cpl(const GridGraph& g) {
    require_connected(g, "weighted characteristic path length");
    const auto csr = detail::Csr::from_graph(g);
    auto rows = weighted_row_sums(csr);
    const double denom = static_cast<double>(g.order()) - 1.0;
    for (double& r : rows.weight_sum) r /= denom;
    return median(std::move(rows.weight_sum));
}

double normalized_wcpl(double wcpl, double edge_avg_weight) {
    if (!(edge_avg_weight > 0.0))
        throw ValidationError("normalized WCPL needs a positive mean edge weight");
    return wcpl / edge_avg_weight;
}

double weighted_degree(const GridGraph& g, std::uint32_t v) {
    return g.weighted_degree(v);
}

PairHopStats pair_hop_stats(const GridGraph& g) {
    require_connected(g, "traversed-nodes comparison");
    const auto csr = detail::Csr::from_graph(g);
    const auto urows = hop_row_sums(csr);
    const auto wrows = weighted_row_sums(csr);
    double usum = 0.0, wsum = 0.0;
    for (double r : urows) usum += r;
    for (double r : wrows.hop_sum) wsum += r;
    const double pairs = static_cast<double>(g.order()) * (static_cast<double>(g.order()) - 1.0);
    return PairHopStats{usum / pairs, wsum / pairs};
}

double traversed_nodes_increase(const GridGraph& g) {
    const PairHopStats st = pair_hop_stats(g);
    return 100.0 * (st.mean_hops_weighted - st.mean_hops_unweighted) / st.mean_hops_unweighted;
}

MetricsReport compute_metrics(const GridGraph& g) {
    MetricsReport r;
    r.order = g.order();
    r.size = g.size();
    if (g.order() == 0) throw ValidationError("metrics of an empty graph");
    r.avg_degree = g.avg_degree();
    r.edge_avg_weight = g.edge_avg_weight();
    r.cc = clustering_coefficient(g);
    if (g.order() < 2) return r;
    require_connected(g, "metrics");

    const auto csr = detail::Csr::from_graph(g);
    const auto urows = hop_row_sums(csr);
    const auto wrows = weighted_row_sums(csr);
    const double n = static_cast<double>(g.order());
    const double pairs = n * (n - 1.0);

    double usum = 0.0, whsum = 0.0;
    for (double v : urows) usum += v;
    for (double v : wrows.hop_sum) whsum += v;
    r.apl = usum / pairs;

    std::vector<double> dv(urows);
    for (double& v : dv) v /= n - 1.0;
    r.cpl = median(std::move(dv));

    std::vector<double> wv(wrows.weight_sum);
    for (double& v : wv) v /= n - 1.0;
    r.wcpl = median(std::move(wv));

    r.nwcpl = r.edge_avg_weight > 0.0 ? r.wcpl / r.edge_avg_weight : 0.0;
    const double mean_u = usum / pairs;
    const double mean_w = whsum / pairs;
    r.avg_traversed_increase_pct = mean_u > 0.0 ? 100.0 * (mean_w - mean_u) / mean_u : 0.0;
    return r;
}

} // namespace gridnet
