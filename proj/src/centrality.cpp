#include "gridnet/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gridnet/detail/shortest_paths.hpp"

namespace gridnet {

BetweennessVector betweenness(const GridGraph& g, bool use_weights, BetweennessMode mode) {
    if (g.order() < 2)
        throw ValidationError("betweenness requires at least two vertices");
    if (!g.is_connected())
        throw DisconnectedError("betweenness requires a connected graph; "
                                "split into components first");
    const auto csr = detail::Csr::from_graph(g);
    BetweennessVector out;
    out.weighted_paths = use_weights;
    out.mode = mode;
    out.values = detail::brandes(csr, nullptr, use_weights,
                                 mode == BetweennessMode::FractionalPairShare);
    return out;
}

namespace {

// One multiply by (A + I); the +I shift keeps the dominant eigenvalue simple
// on bipartite graphs without changing eigenvectors.
void apply_shifted_adjacency(const detail::Csr& csr, bool use_weights,
                             const std::vector<double>& x, std::vector<double>& y) {
    for (std::uint32_t v = 0; v < csr.n; ++v) {
        double sum = x[v];
        for (const auto& arc : csr.out(v)) sum += (use_weights ? arc.w : 1.0) * x[arc.to];
        y[v] = sum;
    }
}

} // namespace

CentralityRanking eigenvector_centrality(const GridGraph& g, bool use_weights) {
    if (g.order() == 0)
        throw ValidationError("eigenvector centrality of an empty graph");
    if (!g.is_connected())
        throw DisconnectedError("eigenvector centrality requires a connected graph; "
                                "split into components first");

    const std::uint32_t n = static_cast<std::uint32_t>(g.order());
    CentralityRanking out;
    out.weighted = use_weights;

    std::vector<double> scores;
    if (n == 1) {
        scores.assign(1, 1.0);
    } else {
        const auto csr = detail::Csr::from_graph(g);
        std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
        std::vector<double> y(n, 0.0);
        constexpr unsigned kMaxIter = 10000;
        constexpr double kTol = 1e-10;
        double diff = 0.0;
        bool converged = false;
        for (unsigned it = 1; it <= kMaxIter; ++it) {
            apply_shifted_adjacency(csr, use_weights, x, y);
            double norm = 0.0;
            for (double v : y) norm += v * v;
            norm = std::sqrt(norm);
            if (norm == 0.0)
                throw ConvergenceError("eigenvector centrality: zero iterate", 0.0);
            diff = 0.0;
            for (std::uint32_t v = 0; v < n; ++v) {
                y[v] /= norm;
                diff = std::max(diff, std::abs(y[v] - x[v]));
            }
            x.swap(y);
            out.iterations = it;
            if (diff < kTol) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw ConvergenceError("eigenvector centrality did not converge", diff);
        scores = std::move(x);
    }

    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        return scores[a] > scores[b];
    });
    out.entries.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i)
        out.entries.push_back(CentralityEntry{i + 1, order[i], scores[order[i]]});
    return out;
}

} // namespace gridnet
