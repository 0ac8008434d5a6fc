#include "gridnet/resilience.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "gridnet/detail/shortest_paths.hpp"

namespace gridnet {

const char* to_string(RemovalKind kind) {
    switch (kind) {
    case RemovalKind::Random: return "random";
    case RemovalKind::Degree: return "degree";
    case RemovalKind::Betweenness: return "betweenness";
    case RemovalKind::WeightedDegree: return "weighted_degree";
    }
    return "random";
}

namespace {

// Multigraph adjacency (every parallel edge listed) for degree counting.
struct MultiAdj {
    std::vector<std::uint32_t> offsets;
    std::vector<std::pair<std::uint32_t, double>> arcs; // (neighbor, weight)

    explicit MultiAdj(const GridGraph& g) {
        const std::uint32_t n = static_cast<std::uint32_t>(g.order());
        std::vector<std::vector<std::pair<std::uint32_t, double>>> buckets(n);
        for (const GridEdge& e : g.edges()) {
            buckets[e.a].emplace_back(e.b, e.weight);
            buckets[e.b].emplace_back(e.a, e.weight);
        }
        offsets.assign(n + 1, 0);
        for (std::uint32_t v = 0; v < n; ++v) {
            arcs.insert(arcs.end(), buckets[v].begin(), buckets[v].end());
            offsets[v + 1] = static_cast<std::uint32_t>(arcs.size());
        }
    }
};

std::vector<double> policy_metric(RemovalKind kind, const detail::Csr& csr,
                                  const MultiAdj& multi, const std::vector<char>& alive) {
    const std::uint32_t n = csr.n;
    std::vector<double> metric(n, 0.0);
    switch (kind) {
    case RemovalKind::Degree:
    case RemovalKind::WeightedDegree:
        for (std::uint32_t v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            double m = 0.0;
            for (std::uint32_t i = multi.offsets[v]; i < multi.offsets[v + 1]; ++i) {
                const auto& [to, w] = multi.arcs[i];
                if (alive[to]) m += kind == RemovalKind::Degree ? 1.0 : w;
            }
            metric[v] = m;
        }
        return metric;
    case RemovalKind::Betweenness:
        return detail::brandes(csr, &alive, /*weighted=*/false, /*fractional=*/true);
    case RemovalKind::Random:
        break;
    }
    return metric;
}

} // namespace

RemovalTrace simulate_removal(const GridGraph& g, RemovalPolicy policy, double step) {
    if (g.order() == 0) throw ValidationError("removal simulation on an empty graph");
    if (!(step > 0.0 && step <= 1.0))
        throw ValidationError("removal step must lie in (0, 1]");
    if (!g.is_connected())
        throw DisconnectedError("removal simulation requires a connected graph; "
                                "split into components first");

    const std::uint32_t n0 = static_cast<std::uint32_t>(g.order());
    const auto csr = detail::Csr::from_graph(g);
    const MultiAdj multi(g);
    const std::size_t batch = static_cast<std::size_t>(
        std::ceil(step * static_cast<double>(n0)));

    std::vector<char> alive(n0, 1);
    std::size_t alive_count = n0;

    RemovalTrace trace;
    trace.policy = policy;
    trace.original_order = n0;
    trace.points.push_back(TracePoint{0.0, 1.0});

    // Uniform without replacement == consume a seeded shuffle front to back.
    std::vector<std::uint32_t> random_order;
    if (policy.kind == RemovalKind::Random) {
        random_order.resize(n0);
        std::iota(random_order.begin(), random_order.end(), 0);
        std::mt19937_64 rng(policy.seed);
        std::shuffle(random_order.begin(), random_order.end(), rng);
    }

    std::vector<double> static_metric;
    if (policy.kind != RemovalKind::Random && !policy.recompute)
        static_metric = policy_metric(policy.kind, csr, multi, alive);

    std::size_t removed = 0;
    while (alive_count > 0) {
        const std::size_t take = std::min(batch, alive_count);
        if (policy.kind == RemovalKind::Random) {
            for (std::size_t i = 0; i < take; ++i) alive[random_order[removed + i]] = 0;
        } else {
            if (policy.recompute)
                static_metric = policy_metric(policy.kind, csr, multi, alive);
            const std::vector<double>& metric = static_metric;
            std::vector<std::uint32_t> victims;
            victims.reserve(alive_count);
            for (std::uint32_t v = 0; v < n0; ++v)
                if (alive[v]) victims.push_back(v);
            std::stable_sort(victims.begin(), victims.end(),
                             [&](std::uint32_t a, std::uint32_t b) {
                                 return metric[a] > metric[b];
                             });
            for (std::size_t i = 0; i < take; ++i) alive[victims[i]] = 0;
        }
        removed += take;
        alive_count -= take;
        const double f = static_cast<double>(removed) / static_cast<double>(n0);
        const double s = alive_count == 0
                             ? 0.0
                             : static_cast<double>(detail::largest_component_size(csr, &alive)) /
                                   static_cast<double>(n0);
        trace.points.push_back(TracePoint{f, s});
    }
    return trace;
}

double robustness_at(const RemovalTrace& trace, double f) {
    if (trace.points.empty()) throw ValidationError("robustness lookup on an empty trace");
    if (f < 0.0 || f > 1.0) throw ValidationError("fraction must lie in [0, 1]");
    double s = trace.points.front().s;
    for (const TracePoint& pt : trace.points) {
        if (pt.f <= f) s = pt.s;
        else break;
    }
    return s;
}

std::vector<RemovalTrace> compare_policies(const GridGraph& g,
                                           std::span<const RemovalPolicy> policies, double step,
                                           unsigned trials) {
    if (trials < 1) throw ValidationError("at least one trial required");
    std::vector<RemovalTrace> out;
    out.reserve(policies.size());
    for (const RemovalPolicy& policy : policies) {
        if (policy.kind != RemovalKind::Random) {
            out.push_back(simulate_removal(g, policy, step));
            continue;
        }
        RemovalTrace mean;
        for (unsigned t = 0; t < trials; ++t) {
            RemovalPolicy p = policy;
            p.seed = policy.seed + t;
            RemovalTrace trace = simulate_removal(g, p, step);
            if (t == 0) {
                mean = trace;
                mean.policy = policy;
            } else {
                for (std::size_t i = 0; i < mean.points.size(); ++i)
                    mean.points[i].s += trace.points[i].s;
            }
        }
        for (TracePoint& pt : mean.points)
            pt.s /= static_cast<double>(trials);
        out.push_back(std::move(mean));
    }
    return out;
}

} // namespace gridnet
