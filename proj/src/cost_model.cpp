#include "gridnet/cost_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <set>
#include <string>

#include "gridnet/detail/seed_mix.hpp"
#include "gridnet/detail/shortest_paths.hpp"
#include "gridnet/errors.hpp"
#include "gridnet/path_metrics.hpp"
#include "gridnet/resilience.hpp"

namespace gridnet {

namespace {

constexpr std::size_t kPathsPerPair = 10;
constexpr double kRemovalStep = 0.05;
constexpr double kRemovalFraction = 0.2;
constexpr unsigned kRandomTrials = 10;

double arc_weight(const detail::Csr& csr, std::uint32_t a, std::uint32_t b) {
    for (const auto& arc : csr.out(a))
        if (arc.to == b) return arc.w;
    throw ValidationError("path references a missing edge");
}

double sequence_weight(const detail::Csr& csr, const std::vector<std::uint32_t>& nodes) {
    double w = 0.0;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) w += arc_weight(csr, nodes[i], nodes[i + 1]);
    return w;
}

/// Deterministic Dijkstra for the spur searches: banned nodes are skipped,
/// banned arcs (keyed a*n+b, both directions present) are not relaxed, and
/// among equal (weight, hops) alternatives the smallest predecessor wins so
/// the reconstructed path is unique.
bool spur_shortest_path(const detail::Csr& csr, std::uint32_t s, std::uint32_t t,
                        const std::vector<char>& banned_node,
                        const std::set<std::uint64_t>& banned_arc,
                        std::vector<std::uint32_t>& path_out) {
    const auto n = csr.n;
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(n, inf);
    std::vector<std::int32_t> hops(n, -1);
    std::vector<std::uint32_t> pred(n, n);
    std::vector<char> done(n, 0);

    struct Item {
        double d;
        std::int32_t h;
        std::uint32_t v;
        bool operator>(const Item& o) const {
            if (d != o.d) return d > o.d;
            if (h != o.h) return h > o.h;
            return v > o.v;
        }
    };
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0.0;
    hops[s] = 0;
    pq.push({0.0, 0, s});

    while (!pq.empty()) {
        auto [d, h, v] = pq.top();
        pq.pop();
        if (done[v]) continue;
        if (d != dist[v] || h != hops[v]) continue;
        done[v] = 1;
        if (v == t) break;
        for (const auto& arc : csr.out(v)) {
            std::uint32_t u = arc.to;
            if (done[u] || banned_node[u]) continue;
            if (!banned_arc.empty() &&
                banned_arc.count(std::uint64_t(v) * n + u))
                continue;
            double nd = d + arc.w;
            std::int32_t nh = h + 1;
            bool better = nd < dist[u] || (nd == dist[u] && nh < hops[u]) ||
                          (nd == dist[u] && nh == hops[u] && v < pred[u]);
            if (!better) continue;
            dist[u] = nd;
            hops[u] = nh;
            pred[u] = v;
            pq.push({nd, nh, u});
        }
    }

    if (dist[t] == inf) return false;
    path_out.clear();
    for (std::uint32_t v = t; v != s; v = pred[v]) path_out.push_back(v);
    path_out.push_back(s);
    std::reverse(path_out.begin(), path_out.end());
    return true;
}

struct CandidateLess {
    bool operator()(const LooplessPath& a, const LooplessPath& b) const {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.nodes.size() != b.nodes.size()) return a.nodes.size() < b.nodes.size();
        return a.nodes < b.nodes;
    }
};

} // namespace

std::vector<LooplessPath> k_shortest_loopless_paths(const GridGraph& g, std::uint32_t source,
                                                    std::uint32_t sink, std::size_t k) {
    if (source >= g.order() || sink >= g.order())
        throw ValidationError("path endpoints out of range");
    if (source == sink) throw ValidationError("path endpoints must differ");
    if (k == 0) return {};

    const detail::Csr csr = detail::Csr::from_graph(g);
    const auto n = csr.n;

    std::vector<char> banned_node(n, 0);
    std::set<std::uint64_t> banned_arc;
    std::vector<std::uint32_t> seq;

    std::vector<LooplessPath> accepted;
    if (!spur_shortest_path(csr, source, sink, banned_node, banned_arc, seq)) return accepted;
    accepted.push_back({sequence_weight(csr, seq), seq});

    std::set<LooplessPath, CandidateLess> candidates;
    std::set<std::vector<std::uint32_t>> seen;
    seen.insert(accepted.front().nodes);

    while (accepted.size() < k) {
        const auto& last = accepted.back().nodes;
        for (std::size_t i = 0; i + 1 < last.size(); ++i) {
            const std::uint32_t spur = last[i];

            banned_arc.clear();
            for (const auto& p : accepted) {
                if (p.nodes.size() <= i + 1) continue;
                if (!std::equal(last.begin(), last.begin() + i + 1, p.nodes.begin())) continue;
                std::uint32_t a = p.nodes[i], b = p.nodes[i + 1];
                banned_arc.insert(std::uint64_t(a) * n + b);
                banned_arc.insert(std::uint64_t(b) * n + a);
            }
            std::fill(banned_node.begin(), banned_node.end(), 0);
            for (std::size_t j = 0; j < i; ++j) banned_node[last[j]] = 1;

            if (!spur_shortest_path(csr, spur, sink, banned_node, banned_arc, seq)) continue;

            std::vector<std::uint32_t> full(last.begin(), last.begin() + i);
            full.insert(full.end(), seq.begin(), seq.end());
            if (!seen.insert(full).second) continue;
            double w = sequence_weight(csr, full);
            candidates.insert({w, std::move(full)});
        }
        if (candidates.empty()) break;
        accepted.push_back(*candidates.begin());
        candidates.erase(candidates.begin());
    }
    return accepted;
}

double line_losses(const GridGraph& g) {
    return normalized_wcpl(weighted_cpl(g), g.edge_avg_weight());
}

double substation_losses(const GridGraph& g) {
    return pair_hop_stats(g).mean_hops_weighted - 1.0;
}

double robustness(const GridGraph& g, std::uint64_t seed) {
    double random_sum = 0.0;
    for (unsigned t = 0; t < kRandomTrials; ++t) {
        RemovalTrace trace = simulate_removal(g, {RemovalKind::Random, seed + t, true},
                                              kRemovalStep);
        random_sum += robustness_at(trace, kRemovalFraction);
    }
    RemovalTrace ranked = simulate_removal(g, {RemovalKind::WeightedDegree, seed, true},
                                           kRemovalStep);
    return (random_sum / kRandomTrials + robustness_at(ranked, kRemovalFraction)) / 2.0;
}

double redundancy(const GridGraph& g, std::uint64_t seed) {
    const std::size_t n = g.order();
    if (n < 5) throw ValidationError("redundancy needs at least 5 nodes to draw its sample");

    const std::size_t sample_size = n * 2 / 5; // floor(0.4 n)
    std::vector<std::uint32_t> ids(n);
    for (std::uint32_t v = 0; v < n; ++v) ids[v] = v;
    std::mt19937_64 rng(seed);
    std::shuffle(ids.begin(), ids.end(), rng);

    const std::size_t n_sources = (sample_size + 1) / 2;
    std::vector<std::uint32_t> sources(ids.begin(), ids.begin() + n_sources);
    std::vector<std::uint32_t> sinks(ids.begin() + n_sources, ids.begin() + sample_size);

    double total = 0.0;
    for (std::uint32_t s : sources) {
        for (std::uint32_t t : sinks) {
            auto paths = k_shortest_loopless_paths(g, s, t, kPathsPerPair);
            if (paths.empty()) throw DisconnectedError("redundancy requires a connected graph");
            double pair_sum = 0.0;
            for (const auto& p : paths) pair_sum += p.weight;
            pair_sum += double(kPathsPerPair - paths.size()) * paths.back().weight;
            total += pair_sum;
        }
    }
    return total / weighted_cpl(g);
}

double capacity(const GridGraph& g) {
    std::string missing;
    int missing_count = 0;
    for (const auto& e : g.edges()) {
        if (e.max_current) continue;
        if (++missing_count <= 8) {
            if (!missing.empty()) missing += ", ";
            missing += g.node(e.a).id + "-" + g.node(e.b).id;
        }
    }
    if (missing_count > 0) {
        if (missing_count > 8) missing += ", ...";
        throw ValidationError("capacity needs max_current on every edge; missing on " + missing);
    }

    std::vector<GridEdge> current_edges;
    current_edges.reserve(g.size());
    double mean_current = 0.0;
    for (const auto& e : g.edges()) {
        current_edges.push_back({e.a, e.b, *e.max_current, e.max_current});
        mean_current += *e.max_current;
    }
    mean_current /= double(g.size());

    GridGraph current_graph = GridGraph::from_edges(g.nodes(), std::move(current_edges));
    return weighted_cpl(current_graph) / mean_current;
}

double alpha(const GridGraph& g) { return line_losses(g) + substation_losses(g); }

double beta(const GridGraph& g, std::uint64_t seed) {
    double cap = capacity(g);
    if (cap <= 1.0)
        throw ValidationError("capacity must exceed 1 for a defined reliability cost");
    double rob = robustness(g, detail::sub_seed(seed, "cost.robustness"));
    if (rob == 0.0) throw ValidationError("robustness is 0; the network is fully disrupted");
    double red = redundancy(g, detail::sub_seed(seed, "cost.redundancy"));
    return red / (rob * std::log(cap));
}

CostParams cost_params(const GridGraph& g, std::uint64_t seed) {
    CostParams p;
    p.l_line = line_losses(g);
    p.l_substation = substation_losses(g);
    p.cap = capacity(g);
    if (p.cap <= 1.0)
        throw ValidationError("capacity must exceed 1 for a defined reliability cost");
    p.rob = robustness(g, detail::sub_seed(seed, "cost.robustness"));
    if (p.rob == 0.0) throw ValidationError("robustness is 0; the network is fully disrupted");
    p.red = redundancy(g, detail::sub_seed(seed, "cost.redundancy"));
    p.alpha = p.l_line + p.l_substation;
    p.beta = p.red / (p.rob * std::log(p.cap));
    return p;
}

namespace {

std::vector<double> sample_axis(const AxisRange& r, const char* name) {
    if (r.count == 0) throw ValidationError(std::string(name) + " range is empty");
    if (r.hi < r.lo) throw ValidationError(std::string(name) + " range is inverted");
    std::vector<double> axis(r.count);
    if (r.count == 1) {
        axis[0] = r.lo;
        return axis;
    }
    double step = (r.hi - r.lo) / double(r.count - 1);
    for (std::size_t i = 0; i < r.count; ++i) axis[i] = r.lo + step * double(i);
    return axis;
}

} // namespace

PriceSurface price_surface(const AxisRange& alpha_range, const AxisRange& beta_range, double base,
                           double alpha_ref, double beta_ref, std::vector<PriceMarker> markers) {
    if (alpha_ref <= 0.0 || beta_ref <= 0.0)
        throw ValidationError("price reference scales must be positive");

    PriceSurface s;
    s.base = base;
    s.alpha_ref = alpha_ref;
    s.beta_ref = beta_ref;
    s.alphas = sample_axis(alpha_range, "alpha");
    s.betas = sample_axis(beta_range, "beta");
    s.points.reserve(s.alphas.size() * s.betas.size());
    for (double a : s.alphas) {
        for (double b : s.betas) {
            double ra = a / alpha_ref, rb = b / beta_ref;
            s.points.push_back({a, b, base * (1.0 + ra * ra + rb * rb)});
        }
    }
    s.markers = std::move(markers);
    return s;
}

} // namespace gridnet
