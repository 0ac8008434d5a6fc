#include "gridnet/detail/shortest_paths.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <tuple>

#include "gridnet/detail/parallel.hpp"

namespace gridnet::detail {

Csr Csr::from_graph(const GridGraph& g) {
    Csr c;
    c.n = static_cast<std::uint32_t>(g.order());
    c.offsets.assign(c.n + 1, 0);
    for (std::uint32_t v = 0; v < c.n; ++v) {
        for (const auto& nb : g.neighbors(v))
            c.arcs.push_back(Arc{nb.node, nb.weight});
        c.offsets[v + 1] = static_cast<std::uint32_t>(c.arcs.size());
    }
    return c;
}

Csr Csr::from_graph_currents(const GridGraph& g) {
    const std::uint32_t n = static_cast<std::uint32_t>(g.order());
    std::vector<std::vector<Arc>> buckets(n);
    for (const GridEdge& e : g.edges()) {
        if (!e.max_current)
            throw ValidationError("edge " + g.node(e.a).id + "-" + g.node(e.b).id +
                                  " carries no max_current_a");
        buckets[e.a].push_back(Arc{e.b, *e.max_current});
        buckets[e.b].push_back(Arc{e.a, *e.max_current});
    }
    Csr c;
    c.n = n;
    c.offsets.assign(n + 1, 0);
    for (std::uint32_t v = 0; v < n; ++v) {
        auto& arcs = buckets[v];
        std::sort(arcs.begin(), arcs.end(), [](const Arc& x, const Arc& y) {
            return x.to != y.to ? x.to < y.to : x.w < y.w;
        });
        for (std::size_t i = 0; i < arcs.size(); ++i)
            if (i == 0 || arcs[i].to != arcs[i - 1].to) c.arcs.push_back(arcs[i]);
        c.offsets[v + 1] = static_cast<std::uint32_t>(c.arcs.size());
    }
    return c;
}

namespace {
inline bool is_alive(const std::vector<char>* alive, std::uint32_t v) {
    return alive == nullptr || (*alive)[v] != 0;
}
} // namespace

void bfs_hops(const Csr& g, std::uint32_t s, const std::vector<char>* alive,
              std::vector<std::int32_t>& hops) {
    hops.assign(g.n, kUnreachable);
    if (!is_alive(alive, s)) return;
    std::vector<std::uint32_t> queue;
    queue.reserve(g.n);
    hops[s] = 0;
    queue.push_back(s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t v = queue[head];
        for (const auto& arc : g.out(v)) {
            if (!is_alive(alive, arc.to) || hops[arc.to] != kUnreachable) continue;
            hops[arc.to] = hops[v] + 1;
            queue.push_back(arc.to);
        }
    }
}

void dijkstra(const Csr& g, std::uint32_t s, const std::vector<char>* alive,
              std::vector<double>& dist) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    dist.assign(g.n, inf);
    if (!is_alive(alive, s)) return;
    using Item = std::pair<double, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0.0;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (d > dist[v]) continue;
        for (const auto& arc : g.out(v)) {
            if (!is_alive(alive, arc.to)) continue;
            double nd = d + arc.w;
            if (nd < dist[arc.to]) {
                dist[arc.to] = nd;
                pq.emplace(nd, arc.to);
            }
        }
    }
}

void dijkstra_hops(const Csr& g, std::uint32_t s, const std::vector<char>* alive,
                   std::vector<DistHop>& out) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    out.assign(g.n, DistHop{inf, kUnreachable});
    if (!is_alive(alive, s)) return;
    using Item = std::tuple<double, std::int32_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    out[s] = DistHop{0.0, 0};
    pq.emplace(0.0, 0, s);
    while (!pq.empty()) {
        auto [d, h, v] = pq.top();
        pq.pop();
        if (d > out[v].w || (d == out[v].w && h > out[v].h)) continue;
        for (const auto& arc : g.out(v)) {
            if (!is_alive(alive, arc.to)) continue;
            double nd = d + arc.w;
            std::int32_t nh = h + 1;
            DistHop& cur = out[arc.to];
            if (cur.h == kUnreachable || nd < cur.w || (nd == cur.w && nh < cur.h)) {
                cur = DistHop{nd, nh};
                pq.emplace(nd, nh, arc.to);
            }
        }
    }
}

namespace {

struct BrandesScratch {
    std::vector<std::uint32_t> order;            // settle order
    std::vector<std::vector<std::uint32_t>> preds;
    std::vector<double> sigma;
    std::vector<double> acc;                     // delta or raw-count accumulator
    std::vector<double> dist;
    std::vector<std::int32_t> hops;
};

void brandes_source(const Csr& g, const std::vector<char>* alive, bool weighted,
                    bool fractional, std::uint32_t s, BrandesScratch& sc,
                    std::vector<double>& score) {
    const std::uint32_t n = g.n;
    sc.order.clear();
    sc.sigma.assign(n, 0.0);
    for (auto& p : sc.preds) p.clear();
    sc.preds.resize(n);
    sc.sigma[s] = 1.0;

    if (!weighted) {
        sc.hops.assign(n, kUnreachable);
        sc.hops[s] = 0;
        sc.order.push_back(s);
        for (std::size_t head = 0; head < sc.order.size(); ++head) {
            std::uint32_t v = sc.order[head];
            for (const auto& arc : g.out(v)) {
                std::uint32_t w = arc.to;
                if (!is_alive(alive, w)) continue;
                if (sc.hops[w] == kUnreachable) {
                    sc.hops[w] = sc.hops[v] + 1;
                    sc.order.push_back(w);
                }
                if (sc.hops[w] == sc.hops[v] + 1) {
                    sc.sigma[w] += sc.sigma[v];
                    sc.preds[w].push_back(v);
                }
            }
        }
    } else {
        constexpr double inf = std::numeric_limits<double>::infinity();
        sc.dist.assign(n, inf);
        std::vector<char> settled(n, 0);
        using Item = std::pair<double, std::uint32_t>;
        std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
        sc.dist[s] = 0.0;
        pq.emplace(0.0, s);
        while (!pq.empty()) {
            auto [d, v] = pq.top();
            pq.pop();
            if (settled[v] || d > sc.dist[v]) continue;
            settled[v] = 1;
            sc.order.push_back(v);
            for (const auto& arc : g.out(v)) {
                std::uint32_t w = arc.to;
                if (!is_alive(alive, w)) continue;
                double nd = d + arc.w;
                if (nd < sc.dist[w]) {
                    sc.dist[w] = nd;
                    sc.sigma[w] = sc.sigma[v];
                    sc.preds[w].assign(1, v);
                    pq.emplace(nd, w);
                } else if (nd == sc.dist[w]) {
                    sc.sigma[w] += sc.sigma[v];
                    sc.preds[w].push_back(v);
                }
            }
        }
    }

    sc.acc.assign(n, 0.0);
    for (std::size_t i = sc.order.size(); i-- > 0;) {
        std::uint32_t w = sc.order[i];
        if (fractional) {
            for (std::uint32_t p : sc.preds[w])
                sc.acc[p] += sc.sigma[p] / sc.sigma[w] * (1.0 + sc.acc[w]);
            if (w != s) score[w] += sc.acc[w];
        } else {
            // acc[v] counts shortest-path DAG walks from v to every vertex
            // strictly below it; sigma[v] * acc[v] is the number of shortest
            // s-to-anywhere paths with v interior.
            for (std::uint32_t p : sc.preds[w]) sc.acc[p] += 1.0 + sc.acc[w];
            if (w != s) score[w] += sc.sigma[w] * sc.acc[w];
        }
    }
}

} // namespace

std::vector<double> brandes(const Csr& g, const std::vector<char>* alive, bool weighted,
                            bool fractional) {
    // Per-source contributions are accumulated per block and reduced in block
    // order, so the result is identical for any worker count.
    constexpr std::size_t kBlock = 32;
    const std::size_t blocks = block_count(g.n, kBlock);
    std::vector<std::vector<double>> partial(blocks);
    parallel_blocks(g.n, kBlock, [&](std::size_t begin, std::size_t end, std::size_t b) {
        BrandesScratch sc;
        std::vector<double>& score = partial[b];
        score.assign(g.n, 0.0);
        for (std::size_t s = begin; s < end; ++s) {
            if (!is_alive(alive, static_cast<std::uint32_t>(s))) continue;
            brandes_source(g, alive, weighted, fractional, static_cast<std::uint32_t>(s), sc,
                           score);
        }
    });
    std::vector<double> score(g.n, 0.0);
    for (std::size_t b = 0; b < blocks; ++b)
        for (std::uint32_t v = 0; v < g.n; ++v) score[v] += partial[b][v];
    for (double& v : score) v *= 0.5;
    return score;
}

std::size_t largest_component_size(const Csr& g, const std::vector<char>* alive) {
    std::vector<char> seen(g.n, 0);
    std::vector<std::uint32_t> stack;
    std::size_t best = 0;
    for (std::uint32_t s = 0; s < g.n; ++s) {
        if (seen[s] || !is_alive(alive, s)) continue;
        std::size_t count = 0;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            ++count;
            for (const auto& arc : g.out(v)) {
                if (!seen[arc.to] && is_alive(alive, arc.to)) {
                    seen[arc.to] = 1;
                    stack.push_back(arc.to);
                }
            }
        }
        best = std::max(best, count);
    }
    return best;
}

} // namespace gridnet::detail
