#include "gridnet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

namespace gridnet {

namespace {

constexpr double kZeroComponent = 1e-12;
constexpr double kResidualTol = 1e-8;
constexpr std::size_t kDenseLimit = 512;

Eigen::SparseMatrix<double> sparse_laplacian(const GridGraph& g) {
    const std::uint32_t n = static_cast<std::uint32_t>(g.order());
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(4 * g.size() + n);
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto ns = g.neighbors(v);
        trips.emplace_back(v, v, static_cast<double>(ns.size()));
        for (const auto& nb : ns) trips.emplace_back(v, nb.node, -1.0);
    }
    Eigen::SparseMatrix<double> L(n, n);
    L.setFromTriplets(trips.begin(), trips.end());
    return L;
}

// Deterministic pseudo-random start vector, orthogonal to ones, unit norm.
Eigen::VectorXd start_vector(std::uint32_t n) {
    Eigen::VectorXd x(n);
    std::uint32_t state = 0x9e3779b9u;
    for (std::uint32_t i = 0; i < n; ++i) {
        state = state * 1664525u + 1013904223u;
        x[i] = static_cast<double>(state) / 4294967296.0 - 0.5;
    }
    x.array() -= x.mean();
    double norm = x.norm();
    if (norm == 0.0) { // n == 1 cannot happen here, but stay safe
        x.setZero();
        x[0] = 1.0;
        norm = 1.0;
    }
    return x / norm;
}

struct FiedlerPair {
    Eigen::VectorXd vector;
    double value = 0.0;
};

FiedlerPair fiedler_dense(const GridGraph& g) {
    const Eigen::MatrixXd L = laplacian(g);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(L);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("dense Laplacian eigensolve failed", 0.0);
    return FiedlerPair{solver.eigenvectors().col(1), solver.eigenvalues()[1]};
}

FiedlerPair fiedler_iterative(const GridGraph& g) {
    const std::uint32_t n = static_cast<std::uint32_t>(g.order());
    const Eigen::SparseMatrix<double> L = sparse_laplacian(g);

    double max_deg = 0.0;
    for (std::uint32_t v = 0; v < n; ++v)
        max_deg = std::max(max_deg, static_cast<double>(g.neighbors(v).size()));
    const double sigma = std::max(1e-12, 1e-9 * max_deg);

    Eigen::SparseMatrix<double> shifted = L;
    for (std::uint32_t v = 0; v < n; ++v) shifted.coeffRef(v, v) += sigma;
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(shifted);
    if (chol.info() != Eigen::Success)
        throw ConvergenceError("shift-invert factorization failed", 0.0);

    Eigen::VectorXd x = start_vector(n);
    double lambda = 0.0;
    double residual = std::numeric_limits<double>::infinity();
    constexpr unsigned kMaxIter = 50000;
    for (unsigned it = 0; it < kMaxIter; ++it) {
        Eigen::VectorXd y = chol.solve(x);
        y.array() -= y.mean(); // stay orthogonal to the ones kernel
        const double norm = y.norm();
        if (norm == 0.0) break;
        x = y / norm;
        const Eigen::VectorXd Lx = L * x;
        lambda = x.dot(Lx);
        residual = (Lx - lambda * x).lpNorm<Eigen::Infinity>();
        if (residual < kResidualTol) return FiedlerPair{x, lambda};
    }
    if (n <= 4096) return fiedler_dense(g); // rare stall: near-degenerate spectrum
    throw ConvergenceError("Fiedler iteration did not converge", residual);
}

} // namespace

Eigen::MatrixXd laplacian(const GridGraph& g) {
    if (g.order() == 0) throw ValidationError("Laplacian of an empty graph");
    const std::uint32_t n = static_cast<std::uint32_t>(g.order());
    Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
    for (std::uint32_t v = 0; v < n; ++v) {
        const auto ns = g.neighbors(v);
        L(v, v) = static_cast<double>(ns.size());
        for (const auto& nb : ns) L(v, nb.node) = -1.0;
    }
    return L;
}

Bisection fiedler_bisect(const GridGraph& g) {
    if (g.order() < 2)
        throw ValidationError("bisection requires at least two vertices");
    if (!g.is_connected())
        throw DisconnectedError("bisection requires a connected graph; "
                                "split into components first");

    FiedlerPair pair = g.order() <= kDenseLimit ? fiedler_dense(g) : fiedler_iterative(g);

    // Canonical sign: first component clear of the zero band is positive.
    for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(pair.vector.size()); ++i) {
        if (std::abs(pair.vector[i]) >= kZeroComponent) {
            if (pair.vector[i] < 0.0) pair.vector = -pair.vector;
            break;
        }
    }

    Bisection out;
    out.fiedler_value = pair.value;
    for (std::uint32_t v = 0; v < g.order(); ++v) {
        const double c = pair.vector[v];
        if (c >= kZeroComponent) {
            out.side_a.push_back(v);
        } else if (c <= -kZeroComponent) {
            out.side_b.push_back(v);
        } else if (out.side_b.size() < out.side_a.size()) {
            out.side_b.push_back(v);
        } else {
            out.side_a.push_back(v);
        }
    }

    std::vector<char> in_a(g.order(), 0);
    for (std::uint32_t v : out.side_a) in_a[v] = 1;
    const auto& edges = g.edges();
    for (std::uint32_t e = 0; e < edges.size(); ++e)
        if (in_a[edges[e].a] != in_a[edges[e].b]) out.critical_edges.push_back(e);
    return out;
}

namespace {

std::unique_ptr<BisectionTree> bisect_side(const GridGraph& parent,
                                           const std::vector<std::uint32_t>& side,
                                           unsigned depth, bool& used_largest) {
    used_largest = false;
    if (side.size() < 2) return nullptr;
    GridGraph sub = parent.induced_subgraph(side);
    if (!sub.is_connected()) {
        used_largest = true;
        sub = sub.connected_components().front();
    }
    if (sub.order() < 2) return nullptr;
    return std::make_unique<BisectionTree>(recursive_bisect(sub, depth));
}

} // namespace

BisectionTree recursive_bisect(const GridGraph& g, unsigned depth) {
    if (depth == 0) throw ValidationError("bisection depth must be at least 1");
    BisectionTree node;
    node.graph = g;
    node.cut = fiedler_bisect(g);
    if (depth > 1) {
        node.child_a = bisect_side(g, node.cut.side_a, depth - 1, node.a_used_largest_component);
        node.child_b = bisect_side(g, node.cut.side_b, depth - 1, node.b_used_largest_component);
    }
    return node;
}

} // namespace gridnet
