#pragma once

#include <optional>
#include <span>
#include <vector>

#include "gridnet/centrality.hpp"
#include "gridnet/grid_graph.hpp"

namespace gridnet {

enum class StatisticKind { Degree, WeightedDegree, Betweenness, WeightedBetweenness };

struct CcdfPoint {
    double x = 0.0;
    double p = 0.0; // fraction of nodes whose statistic is >= x
};

/// Complementary cumulative distribution over the distinct observed values of
/// a node statistic. p is non-increasing, in (0, 1], and starts at 1.
struct EmpiricalCcdf {
    StatisticKind kind = StatisticKind::Degree;
    std::vector<CcdfPoint> points; // sorted by ascending x
};

EmpiricalCcdf make_ccdf(StatisticKind kind, std::span<const double> values);
EmpiricalCcdf degree_ccdf(const GridGraph& g, bool weighted);
EmpiricalCcdf betweenness_ccdf(const BetweennessVector& b);

enum class FitModel {
    Exponential,        // p = a * exp(b x),           params {a, b}
    PowerLaw,           // p = a * x^(-c),             params {a, c}
    SumTwoExponentials, // p = a1 e^(b1 x) + a2 e^(b2 x), params {a1, b1, a2, b2}
};

const char* to_string(FitModel model);

struct FitResult {
    FitModel model = FitModel::Exponential;
    std::vector<double> params;
    double sse = 0.0;
    bool converged = false;
    unsigned iterations = 0;
    /// Set when the fit landed on an (almost) constant curve, e.g. a power law
    /// with exponent ~0 on plateau data.
    bool degenerate = false;
};

double evaluate_model(FitModel model, std::span<const double> params, double x);

/// Damped (Levenberg-Marquardt) least squares of the model against the CCDF
/// points. The power-law domain is restricted to x > 0. Needs at least 3
/// usable points for the 2-parameter models and 5 for the 4-parameter model,
/// with at least two distinct x values; throws ValidationError otherwise.
/// Stops when the relative SSE improvement of an accepted step drops below
/// 1e-10 (converged) or after 500 iterations (converged = false).
FitResult fit(const EmpiricalCcdf& ccdf, FitModel model,
              const std::vector<double>* init = nullptr);

struct Classification {
    FitModel best_model = FitModel::Exponential;
    std::vector<FitResult> fits; // every model that could be fitted
};

/// Fits all three models and picks the smallest SSE; the 4-parameter model
/// must beat the best 2-parameter SSE by a factor of 2 (and that SSE must be
/// above rounding level) to win.
Classification classify(const EmpiricalCcdf& ccdf);

} // namespace gridnet
