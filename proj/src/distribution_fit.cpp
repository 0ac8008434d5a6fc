#include "gridnet/distribution_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace gridnet {

const char* to_string(FitModel model) {
    switch (model) {
    case FitModel::Exponential: return "exponential";
    case FitModel::PowerLaw: return "power_law";
    case FitModel::SumTwoExponentials: return "sum_two_exponentials";
    }
    return "exponential";
}

EmpiricalCcdf make_ccdf(StatisticKind kind, std::span<const double> values) {
    if (values.empty()) throw ValidationError("distribution of an empty value set");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    EmpiricalCcdf out;
    out.kind = kind;
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i > 0 && sorted[i] == sorted[i - 1]) continue;
        // everything from position i on is >= sorted[i]
        out.points.push_back(CcdfPoint{sorted[i], (n - static_cast<double>(i)) / n});
    }
    return out;
}

EmpiricalCcdf degree_ccdf(const GridGraph& g, bool weighted) {
    if (g.order() == 0) throw ValidationError("degree distribution of an empty graph");
    std::vector<double> values(g.order());
    for (std::uint32_t v = 0; v < g.order(); ++v)
        values[v] = weighted ? g.weighted_degree(v) : static_cast<double>(g.degree(v));
    return make_ccdf(weighted ? StatisticKind::WeightedDegree : StatisticKind::Degree, values);
}

EmpiricalCcdf betweenness_ccdf(const BetweennessVector& b) {
    return make_ccdf(b.weighted_paths ? StatisticKind::WeightedBetweenness
                                      : StatisticKind::Betweenness,
                     b.values);
}

double evaluate_model(FitModel model, std::span<const double> params, double x) {
    switch (model) {
    case FitModel::Exponential: return params[0] * std::exp(params[1] * x);
    case FitModel::PowerLaw: return params[0] * std::pow(x, -params[1]);
    case FitModel::SumTwoExponentials:
        return params[0] * std::exp(params[1] * x) + params[2] * std::exp(params[3] * x);
    }
    return 0.0;
}

namespace {

std::size_t param_count(FitModel model) {
    return model == FitModel::SumTwoExponentials ? 4 : 2;
}

void jacobian_row(FitModel model, const std::vector<double>& th, double x, double* row) {
    switch (model) {
    case FitModel::Exponential: {
        const double e = std::exp(th[1] * x);
        row[0] = e;
        row[1] = th[0] * x * e;
        return;
    }
    case FitModel::PowerLaw: {
        const double pw = std::pow(x, -th[1]);
        row[0] = pw;
        row[1] = -th[0] * std::log(x) * pw;
        return;
    }
    case FitModel::SumTwoExponentials: {
        const double e1 = std::exp(th[1] * x);
        const double e2 = std::exp(th[3] * x);
        row[0] = e1;
        row[1] = th[0] * x * e1;
        row[2] = e2;
        row[3] = th[2] * x * e2;
        return;
    }
    }
}

double sse_of(FitModel model, const std::vector<double>& th,
              const std::vector<CcdfPoint>& pts) {
    double sse = 0.0;
    for (const CcdfPoint& pt : pts) {
        const double r = evaluate_model(model, th, pt.x) - pt.p;
        sse += r * r;
    }
    return sse;
}

// Ordinary least squares of y on x (returns {intercept, slope}).
std::pair<double, double> ols(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) return {sy / n, 0.0};
    const double slope = (n * sxy - sx * sy) / denom;
    return {(sy - slope * sx) / n, slope};
}

std::pair<double, double> semilog_init(const std::vector<CcdfPoint>& pts) {
    std::vector<double> xs, ys;
    for (const CcdfPoint& pt : pts) {
        if (pt.p > 0.0) {
            xs.push_back(pt.x);
            ys.push_back(std::log(pt.p));
        }
    }
    if (xs.size() < 2) return {pts.empty() ? 1.0 : pts.front().p, 0.0};
    auto [icept, slope] = ols(xs, ys);
    return {std::exp(icept), slope};
}

std::vector<double> default_init(FitModel model, const std::vector<CcdfPoint>& pts) {
    switch (model) {
    case FitModel::Exponential: {
        auto [a, b] = semilog_init(pts);
        return {a, b};
    }
    case FitModel::PowerLaw: {
        std::vector<double> xs, ys;
        for (const CcdfPoint& pt : pts) {
            if (pt.x > 0.0 && pt.p > 0.0) {
                xs.push_back(std::log(pt.x));
                ys.push_back(std::log(pt.p));
            }
        }
        if (xs.size() < 2) return {1.0, 0.0};
        auto [icept, slope] = ols(xs, ys);
        return {std::exp(icept), -slope};
    }
    case FitModel::SumTwoExponentials: {
        // Slow component from the tail half, fast component from the residual
        // of the head half.
        const std::size_t half = pts.size() / 2;
        std::vector<CcdfPoint> head(pts.begin(), pts.begin() + half);
        std::vector<CcdfPoint> tail(pts.begin() + half, pts.end());
        auto [a2, b2] = semilog_init(tail);
        std::vector<CcdfPoint> resid;
        for (const CcdfPoint& pt : head) {
            const double r = pt.p - a2 * std::exp(b2 * pt.x);
            if (r > 0.0) resid.push_back(CcdfPoint{pt.x, r});
        }
        double a1, b1;
        if (resid.size() >= 2) {
            std::tie(a1, b1) = semilog_init(resid);
        } else {
            a1 = std::max(1e-3, pts.front().p - a2);
            b1 = 2.0 * std::min(b2, -1e-6);
        }
        return {a1, b1, a2, b2};
    }
    }
    return {};
}

} // namespace

FitResult fit(const EmpiricalCcdf& ccdf, FitModel model, const std::vector<double>* init) {
    std::vector<CcdfPoint> pts;
    pts.reserve(ccdf.points.size());
    for (const CcdfPoint& pt : ccdf.points) {
        if (model == FitModel::PowerLaw && !(pt.x > 0.0)) continue;
        pts.push_back(pt);
    }
    const std::size_t k = param_count(model);
    const std::size_t needed = k == 4 ? 5 : 3;
    if (pts.size() < needed)
        throw ValidationError(std::string("fit of ") + to_string(model) + " needs at least " +
                              std::to_string(needed) + " points");
    bool distinct = false;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i].x != pts[0].x) distinct = true;
    if (!distinct)
        throw ValidationError("fit needs at least two distinct x values");

    FitResult res;
    res.model = model;
    std::vector<double> theta = init ? *init : default_init(model, pts);
    if (theta.size() != k)
        throw ValidationError("initial parameter vector has the wrong length");
    double sse = sse_of(model, theta, pts);
    if (!std::isfinite(sse)) {
        theta = default_init(model, pts);
        sse = sse_of(model, theta, pts);
    }

    const std::size_t m = pts.size();
    Eigen::MatrixXd J(m, k);
    Eigen::VectorXd r(m);
    double lambda = 1e-3;
    constexpr unsigned kMaxIter = 500;
    constexpr double kRelTol = 1e-10;

    for (unsigned it = 1; it <= kMaxIter; ++it) {
        res.iterations = it;
        for (std::size_t i = 0; i < m; ++i) {
            double row[4] = {0, 0, 0, 0};
            jacobian_row(model, theta, pts[i].x, row);
            for (std::size_t d = 0; d < k; ++d) J(i, d) = row[d];
            r[i] = evaluate_model(model, theta, pts[i].x) - pts[i].p;
        }
        Eigen::MatrixXd JtJ = J.transpose() * J;
        Eigen::VectorXd g = J.transpose() * r;
        Eigen::MatrixXd damped = JtJ;
        for (std::size_t d = 0; d < k; ++d) {
            const double diag = JtJ(d, d);
            damped(d, d) += lambda * (diag > 0.0 ? diag : 1e-12);
        }
        Eigen::VectorXd delta = damped.ldlt().solve(-g);
        std::vector<double> cand(theta);
        for (std::size_t d = 0; d < k; ++d) cand[d] += delta[d];
        const double cand_sse = sse_of(model, cand, pts);
        if (std::isfinite(cand_sse) && cand_sse < sse) {
            const double rel = (sse - cand_sse) / std::max(sse, 1e-300);
            theta = std::move(cand);
            sse = cand_sse;
            lambda /= 10.0;
            if (rel < kRelTol) {
                res.converged = true;
                break;
            }
        } else {
            lambda *= 10.0;
        }
        if (sse == 0.0) { // exact hit, nothing left to improve
            res.converged = true;
            break;
        }
    }

    res.params = std::move(theta);
    res.sse = sse;
    if (model == FitModel::PowerLaw && std::abs(res.params[1]) < 1e-3) res.degenerate = true;
    if (model == FitModel::Exponential && std::abs(res.params[1]) < 1e-12) res.degenerate = true;
    return res;
}

Classification classify(const EmpiricalCcdf& ccdf) {
    Classification out;
    std::exception_ptr first_error;
    for (FitModel model :
         {FitModel::Exponential, FitModel::PowerLaw, FitModel::SumTwoExponentials}) {
        try {
            out.fits.push_back(fit(ccdf, model));
        } catch (const ValidationError&) {
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (out.fits.empty()) std::rethrow_exception(first_error);

    const FitResult* best2 = nullptr;
    const FitResult* best4 = nullptr;
    for (const FitResult& f : out.fits) {
        if (f.model == FitModel::SumTwoExponentials) {
            best4 = &f;
        } else if (best2 == nullptr || f.sse < best2->sse) {
            best2 = &f;
        }
    }
    if (best2 == nullptr) {
        out.best_model = best4->model;
    } else if (best4 != nullptr && best2->sse > 1e-12 && best4->sse * 2.0 <= best2->sse) {
        out.best_model = best4->model;
    } else {
        out.best_model = best2->model;
    }
    return out;
}

} // namespace gridnet
