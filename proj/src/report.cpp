#include "gridnet/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "gridnet/baselines.hpp"
#include "gridnet/centrality.hpp"
#include "gridnet/cost_model.hpp"
#include "gridnet/detail/seed_mix.hpp"
#include "gridnet/distribution_fit.hpp"
#include "gridnet/errors.hpp"
#include "gridnet/path_metrics.hpp"
#include "gridnet/resilience.hpp"
#include "gridnet/spectral.hpp"

namespace gridnet {

namespace {

using nlohmann::json;

std::uint64_t section_seed(std::uint64_t seed, std::string_view tag, std::size_t component) {
    return detail::mix64(detail::sub_seed(seed, tag) + component);
}

json section_base(std::size_t component, const std::string& digest) {
    json s;
    s["component_id"] = component;
    s["input_digest"] = digest;
    return s;
}

json skipped_section(std::size_t component, const std::string& digest, const std::string& why) {
    json s = section_base(component, digest);
    s["skipped"] = why;
    return s;
}

json metrics_to_json(const MetricsReport& m) {
    json j;
    j["order"] = m.order;
    j["size"] = m.size;
    j["avg_degree"] = m.avg_degree;
    j["apl"] = m.apl;
    j["cpl"] = m.cpl;
    j["cc"] = m.cc;
    j["wcpl"] = m.wcpl;
    j["edge_avg_weight"] = m.edge_avg_weight;
    j["nwcpl"] = m.nwcpl;
    j["avg_traversed_increase_pct"] = m.avg_traversed_increase_pct;
    return j;
}

json ccdf_to_json(const EmpiricalCcdf& ccdf) {
    json pts = json::array();
    for (const auto& p : ccdf.points) pts.push_back({p.x, p.p});
    return pts;
}

json fit_to_json(const FitResult& f) {
    json j;
    j["model"] = to_string(f.model);
    j["params"] = f.params;
    j["sse"] = f.sse;
    j["converged"] = f.converged;
    j["iterations"] = f.iterations;
    j["degenerate"] = f.degenerate;
    return j;
}

json distribution_entry(const EmpiricalCcdf& ccdf) {
    json j;
    j["ccdf"] = ccdf_to_json(ccdf);
    try {
        Classification cls = classify(ccdf);
        j["best_model"] = to_string(cls.best_model);
        json fits = json::array();
        for (const auto& f : cls.fits) fits.push_back(fit_to_json(f));
        j["fits"] = std::move(fits);
    } catch (const ValidationError& ex) {
        j["skipped"] = ex.what();
    }
    return j;
}

json ranking_to_json(const CentralityRanking& ranking, const GridGraph& comp) {
    json j;
    j["iterations"] = ranking.iterations;
    json top = json::array();
    std::size_t count = std::min<std::size_t>(10, ranking.entries.size());
    for (std::size_t i = 0; i < count; ++i) {
        const auto& e = ranking.entries[i];
        top.push_back({{"rank", e.rank}, {"node", comp.node(e.node).id}, {"score", e.score}});
    }
    j["top"] = std::move(top);
    return j;
}

json trace_to_json(const RemovalTrace& trace) {
    json pts = json::array();
    for (const auto& p : trace.points) pts.push_back({p.f, p.s});
    return pts;
}

json baseline_section(const GridGraph& comp, const MetricsReport& metrics, std::size_t ci,
                      const std::string& digest, const AnalyzeOptions& options) {
    if (comp.order() < 2) return skipped_section(ci, digest, "component has a single node");
    json s = section_base(ci, digest);
    try {
        BaselineMetrics base = baseline_metrics(comp.order(), comp.size(),
                                                section_seed(options.seed, "baseline", ci),
                                                options.baseline_trials);
        s["trials"] = options.baseline_trials;
        s["apl"] = base.apl;
        s["cpl"] = base.cpl;
        s["cc"] = base.cc;
        SmallWorldVerdict verdict = small_world_test(metrics, base);
        json sw;
        sw["cpl_ratio"] = verdict.cpl_ratio;
        if (verdict.cc_ratio_defined)
            sw["cc_ratio"] = verdict.cc_ratio;
        else
            sw["cc_ratio"] = nullptr;
        sw["ws_condition_holds"] = verdict.ws_condition_holds;
        sw["is_small_world"] = verdict.is_small_world;
        s["small_world"] = std::move(sw);
    } catch (const Error& ex) {
        return skipped_section(ci, digest, ex.what());
    }
    return s;
}

json distributions_section(const GridGraph& comp, std::size_t ci, const std::string& digest) {
    if (comp.order() < 2) return skipped_section(ci, digest, "component has a single node");
    json s = section_base(ci, digest);
    s["degree"] = distribution_entry(degree_ccdf(comp, false));
    s["weighted_degree"] = distribution_entry(degree_ccdf(comp, true));
    s["betweenness"] = distribution_entry(betweenness_ccdf(betweenness(comp, false)));
    s["weighted_betweenness"] = distribution_entry(betweenness_ccdf(betweenness(comp, true)));
    return s;
}

json centrality_section(const GridGraph& comp, std::size_t ci, const std::string& digest) {
    json s = section_base(ci, digest);
    s["unweighted"] = ranking_to_json(eigenvector_centrality(comp, false), comp);
    s["weighted"] = ranking_to_json(eigenvector_centrality(comp, true), comp);
    return s;
}

json bisection_section(const GridGraph& comp, std::size_t ci, const std::string& digest) {
    if (comp.order() < 2) return skipped_section(ci, digest, "component has a single node");
    json s = section_base(ci, digest);
    Bisection cut = fiedler_bisect(comp);
    s["fiedler_value"] = cut.fiedler_value;
    s["side_a_order"] = cut.side_a.size();
    s["side_b_order"] = cut.side_b.size();
    s["critical_edge_count"] = cut.critical_edges.size();
    json edges = json::array();
    for (std::uint32_t eid : cut.critical_edges) {
        const GridEdge& e = comp.edges()[eid];
        edges.push_back({comp.node(e.a).id, comp.node(e.b).id});
    }
    s["critical_edges"] = std::move(edges);
    return s;
}

json resilience_section(const GridGraph& comp, std::size_t ci, const std::string& digest,
                        const AnalyzeOptions& options) {
    if (!options.with_resilience)
        return skipped_section(ci, digest, "disabled by --no-resilience");
    json s = section_base(ci, digest);
    s["step"] = options.removal_step;
    json policies;
    const std::uint64_t seed = section_seed(options.seed, "resilience.random", ci);
    for (RemovalKind kind : {RemovalKind::Random, RemovalKind::Degree, RemovalKind::Betweenness,
                             RemovalKind::WeightedDegree}) {
        RemovalPolicy policy{kind, seed, true};
        RemovalTrace trace = simulate_removal(comp, policy, options.removal_step);
        json p;
        if (kind == RemovalKind::Random) p["seed"] = seed;
        p["trace"] = trace_to_json(trace);
        policies[to_string(kind)] = std::move(p);
    }
    s["policies"] = std::move(policies);
    return s;
}

json cost_section(const GridGraph& comp, std::size_t ci, const std::string& digest,
                  const AnalyzeOptions& options) {
    if (!options.with_cost) return skipped_section(ci, digest, "disabled; pass --cost to enable");
    json s = section_base(ci, digest);
    try {
        CostParams p = cost_params(comp, section_seed(options.seed, "cost", ci));
        s["l_line"] = p.l_line;
        s["l_substation"] = p.l_substation;
        s["rob"] = p.rob;
        s["red"] = p.red;
        s["cap"] = p.cap;
        s["alpha"] = p.alpha;
        s["beta"] = p.beta;
    } catch (const Error& ex) {
        return skipped_section(ci, digest, ex.what());
    }
    return s;
}

json cost_surface_json(const json& components, const std::string& digest) {
    std::vector<PriceMarker> markers;
    double max_alpha = 0.0, max_beta = 0.0;
    for (const auto& comp : components) {
        const json& cost = comp["cost"];
        if (cost.contains("skipped")) continue;
        PriceMarker m;
        m.network_id = "component_" + std::to_string(comp["component_id"].get<std::size_t>());
        m.alpha = cost["alpha"].get<double>();
        m.beta = cost["beta"].get<double>();
        max_alpha = std::max(max_alpha, m.alpha);
        max_beta = std::max(max_beta, m.beta);
        markers.push_back(std::move(m));
    }
    if (markers.empty()) {
        json s;
        s["input_digest"] = digest;
        s["skipped"] = "no component produced cost parameters";
        return s;
    }

    const double alpha_ref = max_alpha > 0.0 ? max_alpha : 1.0;
    const double beta_ref = max_beta > 0.0 ? max_beta : 1.0;
    PriceSurface surface = price_surface({0.0, 2.0 * alpha_ref, 21}, {0.0, 2.0 * beta_ref, 21},
                                         1.0, alpha_ref, beta_ref, std::move(markers));

    json s;
    s["input_digest"] = digest;
    s["base"] = surface.base;
    s["alpha_ref"] = surface.alpha_ref;
    s["beta_ref"] = surface.beta_ref;
    s["alphas"] = surface.alphas;
    s["betas"] = surface.betas;
    json points = json::array();
    for (const auto& p : surface.points) points.push_back({p.alpha, p.beta, p.price});
    s["points"] = std::move(points);
    json marks = json::array();
    for (const auto& m : surface.markers)
        marks.push_back({{"network_id", m.network_id}, {"alpha", m.alpha}, {"beta", m.beta}});
    s["markers"] = std::move(marks);
    return s;
}

} // namespace

json build_bundle(const GridRecords& records, const AnalyzeOptions& options) {
    const std::string digest = grid_digest(records);
    GridGraph g = GridGraph::build(records.nodes, records.edges);

    json bundle;
    bundle["tool"] = "gridnet";
    bundle["input_digest"] = digest;
    json opts;
    opts["seed"] = options.seed;
    opts["cost"] = options.with_cost;
    opts["baseline_trials"] = options.baseline_trials;
    opts["removal_step"] = options.removal_step;
    opts["resilience"] = options.with_resilience;
    bundle["options"] = std::move(opts);

    std::vector<GridGraph> components = g.connected_components();
    bundle["component_count"] = components.size();
    json comps = json::array();
    for (std::size_t ci = 0; ci < components.size(); ++ci) {
        const GridGraph& comp = components[ci];
        const MetricsReport report = compute_metrics(comp);
        json c;
        c["component_id"] = ci;
        json metrics = section_base(ci, digest);
        metrics.update(metrics_to_json(report));
        c["metrics"] = std::move(metrics);
        c["baseline"] = baseline_section(comp, report, ci, digest, options);
        c["distributions"] = distributions_section(comp, ci, digest);
        c["centrality"] = centrality_section(comp, ci, digest);
        c["bisection"] = bisection_section(comp, ci, digest);
        c["resilience"] = resilience_section(comp, ci, digest, options);
        c["cost"] = cost_section(comp, ci, digest, options);
        comps.push_back(std::move(c));
    }
    bundle["cost_surface"] = cost_surface_json(comps, digest);
    bundle["components"] = std::move(comps);
    return bundle;
}

namespace {

std::string fmt_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_table(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

void write_ccdf_csv(const std::filesystem::path& path, const json& entry) {
    std::string text = "x,p\n";
    for (const auto& point : entry["ccdf"]) {
        text += fmt_full(point[0].get<double>());
        text += ",";
        text += fmt_full(point[1].get<double>());
        text += "\n";
    }
    write_file(path, text);
}

} // namespace

void write_bundle_outputs(const nlohmann::json& bundle, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    write_file(out_dir / "bundle.json", bundle.dump(2) + "\n");

    std::string metrics_csv =
        "component_id,order,size,avg_degree,apl,cpl,cc,wcpl,edge_avg_weight,nwcpl,"
        "avg_traversed_increase_pct,baseline_apl,baseline_cpl,baseline_cc\n";
    for (const auto& comp : bundle["components"]) {
        const json& m = comp["metrics"];
        const std::size_t ci = comp["component_id"].get<std::size_t>();
        metrics_csv += std::to_string(ci);
        metrics_csv += "," + std::to_string(m["order"].get<std::size_t>());
        metrics_csv += "," + std::to_string(m["size"].get<std::size_t>());
        for (const char* key : {"avg_degree", "apl", "cpl", "cc", "wcpl", "edge_avg_weight",
                                "nwcpl", "avg_traversed_increase_pct"})
            metrics_csv += "," + fmt_full(m[key].get<double>());
        const json& b = comp["baseline"];
        for (const char* key : {"apl", "cpl", "cc"}) {
            metrics_csv += ",";
            if (!b.contains("skipped")) metrics_csv += fmt_full(b[key].get<double>());
        }
        metrics_csv += "\n";

        const std::string suffix = std::to_string(ci) + ".csv";
        const json& dist = comp["distributions"];
        if (!dist.contains("skipped")) {
            write_ccdf_csv(out_dir / ("degree_ccdf_" + suffix), dist["degree"]);
            write_ccdf_csv(out_dir / ("betweenness_ccdf_" + suffix), dist["betweenness"]);
        }

        const json& res = comp["resilience"];
        if (!res.contains("skipped")) {
            for (const auto& [policy, data] : res["policies"].items()) {
                std::string text = "f,s\n";
                for (const auto& point : data["trace"]) {
                    text += fmt_full(point[0].get<double>());
                    text += ",";
                    text += fmt_full(point[1].get<double>());
                    text += "\n";
                }
                write_file(out_dir / ("removal_" + policy + "_" + suffix), text);
            }
        }
    }
    write_file(out_dir / "metrics.csv", metrics_csv);

    const json& surface = bundle["cost_surface"];
    if (!surface.contains("skipped")) {
        std::string text = "alpha,beta,price\n";
        for (const auto& p : surface["points"]) {
            text += fmt_full(p[0].get<double>()) + "," + fmt_full(p[1].get<double>()) + "," +
                    fmt_full(p[2].get<double>()) + "\n";
        }
        write_file(out_dir / "cost_surface.csv", text);

        text = "network_id,alpha,beta\n";
        for (const auto& m : surface["markers"]) {
            text += m["network_id"].get<std::string>() + "," +
                    fmt_full(m["alpha"].get<double>()) + "," + fmt_full(m["beta"].get<double>()) +
                    "\n";
        }
        write_file(out_dir / "cost_markers.csv", text);
    }
}

namespace {

std::string layout(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        if (width.size() < row.size()) width.resize(row.size(), 0);
        for (std::size_t i = 0; i < row.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    }
    std::string out;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += "  ";
            out += row[i];
            if (i + 1 < row.size()) out.append(width[i] - row[i].size(), ' ');
        }
        out += "\n";
    }
    return out;
}

std::string table_metrics(const json& bundle) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"ID", "Order", "Size", "Avg deg", "APL", "CPL", "CC", "rAPL", "rCPL", "rCC"});
    for (const auto& comp : bundle["components"]) {
        const json& m = comp["metrics"];
        std::vector<std::string> row;
        row.push_back(std::to_string(comp["component_id"].get<std::size_t>()));
        row.push_back(std::to_string(m["order"].get<std::size_t>()));
        row.push_back(std::to_string(m["size"].get<std::size_t>()));
        for (const char* key : {"avg_degree", "apl", "cpl", "cc"})
            row.push_back(fmt_table(m[key].get<double>()));
        const json& b = comp["baseline"];
        if (b.contains("skipped")) {
            row.insert(row.end(), {"-", "-", "-"});
        } else {
            for (const char* key : {"apl", "cpl", "cc"})
                row.push_back(fmt_table(b[key].get<double>()));
        }
        rows.push_back(std::move(row));
    }
    return layout(rows);
}

std::string table_weighted(const json& bundle) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"ID", "WCPL", "Avg weight", "NWCPL"});
    for (const auto& comp : bundle["components"]) {
        const json& m = comp["metrics"];
        rows.push_back({std::to_string(comp["component_id"].get<std::size_t>()),
                        fmt_table(m["wcpl"].get<double>()),
                        fmt_table(m["edge_avg_weight"].get<double>()),
                        fmt_table(m["nwcpl"].get<double>())});
    }
    return layout(rows);
}

std::string table_critical_edges(const json& bundle) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"ID", "Order", "Size", "Critical edges"});
    for (const auto& comp : bundle["components"]) {
        const json& m = comp["metrics"];
        const json& b = comp["bisection"];
        rows.push_back({std::to_string(comp["component_id"].get<std::size_t>()),
                        std::to_string(m["order"].get<std::size_t>()),
                        std::to_string(m["size"].get<std::size_t>()),
                        b.contains("skipped")
                            ? std::string("skipped")
                            : std::to_string(b["critical_edge_count"].get<std::size_t>())});
    }
    return layout(rows);
}

std::string table_centrality(const json& bundle) {
    std::vector<std::vector<std::string>> rows;
    rows.push_back({"ID", "Rank", "Node", "Score", "Node (w)", "Score (w)"});
    for (const auto& comp : bundle["components"]) {
        const json& c = comp["centrality"];
        if (c.contains("skipped")) {
            rows.push_back({std::to_string(comp["component_id"].get<std::size_t>()), "skipped",
                            "", "", "", ""});
            continue;
        }
        const json& plain = c["unweighted"]["top"];
        const json& weighted = c["weighted"]["top"];
        std::size_t count = std::max(plain.size(), weighted.size());
        for (std::size_t i = 0; i < count; ++i) {
            std::vector<std::string> row;
            row.push_back(i == 0 ? std::to_string(comp["component_id"].get<std::size_t>()) : "");
            row.push_back(std::to_string(i + 1));
            if (i < plain.size()) {
                row.push_back(plain[i]["node"].get<std::string>());
                row.push_back(fmt_table(plain[i]["score"].get<double>()));
            } else {
                row.insert(row.end(), {"", ""});
            }
            if (i < weighted.size()) {
                row.push_back(weighted[i]["node"].get<std::string>());
                row.push_back(fmt_table(weighted[i]["score"].get<double>()));
            } else {
                row.insert(row.end(), {"", ""});
            }
            rows.push_back(std::move(row));
        }
    }
    return layout(rows);
}

} // namespace

std::string render_table(const nlohmann::json& bundle, std::string_view table) {
    if (table == "metrics") return table_metrics(bundle);
    if (table == "weighted") return table_weighted(bundle);
    if (table == "critical-edges") return table_critical_edges(bundle);
    if (table == "centrality") return table_centrality(bundle);
    throw ValidationError("unknown table \"" + std::string(table) +
                          "\" (expected metrics, weighted, critical-edges or centrality)");
}

} // namespace gridnet
