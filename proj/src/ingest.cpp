#include "gridnet/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "gridnet/baselines.hpp"
#include "gridnet/detail/seed_mix.hpp"
#include "gridnet/errors.hpp"

namespace gridnet {

namespace {

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(std::string_view(line).substr(start)));
            return out;
        }
        out.push_back(trim(std::string_view(line).substr(start, comma - start)));
        start = comma + 1;
    }
}

double parse_double(const std::string& text, std::size_t line, const std::string& field) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = first + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError("field " + field + " is not a number: \"" + text + "\"", line, field);
    return value;
}

void check_header(const std::string& got, const std::string& want, const char* table) {
    if (trim(got) != want)
        throw ParseError(std::string(table) + " header must be \"" + want + "\"", 1, "header");
}

std::vector<NodeRecord> parse_nodes(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("nodes table is empty", 1, "header");
    check_header(line, "id,kind", "nodes");

    std::vector<NodeRecord> nodes;
    std::unordered_set<std::string> seen;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != 2)
            throw ParseError("node rows have 2 fields, got " + std::to_string(fields.size()),
                             line_no, "");
        if (fields[0].empty()) throw ParseError("empty node id", line_no, "id");
        if (!seen.insert(fields[0]).second)
            throw ParseError("duplicate node id \"" + fields[0] + "\"", line_no, "id");
        auto kind = node_kind_from_string(fields[1]);
        if (!kind)
            throw ParseError("unknown node kind \"" + fields[1] +
                                 "\" (expected substation, transformer or consumer)",
                             line_no, "kind");
        nodes.push_back({fields[0], *kind});
    }
    return nodes;
}

std::vector<EdgeRecord> parse_edges(std::istream& in,
                                    const std::unordered_set<std::string>& node_ids) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("edges table is empty", 1, "header");
    check_header(line, "from,to,resistance_ohm_per_km,length_km,is_link,max_current_a", "edges");

    std::vector<EdgeRecord> edges;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line);
        if (fields.size() != 6)
            throw ParseError("edge rows have 6 fields, got " + std::to_string(fields.size()),
                             line_no, "");

        EdgeRecord e;
        e.endpoint_a = fields[0];
        e.endpoint_b = fields[1];
        if (e.endpoint_a.empty()) throw ParseError("empty endpoint", line_no, "from");
        if (e.endpoint_b.empty()) throw ParseError("empty endpoint", line_no, "to");
        if (!node_ids.count(e.endpoint_a))
            throw ParseError("edge references undeclared node \"" + e.endpoint_a + "\"", line_no,
                             "from");
        if (!node_ids.count(e.endpoint_b))
            throw ParseError("edge references undeclared node \"" + e.endpoint_b + "\"", line_no,
                             "to");

        if (fields[4] == "0")
            e.is_link = false;
        else if (fields[4] == "1")
            e.is_link = true;
        else
            throw ParseError("is_link must be 0 or 1, got \"" + fields[4] + "\"", line_no,
                             "is_link");

        if (!fields[2].empty())
            e.resistance_ohm_per_km = parse_double(fields[2], line_no, "resistance_ohm_per_km");
        else if (!e.is_link)
            throw ParseError("missing resistance_ohm_per_km on a non-link edge", line_no,
                             "resistance_ohm_per_km");
        if (!fields[3].empty())
            e.length_km = parse_double(fields[3], line_no, "length_km");
        else if (!e.is_link)
            throw ParseError("missing length_km on a non-link edge", line_no, "length_km");
        if (!fields[5].empty())
            e.max_current_a = parse_double(fields[5], line_no, "max_current_a");

        edges.push_back(std::move(e));
    }
    return edges;
}

} // namespace

GridRecords parse_grid_csv(std::istream& nodes_csv, std::istream& edges_csv) {
    GridRecords r;
    r.nodes = parse_nodes(nodes_csv);
    std::unordered_set<std::string> ids;
    ids.reserve(r.nodes.size() * 2);
    for (const auto& n : r.nodes) ids.insert(n.id);
    r.edges = parse_edges(edges_csv, ids);
    return r;
}

namespace {

using nlohmann::json;

std::string json_path(const char* array, std::size_t i) {
    return std::string(array) + "[" + std::to_string(i) + "]";
}

const json& require_field(const json& obj, const char* array, std::size_t i, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end())
        throw ParseError(json_path(array, i) + " is missing field " + field, 0, field);
    return *it;
}

std::string string_field(const json& obj, const char* array, std::size_t i, const char* field) {
    const json& v = require_field(obj, array, i, field);
    if (!v.is_string())
        throw ParseError(json_path(array, i) + "." + field + " must be a string", 0, field);
    return v.get<std::string>();
}

std::optional<double> optional_number(const json& obj, const char* array, std::size_t i,
                                      const char* field) {
    auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    if (!it->is_number())
        throw ParseError(json_path(array, i) + "." + field + " must be a number", 0, field);
    return it->get<double>();
}

} // namespace

GridRecords parse_grid_json(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& ex) {
        throw ParseError(std::string("invalid JSON: ") + ex.what(), 0, "");
    }
    if (!doc.is_object()) throw ParseError("top level must be an object", 0, "");
    auto version = doc.find("version");
    if (version == doc.end() || !version->is_number_integer() || version->get<int>() != 1)
        throw ParseError("missing or unsupported version (expected 1)", 0, "version");
    if (!doc.contains("nodes") || !doc["nodes"].is_array())
        throw ParseError("missing nodes array", 0, "nodes");
    if (!doc.contains("edges") || !doc["edges"].is_array())
        throw ParseError("missing edges array", 0, "edges");

    GridRecords r;
    std::unordered_set<std::string> ids;
    const json& nodes = doc["nodes"];
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const json& n = nodes[i];
        if (!n.is_object()) throw ParseError(json_path("nodes", i) + " must be an object", 0, "");
        NodeRecord rec;
        rec.id = string_field(n, "nodes", i, "id");
        if (rec.id.empty()) throw ParseError(json_path("nodes", i) + ".id is empty", 0, "id");
        if (!ids.insert(rec.id).second)
            throw ParseError("duplicate node id \"" + rec.id + "\"", 0, "id");
        std::string kind = string_field(n, "nodes", i, "kind");
        auto parsed = node_kind_from_string(kind);
        if (!parsed)
            throw ParseError(json_path("nodes", i) + ".kind unknown: \"" + kind + "\"", 0, "kind");
        rec.kind = *parsed;
        r.nodes.push_back(std::move(rec));
    }

    const json& edges = doc["edges"];
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const json& e = edges[i];
        if (!e.is_object()) throw ParseError(json_path("edges", i) + " must be an object", 0, "");
        EdgeRecord rec;
        rec.endpoint_a = string_field(e, "edges", i, "from");
        rec.endpoint_b = string_field(e, "edges", i, "to");
        if (!ids.count(rec.endpoint_a))
            throw ParseError(json_path("edges", i) + " references undeclared node \"" +
                                 rec.endpoint_a + "\"",
                             0, "from");
        if (!ids.count(rec.endpoint_b))
            throw ParseError(json_path("edges", i) + " references undeclared node \"" +
                                 rec.endpoint_b + "\"",
                             0, "to");
        if (auto it = e.find("is_link"); it != e.end() && !it->is_null()) {
            if (it->is_boolean())
                rec.is_link = it->get<bool>();
            else if (it->is_number_integer() &&
                     (it->get<int>() == 0 || it->get<int>() == 1))
                rec.is_link = it->get<int>() == 1;
            else
                throw ParseError(json_path("edges", i) + ".is_link must be boolean or 0/1", 0,
                                 "is_link");
        }
        rec.resistance_ohm_per_km = optional_number(e, "edges", i, "resistance_ohm_per_km");
        rec.length_km = optional_number(e, "edges", i, "length_km");
        rec.max_current_a = optional_number(e, "edges", i, "max_current_a");
        if (!rec.is_link) {
            if (!rec.resistance_ohm_per_km)
                throw ParseError(json_path("edges", i) +
                                     " is missing resistance_ohm_per_km on a non-link edge",
                                 0, "resistance_ohm_per_km");
            if (!rec.length_km)
                throw ParseError(json_path("edges", i) + " is missing length_km on a non-link edge",
                                 0, "length_km");
        }
        r.edges.push_back(std::move(rec));
    }
    return r;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_nodes_csv(const GridRecords& records, std::ostream& out) {
    out << "id,kind\n";
    for (const auto& n : records.nodes) out << n.id << "," << to_string(n.kind) << "\n";
}

void write_edges_csv(const GridRecords& records, std::ostream& out) {
    out << "from,to,resistance_ohm_per_km,length_km,is_link,max_current_a\n";
    for (const auto& e : records.edges) {
        out << e.endpoint_a << "," << e.endpoint_b << ",";
        if (e.resistance_ohm_per_km) out << format_double(*e.resistance_ohm_per_km);
        out << ",";
        if (e.length_km) out << format_double(*e.length_km);
        out << "," << (e.is_link ? 1 : 0) << ",";
        if (e.max_current_a) out << format_double(*e.max_current_a);
        out << "\n";
    }
}

namespace {

json records_to_json(const GridRecords& records) {
    json doc;
    doc["version"] = 1;
    json nodes = json::array();
    for (const auto& n : records.nodes) nodes.push_back({{"id", n.id}, {"kind", to_string(n.kind)}});
    json edges = json::array();
    for (const auto& e : records.edges) {
        json obj;
        obj["from"] = e.endpoint_a;
        obj["to"] = e.endpoint_b;
        if (e.resistance_ohm_per_km) obj["resistance_ohm_per_km"] = *e.resistance_ohm_per_km;
        if (e.length_km) obj["length_km"] = *e.length_km;
        obj["is_link"] = e.is_link;
        if (e.max_current_a) obj["max_current_a"] = *e.max_current_a;
        edges.push_back(std::move(obj));
    }
    doc["nodes"] = std::move(nodes);
    doc["edges"] = std::move(edges);
    return doc;
}

} // namespace

void write_grid_json(const GridRecords& records, std::ostream& out) {
    out << records_to_json(records).dump(2) << "\n";
}

GridRecords load_grid_records(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
        fs::path nodes_path = path / "nodes.csv";
        fs::path edges_path = path / "edges.csv";
        std::ifstream nodes(nodes_path);
        if (!nodes) throw ParseError("cannot open " + nodes_path.string(), 0, "");
        std::ifstream edges(edges_path);
        if (!edges) throw ParseError("cannot open " + edges_path.string(), 0, "");
        return parse_grid_csv(nodes, edges);
    }
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string(), 0, "");
    return parse_grid_json(in);
}

GridGraph load_grid(const std::filesystem::path& path) {
    GridRecords r = load_grid_records(path);
    return GridGraph::build(std::move(r.nodes), r.edges);
}

std::string grid_digest(const GridRecords& records) {
    std::string canonical = records_to_json(records).dump();
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(detail::fnv1a64(canonical)));
    return buf;
}

namespace {

double draw(const WeightDist& d, std::mt19937_64& rng) {
    if (d.kind == WeightDist::Kind::Constant) return d.a;
    return std::uniform_real_distribution<double>(d.a, d.b)(rng);
}

void check_dist(const WeightDist& d, const char* what) {
    if (d.kind == WeightDist::Kind::Uniform && !(d.a <= d.b))
        throw ValidationError(std::string(what) + " has an inverted range");
    if (d.a <= 0.0)
        throw ValidationError(std::string(what) + " must produce positive values");
}

} // namespace

GridGraph generate_synthetic_grid(const SyntheticSpec& spec) {
    check_dist(spec.weight_dist, "weight_dist");
    if (spec.current_dist) check_dist(*spec.current_dist, "current_dist");

    std::mt19937_64 rng(spec.seed);
    auto edge_set = random_connected_edge_set(spec.order, spec.size, rng);

    std::vector<NodeRecord> nodes;
    nodes.reserve(spec.order);
    for (std::size_t i = 0; i < spec.order; ++i)
        nodes.push_back({"n" + std::to_string(i),
                         i == 0 ? NodeKind::Substation : NodeKind::Consumer});

    std::vector<GridEdge> edges;
    edges.reserve(edge_set.size());
    for (auto [a, b] : edge_set) {
        GridEdge e;
        e.a = a;
        e.b = b;
        e.weight = draw(spec.weight_dist, rng);
        if (spec.current_dist) e.max_current = draw(*spec.current_dist, rng);
        edges.push_back(e);
    }
    return GridGraph::from_edges(std::move(nodes), std::move(edges));
}

} // namespace gridnet
