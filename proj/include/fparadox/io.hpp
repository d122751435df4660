#pragma once

// Edge-list files and JSON/CSV report serialization.
//
// Edge-list format (ASCII, whitespace-delimited):
//   # comment              anywhere; '#' starts a comment to end of line
//   %directed              optional header directive, before the first edge
//   %one-based             node ids in the file start at 1
//   %nodes N               node count when trailing nodes are isolated
//   u v [w]                one edge per line, weight defaults to 1
// Undirected files list each edge once.

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fparadox/conditions.hpp"
#include "fparadox/errors.hpp"
#include "fparadox/exact.hpp"
#include "fparadox/explore.hpp"
#include "fparadox/graph.hpp"
#include "fparadox/paradox.hpp"

namespace fparadox {

inline constexpr const char* artifact_version = "1.0.0";
inline constexpr const char* schema_version = "1";

// ---------------------------------------------------------------------------
// Edge lists
// ---------------------------------------------------------------------------

struct EdgeListOptions {
    std::optional<bool> one_based; ///< overrides the %one-based directive when set
    bool sum_duplicates = false;
};

namespace detail {

inline std::string strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return std::string(hash == std::string_view::npos ? line : line.substr(0, hash));
}

inline std::uint64_t parse_node_id(const std::string& token, std::size_t line_no) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
        throw InputError("malformed node id '" + token + "' at line " + std::to_string(line_no));
    }
    try {
        return std::stoull(token);
    } catch (const std::exception&) {
        throw InputError("node id out of range at line " + std::to_string(line_no));
    }
}

inline double parse_weight(const std::string& token, std::size_t line_no) {
    std::size_t used = 0;
    double w = 0.0;
    try {
        w = std::stod(token, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != token.size()) throw InputError("malformed weight '" + token + "' at line " + std::to_string(line_no));
    return w;
}

} // namespace detail

inline Graph parse_edge_list(std::string_view text, const EdgeListOptions& options = {}) {
    bool directed = false, one_based = false, seen_edge = false;
    std::optional<std::size_t> declared_nodes;
    struct Raw {
        std::uint64_t u, v;
        double w;
        std::size_t line;
    };
    std::vector<Raw> raw;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto end = text.find('\n', pos);
        const std::string_view line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
        ++line_no;

        std::istringstream tokens(detail::strip_comment(line));
        std::vector<std::string> fields;
        for (std::string t; tokens >> t;) fields.push_back(t);
        if (fields.empty()) continue;

        if (fields[0][0] == '%') {
            if (seen_edge) throw InputError("directive after edges at line " + std::to_string(line_no));
            if (fields[0] == "%directed" && fields.size() == 1) {
                directed = true;
            } else if (fields[0] == "%one-based" && fields.size() == 1) {
                one_based = true;
            } else if (fields[0] == "%nodes" && fields.size() == 2) {
                declared_nodes = detail::parse_node_id(fields[1], line_no);
            } else {
                throw InputError("unknown directive '" + fields[0] + "' at line " + std::to_string(line_no));
            }
            continue;
        }
        if (fields.size() < 2 || fields.size() > 3) {
            throw InputError("expected 'source target [weight]' at line " + std::to_string(line_no));
        }
        seen_edge = true;
        raw.push_back({detail::parse_node_id(fields[0], line_no), detail::parse_node_id(fields[1], line_no),
                       fields.size() == 3 ? detail::parse_weight(fields[2], line_no) : 1.0, line_no});
    }
    if (options.one_based) one_based = *options.one_based;

    std::vector<Edge> edges;
    std::set<std::pair<node, node>> keys;
    std::size_t n = declared_nodes.value_or(0);
    for (const Raw& r : raw) {
        const std::string at = " at line " + std::to_string(r.line);
        if (one_based && (r.u == 0 || r.v == 0)) throw InputError("node id 0 in one-based file" + at);
        const node u = one_based ? r.u - 1 : r.u;
        const node v = one_based ? r.v - 1 : r.v;
        if (u == v) throw InputError("self-loop" + at);
        if (!(r.w > 0.0)) throw InputError("nonpositive weight" + at);
        const auto key = directed ? std::pair{u, v} : std::pair{std::min(u, v), std::max(u, v)};
        if (!keys.insert(key).second && !options.sum_duplicates) throw InputError("duplicate edge" + at);
        if (declared_nodes && std::max(u, v) >= *declared_nodes) throw InputError("node id exceeds %nodes" + at);
        n = std::max(n, std::max(u, v) + 1);
        edges.push_back({u, v, r.w});
    }
    if (edges.empty()) throw InputError("edge list has no edges");
    return Graph::build(n, edges, directed,
                        options.sum_duplicates ? DuplicatePolicy::sum : DuplicatePolicy::reject);
}

inline Graph read_edge_list_file(const std::string& path, const EdgeListOptions& options = {}) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open graph file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_edge_list(buf.str(), options);
}

namespace detail {

inline std::string format_real(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

} // namespace detail

inline std::string format_edge_list(const Graph& g, bool one_based = false) {
    std::ostringstream os;
    if (g.directed()) os << "%directed\n";
    if (one_based) os << "%one-based\n";
    os << "%nodes " << g.node_count() << '\n';
    const bool weighted = g.weighted();
    const node shift = one_based ? 1 : 0;
    for (const Edge& e : g.edges()) {
        os << e.source + shift << ' ' << e.target + shift;
        if (weighted) os << ' ' << detail::format_real(e.weight);
        os << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Report document
// ---------------------------------------------------------------------------

struct GraphSummary {
    std::size_t n = 0;
    std::size_t edge_count = 0;
    bool directed = false;
    bool weighted = false;
    bool regular = false;     ///< undirected: degree-regular; directed: out- and in-regular
    bool out_regular = false;
    bool in_regular = false;

    friend bool operator==(const GraphSummary&, const GraphSummary&) = default;
};

inline GraphSummary summarize(const Graph& g) {
    GraphSummary s;
    s.n = g.node_count();
    s.edge_count = g.edge_count();
    s.directed = g.directed();
    s.weighted = g.weighted();
    s.out_regular = is_regular(g, Orientation::out).has_value();
    s.in_regular = is_regular(g, Orientation::in).has_value();
    s.regular = s.out_regular && s.in_regular;
    return s;
}

struct EnumerationSummary {
    std::size_t max_n = 0;
    std::map<std::size_t, std::size_t> counts; ///< node count -> connected labelled graphs
    std::size_t total = 0;

    friend bool operator==(const EnumerationSummary&, const EnumerationSummary&) = default;
};

struct Provenance {
    std::vector<std::string> command_line;
    std::optional<std::uint64_t> seed;
    std::map<std::string, double> tolerances;
    std::string version = artifact_version;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

using Payload = std::variant<NodeVector, ParadoxReport, DirectedDegreeReport, ConditionReport, SweepResult,
                             SearchOutcome, CounterexampleResult, SuiteSummary, EnumerationSummary>;

struct ReportDocument {
    std::string schema = schema_version;
    std::optional<GraphSummary> graph;
    std::vector<Payload> reports;
    Provenance provenance;

    friend bool operator==(const ReportDocument&, const ReportDocument&) = default;
};

// ---------------------------------------------------------------------------
// JSON mapping
// ---------------------------------------------------------------------------

using json = nlohmann::json;

inline void to_json(json& j, const Edge& e) { j = json::array({e.source, e.target, e.weight}); }
inline void from_json(const json& j, Edge& e) {
    e.source = j.at(0).get<node>();
    e.target = j.at(1).get<node>();
    e.weight = j.at(2).get<double>();
}

inline void to_json(json& j, const NodeVector& v) { j = json{{"label", v.label}, {"values", v.values}}; }
inline void from_json(const json& j, NodeVector& v) {
    j.at("label").get_to(v.label);
    j.at("values").get_to(v.values);
}

inline void to_json(json& j, const Rational& r) { j = r.to_string(); }
inline void from_json(const json& j, Rational& r) { r = Rational::parse(j.get<std::string>()); }

namespace detail {

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
    j[key] = v ? json(*v) : json(nullptr);
}

template <class T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
    if (!j.contains(key) || j.at(key).is_null()) {
        v.reset();
    } else {
        v = j.at(key).get<T>();
    }
}

} // namespace detail

inline void to_json(json& j, const ExactAverages& e) {
    j = json{{"node_average", e.node_average}, {"neighbour_average", e.neighbour_average}, {"gap", e.gap}};
}
inline void from_json(const json& j, ExactAverages& e) {
    j.at("node_average").get_to(e.node_average);
    j.at("neighbour_average").get_to(e.neighbour_average);
    j.at("gap").get_to(e.gap);
}

inline void to_json(json& j, const ParadoxReport& r) {
    j = json{{"mode", to_string(r.mode)},
             {"measure_label", r.measure_label},
             {"node_average", r.node_average},
             {"neighbour_average", r.neighbour_average},
             {"gap", r.gap},
             {"covariance_form", r.covariance_form},
             {"holds", r.holds},
             {"equality", r.equality},
             {"tol", r.tol}};
    detail::put_optional(j, "exact", r.exact);
}
inline void from_json(const json& j, ParadoxReport& r) {
    r.mode = parse_mode(j.at("mode").get<std::string>());
    j.at("measure_label").get_to(r.measure_label);
    j.at("node_average").get_to(r.node_average);
    j.at("neighbour_average").get_to(r.neighbour_average);
    j.at("gap").get_to(r.gap);
    j.at("covariance_form").get_to(r.covariance_form);
    j.at("holds").get_to(r.holds);
    j.at("equality").get_to(r.equality);
    j.at("tol").get_to(r.tol);
    detail::get_optional(j, "exact", r.exact);
}

inline void to_json(json& j, const DirectedDegreeReport& r) {
    j = json{{"out_out", r.out_out}, {"in_in", r.in_in}, {"out_in", r.out_in},
             {"in_out", r.in_out},   {"covariance", r.covariance}};
    detail::put_optional(j, "covariance_exact", r.covariance_exact);
}
inline void from_json(const json& j, DirectedDegreeReport& r) {
    j.at("out_out").get_to(r.out_out);
    j.at("in_in").get_to(r.in_in);
    j.at("out_in").get_to(r.out_in);
    j.at("in_out").get_to(r.in_out);
    j.at("covariance").get_to(r.covariance);
    detail::get_optional(j, "covariance_exact", r.covariance_exact);
}

inline ConditionKind parse_condition_kind(const std::string& s) {
    for (ConditionKind k : {ConditionKind::suff1a, ConditionKind::lagarias, ConditionKind::spectral_directed,
                            ConditionKind::suff1_directed}) {
        if (s == to_string(k)) return k;
    }
    throw InputError("unknown condition kind '" + s + "'");
}

inline void to_json(json& j, const ConditionReport& r) {
    j = json{{"condition_id", r.id()}, {"kind", to_string(r.kind)}, {"k", r.k},         {"s", r.s},
             {"lhs", r.lhs},           {"rhs", r.rhs},                {"slack", r.slack}, {"holds", r.holds},
             {"theorem_guaranteed", r.theorem_guaranteed}};
    j["side"] = r.side ? json(to_string(*r.side)) : json(nullptr);
    if (r.exact) {
        j["exact"] = json{{"scaled_lhs", to_string(r.exact->scaled_lhs)},
                          {"scaled_rhs", to_string(r.exact->scaled_rhs)},
                          {"slack", to_string(r.exact->slack())}};
    } else {
        j["exact"] = nullptr;
    }
    detail::put_optional(j, "paradox_gap", r.paradox_gap);
}
inline void from_json(const json& j, ConditionReport& r) {
    r.kind = parse_condition_kind(j.at("kind").get<std::string>());
    j.at("k").get_to(r.k);
    j.at("s").get_to(r.s);
    j.at("lhs").get_to(r.lhs);
    j.at("rhs").get_to(r.rhs);
    j.at("slack").get_to(r.slack);
    j.at("holds").get_to(r.holds);
    j.at("theorem_guaranteed").get_to(r.theorem_guaranteed);
    if (j.at("side").is_null()) {
        r.side.reset();
    } else {
        r.side = j.at("side").get<std::string>() == "left" ? Side::left : Side::right;
    }
    if (j.at("exact").is_null()) {
        r.exact.reset();
    } else {
        r.exact = ExactComparison{parse_int128(j.at("exact").at("scaled_lhs").get<std::string>()),
                                  parse_int128(j.at("exact").at("scaled_rhs").get<std::string>())};
    }
    detail::get_optional(j, "paradox_gap", r.paradox_gap);
}

inline void to_json(json& j, const SweepResult& r) {
    j = json{{"spectral_radius", r.spectral_radius},
             {"alphas", r.alphas},
             {"gaps", r.gaps},
             {"derivative_at_zero", r.derivative_at_zero},
             {"min_gap", r.min_gap},
             {"min_gap_alpha", r.min_gap_alpha},
             {"violations", r.violations},
             {"tol", r.tol}};
}
inline void from_json(const json& j, SweepResult& r) {
    j.at("spectral_radius").get_to(r.spectral_radius);
    j.at("alphas").get_to(r.alphas);
    j.at("gaps").get_to(r.gaps);
    j.at("derivative_at_zero").get_to(r.derivative_at_zero);
    j.at("min_gap").get_to(r.min_gap);
    j.at("min_gap_alpha").get_to(r.min_gap_alpha);
    j.at("violations").get_to(r.violations);
    j.at("tol").get_to(r.tol);
}

inline void to_json(json& j, const Violation& v) {
    j = json{{"trial", v.trial}, {"seed", v.seed}, {"n", v.n}, {"edges", v.edges}, {"report", v.report}};
}
inline void from_json(const json& j, Violation& v) {
    j.at("trial").get_to(v.trial);
    j.at("seed").get_to(v.seed);
    j.at("n").get_to(v.n);
    j.at("edges").get_to(v.edges);
    j.at("report").get_to(v.report);
}

inline void to_json(json& j, const SearchOutcome& o) {
    j = json{{"trials", o.trials}, {"checked", o.checked}, {"r", o.r}, {"s", o.s}, {"violations", o.violations}};
    detail::put_optional(j, "min_slack", o.min_slack);
    detail::put_optional(j, "min_slack_trial", o.min_slack_trial);
}
inline void from_json(const json& j, SearchOutcome& o) {
    j.at("trials").get_to(o.trials);
    j.at("checked").get_to(o.checked);
    j.at("r").get_to(o.r);
    j.at("s").get_to(o.s);
    j.at("violations").get_to(o.violations);
    detail::get_optional(j, "min_slack", o.min_slack);
    detail::get_optional(j, "min_slack_trial", o.min_slack_trial);
}

inline void to_json(json& j, const CounterexampleResult& c) {
    j = json{{"coeffs", std::vector<double>(c.coeffs.values().begin(), c.coeffs.values().end())},
             {"report", c.report},
             {"violation", c.violation},
             {"epsilon", c.epsilon},
             {"halvings", c.halvings}};
}
inline void from_json(const json& j, CounterexampleResult& c) {
    c.coeffs = SeriesCoefficients(j.at("coeffs").get<std::vector<double>>());
    j.at("report").get_to(c.report);
    j.at("violation").get_to(c.violation);
    j.at("epsilon").get_to(c.epsilon);
    j.at("halvings").get_to(c.halvings);
}

inline void to_json(json& j, const SuiteFailure& f) {
    j = json{{"trial", f.trial}, {"check", f.check}, {"gap", f.gap},
             {"n", f.n},         {"directed", f.directed}, {"edges", f.edges}};
}
inline void from_json(const json& j, SuiteFailure& f) {
    j.at("trial").get_to(f.trial);
    j.at("check").get_to(f.check);
    j.at("gap").get_to(f.gap);
    j.at("n").get_to(f.n);
    j.at("directed").get_to(f.directed);
    j.at("edges").get_to(f.edges);
}

inline void to_json(json& j, const SuiteSummary& s) {
    j = json{{"family", s.family},   {"trials", s.trials},     {"retries", s.retries}, {"checks", s.checks},
             {"min_gap", s.min_gap}, {"failures", s.failures}, {"tol", s.tol}};
}
inline void from_json(const json& j, SuiteSummary& s) {
    j.at("family").get_to(s.family);
    j.at("trials").get_to(s.trials);
    j.at("retries").get_to(s.retries);
    j.at("checks").get_to(s.checks);
    j.at("min_gap").get_to(s.min_gap);
    j.at("failures").get_to(s.failures);
    j.at("tol").get_to(s.tol);
}

inline void to_json(json& j, const EnumerationSummary& e) {
    json counts = json::object();
    for (const auto& [n, c] : e.counts) counts[std::to_string(n)] = c;
    j = json{{"max_n", e.max_n}, {"counts", counts}, {"total", e.total}};
}
inline void from_json(const json& j, EnumerationSummary& e) {
    j.at("max_n").get_to(e.max_n);
    e.counts.clear();
    for (const auto& [key, value] : j.at("counts").items()) e.counts[std::stoul(key)] = value.get<std::size_t>();
    j.at("total").get_to(e.total);
}

inline void to_json(json& j, const GraphSummary& s) {
    j = json{{"n", s.n},
             {"edge_count", s.edge_count},
             {"directed", s.directed},
             {"weighted", s.weighted},
             {"regular", s.regular},
             {"out_regular", s.out_regular},
             {"in_regular", s.in_regular}};
}
inline void from_json(const json& j, GraphSummary& s) {
    j.at("n").get_to(s.n);
    j.at("edge_count").get_to(s.edge_count);
    j.at("directed").get_to(s.directed);
    j.at("weighted").get_to(s.weighted);
    j.at("regular").get_to(s.regular);
    j.at("out_regular").get_to(s.out_regular);
    j.at("in_regular").get_to(s.in_regular);
}

inline void to_json(json& j, const Provenance& p) {
    j = json{{"command_line", p.command_line}, {"tolerances", p.tolerances}, {"version", p.version}};
    detail::put_optional(j, "seed", p.seed);
}
inline void from_json(const json& j, Provenance& p) {
    j.at("command_line").get_to(p.command_line);
    j.at("tolerances").get_to(p.tolerances);
    j.at("version").get_to(p.version);
    detail::get_optional(j, "seed", p.seed);
}

namespace detail {

inline constexpr const char* payload_names[] = {"centrality", "paradox",      "directed_degree",
                                                "condition",  "sweep",        "search",
                                                "counterexample", "suite",    "enumeration"};

template <std::size_t I = 0>
Payload payload_from(const std::string& type, const json& body) {
    if constexpr (I < std::variant_size_v<Payload>) {
        if (type == payload_names[I]) return Payload(std::in_place_index<I>, body.get<std::variant_alternative_t<I, Payload>>());
        return payload_from<I + 1>(type, body);
    } else {
        throw InputError("unknown report type '" + type + "'");
    }
}

} // namespace detail

inline void to_json(json& j, const Payload& p) {
    j = json{{"type", detail::payload_names[p.index()]}};
    std::visit([&](const auto& v) { j["body"] = v; }, p);
}
inline void from_json(const json& j, Payload& p) {
    p = detail::payload_from(j.at("type").get<std::string>(), j.at("body"));
}

inline void to_json(json& j, const ReportDocument& d) {
    j = json{{"schema_version", d.schema}, {"reports", d.reports}, {"provenance", d.provenance}};
    detail::put_optional(j, "graph_summary", d.graph);
}
inline void from_json(const json& j, ReportDocument& d) {
    j.at("schema_version").get_to(d.schema);
    j.at("reports").get_to(d.reports);
    j.at("provenance").get_to(d.provenance);
    detail::get_optional(j, "graph_summary", d.graph);
}

/// Canonical serialization: sorted keys, two-space indent, trailing newline, no timestamps.
inline std::string serialize(const ReportDocument& doc) { return json(doc).dump(2) + "\n"; }

inline ReportDocument parse_report(std::string_view text) {
    try {
        return json::parse(text).get<ReportDocument>();
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed report document: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

inline std::string sweep_to_csv(const SweepResult& r) {
    std::ostringstream os;
    os << "alpha,gap\n";
    for (std::size_t i = 0; i < r.alphas.size(); ++i) {
        os << detail::format_real(r.alphas[i]) << ',' << detail::format_real(r.gaps[i]) << '\n';
    }
    return os.str();
}

inline std::string search_to_csv(const SearchOutcome& o) {
    std::ostringstream os;
    os << "trial,seed,n,slack,lhs,rhs,edges\n";
    for (const Violation& v : o.violations) {
        os << v.trial << ',' << v.seed << ',' << v.n << ',' << detail::format_real(v.report.slack) << ','
           << detail::format_real(v.report.lhs) << ',' << detail::format_real(v.report.rhs) << ',';
        for (std::size_t i = 0; i < v.edges.size(); ++i) os << (i ? " " : "") << v.edges[i].source << '-' << v.edges[i].target;
        os << '\n';
    }
    return os.str();
}

} // namespace fparadox
