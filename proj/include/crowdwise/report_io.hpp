#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "crowdwise/degroot.hpp"
#include "crowdwise/graph_families.hpp"
#include "crowdwise/triplet_io.hpp"
#include "crowdwise/wisdom.hpp"

namespace crowdwise {

using json = nlohmann::json;

inline json to_json(const DiagnosticsConfig& c) {
    return json{{"slope_min", c.slope_min},
                {"value_max", c.value_max},
                {"value_floor", c.value_floor},
                {"unwise_slope", c.unwise_slope},
                {"seeds", c.seeds},
                {"k_cap", c.k_cap},
                {"k_budget", c.k_budget},
                {"mixing_cap", c.mixing_cap},
                {"min_points_for_verdict", c.min_points_for_verdict},
                {"alphas", c.alphas}};
}

inline json to_json(const TrendTrace& t) {
    json points = json::array();
    for (const TracePoint& p : t.points)
        points.push_back(json{{"n", p.n}, {"value", p.value}, {"iqr", p.iqr}});
    return json{{"notion", t.notion},
                {"points", points},
                {"missing", t.missing},
                {"fit",
                 json{{"slope", t.fit.slope}, {"intercept", t.fit.intercept}, {"r2", t.fit.r2}}}};
}

inline json to_json(const WisdomReport& r) {
    json notions = json::array();
    for (const NotionReport& nr : r.notions) {
        json j = to_json(nr.trace);
        j["verdict"] = to_string(nr.verdict);
        notions.push_back(j);
    }
    json out{{"family", r.family},
             {"params", r.params},
             {"grid", r.grid},
             {"kind", to_string(r.kind)},
             {"config", to_json(r.config)},
             {"traces", notions},
             {"flags", r.flags}};
    if (r.seed) out["seed"] = *r.seed;
    return out;
}

// TrendTrace CSV, header "n,value".
inline void write_trace_csv(std::ostream& os, const TrendTrace& t) {
    os << "n,value\n";
    for (const TracePoint& p : t.points)
        os << p.n << "," << format_double(p.value) << "\n";
}

inline json to_json(const FamilyMetadata& m, const std::string& family,
                    const std::map<std::string, double>& params) {
    json j{{"family", family},
           {"params", params},
           {"node_count", m.actual_node_count},
           {"kind", to_string(m.kind)},
           {"special_nodes", m.special_nodes},
           {"degree_min", m.degree_min},
           {"degree_max", m.degree_max}};
    if (m.seed) {
        j["seed"] = *m.seed;
        j["prng"] = m.prng;
        j["isolated_fixed"] = m.isolated_fixed;
    }
    if (m.connected) j["connected"] = *m.connected;
    return j;
}

inline json to_json(const SimulationConfig& c, int n) {
    json j{{"mu", c.mu},
           {"sigma", c.sigma},
           {"horizon", c.horizon},
           {"runs", c.runs},
           {"seed", c.seed},
           {"record_individuals", c.record_individuals},
           {"n", n},
           {"prng", std::string(kPrngId)}};
    if (c.first_opinion_override) j["first_opinion_override"] = *c.first_opinion_override;
    return j;
}

// Long-format CSV: one row per (k, run).
inline void write_sim_long_csv(std::ostream& os, const SimulationTrace& t) {
    os << "k,run,ave\n";
    for (std::size_t run = 0; run < t.run_averages.size(); ++run)
        for (std::size_t k = 0; k < t.run_averages[run].size(); ++k)
            os << k << "," << run << "," << format_double(t.run_averages[run][k]) << "\n";
}

// Summary CSV with the analytic variance alongside the empirical one.
inline void write_sim_summary_csv(std::ostream& os, const SimulationTrace& t,
                                  const RowStochasticMatrix& p) {
    const std::vector<double> analytic = analytic_variance_series(
        p, t.config.sigma, static_cast<int>(t.mean_ave.size()) - 1);
    os << "k,mean_ave,var_ave,analytic_var\n";
    for (std::size_t k = 0; k < t.mean_ave.size(); ++k)
        os << k << "," << format_double(t.mean_ave[k]) << "," << format_double(t.var_ave[k])
           << "," << format_double(analytic[k]) << "\n";
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open " + path + " for writing");
    os << j.dump(2) << "\n";
}

inline json read_json_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw Error(path + ": invalid JSON: " + e.what());
    }
    return j;
}

// FNV-1a hash of a file's bytes, for manifests.
inline std::string file_hash(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (is.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace crowdwise
