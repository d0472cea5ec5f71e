#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "crowdwise/degroot.hpp"
#include "crowdwise/graph_families.hpp"
#include "crowdwise/report_io.hpp"
#include "crowdwise/triplet_io.hpp"
#include "crowdwise/wisdom.hpp"

namespace crowdwise {

inline constexpr const char* kToolVersion = "0.1.0";

// exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitComputation = 2;
inline constexpr int kExitCheckFailed = 3;

namespace cli_detail {

inline std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline std::vector<int> parse_grid(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw PreconditionError("empty size grid");
    return out;
}

inline std::vector<std::string> split_csv(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

struct FamilyOptions {
    std::string family;
    double nu = 0.0;
    double c = 0.0;
    int m = 0;
    int m0 = 0;
    double exponent = 0.0;
    bool has_nu = false, has_c = false, has_m = false, has_m0 = false, has_exponent = false;

    std::map<std::string, double> params() const {
        std::map<std::string, double> p;
        if (has_nu) p["nu"] = nu;
        if (has_c) p["c"] = c;
        if (has_m) p["m"] = m;
        if (has_m0) p["m0"] = m0;
        if (has_exponent) p["exponent"] = exponent;
        return p;
    }
};

inline void add_family_flags(CLI::App* cmd, FamilyOptions& f) {
    cmd->add_option("--nu", f.nu, "biased-path drift ratio (> 1)")->each([&f](const std::string&) {
        f.has_nu = true;
    });
    cmd->add_option("--c", f.c, "erdos-renyi density constant (> 1)")->each([&f](const std::string&) {
        f.has_c = true;
    });
    cmd->add_option("--m", f.m, "attachment edges per arriving node")->each([&f](const std::string&) {
        f.has_m = true;
    });
    cmd->add_option("--m0", f.m0, "initial clique size")->each([&f](const std::string&) {
        f.has_m0 = true;
    });
    cmd->add_option("--exponent", f.exponent, "super-linear attachment exponent (> 1)")
        ->each([&f](const std::string&) { f.has_exponent = true; });
}

inline json manifest_skeleton(const std::vector<std::string>& args) {
    std::string cmdline = "crowdwise";
    for (const auto& a : args) cmdline += " " + a;
    return json{{"tool", "crowdwise"},
                {"version", kToolVersion},
                {"command", cmdline},
                {"prng", std::string(kPrngId)},
                {"started", timestamp()}};
}

inline json output_entry(const std::string& path) {
    return json{{"path", path}, {"hash", file_hash(path)}};
}

} // namespace cli_detail

// --------------------------------------------------------------------------
// generate
// --------------------------------------------------------------------------

inline int cmd_generate(const cli_detail::FamilyOptions& fopt, int size,
                        std::optional<std::uint64_t> seed, std::string out_prefix,
                        std::ostream& out) {
    const FamilyGenerator gen = make_family(fopt.family, fopt.params(), seed);
    const GeneratedFamily fam = gen.generate(size);
    if (out_prefix.empty()) out_prefix = fopt.family + "-" + std::to_string(size);
    const std::string mat_path = out_prefix + ".triplet";
    const std::string meta_path = out_prefix + ".meta.json";
    write_matrix_file(mat_path, fam.matrix.sparse(),
                      "crowdwise " + fopt.family + " size=" + std::to_string(size));
    json meta = to_json(fam.meta, fopt.family, fopt.params());
    meta["size_parameter"] = size;
    write_json_file(meta_path, meta);
    out << "wrote " << mat_path << " (" << fam.matrix.n() << " nodes, " << fam.matrix.nnz()
        << " entries) and " << meta_path << "\n";
    return kExitOk;
}

// --------------------------------------------------------------------------
// diagnose
// --------------------------------------------------------------------------

inline int cmd_diagnose(const cli_detail::FamilyOptions& fopt, const std::vector<int>& grid,
                        const std::vector<std::string>& notion_names,
                        std::optional<std::uint64_t> seed, const DiagnosticsConfig& cfg,
                        const std::string& out_dir, std::ostream& out) {
    std::vector<Notion> notions;
    for (const std::string& s : notion_names) notions.push_back(Notion::parse(s));
    if (notions.empty()) throw PreconditionError("no notions requested");

    const FamilyGenerator gen = make_family(fopt.family, fopt.params(), seed);
    const WisdomReport report = run_diagnostics(gen, grid, notions, cfg);

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_json_file(out_dir + "/report.json", to_json(report));
        for (const NotionReport& nr : report.notions) {
            std::string name = nr.trace.notion;
            std::replace(name.begin(), name.end(), ':', '-');
            std::ofstream os(out_dir + "/trace-" + name + ".csv");
            write_trace_csv(os, nr.trace);
        }
    }

    out << "family=" << report.family << " kind=" << to_string(report.kind) << "\n";
    out << "notion              slope      last-value   verdict\n";
    for (const NotionReport& nr : report.notions) {
        char line[128];
        const double last = nr.trace.points.empty() ? 0.0 : nr.trace.points.back().value;
        std::snprintf(line, sizeof line, "%-19s %-10.4g %-12.6g %s", nr.trace.notion.c_str(),
                      nr.trace.fit.slope, last, to_string(nr.verdict).c_str());
        out << line << "\n";
    }
    for (const std::string& f : report.flags) out << "FLAG: " << f << "\n";
    return report.flags.empty() ? kExitOk : kExitCheckFailed;
}

// --------------------------------------------------------------------------
// simulate
// --------------------------------------------------------------------------

struct SimulateOptions {
    cli_detail::FamilyOptions fopt;
    std::map<std::string, double> params; // resolved family parameters
    int size = 0;
    std::string matrix_path;
    SimulationConfig cfg;
    std::string out_prefix = "sim";
    bool check_variance = false;
};

inline int cmd_simulate(const SimulateOptions& opt, const std::vector<std::string>& args,
                        std::ostream& out) {
    RowStochasticMatrix p = [&]() {
        if (!opt.matrix_path.empty()) return read_matrix_file(opt.matrix_path);
        const FamilyGenerator gen = make_family(opt.fopt.family, opt.params, opt.cfg.seed);
        return gen.generate(opt.size).matrix;
    }();

    const SimulationTrace trace = simulate(p, opt.cfg);

    const std::string long_path = opt.out_prefix + "-long.csv";
    const std::string summary_path = opt.out_prefix + "-summary.csv";
    const std::string manifest_path = opt.out_prefix + "-manifest.json";
    {
        std::ofstream os(long_path);
        if (!os) throw Error("cannot open " + long_path + " for writing");
        write_sim_long_csv(os, trace);
    }
    {
        std::ofstream os(summary_path);
        if (!os) throw Error("cannot open " + summary_path + " for writing");
        write_sim_summary_csv(os, trace, p);
    }
    json manifest = cli_detail::manifest_skeleton(args);
    manifest["sim_config"] = to_json(opt.cfg, p.n());
    if (!opt.fopt.family.empty()) {
        manifest["family"] = opt.fopt.family;
        manifest["params"] = opt.params;
        manifest["size"] = opt.size;
    }
    if (!opt.matrix_path.empty()) manifest["matrix"] = opt.matrix_path;
    manifest["finished"] = cli_detail::timestamp();
    manifest["outputs"] =
        json::array({cli_detail::output_entry(long_path), cli_detail::output_entry(summary_path)});
    write_json_file(manifest_path, manifest);
    out << "wrote " << long_path << ", " << summary_path << ", " << manifest_path << "\n";

    if (opt.check_variance) {
        // empirical variance must sit within 4 standard errors of the
        // analytic value at a handful of representative steps
        if (opt.cfg.runs < 10) throw PreconditionError("--check-variance needs at least 10 runs");
        const std::vector<int> ks = [&]() {
            std::vector<int> v{0, 1, 2, 5};
            v.push_back(opt.cfg.horizon);
            std::vector<int> kept;
            for (int k : v)
                if (k <= opt.cfg.horizon &&
                    (kept.empty() || k > kept.back()))
                    kept.push_back(k);
            return kept;
        }();
        bool ok = true;
        for (int k : ks) {
            const double analytic = analytic_variance(p, opt.cfg.sigma, k);
            const double se = analytic * std::sqrt(2.0 / (opt.cfg.runs - 1));
            const double emp = trace.var_ave[k];
            const bool pass = std::abs(emp - analytic) <= 4.0 * se;
            out << (pass ? "[PASS]" : "[FAIL]") << " variance identity at k=" << k
                << ": empirical=" << emp << " analytic=" << analytic << " (4se=" << 4.0 * se
                << ")\n";
            ok = ok && pass;
        }
        if (!ok) return kExitCheckFailed;
    }
    return kExitOk;
}

// --------------------------------------------------------------------------
// check: property battery on one matrix
// --------------------------------------------------------------------------

inline int cmd_check(const RowStochasticMatrix& p, const WeightGraph* w, int k_max,
                     std::ostream& out) {
    int failures = 0;
    const auto report = [&](bool ok, const std::string& what) {
        out << (ok ? "[PASS] " : "[FAIL] ") << what << "\n";
        if (!ok) ++failures;
    };

    const int n = p.n();
    bool rows_ok = true;
    for (int r = 0; r < n; ++r) {
        double s = 0.0;
        for (int k = p.sparse().row_begin(r); k < p.sparse().row_end(r); ++k)
            s += p.sparse().value(k);
        rows_ok = rows_ok && std::abs(s - 1.0) <= kRowSumTol;
    }
    report(rows_ok, "row sums equal 1 within 1e-12");

    bool simplex_ok = true;
    bool profile_ok = true;
    {
        std::vector<double> chi(static_cast<std::size_t>(n), 1.0 / n);
        std::vector<double> next;
        for (int k = 0; k <= std::min(k_max, 50); ++k) {
            if (k > 0) {
                p.sparse().left_multiply(chi, next);
                chi.swap(next);
            }
            simplex_ok = simplex_ok && simplex_norm_sandwich_holds(chi);
            double s = 0.0;
            for (double v : chi) s += v;
            profile_ok = profile_ok && std::abs(s - 1.0) <= kSimplexTol;
        }
    }
    report(profile_ok, "influence profiles stay on the simplex");
    report(simplex_ok, "simplex norm sandwich holds for every chi(k)");

    const std::vector<double> cs = column_sums(p);
    double total = 0.0;
    for (double v : cs) total += v;
    report(std::abs(total - n) <= 1e-9 * n, "column sums total n");

    bool phi_monotone = true;
    double prev = 0.0;
    for (int s = 0; s <= n; ++s) {
        const double phi = max_influence(p, s);
        phi_monotone = phi_monotone && phi >= prev - 1e-12;
        prev = phi;
    }
    report(phi_monotone, "max influence is non-decreasing in s");
    report(std::abs(max_influence(p, 1) / n - max_column_average(p)) <= 1e-12,
           "Phi(1)/n equals the maximum column average");

    const bool primitive = is_primitive(p);
    out << "[info] matrix is " << (primitive ? "primitive" : "not primitive") << "\n";
    if (primitive) {
        try {
            const DistributionVector pi = dominant_left_eigenvector(p);
            report(simplex_norm_sandwich_holds(pi.pi), "simplex norm sandwich holds for pi");
            std::vector<double> piP;
            p.sparse().left_multiply(pi.pi, piP);
            double resid = 0.0;
            for (int i = 0; i < n; ++i) resid += std::abs(piP[i] - pi.pi[i]);
            report(resid < 1e-11, "pi^T P = pi^T within 1e-11");
        } catch (const Error& e) {
            report(false, std::string("stationary vector: ") + e.what());
        }
    }
    if (w && w->kind() == GraphKind::EqualNeighbor) {
        const BoundCheckReport b = equal_neighbor_power_bound_check(*w, k_max);
        report(b.ok(), "equal-neighbor power bound ||(1/n)P^k||_1 <= 2||(1/n)P||_1^{1/2}");
    }
    return failures == 0 ? kExitOk : kExitCheckFailed;
}

// --------------------------------------------------------------------------
// sweep
// --------------------------------------------------------------------------

namespace cli_detail {

struct JobResult {
    std::string name;
    bool ok = false;
    std::string error;
    std::vector<std::string> outputs;
};

inline JobResult run_sweep_job(const json& job, const std::string& out_dir) {
    JobResult res;
    res.name = job.value("name", std::string("job"));
    const std::string dir = out_dir + "/" + res.name;
    try {
        const std::string type = job.at("type").get<std::string>();
        std::filesystem::create_directories(dir);
        FamilyOptions fopt;
        fopt.family = job.value("family", std::string());
        std::map<std::string, double> params;
        if (job.contains("params")) params = job["params"].get<std::map<std::string, double>>();
        std::optional<std::uint64_t> seed;
        if (job.contains("seed")) seed = job["seed"].get<std::uint64_t>();

        std::ostringstream sink;
        if (type == "generate") {
            const FamilyGenerator gen = make_family(fopt.family, params, seed);
            const int size = job.at("size").get<int>();
            const GeneratedFamily fam = gen.generate(size);
            const std::string prefix = dir + "/" + fopt.family + "-" + std::to_string(size);
            write_matrix_file(prefix + ".triplet", fam.matrix.sparse());
            write_json_file(prefix + ".meta.json", to_json(fam.meta, fopt.family, params));
            res.outputs = {prefix + ".triplet", prefix + ".meta.json"};
        } else if (type == "diagnose") {
            const FamilyGenerator gen = make_family(fopt.family, params, seed);
            std::vector<Notion> notions;
            for (const auto& s : job.at("notions")) notions.push_back(Notion::parse(s));
            DiagnosticsConfig cfg;
            if (job.contains("config")) {
                const json& c = job["config"];
                cfg.slope_min = c.value("slope_min", cfg.slope_min);
                cfg.value_max = c.value("value_max", cfg.value_max);
                cfg.value_floor = c.value("value_floor", cfg.value_floor);
                cfg.seeds = c.value("seeds", cfg.seeds);
                cfg.k_cap = c.value("k_cap", cfg.k_cap);
                cfg.mixing_cap = c.value("mixing_cap", cfg.mixing_cap);
            }
            const std::vector<int> grid = job.at("grid").get<std::vector<int>>();
            const WisdomReport report = run_diagnostics(gen, grid, notions, cfg);
            write_json_file(dir + "/report.json", to_json(report));
            res.outputs = {dir + "/report.json"};
            for (const NotionReport& nr : report.notions) {
                std::string name = nr.trace.notion;
                std::replace(name.begin(), name.end(), ':', '-');
                const std::string path = dir + "/trace-" + name + ".csv";
                std::ofstream os(path);
                write_trace_csv(os, nr.trace);
                res.outputs.push_back(path);
            }
            if (!report.flags.empty())
                throw Error("diagnostic flags raised: " + report.flags.front());
        } else if (type == "simulate") {
            SimulateOptions opt;
            opt.fopt = fopt;
            opt.params = params;
            opt.size = job.value("size", 0);
            opt.matrix_path = job.value("matrix", std::string());
            opt.cfg.mu = job.value("mu", 0.0);
            opt.cfg.sigma = job.value("sigma", 1.0);
            opt.cfg.horizon = job.value("T", 1);
            opt.cfg.runs = job.value("runs", 1);
            opt.cfg.seed = job.value("seed", 0);
            if (job.contains("x1")) opt.cfg.first_opinion_override = job["x1"].get<double>();
            opt.out_prefix = dir + "/" + res.name;
            cmd_simulate(opt, {}, sink);
            res.outputs = {opt.out_prefix + "-long.csv", opt.out_prefix + "-summary.csv",
                           opt.out_prefix + "-manifest.json"};
        } else {
            throw Error("unknown job type '" + type + "'");
        }
        res.ok = true;
    } catch (const std::exception& e) {
        res.ok = false;
        res.error = e.what();
    }
    return res;
}

} // namespace cli_detail

inline int cmd_sweep(const std::string& config_path, std::string out_dir, int jobs,
                     const std::vector<std::string>& args, std::ostream& out) {
    const json config = read_json_file(config_path);
    if (!config.contains("jobs") || !config["jobs"].is_array())
        throw Error(config_path + ": config must contain a 'jobs' array");
    {
        std::vector<std::string> names;
        for (const auto& j : config["jobs"])
            names.push_back(j.value("name", std::string("job")));
        std::sort(names.begin(), names.end());
        if (std::adjacent_find(names.begin(), names.end()) != names.end())
            throw Error(config_path + ": job names must be unique (outputs share a directory)");
    }
    if (out_dir.empty()) out_dir = config.value("out_dir", std::string("sweep-out"));
    std::filesystem::create_directories(out_dir);

    if (const char* env = std::getenv("CROWDWISE_JOBS")) jobs = std::max(1, std::atoi(env));
    jobs = std::max(1, jobs);

    const json& job_list = config["jobs"];
    std::vector<cli_detail::JobResult> results(job_list.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= job_list.size()) break;
            results[i] = cli_detail::run_sweep_job(job_list[i], out_dir);
        }
    };
    if (jobs == 1 || job_list.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < std::min<int>(jobs, static_cast<int>(job_list.size())); ++t)
            pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    json manifest = cli_detail::manifest_skeleton(args);
    manifest["config_hash"] = file_hash(config_path);
    json jjobs = json::array();
    bool all_ok = true;
    for (const auto& r : results) {
        json jr{{"name", r.name}, {"status", r.ok ? "ok" : "failed"}};
        if (!r.ok) {
            jr["error"] = r.error;
            all_ok = false;
        }
        json outs = json::array();
        for (const auto& path : r.outputs) outs.push_back(cli_detail::output_entry(path));
        jr["outputs"] = outs;
        jjobs.push_back(jr);
        out << (r.ok ? "[ok]   " : "[fail] ") << r.name << (r.ok ? "" : ": " + r.error) << "\n";
    }
    manifest["jobs"] = jjobs;
    manifest["finished"] = cli_detail::timestamp();
    write_json_file(out_dir + "/manifest.json", manifest);
    out << "manifest: " << out_dir << "/manifest.json\n";
    return all_ok ? kExitOk : kExitComputation;
}

// --------------------------------------------------------------------------
// entry point
// --------------------------------------------------------------------------

inline int run_cli(std::vector<std::string> args, std::ostream& out = std::cout,
                   std::ostream& err = std::cerr) {
    CLI::App app{"crowdwise: wisdom diagnostics for averaging influence systems"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "emit a family matrix and its metadata");
    cli_detail::FamilyOptions gen_f;
    int gen_size = 0;
    std::uint64_t gen_seed = 0;
    bool gen_has_seed = false;
    std::string gen_out;
    gen->add_option("family", gen_f.family, "family name")->required();
    gen->add_option("--n,--size,--L,--r", gen_size, "size parameter")->required();
    cli_detail::add_family_flags(gen, gen_f);
    gen->add_option("--seed", gen_seed, "PRNG seed (random families)")
        ->each([&](const std::string&) { gen_has_seed = true; });
    gen->add_option("--out", gen_out, "output path prefix");

    // diagnose
    auto* diag = app.add_subcommand("diagnose", "trend diagnostics over a size grid");
    cli_detail::FamilyOptions diag_f;
    std::string diag_grid, diag_notions = "one-time,wise";
    std::uint64_t diag_seed = 0;
    bool diag_has_seed = false;
    std::string diag_out;
    DiagnosticsConfig diag_cfg;
    diag->add_option("family", diag_f.family, "family name")->required();
    diag->add_option("--n-grid,--grid,--m-grid,--L-grid,--r-grid", diag_grid,
                     "comma-separated size grid")
        ->required();
    diag->add_option("--notions", diag_notions,
                     "comma-separated notions (one-time, finite-time:k, wise, pre-uniform, "
                     "uniform-sufficient, prominent-individual, prominent-family:a, dmax-dmin)");
    cli_detail::add_family_flags(diag, diag_f);
    diag->add_option("--seed", diag_seed, "base seed for random families")
        ->each([&](const std::string&) { diag_has_seed = true; });
    diag->add_option("--seeds", diag_cfg.seeds, "replicates per grid point (random families)");
    diag->add_option("--k-cap", diag_cfg.k_cap, "pre-uniform sup truncation (0 = auto)");
    diag->add_option("--mixing-cap", diag_cfg.mixing_cap, "mixing time cap (0 = auto)");
    diag->add_option("--slope-min", diag_cfg.slope_min, "decay threshold on -slope");
    diag->add_option("--value-max", diag_cfg.value_max, "wise needs last value below this");
    diag->add_option("--value-floor", diag_cfg.value_floor, "unwise needs last value above this");
    diag->add_option("--out", diag_out, "output directory for report + traces");

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo DeGroot dynamics");
    SimulateOptions sim_opt;
    double sim_x1 = 0.0;
    bool sim_has_x1 = false;
    sim->add_option("--family", sim_opt.fopt.family, "family name");
    sim->add_option("--n,--size", sim_opt.size, "family size parameter");
    sim->add_option("--matrix", sim_opt.matrix_path, "triplet matrix file");
    cli_detail::add_family_flags(sim, sim_opt.fopt);
    sim->add_option("--T", sim_opt.cfg.horizon, "time horizon");
    sim->add_option("--mu", sim_opt.cfg.mu, "true parameter");
    sim->add_option("--sigma", sim_opt.cfg.sigma, "initial noise std");
    sim->add_option("--runs", sim_opt.cfg.runs, "Monte Carlo runs");
    sim->add_option("--seed", sim_opt.cfg.seed, "PRNG seed");
    sim->add_flag("--record-individuals", sim_opt.cfg.record_individuals,
                  "keep per-individual series in memory");
    sim->add_option("--x1", sim_x1, "clamp the first initial opinion to a fixed value")
        ->each([&](const std::string&) { sim_has_x1 = true; });
    sim->add_option("--out", sim_opt.out_prefix, "output path prefix");
    sim->add_flag("--check-variance", sim_opt.check_variance,
                  "fail (exit 3) when the variance identity breaks at 4 SE");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run a batch of jobs from a JSON config");
    std::string sweep_config, sweep_out;
    int sweep_jobs = 1;
    sweep->add_option("config", sweep_config, "JSON config file")->required();
    sweep->add_option("--out", sweep_out, "output directory");
    sweep->add_option("--jobs", sweep_jobs, "parallel jobs (env CROWDWISE_JOBS overrides)");

    // check
    auto* chk = app.add_subcommand("check", "property battery on a matrix");
    cli_detail::FamilyOptions chk_f;
    int chk_size = 0;
    std::string chk_matrix;
    int chk_kmax = 50;
    std::uint64_t chk_seed = 0;
    chk->add_option("--family", chk_f.family, "family name");
    chk->add_option("--n,--size", chk_size, "family size parameter");
    chk->add_option("--matrix", chk_matrix, "triplet matrix file");
    cli_detail::add_family_flags(chk, chk_f);
    chk->add_option("--seed", chk_seed, "seed for random families");
    chk->add_option("--k-max", chk_kmax, "power horizon for chi checks");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (gen->parsed()) {
            return cmd_generate(gen_f, gen_size,
                                gen_has_seed ? std::optional<std::uint64_t>(gen_seed)
                                             : std::nullopt,
                                gen_out, out);
        }
        if (diag->parsed()) {
            return cmd_diagnose(diag_f, cli_detail::parse_grid(diag_grid),
                                cli_detail::split_csv(diag_notions),
                                diag_has_seed ? std::optional<std::uint64_t>(diag_seed)
                                              : std::nullopt,
                                diag_cfg, diag_out, out);
        }
        if (sim->parsed()) {
            if (sim_opt.matrix_path.empty() && sim_opt.fopt.family.empty())
                throw PreconditionError("simulate needs --matrix or --family");
            if (sim_has_x1) sim_opt.cfg.first_opinion_override = sim_x1;
            sim_opt.params = sim_opt.fopt.params();
            return cmd_simulate(sim_opt, args, out);
        }
        if (sweep->parsed()) {
            return cmd_sweep(sweep_config, sweep_out, sweep_jobs, args, out);
        }
        if (chk->parsed()) {
            if (!chk_matrix.empty()) {
                const RowStochasticMatrix p = read_matrix_file(chk_matrix);
                return cmd_check(p, nullptr, chk_kmax, out);
            }
            if (chk_f.family.empty())
                throw PreconditionError("check needs --matrix or --family");
            const FamilyGenerator g = make_family(chk_f.family, chk_f.params(), chk_seed);
            const GeneratedFamily fam = g.generate(chk_size);
            return cmd_check(fam.matrix, &fam.graph, chk_kmax, out);
        }
    } catch (const PreconditionError& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitComputation;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitComputation;
    }
    return kExitUsage;
}

} // namespace crowdwise
