// Acceptance suite: every release criterion evaluated end to end, one
// PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "crowdwise/degroot.hpp"
#include "crowdwise/graph_families.hpp"
#include "crowdwise/wisdom.hpp"
#include "oracles.hpp"

using namespace crowdwise;

namespace {

struct Criterion {
    int failures = 0;
    std::ostringstream log;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            ++failures;
            log << "    FAILED: " << what << "\n";
        }
    }
};

int g_total_failures = 0;

void run(int number, const std::string& title, void (*fn)(Criterion&)) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        fn(c);
    } catch (const std::exception& e) {
        c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] criterion %d: %s (%.1fs)\n", c.failures == 0 ? "PASS" : "FAIL", number,
                title.c_str(), secs);
    if (c.failures > 0) {
        std::fputs(c.log.str().c_str(), stdout);
        g_total_failures += c.failures;
    }
}

double inf_norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. closed-form eigenvectors
// ---------------------------------------------------------------------------

void criterion1(Criterion& c) {
    const auto started = std::chrono::steady_clock::now();
    for (int n : {3, 10, 100}) {
        const auto pi = dominant_left_eigenvector(star(n).matrix);
        std::vector<double> expected(static_cast<std::size_t>(n), 1.0 / (2.0 * n - 1.0));
        expected[0] = n / (2.0 * n - 1.0);
        c.expect(inf_norm_diff(pi.pi, expected) < 1e-8,
                 "star pi closed form at n=" + std::to_string(n));
    }
    for (double nu : {2.0, 3.0})
        for (int n : {3, 10}) {
            const auto pi = dominant_left_eigenvector(biased_path(n, nu).matrix);
            const auto expected = biased_path_pi(n, nu);
            c.expect(inf_norm_diff(pi.pi, expected.pi) < 1e-8,
                     "biased path pi at n=" + std::to_string(n) + " nu=" + std::to_string(nu));
        }
    for (int n : {6, 20}) {
        const GeneratedFamily fam = star_complete(n);
        const auto pi = dominant_left_eigenvector(fam.matrix);
        const double denom = static_cast<double>(n) * n + n;
        c.expect(close(pi.pi[0], n / denom, 1e-8), "star-complete center mass");
        c.expect(close(pi.pi[1], 1.0 / denom, 1e-8), "star-complete leaf mass");
        c.expect(close(pi.pi[n], n / denom, 1e-8), "star-complete contracted mass");
        c.expect(close(pi.pi[n + 1], (n - 1.0) / denom, 1e-8), "star-complete K-node mass");
    }
    // pi = d / sum(d) for symmetric-weight families
    std::vector<GeneratedFamily> sym;
    sym.push_back(weighted_double_star(3));
    sym.push_back(weighted_double_star(10));
    sym.push_back(erdos_renyi(500, 2.0, 11));
    sym.push_back(barabasi_albert(500, 3, 3, 11));
    sym.push_back(hub_ring(8));
    for (const GeneratedFamily& fam : sym) {
        if (!is_primitive(fam.matrix)) {
            c.expect(false, "symmetric family instance is not primitive");
            continue;
        }
        const auto pi = dominant_left_eigenvector(fam.matrix);
        const auto d = fam.graph.degrees();
        const double total = std::accumulate(d.begin(), d.end(), 0.0);
        std::vector<double> expected(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) expected[i] = d[i] / total;
        c.expect(inf_norm_diff(pi.pi, expected) < 1e-8,
                 "pi = d/sum(d) on a symmetric family (n=" +
                     std::to_string(fam.meta.actual_node_count) + ")");
    }
    // 12 eigenvector computations at under a second each
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    c.expect(secs < 12.0, fmt("criterion runtime %.1fs within the %g s budget", secs, 12.0));
}

// ---------------------------------------------------------------------------
// 2. column-sum formulas
// ---------------------------------------------------------------------------

void criterion2(Criterion& c) {
    for (int n : {3, 10, 100}) {
        const auto cs = column_sums(star(n).matrix);
        c.expect(close(cs[0], n - 1.0 + 1.0 / n, 1e-12),
                 "star center column sum at n=" + std::to_string(n));
    }
    for (int n : {6, 20}) {
        const auto cs = column_sums(star_complete(n).matrix);
        c.expect(close(cs[0], n - 1.0 + 1.0 / n, 1e-12), "star-complete center column");
        c.expect(close(cs[n], 1.0 + 1.0 / n, 1e-12), "star-complete contracted column");
        c.expect(close(cs[1], 1.0 / n, 1e-12), "star-complete leaf column");
        c.expect(close(cs[n + 1], 1.0 / n + (n - 2.0) / (n - 1.0), 1e-12),
                 "star-complete K-node column");
    }
    for (int m : {3, 10}) {
        const GeneratedFamily fam = weighted_double_star(m);
        const RowStochasticMatrix p2 = multiply(fam.matrix, fam.matrix);
        const auto cs = column_sums(p2);
        c.expect(cs[0] >= m * m / 2.0, "double-star P^2 root column at m=" + std::to_string(m));
    }
}

// ---------------------------------------------------------------------------
// 3. verdict reproduction
// ---------------------------------------------------------------------------

void criterion3(Criterion& c) {
    const auto started = std::chrono::steady_clock::now();
    DiagnosticsConfig cfg;
    const std::vector<int> grid{10, 20, 40, 80, 160};

    {
        const WisdomReport rep = run_diagnostics(
            make_family("star"), grid,
            {Notion{Notion::Kind::OneTime}, Notion{Notion::Kind::Wise}}, cfg);
        c.expect(rep.find("one-time")->verdict == Verdict::Unwise, "star one-time unwise");
        c.expect(rep.find("wise")->verdict == Verdict::Unwise, "star wise-notion unwise");
    }
    {
        const WisdomReport rep = run_diagnostics(
            make_family("star-complete"), {6, 12, 24, 48, 96},
            {Notion{Notion::Kind::OneTime}, Notion{Notion::Kind::Wise}}, cfg);
        c.expect(rep.find("one-time")->verdict == Verdict::Unwise,
                 "star-complete one-time unwise");
        c.expect(rep.find("wise")->verdict == Verdict::Wise, "star-complete wise");
    }
    {
        std::vector<Notion> notions{Notion{Notion::Kind::Wise}};
        for (int k = 1; k <= 5; ++k) {
            Notion n;
            n.kind = Notion::Kind::FiniteTime;
            n.k = k;
            notions.push_back(n);
        }
        const WisdomReport rep =
            run_diagnostics(make_family("biased-path", {{"nu", 2.0}}), grid, notions, cfg);
        for (int k = 1; k <= 5; ++k)
            c.expect(rep.find("finite-time:" + std::to_string(k))->verdict == Verdict::Wise,
                     "biased path finite-time wise at k=" + std::to_string(k));
        c.expect(rep.find("wise")->verdict == Verdict::Unwise, "biased path not wise");
        const auto pi50 = dominant_left_eigenvector(biased_path(50, 2.0).matrix);
        c.expect(close(pi50.max_entry(), 0.5, 0.01), "biased path pi max near 1/2 at n=50");
    }
    {
        // reversed tree over L in {8..12}
        const std::vector<int> lgrid{8, 9, 10, 11, 12};
        std::vector<Notion> notions;
        for (int k = 1; k <= 3; ++k) {
            Notion n;
            n.kind = Notion::Kind::FiniteTime;
            n.k = k;
            notions.push_back(n);
        }
        const WisdomReport rep =
            run_diagnostics(make_family("reversed-tree"), lgrid, notions, cfg);
        for (int k = 1; k <= 3; ++k)
            c.expect(rep.find("finite-time:" + std::to_string(k))->verdict == Verdict::Wise,
                     "tree finite-time wise at k=" + std::to_string(k));

        const TrendTrace wise = wisdom_trace(make_family("reversed-tree"), lgrid, cfg);
        for (std::size_t i = 1; i < wise.points.size(); ++i)
            c.expect(wise.points[i].value < wise.points[i - 1].value,
                     "tree wisdom trace decreasing");
        const double root12 = wise.points.back().value;
        c.expect(std::abs(root12 - 1.0 / 12.0) <= 0.1 / 12.0,
                 fmt("tree pi_root %.5f within 10%% of 1/L=%.5f at L=12", root12, 1.0 / 12.0));

        for (int L : lgrid) {
            const GeneratedFamily fam = reversed_binary_tree(L);
            const double n = fam.meta.actual_node_count;
            const double peak = influence_profile(fam.matrix, L - 1).max_entry();
            c.expect(peak >= 0.5 * (1.0 - 2.0 / n),
                     "tree pre-uniform value at k=L-1, L=" + std::to_string(L));
        }
    }
    {
        std::vector<Notion> notions{Notion{Notion::Kind::OneTime}};
        Notion two;
        two.kind = Notion::Kind::FiniteTime;
        two.k = 2;
        notions.push_back(two);
        const WisdomReport rep =
            run_diagnostics(make_family("double-star"), {4, 8, 16, 32, 64}, notions, cfg);
        c.expect(rep.find("one-time")->verdict == Verdict::Wise, "double star one-time wise");
        c.expect(rep.find("finite-time:2")->verdict == Verdict::Unwise,
                 "double star not two-time wise");
        const TrendTrace& t2 = rep.find("finite-time:2")->trace;
        for (const TracePoint& p : t2.points) {
            const int m = static_cast<int>(std::round(std::sqrt(p.n - 1.0)));
            if (m >= 10)
                c.expect(p.value >= 0.4 && p.value <= 0.55,
                         fmt("double star k=2 value %.4f in [0.4, 0.55] (n=%g)", p.value,
                             static_cast<double>(p.n)));
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    c.expect(secs < 120.0, fmt("criterion runtime %.1fs within the %g s budget", secs, 120.0));
}

// ---------------------------------------------------------------------------
// 4. property suites
// ---------------------------------------------------------------------------

void criterion4(Criterion& c) {
    // recursive influence bound for products: 200 random pairs
    {
        Rng rng(1001);
        long violations = 0;
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 2 + static_cast<int>(rng.uniform_below(39));
            const auto p = oracle::random_stochastic(n, rng);
            const auto q = oracle::random_stochastic(n, rng);
            const BoundCheckReport rep =
                recursive_influence_bound_check(p, q, {0.5, 1.0, 2.0, 5.0, 10.0});
            violations += rep.violations;
        }
        c.expect(violations == 0, "recursive influence bound: " + std::to_string(violations) +
                                      " violations in 200 random pairs");
    }
    // equal-neighbor power bound: 100 random connected graphs + named instances
    {
        Rng rng(2002);
        long violations = 0;
        for (int trial = 0; trial < 100; ++trial) {
            const int n = 3 + static_cast<int>(rng.uniform_below(198));
            const WeightGraph w = oracle::random_connected_equal_neighbor(n, rng);
            violations += equal_neighbor_power_bound_check(w, 50).violations;
        }
        violations += equal_neighbor_power_bound_check(star_complete(20).graph, 50).violations;
        for (std::uint64_t seed : {1, 2}) {
            const GeneratedFamily er = erdos_renyi(500, 2.0, seed);
            violations += equal_neighbor_power_bound_check(er.graph, 50).violations;
        }
        c.expect(violations == 0, "equal-neighbor power bound: " + std::to_string(violations) +
                                      " violations");
    }
    // simplex sandwich + Phi properties over a corpus
    {
        std::vector<GeneratedFamily> corpus;
        corpus.push_back(star(40));
        corpus.push_back(star_complete(10));
        corpus.push_back(biased_path(30, 2.0));
        corpus.push_back(reversed_binary_tree(6));
        corpus.push_back(weighted_double_star(6));
        corpus.push_back(hub_ring(6));
        corpus.push_back(erdos_renyi(300, 2.0, 9));
        corpus.push_back(barabasi_albert(300, 3, 3, 9));
        corpus.push_back(superlinear_pa(300, 1, 2.0, 9));
        bool sandwich_ok = true, phi_ok = true;
        for (const GeneratedFamily& fam : corpus) {
            for (int k = 0; k <= 5; ++k)
                sandwich_ok =
                    sandwich_ok && simplex_norm_sandwich_holds(influence_profile(fam.matrix, k).chi);
            if (is_primitive(fam.matrix))
                sandwich_ok = sandwich_ok &&
                              simplex_norm_sandwich_holds(dominant_left_eigenvector(fam.matrix).pi);
            double prev = 0.0;
            for (int s = 0; s <= fam.matrix.n(); ++s) {
                const double phi = max_influence(fam.matrix, s);
                phi_ok = phi_ok && phi >= prev - 1e-12;
                prev = phi;
            }
            phi_ok = phi_ok && close(max_influence(fam.matrix, 1) / fam.matrix.n(),
                                     max_column_average(fam.matrix), 1e-12);
        }
        c.expect(sandwich_ok, "simplex norm sandwich on every computed chi and pi");
        c.expect(phi_ok, "Phi monotone and Phi(1)/n equals the one-time value");
    }
    // oracle equivalence: sparse chi(k) vs dense P^k column averages
    {
        Rng rng(3003);
        bool ok = true;
        std::vector<RowStochasticMatrix> mats;
        for (int trial = 0; trial < 20; ++trial)
            mats.push_back(oracle::random_stochastic(
                2 + static_cast<int>(rng.uniform_below(63)), rng));
        mats.push_back(star(31).matrix);
        mats.push_back(star_complete(16).matrix);
        mats.push_back(weighted_double_star(7).matrix);
        for (const auto& p : mats) {
            const auto dense = oracle::Dense::from(p);
            for (int k = 0; k <= 5; ++k) {
                const auto expected = oracle::dense_column_averages(dense.power(k));
                const auto chi = influence_profile(p, k);
                for (int j = 0; j < p.n(); ++j)
                    ok = ok && std::abs(chi.chi[j] - expected[j]) <= 1e-10;
            }
        }
        c.expect(ok, "sparse chi(k) equals dense P^k column averages at 1e-10");
    }
}

// ---------------------------------------------------------------------------
// 5. Monte Carlo validation
// ---------------------------------------------------------------------------

void criterion5(Criterion& c) {
    const auto started = std::chrono::steady_clock::now();
    SimulationConfig cfg;
    cfg.mu = 0.0;
    cfg.sigma = 1.0;
    cfg.horizon = 20;
    cfg.runs = 400;
    cfg.seed = 20260810;
    const std::vector<int> ks{0, 1, 2, 5, 20};

    std::vector<std::pair<std::string, RowStochasticMatrix>> cases;
    cases.emplace_back("star n=100", star(100).matrix);
    cases.emplace_back("biased path n=100", biased_path(100, 2.0).matrix);
    cases.emplace_back("erdos-renyi n=100", erdos_renyi(100, 2.0, 17).matrix);

    for (const auto& [name, p] : cases) {
        const SimulationTrace t = simulate(p, cfg);
        for (int k : ks) {
            const double analytic = analytic_variance(p, cfg.sigma, k);
            const double se = analytic * std::sqrt(2.0 / (cfg.runs - 1));
            c.expect(std::abs(t.var_ave[k] - analytic) <= 4.0 * se,
                     name + ": variance identity at k=" + std::to_string(k) +
                         fmt(" (emp=%.5g analytic=%.5g)", t.var_ave[k], analytic));
        }
        // unbiasedness at every recorded k
        const std::vector<double> analytic =
            analytic_variance_series(p, cfg.sigma, cfg.horizon);
        for (int k = 0; k <= cfg.horizon; ++k)
            c.expect(std::abs(t.mean_ave[k] - cfg.mu) <=
                         4.0 * std::sqrt(analytic[k] / cfg.runs),
                     name + ": unbiasedness at k=" + std::to_string(k));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    c.expect(secs < 30.0, fmt("criterion runtime %.1fs within the %g s budget", secs, 30.0));
}

// ---------------------------------------------------------------------------
// 6 + 7. random-graph statistics and the uniform-wisdom product
// ---------------------------------------------------------------------------

struct RandomPointStats {
    std::vector<double> one_time;
    std::vector<double> product; // preuniform * tau, mixed seeds only
    int mixed = 0;               // seeds with tau within cap
    int connected = 0;
    std::vector<double> ratio; // d_max/d_min
};

RandomPointStats evaluate_random_point(const FamilyGenerator& g, int n, int seeds,
                                       const DiagnosticsConfig& cfg) {
    RandomPointStats st;
    for (int rep = 0; rep < seeds; ++rep) {
        const GeneratedFamily fam =
            g.generate_with_seed(n, mix_seed(mix_seed(g.seed.value_or(0), n), rep));
        st.one_time.push_back(max_column_average(fam.matrix));
        st.ratio.push_back(fam.meta.degree_max / fam.meta.degree_min);
        if (fam.meta.connected && *fam.meta.connected) ++st.connected;
        InstanceEval eval(fam, cfg);
        try {
            const auto v = eval.value(Notion{Notion::Kind::UniformSufficient});
            if (v) {
                st.product.push_back(*v);
                ++st.mixed;
            }
        } catch (const Error&) {
            // disconnected/periodic replica: counts as unmixed
        }
    }
    return st;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v.size() % 2 ? v[v.size() / 2] : 0.5 * (v[v.size() / 2 - 1] + v[v.size() / 2]);
}

double slope_of(const std::vector<int>& ns, const std::vector<double>& vals) {
    std::vector<TracePoint> pts;
    for (std::size_t i = 0; i < ns.size(); ++i) pts.push_back({ns[i], vals[i], 0.0});
    return fit_loglog(pts).slope;
}

void criterion6_and_7(Criterion& c6, Criterion& c7) {
    DiagnosticsConfig cfg; // mixing cap auto = 10 ceil(ln n)^2

    // Erdos-Renyi: connectivity, degree ratio, decaying product
    const FamilyGenerator er = make_family("erdos-renyi", {{"c", 2.0}}, 101);
    const std::vector<int> er_grid{250, 500, 1000, 2000};
    std::vector<double> er_products;
    for (int n : er_grid) {
        const RandomPointStats st = evaluate_random_point(er, n, 5, cfg);
        if (n == 2000) {
            c6.expect(st.connected >= 4, "ER n=2000 connected in >= 4/5 seeds (" +
                                             std::to_string(st.connected) + "/5)");
            c6.expect(median(st.ratio) <= 10.0,
                      fmt("ER n=2000 median d_max/d_min %.3f <= %.0f", median(st.ratio), 10.0));
        }
        c7.expect(st.mixed >= 4, "ER mixing finite under cap in >= 4/5 seeds at n=" +
                                     std::to_string(n) + " (" + std::to_string(st.mixed) + ")");
        er_products.push_back(median(st.product));
    }
    c7.expect(slope_of(er_grid, er_products) <= -0.1,
              fmt("ER norm*tau slope %.3f <= %.1f", slope_of(er_grid, er_products), -0.1));

    // Barabasi-Albert: one-time decay and decaying product
    const FamilyGenerator ba = make_family("barabasi-albert", {{"m", 3.0}, {"m0", 3.0}}, 202);
    const std::vector<int> ba_grid{1000, 2000, 5000, 10000};
    std::vector<double> ba_one_time, ba_products;
    for (int n : ba_grid) {
        const RandomPointStats st = evaluate_random_point(ba, n, 5, cfg);
        ba_one_time.push_back(median(st.one_time));
        ba_products.push_back(median(st.product));
        c7.expect(st.mixed >= 4, "BA mixing finite under cap in >= 4/5 seeds at n=" +
                                     std::to_string(n) + " (" + std::to_string(st.mixed) + ")");
    }
    c6.expect(slope_of(ba_grid, ba_one_time) <= -0.3,
              fmt("BA one-time slope %.3f <= %.1f", slope_of(ba_grid, ba_one_time), -0.3));
    c7.expect(slope_of(ba_grid, ba_products) <= -0.1,
              fmt("BA norm*tau slope %.3f <= %.1f", slope_of(ba_grid, ba_products), -0.1));

    // BA maximum degree scales like sqrt(n): median of d_max/sqrt(n) over
    // 20 seeds within a wide band
    {
        std::vector<double> ratios;
        for (int rep = 0; rep < 20; ++rep) {
            const GeneratedFamily fam =
                ba.generate_with_seed(10000, mix_seed(mix_seed(202, 10000), 100 + rep));
            ratios.push_back(fam.meta.degree_max / std::sqrt(10000.0));
        }
        const double med = median(ratios);
        c6.expect(med >= 0.1 && med <= 10.0,
                  fmt("BA median d_max/sqrt(n) %.3f within [0.1, %.0f]", med, 10.0));
    }

    // super-linear preferential attachment: flat, non-vanishing influence
    // and a hub that carries most of the edges
    const FamilyGenerator sl =
        make_family("superlinear-pa", {{"m", 1.0}, {"exponent", 2.0}}, 303);
    const std::vector<int> sl_grid{625, 1250, 2500, 5000};
    std::vector<double> sl_one_time;
    for (int n : sl_grid) {
        std::vector<double> vals;
        for (int rep = 0; rep < 5; ++rep) {
            const GeneratedFamily fam =
                sl.generate_with_seed(n, mix_seed(mix_seed(303, n), rep));
            vals.push_back(max_column_average(fam.matrix));
        }
        sl_one_time.push_back(median(vals));
    }
    c6.expect(sl_one_time.back() >= 0.2, fmt("superlinear one-time value %.3f >= %.1f",
                                             sl_one_time.back(), 0.2));
    c6.expect(slope_of(sl_grid, sl_one_time) >= -0.05,
              fmt("superlinear one-time slope %.3f >= %.2f", slope_of(sl_grid, sl_one_time),
                  -0.05));
    {
        std::vector<double> fractions;
        for (int rep = 0; rep < 5; ++rep) {
            const GeneratedFamily fam =
                sl.generate_with_seed(5000, mix_seed(mix_seed(303, 5000), rep));
            const int top = fam.meta.special_nodes.at("top_degree");
            const auto d = fam.graph.degrees();
            const double edges = std::accumulate(d.begin(), d.end(), 0.0) / 2.0;
            fractions.push_back(d[top] / edges);
        }
        c6.expect(median(fractions) >= 0.5,
                  fmt("superlinear hub edge fraction %.3f >= %.1f", median(fractions), 0.5));
    }
}

// ---------------------------------------------------------------------------
// 8. equal-neighbor self-consistency: one-time vs pre-uniform verdicts
// ---------------------------------------------------------------------------

void criterion8(Criterion& c) {
    DiagnosticsConfig cfg;
    cfg.k_cap = 50;
    cfg.seeds = 3;
    const std::vector<Notion> notions{Notion{Notion::Kind::OneTime},
                                      Notion{Notion::Kind::PreUniform}};

    struct Case {
        std::string label;
        FamilyGenerator gen;
        std::vector<int> grid;
        Verdict expected_one_time;
    };
    std::vector<Case> cases;
    cases.push_back({"star", make_family("star"), {10, 20, 40, 80, 160}, Verdict::Unwise});
    cases.push_back({"star-complete", make_family("star-complete"), {6, 12, 24, 48, 96},
                     Verdict::Unwise});
    cases.push_back({"hub-ring", make_family("hub-ring"), {4, 6, 9, 13, 19}, Verdict::Wise});
    cases.push_back({"erdos-renyi", make_family("erdos-renyi", {{"c", 2.0}}, 404),
                     {125, 250, 500, 1000}, Verdict::Wise});
    cases.push_back({"barabasi-albert",
                     make_family("barabasi-albert", {{"m", 3.0}, {"m0", 3.0}}, 404),
                     {250, 500, 1000, 2000}, Verdict::Wise});
    cases.push_back({"superlinear-pa",
                     make_family("superlinear-pa", {{"m", 1.0}, {"exponent", 2.0}}, 404),
                     {500, 1000, 2000, 4000}, Verdict::Unwise});

    for (const Case& cs : cases) {
        const WisdomReport rep = run_diagnostics(cs.gen, cs.grid, notions, cfg);
        const Verdict one = rep.find("one-time")->verdict;
        const Verdict pre = rep.find("pre-uniform")->verdict;
        c.expect(rep.kind == GraphKind::EqualNeighbor, cs.label + " is equal-neighbor");
        c.expect(rep.flags.empty(), cs.label + ": no consistency flag");
        c.expect(one == pre, cs.label + ": one-time (" + to_string(one) +
                                 ") agrees with pre-uniform (" + to_string(pre) + ")");
        c.expect(one == cs.expected_one_time,
                 cs.label + ": one-time verdict is " + to_string(cs.expected_one_time) +
                     " (got " + to_string(one) + ")");
    }
}

} // namespace

int main() {
    run(1, "closed-form eigenvectors (1e-8)", criterion1);
    run(2, "column-sum formulas (1e-12)", criterion2);
    run(3, "verdict reproduction on the five families", criterion3);
    run(4, "inequality property suites (zero violations)", criterion4);
    run(5, "Monte Carlo variance and unbiasedness (400 runs)", criterion5);

    {
        Criterion c6, c7;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criterion6_and_7(c6, c7);
        } catch (const std::exception& e) {
            c6.expect(false, std::string("exception: ") + e.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion 6: random-graph statistical checks (%.1fs combined)\n",
                    c6.failures == 0 ? "PASS" : "FAIL", secs);
        if (c6.failures) std::fputs(c6.log.str().c_str(), stdout);
        std::printf("[%s] criterion 7: uniform-wisdom sufficient product\n",
                    c7.failures == 0 ? "PASS" : "FAIL");
        if (c7.failures) std::fputs(c7.log.str().c_str(), stdout);
        g_total_failures += c6.failures + c7.failures;
    }

    run(8, "equal-neighbor self-consistency (one-time vs pre-uniform)", criterion8);

    if (g_total_failures > 0) {
        std::printf("ACCEPTANCE: %d failure(s)\n", g_total_failures);
        return 1;
    }
    std::printf("ACCEPTANCE: all criteria satisfied\n");
    return 0;
}
