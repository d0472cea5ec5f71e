#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "crowdwise/rng.hpp"
#include "crowdwise/stochastic_matrix.hpp"

namespace crowdwise {

// Monte Carlo simulation of x(k+1) = P x(k) with x(0) = mu + xi(0),
// xi(0) ~ iid N(0, sigma^2). Each run draws its noise from an independent
// stream derived from (seed, run index), so runs are reproducible
// individually and in any order.

struct SimulationConfig {
    double mu = 0.0;
    double sigma = 1.0;
    int horizon = 1; // T; the trace records k = 0..T
    int runs = 1;
    std::uint64_t seed = 0;
    bool record_individuals = false;
    std::optional<double> first_opinion_override; // replaces x_0(0) after the noise draw

    void validate() const {
        if (!(sigma > 0.0)) throw PreconditionError("sigma must be positive");
        if (horizon < 1) throw PreconditionError("horizon must be >= 1");
        if (runs < 1) throw PreconditionError("runs must be >= 1");
    }
};

struct SimulationTrace {
    SimulationConfig config;
    int n = 0;
    std::vector<std::vector<double>> run_averages; // [run][k], k = 0..T
    std::vector<std::vector<std::vector<double>>> individuals; // [run][k][i] if recorded
    std::vector<double> mean_ave; // ensemble mean across runs per k
    std::vector<double> var_ave;  // unbiased ensemble variance per k (0 when runs == 1)
};

namespace detail {

// Compensated summation for the population average on large n.
inline double average_of(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 100000) {
        double s = 0.0;
        for (double v : x) s += v;
        return s / static_cast<double>(n);
    }
    double s = 0.0, comp = 0.0;
    for (double v : x) {
        const double y = v - comp;
        const double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s / static_cast<double>(n);
}

inline std::vector<double> draw_noise(int n, const SimulationConfig& cfg, int run) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(run));
    std::vector<double> xi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) xi[i] = cfg.sigma * rng.gaussian();
    return xi;
}

} // namespace detail

inline SimulationTrace simulate(const RowStochasticMatrix& p, const SimulationConfig& cfg) {
    cfg.validate();
    const int n = p.n();
    const int T = cfg.horizon;
    SimulationTrace trace;
    trace.config = cfg;
    trace.n = n;
    trace.run_averages.assign(static_cast<std::size_t>(cfg.runs),
                              std::vector<double>(static_cast<std::size_t>(T) + 1, 0.0));
    if (cfg.record_individuals) trace.individuals.resize(static_cast<std::size_t>(cfg.runs));

    std::vector<double> x, next;
    for (int run = 0; run < cfg.runs; ++run) {
        x = detail::draw_noise(n, cfg, run);
        for (double& v : x) v += cfg.mu;
        if (cfg.first_opinion_override) x[0] = *cfg.first_opinion_override;
        auto& ave = trace.run_averages[run];
        ave[0] = detail::average_of(x);
        if (cfg.record_individuals) trace.individuals[run].push_back(x);
        for (int k = 1; k <= T; ++k) {
            p.sparse().right_multiply(x, next);
            x.swap(next);
            ave[k] = detail::average_of(x);
            if (cfg.record_individuals) trace.individuals[run].push_back(x);
        }
    }

    trace.mean_ave.assign(static_cast<std::size_t>(T) + 1, 0.0);
    trace.var_ave.assign(static_cast<std::size_t>(T) + 1, 0.0);
    for (int k = 0; k <= T; ++k) {
        double s = 0.0;
        for (int run = 0; run < cfg.runs; ++run) s += trace.run_averages[run][k];
        const double mean = s / cfg.runs;
        trace.mean_ave[k] = mean;
        if (cfg.runs > 1) {
            double ss = 0.0;
            for (int run = 0; run < cfg.runs; ++run) {
                const double d = trace.run_averages[run][k] - mean;
                ss += d * d;
            }
            trace.var_ave[k] = ss / (cfg.runs - 1);
        }
    }
    return trace;
}

// Var[ave(x(k))] = sigma^2 chi(k)^T chi(k).
inline double analytic_variance(const RowStochasticMatrix& p, double sigma, int k) {
    if (k < 0) throw PreconditionError("k must be >= 0");
    if (!(sigma > 0.0)) throw PreconditionError("sigma must be positive");
    const InfluenceProfile chi = influence_profile(p, k);
    double dot = 0.0;
    for (double v : chi.chi) dot += v * v;
    return sigma * sigma * dot;
}

// The same identity for every k = 0..horizon with one chi sweep.
inline std::vector<double> analytic_variance_series(const RowStochasticMatrix& p, double sigma,
                                                    int horizon) {
    if (horizon < 0) throw PreconditionError("horizon must be >= 0");
    if (!(sigma > 0.0)) throw PreconditionError("sigma must be positive");
    const int n = p.n();
    std::vector<double> chi(static_cast<std::size_t>(n), 1.0 / n), next;
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(horizon) + 1);
    for (int k = 0; k <= horizon; ++k) {
        if (k > 0) {
            p.sparse().left_multiply(chi, next);
            chi.swap(next);
        }
        double dot = 0.0;
        for (double v : chi) dot += v * v;
        out.push_back(sigma * sigma * dot);
    }
    return out;
}

// Per-run limit of ave(x(k)) as k -> infinity: mu + pi^T xi(0), using the
// same noise streams as simulate. Requires a primitive matrix.
inline std::vector<double> asymptotic_average(const RowStochasticMatrix& p,
                                              const SimulationConfig& cfg) {
    cfg.validate();
    if (!is_primitive(p)) throw Error("asymptotic average requires a primitive matrix");
    const DistributionVector pi = dominant_left_eigenvector(p);
    std::vector<double> out(static_cast<std::size_t>(cfg.runs), 0.0);
    for (int run = 0; run < cfg.runs; ++run) {
        std::vector<double> xi = detail::draw_noise(p.n(), cfg, run);
        if (cfg.first_opinion_override) xi[0] = *cfg.first_opinion_override - cfg.mu;
        double dot = 0.0;
        for (int i = 0; i < p.n(); ++i) dot += pi.pi[i] * xi[i];
        out[run] = cfg.mu + dot;
    }
    return out;
}

// Fraction of runs in which sup_{k <= T} |ave(x(k)) - mu| exceeds delta.
// The sup is truncated at the horizon, so this is a lower bound on the true
// sup-over-k probability.
inline double deviation_probability_estimate(const RowStochasticMatrix& p,
                                             const SimulationConfig& cfg, double delta) {
    if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
    const SimulationTrace trace = simulate(p, cfg);
    int hits = 0;
    for (const auto& ave : trace.run_averages) {
        double worst = 0.0;
        for (double a : ave) worst = std::max(worst, std::abs(a - cfg.mu));
        if (worst > delta) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(cfg.runs);
}

} // namespace crowdwise
