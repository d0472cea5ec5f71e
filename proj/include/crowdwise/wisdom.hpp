#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "crowdwise/graph_families.hpp"
#include "crowdwise/stochastic_matrix.hpp"

namespace crowdwise {

// ---------------------------------------------------------------------------
// Notions and traces
// ---------------------------------------------------------------------------

struct Notion {
    enum class Kind {
        OneTime,
        FiniteTime,
        Wise,
        PreUniform,
        UniformSufficient,
        ProminentIndividual,
        ProminentFamily,
        DmaxDmin,
    };
    Kind kind = Kind::OneTime;
    int k = 1;          // FiniteTime
    double alpha = 0.5; // ProminentFamily

    std::string str() const {
        switch (kind) {
            case Kind::OneTime: return "one-time";
            case Kind::FiniteTime: return "finite-time:" + std::to_string(k);
            case Kind::Wise: return "wise";
            case Kind::PreUniform: return "pre-uniform";
            case Kind::UniformSufficient: return "uniform-sufficient";
            case Kind::ProminentIndividual: return "prominent-individual";
            case Kind::ProminentFamily: {
                char buf[32];
                std::snprintf(buf, sizeof buf, "prominent-family:%g", alpha);
                return buf;
            }
            default: return "dmax-dmin";
        }
    }

    static Notion parse(const std::string& s) {
        Notion n;
        const auto colon = s.find(':');
        const std::string head = colon == std::string::npos ? s : s.substr(0, colon);
        const std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
        if (head == "one-time") {
            n.kind = Kind::OneTime;
        } else if (head == "finite-time") {
            n.kind = Kind::FiniteTime;
            if (arg.empty()) throw PreconditionError("finite-time notion needs a step, e.g. finite-time:2");
            n.k = std::stoi(arg);
            if (n.k < 1) throw PreconditionError("finite-time step must be >= 1");
        } else if (head == "wise") {
            n.kind = Kind::Wise;
        } else if (head == "pre-uniform") {
            n.kind = Kind::PreUniform;
        } else if (head == "uniform-sufficient") {
            n.kind = Kind::UniformSufficient;
        } else if (head == "prominent-individual") {
            n.kind = Kind::ProminentIndividual;
        } else if (head == "prominent-family") {
            n.kind = Kind::ProminentFamily;
            if (arg.empty()) throw PreconditionError("prominent-family notion needs an exponent, e.g. prominent-family:0.5");
            n.alpha = std::stod(arg);
            if (!(n.alpha > 0.0 && n.alpha < 1.0))
                throw PreconditionError("prominent-family exponent must lie in (0,1)");
        } else if (head == "dmax-dmin") {
            n.kind = Kind::DmaxDmin;
        } else {
            throw PreconditionError("unknown notion '" + s + "'");
        }
        return n;
    }
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

struct TracePoint {
    int n = 0;       // actual node count
    double value = 0.0;
    double iqr = 0.0; // interquartile range across seeds (random families)
};

struct TrendTrace {
    std::string notion;
    std::vector<TracePoint> points;
    std::vector<int> missing; // node counts where no value could be computed
    FitResult fit;
};

// Least squares on (ln n, ln value).
inline FitResult fit_loglog(const std::vector<TracePoint>& points) {
    FitResult f;
    if (points.size() < 2) return f;
    const std::size_t m = points.size();
    double sx = 0, sy = 0;
    std::vector<double> xs(m), ys(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = std::log(static_cast<double>(points[i].n));
        ys[i] = std::log(std::max(points[i].value, 1e-300));
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (syy > 0.0) {
        double ssres = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double e = ys[i] - (f.intercept + f.slope * xs[i]);
            ssres += e * e;
        }
        f.r2 = 1.0 - ssres / syy;
    } else {
        f.r2 = 1.0; // constant trace, perfectly fitted by slope 0
    }
    return f;
}

// ---------------------------------------------------------------------------
// Configuration and verdicts
// ---------------------------------------------------------------------------

struct DiagnosticsConfig {
    double slope_min = 0.2;    // decaying threshold on -slope
    double value_max = 0.2;    // "wise" additionally needs last value below this
    double value_floor = 0.3;  // "unwise" needs last value above this
    double unwise_slope = -0.05;
    int seeds = 5;             // replicates per grid point for random families
    int k_cap = 0;             // pre-uniform sup truncation; 0 = auto from mixing time
    int k_budget = 10000;      // upper bound on the auto K
    int mixing_cap = 0;        // 0 = auto 10*ceil(ln n)^2
    int min_points_for_verdict = 4;
    std::vector<double> alphas = {0.3, 0.5, 0.7, 0.9};
};

inline int auto_mixing_cap(int n, const DiagnosticsConfig& cfg) {
    if (cfg.mixing_cap > 0) return cfg.mixing_cap;
    const double l = std::ceil(std::log(std::max(2, n)));
    return std::max(1, static_cast<int>(10.0 * l * l));
}

enum class Verdict { Wise, Unwise, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Wise: return "wise";
        case Verdict::Unwise: return "unwise";
        default: return "inconclusive";
    }
}

// Pure function of trace + config; sufficient_only is the rule for the
// uniform-sufficient notion, which can never certify "unwise".
inline Verdict classify(const TrendTrace& t, const DiagnosticsConfig& cfg,
                        bool sufficient_only = false) {
    if (!t.missing.empty()) return Verdict::Inconclusive;
    if (static_cast<int>(t.points.size()) < cfg.min_points_for_verdict)
        return Verdict::Inconclusive;
    const double last = t.points.back().value;
    const double slope = t.fit.slope;
    if (sufficient_only)
        return slope <= -cfg.slope_min ? Verdict::Wise : Verdict::Inconclusive;
    if (slope <= -cfg.slope_min && last <= cfg.value_max) return Verdict::Wise;
    if (last >= cfg.value_floor && slope >= cfg.unwise_slope) return Verdict::Unwise;
    return Verdict::Inconclusive;
}

struct NotionReport {
    TrendTrace trace;
    Verdict verdict = Verdict::Inconclusive;
};

struct WisdomReport {
    std::string family;
    std::map<std::string, double> params;
    std::optional<std::uint64_t> seed;
    std::vector<int> grid;
    GraphKind kind = GraphKind::General;
    DiagnosticsConfig config;
    std::vector<NotionReport> notions;
    std::vector<std::string> flags;

    const NotionReport* find(const std::string& notion) const {
        for (const NotionReport& r : notions)
            if (r.trace.notion == notion) return &r;
        return nullptr;
    }
};

// ---------------------------------------------------------------------------
// Per-instance evaluation with shared intermediates
// ---------------------------------------------------------------------------

class InstanceEval {
public:
    InstanceEval(const GeneratedFamily& fam, const DiagnosticsConfig& cfg)
        : fam_(fam), cfg_(cfg) {}

    // nullopt = value missing (mixing time exceeded its cap for the
    // uniform-sufficient product). Everything else throws on failure.
    std::optional<double> value(const Notion& notion) {
        switch (notion.kind) {
            case Notion::Kind::OneTime:
                return max_column_average(fam_.matrix);
            case Notion::Kind::FiniteTime:
                return influence_profile(fam_.matrix, notion.k).max_entry();
            case Notion::Kind::Wise: {
                if (!primitive())
                    throw Error("wisdom trace requires a primitive matrix");
                return pi().max_entry();
            }
            case Notion::Kind::PreUniform:
                return preuniform_value();
            case Notion::Kind::UniformSufficient: {
                const MixingTimeResult& mt = mixing();
                if (mt.exceeded) return std::nullopt;
                return preuniform_value() * static_cast<double>(mt.tau);
            }
            case Notion::Kind::ProminentIndividual:
                return max_influence(fam_.matrix, 1) / static_cast<double>(fam_.matrix.n());
            case Notion::Kind::ProminentFamily: {
                const double nn = static_cast<double>(fam_.matrix.n());
                const double size = std::ceil(std::pow(nn, notion.alpha));
                return max_influence_real(fam_.matrix, size) / nn;
            }
            default: {
                if (!(fam_.meta.degree_min > 0.0)) throw Error("family does not expose degrees");
                return (fam_.meta.degree_max / fam_.meta.degree_min) /
                       static_cast<double>(fam_.meta.actual_node_count);
            }
        }
    }

    bool primitive() {
        if (!primitive_) primitive_ = is_primitive(fam_.matrix);
        return *primitive_;
    }

    const DistributionVector& pi() {
        if (!pi_) pi_ = dominant_left_eigenvector(fam_.matrix);
        return *pi_;
    }

    const MixingTimeResult& mixing() {
        if (!mixing_)
            mixing_ = mixing_time(fam_.matrix, auto_mixing_cap(fam_.matrix.n(), cfg_));
        return *mixing_;
    }

    // sup over k <= K of ||chi(k)||_inf, augmented with ||pi||_inf for
    // primitive matrices (chi(k) -> pi). K is the configured cap, or is
    // derived from the mixing time when the cap is left automatic.
    double preuniform_value() {
        if (preuniform_) return *preuniform_;
        const int n = fam_.matrix.n();
        int K = cfg_.k_cap;
        const bool prim = primitive();
        if (K <= 0) {
            if (!prim)
                throw Error("pre-uniform trace with automatic K requires a primitive matrix; "
                            "pass an explicit K cap");
            const MixingTimeResult& mt = mixing();
            if (mt.exceeded)
                throw Error("mixing time exceeds cap " + std::to_string(mt.cap) +
                            "; pass an explicit K cap for the pre-uniform trace");
            const double horizon = std::max(4.0 * mt.tau, 2.0 * std::log(std::max(2, n)) * mt.tau);
            K = static_cast<int>(std::min<double>(cfg_.k_budget, std::ceil(horizon)));
        }
        std::vector<double> chi(static_cast<std::size_t>(n), 1.0 / n);
        std::vector<double> next;
        double sup = 0.0;
        for (int k = 1; k <= K; ++k) {
            fam_.matrix.sparse().left_multiply(chi, next);
            chi.swap(next);
            sup = std::max(sup, *std::max_element(chi.begin(), chi.end()));
        }
        if (prim) sup = std::max(sup, pi().max_entry());
        preuniform_ = sup;
        return sup;
    }

private:
    const GeneratedFamily& fam_;
    const DiagnosticsConfig& cfg_;
    std::optional<bool> primitive_;
    std::optional<DistributionVector> pi_;
    std::optional<MixingTimeResult> mixing_;
    std::optional<double> preuniform_;
};

// ---------------------------------------------------------------------------
// Trace assembly over an n-grid
// ---------------------------------------------------------------------------

namespace detail {

inline std::uint64_t replica_seed(std::uint64_t base, int size, int rep) {
    return mix_seed(mix_seed(base, static_cast<std::uint64_t>(size)),
                    static_cast<std::uint64_t>(rep));
}

inline double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

inline double iqr_of(std::vector<double> v) {
    if (v.size() < 2) return 0.0;
    std::sort(v.begin(), v.end());
    const auto quartile = [&](double q) {
        const double pos = q * static_cast<double>(v.size() - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(lo);
        return lo + 1 < v.size() ? v[lo] * (1.0 - frac) + v[lo + 1] * frac : v[lo];
    };
    return quartile(0.75) - quartile(0.25);
}

} // namespace detail

inline WisdomReport run_diagnostics(const FamilyGenerator& g, const std::vector<int>& grid,
                                    const std::vector<Notion>& notions,
                                    const DiagnosticsConfig& cfg = {}) {
    if (grid.empty()) throw PreconditionError("size grid must be nonempty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw PreconditionError("size grid must be strictly increasing");

    WisdomReport report;
    report.family = g.name;
    report.params = g.params;
    report.seed = g.seed;
    report.grid = grid;
    report.config = cfg;
    report.notions.resize(notions.size());
    for (std::size_t j = 0; j < notions.size(); ++j)
        report.notions[j].trace.notion = notions[j].str();

    const int reps = g.random ? std::max(1, cfg.seeds) : 1;
    for (int size : grid) {
        std::vector<std::vector<double>> values(notions.size());
        int n_actual = 0;
        for (int rep = 0; rep < reps; ++rep) {
            const GeneratedFamily fam =
                g.random ? g.generate_with_seed(
                               size, detail::replica_seed(g.seed.value_or(0), size, rep))
                         : g.generate(size);
            n_actual = fam.meta.actual_node_count;
            report.kind = fam.meta.kind;
            InstanceEval eval(fam, cfg);
            for (std::size_t j = 0; j < notions.size(); ++j) {
                try {
                    const std::optional<double> v = eval.value(notions[j]);
                    if (v) values[j].push_back(*v);
                } catch (const Error&) {
                    // replicates of random families may fail (disconnected
                    // graph, periodic instance); they are filtered out
                    if (!g.random) throw;
                }
            }
        }
        for (std::size_t j = 0; j < notions.size(); ++j) {
            if (values[j].empty()) {
                report.notions[j].trace.missing.push_back(n_actual);
            } else {
                TracePoint pt;
                pt.n = n_actual;
                pt.value = detail::median_of(values[j]);
                pt.iqr = detail::iqr_of(values[j]);
                report.notions[j].trace.points.push_back(pt);
            }
        }
    }

    for (std::size_t j = 0; j < notions.size(); ++j) {
        NotionReport& r = report.notions[j];
        r.trace.fit = fit_loglog(r.trace.points);
        r.verdict = classify(r.trace, cfg,
                             notions[j].kind == Notion::Kind::UniformSufficient);
    }

    // Self-test: for equal-neighbor sequences one-time and pre-uniform
    // wisdom are provably equivalent, so the two verdicts must not
    // contradict each other. A contradiction (one wise, the other unwise)
    // indicates a bug; inconclusive pairs are threshold noise, not a
    // violation.
    if (report.kind == GraphKind::EqualNeighbor) {
        const NotionReport* one = report.find("one-time");
        const NotionReport* pre = report.find("pre-uniform");
        if (one && pre) {
            const bool contradiction =
                (one->verdict == Verdict::Wise && pre->verdict == Verdict::Unwise) ||
                (one->verdict == Verdict::Unwise && pre->verdict == Verdict::Wise);
            if (contradiction) report.flags.push_back("equal-neighbor-consistency-violation");
        }
    }
    return report;
}

inline TrendTrace single_trace(const FamilyGenerator& g, const std::vector<int>& grid,
                               const Notion& notion, const DiagnosticsConfig& cfg = {}) {
    return run_diagnostics(g, grid, {notion}, cfg).notions.front().trace;
}

inline TrendTrace one_time_trace(const FamilyGenerator& g, const std::vector<int>& grid,
                                 const DiagnosticsConfig& cfg = {}) {
    return single_trace(g, grid, Notion{Notion::Kind::OneTime}, cfg);
}

inline TrendTrace finite_time_trace(const FamilyGenerator& g, const std::vector<int>& grid,
                                    int k, const DiagnosticsConfig& cfg = {}) {
    if (k < 1) throw PreconditionError("finite-time trace requires k >= 1");
    Notion n;
    n.kind = Notion::Kind::FiniteTime;
    n.k = k;
    return single_trace(g, grid, n, cfg);
}

inline TrendTrace wisdom_trace(const FamilyGenerator& g, const std::vector<int>& grid,
                               const DiagnosticsConfig& cfg = {}) {
    return single_trace(g, grid, Notion{Notion::Kind::Wise}, cfg);
}

inline TrendTrace preuniform_trace(const FamilyGenerator& g, const std::vector<int>& grid,
                                   int k_cap = 0, const DiagnosticsConfig& cfg = {}) {
    DiagnosticsConfig c = cfg;
    if (k_cap > 0) c.k_cap = k_cap;
    return single_trace(g, grid, Notion{Notion::Kind::PreUniform}, c);
}

inline TrendTrace uniform_sufficient_trace(const FamilyGenerator& g, const std::vector<int>& grid,
                                           const DiagnosticsConfig& cfg = {}) {
    return single_trace(g, grid, Notion{Notion::Kind::UniformSufficient}, cfg);
}

inline TrendTrace prominent_family_trace(const FamilyGenerator& g, const std::vector<int>& grid,
                                         double alpha, const DiagnosticsConfig& cfg = {}) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw PreconditionError("prominent-family exponent must lie in (0,1)");
    Notion n;
    n.kind = Notion::Kind::ProminentFamily;
    n.alpha = alpha;
    return single_trace(g, grid, n, cfg);
}

inline TrendTrace dmax_dmin_trace(const FamilyGenerator& g, const std::vector<int>& grid,
                                  const DiagnosticsConfig& cfg = {}) {
    return single_trace(g, grid, Notion{Notion::Kind::DmaxDmin}, cfg);
}

// ---------------------------------------------------------------------------
// Inequality checkers
// ---------------------------------------------------------------------------

struct BoundCheckReport {
    long checks = 0;
    long violations = 0;
    double min_slack = std::numeric_limits<double>::infinity(); // rhs - lhs, worst margin
    double max_slack = -std::numeric_limits<double>::infinity();
    double max_ratio = 0.0; // lhs / rhs, tightness
    std::vector<std::string> details; // first few violations

    bool ok() const { return violations == 0; }
};

// Sparse product PQ (both row-stochastic, so the product is too).
inline RowStochasticMatrix multiply(const RowStochasticMatrix& p, const RowStochasticMatrix& q) {
    if (p.n() != q.n()) throw Error("dimension mismatch in matrix product");
    const int n = p.n();
    const SparseMatrix& A = p.sparse();
    const SparseMatrix& B = q.sparse();
    std::vector<Triplet> out;
    std::vector<double> acc(static_cast<std::size_t>(n), 0.0);
    std::vector<int> touched;
    for (int i = 0; i < n; ++i) {
        touched.clear();
        for (int ka = A.row_begin(i); ka < A.row_end(i); ++ka) {
            const int h = A.col(ka);
            const double w = A.value(ka);
            for (int kb = B.row_begin(h); kb < B.row_end(h); ++kb) {
                const int j = B.col(kb);
                if (acc[j] == 0.0) touched.push_back(j);
                acc[j] += w * B.value(kb);
            }
        }
        for (int j : touched) {
            out.push_back({i, j, acc[j]});
            acc[j] = 0.0;
        }
    }
    return RowStochasticMatrix::from_triplets(n, std::move(out));
}

// Checks Phi_{PQ}(s) <= Phi_P(delta * Phi_Q(s)) + n/delta for all s in
// {0,...,n} and each delta.
inline BoundCheckReport recursive_influence_bound_check(const RowStochasticMatrix& p,
                                                        const RowStochasticMatrix& q,
                                                        const std::vector<double>& deltas) {
    if (p.n() != q.n()) throw Error("dimension mismatch in influence bound check");
    const int n = p.n();
    const RowStochasticMatrix pq = multiply(p, q);

    const auto phi_table = [](const RowStochasticMatrix& m) {
        std::vector<double> cs = column_sums(m);
        std::sort(cs.begin(), cs.end(), std::greater<>());
        std::vector<double> phi(cs.size() + 1, 0.0);
        for (std::size_t i = 0; i < cs.size(); ++i) phi[i + 1] = phi[i] + cs[i];
        return phi;
    };
    const std::vector<double> phi_p = phi_table(p);
    const std::vector<double> phi_q = phi_table(q);
    const std::vector<double> phi_pq = phi_table(pq);
    const auto phi_real = [n](const std::vector<double>& phi, double x) {
        const double fl = std::floor(x);
        const int s = fl >= static_cast<double>(n) ? n : static_cast<int>(fl);
        return phi[s];
    };

    BoundCheckReport rep;
    for (double delta : deltas) {
        if (!(delta > 0.0)) throw PreconditionError("delta must be positive");
        for (int s = 0; s <= n; ++s) {
            const double lhs = phi_pq[s];
            const double rhs = phi_real(phi_p, delta * phi_q[s]) + static_cast<double>(n) / delta;
            const double slack = rhs - lhs;
            ++rep.checks;
            rep.min_slack = std::min(rep.min_slack, slack);
            rep.max_slack = std::max(rep.max_slack, slack);
            if (rhs > 0.0) rep.max_ratio = std::max(rep.max_ratio, lhs / rhs);
            if (lhs > rhs + 1e-9) {
                ++rep.violations;
                if (rep.details.size() < 8) {
                    char buf[128];
                    std::snprintf(buf, sizeof buf, "s=%d delta=%g lhs=%.12g rhs=%.12g", s, delta,
                                  lhs, rhs);
                    rep.details.push_back(buf);
                }
            }
        }
    }
    return rep;
}

// Checks ||(1/n)P^k||_1 <= 2 ||(1/n)P||_1^{1/2} for k in {1,...,k_max}.
// Only valid for equal-neighbor matrices (symmetric binary weights).
inline BoundCheckReport equal_neighbor_power_bound_check(const WeightGraph& w, int k_max) {
    if (w.kind() != GraphKind::EqualNeighbor)
        throw Error("equal-neighbor power bound requires kind=equal-neighbor "
                    "(the proof uses symmetric binary weights)");
    const RowStochasticMatrix p = build_from_weights(w);
    const int n = p.n();
    const double bound = 2.0 * std::sqrt(max_column_average(p));
    BoundCheckReport rep;
    std::vector<double> chi(static_cast<std::size_t>(n), 1.0 / n);
    std::vector<double> next;
    for (int k = 1; k <= k_max; ++k) {
        p.sparse().left_multiply(chi, next);
        chi.swap(next);
        const double val = *std::max_element(chi.begin(), chi.end());
        ++rep.checks;
        rep.min_slack = std::min(rep.min_slack, bound - val);
        rep.max_slack = std::max(rep.max_slack, bound - val);
        rep.max_ratio = std::max(rep.max_ratio, val / bound);
        if (val > bound + 1e-12) {
            ++rep.violations;
            if (rep.details.size() < 8) {
                char buf[96];
                std::snprintf(buf, sizeof buf, "k=%d value=%.12g bound=%.12g", k, val, bound);
                rep.details.push_back(buf);
            }
        }
    }
    return rep;
}

} // namespace crowdwise
