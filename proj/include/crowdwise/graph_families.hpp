#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crowdwise/rng.hpp"
#include "crowdwise/stochastic_matrix.hpp"

namespace crowdwise {

struct FamilyMetadata {
    int actual_node_count = 0;
    std::map<std::string, int> special_nodes;
    double degree_min = 0.0;
    double degree_max = 0.0;
    GraphKind kind = GraphKind::General;
    // random families only
    std::optional<std::uint64_t> seed;
    std::string prng;
    int isolated_fixed = 0; // vertices that received a self-loop
    std::optional<bool> connected;
};

struct GeneratedFamily {
    WeightGraph graph;
    RowStochasticMatrix matrix;
    FamilyMetadata meta;
};

namespace detail {

inline GeneratedFamily finish(WeightGraph graph, FamilyMetadata meta) {
    RowStochasticMatrix p = build_from_weights(graph);
    const std::vector<double> d = graph.degrees();
    meta.actual_node_count = graph.n();
    meta.degree_min = *std::min_element(d.begin(), d.end());
    meta.degree_max = *std::max_element(d.begin(), d.end());
    meta.kind = graph.kind();
    return GeneratedFamily{std::move(graph), std::move(p), std::move(meta)};
}

inline void add_undirected(std::vector<Triplet>& e, int a, int b, double w) {
    e.push_back({a, b, w});
    e.push_back({b, a, w});
}

} // namespace detail

// Star on n nodes, center 0, with a self-loop at the center. Symmetric
// binary weights; the center row is uniform 1/n over all n nodes and every
// leaf row puts mass 1 on the center.
inline GeneratedFamily star(int n) {
    if (n < 2) throw PreconditionError("star requires n >= 2");
    std::vector<Triplet> e;
    e.push_back({0, 0, 1.0});
    for (int j = 1; j < n; ++j) detail::add_undirected(e, 0, j, 1.0);
    FamilyMetadata meta;
    meta.special_nodes["center"] = 0;
    return detail::finish(WeightGraph(n, std::move(e), GraphKind::EqualNeighbor), meta);
}

// Union of a star S_n and a complete graph K_n with one leaf contracted
// into K_n; 2n nodes total. Center is node 0, the contracted node is node n,
// ordinary leaves are 1..n-1, the remaining K_n members are n+1..2n-1.
inline GeneratedFamily star_complete(int n) {
    if (n < 3) throw PreconditionError("star-complete requires n >= 3");
    const int total = 2 * n;
    std::vector<Triplet> e;
    for (int j = 1; j <= n; ++j) detail::add_undirected(e, 0, j, 1.0);
    for (int i = n; i < total; ++i)
        for (int j = i + 1; j < total; ++j) detail::add_undirected(e, i, j, 1.0);
    FamilyMetadata meta;
    meta.special_nodes["center"] = 0;
    meta.special_nodes["contracted"] = n;
    return detail::finish(WeightGraph(total, std::move(e), GraphKind::EqualNeighbor), meta);
}

// Path with biased weights p = 1/(1+nu), q = nu/(1+nu): self-loop p at the
// first node, self-loop q at the last, interior rows (p, 0, q). The matrix
// is already row-stochastic, so W = P.
inline GeneratedFamily biased_path(int n, double nu) {
    if (n < 2) throw PreconditionError("biased-path requires n >= 2");
    if (!(nu > 1.0)) throw PreconditionError("biased-path requires nu > 1");
    const double p = 1.0 / (1.0 + nu);
    const double q = nu / (1.0 + nu);
    std::vector<Triplet> e;
    e.push_back({0, 0, p});
    e.push_back({0, 1, q});
    for (int i = 1; i < n - 1; ++i) {
        e.push_back({i, i - 1, p});
        e.push_back({i, i + 1, q});
    }
    e.push_back({n - 1, n - 2, p});
    e.push_back({n - 1, n - 1, q});
    FamilyMetadata meta;
    meta.special_nodes["first"] = 0;
    meta.special_nodes["last"] = n - 1;
    return detail::finish(WeightGraph(n, std::move(e), GraphKind::General), meta);
}

// Reversed binary directed tree with L layers and n = 2^L - 1 nodes in
// breadth-first order (root 0, children of i at 2i+1 and 2i+2). Every
// non-root node points to its parent; the root has a self-loop and edges to
// all 2^{L-1} leaves.
inline GeneratedFamily reversed_binary_tree(int L) {
    if (L < 2) throw PreconditionError("reversed-tree requires L >= 2");
    if (L > 24) throw PreconditionError("reversed-tree limited to L <= 24");
    const int n = (1 << L) - 1;
    const int first_leaf = (1 << (L - 1)) - 1;
    std::vector<Triplet> e;
    e.push_back({0, 0, 1.0});
    for (int leaf = first_leaf; leaf < n; ++leaf) e.push_back({0, leaf, 1.0});
    for (int i = 1; i < n; ++i) e.push_back({i, (i - 1) / 2, 1.0});
    FamilyMetadata meta;
    meta.special_nodes["root"] = 0;
    meta.special_nodes["first_leaf"] = first_leaf;
    return detail::finish(WeightGraph(n, std::move(e), GraphKind::DirectedEqualNeighbor), meta);
}

// Weighted double star: root 0, intermediates 1..m, m leaves per
// intermediate at m+1..m+m^2. Root-intermediate weight 1, intermediate-leaf
// weight 1/m, unit self-loop at the root. Degrees: root m+1, intermediate 2,
// leaf 1/m.
inline GeneratedFamily weighted_double_star(int m) {
    if (m < 2) throw PreconditionError("double-star requires m >= 2");
    const int n = m * m + m + 1;
    std::vector<Triplet> e;
    e.push_back({0, 0, 1.0});
    const double leaf_w = 1.0 / static_cast<double>(m);
    for (int h = 1; h <= m; ++h) {
        detail::add_undirected(e, 0, h, 1.0);
        for (int t = 0; t < m; ++t)
            detail::add_undirected(e, h, m + 1 + (h - 1) * m + t, leaf_w);
    }
    FamilyMetadata meta;
    meta.special_nodes["root"] = 0;
    meta.special_nodes["intermediate"] = 1;
    meta.special_nodes["first_leaf"] = m + 1;
    return detail::finish(WeightGraph(n, std::move(e), GraphKind::WeightedNeighbor), meta);
}

// Hidden test family: r hub nodes arranged in a ring, each with r private
// degree-1 leaves, plus a self-loop at hub 0 for aperiodicity. The hubs form
// a prominent family of size o(n) while no single node is prominent.
inline GeneratedFamily hub_ring(int r) {
    if (r < 3) throw PreconditionError("hub-ring requires r >= 3");
    const int n = r + r * r;
    std::vector<Triplet> e;
    e.push_back({0, 0, 1.0});
    for (int h = 0; h < r; ++h) {
        detail::add_undirected(e, h, (h + 1) % r, 1.0);
        for (int t = 0; t < r; ++t) detail::add_undirected(e, h, r + h * r + t, 1.0);
    }
    FamilyMetadata meta;
    meta.special_nodes["hub"] = 0;
    meta.special_nodes["first_leaf"] = r;
    return detail::finish(WeightGraph(n, std::move(e), GraphKind::EqualNeighbor), meta);
}

namespace detail {

inline bool undirected_connected(int n, const std::vector<std::vector<int>>& adj) {
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int u = stack.back();
        stack.pop_back();
        for (int v : adj[u])
            if (!seen[v]) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
    }
    return count == n;
}

inline GeneratedFamily finish_random_binary(int n, const std::vector<std::vector<int>>& adj,
                                            FamilyMetadata meta) {
    std::vector<Triplet> e;
    int isolated = 0;
    for (int i = 0; i < n; ++i) {
        if (adj[i].empty()) {
            // zero-degree vertex: self-loop keeps build_from_weights total
            e.push_back({i, i, 1.0});
            ++isolated;
            continue;
        }
        for (int j : adj[i]) e.push_back({i, j, 1.0});
    }
    meta.isolated_fixed = isolated;
    meta.connected = undirected_connected(n, adj) && isolated == 0;
    meta.prng = std::string(kPrngId);
    return finish(WeightGraph(n, std::move(e), GraphKind::EqualNeighbor), std::move(meta));
}

} // namespace detail

// Erdos-Renyi G(n, p) with p = min(1, c log(n)/n), c > 1. Symmetric binary
// weights; zero-degree vertices receive a self-loop (counted in metadata).
inline GeneratedFamily erdos_renyi(int n, double c, std::uint64_t seed) {
    if (n < 2) throw PreconditionError("erdos-renyi requires n >= 2");
    if (!(c > 1.0)) throw PreconditionError("erdos-renyi requires c > 1");
    const double p = std::min(1.0, c * std::log(static_cast<double>(n)) / n);
    Rng rng(seed, 0x4552u); // "ER"
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) {
                adj[i].push_back(j);
                adj[j].push_back(i);
            }
    FamilyMetadata meta;
    meta.seed = seed;
    return detail::finish_random_binary(n, adj, std::move(meta));
}

// Barabasi-Albert preferential attachment: initial clique on m0 nodes, then
// each arriving node attaches to m distinct earlier nodes chosen with
// probability proportional to current degree (repeated-endpoint sampling,
// duplicates rejected).
inline GeneratedFamily barabasi_albert(int n, int m, int m0, std::uint64_t seed) {
    if (m < 1) throw PreconditionError("barabasi-albert requires m >= 1");
    if (m0 < m) throw PreconditionError("barabasi-albert requires m0 >= m");
    if (n < m0) throw PreconditionError("barabasi-albert requires n >= m0");
    if (m0 < 2) throw PreconditionError("barabasi-albert requires m0 >= 2");
    Rng rng(seed, 0x4241u); // "BA"
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<int> endpoints;
    endpoints.reserve(2 * (static_cast<std::size_t>(m) * n + static_cast<std::size_t>(m0) * m0));
    for (int i = 0; i < m0; ++i)
        for (int j = i + 1; j < m0; ++j) {
            adj[i].push_back(j);
            adj[j].push_back(i);
            endpoints.push_back(i);
            endpoints.push_back(j);
        }
    std::vector<int> targets;
    for (int v = m0; v < n; ++v) {
        targets.clear();
        while (static_cast<int>(targets.size()) < m) {
            const int t = endpoints[rng.uniform_below(endpoints.size())];
            if (std::find(targets.begin(), targets.end(), t) == targets.end())
                targets.push_back(t);
        }
        for (int t : targets) {
            adj[v].push_back(t);
            adj[t].push_back(v);
            endpoints.push_back(v);
            endpoints.push_back(t);
        }
    }
    FamilyMetadata meta;
    meta.seed = seed;
    GeneratedFamily fam = detail::finish_random_binary(n, adj, std::move(meta));
    int top = 0;
    for (int i = 1; i < n; ++i)
        if (adj[i].size() > adj[top].size()) top = i;
    fam.meta.special_nodes["top_degree"] = top;
    return fam;
}

// Super-linear preferential attachment: attachment weight d_i^exponent with
// exponent > 1. Initial clique on m+1 nodes; targets sampled without
// replacement by a cumulative-weight scan.
inline GeneratedFamily superlinear_pa(int n, int m, double exponent, std::uint64_t seed) {
    if (!(exponent > 1.0)) throw PreconditionError("superlinear-pa requires exponent > 1");
    if (m < 1) throw PreconditionError("superlinear-pa requires m >= 1");
    const int m0 = m + 1;
    if (n < m0) throw PreconditionError("superlinear-pa requires n > m");
    Rng rng(seed, 0x5350u); // "SP"
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    std::vector<double> deg(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < m0; ++i)
        for (int j = i + 1; j < m0; ++j) {
            adj[i].push_back(j);
            adj[j].push_back(i);
            deg[i] += 1;
            deg[j] += 1;
        }
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    std::vector<int> targets;
    for (int v = m0; v < n; ++v) {
        targets.clear();
        for (int i = 0; i < v; ++i) w[i] = std::pow(deg[i], exponent);
        for (int pick = 0; pick < m; ++pick) {
            double total = 0.0;
            for (int i = 0; i < v; ++i) total += w[i];
            double u = rng.uniform() * total;
            int t = -1;
            for (int i = 0; i < v; ++i) {
                u -= w[i];
                if (u < 0.0 && w[i] > 0.0) {
                    t = i;
                    break;
                }
            }
            if (t < 0) { // rounding fell off the end: last remaining candidate
                for (int i = v - 1; i >= 0; --i)
                    if (w[i] > 0.0) {
                        t = i;
                        break;
                    }
            }
            targets.push_back(t);
            w[t] = 0.0; // without replacement
        }
        for (int t : targets) {
            adj[v].push_back(t);
            adj[t].push_back(v);
            deg[v] += 1;
            deg[t] += 1;
        }
    }
    FamilyMetadata meta;
    meta.seed = seed;
    GeneratedFamily fam = detail::finish_random_binary(n, adj, std::move(meta));
    int top = 0;
    for (int i = 1; i < n; ++i)
        if (adj[i].size() > adj[top].size()) top = i;
    fam.meta.special_nodes["top_degree"] = top;
    return fam;
}

// ---------------------------------------------------------------------------
// Closed-form stationary vectors
// ---------------------------------------------------------------------------

// pi for the biased path: pi_i = nu^{i-1} (nu-1)/(nu^n - 1). Evaluated in
// the log domain when nu^n overflows: entries too small for a double
// underflow to zero and pi_n tends to (nu-1)/nu.
inline DistributionVector biased_path_pi(int n, double nu) {
    DistributionVector out;
    out.pi.assign(static_cast<std::size_t>(n), 0.0);
    const double log_nu = std::log(nu);
    if (static_cast<double>(n) * log_nu < 700.0) {
        const double pi1 = (nu - 1.0) / (std::pow(nu, n) - 1.0);
        for (int i = 0; i < n; ++i) out.pi[i] = pi1 * std::pow(nu, i);
    } else {
        // log pi_i = (i+1-n) log nu + log((nu-1)/nu) up to the negligible
        // 1/(1 - nu^{-n}) factor
        const double log_top = std::log((nu - 1.0) / nu);
        for (int i = 0; i < n; ++i) {
            const double lp = static_cast<double>(i + 1 - n) * log_nu + log_top;
            out.pi[i] = lp < -745.0 ? 0.0 : std::exp(lp);
        }
    }
    return out;
}

// Closed-form pi where one is known: the star formula, the biased
// path formula, and d/sum(d) for any symmetric-weight family. Families
// without a closed form in scope return nullopt.
inline std::optional<DistributionVector> closed_form_pi(const std::string& family,
                                                        const GeneratedFamily& fam,
                                                        const std::map<std::string, double>& params = {}) {
    const int n = fam.meta.actual_node_count;
    if (family == "star") {
        DistributionVector out;
        out.pi.assign(static_cast<std::size_t>(n), 1.0 / (2.0 * n - 1.0));
        out.pi[0] = static_cast<double>(n) / (2.0 * n - 1.0);
        return out;
    }
    if (family == "biased-path") {
        const auto it = params.find("nu");
        if (it == params.end()) throw Error("biased-path closed form requires nu");
        return biased_path_pi(n, it->second);
    }
    if (fam.meta.kind == GraphKind::EqualNeighbor || fam.meta.kind == GraphKind::WeightedNeighbor) {
        const std::vector<double> d = fam.graph.degrees();
        const double total = std::accumulate(d.begin(), d.end(), 0.0);
        DistributionVector out;
        out.pi.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) out.pi[i] = d[i] / total;
        return out;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Named, parameterized generators
// ---------------------------------------------------------------------------

struct FamilyGenerator {
    std::string name;
    std::map<std::string, double> params;
    std::optional<std::uint64_t> seed;
    std::string size_label = "n"; // what the size parameter means (n, L, m, r)
    bool random = false;
    std::function<GeneratedFamily(int size, std::uint64_t seed)> generate_fn;

    GeneratedFamily generate(int size) const {
        return generate_fn(size, seed.value_or(0));
    }
    GeneratedFamily generate_with_seed(int size, std::uint64_t s) const {
        return generate_fn(size, s);
    }
};

inline double param_or(const std::map<std::string, double>& params, const std::string& key,
                       std::optional<double> fallback = std::nullopt) {
    const auto it = params.find(key);
    if (it != params.end()) return it->second;
    if (fallback) return *fallback;
    throw Error("missing parameter '" + key + "'");
}

inline FamilyGenerator make_family(const std::string& name,
                                   const std::map<std::string, double>& params = {},
                                   std::optional<std::uint64_t> seed = std::nullopt) {
    FamilyGenerator g;
    g.name = name;
    g.params = params;
    g.seed = seed;
    if (name == "star") {
        g.generate_fn = [](int n, std::uint64_t) { return star(n); };
    } else if (name == "star-complete") {
        g.generate_fn = [](int n, std::uint64_t) { return star_complete(n); };
    } else if (name == "biased-path") {
        const double nu = param_or(params, "nu");
        g.generate_fn = [nu](int n, std::uint64_t) { return biased_path(n, nu); };
    } else if (name == "reversed-tree") {
        g.size_label = "L";
        g.generate_fn = [](int L, std::uint64_t) { return reversed_binary_tree(L); };
    } else if (name == "double-star") {
        g.size_label = "m";
        g.generate_fn = [](int m, std::uint64_t) { return weighted_double_star(m); };
    } else if (name == "hub-ring") {
        g.size_label = "r";
        g.generate_fn = [](int r, std::uint64_t) { return hub_ring(r); };
    } else if (name == "erdos-renyi") {
        const double c = param_or(params, "c");
        g.random = true;
        g.generate_fn = [c](int n, std::uint64_t s) { return erdos_renyi(n, c, s); };
    } else if (name == "barabasi-albert") {
        const int m = static_cast<int>(param_or(params, "m"));
        const int m0 = static_cast<int>(param_or(params, "m0", static_cast<double>(m)));
        g.random = true;
        g.generate_fn = [m, m0](int n, std::uint64_t s) { return barabasi_albert(n, m, m0, s); };
    } else if (name == "superlinear-pa") {
        const int m = static_cast<int>(param_or(params, "m"));
        const double exponent = param_or(params, "exponent");
        g.random = true;
        g.generate_fn = [m, exponent](int n, std::uint64_t s) {
            return superlinear_pa(n, m, exponent, s);
        };
    } else {
        throw Error("unknown family '" + name + "'");
    }
    return g;
}

inline std::optional<DistributionVector> closed_form_pi(const FamilyGenerator& g, int size) {
    const GeneratedFamily fam = g.generate(size);
    return closed_form_pi(g.name, fam, g.params);
}

} // namespace crowdwise
