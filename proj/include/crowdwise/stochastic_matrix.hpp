#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crowdwise {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Violated parameter preconditions (bad family size, out-of-range argument).
// The CLI maps these to usage errors, everything else to computation errors.
class PreconditionError : public Error {
public:
    using Error::Error;
};

inline constexpr double kRowSumTol = 1e-12;
inline constexpr double kSimplexTol = 1e-10;
inline constexpr double kInvE = 0.36787944117144232160; // 1/e

// ---------------------------------------------------------------------------
// Sparse storage. CSR with per-row sorted column indices; every stored value
// is strictly positive, absent entries are exactly zero.
// ---------------------------------------------------------------------------

struct Triplet {
    int row = 0;
    int col = 0;
    double value = 0.0;
};

class SparseMatrix {
public:
    SparseMatrix() = default;

    static SparseMatrix from_triplets(int n, std::vector<Triplet> entries) {
        if (n < 1) throw Error("matrix dimension must be >= 1");
        for (const Triplet& t : entries) {
            if (t.row < 0 || t.row >= n || t.col < 0 || t.col >= n)
                throw Error("triplet index out of range at (" + std::to_string(t.row) +
                            ", " + std::to_string(t.col) + ")");
            if (!(t.value > 0.0) || !std::isfinite(t.value))
                throw Error("entries must be strictly positive and finite");
        }
        std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
            return a.row != b.row ? a.row < b.row : a.col < b.col;
        });
        SparseMatrix m;
        m.n_ = n;
        m.row_ptr_.assign(static_cast<std::size_t>(n) + 1, 0);
        int last_row = -1;
        for (std::size_t i = 0; i < entries.size(); ++i) {
            // duplicates accumulate
            if (!m.col_.empty() && entries[i].row == last_row && entries[i].col == m.col_.back()) {
                m.val_.back() += entries[i].value;
                continue;
            }
            m.col_.push_back(entries[i].col);
            m.val_.push_back(entries[i].value);
            last_row = entries[i].row;
            ++m.row_ptr_[static_cast<std::size_t>(entries[i].row) + 1];
        }
        for (int r = 0; r < n; ++r) m.row_ptr_[r + 1] += m.row_ptr_[r];
        return m;
    }

    int n() const { return n_; }
    std::size_t nnz() const { return val_.size(); }

    int row_begin(int r) const { return row_ptr_[r]; }
    int row_end(int r) const { return row_ptr_[r + 1]; }
    int col(int k) const { return col_[k]; }
    double value(int k) const { return val_[k]; }

    double at(int r, int c) const {
        for (int k = row_begin(r); k < row_end(r); ++k)
            if (col_[k] == c) return val_[k];
        return 0.0;
    }

    double row_sum(int r) const {
        double s = 0.0;
        for (int k = row_begin(r); k < row_end(r); ++k) s += val_[k];
        return s;
    }

    std::vector<Triplet> to_triplets() const {
        std::vector<Triplet> out;
        out.reserve(nnz());
        for (int r = 0; r < n_; ++r)
            for (int k = row_begin(r); k < row_end(r); ++k)
                out.push_back({r, col_[k], val_[k]});
        return out;
    }

    bool same_pattern(const SparseMatrix& other) const {
        return n_ == other.n_ && row_ptr_ == other.row_ptr_ && col_ == other.col_;
    }

    bool is_symmetric(double tol = 0.0) const {
        for (int r = 0; r < n_; ++r)
            for (int k = row_begin(r); k < row_end(r); ++k) {
                const double mirror = at(col_[k], r);
                if (std::abs(mirror - val_[k]) > tol) return false;
            }
        return true;
    }

    // y = x P  (row vector times matrix)
    void left_multiply(const std::vector<double>& x, std::vector<double>& y) const {
        y.assign(n_, 0.0);
        for (int r = 0; r < n_; ++r) {
            const double xr = x[r];
            if (xr == 0.0) continue;
            for (int k = row_begin(r); k < row_end(r); ++k) y[col_[k]] += xr * val_[k];
        }
    }

    // y = P x  (matrix times column vector)
    void right_multiply(const std::vector<double>& x, std::vector<double>& y) const {
        y.assign(n_, 0.0);
        for (int r = 0; r < n_; ++r) {
            double s = 0.0;
            for (int k = row_begin(r); k < row_end(r); ++k) s += val_[k] * x[col_[k]];
            y[r] = s;
        }
    }

private:
    int n_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> col_;
    std::vector<double> val_;
};

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

enum class GraphKind { EqualNeighbor, DirectedEqualNeighbor, WeightedNeighbor, General };

inline std::string to_string(GraphKind k) {
    switch (k) {
        case GraphKind::EqualNeighbor: return "equal-neighbor";
        case GraphKind::DirectedEqualNeighbor: return "directed-equal-neighbor";
        case GraphKind::WeightedNeighbor: return "weighted-neighbor";
        default: return "general";
    }
}

inline std::optional<GraphKind> graph_kind_from_string(const std::string& s) {
    if (s == "equal-neighbor") return GraphKind::EqualNeighbor;
    if (s == "directed-equal-neighbor") return GraphKind::DirectedEqualNeighbor;
    if (s == "weighted-neighbor") return GraphKind::WeightedNeighbor;
    if (s == "general") return GraphKind::General;
    return std::nullopt;
}

// Nonnegative weight matrix W; every row must have a positive entry so the
// out-degree d_i = (W 1)_i is positive everywhere.
class WeightGraph {
public:
    WeightGraph(int n, std::vector<Triplet> entries, GraphKind kind)
        : w_(SparseMatrix::from_triplets(n, std::move(entries))), kind_(kind) {
        for (int r = 0; r < n; ++r)
            if (w_.row_begin(r) == w_.row_end(r))
                throw Error("zero out-degree at node " + std::to_string(r));
        if (kind_ == GraphKind::EqualNeighbor || kind_ == GraphKind::WeightedNeighbor) {
            if (!w_.is_symmetric()) throw Error("symmetric kind with non-symmetric weights");
        }
        if (kind_ == GraphKind::EqualNeighbor || kind_ == GraphKind::DirectedEqualNeighbor) {
            for (std::size_t k = 1; k < w_.nnz(); ++k)
                if (w_.value(static_cast<int>(k)) != w_.value(0))
                    throw Error("equal-neighbor kind with unequal weights");
        }
    }

    int n() const { return w_.n(); }
    const SparseMatrix& weights() const { return w_; }
    GraphKind kind() const { return kind_; }

    std::vector<double> degrees() const {
        std::vector<double> d(static_cast<std::size_t>(n()));
        for (int r = 0; r < n(); ++r) d[r] = w_.row_sum(r);
        return d;
    }

private:
    SparseMatrix w_;
    GraphKind kind_;
};

// Row-stochastic influence matrix P: nonnegative, every row sums to one
// within kRowSumTol.
class RowStochasticMatrix {
public:
    static RowStochasticMatrix from_triplets(int n, std::vector<Triplet> entries) {
        RowStochasticMatrix p;
        p.m_ = SparseMatrix::from_triplets(n, std::move(entries));
        for (int r = 0; r < n; ++r) {
            const double s = p.m_.row_sum(r);
            if (std::abs(s - 1.0) > kRowSumTol)
                throw Error("row " + std::to_string(r) + " sums to " + std::to_string(s) +
                            ", not 1");
        }
        return p;
    }

    int n() const { return m_.n(); }
    std::size_t nnz() const { return m_.nnz(); }
    const SparseMatrix& sparse() const { return m_; }
    double at(int r, int c) const { return m_.at(r, c); }

private:
    friend RowStochasticMatrix build_from_weights(const WeightGraph& w);
    RowStochasticMatrix() = default;
    SparseMatrix m_;
};

// chi(k) = (1/n) 1^T P^k, the per-individual column averages of P^k.
struct InfluenceProfile {
    int k = 0;
    std::vector<double> chi;

    void validate() const {
        double s = 0.0;
        for (double v : chi) {
            if (v < -kSimplexTol || v > 1.0 + kSimplexTol)
                throw Error("influence profile entry outside [0,1]");
            s += v;
        }
        if (std::abs(s - 1.0) > kSimplexTol)
            throw Error("influence profile does not lie on the simplex");
    }

    double max_entry() const { return *std::max_element(chi.begin(), chi.end()); }
};

// Probability vector, e.g. the stationary distribution pi.
struct DistributionVector {
    std::vector<double> pi;

    void validate() const {
        double s = 0.0;
        for (double v : pi) {
            if (v < -kSimplexTol) throw Error("distribution entry negative");
            s += v;
        }
        if (std::abs(s - 1.0) > kSimplexTol) throw Error("distribution does not sum to 1");
    }

    double max_entry() const { return *std::max_element(pi.begin(), pi.end()); }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// P = diag(W 1)^{-1} W. Normalizes each row in one pass; the sparsity
// pattern of P equals that of W.
inline RowStochasticMatrix build_from_weights(const WeightGraph& w) {
    const SparseMatrix& W = w.weights();
    std::vector<Triplet> entries;
    entries.reserve(W.nnz());
    for (int r = 0; r < W.n(); ++r) {
        const double d = W.row_sum(r);
        for (int k = W.row_begin(r); k < W.row_end(r); ++k)
            entries.push_back({r, W.col(k), W.value(k) / d});
    }
    return RowStochasticMatrix::from_triplets(W.n(), std::move(entries));
}

// Column sums of P; entry j is sum_i P_ij. Entries total n.
inline std::vector<double> column_sums(const RowStochasticMatrix& p) {
    std::vector<double> s(static_cast<std::size_t>(p.n()), 0.0);
    const SparseMatrix& m = p.sparse();
    for (int r = 0; r < m.n(); ++r)
        for (int k = m.row_begin(r); k < m.row_end(r); ++k) s[m.col(k)] += m.value(k);
    return s;
}

// ||(1/n) P||_1, the maximum column average.
inline double max_column_average(const RowStochasticMatrix& p) {
    const std::vector<double> s = column_sums(p);
    return *std::max_element(s.begin(), s.end()) / static_cast<double>(p.n());
}

// chi(k) by k successive vector-matrix products from the uniform vector;
// P^k is never formed.
inline InfluenceProfile influence_profile(const RowStochasticMatrix& p, int k) {
    if (k < 0) throw Error("influence_profile requires k >= 0");
    const int n = p.n();
    InfluenceProfile out;
    out.k = k;
    out.chi.assign(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    std::vector<double> next;
    for (int step = 0; step < k; ++step) {
        p.sparse().left_multiply(out.chi, next);
        out.chi.swap(next);
    }
    out.validate();
    return out;
}

// Left dominant eigenvector of a primitive stochastic matrix by damped
// (lazy) power iteration x <- x (P+I)/2 from the uniform vector. The
// averaging keeps the fixed point and suppresses the rotating modes of
// nearly periodic chains that stall the plain iteration. Stops when
// successive iterates differ by less than tol in one-norm, which puts the
// residual ||pi^T P - pi^T||_1 below 2*tol.
inline DistributionVector dominant_left_eigenvector(const RowStochasticMatrix& p,
                                                    double tol = 1e-12,
                                                    long max_iters = 1000000) {
    if (!(tol > 0.0)) throw Error("tolerance must be positive");
    const int n = p.n();
    DistributionVector out;
    out.pi.assign(static_cast<std::size_t>(n), 1.0 / static_cast<double>(n));
    if (n == 1) return out;
    std::vector<double> next(static_cast<std::size_t>(n));
    double diff = 0.0;
    for (long it = 0; it < max_iters; ++it) {
        p.sparse().left_multiply(out.pi, next);
        diff = 0.0;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            next[i] = 0.5 * (next[i] + out.pi[i]);
            diff += std::abs(next[i] - out.pi[i]);
            sum += next[i];
        }
        for (int i = 0; i < n; ++i) next[i] /= sum;
        out.pi.swap(next);
        if (diff < tol) {
            out.validate();
            return out;
        }
    }
    throw Error("power iteration did not converge in " + std::to_string(max_iters) +
                " iterations (last residual " + std::to_string(diff) +
                "); the matrix may be periodic or nearly reducible");
}

// True iff the directed graph of nonzero entries is strongly connected and
// aperiodic. Period = gcd of (level(u)+1-level(v)) over all edges in a BFS.
inline bool is_primitive(const RowStochasticMatrix& p) {
    const SparseMatrix& m = p.sparse();
    const int n = m.n();

    // reverse adjacency
    std::vector<int> rdeg(static_cast<std::size_t>(n), 0);
    for (int r = 0; r < n; ++r)
        for (int k = m.row_begin(r); k < m.row_end(r); ++k) ++rdeg[m.col(k)];
    std::vector<int> rptr(static_cast<std::size_t>(n) + 1, 0);
    for (int i = 0; i < n; ++i) rptr[i + 1] = rptr[i] + rdeg[i];
    std::vector<int> radj(m.nnz());
    {
        std::vector<int> fill(rptr.begin(), rptr.end() - 1);
        for (int r = 0; r < n; ++r)
            for (int k = m.row_begin(r); k < m.row_end(r); ++k) radj[fill[m.col(k)]++] = r;
    }

    auto reaches_all = [&](auto&& neighbors) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            neighbors(u, [&](int v) {
                if (!seen[v]) {
                    seen[v] = 1;
                    ++count;
                    stack.push_back(v);
                }
            });
        }
        return count == n;
    };
    const bool forward = reaches_all([&](int u, auto&& visit) {
        for (int k = m.row_begin(u); k < m.row_end(u); ++k) visit(m.col(k));
    });
    const bool backward = reaches_all([&](int u, auto&& visit) {
        for (int k = rptr[u]; k < rptr[u + 1]; ++k) visit(radj[k]);
    });
    if (!forward || !backward) return false;

    // BFS levels from node 0, then gcd over edge level slacks
    std::vector<long> level(static_cast<std::size_t>(n), -1);
    std::vector<int> queue{0};
    level[0] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int u = queue[head];
        for (int k = m.row_begin(u); k < m.row_end(u); ++k) {
            const int v = m.col(k);
            if (level[v] < 0) {
                level[v] = level[u] + 1;
                queue.push_back(v);
            }
        }
    }
    long g = 0;
    for (int u = 0; u < n; ++u)
        for (int k = m.row_begin(u); k < m.row_end(u); ++k)
            g = std::gcd(g, std::abs(level[u] + 1 - level[m.col(k)]));
    return g == 1;
}

// Phi_P(s): maximum total one-time influence over node subsets of size s;
// equal to the sum of the s largest column sums.
inline double max_influence(const RowStochasticMatrix& p, int s) {
    const int n = p.n();
    if (s < 0 || s > n) throw Error("subset size must lie in [0, n]");
    if (s == 0) return 0.0;
    std::vector<double> cs = column_sums(p);
    std::sort(cs.begin(), cs.end(), std::greater<>());
    double total = 0.0;
    for (int i = 0; i < s; ++i) total += cs[i];
    return total;
}

// Real-argument extension Phi_P(x) = Phi_P(floor(x)), clamped to [0, n].
inline double max_influence_real(const RowStochasticMatrix& p, double x) {
    if (x < 0.0) throw Error("subset size must be nonnegative");
    const double fl = std::floor(x);
    const int s = fl >= static_cast<double>(p.n()) ? p.n() : static_cast<int>(fl);
    return max_influence(p, s);
}

// ---------------------------------------------------------------------------
// Mixing time
// ---------------------------------------------------------------------------

enum class MixingCriterion { ExactPairwise, SurrogateRowToPi };

// Result of the mixing-time search: smallest t <= cap such that the maximum
// one-norm distance between rows of P^t is at most 1/e, or ExceedsCap.
struct MixingTimeResult {
    bool exceeded = false;
    int tau = 0; // valid when !exceeded
    int cap = 0;
    MixingCriterion criterion = MixingCriterion::ExactPairwise;
    double last_distance = 0.0; // certified upper bound on the criterion at the last step

    int value() const {
        if (exceeded) throw Error("mixing time exceeds cap " + std::to_string(cap));
        return tau;
    }
};

namespace detail {

inline double one_norm_distance(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += std::abs(a[i] - b[i]);
    return s;
}

// Exact pairwise evaluation with an anchor-row sandwich: with
// u_i = ||r_i - r_0||_1 and U = max u_i, the pairwise maximum D satisfies
// U <= D <= 2U, so a full pair scan is needed only when U <= 1/e < 2U.
inline bool pairwise_distance_at_most(const std::vector<double>& rows, int n, double bound,
                                      double* achieved) {
    std::vector<double> u(static_cast<std::size_t>(n), 0.0);
    double umax = 0.0;
    for (int i = 1; i < n; ++i) {
        u[i] = one_norm_distance(&rows[static_cast<std::size_t>(i) * n], &rows[0], n);
        umax = std::max(umax, u[i]);
    }
    if (umax > bound) {
        *achieved = umax;
        return false;
    }
    if (2.0 * umax <= bound) {
        *achieved = 2.0 * umax;
        return true;
    }
    double dmax = umax;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (u[i] + u[j] <= dmax) continue; // cannot beat current max
            const double d = one_norm_distance(&rows[static_cast<std::size_t>(i) * n],
                                               &rows[static_cast<std::size_t>(j) * n], n);
            dmax = std::max(dmax, d);
            if (dmax > bound) {
                *achieved = dmax;
                return false;
            }
        }
    }
    *achieved = dmax;
    return true;
}

} // namespace detail

// The contract is the exact pairwise criterion. Up to n = exact_limit it is
// evaluated exactly (dense powers of P, anchor sandwich plus pair scan in
// the uncertain band). Above that the conservative surrogate
// 2 max_i ||row_i(P^t) - pi||_1 <= 1/e is used, which upper-bounds the
// pairwise maximum by the triangle inequality; the result records which
// criterion produced it.
inline MixingTimeResult mixing_time(const RowStochasticMatrix& p, int cap,
                                    int exact_limit = 2000) {
    if (cap < 1) throw Error("mixing-time cap must be >= 1");
    const int n = p.n();
    MixingTimeResult res;
    res.cap = cap;

    if (n <= exact_limit) {
        res.criterion = MixingCriterion::ExactPairwise;
        std::vector<double> rows(static_cast<std::size_t>(n) * n, 0.0);
        const SparseMatrix& m = p.sparse();
        for (int r = 0; r < n; ++r)
            for (int k = m.row_begin(r); k < m.row_end(r); ++k)
                rows[static_cast<std::size_t>(r) * n + m.col(k)] = m.value(k);
        std::vector<double> scratch(static_cast<std::size_t>(n));
        for (int t = 1; t <= cap; ++t) {
            double achieved = 0.0;
            if (detail::pairwise_distance_at_most(rows, n, kInvE, &achieved)) {
                res.tau = t;
                res.last_distance = achieved;
                return res;
            }
            res.last_distance = achieved;
            if (t == cap) break;
            // advance every row by one step of P
            for (int r = 0; r < n; ++r) {
                double* row = &rows[static_cast<std::size_t>(r) * n];
                std::fill(scratch.begin(), scratch.end(), 0.0);
                for (int u = 0; u < n; ++u) {
                    const double x = row[u];
                    if (x == 0.0) continue;
                    for (int k = m.row_begin(u); k < m.row_end(u); ++k)
                        scratch[m.col(k)] += x * m.value(k);
                }
                std::copy(scratch.begin(), scratch.end(), row);
            }
        }
        res.exceeded = true;
        return res;
    }

    res.criterion = MixingCriterion::SurrogateRowToPi;
    const DistributionVector pi = dominant_left_eigenvector(p);
    const SparseMatrix& m = p.sparse();
    const int block = std::max(1, (1 << 22) / n);
    // 2 max_i ||row_i - pi||_1 <= 1/e  <=>  every row distance <= 1/(2e).
    // Row-to-pi distances never increase with t (pi P = pi and
    // ||x P||_1 <= ||x||_1), so each block can run until it passes the
    // threshold on its own; the answer is the slowest block.
    const double threshold = 0.5 * kInvE;
    int tau = 1;
    double certified = 0.0;
    std::vector<double> rows(static_cast<std::size_t>(block) * n);
    std::vector<double> scratch(static_cast<std::size_t>(n));
    for (int base = 0; base < n; base += block) {
        const int nb = std::min(block, n - base);
        std::fill(rows.begin(), rows.begin() + static_cast<std::size_t>(nb) * n, 0.0);
        for (int r = 0; r < nb; ++r) {
            const int src = base + r;
            for (int k = m.row_begin(src); k < m.row_end(src); ++k)
                rows[static_cast<std::size_t>(r) * n + m.col(k)] = m.value(k);
        }
        for (int t = 1;; ++t) {
            double bmax = 0.0;
            for (int r = 0; r < nb; ++r)
                bmax = std::max(bmax, detail::one_norm_distance(
                                          &rows[static_cast<std::size_t>(r) * n],
                                          pi.pi.data(), n));
            if (bmax <= threshold) {
                tau = std::max(tau, t);
                certified = std::max(certified, bmax);
                break;
            }
            if (t == cap) {
                res.exceeded = true;
                res.last_distance = 2.0 * bmax;
                return res;
            }
            for (int r = 0; r < nb; ++r) {
                double* row = &rows[static_cast<std::size_t>(r) * n];
                std::fill(scratch.begin(), scratch.end(), 0.0);
                for (int u = 0; u < n; ++u) {
                    const double x = row[u];
                    if (x == 0.0) continue;
                    for (int k = m.row_begin(u); k < m.row_end(u); ++k)
                        scratch[m.col(k)] += x * m.value(k);
                }
                std::copy(scratch.begin(), scratch.end(), row);
            }
        }
    }
    res.tau = tau;
    res.last_distance = 2.0 * certified;
    return res;
}

// ---------------------------------------------------------------------------
// Simplex norm sandwich ||x||_inf^2 <= x^T x <= ||x||_inf for x in the simplex
// ---------------------------------------------------------------------------

inline bool simplex_norm_sandwich_holds(const std::vector<double>& x) {
    double maxabs = 0.0, dot = 0.0;
    for (double v : x) {
        maxabs = std::max(maxabs, std::abs(v));
        dot += v * v;
    }
    // Equality is attained (uniform vector on the right, point mass on the
    // left), so leave room for summation roundoff.
    const double guard = 16.0 * 2.220446049250313e-16 * static_cast<double>(x.size()) * maxabs;
    return maxabs * maxabs <= dot + guard && dot <= maxabs + guard;
}

} // namespace crowdwise
