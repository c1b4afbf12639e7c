#include "balancekit/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "balancekit/imbalance.hpp"

namespace balancekit {

namespace {

using Clock = std::chrono::steady_clock;

// Movement deltas below this are treated as noise so float drift cannot make
// the descent cycle.
constexpr double kMoveEps = 1e-12;
// Kicks without improvement before a restart gives up.
constexpr int kStagnationCap = 50;

// Partition state with per-block positive/negative weight totals, shared by
// both objectives. Nonempty cluster slots are kept compact as 0..k-1; slot k
// acts as "open a new cluster" while k < k_cap.
class Engine {
public:
    Engine(const SignedGraph& graph, ObjectiveKind kind, int k_cap)
        : g_(graph), kind_(kind), n_(graph.vertex_count()), k_cap_(k_cap),
          assign_(n_, -1), csize_(k_cap, 0),
          pos_(static_cast<std::size_t>(k_cap) * k_cap, 0.0),
          neg_(static_cast<std::size_t>(k_cap) * k_cap, 0.0),
          vpos_(k_cap, 0.0), vneg_(k_cap, 0.0) {}

    int cluster_count() const { return k_; }
    const std::vector<int>& assignment() const { return assign_; }

    double objective() const {
        double total = 0.0;
        for (int i = 0; i < k_; ++i)
            for (int j = i; j < k_; ++j)
                total += block_cost(i == j, P(i, j), N(i, j));
        return total;
    }

    void build_from(const std::vector<int>& assignment) {
        std::fill(pos_.begin(), pos_.end(), 0.0);
        std::fill(neg_.begin(), neg_.end(), 0.0);
        std::fill(csize_.begin(), csize_.end(), 0);
        assign_ = assignment;
        k_ = 0;
        for (int c : assign_) {
            if (c < 0 || c >= k_cap_)
                throw std::invalid_argument("cluster index out of range for this solver");
            ++csize_[c];
            k_ = std::max(k_, c + 1);
        }
        for (int c = 0; c < k_; ++c)
            if (csize_[c] == 0)
                throw std::invalid_argument("cluster indices must be contiguous");
        for (const Edge& e : g_.edges())
            bump(assign_[e.u], assign_[e.v], e.sign == EdgeSign::positive ? e.weight : 0.0,
                 e.sign == EdgeSign::negative ? e.weight : 0.0);
    }

    void construct(std::mt19937_64& rng) {
        std::fill(pos_.begin(), pos_.end(), 0.0);
        std::fill(neg_.begin(), neg_.end(), 0.0);
        std::fill(csize_.begin(), csize_.end(), 0);
        std::fill(assign_.begin(), assign_.end(), -1);
        k_ = 0;
        std::vector<int> order(n_);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (int v : order) {
            int best_c = -1;
            double best_d = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k_; ++c) {
                double d = place_delta(v, c);
                if (d < best_d) {
                    best_d = d;
                    best_c = c;
                }
            }
            if (k_ < k_cap_) {
                double d = place_delta(v, k_);
                if (d < best_d)
                    best_c = k_;
            }
            place(v, best_c);
        }
    }

    // Sweeps vertices in id order, applying each vertex's best strictly
    // improving relocation, until a full sweep moves nothing.
    void local_search(Clock::time_point deadline, bool& timed_out) {
        const int max_passes = 100 + 10 * n_;
        for (int pass = 0; pass < max_passes; ++pass) {
            if (Clock::now() > deadline) {
                timed_out = true;
                return;
            }
            bool moved = false;
            for (int v = 0; v < n_; ++v) {
                int a = assign_[v];
                int best_b = -1;
                double best_d = -kMoveEps;
                for (int b = 0; b < k_; ++b) {
                    if (b == a)
                        continue;
                    double d = move_delta(v, b);
                    if (d < best_d) {
                        best_d = d;
                        best_b = b;
                    }
                }
                if (k_ < k_cap_ && csize_[a] > 1) {
                    double d = move_delta(v, k_);
                    if (d < best_d)
                        best_b = k_;
                }
                if (best_b >= 0) {
                    apply_move(v, best_b);
                    moved = true;
                }
            }
            if (!moved)
                return;
        }
    }

    void perturb(std::mt19937_64& rng, int strength) {
        for (int i = 0; i < strength; ++i) {
            int v = std::uniform_int_distribution<int>(0, n_ - 1)(rng);
            int hi = k_ < k_cap_ ? k_ : k_ - 1;
            int b = std::uniform_int_distribution<int>(0, hi)(rng);
            if (b != assign_[v])
                apply_move(v, b);
        }
    }

private:
    double P(int i, int j) const { return pos_[static_cast<std::size_t>(i) * k_cap_ + j]; }
    double N(int i, int j) const { return neg_[static_cast<std::size_t>(i) * k_cap_ + j]; }

    void bump(int ci, int cj, double dp, double dn) {
        pos_[static_cast<std::size_t>(ci) * k_cap_ + cj] += dp;
        neg_[static_cast<std::size_t>(ci) * k_cap_ + cj] += dn;
        if (ci != cj) {
            pos_[static_cast<std::size_t>(cj) * k_cap_ + ci] += dp;
            neg_[static_cast<std::size_t>(cj) * k_cap_ + ci] += dn;
        }
    }

    double block_cost(bool diagonal, double p, double n) const {
        if (kind_ == ObjectiveKind::RCC)
            return std::min(p, n);
        return diagonal ? n : p;
    }

    struct KeyDelta {
        int i, j;
        double dp, dn;
    };

    // v's edge mass per neighbour cluster, as (cluster, pos, neg) triples.
    void gather(int v) {
        touched_.clear();
        for (const auto& nb : g_.neighbors(v)) {
            int cu = assign_[nb.vertex];
            if (cu < 0)
                continue;
            if (vpos_[cu] == 0.0 && vneg_[cu] == 0.0)
                touched_.push_back(cu);
            if (nb.sign == EdgeSign::positive)
                vpos_[cu] += nb.weight;
            else
                vneg_[cu] += nb.weight;
        }
    }

    void add_key(int i, int j, double dp, double dn) {
        if (i > j)
            std::swap(i, j);
        for (auto& kd : keys_)
            if (kd.i == i && kd.j == j) {
                kd.dp += dp;
                kd.dn += dn;
                return;
            }
        keys_.push_back({i, j, dp, dn});
    }

    double keyed_delta() const {
        double delta = 0.0;
        for (const auto& kd : keys_) {
            double p = P(kd.i, kd.j), n = N(kd.i, kd.j);
            bool diag = kd.i == kd.j;
            delta += block_cost(diag, p + kd.dp, n + kd.dn) - block_cost(diag, p, n);
        }
        return delta;
    }

    void collect_move_keys(int v, int from, int to) {
        gather(v);
        keys_.clear();
        for (int cu : touched_) {
            if (from >= 0)
                add_key(from, cu, -vpos_[cu], -vneg_[cu]);
            add_key(to, cu, vpos_[cu], vneg_[cu]);
            vpos_[cu] = 0.0;
            vneg_[cu] = 0.0;
        }
    }

    double place_delta(int v, int c) {
        collect_move_keys(v, -1, c);
        return keyed_delta();
    }

    void place(int v, int c) {
        collect_move_keys(v, -1, c);
        for (const auto& kd : keys_)
            bump(kd.i, kd.j, kd.dp, kd.dn);
        assign_[v] = c;
        if (c == k_)
            ++k_;
        ++csize_[c];
    }

    double move_delta(int v, int b) {
        collect_move_keys(v, assign_[v], b);
        return keyed_delta();
    }

    void apply_move(int v, int b) {
        int a = assign_[v];
        collect_move_keys(v, a, b);
        for (const auto& kd : keys_)
            bump(kd.i, kd.j, kd.dp, kd.dn);
        assign_[v] = b;
        if (b == k_)
            ++k_;
        ++csize_[b];
        if (--csize_[a] == 0)
            compact(a);
    }

    // Keeps nonempty slots contiguous: the highest slot is relabeled into the
    // emptied one. The freed top row/column is then hard-zeroed; incremental
    // removal leaves rounding residues there, and a cluster opened later in
    // that slot must start from exact zeros.
    void compact(int a) {
        --k_;
        if (a != k_) {
            for (int v = 0; v < n_; ++v)
                if (assign_[v] == k_)
                    assign_[v] = a;
            csize_[a] = csize_[k_];
            csize_[k_] = 0;
            for (int j = 0; j < k_cap_; ++j) {
                std::swap(pos_[static_cast<std::size_t>(a) * k_cap_ + j],
                          pos_[static_cast<std::size_t>(k_) * k_cap_ + j]);
                std::swap(neg_[static_cast<std::size_t>(a) * k_cap_ + j],
                          neg_[static_cast<std::size_t>(k_) * k_cap_ + j]);
            }
            for (int i = 0; i < k_cap_; ++i) {
                std::swap(pos_[static_cast<std::size_t>(i) * k_cap_ + a],
                          pos_[static_cast<std::size_t>(i) * k_cap_ + k_]);
                std::swap(neg_[static_cast<std::size_t>(i) * k_cap_ + a],
                          neg_[static_cast<std::size_t>(i) * k_cap_ + k_]);
            }
        }
        for (int j = 0; j < k_cap_; ++j) {
            pos_[static_cast<std::size_t>(k_) * k_cap_ + j] = 0.0;
            neg_[static_cast<std::size_t>(k_) * k_cap_ + j] = 0.0;
            pos_[static_cast<std::size_t>(j) * k_cap_ + k_] = 0.0;
            neg_[static_cast<std::size_t>(j) * k_cap_ + k_] = 0.0;
        }
    }

    const SignedGraph& g_;
    ObjectiveKind kind_;
    int n_;
    int k_cap_;
    int k_ = 0;
    std::vector<int> assign_;
    std::vector<int> csize_;
    std::vector<double> pos_, neg_;

    // move-evaluation scratch
    std::vector<double> vpos_, vneg_;
    std::vector<int> touched_;
    std::vector<KeyDelta> keys_;
};

double canonical_objective(const SignedGraph& g, ObjectiveKind kind, const Partition& p) {
    return kind == ObjectiveKind::CC ? imbalance(g, p) : relaxed_imbalance(g, p);
}

SolveResult run_ils(const SignedGraph& graph, const SolverConfig& config, ObjectiveKind kind,
                    int k_cap, const std::optional<Partition>& warm_start) {
    auto start = Clock::now();
    const int n = graph.vertex_count();

    SolveResult result;
    result.objective_kind = kind;
    if (n == 0) {
        result.partition = Partition(std::vector<int>{});
        result.objective = 0.0;
        result.proven_optimal = true;
        return result;
    }

    if (warm_start) {
        if (warm_start->size() != n)
            throw std::invalid_argument("warm start covers a different vertex set");
        if (warm_start->cluster_count() > k_cap)
            throw std::invalid_argument("warm start uses more clusters than allowed");
    }

    auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(config.time_budget));
    std::mt19937_64 rng(config.rng_seed);
    Engine eng(graph, kind, k_cap);

    std::vector<int> global_assign;
    double global_obj = std::numeric_limits<double>::infinity();
    long long descents = 0;
    bool timed_out = false;

    auto offer_global = [&](const std::vector<int>& assign, double obj) {
        if (obj < global_obj) {
            global_obj = obj;
            global_assign = assign;
            return;
        }
        if (obj == global_obj && !global_assign.empty()) {
            Partition cand(assign), have(global_assign);
            if (cand.assignment() < have.assignment())
                global_assign = assign;
        }
    };

    for (int r = 0; r < config.restarts && !timed_out; ++r) {
        if (r == 0 && warm_start)
            eng.build_from(warm_start->assignment());
        else
            eng.construct(rng);
        eng.local_search(deadline, timed_out);
        ++descents;

        std::vector<int> best_assign = eng.assignment();
        double best_obj = eng.objective();

        int stale = 0;
        for (int iter = 0; iter < config.max_iterations && !timed_out; ++iter) {
            if (Clock::now() > deadline) {
                timed_out = true;
                break;
            }
            eng.perturb(rng, config.perturbation_strength);
            eng.local_search(deadline, timed_out);
            ++descents;
            double obj = eng.objective();
            if (obj < best_obj) {
                best_obj = obj;
                best_assign = eng.assignment();
                stale = 0;
            } else {
                eng.build_from(best_assign);
                if (++stale >= kStagnationCap)
                    break;
            }
        }
        offer_global(best_assign, best_obj);
    }

    Partition part(global_assign);
    double objective = canonical_objective(graph, kind, part);
    // The incremental block sums drift from the canonical ones by rounding
    // noise, so the search can "improve" on the warm start by less than that
    // noise while scoring worse canonically. Never hand back less than what
    // was handed in.
    if (warm_start) {
        double warm_objective = canonical_objective(graph, kind, *warm_start);
        if (warm_objective < objective) {
            part = *warm_start;
            objective = warm_objective;
        }
    }
    result.partition = part;
    result.objective = objective;
    result.iterations_used = descents;
    result.proven_optimal = result.objective == 0.0;
    result.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

} // namespace

SolveResult ils_cc(const SignedGraph& graph, const SolverConfig& config) {
    config.validate();
    return run_ils(graph, config, ObjectiveKind::CC, std::max(graph.vertex_count(), 1),
                   std::nullopt);
}

SolveResult ils_rcc(const SignedGraph& graph, const SolverConfig& config,
                    const std::optional<Partition>& warm_start) {
    config.validate();
    if (!config.k_max)
        throw std::invalid_argument("the relaxed objective needs k_max");
    const int n = graph.vertex_count();
    if (n > 0 && (*config.k_max < 1 || *config.k_max > n))
        throw std::invalid_argument("k_max must lie in [1, vertex count]");
    return run_ils(graph, config, ObjectiveKind::RCC, std::max(std::min(*config.k_max, n), 1),
                   warm_start);
}

std::vector<SolveResult> k_sweep(const SignedGraph& graph, const SolverConfig& config) {
    config.validate();
    std::vector<SolveResult> results;
    SolveResult cc = ils_cc(graph, config);
    results.push_back(cc);

    const int n = graph.vertex_count();
    if (n == 0) {
        for (int d = 0; d < 3; ++d) {
            SolveResult r;
            r.partition = Partition(std::vector<int>{});
            r.objective_kind = ObjectiveKind::RCC;
            r.proven_optimal = true;
            results.push_back(r);
        }
        return results;
    }

    const int k_prime = cc.partition.cluster_count();
    for (int d = 0; d < 3; ++d) {
        SolverConfig rcc_config = config;
        rcc_config.k_max = std::min(k_prime + d, n);
        results.push_back(ils_rcc(graph, rcc_config, cc.partition));
    }
    return results;
}

} // namespace balancekit
