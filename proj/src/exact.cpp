#include "balancekit/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "balancekit/imbalance.hpp"

namespace balancekit {

void SolverConfig::validate() const {
    if (max_iterations < 1)
        throw std::invalid_argument("max_iterations must be >= 1");
    if (perturbation_strength < 1)
        throw std::invalid_argument("perturbation_strength must be >= 1");
    if (restarts < 1)
        throw std::invalid_argument("restarts must be >= 1");
    if (!(time_budget > 0.0))
        throw std::invalid_argument("time_budget must be positive");
    if (k_max && *k_max < 1)
        throw std::invalid_argument("k_max must be >= 1");
}

namespace {

using Clock = std::chrono::steady_clock;

// Depth-first branch and bound. Vertices are assigned in degree-descending
// order; a vertex may join clusters 0..used-1 or open cluster `used`. The
// running cost and the lookahead bound drift from the canonical edge-order
// sum by at most rounding noise, so pruning keeps a small slack and every
// surviving leaf is re-scored canonically.
struct BranchAndBound {
    static constexpr double kSlack = 1e-9;

    const SignedGraph& g;
    int n;
    std::vector<int> order;      // position -> vertex
    std::vector<int> cluster_of; // vertex -> cluster, -1 while unassigned

    double prune_bound; // incumbent cost used for pruning only
    double best_obj;    // canonical objective of the incumbent
    std::vector<int> best_assign;

    long long nodes = 0;
    Clock::time_point deadline;
    bool timed_out = false;

    // scratch for the lookahead bound
    std::vector<double> pos_to, neg_to;
    std::vector<int> touched;

    explicit BranchAndBound(const SignedGraph& graph, double budget_seconds)
        : g(graph), n(graph.vertex_count()), order(n), cluster_of(n, -1),
          pos_to(n, 0.0), neg_to(n, 0.0) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return g.degree(a) > g.degree(b); });
        deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(budget_seconds));

        Partition single = Partition::single_cluster(n);
        best_obj = imbalance(g, single);
        best_assign = single.assignment();
        prune_bound = best_obj;
    }

    double assign_cost(int v, int c) const {
        double cost = 0.0;
        for (const auto& nb : g.neighbors(v)) {
            int cl = cluster_of[nb.vertex];
            if (cl < 0)
                continue;
            if (nb.sign == EdgeSign::positive) {
                if (cl != c)
                    cost += nb.weight;
            } else if (cl == c) {
                cost += nb.weight;
            }
        }
        return cost;
    }

    // Admissible lookahead: each unassigned vertex pays at least its cheapest
    // placement against the vertices already fixed; edges between two
    // unassigned vertices count as free. Stops early once `limit` is beaten.
    double lower_bound(int from_pos, double cost_so_far, double limit) {
        double lb = 0.0;
        for (int p = from_pos; p < n; ++p) {
            int u = order[p];
            double pos_sum = 0.0;
            touched.clear();
            for (const auto& nb : g.neighbors(u)) {
                int cl = cluster_of[nb.vertex];
                if (cl < 0)
                    continue;
                if (pos_to[cl] == 0.0 && neg_to[cl] == 0.0)
                    touched.push_back(cl);
                if (nb.sign == EdgeSign::positive) {
                    pos_to[cl] += nb.weight;
                    pos_sum += nb.weight;
                } else {
                    neg_to[cl] += nb.weight;
                }
            }
            double cheapest = pos_sum; // a fresh or untouched cluster
            for (int cl : touched) {
                cheapest = std::min(cheapest, pos_sum - pos_to[cl] + neg_to[cl]);
                pos_to[cl] = 0.0;
                neg_to[cl] = 0.0;
            }
            lb += cheapest;
            if (cost_so_far + lb > limit)
                return lb;
        }
        return lb;
    }

    void leaf(double cost) {
        Partition part(cluster_of);
        double obj = imbalance(g, part);
        if (obj < best_obj || (obj == best_obj && part.assignment() < best_assign)) {
            best_obj = obj;
            best_assign = part.assignment();
        }
        prune_bound = std::min(prune_bound, cost);
    }

    void dfs(int pos, int used, double cost) {
        if ((++nodes & 1023) == 0 && Clock::now() > deadline)
            timed_out = true;
        if (timed_out)
            return;
        if (pos == n) {
            leaf(cost);
            return;
        }
        int v = order[pos];
        for (int c = 0; c <= used && !timed_out; ++c) {
            double next_cost = cost + assign_cost(v, c);
            if (next_cost > prune_bound + kSlack)
                continue;
            cluster_of[v] = c;
            double lb = lower_bound(pos + 1, next_cost, prune_bound + kSlack);
            if (next_cost + lb <= prune_bound + kSlack)
                dfs(pos + 1, c == used ? used + 1 : used, next_cost);
            cluster_of[v] = -1;
        }
    }
};

} // namespace

SolveResult exact_cc(const SignedGraph& graph, const SolverConfig& config) {
    config.validate();
    auto start = Clock::now();
    SolveResult result;
    result.objective_kind = ObjectiveKind::CC;
    if (graph.vertex_count() == 0) {
        result.partition = Partition(std::vector<int>{});
        result.objective = 0.0;
        result.proven_optimal = true;
        result.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
        return result;
    }

    BranchAndBound bb(graph, config.time_budget);
    bb.dfs(0, 0, 0.0);

    result.partition = Partition(bb.best_assign);
    result.objective = bb.best_obj;
    result.iterations_used = bb.nodes;
    result.proven_optimal = !bb.timed_out;
    result.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return result;
}

} // namespace balancekit
