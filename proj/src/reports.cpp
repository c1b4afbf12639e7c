#include "balancekit/reports.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string_view>
#include <utility>

#include <json.hpp>

#include "balancekit/imbalance.hpp"
#include "balancekit/nmi.hpp"
#include "balancekit/numio.hpp"

namespace balancekit {

namespace {

void check_subset(const SignedGraph& unfiltered, const SignedGraph& filtered) {
    if (unfiltered.vertex_count() != filtered.vertex_count())
        throw std::invalid_argument("graphs cover different vertex sets");
    std::map<std::pair<int, int>, std::pair<double, EdgeSign>> edges;
    for (const Edge& e : unfiltered.edges())
        edges[{e.u, e.v}] = {e.weight, e.sign};
    for (const Edge& e : filtered.edges()) {
        auto it = edges.find({e.u, e.v});
        if (it == edges.end() || it->second.first != e.weight || it->second.second != e.sign)
            throw std::invalid_argument(
                "filtered graph is not an edge subset of the unfiltered one");
    }
}

double giant_share(const SignedGraph& g) {
    auto comps = connected_components(g);
    if (comps.empty())
        return 0.0;
    return static_cast<double>(comps.front().size()) / g.vertex_count();
}

} // namespace

InstanceReport filtering_report(const SignedGraph& unfiltered, const SignedGraph& filtered,
                                const Partition& p_unf, const Partition& p_f,
                                const std::string& instance_id) {
    check_subset(unfiltered, filtered);
    if (p_unf.size() != unfiltered.vertex_count() || p_f.size() != filtered.vertex_count())
        throw std::invalid_argument("partition covers a different vertex set than its graph");

    InstanceReport r;
    r.instance_id = instance_id;
    r.vertex_count = unfiltered.vertex_count();
    r.links_before = unfiltered.edge_count();
    r.links_after = filtered.edge_count();
    r.positive_links_removed = unfiltered.positive_edge_count() - filtered.positive_edge_count();
    r.negative_links_removed = unfiltered.negative_edge_count() - filtered.negative_edge_count();
    r.weight_before = unfiltered.total_weight();
    r.weight_after = filtered.total_weight();
    r.link_removal_fraction =
        unfiltered.edge_count() > 0
            ? static_cast<double>(unfiltered.edge_count() - filtered.edge_count()) /
                  unfiltered.edge_count()
            : 0.0;
    r.weight_removal_fraction =
        unfiltered.total_weight() > 0.0
            ? (unfiltered.total_weight() - filtered.total_weight()) / unfiltered.total_weight()
            : 0.0;
    r.component_count_before = static_cast<int>(connected_components(unfiltered).size());
    r.component_count_after = static_cast<int>(connected_components(filtered).size());
    r.giant_share_before = giant_share(unfiltered);
    r.giant_share_after = giant_share(filtered);
    r.cluster_count_before = p_unf.cluster_count();
    r.cluster_count_after = p_f.cluster_count();
    if (unfiltered.edge_count() > 0)
        r.imbalance_percent_before = imbalance_percent(unfiltered, imbalance(unfiltered, p_unf));
    if (filtered.edge_count() > 0)
        r.imbalance_percent_after = imbalance_percent(filtered, imbalance(filtered, p_f));
    r.nmi_filtered_vs_unfiltered = nmi(p_unf, p_f);
    return r;
}

std::vector<InstanceReport> benchmark(const std::vector<int>& sizes, const SignedGraph& source,
                                      const SolverConfig& config) {
    config.validate();
    for (int s : sizes)
        if (s < 1 || s > source.vertex_count())
            throw std::invalid_argument("sample size " + std::to_string(s) +
                                        " outside [1, " +
                                        std::to_string(source.vertex_count()) + "]");

    std::vector<InstanceReport> reports;
    reports.reserve(sizes.size());
    for (int s : sizes) {
        // Each size draws from its own stream, so rows don't depend on which
        // other sizes run.
        std::seed_seq seq{static_cast<unsigned long long>(config.rng_seed),
                          static_cast<unsigned long long>(s)};
        std::mt19937_64 rng(seq);
        std::vector<int> ids(source.vertex_count());
        std::iota(ids.begin(), ids.end(), 0);
        std::shuffle(ids.begin(), ids.end(), rng);
        ids.resize(s);
        std::sort(ids.begin(), ids.end());
        SignedGraph sample = source.induced_subgraph(ids);

        SolveResult ex = exact_cc(sample, config);
        SolveResult heur = ils_cc(sample, config);

        InstanceReport r;
        r.instance_id = "sample-" + std::to_string(s);
        r.vertex_count = s;
        r.links_before = sample.edge_count();
        r.weight_before = sample.total_weight();
        r.exact_objective = ex.objective;
        r.exact_seconds = ex.elapsed_seconds;
        r.exact_proven = ex.proven_optimal;
        r.heuristic_objective = heur.objective;
        r.heuristic_seconds = heur.elapsed_seconds;
        if (sample.total_weight() > 0.0)
            r.objective_gap_percent =
                100.0 * (heur.objective - ex.objective) / sample.total_weight();
        r.nmi_heuristic_vs_exact = nmi(heur.partition, ex.partition);
        reports.push_back(std::move(r));
    }
    return reports;
}

namespace {

struct Field {
    const char* name;
    std::optional<std::string> value;
};

std::vector<Field> fields_of(const InstanceReport& r) {
    auto num = [](const std::optional<double>& v) -> std::optional<std::string> {
        if (!v)
            return std::nullopt;
        return format_double(*v);
    };
    auto count = [](const std::optional<long long>& v) -> std::optional<std::string> {
        if (!v)
            return std::nullopt;
        return std::to_string(*v);
    };
    auto ints = [](const std::optional<int>& v) -> std::optional<std::string> {
        if (!v)
            return std::nullopt;
        return std::to_string(*v);
    };
    std::vector<Field> f;
    f.push_back({"vertex_count", std::to_string(r.vertex_count)});
    f.push_back({"links_before", count(r.links_before)});
    f.push_back({"links_after", count(r.links_after)});
    f.push_back({"positive_links_removed", count(r.positive_links_removed)});
    f.push_back({"negative_links_removed", count(r.negative_links_removed)});
    f.push_back({"weight_before", num(r.weight_before)});
    f.push_back({"weight_after", num(r.weight_after)});
    f.push_back({"link_removal_fraction", num(r.link_removal_fraction)});
    f.push_back({"weight_removal_fraction", num(r.weight_removal_fraction)});
    f.push_back({"component_count_before", ints(r.component_count_before)});
    f.push_back({"component_count_after", ints(r.component_count_after)});
    f.push_back({"giant_share_before", num(r.giant_share_before)});
    f.push_back({"giant_share_after", num(r.giant_share_after)});
    f.push_back({"cluster_count_before", ints(r.cluster_count_before)});
    f.push_back({"cluster_count_after", ints(r.cluster_count_after)});
    f.push_back({"imbalance_percent_before", num(r.imbalance_percent_before)});
    f.push_back({"imbalance_percent_after", num(r.imbalance_percent_after)});
    f.push_back({"nmi_filtered_vs_unfiltered", num(r.nmi_filtered_vs_unfiltered)});
    f.push_back({"exact_objective", num(r.exact_objective)});
    f.push_back({"exact_seconds", num(r.exact_seconds)});
    f.push_back(
        {"exact_proven",
         r.exact_proven ? std::optional<std::string>(*r.exact_proven ? "true" : "false")
                        : std::nullopt});
    f.push_back({"heuristic_objective", num(r.heuristic_objective)});
    f.push_back({"heuristic_seconds", num(r.heuristic_seconds)});
    f.push_back({"objective_gap_percent", num(r.objective_gap_percent)});
    f.push_back({"nmi_heuristic_vs_exact", num(r.nmi_heuristic_vs_exact)});
    std::string rcc;
    for (const RccEntry& e : r.rcc) {
        if (!rcc.empty())
            rcc += ";";
        rcc += std::to_string(e.k_max) + ":" + format_double(e.objective);
    }
    f.push_back({"rcc_objectives", r.rcc.empty() ? std::optional<std::string>()
                                                 : std::optional<std::string>(rcc)});
    return f;
}

} // namespace

void write_reports_csv(std::ostream& out, const std::vector<InstanceReport>& reports) {
    out << "instance_id";
    if (!reports.empty())
        for (const Field& f : fields_of(reports.front()))
            out << "," << f.name;
    out << "\n";
    for (const InstanceReport& r : reports) {
        out << r.instance_id;
        for (const Field& f : fields_of(r))
            out << "," << f.value.value_or("");
        out << "\n";
    }
}

void write_reports_long_csv(std::ostream& out, const std::vector<InstanceReport>& reports) {
    out << "instance_id,metric,value\n";
    for (const InstanceReport& r : reports) {
        for (const Field& f : fields_of(r))
            if (f.value && std::string_view(f.name) != "rcc_objectives")
                out << r.instance_id << "," << f.name << "," << *f.value << "\n";
        for (const RccEntry& e : r.rcc)
            out << r.instance_id << ",rcc_objective_k" << e.k_max << ","
                << format_double(e.objective) << "\n";
    }
}

void write_reports_json(std::ostream& out, const std::vector<InstanceReport>& reports) {
    nlohmann::json doc = nlohmann::json::array();
    for (const InstanceReport& r : reports) {
        nlohmann::json j;
        j["instance_id"] = r.instance_id;
        j["vertex_count"] = r.vertex_count;
        auto put_num = [&](const char* key, const std::optional<double>& v) {
            if (v)
                j[key] = *v;
        };
        auto put_count = [&](const char* key, const std::optional<long long>& v) {
            if (v)
                j[key] = *v;
        };
        auto put_int = [&](const char* key, const std::optional<int>& v) {
            if (v)
                j[key] = *v;
        };
        put_count("links_before", r.links_before);
        put_count("links_after", r.links_after);
        put_count("positive_links_removed", r.positive_links_removed);
        put_count("negative_links_removed", r.negative_links_removed);
        put_num("weight_before", r.weight_before);
        put_num("weight_after", r.weight_after);
        put_num("link_removal_fraction", r.link_removal_fraction);
        put_num("weight_removal_fraction", r.weight_removal_fraction);
        put_int("component_count_before", r.component_count_before);
        put_int("component_count_after", r.component_count_after);
        put_num("giant_share_before", r.giant_share_before);
        put_num("giant_share_after", r.giant_share_after);
        put_int("cluster_count_before", r.cluster_count_before);
        put_int("cluster_count_after", r.cluster_count_after);
        put_num("imbalance_percent_before", r.imbalance_percent_before);
        put_num("imbalance_percent_after", r.imbalance_percent_after);
        put_num("nmi_filtered_vs_unfiltered", r.nmi_filtered_vs_unfiltered);
        put_num("exact_objective", r.exact_objective);
        put_num("exact_seconds", r.exact_seconds);
        if (r.exact_proven)
            j["exact_proven"] = *r.exact_proven;
        put_num("heuristic_objective", r.heuristic_objective);
        put_num("heuristic_seconds", r.heuristic_seconds);
        put_num("objective_gap_percent", r.objective_gap_percent);
        put_num("nmi_heuristic_vs_exact", r.nmi_heuristic_vs_exact);
        if (!r.rcc.empty()) {
            auto& arr = j["rcc"] = nlohmann::json::array();
            for (const RccEntry& e : r.rcc)
                arr.push_back({{"k_max", e.k_max},
                               {"objective", e.objective},
                               {"elapsed_seconds", e.elapsed_seconds}});
        }
        doc.push_back(std::move(j));
    }
    out << doc.dump(2) << "\n";
}

} // namespace balancekit
