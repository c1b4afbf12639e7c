#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "balancekit/cluster_graph.hpp"
#include "balancekit/filtering.hpp"
#include "balancekit/graph_build.hpp"
#include "balancekit/graph_io.hpp"
#include "balancekit/imbalance.hpp"
#include "balancekit/nmi.hpp"
#include "balancekit/numio.hpp"
#include "balancekit/reports.hpp"
#include "balancekit/similarity.hpp"
#include "balancekit/solver.hpp"
#include "balancekit/votes.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hex8(std::uint64_t h) {
    static const char* digits = "0123456789abcdef";
    std::string out(8, '0');
    for (int i = 7; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string slugify(const std::string& s) {
    std::string out;
    bool pending_dash = false;
    for (unsigned char c : s) {
        if (std::isalnum(c)) {
            if (pending_dash && !out.empty())
                out.push_back('-');
            pending_dash = false;
            out.push_back(static_cast<char>(std::tolower(c)));
        } else {
            pending_dash = true;
        }
    }
    return out;
}

std::vector<std::string> canonical_labels(std::vector<std::string> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::string describe_filter(const balancekit::SelectionFilter& f, bool filtering_on) {
    std::ostringstream os;
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (const auto& x : v) {
            if (!s.empty())
                s += "+";
            s += x;
        }
        return s;
    };
    os << "domains=" << join(f.domains) << ";groups=" << join(f.groups)
       << ";countries=" << join(f.countries) << ";from="
       << (f.date_range ? f.date_range->first : "") << ";to="
       << (f.date_range ? f.date_range->second : "") << ";filtering="
       << (filtering_on ? "on" : "off");
    return os.str();
}

std::string instance_id(const balancekit::SelectionFilter& f, bool filtering_on) {
    std::string repr = describe_filter(f, filtering_on);
    std::string slug;
    for (const auto& part : {f.domains, f.groups, f.countries})
        for (const auto& label : part) {
            std::string p = slugify(label);
            if (!p.empty())
                slug += (slug.empty() ? "" : "-") + p;
        }
    if (f.date_range)
        slug += (slug.empty() ? "" : "-") + f.date_range->first + "-" + f.date_range->second;
    if (slug.empty())
        slug = "all";
    if (!filtering_on)
        slug += "-raw";
    return slug + "-" + hex8(fnv1a64(repr));
}

// Parliamentary years run July 1 to June 30; "2012-13" covers
// 2012-07-01..2013-06-30.
std::pair<std::string, std::string> parliamentary_year(const std::string& y) {
    bool ok = y.size() == 7 && y[4] == '-';
    int start = 0, suffix = 0;
    if (ok) {
        try {
            start = balancekit::parse_int(y.substr(0, 4));
            suffix = balancekit::parse_int(y.substr(5, 2));
        } catch (const std::exception&) {
            ok = false;
        }
    }
    if (ok && y[5] == '0')
        ok = suffix < 10; // keep "2009-10" valid but reject "2012-3"
    if (ok)
        ok = (start + 1) % 100 == suffix;
    if (!ok)
        throw std::invalid_argument("bad year '" + y + "', expected e.g. 2012-13");
    return {std::to_string(start) + "-07-01", std::to_string(start + 1) + "-06-30"};
}

std::uint64_t default_seed() {
    const char* env = std::getenv("BALANCEKIT_SEED");
    if (!env || !*env)
        return 42;
    try {
        long long v = balancekit::parse_int(env);
        if (v < 0)
            throw std::invalid_argument("negative");
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw std::runtime_error(std::string("BALANCEKIT_SEED is not a seed: '") + env + "'");
    }
}

const char* kind_name(balancekit::ObjectiveKind k) {
    return k == balancekit::ObjectiveKind::CC ? "cc" : "rcc";
}

json result_envelope(const balancekit::SolveResult& r, const std::string& method,
                     const std::string& input, std::uint64_t seed, std::optional<int> k_max,
                     const std::string& partition_file) {
    json j;
    j["method"] = method;
    j["input"] = input;
    j["seed"] = seed;
    j["objective"] = r.objective;
    j["objective_kind"] = kind_name(r.objective_kind);
    j["cluster_count"] = r.partition.cluster_count();
    j["iterations_used"] = r.iterations_used;
    j["elapsed_seconds"] = r.elapsed_seconds;
    j["proven_optimal"] = r.proven_optimal;
    if (k_max)
        j["k_max"] = *k_max;
    j["partition_file"] = partition_file;
    return j;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

std::ostream& open_out(std::ofstream& file, const std::string& target) {
    if (target == "-")
        return std::cout;
    file.open(target);
    if (!file)
        throw std::runtime_error("cannot write '" + target + "'");
    return file;
}

struct SolverFlags {
    std::uint64_t seed;
    int max_iterations = 1000;
    int perturbation_strength = 3;
    int restarts = 4;
    double time_budget = 3600.0;

    balancekit::SolverConfig config() const {
        balancekit::SolverConfig c;
        c.max_iterations = max_iterations;
        c.perturbation_strength = perturbation_strength;
        c.restarts = restarts;
        c.time_budget = time_budget;
        c.rng_seed = seed;
        return c;
    }
};

void add_solver_flags(CLI::App* cmd, SolverFlags& f) {
    cmd->add_option("--seed", f.seed, "RNG seed (default: $BALANCEKIT_SEED or 42)");
    cmd->add_option("--max-iterations", f.max_iterations, "kicks per restart");
    cmd->add_option("--perturbation-strength", f.perturbation_strength,
                    "vertices relocated per kick");
    cmd->add_option("--restarts", f.restarts, "independent search restarts");
    cmd->add_option("--time-budget", f.time_budget, "wall-clock budget in seconds");
}

int run(int argc, char** argv) {
    CLI::App app{"signed-graph extraction, partitioning and evaluation"};
    app.require_subcommand(1);
    const std::uint64_t env_seed = default_seed();

    // extract
    auto* extract = app.add_subcommand("extract", "vote CSV to filtered signed graph");
    std::string votes_path, year, from_date, to_date, prefix, out_dir = ".";
    std::vector<std::string> domains, groups, countries;
    bool no_filtering = false;
    extract->add_option("--votes", votes_path, "vote CSV file")
        ->required()
        ->check(CLI::ExistingFile);
    extract->add_option("--domain", domains, "policy domain (repeatable)");
    extract->add_option("--group", groups, "political group (repeatable)");
    extract->add_option("--country", countries, "country (repeatable)");
    auto* year_opt =
        extract->add_option("--year", year, "parliamentary year, e.g. 2012-13 (Jul 1 - Jun 30)");
    auto* from_opt = extract->add_option("--from", from_date, "first date, inclusive");
    auto* to_opt = extract->add_option("--to", to_date, "last date, inclusive");
    year_opt->excludes(from_opt)->excludes(to_opt);
    extract->add_flag("--no-filtering", no_filtering, "keep weak similarities");
    extract->add_option("--out-dir", out_dir, "output directory");
    extract->add_option("--prefix", prefix, "output base name (default: content-derived id)");

    // partition
    auto* partition = app.add_subcommand("partition", "solve a graph file");
    std::string graph_path, method, part_prefix, part_out_dir = ".";
    int k_max_flag = 0, exact_max_n = 25;
    SolverFlags part_flags{env_seed};
    partition->add_option("--graph", graph_path, "signed edge-list file")
        ->required()
        ->check(CLI::ExistingFile);
    partition->add_option("--method", method, "exact-cc, ils-cc, ils-rcc or k-sweep")
        ->required()
        ->check(CLI::IsMember({"exact-cc", "ils-cc", "ils-rcc", "k-sweep"}));
    partition->add_option("--k-max", k_max_flag, "cluster cap (ils-rcc only)");
    partition->add_option("--exact-max-n", exact_max_n,
                          "refuse exact-cc beyond this many vertices");
    add_solver_flags(partition, part_flags);
    partition->add_option("--out-dir", part_out_dir, "output directory");
    partition->add_option("--prefix", part_prefix, "output base name");

    // report nmi / report filtering
    auto* report = app.add_subcommand("report", "evaluation reports");
    report->require_subcommand(1);
    auto* rnmi = report->add_subcommand("nmi", "compare two membership files");
    std::string nmi_a, nmi_b;
    rnmi->add_option("--a", nmi_a, "first membership file")->required()->check(CLI::ExistingFile);
    rnmi->add_option("--b", nmi_b, "second membership file")->required()->check(CLI::ExistingFile);
    auto* rfilt = report->add_subcommand("filtering", "filtering effect on one instance");
    std::string unf_graph, f_graph, unf_part, f_part, filt_id = "instance", filt_format = "csv",
                filt_out = "-";
    rfilt->add_option("--unfiltered", unf_graph, "unfiltered graph file")
        ->required()
        ->check(CLI::ExistingFile);
    rfilt->add_option("--filtered", f_graph, "filtered graph file")
        ->required()
        ->check(CLI::ExistingFile);
    rfilt->add_option("--unfiltered-partition", unf_part, "membership on the unfiltered graph")
        ->required()
        ->check(CLI::ExistingFile);
    rfilt->add_option("--filtered-partition", f_part, "membership on the filtered graph")
        ->required()
        ->check(CLI::ExistingFile);
    rfilt->add_option("--instance-id", filt_id, "row label");
    rfilt->add_option("--format", filt_format, "csv, json or long")
        ->check(CLI::IsMember({"csv", "json", "long"}));
    rfilt->add_option("--out", filt_out, "output file, - for stdout");

    // export
    auto* exp = app.add_subcommand("export", "cluster-level graph export");
    std::string exp_graph, exp_part, exp_format = "dot", exp_out = "-";
    exp->add_option("--graph", exp_graph, "signed edge-list file")
        ->required()
        ->check(CLI::ExistingFile);
    exp->add_option("--partition", exp_part, "membership file")
        ->required()
        ->check(CLI::ExistingFile);
    exp->add_option("--format", exp_format, "dot or json")
        ->check(CLI::IsMember({"dot", "json"}));
    exp->add_option("--out", exp_out, "output file, - for stdout");

    // benchmark
    auto* bench = app.add_subcommand("benchmark", "solver runtime and gap across sample sizes");
    std::string bench_graph, bench_format = "csv", bench_out = "-";
    std::vector<int> bench_sizes;
    SolverFlags bench_flags{env_seed};
    bench->add_option("--graph", bench_graph, "source graph file")
        ->required()
        ->check(CLI::ExistingFile);
    bench->add_option("--sizes", bench_sizes, "sample sizes, e.g. 10,20,30")
        ->required()
        ->delimiter(',');
    add_solver_flags(bench, bench_flags);
    bench->add_option("--format", bench_format, "csv, json or long")
        ->check(CLI::IsMember({"csv", "json", "long"}));
    bench->add_option("--out", bench_out, "output file, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e);
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }

    if (*extract) {
        balancekit::SelectionFilter filter;
        filter.domains = canonical_labels(domains);
        filter.groups = canonical_labels(groups);
        filter.countries = canonical_labels(countries);
        if (!year.empty())
            filter.date_range = parliamentary_year(year);
        else if (!from_date.empty() || !to_date.empty()) {
            if (from_date.empty() || to_date.empty())
                throw std::runtime_error("--from and --to must be given together");
            filter.date_range = {from_date, to_date};
        }

        balancekit::VoteTable table = balancekit::load_vote_csv_file(votes_path);
        balancekit::VoteTable selected = balancekit::select(table, filter);
        if (selected.mep_count() == 0 || selected.text_count() == 0)
            throw std::runtime_error("empty selection for " +
                                     describe_filter(filter, !no_filtering));

        balancekit::SimilarityMatrix raw = balancekit::similarity_matrix(selected);
        balancekit::FilterThresholds thresholds;
        balancekit::SimilarityMatrix final_matrix = raw;
        if (!no_filtering) {
            thresholds = balancekit::compute_thresholds(raw);
            final_matrix = balancekit::apply_filter(raw, thresholds);
        }
        balancekit::SignedGraph graph = balancekit::build_graph(final_matrix);

        const std::string id = prefix.empty() ? instance_id(filter, !no_filtering) : prefix;
        fs::path dir(out_dir);
        fs::create_directories(dir);
        fs::path graph_file = dir / (id + ".graph");
        fs::path sim_file = dir / (id + "-similarity.csv");
        fs::path meta_file = dir / (id + "-meta.json");

        balancekit::write_graph_file(graph_file.string(), graph);
        balancekit::write_similarity_csv_file(sim_file.string(), raw);

        json meta;
        meta["input"] = votes_path;
        meta["instance_id"] = id;
        meta["selection"] = {{"domains", filter.domains},
                             {"groups", filter.groups},
                             {"countries", filter.countries}};
        if (filter.date_range) {
            meta["selection"]["from"] = filter.date_range->first;
            meta["selection"]["to"] = filter.date_range->second;
        }
        meta["filtering"] = !no_filtering;
        if (!no_filtering) {
            meta["theta_minus"] = thresholds.theta_minus;
            meta["theta_plus"] = thresholds.theta_plus;
        }
        meta["meps"] = selected.mep_count();
        meta["texts"] = selected.text_count();
        meta["links"] = graph.edge_count();
        meta["positive_links"] = graph.positive_edge_count();
        meta["negative_links"] = graph.negative_edge_count();
        meta["total_weight"] = graph.total_weight();
        write_text_file(meta_file, meta.dump(2) + "\n");

        std::cout << "graph\t" << graph_file.string() << "\n"
                  << "similarity\t" << sim_file.string() << "\n"
                  << "meta\t" << meta_file.string() << "\n";
        return 0;
    }

    if (*partition) {
        balancekit::SignedGraph graph = balancekit::read_graph_file(graph_path);
        balancekit::SolverConfig config = part_flags.config();
        const std::string base =
            part_prefix.empty() ? fs::path(graph_path).stem().string() + "-" + method
                                : part_prefix;
        fs::path dir(part_out_dir);
        fs::create_directories(dir);

        auto emit = [&](const balancekit::SolveResult& r, const std::string& name,
                        std::optional<int> k_max) {
            fs::path part_file = dir / (name + ".membership");
            balancekit::write_partition_file(part_file.string(), r.partition);
            std::cout << "partition\t" << part_file.string() << "\n";
            return result_envelope(r, method, graph_path, part_flags.seed, k_max,
                                   part_file.string());
        };

        json doc;
        if (method == "exact-cc") {
            if (graph.vertex_count() > exact_max_n)
                throw std::runtime_error(
                    "graph has " + std::to_string(graph.vertex_count()) +
                    " vertices; exact-cc is capped at " + std::to_string(exact_max_n) +
                    " (raise --exact-max-n to override)");
            doc = emit(balancekit::exact_cc(graph, config), base, std::nullopt);
        } else if (method == "ils-cc") {
            doc = emit(balancekit::ils_cc(graph, config), base, std::nullopt);
        } else if (method == "ils-rcc") {
            if (k_max_flag <= 0)
                throw std::runtime_error("ils-rcc needs --k-max");
            config.k_max = k_max_flag;
            doc = emit(balancekit::ils_rcc(graph, config), base, k_max_flag);
        } else { // k-sweep
            std::vector<balancekit::SolveResult> results = balancekit::k_sweep(graph, config);
            static const char* suffix[] = {"cc", "rcc-k", "rcc-k1", "rcc-k2"};
            doc = json::array();
            for (std::size_t i = 0; i < results.size(); ++i) {
                std::optional<int> k;
                if (i > 0)
                    k = results[i].partition.size() > 0
                            ? std::optional<int>(std::min(
                                  results[0].partition.cluster_count() + static_cast<int>(i) - 1,
                                  graph.vertex_count()))
                            : std::nullopt;
                doc.push_back(emit(results[i], base + "-" + suffix[i], k));
            }
        }
        fs::path json_file = dir / (base + ".json");
        write_text_file(json_file, doc.dump(2) + "\n");
        std::cout << "result\t" << json_file.string() << "\n";
        return 0;
    }

    if (*rnmi) {
        balancekit::Partition a = balancekit::read_partition_file(nmi_a);
        balancekit::Partition b = balancekit::read_partition_file(nmi_b);
        std::cout << "nmi\t" << balancekit::format_double(balancekit::nmi(a, b)) << "\n";
        return 0;
    }

    if (*rfilt) {
        balancekit::InstanceReport r = balancekit::filtering_report(
            balancekit::read_graph_file(unf_graph), balancekit::read_graph_file(f_graph),
            balancekit::read_partition_file(unf_part), balancekit::read_partition_file(f_part),
            filt_id);
        std::ofstream file;
        std::ostream& out = open_out(file, filt_out);
        std::vector<balancekit::InstanceReport> rows{r};
        if (filt_format == "json")
            balancekit::write_reports_json(out, rows);
        else if (filt_format == "long")
            balancekit::write_reports_long_csv(out, rows);
        else
            balancekit::write_reports_csv(out, rows);
        return 0;
    }

    if (*exp) {
        balancekit::SignedGraph graph = balancekit::read_graph_file(exp_graph);
        balancekit::Partition part = balancekit::read_partition_file(exp_part);
        balancekit::ClusterGraph cg = balancekit::build_cluster_graph(graph, part);
        std::ofstream file;
        std::ostream& out = open_out(file, exp_out);
        out << (exp_format == "json" ? balancekit::cluster_graph_to_json(cg, graph)
                                     : balancekit::cluster_graph_to_dot(cg, graph));
        return 0;
    }

    if (*bench) {
        balancekit::SignedGraph source = balancekit::read_graph_file(bench_graph);
        std::vector<balancekit::InstanceReport> rows =
            balancekit::benchmark(bench_sizes, source, bench_flags.config());
        std::ofstream file;
        std::ostream& out = open_out(file, bench_out);
        if (bench_format == "json")
            balancekit::write_reports_json(out, rows);
        else if (bench_format == "long")
            balancekit::write_reports_long_csv(out, rows);
        else
            balancekit::write_reports_csv(out, rows);
        return 0;
    }

    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
