#include "kanon/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "kanon/csv.hpp"
#include "kanon/instances.hpp"
#include "kanon/oracle.hpp"
#include "kanon/reductions.hpp"
#include "kanon/solver.hpp"
#include "kanon/table.hpp"

namespace kanon::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kBudgetUnachievable = 2;
constexpr int kSelfTestFailure = 3;

int env_threads(std::ostream& err) {
    const char* value = std::getenv("KANON_THREADS");
    if (!value || !*value) return 1;
    try {
        int threads = std::stoi(value);
        if (threads < 1) throw std::invalid_argument("below 1");
        return threads;
    } catch (const std::exception&) {
        err << "warning: ignoring invalid KANON_THREADS value\n";
        return 1;
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input file: " + path);
    return in;
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty() || path == "-") {
        fallback << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

json graph_json(const InputGraph& g) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges) edges.push_back({u, v});
    return json{{"vertices", g.vertex_count}, {"edges", edges}};
}

std::vector<int> read_vertex_file(const std::string& path) {
    std::ifstream in = open_input(path);
    std::vector<int> vertices;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        int v;
        while (ls >> v) vertices.push_back(v);
    }
    return vertices;
}

struct AnonymizeConfig {
    std::string input;
    long long k = 0;
    std::optional<long long> budget;
    std::string algorithm = "auto";
    bool header = false;
    std::string out_path;
    std::string report_path;
};

// Brute force wins on tiny tables with wide alphabets, where the candidate
// space is hopeless but partition enumeration is not.
std::string pick_algorithm(const AnonymizeConfig& cfg, const Table& t) {
    if (cfg.algorithm != "auto") return cfg.algorithm;
    const bool wide = t.candidate_space_size(1ull << 17) > (1ull << 16);
    return (t.row_count() <= 10 && wide) ? "brute" : "fpt";
}

int run_anonymize(const AnonymizeConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    std::ifstream in = open_input(cfg.input);
    CsvData csv = read_csv(in, cfg.header);
    Table table = Table::from_strings(csv.records);

    if (cfg.k > static_cast<long long>(table.row_count())) {
        err << "error: k = " << cfg.k << " exceeds the " << table.row_count()
            << " rows; no feasible clustering exists\n";
        return kError;
    }

    const std::string algorithm = pick_algorithm(cfg, table);
    json stats;
    Clustering clustering;
    if (algorithm == "brute") {
        OracleResult result = brute_force_min(table, cfg.k);
        if (cfg.budget && result.cost > *cfg.budget) {
            err << "no solution suppresses at most " << *cfg.budget
                << " entries (optimum is " << result.cost << ")\n";
            return kBudgetUnachievable;
        }
        clustering = std::move(result.clustering);
        stats["partitions_examined"] = result.partitions_examined;
    } else {
        SolverOptions opts;
        opts.threads = env_threads(err);
        SolveReport report;
        if (cfg.budget) {
            auto found = solve_budget(table, cfg.k, *cfg.budget, opts);
            if (!found) {
                err << "no solution suppresses at most " << *cfg.budget << " entries\n";
                return kBudgetUnachievable;
            }
            report = std::move(*found);
        } else {
            report = solve_min(table, cfg.k, opts);
        }
        clustering = std::move(report.clustering);
        stats["candidate_sets_examined"] = report.stats.sets_examined;
        stats["candidate_sets_pruned"] = report.stats.sets_pruned;
        stats["matching_weight"] = report.matching_weight;
        stats["identity_cost"] = report.identity_cost;
        stats["total_row_weight"] = report.total_row_weight;
    }

    std::ostringstream suppressed;
    write_suppressed_csv(suppressed, table, clustering, csv.header);
    write_text(cfg.out_path, suppressed.str(), out);

    if (!cfg.report_path.empty()) {
        json report;
        report["schema_version"] = 1;
        report["command"] = "anonymize";
        report["n"] = table.row_count();
        report["m"] = table.column_count();
        json alphabet_sizes = json::array();
        for (std::size_t j = 0; j < table.column_count(); ++j)
            alphabet_sizes.push_back(table.alphabet_size(j));
        report["column_alphabet_sizes"] = alphabet_sizes;
        report["k"] = cfg.k;
        report["budget"] = cfg.budget ? json(*cfg.budget) : json(nullptr);
        report["algorithm"] = algorithm;
        report["cost"] = clustering.cost;
        json sizes = json::array();
        for (const auto& block : clustering.blocks) sizes.push_back(block.size());
        report["block_sizes"] = sizes;
        json cells = json::array();
        std::vector<std::size_t> block_of(table.row_count());
        for (std::size_t b = 0; b < clustering.blocks.size(); ++b)
            for (std::size_t idx : clustering.blocks[b]) block_of[idx] = b;
        for (std::size_t i = 0; i < table.row_count(); ++i) {
            const ResolutionVector& v = clustering.resolutions[block_of[i]];
            for (std::size_t j = 0; j < v.entries.size(); ++j)
                if (v.entries[j] == kStar) cells.push_back({i, j});
        }
        report["suppressed_cells"] = cells;
        report["stats"] = stats;
        report["elapsed_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                                   std::chrono::steady_clock::now() - start)
                                   .count();
        write_text(cfg.report_path, report.dump(2) + "\n", out);
    }
    err << "cost " << clustering.cost << " (" << algorithm << "), " << clustering.blocks.size()
        << " blocks, n=" << table.row_count() << " m=" << table.column_count() << "\n";
    return kOk;
}

struct GadgetConfig {
    std::string input;
    long long h = 2;
    std::string out_path;
    std::string report_path;
    std::string certify_path;
};

int run_gadget_clique(const GadgetConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ifstream in = open_input(cfg.input);
    InputGraph graph = parse_edge_list(in);
    CliqueGadget gadget = build_clique_gadget(graph, cfg.h);
    if (!gadget.clique_possible)
        err << "warning: the graph has fewer than C(h,2) edges, so no h-clique can exist\n";

    if (!cfg.certify_path.empty()) {
        std::vector<int> clique = read_vertex_file(cfg.certify_path);
        Clustering c = clique_to_clustering(gadget, clique);
        std::vector<int> recovered = clustering_to_clique(gadget, c);
        std::vector<int> expected = clique;
        std::sort(expected.begin(), expected.end());
        if (recovered != expected) throw CertificateError("round trip changed the clique");
        out << "certified: clustering cost " << c.cost << " = 6h^3, clique recovered\n";
        return kOk;
    }

    std::ostringstream csv;
    write_table_csv(csv, gadget.table);
    write_text(cfg.out_path, csv.str(), out);

    if (!cfg.report_path.empty()) {
        json meta;
        meta["schema_version"] = 1;
        meta["command"] = "gadget";
        meta["mode"] = "clique";
        meta["h"] = gadget.h;
        meta["k"] = gadget.k;
        meta["budget"] = gadget.budget;
        meta["rows"] = gadget.table.row_count();
        meta["columns"] = gadget.table.column_count();
        meta["graph"] = graph_json(graph);
        meta["edge_row_begin"] = gadget.edge_row_begin;
        meta["zero_rows"] = {{"begin", gadget.zero_row_begin}, {"count", gadget.zero_row_count}};
        meta["clique_possible"] = gadget.clique_possible;
        write_text(cfg.report_path, meta.dump(2) + "\n", out);
    }
    return kOk;
}

int run_gadget_vcc(const GadgetConfig& cfg, std::ostream& out, std::ostream& err) {
    (void)err;
    std::ifstream in = open_input(cfg.input);
    InputGraph graph = parse_edge_list(in);
    CoverGadget gadget = build_cover_gadget(graph);

    if (!cfg.certify_path.empty()) {
        std::vector<int> cover = read_vertex_file(cfg.certify_path);
        Clustering c = cover_to_clustering(gadget, cover);
        std::vector<int> recovered = clustering_to_cover(gadget, c);
        std::vector<int> expected = cover;
        std::sort(expected.begin(), expected.end());
        if (recovered != expected) throw CertificateError("round trip changed the cover");
        out << "certified: clustering cost " << c.cost << " = 6|V|+3|C|+11|E|+9, cover recovered\n";
        return kOk;
    }

    std::ostringstream csv;
    write_table_csv(csv, gadget.table);
    write_text(cfg.out_path, csv.str(), out);

    if (!cfg.report_path.empty()) {
        json meta;
        meta["schema_version"] = 1;
        meta["command"] = "gadget";
        meta["mode"] = "vcc";
        meta["k"] = gadget.k;
        meta["rows"] = gadget.table.row_count();
        meta["columns"] = gadget.table.column_count();
        meta["graph"] = graph_json(graph);
        meta["cost_for_cover"] = {{"base", gadget.cover_cost(0)}, {"per_cover_vertex", 3}};
        json edge_rows = json::array();
        for (std::size_t e = 0; e < graph.edges.size(); ++e)
            edge_rows.push_back(gadget.edge_row_begin(static_cast<int>(e)));
        meta["edge_row_begin"] = edge_rows;
        meta["extra_row_begin"] = gadget.extra_row_begin();
        json docking = json::array();
        for (const auto& d : gadget.docking) docking.push_back({d[0], d[1], d[2]});
        meta["docking_edges"] = docking;
        write_text(cfg.report_path, meta.dump(2) + "\n", out);
    }
    return kOk;
}

struct SelfTestConfig {
    std::uint64_t seed = 12345;
    long long trials = 100;
};

int run_selftest(const SelfTestConfig& cfg, std::ostream& out, std::ostream& err) {
    const bool inject_fault = [] {
        const char* v = std::getenv("KANON_SELFTEST_FAULT");
        return v && *v;
    }();

    auto report_failure = [&](const Table& t, long long k, long long fpt_cost,
                              long long oracle_cost) {
        err << "selftest mismatch: fpt cost " << fpt_cost << ", oracle cost " << oracle_cost
            << ", k=" << k << ", seed=" << cfg.seed << "\n";
        std::ostringstream csv;
        write_table_csv(csv, t);
        err << "instance:\n" << csv.str();
    };

    Table example = worked_example_table();
    SolveReport report = solve_min(example, 2);
    long long example_cost = report.cost + (inject_fault ? 1 : 0);
    OracleResult oracle = brute_force_min(example, 2);
    if (example_cost != 4 || oracle.cost != 4 || report.total_row_weight != 18 ||
        report.matching_weight != 131) {
        report_failure(example, 2, example_cost, oracle.cost);
        return kSelfTestFailure;
    }

    std::mt19937_64 rng(cfg.seed);
    for (long long trial = 0; trial < cfg.trials; ++trial) {
        Table t = random_table(rng);
        const long long k = draw(rng, 2, 3);
        if (k > static_cast<long long>(t.row_count())) continue;
        long long fpt_cost = solve_min(t, k).cost + (inject_fault ? 1 : 0);
        long long oracle_cost = brute_force_min(t, k).cost;
        if (fpt_cost != oracle_cost) {
            report_failure(t, k, fpt_cost, oracle_cost);
            return kSelfTestFailure;
        }
    }
    out << "selftest: worked example and " << cfg.trials << " randomized trials passed\n";
    return kOk;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact k-anonymity suppression workbench"};
    app.name("kanon");
    app.require_subcommand(1);

    AnonymizeConfig anon;
    CLI::App* anonymize = app.add_subcommand("anonymize", "suppress entries to reach k-anonymity");
    anonymize->add_option("input", anon.input, "input CSV file")->required();
    anonymize->add_option("--k", anon.k, "minimum cluster size")->required()
        ->check(CLI::PositiveNumber);
    long long budget_value = -1;
    CLI::Option* budget_opt =
        anonymize->add_option("--budget", budget_value, "maximum suppressed entries")
            ->check(CLI::NonNegativeNumber);
    anonymize->add_option("--algorithm", anon.algorithm, "fpt, brute, or auto")
        ->check(CLI::IsMember({"fpt", "brute", "auto"}))
        ->capture_default_str();
    anonymize->add_flag("--header", anon.header, "first CSV line is a header");
    anonymize->add_option("--out", anon.out_path, "suppressed CSV path (default: stdout)");
    anonymize->add_option("--report", anon.report_path, "JSON run report path");

    GadgetConfig gadget;
    CLI::App* gadget_cmd = app.add_subcommand("gadget", "build or certify hardness instances");
    gadget_cmd->require_subcommand(1);
    CLI::App* clique = gadget_cmd->add_subcommand("clique", "clique-search instance");
    clique->set_help_flag("--help", "print help");  // frees -h for the size parameter
    clique->add_option("input", gadget.input, "edge list file")->required();
    clique->add_option("--h", gadget.h, "clique size parameter")->required()
        ->check(CLI::Range(2ll, 1000000ll));
    clique->add_option("--out", gadget.out_path, "gadget CSV path (default: stdout)");
    clique->add_option("--report", gadget.report_path, "metadata JSON path");
    clique->add_option("--certify", gadget.certify_path, "clique vertex file to certify");
    CLI::App* vcc = gadget_cmd->add_subcommand("vcc", "vertex-cover instance (cubic graph)");
    vcc->add_option("input", gadget.input, "edge list file")->required();
    vcc->add_option("--out", gadget.out_path, "gadget CSV path (default: stdout)");
    vcc->add_option("--report", gadget.report_path, "metadata JSON path");
    vcc->add_option("--certify", gadget.certify_path, "cover vertex file to certify");

    SelfTestConfig selftest;
    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the built-in consistency checks");
    selftest_cmd->add_option("--seed", selftest.seed, "randomized trial seed")
        ->capture_default_str();
    selftest_cmd->add_option("--trials", selftest.trials, "number of randomized trials")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kOk;
        }
        err << "error: " << e.what() << "\n";
        return kError;
    }

    try {
        if (*anonymize) {
            if (*budget_opt) anon.budget = budget_value;
            return run_anonymize(anon, out, err);
        }
        if (*clique) return run_gadget_clique(gadget, out, err);
        if (*vcc) return run_gadget_vcc(gadget, out, err);
        return run_selftest(selftest, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kError;
    }
}

}  // namespace kanon::cli
