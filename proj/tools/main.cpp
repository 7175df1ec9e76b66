// command-line front end: reproduce registered constructions, evaluate pair
// corpora, and inspect encodings, diagrams, and refinements of graph6 files
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pipe/encode.hpp"
#include "pipe/graph6.hpp"
#include "pipe/pairsuite.hpp"
#include "pipe/persist.hpp"
#include "pipe/registry.hpp"
#include "pipe/report.hpp"
#include "pipe/wl.hpp"

using namespace ppe;

namespace {

std::vector<Graph> load_graphs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_graph6_stream(in);
}

ReportFormat parse_format(const std::string& f) {
    if (f == "json") return ReportFormat::json;
    if (f == "tsv") return ReportFormat::tsv;
    throw CLI::ValidationError("--format must be json or tsv");
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"graph positional encodings, vertex-color persistence, and refinement checks"};
    app.require_subcommand(1);

    uint64_t seed = 0;
    std::string format = "tsv";

    // repro
    auto* repro = app.add_subcommand("repro", "evaluate registered constructions");
    std::string prop_id = "all";
    int scale = 1;
    repro->add_option("id", prop_id, "construction id or 'all'");
    repro->add_option("--n", scale, "scale parameter for parameterized constructions");
    repro->add_option("--seed", seed, "seed for all randomized evaluations");
    repro->add_option("--format", format, "json or tsv");

    // pairs
    auto* pairs = app.add_subcommand("pairs", "evaluate a graph6 pair corpus");
    std::string pairs_file;
    std::string methods_csv = "ph,ph_lpe,pipe";
    pairs->add_option("file", pairs_file, "graph6 file, consecutive lines form pairs")
        ->required();
    pairs->add_option("--methods", methods_csv, "comma list from ph, ph_lpe, pipe");
    pairs->add_option("--seed", seed, "seed for the embedding method");
    pairs->add_option("--format", format, "json or tsv");

    // pe
    auto* pe_cmd = app.add_subcommand("pe", "print positional encodings");
    std::string pe_file, pe_method = "rw", pe_policy = "raw", pe_mode = "walk";
    int pe_k = 4;
    bool pe_skip_trivial = false;
    pe_cmd->add_option("file", pe_file)->required();
    pe_cmd->add_option("--method", pe_method, "lap, rw, or distance");
    pe_cmd->add_option("--k", pe_k, "encoding width / walk length");
    pe_cmd->add_option("--policy", pe_policy, "raw or projection (lap only)");
    pe_cmd->add_option("--mode", pe_mode, "walk, pagerank, or hops (distance only)");
    pe_cmd->add_flag("--skip-trivial", pe_skip_trivial, "drop the first eigenpair (lap only)");

    // ph
    auto* ph_cmd = app.add_subcommand("ph", "print persistence diagrams");
    std::string ph_file, ph_filtration = "degree";
    int ph_k = 2;
    ph_cmd->add_option("file", ph_file)->required();
    ph_cmd->add_option("--filtration", ph_filtration, "degree, lap, or rw vertex colors");
    ph_cmd->add_option("--k", ph_k, "encoding width for lap/rw colors");

    // wl
    auto* wl_cmd = app.add_subcommand("wl", "print refinement histograms");
    std::string wl_file;
    int wl_k = 1;
    wl_cmd->add_option("file", wl_file)->required();
    wl_cmd->add_option("--k", wl_k, "1 for color refinement, 2 or 3 for tuple refinement");

    // g6
    auto* g6_cmd = app.add_subcommand("g6", "graph6 utilities");
    auto* g6_rt = g6_cmd->add_subcommand("roundtrip", "verify write(parse(line)) == line");
    std::string g6_file;
    g6_rt->add_option("file", g6_file)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*repro) {
            Report report;
            report.seed = seed;
            if (prop_id == "all") {
                report = reproduce_all(scale, seed);
            } else {
                bool scalable = false;
                for (const auto& c : registry())
                    if (c.id == prop_id) scalable = c.scalable;
                for (const auto& cr : reproduce(prop_id, scalable ? scale : 1, seed))
                    report.add(prop_id, cr);
            }
            std::cout << emit(report, parse_format(format));
            return report.all_pass() ? 0 : 1;
        }
        if (*pairs) {
            auto graphs = load_graphs(pairs_file);
            auto res = pair_suite(graphs, split_csv(methods_csv), seed);
            Report report = pair_suite_report(res, seed);
            std::cout << emit(report, parse_format(format));
            return report.all_pass() ? 0 : 1;
        }
        if (*pe_cmd) {
            auto graphs = load_graphs(pe_file);
            int index = 0;
            for (const Graph& g : graphs) {
                PEMatrix pe;
                if (pe_method == "lap") {
                    PEPolicy policy = pe_policy == "projection" ? PEPolicy::eigenspace_projection
                                                                : PEPolicy::raw;
                    pe = lap_pe(g, std::min(pe_k, g.n - (pe_skip_trivial ? 1 : 0)), policy,
                                pe_skip_trivial);
                } else if (pe_method == "rw") {
                    pe = rw_pe(g, pe_k);
                } else if (pe_method == "distance") {
                    std::vector<int> anchors(g.n);
                    for (int v = 0; v < g.n; ++v) anchors[v] = v;
                    DistanceMode mode = pe_mode == "pagerank" ? DistanceMode::pagerank
                                        : pe_mode == "hops"   ? DistanceMode::shortest_path
                                                              : DistanceMode::rw_vector;
                    std::vector<double> gammas;
                    if (mode == DistanceMode::pagerank)
                        for (int i = 0; i < pe_k; ++i) gammas.push_back(std::pow(0.5, i));
                    pe = distance_pe(g, anchors, pe_k, mode, gammas);
                } else {
                    throw CLI::ValidationError("--method must be lap, rw, or distance");
                }
                std::cout << "# graph " << index++ << " (" << g.n << " vertices)\n";
                for (const auto& row : pe.rows) {
                    for (size_t c = 0; c < row.size(); ++c)
                        std::cout << (c ? "\t" : "") << row[c];
                    std::cout << "\n";
                }
            }
            return 0;
        }
        if (*ph_cmd) {
            auto graphs = load_graphs(ph_file);
            int index = 0;
            for (const Graph& g : graphs) {
                ColorAssignment colors;
                if (ph_filtration == "degree")
                    colors = degree_colors(g);
                else if (ph_filtration == "lap")
                    colors = lap_pe(g, std::min(ph_k, g.n), PEPolicy::eigenspace_projection).rows;
                else if (ph_filtration == "rw")
                    colors = rw_pe(g, ph_k).rows;
                else
                    throw CLI::ValidationError("--filtration must be degree, lap, or rw");
                FiltrationSpec f = detail::union_table(colors, colors, true);
                auto values = filtration_values(colors, f);
                auto print = [&](const PersistenceDiagram& d, const char* name) {
                    std::cout << "# graph " << index << " dim " << name << ": "
                              << detail::diagram_to_string(d) << "\n";
                };
                print(diagram0(g, values), "0");
                print(diagram1(g, values), "1");
                ++index;
            }
            return 0;
        }
        if (*wl_cmd) {
            auto graphs = load_graphs(wl_file);
            for (size_t i = 0; i + 1 < graphs.size(); i += 2) {
                const Graph& a = graphs[i];
                const Graph& b = graphs[i + 1];
                bool dist = wl_k == 1 ? wl1_distinguish(a, b) : kfwl_distinguish(a, b, wl_k);
                std::cout << "pair " << i / 2 << ": "
                          << (dist ? "distinguished" : "not distinguished") << "\n";
            }
            if (graphs.size() % 2 == 1) {
                const Graph& g = graphs.back();
                size_t classes = wl_k == 1 ? wl1(g).second.counts.size()
                                           : tuple_histogram(kfwl(g, wl_k)).counts.size();
                std::cout << "graph " << graphs.size() - 1 << ": " << classes
                          << " stable color classes\n";
            }
            return 0;
        }
        if (*g6_rt) {
            std::ifstream in(g6_file);
            if (!in) throw std::runtime_error("cannot open " + g6_file);
            std::string line;
            int lineno = 0, checked = 0, failures = 0;
            while (std::getline(in, line)) {
                ++lineno;
                std::string s = detail::strip_g6_line(line);
                if (s.empty()) continue;
                ++checked;
                if (write_graph6(parse_graph6(s)) != s) {
                    ++failures;
                    std::cout << "line " << lineno << ": round trip mismatch\n";
                }
            }
            std::cout << checked << " lines checked, " << failures << " failures\n";
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
