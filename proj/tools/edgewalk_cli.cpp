// Command line front end: generate, walk, scenario, accept, fit.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "edgewalk/harness.hpp"
#include "edgewalk/multigraph.hpp"
#include "edgewalk/spectral.hpp"
#include "edgewalk/verify/acceptance.hpp"
#include "edgewalk/walk.hpp"

namespace fs = std::filesystem;
using namespace edgewalk;

namespace {

// Opens `path` for writing, or returns std::cout for "" and "-".
std::ostream& open_out(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    if (const auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    file.open(path);
    if (!file) throw std::runtime_error("cannot write '" + path + "'");
    return file;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

StopReason parse_reason(const std::string& s) {
    if (s == "reached") return StopReason::reached;
    if (s == "trapped") return StopReason::trapped;
    return StopReason::budget;
}

// Reads the cover-time columns of a scenario CSV.
std::vector<ScenarioRow> read_rows_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty results file");
    const auto header = split_csv_line(line);
    auto col = [&](const std::string& name) {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return i;
        throw std::runtime_error("results file has no column '" + name + "'");
    };
    const auto cn = col("n"), cv = col("C_V"), ce = col("C_E"), cr = col("stop_reason");
    std::vector<ScenarioRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split_csv_line(line);
        ScenarioRow row;
        row.n = static_cast<std::uint32_t>(std::stoul(cells.at(cn)));
        if (!cells.at(cv).empty()) row.vertex_cover = std::stoull(cells[cv]);
        if (!cells.at(ce).empty()) row.edge_cover = std::stoull(cells[ce]);
        row.stop_reason = parse_reason(cells.at(cr));
        rows.push_back(std::move(row));
    }
    return rows;
}

void print_fit(std::ostream& out, const std::vector<ScenarioRow>& rows, WalkMode mode, std::uint32_t r,
               CoverTarget target) {
    const double c = theoretical_constant(mode, r, target);
    const auto est = estimate_constant(rows, target, c);
    out << (target == CoverTarget::vertex ? "vertex" : "edge") << " constant " << est.constant << " +- " << est.se
        << " (target " << c << ")\n";
    for (const auto& p : est.per_n)
        out << "  n=" << p.n << " mean " << p.mean << " +- " << p.se << " runs " << p.count << " mean/(n ln n) "
            << p.ratio << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"edge-biased random walks on random regular graphs"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "write configuration-model graphs as edge lists");
    std::uint32_t gen_n = 100, gen_r = 3, gen_count = 1;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    bool gen_stats = false;
    gen->add_option("-n,--n", gen_n, "vertices")->required();
    gen->add_option("-r,--r", gen_r, "degree")->required();
    gen->add_option("--count", gen_count, "number of graphs");
    gen->add_option("--seed", gen_seed, "master seed");
    gen->add_option("--out", gen_out, "output file, or directory when --count > 1");
    gen->add_flag("--stats", gen_stats, "print simplicity, short cycles and lambda2 instead of edges");

    // walk
    auto* walk = app.add_subcommand("walk", "run a single walk and print its milestones");
    std::uint32_t walk_n = 1000, walk_r = 3;
    std::string walk_mode = "biased", walk_stop = "cover", walk_out, walk_graph;
    std::uint64_t walk_seed = 1;
    bool walk_exposure = false, walk_traj = false;
    walk->add_option("-n,--n", walk_n, "vertices");
    walk->add_option("-r,--r", walk_r, "degree");
    walk->add_option("--mode", walk_mode, "biased, simple or nonbacktracking");
    walk->add_option("--stop", walk_stop, "cover, edges:T or vertices:S");
    walk->add_option("--seed", walk_seed, "seed");
    walk->add_option("--graph", walk_graph, "edge-list file to walk on instead of a fresh graph");
    walk->add_flag("--exposure", walk_exposure, "expose the pairing on the fly");
    walk->add_flag("--trajectory", walk_traj, "include the point trajectory");
    walk->add_option("--out", walk_out, "output file (default stdout)");

    // scenario
    auto* scen = app.add_subcommand("scenario", "run a batch of walks from a config file");
    std::string scen_config, scen_out, scen_format;
    std::uint64_t scen_seed = 0;
    unsigned scen_workers = 0;
    scen->add_option("--config", scen_config, "config file")->required()->check(CLI::ExistingFile);
    scen->add_option("--seed", scen_seed, "override master seed");
    scen->add_option("--workers", scen_workers, "override worker count");
    scen->add_option("--out", scen_out, "override output directory");
    scen->add_option("--format", scen_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    // accept
    auto* acc = app.add_subcommand("accept", "run the acceptance suite");
    std::string acc_level = "smoke", acc_out;
    std::vector<int> acc_only;
    bool acc_strict = false;
    verify::AcceptOptions acc_opts;
    acc->add_option("--level", acc_level, "smoke or full")->check(CLI::IsMember({"smoke", "full"}));
    acc->add_option("--only", acc_only, "criterion ids");
    acc->add_option("--seed", acc_opts.seed, "master seed");
    acc->add_option("--workers", acc_opts.workers, "worker threads");
    acc->add_option("--out", acc_out, "report file (default stdout)");
    acc->add_flag("--strict", acc_strict, "exit non-zero if a criterion fails");

    // fit
    auto* fit = app.add_subcommand("fit", "fit cover-time constants from scenario output");
    std::string fit_in, fit_mode = "biased", fit_target = "both", fit_config;
    std::uint32_t fit_r = 3;
    fit->add_option("--input", fit_in, "scenario CSV")->required()->check(CLI::ExistingFile);
    fit->add_option("--config", fit_config, "scenario config (supplies mode and r)");
    fit->add_option("--mode", fit_mode, "walk mode for the target constant");
    fit->add_option("-r,--r", fit_r, "degree for the target constant");
    fit->add_option("--target", fit_target, "vertex, edge or both")->check(CLI::IsMember({"vertex", "edge", "both"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            const bool many = gen_count > 1;
            if (many && !gen_out.empty()) fs::create_directories(gen_out);
            for (std::uint32_t i = 0; i < gen_count; ++i) {
                const std::uint64_t seed = many ? derive_seed(gen_seed, i) : gen_seed;
                const auto g = Multigraph::configuration_model(gen_n, gen_r, seed);
                std::ofstream file;
                std::string path = gen_out;
                if (many && !gen_out.empty()) path = (fs::path(gen_out) / ("graph_" + std::to_string(i) + ".txt")).string();
                auto& out = open_out(path, file);
                if (gen_stats) {
                    const auto rep = second_eigenvalue(g);
                    out << "seed " << seed << " simple " << is_simple(g) << " connected " << is_connected(g)
                        << " cycles<=4 " << count_short_cycles(g, 4) << " lambda2 " << rep.lambda2 << '\n';
                } else {
                    write_edge_list(out, g);
                }
            }
        } else if (*walk) {
            WalkOptions opts;
            opts.mode = parse_walk_mode(walk_mode);
            opts.stop = parse_stop_condition(walk_stop);
            opts.seed = walk_seed;
            opts.record_trajectory = walk_traj;
            WalkRecord rec;
            if (!walk_graph.empty()) {
                std::ifstream in(walk_graph);
                if (!in) throw std::runtime_error("cannot read '" + walk_graph + "'");
                rec = run_walk(read_edge_list(in), opts);
            } else if (walk_exposure) {
                rec = run_walk_exposure(walk_n, walk_r, opts);
            } else {
                rec = run_walk(Multigraph::configuration_model(walk_n, walk_r, derive_seed(walk_seed, 0x67)), opts);
            }
            std::ofstream file;
            write_walk_record(open_out(walk_out, file), rec, walk_traj);
            std::cerr << "steps " << rec.steps << " edges " << rec.edges_discovered() << " C_V "
                      << (rec.vertex_cover ? std::to_string(*rec.vertex_cover) : "-") << " C_E "
                      << (rec.edge_cover ? std::to_string(*rec.edge_cover) : "-") << '\n';
        } else if (*scen) {
            auto config = load_config(scen_config);
            if (scen->count("--seed")) config.master_seed = scen_seed;
            if (scen_workers) config.workers = scen_workers;
            if (!scen_out.empty()) config.out_dir = scen_out;
            if (!scen_format.empty()) config.format = scen_format;
            config.validate();

            const std::string dir = config.out_dir.empty() ? "." : config.out_dir;
            fs::create_directories(dir);
            const auto path = fs::path(dir) / (config.name + "." + config.format);
            std::ofstream out(path);
            if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
            const bool csv = config.format == "csv";
            bool first = true;
            if (csv) write_csv_header(out, config);
            else out << "[\n";
            out.flush();
            const auto result = run_scenario(config, [&](const ScenarioRow& row) {
                if (csv) {
                    write_row_csv(out, row, config);
                } else {
                    if (!first) out << ",\n";
                    write_row_json(out, row, config);
                }
                first = false;
                out.flush();
            });
            if (!csv) out << "\n]\n";
            std::cout << "wrote " << result.rows.size() << " rows to " << path.string() << " in " << result.seconds
                      << "s (" << result.flagged << " flagged, " << result.skipped << " skipped)\n";
            if (config.stop.kind == StopCondition::Kind::cover && config.ns.size() >= 3) {
                print_fit(std::cout, result.rows, config.mode, config.r, CoverTarget::vertex);
                print_fit(std::cout, result.rows, config.mode, config.r, CoverTarget::edge);
            }
        } else if (*acc) {
            acc_opts.level = verify::parse_accept_level(acc_level);
            acc_opts.only.insert(acc_only.begin(), acc_only.end());
            std::ofstream file;
            auto& out = open_out(acc_out, file);
            const auto results = verify::run_acceptance(acc_opts, out);
            int failed = 0;
            for (const auto& r : results) failed += !r.passed;
            out << "summary: " << results.size() - failed << " passed, " << failed << " failed\n";
            return acc_strict && failed ? 1 : 0;
        } else if (*fit) {
            WalkMode mode = parse_walk_mode(fit_mode);
            std::uint32_t r = fit_r;
            if (!fit_config.empty()) {
                const auto config = load_config(fit_config);
                mode = config.mode;
                r = config.r;
            }
            std::ifstream in(fit_in);
            const auto rows = read_rows_csv(in);
            if (fit_target != "edge") print_fit(std::cout, rows, mode, r, CoverTarget::vertex);
            if (fit_target != "vertex") print_fit(std::cout, rows, mode, r, CoverTarget::edge);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
