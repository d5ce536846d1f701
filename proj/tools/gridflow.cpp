#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gridflow/admittance.hpp"
#include "gridflow/bench.hpp"
#include "gridflow/errors.hpp"
#include "gridflow/json_io.hpp"
#include "gridflow/model.hpp"
#include "gridflow/powerflow.hpp"
#include "gridflow/sparse.hpp"

namespace {

constexpr const char* format_note = "Feeder files use the gridflow JSON format v1 (0-based node indices).";

std::string read_feeder_file(const std::string& path) {
    namespace fs = std::filesystem;
    fs::path p(path);
    if (!fs::exists(p)) {
        // fall back to the bundled fixture directory, if configured
        if (const char* dir = std::getenv("GRIDFLOW_FIXTURES")) {
            const fs::path alt = fs::path(dir) / path;
            if (fs::exists(alt)) p = alt;
        }
    }
    std::ifstream in(p, std::ios::binary);
    if (!in) throw gridflow::Error("cannot open feeder file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw gridflow::Error("cannot open output file: " + out_path);
    out << text;
}

int run(int argc, char** argv) {
    using namespace gridflow;
    CLI::App app{std::string("gridflow: three-phase distribution grid admittance, power flow and "
                             "benchmarks.\n") +
                 format_note};
    app.require_subcommand(1);

    std::string feeder_path, out_path, dump_path;
    double tol = SolveOptions{}.tol;
    int max_iter = SolveOptions{}.max_iter;
    int nodes = 119, trials = 50;
    std::uint64_t seed = 1;
    std::string coupling = "full";

    auto* validate = app.add_subcommand(
        "validate", std::string("Check a feeder file and print diagnostics. ") + format_note);
    validate->add_option("feeder", feeder_path, "feeder JSON file")->required();

    auto* build_cmd = app.add_subcommand(
        "build", std::string("Assemble the admittance tensor and print a summary. ") + format_note);
    build_cmd->add_option("feeder", feeder_path, "feeder JSON file")->required();
    build_cmd->add_option("--dump-tensor", dump_path, "write the dense tensor as 4-D JSON here");

    auto* solve_cmd = app.add_subcommand(
        "solve", std::string("Run the fixed-point power flow. ") + format_note);
    solve_cmd->add_option("feeder", feeder_path, "feeder JSON file")->required();
    solve_cmd->add_option("--tol", tol, "convergence tolerance on max voltage change, p.u.");
    solve_cmd->add_option("--max-iter", max_iter, "iteration limit");
    solve_cmd->add_option("--out", out_path, "write the report here instead of stdout");

    auto* bench_cmd = app.add_subcommand(
        "bench", std::string("Benchmark sparse vs dense products. ") + format_note);
    bench_cmd->add_option("--nodes", nodes, "hyper-node count");
    bench_cmd->add_option("--trials", trials, "timed repetitions");
    bench_cmd->add_option("--seed", seed, "generator seed");
    bench_cmd->add_option("--coupling", coupling, "full|diagonal")
        ->check(CLI::IsMember({"full", "diagonal"}));

    auto* generate_cmd = app.add_subcommand(
        "generate", std::string("Emit a random radial feeder. ") + format_note);
    generate_cmd->add_option("--nodes", nodes, "hyper-node count");
    generate_cmd->add_option("--seed", seed, "generator seed");
    generate_cmd->add_option("--out", out_path, "write the feeder here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (validate->parsed()) {
        const FeederModel f = parse_feeder_unvalidated(read_feeder_file(feeder_path));
        const auto diags = validate_feeder(f);
        nlohmann::json out;
        out["diagnostics"] = nlohmann::json::array();
        for (const auto& d : diags) {
            out["diagnostics"].push_back(
                {{"severity", d.severity == Severity::error ? "error" : "warning"},
                 {"path", d.path},
                 {"message", d.message}});
            std::cerr << to_string(d) << "\n";
        }
        out["valid"] = !has_errors(diags);
        std::cout << out.dump(2) << "\n";
        return has_errors(diags) ? 1 : 0;
    }

    if (build_cmd->parsed()) {
        const FeederModel f = parse_feeder(read_feeder_file(feeder_path));
        const DenseAdmittance dense = build(f);
        const SparseAdmittance sparse = compress(dense);
        if (!dump_path.empty()) write_output(to_json(dense).dump() + "\n", dump_path);
        nlohmann::json out;
        out["n_nodes"] = f.n_nodes;
        out["p_offdiag"] = sparse.p_offdiag();
        out["mem_sparse"] = memory_positions(sparse);
        out["mem_dense"] = 9 * static_cast<std::int64_t>(f.n_nodes) * f.n_nodes;
        out["max_minor_asymmetry"] = check_minor_symmetry(dense);
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (solve_cmd->parsed()) {
        const FeederModel f = parse_feeder(read_feeder_file(feeder_path));
        SolveOptions opts;
        opts.tol = tol;
        opts.max_iter = max_iter;
        const SparseAdmittance sparse = compress(build(f));
        const SolveReport report = solve(sparse, f, opts);
        write_output(to_json(report).dump(2) + "\n", out_path);
        if (!report.converged) {
            std::cerr << "error: power flow did not converge ("
                      << (report.status == SolveStatus::diverged ? "diverged" : "max iterations")
                      << " after " << report.iterations << " iterations)\n";
            return 1;
        }
        return 0;
    }

    if (bench_cmd->parsed()) {
        BenchConfig cfg;
        cfg.n_nodes = nodes;
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.coupling = coupling == "full" ? Coupling::full : Coupling::diagonal;
        const BenchReport report = run_benchmark(cfg);
        std::cout << to_json(report).dump(2) << "\n";
        std::cerr << format_table(report);
        return 0;
    }

    if (generate_cmd->parsed()) {
        const FeederModel f = generate_radial(nodes, seed, Coupling::full);
        write_output(serialize_feeder(f), out_path);
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const gridflow::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const gridflow::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
