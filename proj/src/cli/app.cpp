#include "ergent/cli/app.hpp"

#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ergent/cli/commands.hpp"
#include "ergent/common.hpp"

namespace ergent::cli {

namespace {

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ValidationError("cannot write '" + path + "'");
    f << text;
    if (!f) throw ValidationError("failed writing '" + path + "'");
}

// argv without the output-location flags, so the echo is path independent.
std::string command_echo(int argc, const char* const* argv) {
    std::string echo = "ergent";
    for (int k = 1; k < argc; ++k) {
        const std::string a = argv[k];
        if (a == "--out" || a == "--dump-ensemble") {
            ++k;
            continue;
        }
        if (a.rfind("--out=", 0) == 0 || a.rfind("--dump-ensemble=", 0) == 0 || a == "--timestamp") continue;
        echo += ' ' + a;
    }
    return echo;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Thermodynamic multipartite entanglement measures", "ergent"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string out_path;
    bool wall_clock = false;
    app.add_option("--out", out_path, "Write the CSV here instead of stdout");
    app.add_flag("--timestamp", wall_clock, "Record wall-clock time in the manifest");

    MeasureOptions mo;
    auto* measure = app.add_subcommand("measure", "Evaluate measures on a pure state file");
    measure->add_option("--state", mo.state_path, "State file")->required();
    measure->add_option("--subset", mo.subset, "1-based parties of s, comma separated (default: all)");
    measure->add_option("--ham", mo.ham, "equispaced:STEP, top:LEVEL or a Hamiltonian file")->capture_default_str();
    measure->add_option("--kind", mo.kinds, "Comma-separated subset of ME,MB,DMIN,DAVG,DVOL,FULLSEP");
    measure->add_flag("--normalize", mo.normalize, "Rescale the state to unit norm");

    ReproOptions ro;
    auto* repro = app.add_subcommand("repro", "Reproduce a table or figure as CSV");
    repro->add_option("target", ro.target, "table1 | table2 | ghz-w | star | fig1 | fig2")->required();
    repro->add_option("--grid", ro.grid, "Grid points (star 181, fig1 200, fig2 91)");
    repro->add_option("--n-max", ro.n_max, "Largest n for ghz-w (3..12)")->capture_default_str();
    repro->add_option("--samples", ro.samples, "Draws per Table 1 row")->capture_default_str();
    repro->add_option("--seed", ro.seed, "Random seed")->capture_default_str();

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "Property sweeps; exit code 1 on any violation");
    verify->add_option("suite", vo.suite, "monotonicity | continuity | theorem1 | prop4 | monogamy | majorization")
        ->required();
    verify->add_option("--trials", vo.trials, "Number of trials (default per suite)");
    verify->add_option("--seed", vo.seed, "Random seed")->capture_default_str();

    RoofOptions fo;
    std::string dump_path;
    auto* roof = app.add_subcommand("roof", "Convex-roof estimate for a mixture file");
    roof->add_option("--mixture", fo.mixture_path, "Mixture file")->required();
    roof->add_option("--subset", fo.subset, "1-based parties of s (default: all)");
    roof->add_option("--ham", fo.ham, "equispaced:STEP, top:LEVEL or a Hamiltonian file")->capture_default_str();
    roof->add_option("--kind", fo.kind, "ME or MB")->capture_default_str();
    roof->add_option("--restarts", fo.restarts, "Random restarts")->capture_default_str();
    roof->add_option("--ensemble-size", fo.ensemble_size, "Ensemble size m (0: rank^2)")->capture_default_str();
    roof->add_option("--max-iters", fo.max_iters, "Local-search sweeps per restart")->capture_default_str();
    roof->add_option("--seed", fo.seed, "Random seed")->capture_default_str();
    roof->add_option("--dump-ensemble", dump_path, "Write the best ensemble as a mixture file");
    roof->add_flag("--normalize", fo.normalize, "Rescale member states to unit norm");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    RunManifest manifest;
    manifest.command = command_echo(argc, argv);
    manifest.timestamp = manifest_timestamp(wall_clock);
    try {
        CommandOutput result;
        if (*measure) {
            result = cmd_measure(mo, manifest);
        } else if (*repro) {
            result = cmd_repro(ro, manifest);
        } else if (*verify) {
            result = cmd_verify(vo, manifest);
        } else {
            fo.dump_ensemble = !dump_path.empty();
            result = cmd_roof(fo, manifest);
        }
        if (!dump_path.empty()) write_file(dump_path, result.side_file);
        if (out_path.empty()) {
            out << result.csv;
            out.flush();
        } else {
            write_file(out_path, result.csv);
        }
        if (!result.summary.empty()) err << result.summary << '\n';
        return result.exit_code;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 4;
    }
}

}  // namespace ergent::cli
