// Command-line front end. Exit codes: 0 success, 1 parse or I/O error,
// 2 inadmissible local system, 3 internal consistency failure.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "arrhom/fuzz.hpp"
#include "arrhom/io.hpp"
#include "arrhom/render.hpp"
#include "arrhom/report.hpp"

using namespace arrhom;

namespace {

enum Exit { kOk = 0, kInputError = 1, kInadmissible = 2, kInconsistent = 3 };

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotALocalSystem:
        case ErrorCode::TrivialOnLine: return kInadmissible;
        case ErrorCode::ConsistencyFailure: return kInconsistent;
        default: return kInputError;
    }
}

int emit(const ReportResult& r) {
    std::cout << r.json.dump(2) << "\n";
    for (const auto& f : r.failures) std::cerr << "consistency failure: " << f << "\n";
    return r.consistent() ? kOk : kInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twisted first Betti numbers of real line arrangement complements"};
    app.require_subcommand(1);

    std::string input;
    std::string output;
    std::uint64_t seed = 1;
    bool use_float = false;
    bool no_oracle = false;
    FuzzConfig fuzz;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", input, "arrangement JSON file")->required();
        sub->add_option("--seed", seed, "normalization seed (ARR_SEED overrides)");
        sub->add_flag("--float", use_float, "use floating-point ranks");
    };
    auto* h1_cmd = app.add_subcommand("h1", "full report with h1");
    add_common(h1_cmd);
    h1_cmd->add_flag("--no-oracle", no_oracle, "skip the Fox-calculus cross-check");
    auto* bounds_cmd = app.add_subcommand("bounds", "per-line bounds and neighbor certificates");
    add_common(bounds_cmd);
    auto* sharp_cmd = app.add_subcommand("sharp-pairs", "sharp pairs and the checks they imply");
    add_common(sharp_cmd);
    auto* oracle_cmd = app.add_subcommand("oracle", "Fox-calculus h1 for every line at infinity");
    add_common(oracle_cmd);
    auto* validate_cmd = app.add_subcommand("validate", "admissibility of the local system");
    add_common(validate_cmd);
    auto* render_cmd = app.add_subcommand("render", "SVG picture of the real figure");
    add_common(render_cmd);
    render_cmd->add_option("-o,--output", output, "SVG path")->required();

    auto* fuzz_cmd = app.add_subcommand("fuzz", "randomized property checks");
    fuzz_cmd->add_option("--lines", fuzz.lines, "lines per instance (0: random 3..8)");
    fuzz_cmd->add_option("--order", fuzz.order, "monodromy order (0: random 2..6)");
    fuzz_cmd->add_option("--trials", fuzz.trials, "number of instances");
    fuzz_cmd->add_option("--seed", seed, "base seed (ARR_SEED overrides)");
    fuzz_cmd->add_flag("--sharp-only", fuzz.sharp_only, "only arrangements with a planted sharp pair");
    fuzz_cmd->add_option("--threads", fuzz.threads, "worker threads (0: all cores)");
    fuzz_cmd->add_option("--dump-dir", fuzz.dump_dir, "directory for counterexample files")
        ->default_val("fuzz_counterexamples");

    CLI11_PARSE(app, argc, argv);

    if (const char* env = std::getenv("ARR_SEED")) {
        try {
            seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: ARR_SEED is not an unsigned integer\n";
            return kInputError;
        }
    }

    try {
        if (fuzz_cmd->parsed()) {
            if (fuzz.lines < 0 || fuzz.lines > kMaxFuzzLines || (fuzz.lines > 0 && fuzz.lines < 2)) {
                std::cerr << "error: --lines must be 0 or in 2.." << kMaxFuzzLines << "\n";
                return kInputError;
            }
            if (fuzz.order != 0 && fuzz.order < 2) {
                std::cerr << "error: --order must be 0 or at least 2\n";
                return kInputError;
            }
            fuzz.seed = seed;
            const auto summary = run_fuzz(fuzz);
            std::cout << summary_json(summary, fuzz).dump(2) << "\n";
            for (const auto& [i, msg] : summary.violations) std::cerr << "trial " << i << ": " << msg << "\n";
            return summary.ok() ? kOk : kInconsistent;
        }

        const ArrangementFile file = load_arrangement_file(input);
        const Arrangement arr(file.lines);
        ReportOptions opt;
        opt.seed = seed;
        opt.use_float = use_float;
        opt.run_oracle = !no_oracle;

        if (validate_cmd->parsed()) {
            const Json j = validate_report(arr, file.local_system);
            std::cout << j.dump(2) << "\n";
            return j["admissible"].get<bool>() ? kOk : kInadmissible;
        }
        if (render_cmd->parsed()) {
            const std::string svg = render_svg(arr, file.local_system, seed);
            std::ofstream out(output);
            if (!out || !(out << svg)) {
                std::cerr << "error: cannot write " << output << "\n";
                return kInputError;
            }
            return kOk;
        }
        if (h1_cmd->parsed()) return emit(h1_report(arr, file.local_system, opt));
        if (bounds_cmd->parsed()) return emit(bounds_report(arr, file.local_system, opt));
        if (sharp_cmd->parsed()) return emit(sharp_pairs_report(arr, file.local_system, opt));
        if (oracle_cmd->parsed()) return emit(oracle_report(arr, file.local_system, opt));
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kOk;
}
