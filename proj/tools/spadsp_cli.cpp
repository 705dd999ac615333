// Command-line front end: synthetic experiments, recorded-data estimation,
// summary comparison and per-iteration complexity report.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "spadsp/error.hpp"
#include "spadsp/harness.hpp"
#include "spadsp/metrics.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kIoError = 2, kNumericalFailure = 3 };

struct ExperimentFlags {
    std::string config_file;
    std::string output_dir = "spadsp_out";
    std::map<std::string, std::string> overrides;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& flags) {
    cmd->add_option("--config", flags.config_file, "key = value configuration file")->check(CLI::ExistingFile);
    cmd->add_option("--out", flags.output_dir, "output directory")->capture_default_str();
    for (const auto& key : spadsp::config_keys()) {
        cmd->add_option_function<std::string>(
            "--" + key, [&flags, key](const std::string& v) { flags.overrides[key] = v; },
            "override '" + key + "'");
    }
}

// Config file first, then command-line flags on top.
spadsp::ExperimentConfig resolve(spadsp::ExperimentConfig cfg, const ExperimentFlags& flags) {
    if (!flags.config_file.empty()) spadsp::apply_config_file(cfg, flags.config_file);
    for (const auto& [key, value] : flags.overrides) spadsp::apply_setting(cfg, key, value);
    return cfg;
}

int report_run(const spadsp::RunManifest& m) {
    std::cout << spadsp::format_summary_csv(spadsp::compare_summary({m.manifest_path}));
    std::cerr << fmt::format("wrote {} ({} trials, {} failed, {:.2f} s)\n", m.manifest_path.string(), m.total_trials,
                             m.failed_trials, m.wall_seconds);
    for (const auto& r : m.results) {
        for (const auto& f : r.failures) std::cerr << "  " << spadsp::algorithm_name(r.algorithm) << ": " << f << "\n";
    }
    if (m.failure_threshold_exceeded()) {
        std::cerr << "error: more than 1% of trials failed numerically\n";
        return kNumericalFailure;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sparse adaptive subspace-pursuit RLS channel estimation"};
    app.require_subcommand(1);

    ExperimentFlags sim_flags;
    auto* simulate = app.add_subcommand("simulate", "run synthetic multi-trial experiments");
    add_experiment_flags(simulate, sim_flags);

    ExperimentFlags est_flags;
    auto* estimate = app.add_subcommand("estimate", "run the estimators on a recorded baseband file");
    add_experiment_flags(estimate, est_flags);

    std::vector<std::string> manifests;
    std::string compare_out;
    auto* compare = app.add_subcommand("compare", "tabulate one or more run manifests");
    compare->add_option("manifests", manifests, "manifest.json files")->required();
    compare->add_option("--out", compare_out, "write the summary here instead of stdout");

    std::size_t taps = 64;
    std::size_t support = 12;
    auto* complexity = app.add_subcommand("complexity", "complex multiplications per iteration");
    complexity->add_option("--L", taps, "channel length")->capture_default_str();
    complexity->add_option("--s", support, "support size")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kConfigError;
    }

    try {
        if (*simulate) {
            const auto cfg = resolve(spadsp::ExperimentConfig{}, sim_flags);
            if (cfg.scenario == spadsp::Scenario::kRealData) {
                throw spadsp::ParameterError("simulate: use the 'estimate' subcommand for real-data runs");
            }
            return report_run(spadsp::run_experiment(cfg, sim_flags.output_dir));
        }
        if (*estimate) {
            auto cfg = resolve(spadsp::real_data_defaults(), est_flags);
            cfg.scenario = spadsp::Scenario::kRealData;
            return report_run(spadsp::run_experiment(cfg, est_flags.output_dir));
        }
        if (*compare) {
            std::vector<fs::path> paths(manifests.begin(), manifests.end());
            const auto text = spadsp::format_summary_csv(spadsp::compare_summary(paths));
            if (compare_out.empty()) std::cout << text;
            else spadsp::write_text_file(compare_out, text);
            return kOk;
        }
        if (*complexity) {
            const auto rls = spadsp::cm_count(spadsp::Algorithm::kRls, taps, support);
            const auto sparse = spadsp::cm_count(spadsp::Algorithm::kSpadspIrls, taps, support);
            std::cout << "algorithm,L,s,cm_per_iteration\n";
            for (const auto& r : {rls, sparse}) std::cout << fmt::format("{},{},{},{}\n", r.algorithm, r.L, r.s, r.cm_per_iteration);
            return kOk;
        }
    } catch (const spadsp::ParameterError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const spadsp::IoError& e) {
        std::cerr << "I/O error (" << spadsp::to_string(e.code()) << "): " << e.what() << "\n";
        return kIoError;
    } catch (const spadsp::NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumericalFailure;
    }
    return kOk;
}
