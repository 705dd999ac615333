#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spadsp/estimators.hpp"
#include "spadsp/metrics.hpp"
#include "spadsp/signal_model.hpp"

namespace spadsp {

enum class Scenario { kPaperSynthetic, kCustomChannel, kRealData };

std::string_view scenario_name(Scenario s) noexcept;
Scenario parse_scenario(std::string_view name);

enum class SweepParam { kMu, kSnrDb, kS };

std::string_view sweep_param_name(SweepParam p) noexcept;
SweepParam parse_sweep_param(std::string_view name);

struct ExperimentConfig {
    Scenario scenario = Scenario::kPaperSynthetic;
    std::size_t L = 64;
    std::size_t s = 12;
    double mu = 1.0;
    double lambda = 0.99;
    double delta = 100.0;
    double eta = 0.5;
    double snr_db = 20.0;
    std::size_t n_iterations = 1000;
    std::size_t n_trials = 100;
    std::uint64_t base_seed = 1;
    std::vector<Algorithm> algorithms{Algorithm::kRls, Algorithm::kSpadspIrls};
    bool pll_enabled = false;
    double k1 = 0.0;
    double k2 = 0.0;
    double phase_rate = 0.0;     // rad/sample; 0 keeps θ(n) = 0
    std::size_t active_taps = 4; // custom-channel only
    std::optional<SweepParam> sweep_param; // set together with sweep_values
    std::vector<double> sweep_values;
    std::filesystem::path input; // real-data only
    BasebandFormat input_format = BasebandFormat::kCsv;
    std::size_t threads = 0;     // 0: hardware concurrency

    EstimatorConfig estimator_config() const;
    void validate() const;
};

// Parameters used for recorded data: s = 15, η = 0.999, μ = 1.6, PLL on with
// K1 = -5e-12 and K2 = K1 / 10.
ExperimentConfig real_data_defaults();

// Sets one field from its textual key/value form. Unknown keys and
// unparsable values raise ParameterError.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Known keys in a stable order; each maps to a CLI flag of the same name.
const std::vector<std::string>& config_keys();

// "key = value" lines; '#' starts a comment; blank lines ignored.
void apply_config_text(ExperimentConfig& cfg, std::string_view text);
void apply_config_file(ExperimentConfig& cfg, const std::filesystem::path& path);

struct RunResult {
    Algorithm algorithm = Algorithm::kRls;
    std::optional<SweepParam> sweep_param;
    double sweep_value = 0.0;
    std::string csv; // file name relative to the output directory
    Trajectory average;
    std::size_t completed_trials = 0;
    std::size_t failed_trials = 0;
    std::vector<std::string> failures;
    double steady_state_db = 0.0;
    std::size_t convergence_iter = 0;
    unsigned long long cm_per_iteration = 0;
    std::optional<double> support_recovery;       // mean over completed trials
    std::optional<double> full_recovery_fraction; // share of trials recovering every true tap
};

struct RunManifest {
    ExperimentConfig config;
    std::vector<std::uint64_t> seeds; // seed of trial i = base_seed + i
    std::filesystem::path output_dir;
    std::filesystem::path manifest_path;
    std::filesystem::path summary_path;
    std::vector<RunResult> results;
    double wall_seconds = 0.0;
    std::size_t total_trials = 0;
    std::size_t failed_trials = 0;

    // More than 1% of trials hit a numerical failure.
    bool failure_threshold_exceeded() const noexcept;
};

/// Runs every (algorithm, sweep point) over n_trials independent trials and
/// writes one trajectory CSV per pair, summary.csv and manifest.json into
/// output_dir.
RunManifest run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& output_dir);

struct SummaryRow {
    std::string algorithm;
    std::string sweep_param;
    std::optional<double> sweep_value;
    double steady_state_db = 0.0;
    std::size_t convergence_iter = 0;
    unsigned long long cm_per_iteration = 0;
    std::optional<double> support_recovery;
    std::string manifest;
};

// Rebuilds summary rows from saved manifests and their trajectory CSVs.
// Missing artifacts raise IoError listing every absent file.
std::vector<SummaryRow> compare_summary(const std::vector<std::filesystem::path>& manifests);

std::string format_summary_csv(const std::vector<SummaryRow>& rows);
std::string format_trajectory_csv(const Trajectory& t, std::string_view value_column);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, std::string_view text);

} // namespace spadsp
