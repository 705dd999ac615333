#include "spadsp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

#include "spadsp/error.hpp"

namespace spadsp {

namespace fs = std::filesystem;
using nlohmann::json;

std::string_view scenario_name(Scenario s) noexcept {
    switch (s) {
    case Scenario::kPaperSynthetic: return "paper-synthetic";
    case Scenario::kCustomChannel: return "custom-channel";
    case Scenario::kRealData: return "real-data";
    }
    return "unknown";
}

Scenario parse_scenario(std::string_view name) {
    for (Scenario s : {Scenario::kPaperSynthetic, Scenario::kCustomChannel, Scenario::kRealData}) {
        if (scenario_name(s) == name) return s;
    }
    throw ParameterError(fmt::format("unknown scenario '{}'", name));
}

std::string_view sweep_param_name(SweepParam p) noexcept {
    switch (p) {
    case SweepParam::kMu: return "mu";
    case SweepParam::kSnrDb: return "snr_db";
    case SweepParam::kS: return "s";
    }
    return "unknown";
}

SweepParam parse_sweep_param(std::string_view name) {
    for (SweepParam p : {SweepParam::kMu, SweepParam::kSnrDb, SweepParam::kS}) {
        if (sweep_param_name(p) == name) return p;
    }
    throw ParameterError(fmt::format("unknown sweep parameter '{}' (expected mu, snr_db or s)", name));
}

EstimatorConfig ExperimentConfig::estimator_config() const {
    return EstimatorConfig{
        .L = L, .s = s, .mu = mu, .lambda = lambda, .delta = delta, .eta = eta, .k1 = k1, .k2 = k2,
        .pll_enabled = pll_enabled};
}

namespace {

ExperimentConfig at_sweep_point(const ExperimentConfig& cfg, std::optional<double> value) {
    ExperimentConfig point = cfg;
    if (!value || !cfg.sweep_param) return point;
    switch (*cfg.sweep_param) {
    case SweepParam::kMu: point.mu = *value; break;
    case SweepParam::kSnrDb: point.snr_db = *value; break;
    case SweepParam::kS: point.s = static_cast<std::size_t>(*value); break;
    }
    return point;
}

std::vector<std::optional<double>> sweep_points(const ExperimentConfig& cfg) {
    if (!cfg.sweep_param) return {std::nullopt};
    return {cfg.sweep_values.begin(), cfg.sweep_values.end()};
}

} // namespace

void ExperimentConfig::validate() const {
    if (n_trials < 1) throw ParameterError("n_trials must be >= 1");
    if (n_iterations < 50) {
        throw ParameterError(fmt::format("n_iterations = {} too short for a steady-state window (need >= 50)",
                                         n_iterations));
    }
    if (algorithms.empty()) throw ParameterError("no algorithms selected");
    if (scenario == Scenario::kPaperSynthetic && L != 64) {
        throw ParameterError(fmt::format("paper-synthetic scenario uses a length-64 channel, got L = {}", L));
    }
    if (scenario == Scenario::kCustomChannel && (active_taps < 1 || active_taps > L)) {
        throw ParameterError(fmt::format("active_taps = {} outside [1, L = {}]", active_taps, L));
    }
    if (scenario == Scenario::kRealData && input.empty()) throw ParameterError("real-data scenario needs an input file");
    if (!std::isfinite(snr_db) || !std::isfinite(phase_rate)) throw ParameterError("snr_db and phase_rate must be finite");
    if (sweep_param.has_value() != !sweep_values.empty()) {
        throw ParameterError("sweep_param and sweep_values must be given together");
    }
    if (sweep_param == SweepParam::kS) {
        for (double v : sweep_values) {
            if (v < 1 || v != std::floor(v)) throw ParameterError(fmt::format("sweep value s = {} is not a positive integer", v));
        }
    }
    for (const auto& point : sweep_points(*this)) {
        const auto cfg = at_sweep_point(*this, point);
        if (!std::isfinite(cfg.snr_db)) throw ParameterError("snr_db must be finite");
        cfg.estimator_config().validate();
    }
}

ExperimentConfig real_data_defaults() {
    ExperimentConfig cfg;
    cfg.scenario = Scenario::kRealData;
    cfg.s = 15;
    cfg.eta = 0.999;
    cfg.mu = 1.6;
    cfg.pll_enabled = true;
    cfg.k1 = -5e-12;
    cfg.k2 = cfg.k1 / 10.0;
    cfg.n_trials = 1;
    cfg.algorithms = {Algorithm::kRls, Algorithm::kIrls, Algorithm::kSpadspRls, Algorithm::kSpadspIrls};
    return cfg;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

double parse_number(std::string_view key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ParameterError(fmt::format("{}: '{}' is not a number", key, text));
    }
    return value;
}

template <typename Int>
Int parse_integer(std::string_view key, std::string_view text) {
    text = trim(text);
    Int value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
        throw ParameterError(fmt::format("{}: '{}' is not a nonnegative integer", key, text));
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "1" || text == "on" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "off" || text == "no") return false;
    throw ParameterError(fmt::format("{}: '{}' is not a boolean", key, text));
}

} // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "scenario", "L",           "s",           "mu",           "lambda",       "delta",     "eta",
        "snr_db",   "n_iterations", "n_trials",   "base_seed",    "algorithms",   "pll",       "k1",
        "k2",       "phase_rate",  "active_taps", "sweep_param",  "sweep_values", "input",     "input_format",
        "threads"};
    return keys;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
    value = trim(value);
    if (key == "scenario") cfg.scenario = parse_scenario(value);
    else if (key == "L") cfg.L = parse_integer<std::size_t>(key, value);
    else if (key == "s") cfg.s = parse_integer<std::size_t>(key, value);
    else if (key == "mu") cfg.mu = parse_number(key, value);
    else if (key == "lambda") cfg.lambda = parse_number(key, value);
    else if (key == "delta") cfg.delta = parse_number(key, value);
    else if (key == "eta") cfg.eta = parse_number(key, value);
    else if (key == "snr_db") cfg.snr_db = parse_number(key, value);
    else if (key == "n_iterations") cfg.n_iterations = parse_integer<std::size_t>(key, value);
    else if (key == "n_trials") cfg.n_trials = parse_integer<std::size_t>(key, value);
    else if (key == "base_seed") cfg.base_seed = parse_integer<std::uint64_t>(key, value);
    else if (key == "algorithms") {
        std::vector<Algorithm> algs;
        if (value == "all") {
            algs = {Algorithm::kRls, Algorithm::kIrls, Algorithm::kSpadspRls, Algorithm::kSpadspIrls};
        } else {
            for (auto name : split_list(value)) algs.push_back(parse_algorithm(name));
        }
        cfg.algorithms = std::move(algs);
    } else if (key == "pll") cfg.pll_enabled = parse_bool(key, value);
    else if (key == "k1") cfg.k1 = parse_number(key, value);
    else if (key == "k2") cfg.k2 = parse_number(key, value);
    else if (key == "phase_rate") cfg.phase_rate = parse_number(key, value);
    else if (key == "active_taps") cfg.active_taps = parse_integer<std::size_t>(key, value);
    else if (key == "sweep_param") {
        if (value == "none" || value.empty()) cfg.sweep_param.reset();
        else cfg.sweep_param = parse_sweep_param(value);
    } else if (key == "sweep_values") {
        cfg.sweep_values.clear();
        for (auto item : split_list(value)) cfg.sweep_values.push_back(parse_number(key, item));
    } else if (key == "input") cfg.input = fs::path(std::string(value));
    else if (key == "input_format") cfg.input_format = parse_baseband_format(std::string(value));
    else if (key == "threads") cfg.threads = parse_integer<std::size_t>(key, value);
    else throw ParameterError(fmt::format("unknown configuration key '{}'", key));
}

void apply_config_text(ExperimentConfig& cfg, std::string_view text) {
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParameterError(fmt::format("config line {}: expected 'key = value'", line_no));
        }
        apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void apply_config_file(ExperimentConfig& cfg, const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(ErrorCode::kFileNotFound, "cannot open config " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str());
}

bool RunManifest::failure_threshold_exceeded() const noexcept {
    return total_trials > 0 && static_cast<double>(failed_trials) > 0.01 * static_cast<double>(total_trials);
}

std::string format_trajectory_csv(const Trajectory& t, std::string_view value_column) {
    std::string out = fmt::format("iteration,{}\n", value_column);
    for (std::size_t i = 0; i < t.values_db.size(); ++i) out += fmt::format("{},{:.9g}\n", i + 1, t.values_db[i]);
    return out;
}

Trajectory read_trajectory_csv(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(ErrorCode::kFileNotFound, "cannot open " + path.string());
    Trajectory t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 || trim(line).empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw IoError(ErrorCode::kMalformedRecord, fmt::format("{}:{}: expected 2 columns", path.string(), line_no));
        }
        try {
            t.values_db.push_back(parse_number("value", std::string_view(line).substr(comma + 1)));
        } catch (const ParameterError& e) {
            throw IoError(ErrorCode::kMalformedRecord, fmt::format("{}:{}: {}", path.string(), line_no, e.what()));
        }
    }
    if (t.values_db.empty()) throw IoError(ErrorCode::kEmptyInput, path.string() + ": no trajectory rows");
    return t;
}

void write_text_file(const fs::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError(ErrorCode::kIo, "cannot write " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError(ErrorCode::kIo, "write failed: " + path.string());
}

namespace {

struct AlgorithmOutcome {
    std::optional<Trajectory> trajectory; // empty when the trial failed
    std::string failure;
    std::optional<double> recovery;
};

using TrialOutcome = std::vector<AlgorithmOutcome>;

// Estimated support used for recovery scoring. Dense algorithms report their
// s largest taps so the column stays comparable across algorithms.
SupportSet estimated_support(const ChannelEstimator& est, std::size_t s) {
    if (is_sparse(est.algorithm())) return est.state().lambda_s;
    return top_s_support(est.state().h_hat, std::min(s, est.config().L));
}

struct TrialData {
    std::vector<Complex> x;
    std::vector<Complex> y;
    std::optional<SparseChannel> channel;
};

TrialData synthesize(const ExperimentConfig& cfg, std::uint64_t seed) {
    SparseChannel channel = cfg.scenario == Scenario::kPaperSynthetic
                                ? make_paper_channel()
                                : make_random_channel(cfg.L, cfg.active_taps, seed);
    const auto x = generate_input(cfg.n_iterations, seed);
    const auto noise = generate_noise(cfg.n_iterations, make_noise_spec(cfg.snr_db, channel).variance, seed);
    const auto phase = cfg.phase_rate == 0.0 ? PhaseTrajectory::zero() : PhaseTrajectory::ramp(cfg.phase_rate);
    auto y = simulate_received(channel, x.span(), phase, noise.span());
    return TrialData{x.entries(), std::move(y), std::move(channel)};
}

TrialOutcome run_trial(const ExperimentConfig& cfg, const TrialData& data) {
    TrialOutcome outcome;
    outcome.reserve(cfg.algorithms.size());
    std::optional<ComplexVector> reference;
    if (data.channel) {
        // The estimator models y = e^{jθ} ĥ^H x, so it converges to the conjugate taps.
        reference = data.channel->taps;
        for (auto& c : reference->span()) c = std::conj(c);
    }
    const std::size_t n = data.x.size();
    for (Algorithm alg : cfg.algorithms) {
        AlgorithmOutcome result;
        try {
            ChannelEstimator est(alg, cfg.estimator_config());
            TapDelayLine line(cfg.L);
            Trajectory t;
            t.values_db.reserve(n);
            for (std::size_t i = 0; i < n; ++i) {
                const auto out = est.step(line.push(data.x[i]), data.y[i]);
                t.values_db.push_back(reference ? msd_db(out.h_applied, *reference) : to_db(std::norm(out.residual)));
            }
            if (data.channel) {
                result.recovery = support_recovery_rate(estimated_support(est, cfg.s), data.channel->true_support);
            }
            result.trajectory = std::move(t);
        } catch (const NumericalFailure& e) {
            result.failure = e.what();
        }
        outcome.push_back(std::move(result));
    }
    return outcome;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count && !failed; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        if (!failed.exchange(true)) error = std::current_exception();
                    }
                }
            });
        }
    }
    if (error) std::rethrow_exception(error);
}

std::string csv_name(Algorithm alg, const std::optional<SweepParam>& param, std::optional<double> value) {
    if (!param || !value) return fmt::format("{}.csv", algorithm_name(alg));
    return fmt::format("{}_{}_{:g}.csv", algorithm_name(alg), sweep_param_name(*param), *value);
}

std::string optional_number(const std::optional<double>& v) { return v ? fmt::format("{:.9g}", *v) : std::string{}; }

json config_to_json(const ExperimentConfig& cfg) {
    json algs = json::array();
    for (Algorithm a : cfg.algorithms) algs.push_back(std::string(algorithm_name(a)));
    json j{
        {"scenario", std::string(scenario_name(cfg.scenario))},
        {"L", cfg.L},
        {"s", cfg.s},
        {"mu", cfg.mu},
        {"lambda", cfg.lambda},
        {"delta", cfg.delta},
        {"eta", cfg.eta},
        {"snr_db", cfg.snr_db},
        {"n_iterations", cfg.n_iterations},
        {"n_trials", cfg.n_trials},
        {"base_seed", cfg.base_seed},
        {"algorithms", algs},
        {"pll", cfg.pll_enabled},
        {"k1", cfg.k1},
        {"k2", cfg.k2},
        {"phase_rate", cfg.phase_rate},
        {"active_taps", cfg.active_taps},
        {"sweep_param", cfg.sweep_param ? std::string(sweep_param_name(*cfg.sweep_param)) : std::string("none")},
        {"sweep_values", cfg.sweep_values},
        {"threads", cfg.threads},
    };
    if (cfg.scenario == Scenario::kRealData) {
        j["input"] = cfg.input.string();
        j["input_format"] = cfg.input_format == BasebandFormat::kCsv ? "csv" : "interleaved-f32";
    }
    return j;
}

SummaryRow summary_row(const RunResult& r, const std::string& manifest) {
    return SummaryRow{
        .algorithm = std::string(algorithm_name(r.algorithm)),
        .sweep_param = r.sweep_param ? std::string(sweep_param_name(*r.sweep_param)) : std::string("none"),
        .sweep_value = r.sweep_param ? std::optional<double>(r.sweep_value) : std::nullopt,
        .steady_state_db = r.steady_state_db,
        .convergence_iter = r.convergence_iter,
        .cm_per_iteration = r.cm_per_iteration,
        .support_recovery = r.support_recovery,
        .manifest = manifest,
    };
}

} // namespace

std::string format_summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out =
        "algorithm,sweep_param,sweep_value,steady_state_db,convergence_iter,cm_per_iteration,support_recovery,manifest\n";
    for (const auto& r : rows) {
        out += fmt::format("{},{},{},{:.9g},{},{},{},{}\n", r.algorithm, r.sweep_param, optional_number(r.sweep_value),
                           r.steady_state_db, r.convergence_iter, r.cm_per_iteration,
                           optional_number(r.support_recovery), r.manifest);
    }
    return out;
}

RunManifest run_experiment(const ExperimentConfig& input_cfg, const fs::path& output_dir) {
    const auto started = std::chrono::steady_clock::now();
    ExperimentConfig cfg = input_cfg;

    std::optional<BasebandRecord> recorded;
    if (cfg.scenario == Scenario::kRealData) {
        cfg.validate();
        recorded = ingest_baseband(cfg.input, cfg.input_format);
        cfg.n_trials = 1;
        cfg.n_iterations = recorded->x.size();
    }
    cfg.validate();

    std::error_code ec;
    fs::create_directories(output_dir, ec);
    if (ec) throw IoError(ErrorCode::kIo, fmt::format("cannot create {}: {}", output_dir.string(), ec.message()));

    RunManifest manifest;
    manifest.config = cfg;
    manifest.output_dir = output_dir;
    manifest.manifest_path = output_dir / "manifest.json";
    manifest.summary_path = output_dir / "summary.csv";
    for (std::size_t i = 0; i < cfg.n_trials; ++i) manifest.seeds.push_back(cfg.base_seed + i);

    const std::string value_column = recorded ? "mse_db" : "msd_db";
    std::vector<SummaryRow> summary;

    for (const auto& point : sweep_points(cfg)) {
        const ExperimentConfig point_cfg = at_sweep_point(cfg, point);
        std::vector<TrialOutcome> trials(cfg.n_trials);
        parallel_for(cfg.n_trials, cfg.threads, [&](std::size_t i) {
            if (recorded) {
                trials[i] = run_trial(point_cfg, TrialData{recorded->x, recorded->y, std::nullopt});
            } else {
                trials[i] = run_trial(point_cfg, synthesize(point_cfg, manifest.seeds[i]));
            }
        });

        for (std::size_t a = 0; a < cfg.algorithms.size(); ++a) {
            const Algorithm alg = cfg.algorithms[a];
            RunResult result;
            result.algorithm = alg;
            result.sweep_param = point ? cfg.sweep_param : std::nullopt;
            result.sweep_value = point.value_or(0.0);
            std::vector<Trajectory> completed;
            double recovery_sum = 0.0;
            std::size_t full_recoveries = 0;
            for (std::size_t i = 0; i < trials.size(); ++i) {
                auto& o = trials[i][a];
                if (!o.trajectory) {
                    ++result.failed_trials;
                    result.failures.push_back(fmt::format("trial {} (seed {}): {}", i, manifest.seeds[i], o.failure));
                    continue;
                }
                completed.push_back(std::move(*o.trajectory));
                if (o.recovery) {
                    recovery_sum += *o.recovery;
                    if (*o.recovery == 1.0) ++full_recoveries;
                }
            }
            result.completed_trials = completed.size();
            manifest.total_trials += trials.size();
            manifest.failed_trials += result.failed_trials;

            const auto ecfg = effective_config(alg, point_cfg.estimator_config());
            result.cm_per_iteration = cm_count(alg, ecfg.L, ecfg.s).cm_per_iteration;
            if (!completed.empty()) {
                result.average = average_trajectories(completed);
                result.steady_state_db = steady_state_db(result.average);
                result.convergence_iter = convergence_iteration(result.average, result.steady_state_db);
                if (!recorded) {
                    const double count = static_cast<double>(completed.size());
                    result.support_recovery = recovery_sum / count;
                    result.full_recovery_fraction = static_cast<double>(full_recoveries) / count;
                }
                result.csv = csv_name(alg, result.sweep_param, point);
                write_text_file(output_dir / result.csv, format_trajectory_csv(result.average, value_column));
                summary.push_back(summary_row(result, manifest.manifest_path.filename().string()));
            } else {
                result.steady_state_db = std::nan("");
            }
            manifest.results.push_back(std::move(result));
        }
    }

    write_text_file(manifest.summary_path, format_summary_csv(summary));
    manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    json results = json::array();
    for (const auto& r : manifest.results) {
        json jr{
            {"algorithm", std::string(algorithm_name(r.algorithm))},
            {"sweep_param", r.sweep_param ? std::string(sweep_param_name(*r.sweep_param)) : std::string("none")},
            {"csv", r.csv},
            {"completed_trials", r.completed_trials},
            {"failed_trials", r.failed_trials},
            {"failures", r.failures},
            {"cm_per_iteration", r.cm_per_iteration},
        };
        if (r.sweep_param) jr["sweep_value"] = r.sweep_value;
        if (r.completed_trials > 0) jr["steady_state_db"] = r.steady_state_db;
        if (r.support_recovery) jr["support_recovery"] = *r.support_recovery;
        if (r.full_recovery_fraction) jr["full_recovery_fraction"] = *r.full_recovery_fraction;
        results.push_back(std::move(jr));
    }
    json doc{
        {"config", config_to_json(cfg)},
        {"seeds", manifest.seeds},
        {"results", results},
        {"summary", manifest.summary_path.filename().string()},
        {"total_trials", manifest.total_trials},
        {"failed_trials", manifest.failed_trials},
        {"wall_seconds", manifest.wall_seconds},
    };
    write_text_file(manifest.manifest_path, doc.dump(2) + "\n");
    return manifest;
}

std::vector<SummaryRow> compare_summary(const std::vector<fs::path>& manifests) {
    if (manifests.empty()) throw ParameterError("compare: no manifests given");
    std::vector<std::string> missing;
    std::vector<std::pair<fs::path, json>> docs;
    for (const auto& path : manifests) {
        std::ifstream in(path);
        if (!in) {
            missing.push_back(path.string());
            continue;
        }
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw IoError(ErrorCode::kMalformedRecord, fmt::format("{}: {}", path.string(), e.what()));
        }
        for (const auto& r : doc.value("results", json::array())) {
            const auto csv = r.value("csv", std::string{});
            if (!csv.empty() && !fs::exists(path.parent_path() / csv)) missing.push_back((path.parent_path() / csv).string());
        }
        docs.emplace_back(path, std::move(doc));
    }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing) list += "\n  " + m;
        throw IoError(ErrorCode::kFileNotFound, "missing artifacts:" + list);
    }

    std::vector<SummaryRow> rows;
    for (const auto& [path, doc] : docs) {
        try {
            for (const auto& r : doc.at("results")) {
                const auto csv = r.at("csv").get<std::string>();
                if (csv.empty()) continue; // every trial failed
                const auto t = read_trajectory_csv(path.parent_path() / csv);
                SummaryRow row;
                row.algorithm = r.at("algorithm").get<std::string>();
                row.sweep_param = r.value("sweep_param", std::string("none"));
                if (r.contains("sweep_value")) row.sweep_value = r.at("sweep_value").get<double>();
                row.steady_state_db = steady_state_db(t);
                row.convergence_iter = convergence_iteration(t, row.steady_state_db);
                row.cm_per_iteration = r.at("cm_per_iteration").get<unsigned long long>();
                if (r.contains("support_recovery")) row.support_recovery = r.at("support_recovery").get<double>();
                row.manifest = path.string();
                rows.push_back(std::move(row));
            }
        } catch (const json::exception& e) {
            throw IoError(ErrorCode::kMalformedRecord, fmt::format("{}: {}", path.string(), e.what()));
        }
    }
    return rows;
}

} // namespace spadsp
