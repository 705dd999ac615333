#include "spadsp/metrics.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "spadsp/error.hpp"

namespace spadsp {

double to_db(double linear) { return 10.0 * std::log10(std::max(linear, kMsdFloor)); }

double from_db(double db) { return std::pow(10.0, db / 10.0); }

double msd_linear(const ComplexVector& h_hat, const ComplexVector& h_true) {
    if (h_hat.size() != h_true.size()) {
        throw ParameterError(fmt::format("msd: length {} != {}", h_hat.size(), h_true.size()));
    }
    const double ref = h_true.squared_norm();
    if (!(ref > 0.0)) throw ParameterError("msd: reference channel has zero norm");
    const auto a = h_hat.span();
    const auto b = h_true.span();
    double err = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) err += std::norm(a[i] - b[i]);
    return err / ref;
}

double msd_db(const ComplexVector& h_hat, const ComplexVector& h_true) { return to_db(msd_linear(h_hat, h_true)); }

Trajectory average_trajectories(std::span<const Trajectory> trials) {
    if (trials.empty()) throw ParameterError("average_trajectories: no trials");
    const std::size_t n = trials.front().n_iterations();
    for (const auto& t : trials) {
        if (t.n_iterations() != n) {
            throw ParameterError(fmt::format("average_trajectories: ragged lengths {} vs {}", t.n_iterations(), n));
        }
    }
    std::vector<double> sum(n, 0.0);
    for (const auto& t : trials) {
        for (std::size_t i = 0; i < n; ++i) sum[i] += from_db(t.values_db[i]);
    }
    Trajectory out;
    out.values_db.resize(n);
    const double count = static_cast<double>(trials.size());
    for (std::size_t i = 0; i < n; ++i) out.values_db[i] = to_db(sum[i] / count);
    return out;
}

namespace {

constexpr std::size_t kMinSteadyStateLength = 50;

std::size_t steady_state_start(std::size_t n) { return n - n / 5; }

} // namespace

double steady_state_db(const Trajectory& t) {
    const std::size_t n = t.n_iterations();
    if (n < kMinSteadyStateLength) {
        throw ParameterError(fmt::format("steady_state_db: trajectory of {} iterations, need at least {}", n,
                                         kMinSteadyStateLength));
    }
    const std::size_t start = steady_state_start(n);
    // offsets from the first window value keep a constant tail exact
    const double ref = t.values_db[start];
    double acc = 0.0;
    for (std::size_t i = start; i < n; ++i) acc += t.values_db[i] - ref;
    return ref + acc / static_cast<double>(n - start);
}

std::size_t convergence_iteration(const Trajectory& t, double steady_state, double margin_db) {
    for (std::size_t i = 0; i < t.n_iterations(); ++i) {
        if (t.values_db[i] <= steady_state + margin_db) return i + 1;
    }
    return t.n_iterations();
}

double support_recovery_rate(const SupportSet& found, const SupportSet& truth) {
    if (truth.empty()) throw ParameterError("support_recovery_rate: empty reference support");
    const auto common = support_intersection(found, truth);
    return static_cast<double>(common.size()) / static_cast<double>(truth.size());
}

ComplexityReport cm_count(Algorithm algorithm, std::size_t L, std::size_t s) {
    if (L == 0) throw ParameterError("cm_count: L must be positive");
    const unsigned long long l = L;
    switch (algorithm) {
    case Algorithm::kRls:
    case Algorithm::kIrls:
        return {std::string(algorithm_name(algorithm)), L, L, 3 * l * l + 4 * l};
    case Algorithm::kSpadspRls:
    case Algorithm::kSpadspIrls: {
        if (s < 1 || s > L) throw ParameterError(fmt::format("cm_count: s = {} outside [1, {}]", s, L));
        const unsigned long long ss = s;
        return {std::string(algorithm_name(algorithm)), L, s, l * l + 2 * l * (ss + 1) + 10 * ss};
    }
    }
    throw ParameterError("cm_count: unknown algorithm");
}

} // namespace spadsp
