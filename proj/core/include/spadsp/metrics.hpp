#pragma once

#include <span>
#include <string>
#include <vector>

#include "spadsp/estimators.hpp"
#include "spadsp/numerics.hpp"

namespace spadsp {

struct Trajectory {
    std::vector<double> values_db;

    std::size_t n_iterations() const noexcept { return values_db.size(); }
};

inline constexpr double kMsdFloor = 1e-300;

// 10 log10(‖ĥ - h‖² / ‖h‖²), ratio floored at kMsdFloor.
double msd_db(const ComplexVector& h_hat, const ComplexVector& h_true);

// Squared-error ratio without the dB conversion.
double msd_linear(const ComplexVector& h_hat, const ComplexVector& h_true);

double to_db(double linear);
double from_db(double db);

// Elementwise mean in the linear domain, returned in dB.
Trajectory average_trajectories(std::span<const Trajectory> trials);

// Mean of the dB values over the final 20% of iterations.
double steady_state_db(const Trajectory& t);

// First (1-based) iteration within 3 dB of the steady-state value.
std::size_t convergence_iteration(const Trajectory& t, double steady_state, double margin_db = 3.0);

// |found ∩ truth| / |truth|
double support_recovery_rate(const SupportSet& found, const SupportSet& truth);

struct ComplexityReport {
    std::string algorithm;
    std::size_t L = 0;
    std::size_t s = 0;
    unsigned long long cm_per_iteration = 0;
};

// Complex multiplications per iteration: RLS 3L² + 4L, SpAdSP-IRLS L² + 2L(s+1) + 10s.
ComplexityReport cm_count(Algorithm algorithm, std::size_t L, std::size_t s);

} // namespace spadsp
