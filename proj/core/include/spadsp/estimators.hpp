#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>

#include "spadsp/numerics.hpp"

namespace spadsp {

struct EstimatorConfig {
    std::size_t L = 64;   // taps
    std::size_t s = 12;   // support size
    double mu = 1.0;      // coefficient step size
    double lambda = 0.99; // covariance forgetting factor
    double delta = 100.0; // P(0) = I / delta
    double eta = 0.5;     // proxy forgetting factor
    double k1 = 0.0;      // PLL proportional gain
    double k2 = 0.0;      // PLL integral gain
    bool pll_enabled = false;

    // Throws ParameterError naming the first violated constraint.
    void validate() const;
};

// One-step memory of the phase tracker: quantities from the previous iteration.
struct PllMemory {
    Complex y;
    ComplexVector x_window;
    ComplexVector h_hat;
    double theta = 0.0;
};

struct EstimatorState {
    ComplexVector h_hat;   // intermediate estimate ĥ
    ComplexVector h_tilde; // applied (pruned) estimate h̃
    ComplexVector p_proxy; // proxy p(n)
    Eigen::MatrixXcd P;    // inverse input covariance
    double theta_hat = 0.0;
    double phi_sum = 0.0;
    std::optional<Complex> v_prev;
    SupportSet lambda_set; // Λ
    SupportSet lambda_s;   // Λ_s
    std::optional<PllMemory> pll_memory;
    std::size_t iteration = 0;
};

struct StepOutput {
    Complex apriori_error;   // e(n|n-1)
    Complex residual;        // v(n)
    ComplexVector h_applied; // h̃(n)
    SupportSet support;      // Λ_s
    ComplexVector gain;      // k(n), kept for diagnostics
    SupportSet active_set;   // Λ used for this update
};

EstimatorState init_state(const EstimatorConfig& cfg);

// p(n) = η p(n-1) + e^{-jθ̂} x*(n) v(n-1). Stores and returns p(n).
// On the first sample v(0) must already be seeded (spadsp_irls_step does this).
const ComplexVector& proxy_update(EstimatorState& state, const ComplexVector& x_window, const EstimatorConfig& cfg);

// Λ = supp(p(n), s) ∪ Λ_s(n-1). ĥ is zeroed outside the new Λ.
const SupportSet& merge_support(EstimatorState& state, const EstimatorConfig& cfg);

// k(n) = e^{jθ̂} P x_Λ / (λ + x_Λ^H P x_Λ).
ComplexVector compute_gain(const EstimatorState& state, const ComplexVector& x_masked, const EstimatorConfig& cfg);

// e(n|n-1) = y - e^{jθ̂} ĥ_Λ^H x_Λ.
Complex apriori_error(const EstimatorState& state, const ComplexVector& x_window, Complex y);

// ĥ_Λ += μ k_Λ e*. Entries outside Λ are untouched.
void coeff_update(EstimatorState& state, const ComplexVector& k, Complex e, const EstimatorConfig& cfg);

// P = λ^{-1} [P - e^{-jθ̂} k (x_Λ^H P)], followed by Hermitian symmetrization.
void covariance_update(EstimatorState& state, const ComplexVector& k, const ComplexVector& x_masked,
                       const EstimatorConfig& cfg);

// Λ_s = top-s of ĥ over Λ; h̃ = ĥ on Λ_s, zero elsewhere.
const SupportSet& prune(EstimatorState& state, const EstimatorConfig& cfg);

// v(n) = y - e^{jθ̂} h̃^H x. Stored as v_prev.
Complex residual(EstimatorState& state, const ComplexVector& x_window, Complex y);

// Second-order PLL. Uses the sample, window, ĥ and θ̂ retained from the
// previous iteration to form φ(n-1); the new θ̂ applies from the next sample.
double pll_update(EstimatorState& state, const ComplexVector& x_window, Complex y, const EstimatorConfig& cfg);

// φ = Im(y* e^{jθ} ĥ^H x)
double phase_detector(Complex y, double theta, const ComplexVector& h_hat, const ComplexVector& x_window);

StepOutput spadsp_irls_step(EstimatorState& state, const ComplexVector& x_window, Complex y,
                            const EstimatorConfig& cfg);

// Exponentially weighted RLS over all taps with step size μ (IRLS). Dense
// implementation without any support machinery.
StepOutput irls_step(EstimatorState& state, const ComplexVector& x_window, Complex y, const EstimatorConfig& cfg);

// Standard RLS: irls_step with μ = 1.
StepOutput rls_step(EstimatorState& state, const ComplexVector& x_window, Complex y, const EstimatorConfig& cfg);

// Max elementwise |P - P^H|.
double hermitian_defect(const Eigen::MatrixXcd& P);

enum class Algorithm { kRls, kIrls, kSpadspRls, kSpadspIrls };

std::string_view algorithm_name(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view name);
bool is_sparse(Algorithm a) noexcept;

/// Owns a configuration and state for one algorithm variant and dispatches
/// steps to the matching recursion.
class ChannelEstimator {
public:
    ChannelEstimator(Algorithm algorithm, EstimatorConfig cfg);

    StepOutput step(const ComplexVector& x_window, Complex y);

    Algorithm algorithm() const noexcept { return algorithm_; }
    const EstimatorConfig& config() const noexcept { return cfg_; }
    const EstimatorState& state() const noexcept { return state_; }

private:
    Algorithm algorithm_;
    EstimatorConfig cfg_;
    EstimatorState state_;
};

// The configuration actually run for an algorithm: RLS/IRLS force s = L,
// RLS and SpAdSP-RLS force μ = 1.
EstimatorConfig effective_config(Algorithm algorithm, EstimatorConfig cfg);

} // namespace spadsp
