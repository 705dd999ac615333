#include "spadsp/estimators.hpp"

#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "spadsp/error.hpp"

namespace spadsp {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

void require_length(const ComplexVector& v, std::size_t L, const char* what) {
    if (v.size() != L) throw ParameterError(fmt::format("{}: length {} != L = {}", what, v.size(), L));
}

Complex rotation(double theta) { return std::polar(1.0, theta); }

} // namespace

void EstimatorConfig::validate() const {
    if (L == 0) throw ParameterError("L must be positive");
    if (s < 1 || s > L) throw ParameterError(fmt::format("s = {} outside [1, L = {}]", s, L));
    if (!(lambda > 0.0 && lambda <= 1.0)) throw ParameterError(fmt::format("lambda = {} outside (0, 1]", lambda));
    if (!(eta > 0.0 && eta <= 1.0)) throw ParameterError(fmt::format("eta = {} outside (0, 1]", eta));
    if (!(delta > 0.0) || !std::isfinite(delta)) throw ParameterError(fmt::format("delta = {} must be > 0", delta));
    if (!(mu > 0.0) || !std::isfinite(mu)) throw ParameterError(fmt::format("mu = {} must be > 0", mu));
    if (!std::isfinite(k1) || !std::isfinite(k2)) throw ParameterError("PLL gains must be finite");
}

EstimatorState init_state(const EstimatorConfig& cfg) {
    cfg.validate();
    const std::size_t L = cfg.L;
    return EstimatorState{
        .h_hat = ComplexVector(L),
        .h_tilde = ComplexVector(L),
        .p_proxy = ComplexVector(L),
        .P = Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(L), static_cast<Eigen::Index>(L)) / cfg.delta,
        .theta_hat = 0.0,
        .phi_sum = 0.0,
        .v_prev = std::nullopt,
        .lambda_set = SupportSet::leading(L, cfg.s),
        .lambda_s = SupportSet::leading(L, cfg.s),
        .pll_memory = std::nullopt,
        .iteration = 0,
    };
}

const ComplexVector& proxy_update(EstimatorState& state, const ComplexVector& x_window, const EstimatorConfig& cfg) {
    require_length(x_window, cfg.L, "proxy_update");
    if (!state.v_prev) throw ParameterError("proxy_update: no previous residual v(n-1)");
    const Complex scale = std::conj(rotation(state.theta_hat)) * *state.v_prev;
    auto p = state.p_proxy.span();
    const auto x = x_window.span();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = cfg.eta * p[i] + std::conj(x[i]) * scale;
    return state.p_proxy;
}

const SupportSet& merge_support(EstimatorState& state, const EstimatorConfig& cfg) {
    state.lambda_set = support_union(top_s_support(state.p_proxy, cfg.s), state.lambda_s);
    // ĥ is carried on Λ only; taps leaving Λ restart from zero when renominated.
    if (state.lambda_set.size() < cfg.L) state.h_hat = sparsify(state.h_hat, state.lambda_set);
    return state.lambda_set;
}

ComplexVector compute_gain(const EstimatorState& state, const ComplexVector& x_masked, const EstimatorConfig& cfg) {
    require_length(x_masked, cfg.L, "compute_gain");
    const auto x = x_masked.span();
    const auto& P = state.P;
    const auto L = static_cast<Eigen::Index>(cfg.L);

    // P x over the nonzero columns only
    ComplexVector Px(cfg.L);
    auto px = Px.span();
    for (Eigen::Index j = 0; j < L; ++j) {
        const Complex xj = x[static_cast<std::size_t>(j)];
        if (xj == Complex{}) continue;
        for (Eigen::Index i = 0; i < L; ++i) px[static_cast<std::size_t>(i)] += P(i, j) * xj;
    }
    Complex quad{};
    for (std::size_t i = 0; i < x.size(); ++i) quad += std::conj(x[i]) * px[i];
    const double denom = cfg.lambda + quad.real();
    if (!std::isfinite(denom) || denom <= 0.0) {
        throw NumericalFailure(fmt::format("compute_gain: gain denominator {} at iteration {}", denom, state.iteration));
    }
    const Complex scale = rotation(state.theta_hat) / denom;
    for (auto& c : px) {
        c *= scale;
        if (!finite(c)) throw NumericalFailure(fmt::format("compute_gain: nonfinite gain at iteration {}", state.iteration));
    }
    return Px;
}

Complex apriori_error(const EstimatorState& state, const ComplexVector& x_window, Complex y) {
    require_length(x_window, state.h_hat.size(), "apriori_error");
    const auto h = state.h_hat.span();
    const auto x = x_window.span();
    Complex pred{};
    for (std::size_t i : state.lambda_set) pred += std::conj(h[i]) * x[i];
    return y - rotation(state.theta_hat) * pred;
}

void coeff_update(EstimatorState& state, const ComplexVector& k, Complex e, const EstimatorConfig& cfg) {
    require_length(k, cfg.L, "coeff_update");
    const Complex step = cfg.mu * std::conj(e);
    auto h = state.h_hat.span();
    const auto kk = k.span();
    for (std::size_t i : state.lambda_set) {
        h[i] += kk[i] * step;
        if (!finite(h[i])) {
            throw NumericalFailure(fmt::format("coeff_update: nonfinite coefficient at iteration {}", state.iteration));
        }
    }
}

void covariance_update(EstimatorState& state, const ComplexVector& k, const ComplexVector& x_masked,
                       const EstimatorConfig& cfg) {
    require_length(k, cfg.L, "covariance_update");
    require_length(x_masked, cfg.L, "covariance_update");
    auto& P = state.P;
    const auto L = static_cast<Eigen::Index>(cfg.L);
    const auto x = x_masked.span();
    const auto kk = k.span();

    // r = x_Λ^H P, touching only rows in the support of x
    std::vector<Eigen::Index> rows;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] != Complex{}) rows.push_back(static_cast<Eigen::Index>(i));
    }
    Eigen::RowVectorXcd r(L);
    for (Eigen::Index j = 0; j < L; ++j) {
        Complex acc{};
        for (Eigen::Index i : rows) acc += std::conj(x[static_cast<std::size_t>(i)]) * P(i, j);
        r(j) = acc;
    }

    const Complex back_rotation = std::conj(rotation(state.theta_hat));
    const double inv_lambda = 1.0 / cfg.lambda;
    for (Eigen::Index j = 0; j < L; ++j) r(j) *= back_rotation;

    // rank-one update fused with P <- (P + P^H) / 2, one pass over each (i, j) pair
    const auto bad = [&] {
        return NumericalFailure(fmt::format("covariance_update: nonfinite P at iteration {}", state.iteration));
    };
    for (Eigen::Index j = 0; j < L; ++j) {
        const Complex kj = kk[static_cast<std::size_t>(j)];
        const Complex rj = r(j);
        const double diag = ((P(j, j) - kj * rj) * inv_lambda).real();
        if (!std::isfinite(diag)) throw bad();
        P(j, j) = diag;
        for (Eigen::Index i = j + 1; i < L; ++i) {
            const Complex lower = P(i, j) - kk[static_cast<std::size_t>(i)] * rj;
            const Complex upper = P(j, i) - kj * r(i);
            const Complex avg = 0.5 * inv_lambda * (lower + std::conj(upper));
            if (!finite(avg)) throw bad();
            P(i, j) = avg;
            P(j, i) = std::conj(avg);
        }
    }
}

const SupportSet& prune(EstimatorState& state, const EstimatorConfig& cfg) {
    state.lambda_s = top_s_support(state.h_hat, cfg.s, state.lambda_set);
    state.h_tilde = sparsify(state.h_hat, state.lambda_s);
    return state.lambda_s;
}

Complex residual(EstimatorState& state, const ComplexVector& x_window, Complex y) {
    require_length(x_window, state.h_tilde.size(), "residual");
    const auto h = state.h_tilde.span();
    const auto x = x_window.span();
    Complex pred{};
    for (std::size_t i : state.lambda_s) pred += std::conj(h[i]) * x[i];
    const Complex v = y - rotation(state.theta_hat) * pred;
    state.v_prev = v;
    return v;
}

double phase_detector(Complex y, double theta, const ComplexVector& h_hat, const ComplexVector& x_window) {
    const auto h = h_hat.span();
    const auto x = x_window.span();
    Complex pred{};
    for (std::size_t i = 0; i < h.size(); ++i) pred += std::conj(h[i]) * x[i];
    return (std::conj(y) * rotation(theta) * pred).imag();
}

double pll_update(EstimatorState& state, const ComplexVector& x_window, Complex y, const EstimatorConfig& cfg) {
    if (!cfg.pll_enabled) return state.theta_hat;
    const double theta_used = state.theta_hat;
    if (state.pll_memory) {
        const auto& m = *state.pll_memory;
        const double phi = phase_detector(m.y, m.theta, m.h_hat, m.x_window);
        state.phi_sum += phi;
        state.theta_hat += cfg.k1 * phi + cfg.k2 * state.phi_sum;
        if (!std::isfinite(state.theta_hat)) {
            throw NumericalFailure(fmt::format("pll_update: nonfinite phase at iteration {}", state.iteration));
        }
    }
    state.pll_memory = PllMemory{y, x_window, state.h_hat, theta_used};
    return state.theta_hat;
}

StepOutput spadsp_irls_step(EstimatorState& state, const ComplexVector& x_window, Complex y,
                            const EstimatorConfig& cfg) {
    require_length(x_window, cfg.L, "spadsp_irls_step");
    ++state.iteration;
    if (!state.v_prev) state.v_prev = y; // v(0) = y(1)

    proxy_update(state, x_window, cfg);
    merge_support(state, cfg);
    const ComplexVector x_masked = apply_mask(x_window, state.lambda_set);
    ComplexVector k = compute_gain(state, x_masked, cfg);
    const Complex e = apriori_error(state, x_window, y);
    coeff_update(state, k, e, cfg);
    covariance_update(state, k, x_masked, cfg);
    prune(state, cfg);
    const Complex v = residual(state, x_window, y);
    pll_update(state, x_window, y, cfg);

    return StepOutput{e, v, state.h_tilde, state.lambda_s, std::move(k), state.lambda_set};
}

StepOutput irls_step(EstimatorState& state, const ComplexVector& x_window, Complex y, const EstimatorConfig& cfg) {
    require_length(x_window, cfg.L, "irls_step");
    ++state.iteration;
    const auto L = static_cast<Eigen::Index>(cfg.L);
    const Eigen::Map<const Eigen::VectorXcd> x(x_window.span().data(), L);
    Eigen::Map<Eigen::VectorXcd> h(state.h_hat.span().data(), L);
    auto& P = state.P;

    const Complex rot = rotation(state.theta_hat);
    const Eigen::VectorXcd Px = P * x;
    const double denom = cfg.lambda + x.dot(Px).real(); // dot() conjugates the left operand
    if (!std::isfinite(denom) || denom <= 0.0) {
        throw NumericalFailure(fmt::format("irls_step: gain denominator {} at iteration {}", denom, state.iteration));
    }
    const Eigen::VectorXcd k = (rot / denom) * Px;
    const Complex e = y - rot * h.dot(x);
    h += (cfg.mu * std::conj(e)) * k;

    const Eigen::RowVectorXcd xhP = x.adjoint() * P;
    P.noalias() -= (std::conj(rot) * k) * xhP;
    P *= 1.0 / cfg.lambda;
    for (Eigen::Index j = 0; j < L; ++j) {
        P(j, j) = P(j, j).real();
        for (Eigen::Index i = j + 1; i < L; ++i) {
            const Complex avg = 0.5 * (P(i, j) + std::conj(P(j, i)));
            P(i, j) = avg;
            P(j, i) = std::conj(avg);
        }
    }
    if (!P.allFinite() || !k.allFinite() || !h.allFinite()) {
        throw NumericalFailure(fmt::format("irls_step: nonfinite state at iteration {}", state.iteration));
    }

    state.h_tilde = state.h_hat;
    state.lambda_set = SupportSet::full(cfg.L);
    state.lambda_s = state.lambda_set;
    const Complex v = y - rot * h.dot(x);
    state.v_prev = v;
    pll_update(state, x_window, y, cfg);

    ComplexVector gain(std::vector<Complex>(k.data(), k.data() + k.size()));
    return StepOutput{e, v, state.h_tilde, state.lambda_s, std::move(gain), state.lambda_set};
}

StepOutput rls_step(EstimatorState& state, const ComplexVector& x_window, Complex y, const EstimatorConfig& cfg) {
    EstimatorConfig unit = cfg;
    unit.mu = 1.0;
    return irls_step(state, x_window, y, unit);
}

double hermitian_defect(const Eigen::MatrixXcd& P) { return (P - P.adjoint()).cwiseAbs().maxCoeff(); }

std::string_view algorithm_name(Algorithm a) noexcept {
    switch (a) {
    case Algorithm::kRls: return "rls";
    case Algorithm::kIrls: return "irls";
    case Algorithm::kSpadspRls: return "spadsp_rls";
    case Algorithm::kSpadspIrls: return "spadsp_irls";
    }
    return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
    for (Algorithm a : {Algorithm::kRls, Algorithm::kIrls, Algorithm::kSpadspRls, Algorithm::kSpadspIrls}) {
        if (algorithm_name(a) == name) return a;
    }
    throw ParameterError(fmt::format("unknown algorithm '{}' (expected rls, irls, spadsp_rls, spadsp_irls)", name));
}

bool is_sparse(Algorithm a) noexcept { return a == Algorithm::kSpadspRls || a == Algorithm::kSpadspIrls; }

EstimatorConfig effective_config(Algorithm algorithm, EstimatorConfig cfg) {
    if (!is_sparse(algorithm)) cfg.s = cfg.L;
    if (algorithm == Algorithm::kRls || algorithm == Algorithm::kSpadspRls) cfg.mu = 1.0;
    return cfg;
}

ChannelEstimator::ChannelEstimator(Algorithm algorithm, EstimatorConfig cfg)
    : algorithm_(algorithm), cfg_(effective_config(algorithm, cfg)), state_(init_state(cfg_)) {}

StepOutput ChannelEstimator::step(const ComplexVector& x_window, Complex y) {
    switch (algorithm_) {
    case Algorithm::kRls: return rls_step(state_, x_window, y, cfg_);
    case Algorithm::kIrls: return irls_step(state_, x_window, y, cfg_);
    case Algorithm::kSpadspRls:
    case Algorithm::kSpadspIrls: return spadsp_irls_step(state_, x_window, y, cfg_);
    }
    throw ParameterError("unknown algorithm");
}

} // namespace spadsp
