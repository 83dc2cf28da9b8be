#pragma once

// Projected Jaynes-Cummings atom-field state restricted to the
// {|n>, |n+1>} x {|g>, |e>} subspace. The atom starts excited and the
// field in a coherent state; the closed-form evolved state is projected,
// never integrated.

#include <jcqt/linalg.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <string>

namespace jcqt {

struct ChannelParams {
    int n = 2;          // Fock reference index
    double nbar = 2.0;  // mean photon number
    double delta = 0.0; // detuning / (2 * coupling)
    double tau = 0.0;   // coupling * time
};

inline void validate(const ChannelParams& p) {
    if (p.n < 0) throw ValidationError("channel: n must be >= 0, got " + std::to_string(p.n));
    if (!std::isfinite(p.nbar) || p.nbar < 0)
        throw ValidationError("channel: nbar must be finite and >= 0, got " + std::to_string(p.nbar));
    if (!std::isfinite(p.delta))
        throw ValidationError("channel: delta must be finite");
    if (!std::isfinite(p.tau) || p.tau < 0)
        throw ValidationError("channel: tau must be finite and >= 0, got " + std::to_string(p.tau));
}

/// The five projection coefficients. a1, a2, a4, a5 are the diagonal
/// populations of |n,g>, |n,e>, |n+1,g>, |n+1,e>; a3 is the coherence
/// <n,e|rho|n+1,g>.
///
/// `norm` is the normalization N. For large nbar it underflows in double,
/// so `log_norm` = ln N is kept alongside and is always finite.
template <typename Scalar>
struct AlphaSet {
    Scalar a1{}, a2{}, a4{}, a5{};
    std::complex<Scalar> a3{};
    Scalar norm{};
    Scalar log_norm{};
};

/// ln P_k^2 = -nbar + k ln(nbar) - ln k!. Returns -inf for nbar = 0, k > 0.
template <typename Scalar>
Scalar log_coherent_weight_sq(Scalar nbar, int k) {
    using std::lgamma;
    using std::log;
    if (nbar < Scalar(0)) throw ValidationError("coherent_weight: nbar must be >= 0");
    if (k < 0) return -std::numeric_limits<Scalar>::infinity();
    if (nbar == Scalar(0)) return k == 0 ? Scalar(0) : -std::numeric_limits<Scalar>::infinity();
    return -nbar + Scalar(k) * log(nbar) - lgamma(Scalar(k) + Scalar(1));
}

/// Coherent-state amplitude P_k = exp(-nbar/2) sqrt(nbar^k / k!), evaluated
/// in log space.
template <typename Scalar>
Scalar coherent_weight(Scalar nbar, int k) {
    using std::exp;
    if (k < 0) throw ValidationError("coherent_weight: k must be >= 0");
    return exp(log_coherent_weight_sq(nbar, k) / Scalar(2));
}

/// Generalized Rabi frequency sqrt(delta^2 + x).
template <typename Scalar>
Scalar rabi(Scalar delta, Scalar x) {
    using std::sqrt;
    if (x < Scalar(0)) throw ValidationError("rabi: x must be >= 0");
    return sqrt(delta * delta + x);
}

/// Projection coefficients from the closed-form evolved state.
///
/// The a1 term oscillates at rabi(delta, n); every other term at
/// rabi(delta, n + 1). For n = 0 there is no |n-1> neighbour and a1 = 0.
/// The three Poisson weights are rescaled by their common maximum before
/// forming N, so the ratios stay exact at nbar ~ 1000.
template <typename Scalar = double>
AlphaSet<Scalar> alpha_set(const ChannelParams& params) {
    using std::cos;
    using std::exp;
    using std::log;
    using std::sin;
    validate(params);
    using C = std::complex<Scalar>;

    const int n = params.n;
    const Scalar nbar = Scalar(params.nbar);
    const Scalar delta = Scalar(params.delta);
    const Scalar tau = Scalar(params.tau);
    const Scalar d2 = delta * delta;

    const Scalar lw_lo = n >= 1 ? log_coherent_weight_sq(nbar, n - 1)
                                : -std::numeric_limits<Scalar>::infinity();
    const Scalar lw_mid = log_coherent_weight_sq(nbar, n);
    const Scalar lw_hi = log_coherent_weight_sq(nbar, n + 1);
    const Scalar scale = std::max({lw_lo, lw_mid, lw_hi});
    if (!std::isfinite(double(scale)))
        throw NumericError("alpha_set: all coherent weights vanish (nbar = " +
                           std::to_string(params.nbar) + ", n = " + std::to_string(n) + ")");
    const Scalar w_lo = exp(lw_lo - scale);
    const Scalar w_mid = exp(lw_mid - scale);
    const Scalar w_hi = exp(lw_hi - scale);

    const Scalar omega_hi = rabi(delta, Scalar(n + 1));
    const Scalar s_hi = sin(tau * omega_hi);
    const Scalar c_hi = cos(tau * omega_hi);
    // |<n,e| amplitude|^2 / P^2: cos^2 + delta^2/(delta^2+n+1) sin^2
    const Scalar excited = c_hi * c_hi + d2 / (d2 + Scalar(n + 1)) * s_hi * s_hi;
    const Scalar lowered = Scalar(n + 1) / (d2 + Scalar(n + 1)) * s_hi * s_hi;

    Scalar lower_neighbour = 0;
    if (n >= 1) {
        const Scalar omega_lo = rabi(delta, Scalar(n));
        const Scalar s_lo = sin(tau * omega_lo);
        lower_neighbour = Scalar(n) / (d2 + Scalar(n)) * s_lo * s_lo;
    }

    const Scalar scaled_norm = w_mid + lower_neighbour * w_lo + excited * w_hi;
    if (!(scaled_norm >= Scalar(1e-300)))
        throw NumericError("alpha_set: normalization underflow at tau = " +
                           std::to_string(params.tau));

    AlphaSet<Scalar> out;
    out.a1 = w_lo * lower_neighbour / scaled_norm;
    out.a2 = w_mid * excited / scaled_norm;
    out.a4 = w_mid * lowered / scaled_norm;
    out.a5 = w_hi * excited / scaled_norm;

    const C i(0, 1);
    const C detune_phase = std::polar(Scalar(1), -delta * tau);
    const C bracket = C(c_hi, 0) - i * (delta * s_hi / omega_hi);
    const Scalar amp = w_mid * std::sqrt(Scalar(n + 1)) / (scaled_norm * omega_hi) * s_hi;
    out.a3 = i * amp * detune_phase * bracket;

    out.log_norm = scale + log(scaled_norm);
    out.norm = exp(out.log_norm);
    return out;
}

/// 4x4 projected state in the basis [|n,g>, |n,e>, |n+1,g>, |n+1,e>].
template <typename Scalar>
DensityMatrix4<Scalar> channel_state(const AlphaSet<Scalar>& a) {
    DensityMatrix4<Scalar> rho = DensityMatrix4<Scalar>::Zero();
    rho(0, 0) = a.a1;
    rho(1, 1) = a.a2;
    rho(2, 2) = a.a4;
    rho(3, 3) = a.a5;
    rho(1, 2) = a.a3;
    rho(2, 1) = std::conj(a.a3);
    return rho;
}

template <typename Scalar = double>
DensityMatrix4<Scalar> channel_state(const ChannelParams& params) {
    return channel_state(alpha_set<Scalar>(params));
}

}  // namespace jcqt
