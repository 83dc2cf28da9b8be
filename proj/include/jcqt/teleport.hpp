#pragma once

// Two-qubit teleportation through the projected atom-field channel.
//
// Single-copy protocol (FTP): Bell-basis outcome probabilities of the
// shared state drive a two-qubit Pauli correction channel. Its printed
// closed form (beta coefficients) and a brute-force channel composition are
// both available. Two-copy protocol (STP): closed form only (gamma
// coefficients).
//
// Register ordering is (|00>, |01>, |10>, |11>). The channel basis
// [|n,g>, |n,e>, |n+1,g>, |n+1,e>] maps onto it entry for entry.

#include <jcqt/channel.hpp>
#include <jcqt/linalg.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <string>

namespace jcqt {

enum class Protocol { FTP, STP };
enum class Construction { CLOSED_FORM, CHANNEL_ORACLE };
enum class ChannelMode { HERMITIAN, LITERAL };

inline const char* to_string(Protocol p) { return p == Protocol::FTP ? "ftp" : "stp"; }

/// cos(theta)|00> + exp(-i phi/2) sin(theta)|11>
struct InputState {
    double theta = 0.0;
    double phi = 0.0;
};

/// Range check theta in [0, pi], phi in [0, 2 pi]. The closed forms are
/// smooth in theta beyond that range, so derivative stencils skip this.
inline void validate(const InputState& s) {
    constexpr double pi = 3.14159265358979323846;
    if (!std::isfinite(s.theta) || s.theta < 0 || s.theta > pi)
        throw ValidationError("input state: theta must lie in [0, pi], got " + std::to_string(s.theta));
    if (!std::isfinite(s.phi) || s.phi < 0 || s.phi > 2 * pi)
        throw ValidationError("input state: phi must lie in [0, 2 pi], got " + std::to_string(s.phi));
}

/// Bell outcome indices, in the order used by every array below.
enum Outcome : int { kIdentity = 0, kX = 1, kY = 2, kZ = 3 };

/// p(i, j) = Tr[E^i rho] Tr[E^j rho], i, j over {0, x, y, z}.
template <typename Scalar>
struct OutcomeDistribution {
    Eigen::Matrix<Scalar, 4, 4> p = Eigen::Matrix<Scalar, 4, 4>::Zero();
};

template <typename Scalar>
struct BobState {
    DensityMatrix4<Scalar> rho;  // trace-normalized
    Scalar raw_trace{};
    Protocol protocol{};
    Construction construction{};
};

template <typename Scalar = double>
StateVector<Scalar> input_state_vector(const InputState& s) {
    using std::cos;
    using std::sin;
    const Scalar theta = Scalar(s.theta);
    StateVector<Scalar> psi = StateVector<Scalar>::Zero(4);
    psi(0) = cos(theta);
    psi(3) = std::polar(Scalar(1), -Scalar(s.phi) / Scalar(2)) * sin(theta);
    return psi;
}

template <typename Scalar = double>
DensityMatrix4<Scalar> input_density(const InputState& s) {
    const StateVector<Scalar> psi = input_state_vector<Scalar>(s);
    return psi * psi.adjoint();
}

/// {E^0, E^x, E^y, E^z} = {|psi-><psi-|, |phi-><phi-|, |phi+><phi+|, |psi+><psi+|}
/// with |psi+-> = (|01> +- |10>)/sqrt2 and |phi+-> = (|00> +- |11>)/sqrt2.
template <typename Scalar = double>
std::array<DensityMatrix4<Scalar>, 4> bell_projectors() {
    using V = Eigen::Matrix<std::complex<Scalar>, 4, 1>;
    const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
    V psi_minus(0, r, -r, 0), psi_plus(0, r, r, 0);
    V phi_minus(r, 0, 0, -r), phi_plus(r, 0, 0, r);
    return {psi_minus * psi_minus.adjoint(), phi_minus * phi_minus.adjoint(),
            phi_plus * phi_plus.adjoint(), psi_plus * psi_plus.adjoint()};
}

/// Relabels the channel basis as the two-qubit register; entries unchanged.
template <typename Scalar>
DensityMatrix4<Scalar> qubit_embedding(const DensityMatrix4<Scalar>& rho_s) {
    return rho_s;
}

template <typename Scalar>
OutcomeDistribution<Scalar> outcome_distribution(const DensityMatrix4<Scalar>& rho_ac) {
    if (std::abs(rho_ac.trace() - std::complex<Scalar>(1)) > Scalar(1e-10))
        throw ValidationError("outcome_distribution: shared state must have unit trace");
    const auto projectors = bell_projectors<Scalar>();
    Eigen::Matrix<Scalar, 4, 1> marginal;
    for (int i = 0; i < 4; ++i) {
        marginal(i) = (projectors[i] * rho_ac).trace().real();
        if (marginal(i) < Scalar(-1e-12))
            throw NumericError("outcome_distribution: negative Bell overlap " +
                               std::to_string(double(marginal(i))) + " for outcome " +
                               std::to_string(i));
    }
    OutcomeDistribution<Scalar> d;
    d.p = marginal * marginal.transpose();
    return d;
}

/// sigma_0 = I, then x, y, z.
template <typename Scalar = double>
Eigen::Matrix<std::complex<Scalar>, 2, 2> pauli(int index) {
    using C = std::complex<Scalar>;
    Eigen::Matrix<C, 2, 2> m;
    switch (index) {
        case kIdentity: m << 1, 0, 0, 1; break;
        case kX: m << 0, 1, 1, 0; break;
        case kY: m << 0, C(0, -1), C(0, 1), 0; break;
        case kZ: m << 1, 0, 0, -1; break;
        default: throw ValidationError("pauli: index must be 0..3");
    }
    return m;
}

/// sum_ij p_ij (s_i x s_j) rho (s_i x s_j) in HERMITIAN mode, a proper
/// Pauli channel. LITERAL mode puts (s_j x s_i) on the right, which is not
/// an adjoint conjugation; its output is returned as-is, possibly
/// non-Hermitian and not unit trace.
template <typename Scalar>
DensityMatrix4<Scalar> apply_pauli_channel(const DensityMatrix4<Scalar>& rho_un,
                                           const OutcomeDistribution<Scalar>& d,
                                           ChannelMode mode = ChannelMode::HERMITIAN) {
    DensityMatrix4<Scalar> out = DensityMatrix4<Scalar>::Zero();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (d.p(i, j) == Scalar(0)) continue;
            const DensityMatrix4<Scalar> left = kron(pauli<Scalar>(i), pauli<Scalar>(j));
            const DensityMatrix4<Scalar> right =
                mode == ChannelMode::HERMITIAN ? left
                                               : DensityMatrix4<Scalar>(kron(pauli<Scalar>(j), pauli<Scalar>(i)));
            out += d.p(i, j) * (left * rho_un * right);
        }
    return out;
}

// ---------------------------------------------------------------------------
// Closed forms

/// Entries of the printed single-copy Bob matrix
///   [[b1, 0, 0, b2], [0, 0, b3, 0], [0, b3*, 0, 0], [b2*, 0, 0, b4]].
template <typename Scalar>
struct FtpCoefficients {
    Scalar b1{};
    std::complex<Scalar> b2{};
    Scalar b3{};
    Scalar b4{};
};

/// Entries of the printed two-copy Bob matrix
///   [[g1, 0, 0, g4], [0, g2, 0, 0], [0, 0, g2, 0], [g4*, 0, 0, g3]].
template <typename Scalar>
struct StpCoefficients {
    Scalar g1{}, g2{}, g3{};
    std::complex<Scalar> g4{};
};

template <typename Scalar>
FtpCoefficients<Scalar> ftp_coefficients(const AlphaSet<Scalar>& a, const InputState& s) {
    using std::cos;
    using std::sin;
    const Scalar c = cos(Scalar(s.theta)), sn = sin(Scalar(s.theta));
    const Scalar two_re_a3 = Scalar(2) * a.a3.real();  // a3 + conj(a3)
    FtpCoefficients<Scalar> b;
    b.b1 = (a.a1 + a.a5) * (a.a1 + a.a5) * sn * sn + (a.a2 + a.a4) * (a.a2 + a.a4) * c * c;
    b.b2 = two_re_a3 * two_re_a3 * c * sn * std::polar(Scalar(1), Scalar(s.phi) / Scalar(2));
    b.b3 = (a.a1 + a.a5) * (a.a2 + a.a4);
    b.b4 = (a.a2 + a.a5) * (a.a2 + a.a5) * c * c + (a.a1 + a.a4) * (a.a1 + a.a4) * sn * sn;
    return b;
}

template <typename Scalar>
StpCoefficients<Scalar> stp_coefficients(const AlphaSet<Scalar>& a, const InputState& s) {
    using std::cos;
    using std::sin;
    const Scalar c2 = cos(Scalar(s.theta)) * cos(Scalar(s.theta));
    const Scalar s2 = sin(Scalar(s.theta)) * sin(Scalar(s.theta));
    StpCoefficients<Scalar> g;
    g.g1 = c2 * a.a1 * a.a1 + s2 * a.a4 * a.a4;
    g.g2 = c2 * a.a1 * a.a2 + s2 * a.a4 * a.a5;
    g.g3 = c2 * a.a2 * a.a2 + s2 * a.a5 * a.a5;
    g.g4 = cos(Scalar(s.theta)) * sin(Scalar(s.theta)) *
           std::polar(Scalar(1), -Scalar(s.phi) / Scalar(2)) * std::norm(a.a3);
    return g;
}

template <typename Scalar>
DensityMatrix4<Scalar> ftp_matrix(const FtpCoefficients<Scalar>& b) {
    DensityMatrix4<Scalar> m = DensityMatrix4<Scalar>::Zero();
    m(0, 0) = b.b1;
    m(0, 3) = b.b2;
    m(3, 0) = std::conj(b.b2);
    m(1, 2) = b.b3;
    m(2, 1) = b.b3;
    m(3, 3) = b.b4;
    return m;
}

template <typename Scalar>
DensityMatrix4<Scalar> stp_matrix(const StpCoefficients<Scalar>& g) {
    DensityMatrix4<Scalar> m = DensityMatrix4<Scalar>::Zero();
    m(0, 0) = g.g1;
    m(1, 1) = g.g2;
    m(2, 2) = g.g2;
    m(3, 3) = g.g3;
    m(0, 3) = g.g4;
    m(3, 0) = std::conj(g.g4);
    return m;
}

/// Un-normalized single-copy Bob matrix with trace b1 + b4.
template <typename Scalar>
DensityMatrix4<Scalar> ftp_raw_matrix(const AlphaSet<Scalar>& a, const InputState& s) {
    return ftp_matrix(ftp_coefficients(a, s));
}

/// Un-normalized two-copy Bob matrix with trace g1 + 2 g2 + g3.
template <typename Scalar>
DensityMatrix4<Scalar> stp_raw_matrix(const AlphaSet<Scalar>& a, const InputState& s) {
    return stp_matrix(stp_coefficients(a, s));
}

namespace detail {

template <typename Scalar>
BobState<Scalar> make_bob(const DensityMatrix4<Scalar>& raw, Protocol protocol,
                          Construction construction) {
    const auto normalized = normalize_trace(raw);
    return {normalized.matrix, normalized.raw_trace, protocol, construction};
}

}  // namespace detail

/// Single-copy Bob state. CLOSED_FORM normalizes the printed beta matrix
/// (which has an indefinite |01>,|10> block whenever b3 != 0).
/// CHANNEL_ORACLE composes Bell outcomes of the channel state with the
/// Pauli correction channel applied to |psi><psi|.
template <typename Scalar>
BobState<Scalar> bob_state_ftp(const AlphaSet<Scalar>& a, const InputState& s,
                               Construction construction = Construction::CLOSED_FORM,
                               ChannelMode mode = ChannelMode::HERMITIAN) {
    if (construction == Construction::CLOSED_FORM)
        return detail::make_bob(ftp_raw_matrix(a, s), Protocol::FTP, construction);
    const auto d = outcome_distribution(qubit_embedding(channel_state(a)));
    return detail::make_bob(apply_pauli_channel(input_density<Scalar>(s), d, mode), Protocol::FTP,
                            construction);
}

template <typename Scalar = double>
BobState<Scalar> bob_state_ftp(const ChannelParams& p, const InputState& s,
                               Construction construction = Construction::CLOSED_FORM,
                               ChannelMode mode = ChannelMode::HERMITIAN) {
    return bob_state_ftp(alpha_set<Scalar>(p), s, construction, mode);
}

/// Two-copy Bob state; only the closed form exists since the two-copy
/// measurement sequence is not modelled.
template <typename Scalar>
BobState<Scalar> bob_state_stp(const AlphaSet<Scalar>& a, const InputState& s,
                               Construction construction = Construction::CLOSED_FORM) {
    if (construction != Construction::CLOSED_FORM)
        throw ValidationError("bob_state_stp: no channel oracle for the two-copy protocol");
    return detail::make_bob(stp_raw_matrix(a, s), Protocol::STP, construction);
}

template <typename Scalar = double>
BobState<Scalar> bob_state_stp(const ChannelParams& p, const InputState& s,
                               Construction construction = Construction::CLOSED_FORM) {
    return bob_state_stp(alpha_set<Scalar>(p), s, construction);
}

/// Printed single-copy fidelity (not renormalized).
template <typename Scalar>
Scalar fidelity_closed_ftp(const AlphaSet<Scalar>& a, const InputState& s) {
    using std::cos;
    using std::sin;
    const Scalar c2 = cos(Scalar(s.theta)) * cos(Scalar(s.theta));
    const Scalar s2 = sin(Scalar(s.theta)) * sin(Scalar(s.theta));
    const Scalar sin2t = sin(Scalar(2) * Scalar(s.theta));
    const Scalar two_re_a3 = Scalar(2) * a.a3.real();
    const Scalar first = (a.a1 + a.a5) * (a.a1 + a.a5) * s2 + (a.a2 + a.a4) * (a.a2 + a.a4) * c2;
    const Scalar last = (a.a2 + a.a5) * (a.a2 + a.a5) * c2 + (a.a1 + a.a4) * (a.a1 + a.a4) * s2;
    return first * c2 + two_re_a3 * two_re_a3 * sin2t * sin2t / Scalar(2) + last * s2;
}

template <typename Scalar = double>
Scalar fidelity_closed_ftp(const ChannelParams& p, const InputState& s) {
    return fidelity_closed_ftp(alpha_set<Scalar>(p), s);
}

/// Printed two-copy fidelity, including its cross term
/// 4 cos^2 sin^2 (a3^2 + conj(a3)^2). This does not equal the overlap of
/// the two-copy Bob matrix with the input state, whose cross term is
/// 2 cos^2 sin^2 |a3|^2 cos(phi).
template <typename Scalar>
Scalar fidelity_closed_stp(const AlphaSet<Scalar>& a, const InputState& s) {
    using std::cos;
    using std::sin;
    const Scalar c2 = cos(Scalar(s.theta)) * cos(Scalar(s.theta));
    const Scalar s2 = sin(Scalar(s.theta)) * sin(Scalar(s.theta));
    const Scalar a3_sq_sum = Scalar(2) * (a.a3 * a.a3).real();
    return c2 * (c2 * a.a1 * a.a1 + s2 * a.a4 * a.a4) + s2 * (c2 * a.a2 * a.a2 + s2 * a.a5 * a.a5) +
           Scalar(4) * c2 * s2 * a3_sq_sum;
}

template <typename Scalar = double>
Scalar fidelity_closed_stp(const ChannelParams& p, const InputState& s) {
    return fidelity_closed_stp(alpha_set<Scalar>(p), s);
}

/// Re <psi|rho|psi> for a unit-trace rho.
template <typename Derived>
RealOf<Derived> fidelity_overlap(const Eigen::MatrixBase<Derived>& rho, const InputState& s) {
    using Scalar = RealOf<Derived>;
    if (std::abs(rho.trace() - std::complex<Scalar>(1)) > Scalar(1e-10))
        throw ValidationError("fidelity_overlap: state must have unit trace");
    return expectation(input_state_vector<Scalar>(s), rho).real();
}

}  // namespace jcqt
