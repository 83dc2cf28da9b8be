#pragma once

// Random one-parameter density families with exact derivatives, used to
// exercise the QFI engines away from the teleportation closed forms.

#include <jcqt/channel.hpp>
#include <jcqt/linalg.hpp>
#include <jcqt/teleport.hpp>

#include <random>

namespace jcqt {

/// rho(xi) = M(xi) / Tr M(xi) with M = A A^dagger, A(xi) = A0 + xi A1, both
/// 4 x rank complex Gaussian. Evaluated at xi = 0, with
/// d rho = M' / t - M t' / t^2.
template <typename Scalar = double>
struct DensityPair {
    DensityMatrix4<Scalar> rho;
    DensityMatrix4<Scalar> drho;
};

template <typename Scalar = double, typename Rng>
DensityPair<Scalar> random_density_pair(Rng& rng, int rank = 4) {
    using C = std::complex<Scalar>;
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::Matrix<C, 4, Eigen::Dynamic> a0(4, rank), a1(4, rank);
    for (int j = 0; j < rank; ++j)
        for (int i = 0; i < 4; ++i) {
            a0(i, j) = C(Scalar(gauss(rng)), Scalar(gauss(rng)));
            a1(i, j) = C(Scalar(gauss(rng)), Scalar(gauss(rng)));
        }
    const DensityMatrix4<Scalar> m = a0 * a0.adjoint();
    const DensityMatrix4<Scalar> dm = a1 * a0.adjoint() + a0 * a1.adjoint();
    const Scalar t = m.trace().real();
    const Scalar dt = dm.trace().real();
    DensityPair<Scalar> out{m / t, dm / t - m * (dt / (t * t))};
    out.drho = (out.drho + out.drho.adjoint()).eval() / Scalar(2);
    return out;
}

/// Parameter draw over n in {1..5}, nbar in [0.5, 1000], delta in [0, 2],
/// tau in [0, 50].
template <typename Rng>
ChannelParams random_channel_params(Rng& rng) {
    std::uniform_int_distribution<int> n(1, 5);
    std::uniform_real_distribution<double> nbar(0.5, 1000.0), delta(0.0, 2.0), tau(0.0, 50.0);
    ChannelParams p;
    p.n = n(rng);
    p.nbar = nbar(rng);
    p.delta = delta(rng);
    p.tau = tau(rng);
    return p;
}

/// theta in [0, pi], phi in [0, 2 pi].
template <typename Rng>
InputState random_input_state(Rng& rng) {
    std::uniform_real_distribution<double> theta(0.0, 3.14159265358979323846),
        phi(0.0, 2 * 3.14159265358979323846);
    const double t = theta(rng);
    return {t, phi(rng)};
}

}  // namespace jcqt
