#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "zrp/bessel.hpp"
#include "zrp/core.hpp"

// Single-center generalized zero-range potential: the channel-l boundary
// condition D^{2l+1}(r^l psi)|_0 = -[alpha (2l+1)!/((2l+1)!!(2l-1)!!)] (r^l psi)|_0
// gives exp(2i eta_l) = (alpha - i k^{2l+1})/(alpha + i k^{2l+1}).

namespace zrp::gzrp {

using Complex = std::complex<double>;

Complex s_matrix_element(const Channel& ch, double k);

// tan eta_l = -k^{2l+1}/alpha_l; alpha = 0 maps to a signed infinity
// (eta = +-pi/2), alpha infinite to 0.
double tan_phase(const Channel& ch, double k);

// Imaginary-axis S-matrix pole. b > 0 on the physical sheet (bound),
// b < 0 antibound; energy is the magnitude alpha^{2/(2l+1)}/2.
struct ImaginaryPole {
    double b = 0.0;
    double energy = 0.0;
    bool bound = false;
};

// Bound state if (-1)^l alpha_l > 0, else antibound; empty for alpha = 0.
std::optional<ImaginaryPole> bound_state(const Channel& ch);

// All 2l+1 roots of alpha + i k^{2l+1} = 0: one imaginary-axis pole and
// 2l off-axis resonance poles (quasi-stationary states).
struct PoleSet {
    std::optional<ImaginaryPole> bound;
    std::optional<ImaginaryPole> antibound;
    std::vector<Complex> resonances;
};

PoleSet resonance_poles(const Channel& ch);

// Paper-normalized Riccati-Bessel pair (j_0 = sin, n_0 = cos).
inline bessel::Pair riccati_bessel(int l, double x) { return bessel::riccati(l, x); }

// GZRP boundary-condition coefficient: D^{2l+1}(r^l psi) = coeff * (r^l psi).
inline double boundary_coefficient(int l, double alpha) {
    return -alpha * std::tgamma(2.0 * l + 2.0) /
           (bessel::double_factorial(2 * l + 1) * bessel::double_factorial(2 * l - 1));
}

// Free single-center scattering wave psi_l = cos(eta) j_l + sin(eta) n_l.
double scattering_wave(const Channel& ch, double k, double r);

}  // namespace zrp::gzrp
