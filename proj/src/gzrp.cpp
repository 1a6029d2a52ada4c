#include "zrp/gzrp.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace zrp::gzrp {

namespace {

double k_pow_odd(double k, int l) {
    double p = k;
    for (int i = 0; i < 2 * l; ++i) p *= k;
    return p;  // k^{2l+1}
}

}  // namespace

Complex s_matrix_element(const Channel& ch, double k) {
    if (!(k > 0.0)) throw std::domain_error("s_matrix_element: k must be positive");
    if (ch.alpha.is_infinite()) return {1.0, 0.0};
    const double kp = k_pow_odd(k, ch.l);
    return (ch.alpha.value - Complex(0, 1) * kp) / (ch.alpha.value + Complex(0, 1) * kp);
}

double tan_phase(const Channel& ch, double k) {
    if (!(k > 0.0)) throw std::domain_error("tan_phase: k must be positive");
    if (ch.alpha.is_infinite()) return 0.0;
    const double kp = k_pow_odd(k, ch.l);
    if (ch.alpha.value == 0.0)
        return -std::copysign(std::numeric_limits<double>::infinity(), ch.alpha.value);
    return -kp / ch.alpha.value;
}

std::optional<ImaginaryPole> bound_state(const Channel& ch) {
    if (ch.alpha.is_infinite())
        throw std::domain_error("bound_state: alpha must be finite");
    const double a = ch.alpha.value;
    if (a == 0.0) return std::nullopt;
    const int l = ch.l;
    const double sgn = (l % 2 == 0) ? 1.0 : -1.0;
    const double mag = std::pow(std::abs(a), 1.0 / (2.0 * l + 1.0));
    const double energy = 0.5 * std::pow(a * a, 1.0 / (2.0 * l + 1.0));
    ImaginaryPole p;
    p.bound = sgn * a > 0.0;
    p.b = p.bound ? mag : -mag;
    p.energy = energy;
    return p;
}

PoleSet resonance_poles(const Channel& ch) {
    if (ch.alpha.is_infinite() || ch.alpha.value == 0.0)
        throw std::domain_error("resonance_poles: alpha must be finite and nonzero");
    const int l = ch.l;
    const double a = ch.alpha.value;
    const int m = 2 * l + 1;

    // k^{2l+1} = i alpha, so the roots are |alpha|^{1/m} exp(i(theta+2 pi j)/m)
    const double rho = std::pow(std::abs(a), 1.0 / m);
    const double theta = (a > 0) ? std::numbers::pi / 2 : -std::numbers::pi / 2;

    PoleSet out;
    for (int j = 0; j < m; ++j) {
        const double phi = (theta + 2.0 * std::numbers::pi * j) / m;
        Complex p = rho * Complex(std::cos(phi), std::sin(phi));
        if (std::abs(p.real()) < 1e-14 * rho) {
            ImaginaryPole ip;
            ip.b = p.imag();
            ip.bound = ip.b > 0.0;
            ip.energy = 0.5 * std::pow(a * a, 1.0 / m);
            if (ip.bound)
                out.bound = ip;
            else
                out.antibound = ip;
        } else {
            out.resonances.push_back(p);
        }
    }
    return out;
}

double scattering_wave(const Channel& ch, double k, double r) {
    const double t = tan_phase(ch, k);
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const auto [j, n] = bessel::riccati(ch.l, k * r);
    return c * j + s * n;
}

}  // namespace zrp::gzrp
