#include "zrp/bessel.hpp"

#include <cmath>
#include <vector>

namespace zrp::bessel {

double double_factorial(int n) {
    if (n <= 0) return 1.0;  // (-1)!! = 1 by convention
    double r = 1.0;
    for (int m = n; m > 1; m -= 2) r *= m;
    return r;
}

Pair riccati(int l, double x) {
    if (!(x > 0.0)) throw std::domain_error("riccati: x must be positive");
    if (l < 0) throw std::domain_error("riccati: l must be >= 0");
    const auto ul = static_cast<unsigned>(l);
    return {x * std::sph_bessel(ul, x), -x * std::sph_neumann(ul, x)};
}

PairWithDerivatives riccati_d(int l, double x) {
    const auto [j, n] = riccati(l, x);
    double jm1, nm1;
    if (l == 0) {
        jm1 = std::cos(x);
        nm1 = -std::sin(x);
    } else {
        const auto p = riccati(l - 1, x);
        jm1 = p.first;
        nm1 = p.second;
    }
    // f_l' = f_{l-1} - (l/x) f_l holds for both normalizations
    return {j, n, jm1 - l / x * j, nm1 - l / x * n};
}

namespace {

// i_l(x) by power series; adequate for small arguments where the upward
// recurrence cancels.
double mod_sph_bessel_series(int l, double x) {
    const double x2h = 0.5 * x * x;
    double term = 1.0, sum = 1.0;
    for (int m = 1; m < 60; ++m) {
        term *= x2h / (m * (2.0 * l + 2.0 * m + 1.0));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    double xl = 1.0;
    for (int i = 0; i < l; ++i) xl *= x;
    return xl * sum / double_factorial(2 * l + 1);
}

// i_l(x) by Miller's downward recurrence normalized to i_0 = sinh(x)/x.
void mod_sph_bessel_all(int l, double x, std::vector<double>& out) {
    out.assign(l + 1, 0.0);
    if (x < 1.0) {
        for (int m = 0; m <= l; ++m) out[m] = mod_sph_bessel_series(m, x);
        return;
    }
    const int start = l + 24;
    double fp = 0.0;   // f_{n+1}
    double f = 1e-200; // f_n, starting at n = start
    std::vector<double> tmp(l + 1, 0.0);
    for (int n = start; n >= 1; --n) {
        if (n <= l) tmp[n] = f;
        const double fm = fp + (2.0 * n + 1.0) / x * f;  // f_{n-1}
        fp = f;
        f = fm;
        if (std::abs(f) > 1e250) {  // rescale to avoid overflow
            for (auto& v : tmp) v /= 1e250;
            fp /= 1e250;
            f /= 1e250;
        }
    }
    tmp[0] = f;
    const double scale = (std::sinh(x) / x) / f;
    for (int m = 0; m <= l; ++m) out[m] = tmp[m] * scale;
}

}  // namespace

ModPair modified_riccati(int l, double x) {
    if (!(x > 0.0)) throw std::domain_error("modified_riccati: x must be positive");
    if (l < 0) throw std::domain_error("modified_riccati: l must be >= 0");

    std::vector<double> iv;
    mod_sph_bessel_all(l, x, iv);
    const double s = x * iv[l];
    const double sm1 = (l == 0) ? std::cosh(x) : x * iv[l - 1];

    // second solution via w_{m+1} = w_{m-1} - (2m+1)/x w_m,
    // seeds w_{-1} = sinh/x, w_0 = cosh/x; c_l = (-1)^l x w_l
    double wm1 = std::sinh(x) / x, w0 = std::cosh(x) / x;
    double wprev = wm1, w = w0;
    for (int m = 0; m < l; ++m) {
        const double wn = wprev - (2.0 * m + 1.0) / x * w;
        wprev = w;
        w = wn;
    }
    const double sign = (l % 2 == 0) ? 1.0 : -1.0;
    const double c = sign * x * w;
    const double cm1 = -sign * x * wprev;  // c_{l-1}, sign alternates

    return {s, c, sm1 - l / x * s, -cm1 - l / x * c};
}

}  // namespace zrp::bessel
