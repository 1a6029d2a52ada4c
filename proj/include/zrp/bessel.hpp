#pragma once

#include <stdexcept>

// Riccati-normalized spherical Bessel functions and their modified
// (imaginary-argument) counterparts.
//
//   j_l(x) = x * sph_bessel(l, x)        ~ x^{l+1}/(2l+1)!!    (x -> 0)
//   n_l(x) = -x * sph_neumann(l, x)      ~ (2l-1)!! x^{-l}
//   s_l(x) = x * i_l(x)                  ~ x^{l+1}/(2l+1)!!
//   c_l(x), second modified solution     ~ (2l-1)!! x^{-l},  c_0 = cosh x
//
// With these normalizations j_0 = sin, n_0 = cos, s_0 = sinh, c_0 = cosh,
// and j_l ~ sin(x - l pi/2), n_l ~ cos(x - l pi/2) at infinity.

namespace zrp::bessel {

struct Pair {
    double first;   // regular solution
    double second;  // irregular solution
};

struct PairWithDerivatives {
    double j, n, jp, np;
};

Pair riccati(int l, double x);
PairWithDerivatives riccati_d(int l, double x);

// Modified pair (s_l, c_l) plus derivatives.
struct ModPair {
    double s, c, sp, cp;
};
ModPair modified_riccati(int l, double x);

double double_factorial(int n);  // (-1)!! = 1

}  // namespace zrp::bessel
