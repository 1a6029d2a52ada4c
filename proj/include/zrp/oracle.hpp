#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "zrp/core.hpp"

// Independent numerical verifiers: radial ODE integration for phase
// extraction, determinant scanning for pencil roots, one-sided finite
// differences, and spherical quadrature. Nothing here reuses the closed
// forms it is meant to check.

namespace zrp::oracle {

struct AccuracyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RadialGrid {
    double r_min = 1e-4;
    double r_max = 100.0;
    double step = 1e-3;
};

// Boundary data at r_min for the outward integration.
//  Regular     y ~ r^{l+1} (bounded potential) or the milder power a
//              nu(nu+1)/r^2 core demands; the core strength is probed
//              numerically.
//  Zrp(alpha)  (r psi)'/(r psi)|_{r_min} = -alpha, l = 0 only.
struct Boundary {
    enum class Kind { Regular, Zrp } kind = Kind::Regular;
    double alpha = 0.0;

    static Boundary regular() { return {}; }
    static Boundary zrp(double alpha) { return {Kind::Zrp, alpha}; }
};

struct PhaseEstimate {
    double tan_eta;
    double error_estimate;
};

// Numerov integration of -psi'' + (2u + l(l+1)/r^2) psi = k^2 psi followed
// by a least-squares fit of A sin(kr - l pi/2) + B cos(kr - l pi/2) on the
// tail (last quarter of the grid). `interior_poles` lists locations of
// nu(nu+1) = 2 double poles of 2u; each is crossed with a local Frobenius
// basis (x^-1, x^2).
PhaseEstimate integrate_phase(const std::function<double(double)>& u, int l,
                              double k, const RadialGrid& grid,
                              Boundary bc = Boundary::regular(),
                              std::span<const double> interior_poles = {});

// Radial grid sized for the tail fit: at least four asymptotic
// oscillations past the potential range.
RadialGrid suggest_grid(double k, double potential_range, double step = 2e-3);

struct DetScanResult {
    std::vector<double> roots;
    std::vector<double> suspicious;  // unresolved near-degenerate minima
};

// Real roots of det(Ms + x Mc) = 0 inside [x_lo, x_hi]: sign-change
// bracketing plus bisection; local minima of |det| without a sign change
// are probed for even-multiplicity roots and flagged when unresolved.
DetScanResult det_scan(const Eigen::MatrixXd& Ms, const Eigen::MatrixXd& Mc,
                       double x_lo, double x_hi, int samples);

// Product Gauss-Legendre x uniform-phi quadrature over the unit sphere;
// exact for spherical harmonics up to degree ~2*order-1.
double sphere_quadrature(const std::function<double(const Vec3&)>& f, int order);
std::complex<double> sphere_quadrature_c(
    const std::function<std::complex<double>(const Vec3&)>& f, int order);

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Fornberg weights for the m-th derivative at x0 from the given nodes.
Eigen::VectorXd fornberg_weights(double x0, std::span<const double> nodes, int m);

// One-sided m-th derivative at 0 from samples at h, 2h, ..., npts*h.
double derivative_onesided(const std::function<double(double)>& f, int m,
                           double h, int npts);

}  // namespace zrp::oracle
