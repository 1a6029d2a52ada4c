#pragma once

#include <stdexcept>

#include "zrp/multicenter.hpp"

// Closed-form phases for the equidistant Xn and YXn structures; fast paths
// and oracles for the generalized pencil solver.

namespace zrp::structures {

struct SolverError : std::runtime_error {
    double discriminant;
    SolverError(const std::string& m, double d) : std::runtime_error(m), discriminant(d) {}
};

struct XnResult {
    double tan_eta_1;    // symmetric mode
    double tan_eta_deg;  // (n-1)-fold degenerate family
    int n;
    double R, alpha, k;
};

// tan eta_1   = -(kR + (n-1) sin kR)/(alpha R + (n-1) cos kR)
// tan eta_deg = -(kR - sin kR)/(alpha R - cos kR)
// Vanishing denominators map to signed infinities (eta = +-pi/2).
XnResult xn_phases(int n, double R, double alpha, double k);

struct YxnResult {
    double tan_eta_1, tan_eta_2;  // roots of the coupled quadratic, ascending
    double tan_eta_deg;           // (n-1)-fold family, same form as Xn
    int n;
    double R, D, alpha, beta, k;
    double a2, a1, a0;  // quadratic coefficients, for residual checks

    double quadratic_residual(double x) const { return (a2 * x + a1) * x + a0; }
};

// R and D are independent inputs; only the n = 4 geometry builder ties them
// (R = 2 sqrt(2/3) D). Complex quadratic roots raise SolverError with the
// discriminant.
YxnResult yxn_phases(int n, double R, double D, double alpha, double beta, double k);

multicenter::CrossSections xn_cross_section(const XnResult& r);
multicenter::CrossSections yxn_cross_section(const YxnResult& r);

}  // namespace zrp::structures
