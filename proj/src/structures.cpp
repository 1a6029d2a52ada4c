#include "zrp/structures.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace zrp::structures {

namespace {

double safe_ratio(double num, double den) {
    if (den == 0.0)
        return std::copysign(std::numeric_limits<double>::infinity(), -num);
    return -num / den;
}

double sin2_of_tan(double t) {
    if (std::isinf(t)) return 1.0;
    return t * t / (1.0 + t * t);
}

}  // namespace

XnResult xn_phases(int n, double R, double alpha, double k) {
    if (n < 2) throw std::invalid_argument("xn_phases: n must be >= 2");
    if (!(R > 0.0) || !(k > 0.0))
        throw std::invalid_argument("xn_phases: R and k must be positive");
    const double kR = k * R;
    const double s = std::sin(kR), c = std::cos(kR);
    XnResult r;
    r.n = n;
    r.R = R;
    r.alpha = alpha;
    r.k = k;
    r.tan_eta_1 = safe_ratio(kR + (n - 1) * s, alpha * R + (n - 1) * c);
    r.tan_eta_deg = safe_ratio(kR - s, alpha * R - c);
    return r;
}

YxnResult yxn_phases(int n, double R, double D, double alpha, double beta, double k) {
    if (n < 2) throw std::invalid_argument("yxn_phases: n must be >= 2");
    if (!(R > 0.0) || !(D > 0.0) || !(k > 0.0))
        throw std::invalid_argument("yxn_phases: R, D, k must be positive");

    const double kR = k * R, kD = k * D;
    const double sR = std::sin(kR), cR = std::cos(kR);
    const double sD = std::sin(kD), cD = std::cos(kD);
    const double P = alpha * R + (n - 1) * cR;
    const double S = kR + (n - 1) * sR;

    // (k + beta x)(P x + S) D^2 = n R (sin kD + x cos kD)^2
    YxnResult r;
    r.n = n;
    r.R = R;
    r.D = D;
    r.alpha = alpha;
    r.beta = beta;
    r.k = k;
    r.a2 = D * D * beta * P - n * R * cD * cD;
    r.a1 = D * D * (k * P + beta * S) - 2.0 * n * R * sD * cD;
    r.a0 = D * D * k * S - n * R * sD * sD;

    const double disc = r.a1 * r.a1 - 4.0 * r.a2 * r.a0;
    if (disc < 0.0)
        throw SolverError("yxn_phases: complex quadratic roots (discriminant " +
                              std::to_string(disc) + ")",
                          disc);
    double x1, x2;
    if (r.a2 == 0.0) {
        // degree drop: one root escapes to infinity (eta = pi/2)
        x1 = -r.a0 / r.a1;
        x2 = std::numeric_limits<double>::infinity();
    } else if (disc == 0.0) {
        x1 = x2 = -0.5 * r.a1 / r.a2;
    } else {
        const double q = -0.5 * (r.a1 + std::copysign(std::sqrt(disc), r.a1));
        x1 = q / r.a2;
        x2 = r.a0 / q;
    }
    r.tan_eta_1 = std::min(x1, x2);
    r.tan_eta_2 = std::max(x1, x2);
    r.tan_eta_deg = safe_ratio(kR - sR, alpha * R - cR);
    return r;
}

multicenter::CrossSections xn_cross_section(const XnResult& r) {
    multicenter::CrossSections cs;
    const double pref = 4.0 * std::numbers::pi / (r.k * r.k);
    cs.partial = {pref * sin2_of_tan(r.tan_eta_1), pref * sin2_of_tan(r.tan_eta_deg)};
    cs.total = cs.partial[0] + (r.n - 1) * cs.partial[1];
    cs.averaged = cs.total;
    return cs;
}

multicenter::CrossSections yxn_cross_section(const YxnResult& r) {
    multicenter::CrossSections cs;
    const double pref = 4.0 * std::numbers::pi / (r.k * r.k);
    cs.partial = {pref * sin2_of_tan(r.tan_eta_1), pref * sin2_of_tan(r.tan_eta_2),
                  pref * sin2_of_tan(r.tan_eta_deg)};
    cs.total = cs.partial[0] + cs.partial[1] + (r.n - 1) * cs.partial[2];
    cs.averaged = cs.total;
    return cs;
}

}  // namespace zrp::structures
