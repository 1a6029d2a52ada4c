#include "zrp/darboux.hpp"

#include <cmath>
#include <limits>

namespace zrp::darboux {

namespace {

double prop_eval(const DressingStep& step, int l, double r) {
    const double b = step.b;
    if (l == 0) {
        if (step.e.is_infinite()) return std::sinh(b * r);
        if (r == 0.0) return -b / step.e.value;
        return std::sinh(b * r) - (b / step.e.value) * std::cosh(b * r);
    }
    const double ab = std::abs(b);
    const auto m = bessel::modified_riccati(l, ab * r);
    if (step.e.is_infinite()) return m.s;
    double bp = ab;
    for (int i = 0; i < 2 * l; ++i) bp *= ab;
    return m.s - bp / step.e.value * m.c;
}

// Node of e sinh(br) - b cosh(br) on (0, inf): tanh(b r0) = b/e, which has a
// solution exactly when finite e > |b| > 0; then r0 = atanh(|b|/e)/|b|.
std::optional<double> prop_node(const DressingStep& step, int l) {
    if (step.e.is_infinite()) return std::nullopt;
    const double e = step.e.value, ab = std::abs(step.b);
    if (l == 0) {
        if (e > ab) return std::atanh(ab / e) / ab;
        return std::nullopt;
    }
    // l > 0: scan for a sign change (the irregular part dominates near 0,
    // the growing regular part at infinity)
    auto phi = [&](double r) { return prop_eval(step, l, r); };
    double prev = phi(1e-6);
    const double h = 0.01 / ab;
    for (double r = h; r < 60.0 / ab; r += h) {
        const double cur = phi(r);
        if (prev * cur < 0.0) {
            double lo = r - h, hi = r;
            for (int it = 0; it < 100; ++it) {
                const double mid = 0.5 * (lo + hi);
                (phi(lo) * phi(mid) <= 0.0 ? hi : lo) = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = cur;
    }
    return std::nullopt;
}

}  // namespace

PropFunction::PropFunction(const DressingStep& step, int l) : step_(step), l_(l) {
    if (l < 0) throw std::invalid_argument("PropFunction: l must be >= 0");
    node_ = prop_node(step, l);
}

double PropFunction::operator()(double r) const { return prop_eval(step_, l_, r); }

double PropFunction::derivative(double r) const {
    const double b = step_.b;
    if (l_ == 0) {
        if (step_.e.is_infinite()) return b * std::cosh(b * r);
        return b * std::cosh(b * r) - (b * b / step_.e.value) * std::sinh(b * r);
    }
    const double ab = std::abs(b);
    const auto m = bessel::modified_riccati(l_, ab * r);
    if (step_.e.is_infinite()) return ab * m.sp;
    double bp = ab;
    for (int i = 0; i < 2 * l_; ++i) bp *= ab;
    return ab * (m.sp - bp / step_.e.value * m.cp);
}

double LogDerivative::operator()(double r) const {
    if (phi_.node() && std::abs(r - *phi_.node()) < 1e-12 * (1.0 + std::abs(r)))
        throw NodeError("log_derivative: prop function node at r = " +
                            std::to_string(*phi_.node()),
                        *phi_.node());
    const double val = phi_(r);
    if (val == 0.0)
        throw NodeError("log_derivative: prop function node at r = " + std::to_string(r), r);
    return phi_.derivative(r) / val;
}

DressedPotential::DressedPotential(const DressingStep& step, bool allow_singular)
    : step_(step) {
    node_ = prop_node(step, 0);
    if (node_ && !allow_singular)
        throw RegularityError(
            "dressed_potential_u0: potential is regular on the semiaxis only if "
            "b/e lies outside [0, 1); prop node at r = " +
            std::to_string(*node_));
}

double DressedPotential::operator()(double r) const {
    const double b = step_.b;
    if (step_.e.is_infinite()) {
        const double sh = std::sinh(b * r);
        if (sh == 0.0)
            throw NodeError("dressed potential core at r = 0", 0.0);
        return b * b / (sh * sh);
    }
    const double e = step_.e.value;
    if (node_) {
        // exact shifted form, stable near the singular point
        const double sh = std::sinh(std::abs(b) * (r - *node_));
        if (sh == 0.0) throw NodeError("dressed potential pole", *node_);
        return b * b / (sh * sh);
    }
    const double M = b * std::cosh(b * r) - e * std::sinh(b * r);
    return -b * b * (b * b - e * e) / (M * M);
}

double dressed_free_swave(double r, double k, double b) {
    const double s = b / std::tanh(b * r);
    return (s * std::sin(k * r) - k * std::cos(k * r)) / std::sqrt(k * k + b * b);
}

Complex dressed_outgoing_swave(double r, double k, double b) {
    const double s = b / std::tanh(b * r);
    return (s - Complex(0, 1) * k) * std::exp(Complex(0, 1) * k * r) /
           std::sqrt(k * k + b * b);
}

double dressed_tan_phase0(double e, double b, double k) {
    const double den = b * e + k * k;
    const double num = (e - b) * k;
    if (den == 0.0)
        return std::copysign(std::numeric_limits<double>::infinity(), num);
    return num / den;
}

double effective_alpha(Alpha alpha, double b, int sign, double k) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("effective_alpha: sign must be +-1");
    const double e = sign * b;
    if (alpha.is_infinite()) return -e;
    if (alpha.value == e)
        throw std::domain_error("effective_alpha: pole of the substitution at alpha = e");
    return (k * k + alpha.value * e) / (e - alpha.value);
}

Complex dressed_zrp_smatrix(const Channel& ch, double b, double k) {
    const Complex factor = (b - Complex(0, 1) * k) / (b + Complex(0, 1) * k);
    if (ch.alpha.is_infinite()) return factor;
    return gzrp::s_matrix_element(ch, k) * factor;
}

DressedBoundary dressed_boundary_coefficient(const Channel& ch,
                                             const DressingStep& step, double k) {
    if (ch.alpha.is_infinite())
        throw std::domain_error("dressed_boundary_coefficient: alpha must be finite");
    const double alpha = ch.alpha.value;
    const double b = step.b;
    const double kb = k * k + b * b;

    DressedBoundary out{};
    if (step.e.is_infinite()) {
        out.effective_l = ch.l + 1;
        out.effective_alpha = alpha * kb;
        out.order = 2 * ch.l + 3;
        out.power = ch.l + 1;
    } else {
        if (ch.l == 0) {
            const double e = step.e.value;
            if (alpha == e)
                throw std::domain_error(
                    "dressed_boundary_coefficient: alpha = e consumes the boundary "
                    "condition (regular dressed solution)");
            out.effective_l = 0;
            out.effective_alpha = -(kb / (alpha - e) + e);
            out.order = 1;
            out.power = 0;
        } else {
            out.effective_l = ch.l - 1;
            out.effective_alpha = (alpha - step.e.value) / kb;
            out.order = 2 * ch.l - 1;
            out.power = ch.l - 1;
        }
    }
    out.coefficient = gzrp::boundary_coefficient(out.effective_l, out.effective_alpha);
    return out;
}

}  // namespace zrp::darboux
