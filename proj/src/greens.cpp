#include "zrp/greens.hpp"

#include <cmath>

#include "zrp/darboux.hpp"

namespace zrp::greens {

Complex free_green(double k, const Vec3& r, const Vec3& rp) {
    const double d = (r - rp).norm();
    if (d < 1e-12)
        throw std::domain_error(
            "free_green: coincident arguments (use coincidence_corrections)");
    return std::exp(Complex(0, 1) * k * d) / d;
}

Complex dressed_correction(double k, double b, double r, double rp) {
    const double rl = std::min(r, rp), rg = std::max(r, rp);
    if (rl <= 0.0)
        throw std::domain_error("dressed_correction: argument at the dressing center");
    const Complex corr =
        darboux::dressed_free_swave(rl, k, b) * darboux::dressed_outgoing_swave(rg, k, b) -
        std::sin(k * rl) * std::exp(Complex(0, 1) * k * rg);
    return corr / (k * r * rp);
}

Complex dressed_green(double k, double b, const Vec3& r, const Vec3& rp) {
    if (r.norm() < 1e-12 || rp.norm() < 1e-12)
        throw std::domain_error("dressed_green: argument at the dressing center");
    return free_green(k, r, rp) + dressed_correction(k, b, r.norm(), rp.norm());
}

CoincidenceCorrection coincidence_corrections(double k, double b, double site_radius) {
    if (!(site_radius > 0.0))
        throw std::domain_error(
            "coincidence_corrections: site at the dressing center is unsupported");
    const double s = site_radius;
    const Complex dg =
        (darboux::dressed_free_swave(s, k, b) * darboux::dressed_outgoing_swave(s, k, b) -
         std::sin(k * s) * std::exp(Complex(0, 1) * k * s)) /
        (k * s * s);
    return {dg.real(), dg.imag()};
}

namespace {

KernelSet init_kernels(const Geometry& g, double k) {
    g.validate();
    KernelSet ks;
    ks.n = g.n();
    ks.k = k;
    ks.s = Eigen::MatrixXd::Zero(ks.n, ks.n);
    ks.c = Eigen::MatrixXd::Zero(ks.n, ks.n);
    ks.delta_alpha = Eigen::VectorXd::Zero(ks.n);
    ks.delta_k = Eigen::VectorXd::Zero(ks.n);
    return ks;
}

}  // namespace

KernelSet free_kernels(const Geometry& g, double k) {
    KernelSet ks = init_kernels(g, k);
    for (int i = 0; i < ks.n; ++i)
        for (int j = i + 1; j < ks.n; ++j) {
            const double d = (g.sites[i].position - g.sites[j].position).norm();
            ks.s(i, j) = ks.s(j, i) = std::sin(k * d) / d;
            ks.c(i, j) = ks.c(j, i) = std::cos(k * d) / d;
        }
    return ks;
}

KernelSet dressed_kernels(const Geometry& g, double k, double b) {
    KernelSet ks = init_kernels(g, k);
    for (int i = 0; i < ks.n; ++i) {
        const double ri = g.sites[i].position.norm();
        const auto cc = coincidence_corrections(k, b, ri);
        ks.delta_alpha[i] = cc.delta_alpha;
        ks.delta_k[i] = cc.delta_k;
        for (int j = i + 1; j < ks.n; ++j) {
            const Complex gp = dressed_green(k, b, g.sites[i].position, g.sites[j].position);
            ks.s(i, j) = ks.s(j, i) = gp.imag();
            ks.c(i, j) = ks.c(j, i) = gp.real();
        }
    }
    return ks;
}

KernelSet dressed_kernels_plain_center(const Geometry& g, double k, double b,
                                       int center_site) {
    if (center_site < 0 || center_site >= g.n())
        throw std::invalid_argument("dressed_kernels_plain_center: bad site index");
    KernelSet ks = init_kernels(g, k);
    for (int i = 0; i < ks.n; ++i) {
        if (i != center_site) {
            const auto cc = coincidence_corrections(k, b, g.sites[i].position.norm());
            ks.delta_alpha[i] = cc.delta_alpha;
            ks.delta_k[i] = cc.delta_k;
        }
        for (int j = i + 1; j < ks.n; ++j) {
            const double d = (g.sites[i].position - g.sites[j].position).norm();
            if (i == center_site || j == center_site) {
                ks.s(i, j) = ks.s(j, i) = std::sin(k * d) / d;
                ks.c(i, j) = ks.c(j, i) = std::cos(k * d) / d;
            } else {
                const Complex gp =
                    dressed_green(k, b, g.sites[i].position, g.sites[j].position);
                ks.s(i, j) = ks.s(j, i) = gp.imag();
                ks.c(i, j) = ks.c(j, i) = gp.real();
            }
        }
    }
    return ks;
}

}  // namespace zrp::greens
