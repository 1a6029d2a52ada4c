#pragma once

#include <Eigen/Dense>
#include <complex>

#include "zrp/core.hpp"

// Free and dressed outgoing Green functions, the s/c interaction kernels
// between sites, and the regularized coincidence corrections
// (delta_alpha_i, delta_k_i) entering the multi-center system.
//
// The dressed background is the sinh prop step (e = inf) anchored at the
// coordinate origin; only the s-wave part of the Green function changes:
//   g+ = e^{ik|r-r'|}/|r-r'| + [psi0(r<) f0(r>) - sin(k r<) e^{ik r>}]/(k r r')

namespace zrp::greens {

using Complex = std::complex<double>;

Complex free_green(double k, const Vec3& r, const Vec3& rp);

// s-wave correction part of the dressed Green function, finite at
// coincidence; radii measured from the dressing center.
Complex dressed_correction(double k, double b, double r, double rp);

Complex dressed_green(double k, double b, const Vec3& r, const Vec3& rp);

struct CoincidenceCorrection {
    double delta_alpha;
    double delta_k;
};

// delta_alpha + i delta_k = lim_{r -> r_i} [g+(r, r_i) - 1/|r - r_i| - ik]
CoincidenceCorrection coincidence_corrections(double k, double b, double site_radius);

// Off-diagonal s/c matrices (Im/Re of g+ between sites) plus the diagonal
// corrections. Free case: s_ij = sin(k r_ij)/r_ij, c_ij = cos(k r_ij)/r_ij,
// deltas = 0.
struct KernelSet {
    int n = 0;
    Eigen::MatrixXd s, c;
    Eigen::VectorXd delta_alpha, delta_k;
    double k = 0.0;
};

KernelSet free_kernels(const Geometry& g, double k);
KernelSet dressed_kernels(const Geometry& g, double k, double b);

// Hybrid assembly used by the dressed-kernels CLI path when a scatterer
// sits exactly at the dressing center: rows/columns touching that site use
// the free kernel, everything else the dressed one.
KernelSet dressed_kernels_plain_center(const Geometry& g, double k, double b,
                                       int center_site);

}  // namespace zrp::greens
