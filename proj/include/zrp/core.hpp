#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <vector>

// Shared scalar conventions, unit handling and molecular geometry.
// Atomic units throughout: lengths in a0, wavenumbers in 1/a0, energies in
// Hartree (E = k^2/2). The eV conversion constant is used only at the
// input/output boundary.

namespace zrp {

using Vec3 = Eigen::Vector3d;

inline constexpr double hartree_in_ev = 27.2114;

double energy_to_wavenumber(double energy_ha);   // k = sqrt(2E), E > 0
double wavenumber_to_energy(double k);           // E = k^2/2, k > 0

inline double ev_to_hartree(double ev) { return ev / hartree_in_ev; }
inline double hartree_to_ev(double ha) { return ha * hartree_in_ev; }

// Inverse scattering length; the free-wave limit is a distinguished tag,
// never a large float.
struct Alpha {
    double value = 0.0;
    bool infinite = false;

    Alpha() = default;
    Alpha(double v) : value(v) {}
    static Alpha inf() {
        Alpha a;
        a.infinite = true;
        return a;
    }
    bool is_infinite() const { return infinite; }
};

// One partial-wave channel: angular momentum l and strength alpha_l
// (units a0^-(2l+1)).
struct Channel {
    int l = 0;
    Alpha alpha;

    Channel() = default;
    Channel(int l_, Alpha a) : l(l_), alpha(a) {
        if (l < 0) throw std::invalid_argument("Channel: l must be >= 0");
    }
};

// Darboux step parameters. e = alpha of the prop-function boundary
// condition; e infinite selects the sinh prop. e = +-b is the trivial
// transformation (vanishing dressed potential, energy-dependent boundary
// data only).
struct DressingStep {
    double b = 0.0;
    Alpha e;

    DressingStep() = default;
    DressingStep(double b_, Alpha e_) : b(b_), e(e_) {
        if (b == 0.0) throw std::invalid_argument("DressingStep: b must be nonzero");
    }
    bool background() const { return e.is_infinite(); }
    bool trivial() const {
        return !e.is_infinite() && (e.value == b || e.value == -b);
    }
};

struct Site {
    Vec3 position = Vec3::Zero();
    Channel channel;
    std::optional<DressingStep> dressing;
};

// A set of scatterer sites, optionally with a background dressing step
// anchored at the coordinate origin. center_index marks the Y site of a
// YXn build (-1 otherwise).
struct Geometry {
    std::vector<Site> sites;
    std::optional<DressingStep> background;
    int center_index = -1;

    int n() const { return static_cast<int>(sites.size()); }
    void validate() const;  // pairwise-distinct positions
};

// Equidistant structures: segment (n=2), equilateral triangle (n=3),
// regular tetrahedron (n=4). All pairwise distances equal R; the embedding
// is canonical (X2 on the z-axis, X3 in the xy-plane, X4 inscribed in a
// cube), centroid at the origin.
Geometry build_xn(int n, double R, Alpha alpha);

// X4 shell around a central scatterer at the centroid, R = 2*sqrt(2/3)*D.
Geometry build_yx4(double D, Alpha alpha, Alpha beta);

// General YXn with caller-supplied center position; all |r_i - y| must
// agree (that common distance is D). For n = 4 the supplied y must be the
// centroid.
Geometry build_yxn(int n, double R, const Vec3& y, Alpha alpha, Alpha beta);

// Spec'd convenience; only the n = 4 case fixes Y without caller input.
Geometry build_yxn(int n, double D, Alpha alpha, Alpha beta);

}  // namespace zrp
