#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "zrp/core.hpp"
#include "zrp/greens.hpp"

// Multi-center compatibility system
//   sum_{j != i} c_j (s_ij + c_ij x) = -c_i (k + dk_i + (alpha_i + da_i) x),
//   x = tan eta_lambda,
// solved as the symmetric matrix pencil (Ms + x Mc) c = 0 with
//   Ms_ij = s_ij (i != j),  Ms_ii = k + dk_i,
//   Mc_ij = c_ij (i != j),  Mc_ii = alpha_i + da_i.

namespace zrp::multicenter {

using Complex = std::complex<double>;

struct Mode {
    double tan_eta = 0.0;
    double eta = 0.0;
    int multiplicity = 1;
    bool infinite = false;          // Mc-singular direction, eta = pi/2
    Eigen::MatrixXd coeffs;         // n x multiplicity null-space basis
};

struct PhaseSolution {
    double k = 0.0;
    int n = 0;
    double background_delta = 0.0;  // 0 when undressed
    std::vector<Mode> modes;        // sorted by eta

    int mode_count_with_multiplicity() const;
};

struct CrossSections {
    std::vector<double> partial;  // per distinct mode (single member of a
                                  // degenerate family)
    double total = 0.0;           // sum over all n channels
    double averaged = 0.0;        // total + background 4 pi sin^2(delta)/k^2
};

// Assemble (Ms, Mc) from a kernel set; per-site trivial dressing steps
// enter as energy-dependent effective strengths. Only l = 0 channels are
// accepted.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> assemble_system(
    const Geometry& g, const greens::KernelSet& kernels, double k);

// All real solutions of det(Ms + x Mc) = 0 with null-space vectors.
// Symmetric-definite reduction when Mc (or -Mc) is definite, real QZ
// otherwise; roots are polished on the smallest eigenvalue of Ms + x Mc
// and merged within 1e-8 (1 + |x|).
PhaseSolution solve_phases(const Eigen::MatrixXd& Ms, const Eigen::MatrixXd& Mc,
                           double k, double background_delta = 0.0);

CrossSections cross_sections(const PhaseSolution& sol);

// S-matrix eigenchannel amplitudes A_lambda(n) = N sum_i c_i Psi_bg(r_i, -kn),
// orthonormalized over the sphere. Psi_bg is the plane wave, with the
// dressed s-wave distortion when a background step is present.
class PartialAmplitudes {
public:
    PartialAmplitudes(const PhaseSolution& sol, const Geometry& g,
                      const Eigen::MatrixXd& Ms, std::optional<double> background_b);

    // amplitude of orthonormal member `sub` of distinct mode `mode`
    Complex eval(int mode, int sub, const Vec3& n) const;

    int mode_count() const { return static_cast<int>(modes_.size()); }
    int multiplicity(int mode) const { return modes_[mode].multiplicity; }
    const PhaseSolution& solution() const { return sol_; }

private:
    PhaseSolution sol_;
    std::vector<Mode> modes_;  // with orthonormalized coefficient bases
    std::vector<Vec3> positions_;
    std::optional<double> background_b_;
    double k_;
};

// F(n, n0) = F1 + (4 pi / 2ik) sum_lambda (e^{2i eta} - 1) A(n) A*(n0);
// `printed_half_factor` switches to the (e^{i eta} - 1) variant kept for
// comparison only.
class ScatteringAmplitude {
public:
    ScatteringAmplitude(PartialAmplitudes amps, bool printed_half_factor = false);
    Complex operator()(const Vec3& n, const Vec3& n0) const;

private:
    PartialAmplitudes amps_;
    bool printed_;
};

}  // namespace zrp::multicenter
