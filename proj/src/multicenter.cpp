#include "zrp/multicenter.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zrp/darboux.hpp"

namespace zrp::multicenter {

namespace {

constexpr double pi = std::numbers::pi;

double matrix_scale(const Eigen::MatrixXd& Ms, const Eigen::MatrixXd& Mc, double x) {
    return Ms.cwiseAbs().maxCoeff() + std::abs(x) * Mc.cwiseAbs().maxCoeff() + 1e-300;
}

// smallest-|eigenvalue| Newton polish of det(Ms + x Mc) = 0
double polish_root(const Eigen::MatrixXd& Ms, const Eigen::MatrixXd& Mc, double x,
                   double* mu_out) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    for (int it = 0; it < 12; ++it) {
        es.compute(Ms + x * Mc);
        int idx = 0;
        es.eigenvalues().cwiseAbs().minCoeff(&idx);
        const double mu = es.eigenvalues()[idx];
        const Eigen::VectorXd v = es.eigenvectors().col(idx);
        const double dmu = v.dot(Mc * v);
        if (mu_out) *mu_out = mu;
        if (std::abs(mu) <= 1e-14 * matrix_scale(Ms, Mc, x)) return x;
        if (std::abs(dmu) < 1e-14 * Mc.cwiseAbs().maxCoeff()) return x;
        x -= mu / dmu;
    }
    return x;
}

}  // namespace

int PhaseSolution::mode_count_with_multiplicity() const {
    int c = 0;
    for (const auto& m : modes) c += m.multiplicity;
    return c;
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> assemble_system(
    const Geometry& g, const greens::KernelSet& kernels, double k) {
    const int n = g.n();
    if (kernels.n != n)
        throw std::invalid_argument("assemble_system: kernel/geometry size mismatch");
    if (std::abs(kernels.k - k) > 1e-12 * (1.0 + k))
        throw std::invalid_argument("assemble_system: kernels computed at a different k");

    Eigen::MatrixXd Ms = kernels.s, Mc = kernels.c;
    for (int i = 0; i < n; ++i) {
        const Site& site = g.sites[i];
        if (site.channel.l != 0)
            throw std::invalid_argument("assemble_system: multi-center sites must be s-wave");
        double alpha;
        if (site.dressing) {
            if (!site.dressing->trivial())
                throw std::invalid_argument(
                    "assemble_system: per-site dressing must be a trivial step (e = +-b)");
            const int sign = (site.dressing->e.value == site.dressing->b) ? 1 : -1;
            alpha = darboux::effective_alpha(site.channel.alpha, site.dressing->b, sign, k);
        } else {
            if (site.channel.alpha.is_infinite())
                throw std::invalid_argument(
                    "assemble_system: an undressed site needs a finite alpha");
            alpha = site.channel.alpha.value;
        }
        Ms(i, i) = k + kernels.delta_k[i];
        Mc(i, i) = alpha + kernels.delta_alpha[i];
    }
    return {Ms, Mc};
}

PhaseSolution solve_phases(const Eigen::MatrixXd& Ms, const Eigen::MatrixXd& Mc,
                           double k, double background_delta) {
    const auto n = Ms.rows();
    if (Ms.cols() != n || Mc.rows() != n || Mc.cols() != n)
        throw std::invalid_argument("solve_phases: dimension mismatch");
    if ((Ms - Ms.transpose()).cwiseAbs().maxCoeff() > 1e-10 * matrix_scale(Ms, Mc, 0) ||
        (Mc - Mc.transpose()).cwiseAbs().maxCoeff() > 1e-10 * matrix_scale(Ms, Mc, 1))
        throw std::invalid_argument("solve_phases: matrices must be symmetric");
    if (!(k > 0.0)) throw std::domain_error("solve_phases: k must be positive");

    PhaseSolution sol;
    sol.k = k;
    sol.n = static_cast<int>(n);
    sol.background_delta = background_delta;

    std::vector<double> candidates;
    int definite = 0;  // +1 Mc pd, -1 Mc nd, 0 indefinite
    {
        Eigen::LLT<Eigen::MatrixXd> llt(Mc);
        if (llt.info() == Eigen::Success && Mc.diagonal().minCoeff() > 0) definite = 1;
        if (!definite) {
            Eigen::LLT<Eigen::MatrixXd> llt2(-Mc);
            if (llt2.info() == Eigen::Success && (-Mc).diagonal().minCoeff() > 0)
                definite = -1;
        }
    }

    int n_infinite = 0;
    Eigen::MatrixXd inf_basis;
    if (definite != 0) {
        Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(
            Ms, definite > 0 ? Eigen::MatrixXd(Mc) : Eigen::MatrixXd(-Mc));
        for (int i = 0; i < n; ++i)
            candidates.push_back(definite > 0 ? -ges.eigenvalues()[i]
                                              : ges.eigenvalues()[i]);
    } else {
        Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges;
        ges.compute(Ms, -Mc, false);
        const double bscale = Mc.cwiseAbs().maxCoeff() + 1e-300;
        for (int i = 0; i < n; ++i) {
            const std::complex<double> a = ges.alphas()[i];
            const double beta = ges.betas()[i];
            if (std::abs(beta) <= 1e-12 * std::abs(a) / bscale || beta == 0.0) {
                ++n_infinite;
                continue;
            }
            const std::complex<double> lam = a / beta;
            if (std::abs(lam.imag()) <= 1e-6 * (1.0 + std::abs(lam.real())))
                candidates.push_back(lam.real());
        }
        if (n_infinite > 0) {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esc(Mc);
            const double tol = 1e-10 * (Mc.cwiseAbs().maxCoeff() + 1e-300);
            std::vector<int> idx;
            for (int i = 0; i < n; ++i)
                if (std::abs(esc.eigenvalues()[i]) <= tol) idx.push_back(i);
            n_infinite = static_cast<int>(idx.size());
            inf_basis.resize(n, n_infinite);
            for (int j = 0; j < n_infinite; ++j)
                inf_basis.col(j) = esc.eigenvectors().col(idx[j]);
        }
    }

    // polish, drop non-roots, merge
    std::vector<double> roots;
    for (double x0 : candidates) {
        double mu = 0.0;
        const double x = polish_root(Ms, Mc, x0, &mu);
        if (std::abs(mu) <= 1e-8 * matrix_scale(Ms, Mc, x)) roots.push_back(x);
    }
    std::sort(roots.begin(), roots.end());

    std::vector<double> merged;
    for (double x : roots) {
        if (merged.empty() || std::abs(x - merged.back()) > 1e-8 * (1.0 + std::abs(x)))
            merged.push_back(x);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    for (double x : merged) {
        es.compute(Ms + x * Mc);
        const double tol = 2e-8 * matrix_scale(Ms, Mc, x);
        std::vector<int> nullidx;
        for (int i = 0; i < n; ++i)
            if (std::abs(es.eigenvalues()[i]) <= tol) nullidx.push_back(i);
        if (nullidx.empty()) {
            int imin = 0;
            es.eigenvalues().cwiseAbs().minCoeff(&imin);
            nullidx.push_back(imin);
        }
        Mode m;
        m.tan_eta = x;
        m.eta = std::atan(x);
        m.multiplicity = static_cast<int>(nullidx.size());
        m.coeffs.resize(n, m.multiplicity);
        for (int j = 0; j < m.multiplicity; ++j)
            m.coeffs.col(j) = es.eigenvectors().col(nullidx[j]);
        sol.modes.push_back(std::move(m));
    }

    if (n_infinite > 0) {
        Mode m;
        m.tan_eta = std::numeric_limits<double>::infinity();
        m.eta = pi / 2.0;
        m.infinite = true;
        m.multiplicity = n_infinite;
        m.coeffs = inf_basis;
        sol.modes.push_back(std::move(m));
    }

    if (sol.modes.empty())
        throw std::runtime_error(
            "solve_phases: no real compatibility roots found (pencil diagnostics: "
            "all generalized eigenvalues complex or spurious)");

    std::sort(sol.modes.begin(), sol.modes.end(),
              [](const Mode& a, const Mode& b) { return a.eta < b.eta; });
    return sol;
}

CrossSections cross_sections(const PhaseSolution& sol) {
    if (!(sol.k > 0.0)) throw std::domain_error("cross_sections: k must be positive");
    CrossSections cs;
    const double pref = 4.0 * pi / (sol.k * sol.k);
    for (const auto& m : sol.modes) {
        double s2;
        if (m.infinite || std::isinf(m.tan_eta))
            s2 = 1.0;
        else
            s2 = m.tan_eta * m.tan_eta / (1.0 + m.tan_eta * m.tan_eta);
        cs.partial.push_back(pref * s2);
        cs.total += m.multiplicity * pref * s2;
    }
    const double sd = std::sin(sol.background_delta);
    cs.averaged = cs.total + pref * sd * sd;
    return cs;
}

PartialAmplitudes::PartialAmplitudes(const PhaseSolution& sol, const Geometry& g,
                                     const Eigen::MatrixXd& Ms,
                                     std::optional<double> background_b)
    : sol_(sol), background_b_(background_b), k_(sol.k) {
    for (const auto& s : g.sites) positions_.push_back(s.position);
    // orthonormalize within each distinct mode against the exact spherical
    // Gram <A_a, A_b> = (4 pi / k) c_a^T Ms c_b
    for (Mode m : sol.modes) {
        Eigen::MatrixXd G =
            (4.0 * pi / k_) * m.coeffs.transpose() * Ms * m.coeffs;
        Eigen::LLT<Eigen::MatrixXd> llt(G);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error(
                "PartialAmplitudes: spherical Gram not positive definite");
        m.coeffs = m.coeffs * Eigen::MatrixXd(llt.matrixL())
                                  .transpose()
                                  .triangularView<Eigen::Upper>()
                                  .solve(Eigen::MatrixXd::Identity(m.multiplicity,
                                                                   m.multiplicity));
        modes_.push_back(std::move(m));
    }
}

Complex PartialAmplitudes::eval(int mode, int sub, const Vec3& n) const {
    const Mode& m = modes_[mode];
    Complex a{};
    for (std::size_t i = 0; i < positions_.size(); ++i) {
        const double ri = positions_[i].norm();
        Complex psi;
        if (background_b_) {
            if (ri < 1e-12) {
                psi = 0.0;  // dressed wave vanishes at the core center
            } else {
                const double delta = darboux::background_delta(k_, *background_b_);
                const Complex swave_corr =
                    (std::exp(Complex(0, 1) * delta) *
                         darboux::dressed_free_swave(ri, k_, *background_b_) -
                     std::sin(k_ * ri)) /
                    (k_ * ri);
                psi = std::exp(Complex(0, -1) * k_ * n.dot(positions_[i])) + swave_corr;
            }
        } else {
            psi = std::exp(Complex(0, -1) * k_ * n.dot(positions_[i]));
        }
        a += m.coeffs(static_cast<Eigen::Index>(i), sub) * psi;
    }
    return a;
}

ScatteringAmplitude::ScatteringAmplitude(PartialAmplitudes amps, bool printed_half_factor)
    : amps_(std::move(amps)), printed_(printed_half_factor) {}

Complex ScatteringAmplitude::operator()(const Vec3& n, const Vec3& n0) const {
    const auto& sol = amps_.solution();
    const double k = sol.k;
    Complex F{};
    const double delta = sol.background_delta;
    if (delta != 0.0)
        F += std::exp(Complex(0, 1) * delta) * std::sin(delta) / k;
    const Complex pref = 4.0 * pi / (Complex(0, 2.0) * k);
    for (int m = 0; m < amps_.mode_count(); ++m) {
        const double eta = sol.modes[m].eta;
        const Complex factor = printed_ ? std::exp(Complex(0, 1) * eta) - 1.0
                                        : std::exp(Complex(0, 2.0) * eta) - 1.0;
        for (int s = 0; s < amps_.multiplicity(m); ++s)
            F += pref * factor * amps_.eval(m, s, n) * std::conj(amps_.eval(m, s, n0));
    }
    return F;
}

}  // namespace zrp::multicenter
