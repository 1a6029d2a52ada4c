#include "zrp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace zrp::oracle {

namespace {

constexpr double pi = std::numbers::pi;

// Local Frobenius basis around a nu(nu+1) = 2 double pole of 2u:
//   w- = 1/x + a1 x + a3 x^3 + a5 x^5
//   w+ = x^2 (1 + d4 x^2 + d6 x^4 + d8 x^6)
// with q(x) = 2u(pole+x) - 2/x^2 - k^2 = q0 + q2 x^2 + q4 x^4 + ...
// (odd powers vanish for poles of this type; checked during the fit).
struct PoleBridge {
    double a1, a3, a5, d4, d6, d8;

    PoleBridge(double q0, double q2, double q4) {
        a1 = -0.5 * q0;
        a3 = (q2 + q0 * a1) / 4.0;
        a5 = (q0 * a3 + q2 * a1 + q4) / 18.0;
        d4 = q0 / 10.0;
        d6 = (q0 * d4 + q2) / 28.0;
        d8 = (q0 * d6 + q2 * d4 + q4) / 54.0;
    }
    double wm(double x) const {
        const double x2 = x * x;
        return 1.0 / x + x * (a1 + x2 * (a3 + x2 * a5));
    }
    double wp(double x) const {
        const double x2 = x * x;
        return x2 * (1.0 + x2 * (d4 + x2 * (d6 + x2 * d8)));
    }
};

PoleBridge fit_bridge(const std::function<double(double)>& Q, double pole, double d) {
    auto g = [&](double x) { return Q(pole + x) - 2.0 / (x * x); };
    double even[3], odd_max = 0.0;
    for (int m = 1; m <= 3; ++m) {
        const double gp = g(m * d), gm = g(-m * d);
        even[m - 1] = 0.5 * (gp + gm);
        odd_max = std::max(odd_max, std::abs(gp - gm));
    }
    const double scale = std::abs(even[0]) + 1.0;
    if (odd_max > 1e-6 * scale)
        throw AccuracyError("integrate_phase: pole is not of the expected even type");
    // solve q0 + q2 (m d)^2 + q4 (m d)^4 = even[m-1], m = 1..3
    const double d2 = d * d;
    Eigen::Matrix3d V;
    V << 1, d2, d2 * d2, 1, 4 * d2, 16 * d2 * d2, 1, 9 * d2, 81 * d2 * d2;
    const Eigen::Vector3d q = V.fullPivLu().solve(Eigen::Vector3d(even[0], even[1], even[2]));
    return {q[0], q[1], q[2]};
}

}  // namespace

RadialGrid suggest_grid(double k, double potential_range, double step) {
    RadialGrid g;
    g.step = step;
    g.r_min = 1e-4;
    g.r_max = std::max(4.0 * 2.0 * pi / k, 2.0 * potential_range);
    return g;
}

PhaseEstimate integrate_phase(const std::function<double(double)>& u, int l,
                              double k, const RadialGrid& grid, Boundary bc,
                              std::span<const double> interior_poles) {
    if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min) || !(grid.step > 0.0))
        throw std::domain_error("integrate_phase: malformed grid");
    if (!(k > 0.0)) throw std::domain_error("integrate_phase: k must be positive");
    if (k * grid.r_max < 8.0 * pi)
        throw std::domain_error(
            "integrate_phase: grid covers fewer than four asymptotic oscillations");

    // decay precondition: |u| r^2 must be small and shrinking past r_max/2
    {
        const double v_mid = std::abs(u(0.5 * grid.r_max)) * 0.25 * grid.r_max * grid.r_max;
        const double v_end = std::abs(u(grid.r_max)) * grid.r_max * grid.r_max;
        if (v_end > 1e-3 || v_end > v_mid + 1e-12)
            throw std::domain_error(
                "integrate_phase: potential does not decay faster than 1/r^2");
    }

    const double h = grid.step;
    auto Q = [&](double r) { return 2.0 * u(r) + l * (l + 1.0) / (r * r) - k * k; };

    // starting pair
    double r0 = grid.r_min, r1 = grid.r_min + h;
    double y0, y1;
    if (bc.kind == Boundary::Kind::Zrp) {
        if (l != 0) throw std::domain_error("integrate_phase: ZRP start needs l = 0");
        const double q0 = Q(grid.r_min) + k * k;  // 2u near the origin
        auto start = [&](double r) {
            return 1.0 - bc.alpha * r + 0.5 * (q0 - k * k) * r * r * (1.0 - bc.alpha * r / 3.0);
        };
        y0 = start(r0);
        y1 = start(r1);
    } else {
        // probe for a nu(nu+1)/r^2 core on top of the centrifugal term
        const double c = Q(grid.r_min) * grid.r_min * grid.r_min + k * k * grid.r_min * grid.r_min;
        const double p = std::round(c);
        double nu = l + 1.0;
        double pval = l * (l + 1.0);
        if (std::abs(c - p) < 0.05 && p > l * (l + 1.0) + 0.5) {
            pval = p;
            nu = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * p));
        }
        const double g0 = Q(grid.r_min) - pval / (grid.r_min * grid.r_min);
        const double c1 = g0 / ((nu + 2.0) * (nu + 1.0) - pval);
        auto start = [&](double r) { return std::pow(r, nu) * (1.0 + c1 * r * r); };
        y0 = start(r0);
        y1 = start(r1);
    }

    std::vector<double> poles(interior_poles.begin(), interior_poles.end());
    std::sort(poles.begin(), poles.end());
    std::size_t next_pole = 0;

    const double fit_start = grid.r_max - 0.25 * (grid.r_max - grid.r_min);
    std::vector<double> rs, ys;
    rs.reserve(4096);
    ys.reserve(4096);

    // short history for the two-point pole matching
    constexpr std::size_t hist_cap = 2048;
    std::vector<double> hist_r(hist_cap), hist_y(hist_cap);
    std::size_t hist_n = 0;
    auto remember = [&](double r, long double y) {
        hist_r[hist_n % hist_cap] = r;
        hist_y[hist_n % hist_cap] = static_cast<double>(y);
        ++hist_n;
    };

    // the three-term recurrence is marched in extended precision: its
    // cancellation noise otherwise grows like eps/h^2 and caps the phase
    // accuracy near 1e-7
    double ra = r0, rb = r1;
    long double ya = y0, yb = y1;
    long double Ta = h * h / 12.0 * Q(ra), Tb = h * h / 12.0 * Q(rb);
    remember(ra, ya);
    remember(rb, yb);
    while (rb < grid.r_max) {
        // bridge an upcoming double pole: stop well clear of it and connect
        // through the local Frobenius basis
        if (next_pole < poles.size()) {
            const double pole = poles[next_pole];
            const double eps = std::max(0.25, 24.0 * h);
            if (rb + h > pole - eps) {
                const PoleBridge br = fit_bridge(Q, pole, eps / 3.2);
                // match on the current node and one about 0.4 eps earlier
                const std::size_t back =
                    std::min<std::size_t>(hist_n - 1,
                                          static_cast<std::size_t>(0.4 * eps / h));
                const std::size_t idx = (hist_n - 1 - back) % hist_cap;
                const double xa = hist_r[idx] - pole, xb = rb - pole;
                Eigen::Matrix2d M;
                M << br.wm(xa), br.wp(xa), br.wm(xb), br.wp(xb);
                const Eigen::Vector2d AB =
                    M.fullPivLu().solve(Eigen::Vector2d(hist_y[idx], yb));
                const double xr = -xb;  // mirror to the right side
                ra = pole + xr;
                rb = ra + h;
                ya = AB[0] * br.wm(xr) + AB[1] * br.wp(xr);
                yb = AB[0] * br.wm(xr + h) + AB[1] * br.wp(xr + h);
                Ta = h * h / 12.0 * Q(ra);
                Tb = h * h / 12.0 * Q(rb);
                (void)0;
                remember(ra, ya);
                remember(rb, yb);
                ++next_pole;
                continue;
            }
        }
        const double rc = rb + h;
        const long double Tc = h * h / 12.0 * Q(rc);
        const long double yc =
            (yb * (2.0L + 10.0L * Tb) - ya * (1.0L - Ta)) / (1.0L - Tc);
        ra = rb;
        rb = rc;
        ya = yb;
        yb = yc;
        Ta = Tb;
        Tb = Tc;
        remember(rb, static_cast<double>(yb));
        if (rb >= fit_start) {
            rs.push_back(rb);
            ys.push_back(static_cast<double>(yb));
        }
    }

    if (rs.size() < 16) throw AccuracyError("integrate_phase: tail window too short");

    // least squares on (sin, cos) basis, split into two half-windows for an
    // error estimate
    auto fit = [&](std::size_t lo, std::size_t hi) {
        double sss = 0, scc = 0, ssc = 0, bs = 0, bc2 = 0;
        for (std::size_t i = lo; i < hi; ++i) {
            const double s = std::sin(k * rs[i] - l * pi / 2.0);
            const double c = std::cos(k * rs[i] - l * pi / 2.0);
            sss += s * s;
            scc += c * c;
            ssc += s * c;
            bs += ys[i] * s;
            bc2 += ys[i] * c;
        }
        const double det = sss * scc - ssc * ssc;
        const double A = (bs * scc - bc2 * ssc) / det;
        const double B = (bc2 * sss - bs * ssc) / det;
        return std::pair<double, double>(A, B);
    };

    const auto [A, B] = fit(0, rs.size());
    const double amp = std::hypot(A, B);
    double ss_res = 0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const double m = A * std::sin(k * rs[i] - l * pi / 2.0) +
                         B * std::cos(k * rs[i] - l * pi / 2.0);
        ss_res += (ys[i] - m) * (ys[i] - m);
    }
    const double rel_res = std::sqrt(ss_res / rs.size()) / (amp + 1e-300);
    if (rel_res > 1e-5)
        throw AccuracyError("integrate_phase: tail fit residual " + std::to_string(rel_res));

    const auto [A1, B1] = fit(0, rs.size() / 2);
    const auto [A2, B2] = fit(rs.size() / 2, rs.size());
    const double t = B / A;
    const double err = std::max(std::abs(B1 / A1 - B2 / A2), rel_res * (1.0 + t * t));
    return {t, err};
}

DetScanResult det_scan(const Eigen::MatrixXd& Ms, const Eigen::MatrixXd& Mc,
                       double x_lo, double x_hi, int samples) {
    if (Ms.rows() != Mc.rows() || Ms.rows() != Ms.cols() || Mc.rows() != Mc.cols())
        throw std::invalid_argument("det_scan: dimension mismatch");
    if (samples < 8) samples = 8;
    const auto n = Ms.rows();

    auto det_scaled = [&](double x) {
        const double s = std::max({1.0, Ms.cwiseAbs().maxCoeff(),
                                   std::abs(x) * Mc.cwiseAbs().maxCoeff()});
        Eigen::MatrixXd M = (Ms + x * Mc) / s;
        return M.partialPivLu().determinant();
    };

    std::vector<double> xs(samples), ds(samples);
    for (int i = 0; i < samples; ++i) {
        xs[i] = x_lo + (x_hi - x_lo) * i / (samples - 1.0);
        ds[i] = det_scaled(xs[i]);
    }

    DetScanResult out;
    auto bisect = [&](double lo, double hi) {
        double flo = det_scaled(lo);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = det_scaled(mid);
            if (fm == 0.0) return mid;
            if (flo * fm < 0.0)
                hi = mid;
            else {
                lo = mid;
                flo = fm;
            }
            if (hi - lo < 1e-13 * (1.0 + std::abs(mid))) break;
        }
        return 0.5 * (lo + hi);
    };

    double dmax = 0.0;
    for (double d : ds) dmax = std::max(dmax, std::abs(d));

    for (int i = 0; i + 1 < samples; ++i) {
        if (ds[i] == 0.0) {
            out.roots.push_back(xs[i]);
        } else if (ds[i] * ds[i + 1] < 0.0) {
            out.roots.push_back(bisect(xs[i], xs[i + 1]));
        }
    }
    // interior minima of |det| without sign change: candidate even roots
    for (int i = 1; i + 1 < samples; ++i) {
        const double a = std::abs(ds[i - 1]), b = std::abs(ds[i]), c = std::abs(ds[i + 1]);
        if (b < a && b < c && ds[i - 1] * ds[i] > 0.0 && ds[i] * ds[i + 1] > 0.0) {
            // golden-section refine
            double lo = xs[i - 1], hi = xs[i + 1];
            const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = std::abs(det_scaled(x1)), f2 = std::abs(det_scaled(x2));
            for (int it = 0; it < 120; ++it) {
                if (f1 < f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - gr * (hi - lo);
                    f1 = std::abs(det_scaled(x1));
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + gr * (hi - lo);
                    f2 = std::abs(det_scaled(x2));
                }
            }
            const double xm = 0.5 * (lo + hi);
            const double fm = std::abs(det_scaled(xm));
            if (fm < 1e-11 * (dmax + 1e-300) * n) {
                out.roots.push_back(xm);  // touching root, even multiplicity
                out.roots.push_back(xm);
            } else if (fm < 1e-5 * (dmax + 1e-300)) {
                out.suspicious.push_back(xm);
            }
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    return out;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= n; ++j) {
            const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
            p0 = p1;
            p1 = p2;
        }
        const double dp = n * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

namespace {

template <class T, class F>
T sphere_quad_impl(const F& f, int order) {
    std::vector<double> xs, ws;
    gauss_legendre(order, xs, ws);
    const int nphi = 2 * order;
    T sum{};
    for (int i = 0; i < order; ++i) {
        const double ct = xs[i], st = std::sqrt(1.0 - ct * ct);
        T ring{};
        for (int j = 0; j < nphi; ++j) {
            const double phi = 2.0 * pi * j / nphi;
            ring += f(Vec3(st * std::cos(phi), st * std::sin(phi), ct));
        }
        sum += ws[i] * ring;
    }
    return sum * (2.0 * pi / nphi);
}

}  // namespace

double sphere_quadrature(const std::function<double(const Vec3&)>& f, int order) {
    return sphere_quad_impl<double>(f, order);
}

std::complex<double> sphere_quadrature_c(
    const std::function<std::complex<double>(const Vec3&)>& f, int order) {
    return sphere_quad_impl<std::complex<double>>(f, order);
}

Eigen::VectorXd fornberg_weights(double x0, std::span<const double> nodes, int m) {
    const int n = static_cast<int>(nodes.size());
    if (m >= n) throw std::invalid_argument("fornberg_weights: need more nodes than m");
    // B. Fornberg, Math. Comp. 51 (1988) 699
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, m + 1);
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c(0, 0) = 1.0;
    for (int i = 1; i < n; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int s = mn; s >= 1; --s)
                    c(i, s) = c1 * (s * c(i - 1, s - 1) - c5 * c(i - 1, s)) / c2;
                c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
            }
            for (int s = mn; s >= 1; --s)
                c(j, s) = (c4 * c(j, s) - s * c(j, s - 1)) / c3;
            c(j, 0) = c4 * c(j, 0) / c3;
        }
        c1 = c2;
    }
    return c.col(m);
}

double derivative_onesided(const std::function<double(double)>& f, int m, double h,
                           int npts) {
    std::vector<double> nodes(npts);
    for (int i = 0; i < npts; ++i) nodes[i] = (i + 1) * h;
    const Eigen::VectorXd w = fornberg_weights(0.0, nodes, m);
    double sum = 0.0;
    for (int i = 0; i < npts; ++i) sum += w[i] * f(nodes[i]);
    return sum;
}

}  // namespace zrp::oracle
