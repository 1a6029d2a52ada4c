#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "zrp/oracle.hpp"

using namespace zrp;
using oracle::Boundary;
using oracle::RadialGrid;

TEST_CASE("free motion gives zero phase") {
    auto zero = [](double) { return 0.0; };
    const auto est = oracle::integrate_phase(zero, 0, 1.0, {1e-4, 40.0, 1e-3});
    CHECK(std::abs(est.tan_eta) < 1e-8);

    // ZRP boundary on a free background: tan eta = -k/alpha
    for (double alpha : {0.33, -0.8}) {
        for (double k : {0.4, 1.3}) {
            const auto e = oracle::integrate_phase(zero, 0, k, {1e-4, 80.0, 1e-3},
                                                   Boundary::zrp(alpha));
            CHECK(e.tan_eta == doctest::Approx(-k / alpha).epsilon(1e-7));
        }
    }
}

TEST_CASE("sinh-core potential carries delta = -arctan(k/b)") {
    const double b = 1.0, k = 1.0;
    auto u = [b](double r) { return b * b / std::pow(std::sinh(b * r), 2); };
    const auto est = oracle::integrate_phase(u, 0, k, {1e-4, 60.0, 5e-4});
    CHECK(est.tan_eta == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(est.error_estimate < 1e-6);
}

TEST_CASE("interior double pole is bridged") {
    // shifted sinh-core: regular solution phase known in closed form
    const double e = 1.0, b = 0.5;
    const double r0 = std::atanh(b / e) / b;
    auto u = [&](double r) {
        const double sh = std::sinh(b * (r - r0));
        return b * b / (sh * sh);
    };
    const double poles[] = {r0};
    for (double k : {0.3, 0.9}) {
        const auto est = oracle::integrate_phase(u, 0, k, {1e-4, 120.0, 5e-4},
                                                 Boundary::regular(), poles);
        const double expected = (e + b) * k / (k * k - e * b);
        CHECK(std::atan(est.tan_eta) ==
              doctest::Approx(std::atan(expected)).epsilon(1e-7));
    }
}

TEST_CASE("fourth-order convergence") {
    // sharp barrier keeps the truncation error above the roundoff floor
    auto u = [](double r) {
        const double d = r - 1.5;
        return 8.0 * std::exp(-4.0 * d * d);
    };
    const double k = 1.5;
    auto tan_at = [&](double h) {
        return oracle::integrate_phase(u, 0, k, {1e-4, 30.0, h}).tan_eta;
    };
    const double ref = tan_at(1e-3);
    const double e1 = std::abs(tan_at(3.2e-2) - ref);
    const double e2 = std::abs(tan_at(1.6e-2) - ref);
    CHECK(e1 / e2 >= 8.0);
}

TEST_CASE("integrate_phase error paths") {
    auto slow = [](double r) { return 1.0 / (1.0 + r); };  // slower than 1/r^2
    CHECK_THROWS_AS(oracle::integrate_phase(slow, 0, 1.0, {1e-4, 40.0, 1e-3}),
                    std::domain_error);
    auto zero = [](double) { return 0.0; };
    CHECK_THROWS_AS(oracle::integrate_phase(zero, 0, 0.1, {1e-4, 40.0, 1e-3}),
                    std::domain_error);  // fewer than four oscillations
}

TEST_CASE("det_scan basics") {
    Eigen::MatrixXd Ms(1, 1), Mc(1, 1);
    Ms << 2.0;
    Mc << 1.0;
    const auto res = oracle::det_scan(Ms, Mc, -10.0, 10.0, 200);
    REQUIRE(res.roots.size() == 1);
    CHECK(res.roots[0] == doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("det_scan recovers a constructed spectrum") {
    std::mt19937 rng(17);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 2 + trial % 5;
        // Ms = Q diag(lams) Q^T, Mc = I: pencil roots are -lams
        Eigen::MatrixXd A(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) A(i, j) = g(rng);
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
        const Eigen::MatrixXd Q = qr.householderQ();
        Eigen::VectorXd lams(n);
        for (int i = 0; i < n; ++i) lams[i] = -3.0 + 6.0 * (i + 0.5) / n + 0.1 * g(rng);
        const Eigen::MatrixXd Ms = Q * lams.asDiagonal() * Q.transpose();
        const Eigen::MatrixXd Mc = Eigen::MatrixXd::Identity(n, n);
        const auto res = oracle::det_scan(Ms, Mc, -8.0, 8.0, 600);
        REQUIRE(static_cast<int>(res.roots.size()) == n);
        std::vector<double> expect(n);
        for (int i = 0; i < n; ++i) expect[i] = -lams[i];
        std::sort(expect.begin(), expect.end());
        for (int i = 0; i < n; ++i)
            CHECK(res.roots[i] == doctest::Approx(expect[i]).epsilon(1e-10));
    }
}

TEST_CASE("sphere quadrature") {
    CHECK(oracle::sphere_quadrature([](const Vec3&) { return 1.0; }, 12) ==
          doctest::Approx(4 * std::numbers::pi).epsilon(1e-13));
    CHECK(oracle::sphere_quadrature([](const Vec3& n) { return n.z() * n.z(); }, 12) ==
          doctest::Approx(4 * std::numbers::pi / 3).epsilon(1e-13));
    // unimodular plane-wave integrand
    const Vec3 a(0.4, -1.1, 2.2);
    auto f = [&](const Vec3& n) {
        return std::norm(std::exp(std::complex<double>(0, 1.7) * n.dot(a)));
    };
    CHECK(oracle::sphere_quadrature(f, 16) ==
          doctest::Approx(4 * std::numbers::pi).epsilon(1e-12));
    // and a genuinely oscillatory one against the closed form
    auto fc = [&](const Vec3& n) {
        return std::exp(std::complex<double>(0, 1.7) * n.dot(a));
    };
    const double ka = 1.7 * a.norm();
    const auto val = oracle::sphere_quadrature_c(fc, 24);
    CHECK(val.real() ==
          doctest::Approx(4 * std::numbers::pi * std::sin(ka) / ka).epsilon(1e-10));
    CHECK(std::abs(val.imag()) < 1e-10);
}

TEST_CASE("one-sided finite differences") {
    auto f = [](double x) { return std::sin(1.3 * x); };
    CHECK(oracle::derivative_onesided(f, 1, 1e-3, 8) ==
          doctest::Approx(1.3).epsilon(1e-10));
    CHECK(oracle::derivative_onesided(f, 3, 1e-2, 8) ==
          doctest::Approx(-1.3 * 1.3 * 1.3).epsilon(1e-7));
    // order 0 extrapolates to the expansion point
    auto g = [](double x) { return std::cos(x) / (1.0 + x); };
    CHECK(oracle::derivative_onesided(g, 0, 1e-3, 8) == doctest::Approx(1.0).epsilon(1e-11));
}
