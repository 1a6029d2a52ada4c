#include "zrp/core.hpp"

#include <cmath>
#include <numbers>

namespace zrp {

double energy_to_wavenumber(double energy_ha) {
    if (!(energy_ha > 0.0))
        throw std::domain_error("energy_to_wavenumber: energy must be positive");
    return std::sqrt(2.0 * energy_ha);
}

double wavenumber_to_energy(double k) {
    if (!(k > 0.0))
        throw std::domain_error("wavenumber_to_energy: k must be positive");
    return 0.5 * k * k;
}

void Geometry::validate() const {
    const int m = n();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if ((sites[i].position - sites[j].position).norm() < 1e-12)
                throw std::invalid_argument("Geometry: duplicate site positions");
        }
}

namespace {

Site make_site(const Vec3& p, Alpha a) {
    Site s;
    s.position = p;
    s.channel = Channel(0, a);
    return s;
}

}  // namespace

Geometry build_xn(int n, double R, Alpha alpha) {
    if (n < 2 || n > 4)
        throw std::invalid_argument("build_xn: only n in {2,3,4} supported");
    if (!(R > 0.0)) throw std::invalid_argument("build_xn: R must be positive");

    Geometry g;
    switch (n) {
        case 2:
            g.sites.push_back(make_site({0, 0, R / 2}, alpha));
            g.sites.push_back(make_site({0, 0, -R / 2}, alpha));
            break;
        case 3: {
            const double rc = R / std::sqrt(3.0);  // circumradius
            for (int j = 0; j < 3; ++j) {
                const double phi = 2.0 * std::numbers::pi * j / 3.0;
                g.sites.push_back(make_site({rc * std::cos(phi), rc * std::sin(phi), 0}, alpha));
            }
            break;
        }
        case 4: {
            const double a = R / (2.0 * std::sqrt(2.0));  // cube half-edge
            g.sites.push_back(make_site({a, a, a}, alpha));
            g.sites.push_back(make_site({a, -a, -a}, alpha));
            g.sites.push_back(make_site({-a, a, -a}, alpha));
            g.sites.push_back(make_site({-a, -a, a}, alpha));
            break;
        }
    }
    g.validate();
    return g;
}

Geometry build_yx4(double D, Alpha alpha, Alpha beta) {
    if (!(D > 0.0)) throw std::invalid_argument("build_yx4: D must be positive");
    const double R = 2.0 * std::sqrt(2.0 / 3.0) * D;
    Geometry g = build_xn(4, R, alpha);
    g.sites.push_back(make_site(Vec3::Zero(), beta));
    g.center_index = 4;
    g.validate();
    return g;
}

Geometry build_yxn(int n, double R, const Vec3& y, Alpha alpha, Alpha beta) {
    Geometry g = build_xn(n, R, alpha);
    if (n == 4) {
        Vec3 centroid = Vec3::Zero();
        for (const auto& s : g.sites) centroid += s.position;
        centroid /= 4.0;
        if ((y - centroid).norm() > 1e-9 * (1.0 + R))
            throw std::invalid_argument(
                "build_yxn: for n=4 the center must sit at the centroid");
    }
    double d0 = (g.sites[0].position - y).norm();
    for (const auto& s : g.sites) {
        const double d = (s.position - y).norm();
        if (std::abs(d - d0) > 1e-12 * (1.0 + d0))
            throw std::invalid_argument(
                "build_yxn: center is not equidistant from the X sites");
    }
    g.sites.push_back(make_site(y, beta));
    g.center_index = n;
    g.validate();
    return g;
}

Geometry build_yxn(int n, double D, Alpha alpha, Alpha beta) {
    if (n != 4)
        throw std::invalid_argument(
            "build_yxn(n, D): center position is fixed by the distance only for "
            "n=4; supply an explicit center position for n=2,3");
    return build_yx4(D, alpha, beta);
}

}  // namespace zrp
