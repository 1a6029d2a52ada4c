#include "zrp/scan.hpp"

#include <cmath>
#include <stdexcept>

#include "zrp/darboux.hpp"

namespace zrp::scan {

ScanPoint evaluate_point(const ScanRequest& req, double k) {
    const Geometry& g = req.geometry;
    greens::KernelSet ks;
    double delta = 0.0;
    switch (req.mode) {
        case KernelMode::Free:
            ks = greens::free_kernels(g, k);
            break;
        case KernelMode::DressedKernels:
            if (!req.background_b)
                throw std::invalid_argument("scan: dressed kernels need a background b");
            ks = greens::dressed_kernels(g, k, *req.background_b);
            delta = darboux::background_delta(k, *req.background_b);
            break;
        case KernelMode::DressedKernelsPlainCenter: {
            if (!req.background_b)
                throw std::invalid_argument("scan: dressed kernels need a background b");
            const int center = g.center_index;
            if (center < 0)
                throw std::invalid_argument(
                    "scan: plain-center mode needs a geometry with a marked center");
            ks = greens::dressed_kernels_plain_center(g, k, *req.background_b, center);
            delta = darboux::background_delta(k, *req.background_b);
            break;
        }
    }
    const auto [Ms, Mc] = multicenter::assemble_system(g, ks, k);
    ScanPoint p;
    p.k = k;
    p.solution = multicenter::solve_phases(Ms, Mc, k, delta);
    p.cross = multicenter::cross_sections(p.solution);
    return p;
}

std::vector<ScanPoint> run_scan_serial(const ScanRequest& req) {
    std::vector<ScanPoint> out(req.k_values.size());
    for (std::size_t i = 0; i < req.k_values.size(); ++i)
        out[i] = evaluate_point(req, req.k_values[i]);
    return out;
}

std::vector<ScanPoint> run_scan_parallel(const ScanRequest& req) {
    std::vector<ScanPoint> out(req.k_values.size());
    const auto n = static_cast<std::ptrdiff_t>(req.k_values.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        out[i] = evaluate_point(req, req.k_values[i]);
    return out;
}

std::vector<ScanPoint> run_scan(const ScanRequest& req, bool parallel) {
    return parallel ? run_scan_parallel(req) : run_scan_serial(req);
}

std::vector<double> k_grid_linear(double k_min, double k_max, int count) {
    if (!(k_min > 0.0) || !(k_max > k_min) || count < 2)
        throw std::invalid_argument("k_grid_linear: need 0 < k_min < k_max, count >= 2");
    std::vector<double> ks(count);
    for (int i = 0; i < count; ++i)
        ks[i] = k_min + (k_max - k_min) * i / (count - 1.0);
    return ks;
}

std::vector<double> energy_grid(double e_min_ha, double e_max_ha, int count,
                                bool log_spaced) {
    if (!(e_min_ha > 0.0) || !(e_max_ha > e_min_ha) || count < 2)
        throw std::invalid_argument("energy_grid: need 0 < emin < emax, count >= 2");
    std::vector<double> ks(count);
    for (int i = 0; i < count; ++i) {
        const double t = i / (count - 1.0);
        const double e = log_spaced
                             ? e_min_ha * std::pow(e_max_ha / e_min_ha, t)
                             : e_min_ha + (e_max_ha - e_min_ha) * t;
        ks[i] = energy_to_wavenumber(e);
    }
    return ks;
}

}  // namespace zrp::scan
