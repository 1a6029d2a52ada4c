#pragma once

#include <optional>
#include <vector>

#include "zrp/multicenter.hpp"

// Energy-scan engine. Each grid point is independent; the OpenMP kernel and
// the serial reference walk the same per-point code path, so their outputs
// are bitwise identical.

namespace zrp::scan {

enum class KernelMode {
    Free,            // free kernels; per-site trivial dressing still applies
    DressedKernels,  // background sinh step at the origin; sites off-center
    DressedKernelsPlainCenter,  // background step, center site kept plain
};

struct ScanRequest {
    Geometry geometry;
    std::vector<double> k_values;
    KernelMode mode = KernelMode::Free;
    std::optional<double> background_b;  // required for the dressed modes
};

struct ScanPoint {
    double k = 0.0;
    multicenter::PhaseSolution solution;
    multicenter::CrossSections cross;
};

ScanPoint evaluate_point(const ScanRequest& req, double k);

std::vector<ScanPoint> run_scan_serial(const ScanRequest& req);
std::vector<ScanPoint> run_scan_parallel(const ScanRequest& req);
std::vector<ScanPoint> run_scan(const ScanRequest& req, bool parallel = true);

// Grid helpers; energies are converted to k internally (atomic units).
std::vector<double> k_grid_linear(double k_min, double k_max, int count);
std::vector<double> energy_grid(double e_min_ha, double e_max_ha, int count, bool log_spaced);

}  // namespace zrp::scan
