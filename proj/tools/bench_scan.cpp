#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "zrp/scan.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

// Times the serial reference scan against the OpenMP kernel on the silane
// geometry, free and dressed-kernel paths.

namespace {

using clock_type = std::chrono::high_resolution_clock;

double time_ms(const zrp::scan::ScanRequest& req, bool parallel) {
    const auto t0 = clock_type::now();
    const auto pts = zrp::scan::run_scan(req, parallel);
    const auto t1 = clock_type::now();
    volatile double sink = pts.back().cross.averaged;  // keep the work alive
    (void)sink;
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void bench(const char* name, const zrp::scan::ScanRequest& req) {
    const double ser = time_ms(req, false);
    const double par = time_ms(req, true);
    std::printf("%-22s %8zu pts   serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n",
                name, req.k_values.size(), ser, par, ser / par);
}

}  // namespace

int main(int argc, char** argv) {
    int npts = argc > 1 ? std::atoi(argv[1]) : 4000;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    zrp::scan::ScanRequest req;
    req.geometry = zrp::build_yx4(2.76, zrp::Alpha(0.33), zrp::Alpha(0.41));
    req.k_values = zrp::scan::energy_grid(zrp::ev_to_hartree(0.1),
                                          zrp::ev_to_hartree(12.0), npts, false);
    bench("silane free", req);

    zrp::scan::ScanRequest dressed = req;
    dressed.mode = zrp::scan::KernelMode::DressedKernelsPlainCenter;
    dressed.background_b = 0.5;
    dressed.k_values = zrp::scan::energy_grid(zrp::ev_to_hartree(0.1),
                                              zrp::ev_to_hartree(12.0), npts / 4, false);
    bench("silane dressed-kernel", dressed);

    return 0;
}
