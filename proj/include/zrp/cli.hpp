#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zrp/scan.hpp"

// Command-level plumbing shared by the zrp executable and the tests:
// geometry-file ingestion, presets, energy scans, and CSV/JSON emission.
//
// Geometry file: one site per line, `x y z alpha [b e]`, whitespace
// separated, `#` comments, lengths in a0; `inf` is accepted for alpha and
// e. A site with dressing columns carries the trivial step (e = +-b) used
// by the effective-alpha mode.

namespace zrp::cli {

struct DressSpec {
    std::string site;  // index, "all", "x", "y", or "bg"
    double b = 0.0;
    std::optional<double> e;  // absent: e = -b; NaN-free "inf" maps to background
    bool e_infinite = false;
};

struct RunConfig {
    std::string preset;         // single | x2 | x3 | x4 | yx4 | silane | silane-dressed
    std::string geometry_path;  // alternative to preset

    // preset parameters (defaults follow the silane study)
    double R = 4.51;
    double D = 2.76;
    double alpha = 0.33;
    double beta = 0.41;

    double emin = 0.1, emax = 12.0;  // in `unit`
    int npts = 200;
    bool log_grid = false;
    std::string unit = "ev";    // ev | ha
    std::string format = "csv"; // csv | json

    std::vector<DressSpec> dress;
    std::string mode = "effective-alpha";  // effective-alpha | dressed-kernels
    bool verify = false;

    // silane-dressed b selection
    std::optional<std::array<double, 3>> scan_b;  // {bmin, bmax, count}
    std::string ref_path;  // reference curve (E_eV, sigma) for the scan

    std::string out;  // empty: stdout
};

struct Table {
    std::vector<std::pair<std::string, std::string>> config_echo;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

Geometry parse_geometry_file(const std::string& path);

// geometry + kernel mode + background implied by the config
struct ResolvedRun {
    scan::ScanRequest request;
    std::vector<double> energies_ev;
};
ResolvedRun resolve(const RunConfig& cfg);

Table cmd_phases(const RunConfig& cfg);
Table cmd_ics(const RunConfig& cfg);
Table cmd_poles(int l, double alpha_value, bool alpha_infinite = false);

struct VerifyReport {
    double max_deviation = 0.0;
    int points = 0;
};
// closed-form fast path vs generalized solver across the grid
VerifyReport cmd_verify(const RunConfig& cfg);

void write_csv(const Table& t, std::ostream& os);
void write_json(const Table& t, std::ostream& os);
void write_table(const Table& t, const RunConfig& cfg);

}  // namespace zrp::cli
