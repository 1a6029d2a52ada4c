#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "zrp/cli.hpp"

// zrp: zero-range-potential multi-center scattering scans.
//
//   zrp phases --preset x4 --alpha 0.33 --R 4.51 --emin 0.1 --emax 12 --n 200
//   zrp ics    --preset silane --format json --out silane.json
//   zrp ics    --preset silane-dressed --dress all:0.1
//   zrp poles  --l 1 --alpha -8
//   zrp verify --preset yx4

namespace {

void add_common(CLI::App* cmd, zrp::cli::RunConfig& cfg,
                std::vector<std::string>& dress_specs) {
    cmd->add_option("--preset", cfg.preset,
                    "single|x2|x3|x4|yx4|silane|silane-dressed");
    cmd->add_option("--geometry", cfg.geometry_path,
                    "site file: x y z alpha [b e], '#' comments");
    cmd->add_option("--alpha", cfg.alpha, "inverse scattering length of the X sites");
    cmd->add_option("--beta", cfg.beta, "inverse scattering length of the Y site");
    cmd->add_option("--R", cfg.R, "Xn edge length (a0)");
    cmd->add_option("--D", cfg.D, "X-Y distance (a0)");
    cmd->add_option("--emin", cfg.emin, "grid start (unit)");
    cmd->add_option("--emax", cfg.emax, "grid end (unit)");
    cmd->add_option("--n", cfg.npts, "grid point count");
    cmd->add_flag("--log", cfg.log_grid, "log-spaced energy grid");
    cmd->add_option("--unit", cfg.unit, "ev|ha (default ev)");
    cmd->add_option("--format", cfg.format, "csv|json (default csv)");
    cmd->add_option("--dress", dress_specs,
                    "<site>:<b>[,<e>]; site = index|all|x|y|bg, e defaults to -b, "
                    "'inf' selects the background step");
    cmd->add_option("--mode", cfg.mode, "effective-alpha|dressed-kernels");
    cmd->add_option("--out", cfg.out, "output path (default stdout)");
}

zrp::cli::DressSpec parse_dress(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw CLI::ValidationError("--dress", "expected <site>:<b>[,<e>]");
    zrp::cli::DressSpec d;
    d.site = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    const auto comma = rest.find(',');
    std::string btok = rest.substr(0, comma);
    d.b = std::stod(btok);
    if (comma != std::string::npos) {
        const std::string etok = rest.substr(comma + 1);
        if (etok == "inf")
            d.e_infinite = true;
        else
            d.e = std::stod(etok);
    }
    return d;
}

void finalize_dress(zrp::cli::RunConfig& cfg, const std::vector<std::string>& specs) {
    for (const auto& s : specs) cfg.dress.push_back(parse_dress(s));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zero-range-potential multi-center scattering"};
    app.require_subcommand(1);

    zrp::cli::RunConfig cfg;
    std::vector<std::string> dress_specs;
    std::string scan_b_spec;

    auto* phases = app.add_subcommand("phases", "partial-wave tangents over an energy grid");
    add_common(phases, cfg, dress_specs);
    phases->add_flag("--verify", cfg.verify,
                     "cross-run closed forms against the pencil solver");

    auto* ics = app.add_subcommand("ics", "integral cross-section curve");
    add_common(ics, cfg, dress_specs);
    ics->add_option("--scan-b", scan_b_spec, "bmin:bmax:count dressing-parameter scan");
    ics->add_option("--ref", cfg.ref_path, "reference curve (E_eV,sigma) for the b scan");

    int pole_l = 0;
    double pole_alpha = 0.33;
    auto* poles = app.add_subcommand("poles", "single-center S-matrix poles");
    poles->add_option("--l", pole_l, "angular momentum");
    poles->add_option("--alpha", pole_alpha, "inverse scattering length");
    poles->add_option("--format", cfg.format, "csv|json");
    poles->add_option("--out", cfg.out, "output path");

    auto* verify = app.add_subcommand("verify", "closed forms vs solver, max deviation");
    add_common(verify, cfg, dress_specs);

    CLI11_PARSE(app, argc, argv);

    try {
        finalize_dress(cfg, dress_specs);
        if (!scan_b_spec.empty()) {
            double bmin, bmax;
            int count;
            if (std::sscanf(scan_b_spec.c_str(), "%lf:%lf:%d", &bmin, &bmax, &count) != 3)
                throw std::runtime_error("--scan-b expects bmin:bmax:count");
            cfg.scan_b = std::array<double, 3>{bmin, bmax, static_cast<double>(count)};
        }

        if (phases->parsed()) {
            zrp::cli::write_table(zrp::cli::cmd_phases(cfg), cfg);
        } else if (ics->parsed()) {
            zrp::cli::write_table(zrp::cli::cmd_ics(cfg), cfg);
        } else if (poles->parsed()) {
            zrp::cli::write_table(zrp::cli::cmd_poles(pole_l, pole_alpha), cfg);
        } else if (verify->parsed()) {
            const auto rep = zrp::cli::cmd_verify(cfg);
            std::printf("verify: %d grid points, max deviation %.3e\n", rep.points,
                        rep.max_deviation);
            return rep.max_deviation < 1e-10 ? 0 : 1;
        }
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
    return 0;
}
