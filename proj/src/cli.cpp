#include "zrp/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "zrp/darboux.hpp"
#include "zrp/gzrp.hpp"
#include "zrp/structures.hpp"

namespace zrp::cli {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool is_preset_structure(const std::string& p) {
    return p == "single" || p == "x2" || p == "x3" || p == "x4" || p == "yx4" ||
           p == "silane" || p == "silane-dressed";
}

}  // namespace

Geometry parse_geometry_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open geometry file: " + path);
    Geometry g;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        if (tok.size() != 4 && tok.size() != 6)
            throw std::runtime_error("geometry file line " + std::to_string(lineno) +
                                     ": expected `x y z alpha [b e]`");
        auto num = [&](const std::string& s, const char* what) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(s, &pos);
                if (pos != s.size()) throw std::invalid_argument(s);
                return v;
            } catch (const std::exception&) {
                throw std::runtime_error("geometry file line " + std::to_string(lineno) +
                                         ": bad " + what + " value '" + s + "'");
            }
        };
        Site site;
        site.position = Vec3(num(tok[0], "x"), num(tok[1], "y"), num(tok[2], "z"));
        site.channel =
            Channel(0, tok[3] == "inf" ? Alpha::inf() : Alpha(num(tok[3], "alpha")));
        if (tok.size() == 6) {
            const double b = num(tok[4], "b");
            const Alpha e = (tok[5] == "inf") ? Alpha::inf() : Alpha(num(tok[5], "e"));
            site.dressing = DressingStep(b, e);
        }
        g.sites.push_back(site);
    }
    try {
        g.validate();
    } catch (const std::exception& ex) {
        throw std::runtime_error(std::string("geometry file: ") + ex.what());
    }
    if (g.sites.empty()) throw std::runtime_error("geometry file: no sites");
    return g;
}

namespace {

Geometry preset_geometry(const RunConfig& cfg) {
    const std::string& p = cfg.preset;
    if (p == "single") {
        Geometry g;
        Site s;
        s.channel = Channel(0, Alpha(cfg.alpha));
        g.sites.push_back(s);
        return g;
    }
    if (p == "x2") return build_xn(2, cfg.R, Alpha(cfg.alpha));
    if (p == "x3") return build_xn(3, cfg.R, Alpha(cfg.alpha));
    if (p == "x4") return build_xn(4, cfg.R, Alpha(cfg.alpha));
    if (p == "yx4") return build_yx4(cfg.D, Alpha(cfg.alpha), Alpha(cfg.beta));
    if (p == "silane") return build_yx4(2.76, Alpha(0.33), Alpha(0.41));
    if (p == "silane-dressed") return build_yx4(2.76, Alpha(0.35), Alpha(0.38));
    throw std::runtime_error("unknown preset: " + p);
}

void apply_dress(Geometry& g, const DressSpec& d, scan::ScanRequest& req,
                 const std::string& mode) {
    if (d.site == "bg" || (mode == "dressed-kernels" && (d.site == "y" || d.site == "all"))) {
        req.background_b = d.b;
        req.mode = (g.center_index >= 0) ? scan::KernelMode::DressedKernelsPlainCenter
                                         : scan::KernelMode::DressedKernels;
        g.background = DressingStep(d.b, Alpha::inf());
        return;
    }
    const Alpha e = d.e_infinite ? Alpha::inf()
                                 : Alpha(d.e.value_or(-d.b));
    if (e.is_infinite())
        throw std::runtime_error("--dress: e=inf is only valid for the background (site bg)");
    auto step = DressingStep(d.b, e);
    if (!step.trivial())
        throw std::runtime_error("--dress: per-site steps must have e = +b or e = -b");
    auto apply_one = [&](int i) { g.sites[i].dressing = step; };
    if (d.site == "all") {
        for (int i = 0; i < g.n(); ++i) apply_one(i);
    } else if (d.site == "x") {
        for (int i = 0; i < g.n(); ++i)
            if (i != g.center_index) apply_one(i);
    } else if (d.site == "y") {
        if (g.center_index < 0) throw std::runtime_error("--dress y: geometry has no center");
        apply_one(g.center_index);
    } else {
        int i = -1;
        try {
            i = std::stoi(d.site);
        } catch (...) {
        }
        if (i < 0 || i >= g.n())
            throw std::runtime_error("--dress: bad site token '" + d.site + "'");
        apply_one(i);
    }
}

}  // namespace

ResolvedRun resolve(const RunConfig& cfg) {
    if (!(cfg.emin > 0.0) || !(cfg.emax > cfg.emin) || cfg.npts < 2)
        throw std::runtime_error("grid: need 0 < emin < emax and n >= 2");
    if (cfg.unit != "ev" && cfg.unit != "ha") throw std::runtime_error("unit must be ev|ha");

    ResolvedRun rr;
    Geometry g = cfg.geometry_path.empty() ? preset_geometry(cfg)
                                           : parse_geometry_file(cfg.geometry_path);
    rr.request.mode = scan::KernelMode::Free;
    for (const auto& d : cfg.dress) apply_dress(g, d, rr.request, cfg.mode);
    if (cfg.mode == "dressed-kernels" && !rr.request.background_b)
        throw std::runtime_error("dressed-kernels mode needs --dress bg:<b>");
    rr.request.geometry = g;

    const double to_ha = (cfg.unit == "ev") ? 1.0 / hartree_in_ev : 1.0;
    rr.request.k_values =
        scan::energy_grid(cfg.emin * to_ha, cfg.emax * to_ha, cfg.npts, cfg.log_grid);
    rr.energies_ev.resize(rr.request.k_values.size());
    for (std::size_t i = 0; i < rr.request.k_values.size(); ++i)
        rr.energies_ev[i] = hartree_to_ev(wavenumber_to_energy(rr.request.k_values[i]));
    return rr;
}

namespace {

// Closed-form fast path for the equidistant presets; per-site trivial
// dressing enters through the energy-dependent effective strength.
struct FastPoint {
    std::vector<double> tans;  // expanded by multiplicity, sorted by eta
    double delta = 0.0;
};

double site_alpha(const Geometry& g, int i, double k) {
    const Site& s = g.sites[i];
    if (s.dressing) {
        const int sign = (s.dressing->e.value == s.dressing->b) ? 1 : -1;
        return darboux::effective_alpha(s.channel.alpha, s.dressing->b, sign, k);
    }
    return s.channel.alpha.value;
}

std::optional<FastPoint> fast_phases(const RunConfig& cfg, const scan::ScanRequest& req,
                                     double k) {
    if (!cfg.geometry_path.empty() || !is_preset_structure(cfg.preset) ||
        req.mode != scan::KernelMode::Free)
        return std::nullopt;
    const Geometry& g = req.geometry;
    FastPoint fp;
    if (cfg.preset == "single") {
        fp.tans = {-k / site_alpha(g, 0, k)};
        return fp;
    }
    if (cfg.preset == "x2" || cfg.preset == "x3" || cfg.preset == "x4") {
        const int n = g.n();
        const auto r = structures::xn_phases(n, cfg.R, site_alpha(g, 0, k), k);
        fp.tans.assign(n - 1, r.tan_eta_deg);
        fp.tans.push_back(r.tan_eta_1);
        std::sort(fp.tans.begin(), fp.tans.end(),
                  [](double a, double b) { return std::atan(a) < std::atan(b); });
        return fp;
    }
    // yx4 family
    const double R = 2.0 * std::sqrt(2.0 / 3.0) * (cfg.preset == "yx4" ? cfg.D : 2.76);
    const double D = (cfg.preset == "yx4") ? cfg.D : 2.76;
    const double a = site_alpha(g, 0, k);
    const double b = site_alpha(g, g.center_index, k);
    const auto r = structures::yxn_phases(4, R, D, a, b, k);
    fp.tans = {r.tan_eta_deg, r.tan_eta_deg, r.tan_eta_deg, r.tan_eta_1, r.tan_eta_2};
    std::sort(fp.tans.begin(), fp.tans.end(),
              [](double x, double y) { return std::atan(x) < std::atan(y); });
    return fp;
}

std::vector<double> expanded_tans(const multicenter::PhaseSolution& sol) {
    std::vector<double> t;
    for (const auto& m : sol.modes)
        for (int j = 0; j < m.multiplicity; ++j) t.push_back(m.tan_eta);
    std::sort(t.begin(), t.end(), [](double a, double b) { return std::atan(a) < std::atan(b); });
    return t;
}

void echo_common(Table& t, const RunConfig& cfg, const ResolvedRun& rr) {
    if (!cfg.preset.empty()) t.config_echo.emplace_back("preset", cfg.preset);
    if (!cfg.geometry_path.empty()) t.config_echo.emplace_back("geometry", cfg.geometry_path);
    if (cfg.preset == "silane") {
        t.config_echo.emplace_back("alpha", fmt(0.33));
        t.config_echo.emplace_back("beta", fmt(0.41));
        t.config_echo.emplace_back("D", fmt(2.76));
        t.config_echo.emplace_back("R", fmt(2.0 * std::sqrt(2.0 / 3.0) * 2.76));
    } else if (cfg.preset == "silane-dressed") {
        t.config_echo.emplace_back("alpha", fmt(0.35));
        t.config_echo.emplace_back("beta", fmt(0.38));
        t.config_echo.emplace_back("D", fmt(2.76));
        t.config_echo.emplace_back("R", fmt(2.0 * std::sqrt(2.0 / 3.0) * 2.76));
    } else if (!cfg.preset.empty() && cfg.preset != "single") {
        t.config_echo.emplace_back("alpha", fmt(cfg.alpha));
        if (cfg.preset == "yx4") {
            t.config_echo.emplace_back("beta", fmt(cfg.beta));
            t.config_echo.emplace_back("D", fmt(cfg.D));
        } else {
            t.config_echo.emplace_back("R", fmt(cfg.R));
        }
    } else if (cfg.preset == "single") {
        t.config_echo.emplace_back("alpha", fmt(cfg.alpha));
    }
    t.config_echo.emplace_back("mode", cfg.mode);
    for (const auto& d : cfg.dress) {
        std::string spec = d.site + ":" + fmt(d.b);
        if (d.e_infinite)
            spec += ",inf";
        else if (d.e)
            spec += "," + fmt(*d.e);
        t.config_echo.emplace_back("dress", spec);
    }
    t.config_echo.emplace_back("emin", fmt(cfg.emin));
    t.config_echo.emplace_back("emax", fmt(cfg.emax));
    t.config_echo.emplace_back("n", std::to_string(cfg.npts));
    t.config_echo.emplace_back("grid", cfg.log_grid ? "log" : "linear");
    t.config_echo.emplace_back("unit", cfg.unit);
    (void)rr;
}

}  // namespace

Table cmd_phases(const RunConfig& cfg) {
    const ResolvedRun rr = resolve(cfg);
    const int n = rr.request.geometry.n();

    Table t;
    echo_common(t, cfg, rr);
    t.columns = {"E_ev", "k_au"};
    for (int i = 1; i <= n; ++i) t.columns.push_back("tan_eta_" + std::to_string(i));

    double max_dev = 0.0;
    for (std::size_t i = 0; i < rr.request.k_values.size(); ++i) {
        const double k = rr.request.k_values[i];
        std::vector<double> row{rr.energies_ev[i], k};
        const auto fast = fast_phases(cfg, rr.request, k);
        std::vector<double> tans;
        if (fast && !cfg.verify) {
            tans = fast->tans;
        } else {
            const auto pt = scan::evaluate_point(rr.request, k);
            tans = expanded_tans(pt.solution);
            if (fast) {
                for (std::size_t j = 0; j < tans.size() && j < fast->tans.size(); ++j) {
                    const double a = fast->tans[j], b = tans[j];
                    const double dev = (std::isinf(a) || std::isinf(b))
                                           ? std::abs(std::atan(a) - std::atan(b))
                                           : std::abs(a - b) / (1.0 + std::abs(a));
                    max_dev = std::max(max_dev, dev);
                }
            }
        }
        row.insert(row.end(), tans.begin(), tans.end());
        t.rows.push_back(std::move(row));
    }
    if (cfg.verify) t.config_echo.emplace_back("verify_max_deviation", fmt(max_dev));
    return t;
}

namespace {

struct CurveStats {
    bool has_local_min = false;
    double e_min = 0.0, sigma_min = 0.0, rel_depth = 0.0;
};

CurveStats curve_minimum(const std::vector<double>& e_ev, const std::vector<double>& sig,
                         double e_lo, double e_hi) {
    CurveStats st;
    for (std::size_t i = 1; i + 1 < e_ev.size(); ++i) {
        if (e_ev[i] < e_lo || e_ev[i] > e_hi) continue;
        if (sig[i] < sig[i - 1] && sig[i] < sig[i + 1]) {
            // walk out to the enclosing maxima for a depth measure
            std::size_t a = i, b = i;
            while (a > 0 && sig[a - 1] > sig[a]) --a;
            while (b + 1 < sig.size() && sig[b + 1] > sig[b]) ++b;
            const double shoulder = std::min(sig[a], sig[b]);
            const double depth = (shoulder - sig[i]) / shoulder;
            if (!st.has_local_min || depth > st.rel_depth) {
                st.has_local_min = true;
                st.e_min = e_ev[i];
                st.sigma_min = sig[i];
                st.rel_depth = depth;
            }
        }
    }
    return st;
}

std::vector<double> ics_curve(const ResolvedRun& rr) {
    std::vector<double> sig(rr.request.k_values.size());
    const auto pts = scan::run_scan(rr.request, true);
    for (std::size_t i = 0; i < pts.size(); ++i) sig[i] = pts[i].cross.averaged;
    return sig;
}

}  // namespace

Table cmd_ics(const RunConfig& cfg) {
    RunConfig work = cfg;

    // silane-dressed without explicit dressing: pick b by coarse scan
    if (cfg.preset == "silane-dressed" && cfg.dress.empty()) {
        if (!cfg.scan_b && cfg.ref_path.empty())
            throw std::runtime_error(
                "silane-dressed needs --dress, --scan-b, or --ref (the study does not fix b)");
        const auto range = cfg.scan_b.value_or(std::array<double, 3>{0.05, 2.0, 40});
        std::vector<std::pair<double, double>> ref;  // (E_ev, sigma)
        if (!cfg.ref_path.empty()) {
            std::ifstream in(cfg.ref_path);
            if (!in) throw std::runtime_error("cannot open reference curve: " + cfg.ref_path);
            double e, s;
            char comma;
            std::string line;
            while (std::getline(in, line)) {
                std::istringstream ls(line);
                if (ls >> e) {
                    if (ls.peek() == ',') ls >> comma;
                    if (ls >> s) ref.emplace_back(e, s);
                }
            }
        }
        double best_b = 0.0, best_score = std::numeric_limits<double>::infinity();
        bool best_usable = false;
        const int nb = static_cast<int>(range[2]);
        for (int i = 0; i < nb; ++i) {
            const double b = range[0] + (range[1] - range[0]) * i / std::max(1, nb - 1);
            RunConfig trial = cfg;
            trial.dress = {DressSpec{"all", b, std::nullopt, false}};
            const ResolvedRun rr = resolve(trial);
            const auto sig = ics_curve(rr);
            double score;
            if (!ref.empty()) {
                score = 0.0;  // L2 mismatch on the low-energy window
                for (const auto& [re, rsig] : ref) {
                    if (re > 2.0) continue;
                    std::size_t jbest = 0;
                    for (std::size_t j = 1; j < rr.energies_ev.size(); ++j)
                        if (std::abs(rr.energies_ev[j] - re) <
                            std::abs(rr.energies_ev[jbest] - re))
                            jbest = j;
                    score += (sig[jbest] - rsig) * (sig[jbest] - rsig);
                }
            } else {
                const auto st = curve_minimum(rr.energies_ev, sig, 0.1, 1.0);
                score = st.has_local_min ? -st.rel_depth : 0.0;
            }
            if (score < best_score) {
                best_score = score;
                best_b = b;
                best_usable = !ref.empty() || score < 0.0;
            }
        }
        if (!best_usable)
            throw std::runtime_error(
                "b-scan found no dressing parameter with a low-energy minimum; "
                "pass --dress explicitly");
        work.dress = {DressSpec{"all", best_b, std::nullopt, false}};
        work.scan_b = cfg.scan_b;
    }

    const ResolvedRun rr = resolve(work);
    const int n = rr.request.geometry.n();
    const auto pts = scan::run_scan(rr.request, true);

    Table t;
    echo_common(t, work, rr);
    t.columns = {"E_ev", "k_au", "sigma_au", "sigma_total_au"};
    for (int i = 1; i <= n; ++i) t.columns.push_back("sigma_" + std::to_string(i));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<double> row{rr.energies_ev[i], pts[i].k, pts[i].cross.averaged,
                                pts[i].cross.total};
        for (std::size_t m = 0; m < pts[i].solution.modes.size(); ++m)
            for (int j = 0; j < pts[i].solution.modes[m].multiplicity; ++j)
                row.push_back(pts[i].cross.partial[m]);
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table cmd_poles(int l, double alpha_value, bool alpha_infinite) {
    Channel ch(l, alpha_infinite ? Alpha::inf() : Alpha(alpha_value));
    const auto ps = gzrp::resonance_poles(ch);
    Table t;
    t.config_echo.emplace_back("l", std::to_string(l));
    t.config_echo.emplace_back("alpha", alpha_infinite ? "inf" : fmt(alpha_value));
    // type: 0 bound, 1 antibound, 2 resonance
    t.columns = {"type", "k_re_au", "k_im_au", "E_re_ha", "E_im_ha", "E_re_ev", "E_im_ev"};
    auto push = [&](int type, std::complex<double> kpole, std::complex<double> E) {
        t.rows.push_back({static_cast<double>(type), kpole.real(), kpole.imag(), E.real(),
                          E.imag(), hartree_to_ev(E.real()), hartree_to_ev(E.imag())});
    };
    // imaginary-axis poles report the (anti)binding energy magnitude
    if (ps.bound) push(0, {0.0, ps.bound->b}, ps.bound->energy);
    if (ps.antibound) push(1, {0.0, ps.antibound->b}, ps.antibound->energy);
    for (const auto& p : ps.resonances) push(2, p, 0.5 * p * p);
    return t;
}

VerifyReport cmd_verify(const RunConfig& cfg) {
    RunConfig work = cfg;
    work.verify = true;
    const Table t = cmd_phases(work);
    VerifyReport rep;
    rep.points = static_cast<int>(t.rows.size());
    for (const auto& [key, val] : t.config_echo)
        if (key == "verify_max_deviation") rep.max_deviation = std::stod(val);
    return rep;
}

void write_csv(const Table& t, std::ostream& os) {
    for (const auto& [k, v] : t.config_echo) os << "# " << k << " = " << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            os << fmt(row[i]) << (i + 1 < row.size() ? "," : "\n");
}

void write_json(const Table& t, std::ostream& os) {
    nlohmann::ordered_json j;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.config_echo) {
        if (cfg.contains(k)) {  // repeated keys (e.g. dress) become arrays
            if (!cfg[k].is_array()) cfg[k] = nlohmann::ordered_json::array({cfg[k]});
            cfg[k].push_back(v);
        } else {
            cfg[k] = v;
        }
    }
    j["config"] = cfg;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    os << j.dump(1) << "\n";
}

void write_table(const Table& t, const RunConfig& cfg) {
    auto emit = [&](std::ostream& os) {
        if (cfg.format == "json")
            write_json(t, os);
        else
            write_csv(t, os);
    };
    if (cfg.out.empty()) {
        emit(std::cout);
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
        emit(f);
    }
}

}  // namespace zrp::cli
