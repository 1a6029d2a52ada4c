#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "zrp/cli.hpp"

using namespace zrp;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << content;
    return path.string();
}

}  // namespace

TEST_CASE("parallel scan equals the serial reference") {
    scan::ScanRequest req;
    req.geometry = build_yx4(2.76, Alpha(0.33), Alpha(0.41));
    req.k_values = scan::energy_grid(ev_to_hartree(0.1), ev_to_hartree(12.0), 101, false);

    const auto a = scan::run_scan_serial(req);
    const auto b = scan::run_scan_parallel(req);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].k == b[i].k);
        CHECK(a[i].cross.averaged == b[i].cross.averaged);  // bitwise
        REQUIRE(a[i].solution.modes.size() == b[i].solution.modes.size());
        for (std::size_t m = 0; m < a[i].solution.modes.size(); ++m)
            CHECK(a[i].solution.modes[m].tan_eta == b[i].solution.modes[m].tan_eta);
    }

    // dressed-kernel path too
    scan::ScanRequest dr = req;
    dr.mode = scan::KernelMode::DressedKernelsPlainCenter;
    dr.background_b = 0.6;
    dr.k_values.resize(24);
    const auto da = scan::run_scan_serial(dr);
    const auto db = scan::run_scan_parallel(dr);
    for (std::size_t i = 0; i < da.size(); ++i)
        CHECK(da[i].cross.averaged == db[i].cross.averaged);
}

TEST_CASE("geometry file parsing") {
    SUBCASE("five-site file with comments and dressing") {
        const std::string path = write_temp("yx4_sites.txt", R"(# silane-like cluster
 2.76 0 0   0.33
-2.76 0 0   0.33
 0  2.76 0  0.33  0.2 -0.2
 0 -2.76 0  0.33
 0 0 0      0.41
)");
        const Geometry g = cli::parse_geometry_file(path);
        REQUIRE(g.n() == 5);
        CHECK(g.sites[2].dressing.has_value());
        CHECK(g.sites[2].dressing->b == doctest::Approx(0.2));
        CHECK_FALSE(g.sites[0].dressing.has_value());
        CHECK(g.sites[4].channel.alpha.value == doctest::Approx(0.41));
    }

    SUBCASE("alpha and e accept inf") {
        const std::string path = write_temp("inf_sites.txt", "0 0 0 inf 0.5 inf\n1 0 0 0.3\n");
        const Geometry g = cli::parse_geometry_file(path);
        CHECK(g.sites[0].channel.alpha.is_infinite());
        CHECK(g.sites[0].dressing->e.is_infinite());
    }

    SUBCASE("duplicate positions rejected") {
        const std::string path = write_temp("dup_sites.txt", "0 0 0 0.3\n0 0 0 0.4\n");
        CHECK_THROWS_WITH_AS(cli::parse_geometry_file(path),
                             doctest::Contains("duplicate"), std::runtime_error);
    }

    SUBCASE("malformed line reports its number") {
        const std::string path = write_temp("bad_sites.txt", "0 0 0 0.3\n1 0 zz 0.4\n");
        CHECK_THROWS_WITH_AS(cli::parse_geometry_file(path), doctest::Contains("line 2"),
                             std::runtime_error);
    }
}

TEST_CASE("phases and ics tables") {
    cli::RunConfig cfg;
    cfg.preset = "x4";
    cfg.R = 4.51;
    cfg.alpha = 0.33;
    cfg.emin = 0.1;
    cfg.emax = 2.0;
    cfg.npts = 7;

    const auto t = cli::cmd_phases(cfg);
    REQUIRE(t.columns.size() == 2 + 4);
    REQUIRE(t.rows.size() == 7);
    for (const auto& row : t.rows) REQUIRE(row.size() == t.columns.size());

    // --verify reports the fast-path/solver deviation
    cfg.verify = true;
    const auto rep = cli::cmd_verify(cfg);
    CHECK(rep.points == 7);
    CHECK(rep.max_deviation < 1e-10);

    // silane parameter echo
    cli::RunConfig sil;
    sil.preset = "silane";
    sil.npts = 3;
    sil.emin = 0.5;
    sil.emax = 2.0;
    const auto ti = cli::cmd_ics(sil);
    bool saw_alpha = false, saw_beta = false, saw_D = false, saw_R = false;
    for (const auto& [key, val] : ti.config_echo) {
        if (key == "alpha") saw_alpha = (std::stod(val) == 0.33);
        if (key == "beta") saw_beta = (std::stod(val) == 0.41);
        if (key == "D") saw_D = (std::stod(val) == 2.76);
        if (key == "R") saw_R = std::abs(std::stod(val) - 4.51) < 5e-3;
    }
    CHECK(saw_alpha);
    CHECK(saw_beta);
    CHECK(saw_D);
    CHECK(saw_R);
    for (const auto& row : ti.rows) {
        CHECK(row[2] > 0.0);
        CHECK(std::isfinite(row[2]));
    }

    // silane-dressed requires a dressing parameter or a scan
    cli::RunConfig sd;
    sd.preset = "silane-dressed";
    sd.npts = 3;
    CHECK_THROWS(cli::cmd_ics(sd));
    sd.dress.push_back(cli::DressSpec{"all", 0.1, std::nullopt, false});
    const auto td = cli::cmd_ics(sd);
    CHECK(td.rows.size() == 3);
}

TEST_CASE("poles table") {
    const auto t = cli::cmd_poles(0, 0.33);
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][0] == 0.0);  // bound
    CHECK(t.rows[0][2] == doctest::Approx(0.33));
    CHECK(t.rows[0][3] == doctest::Approx(0.05445).epsilon(1e-10));
    CHECK(t.rows[0][5] == doctest::Approx(1.4816).epsilon(1e-4));

    const auto ta = cli::cmd_poles(0, -0.2);
    CHECK(ta.rows[0][0] == 1.0);  // antibound

    const auto tr = cli::cmd_poles(1, -8.0);
    int res = 0, bound = 0;
    for (const auto& row : tr.rows) {
        if (row[0] == 2.0) ++res;
        if (row[0] == 0.0) ++bound;
    }
    CHECK(res == 2);
    CHECK(bound == 1);
}

TEST_CASE("deterministic emission and JSON round trip") {
    cli::RunConfig cfg;
    cfg.preset = "yx4";
    cfg.D = 2.76;
    cfg.alpha = 0.33;
    cfg.beta = 0.41;
    cfg.emin = 0.2;
    cfg.emax = 3.0;
    cfg.npts = 9;

    const auto t1 = cli::cmd_ics(cfg);
    const auto t2 = cli::cmd_ics(cfg);
    std::ostringstream a, b;
    cli::write_csv(t1, a);
    cli::write_csv(t2, b);
    CHECK(a.str() == b.str());  // byte identical

    std::ostringstream js;
    cli::write_json(t1, js);
    const auto parsed = nlohmann::json::parse(js.str());
    REQUIRE(parsed["rows"].size() == t1.rows.size());
    for (std::size_t i = 0; i < t1.rows.size(); ++i)
        for (std::size_t j = 0; j < t1.rows[i].size(); ++j) {
            const double v = parsed["rows"][i][j].get<double>();
            CHECK(v == doctest::Approx(t1.rows[i][j]).epsilon(1e-15));
        }

    // CSV full-precision round trip
    std::istringstream in(a.str());
    std::string line;
    while (std::getline(in, line) && (line.empty() || line[0] == '#')) {
    }
    std::getline(in, line);  // first data row
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double e, k;
    row >> e >> k;
    CHECK(e == t1.rows[0][0]);
    CHECK(k == t1.rows[0][1]);
}
