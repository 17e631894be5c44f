#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "heavytail/config.hpp"
#include "heavytail/edgeworth.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/manifest.hpp"

namespace fs = std::filesystem;
using namespace heavytail;

namespace {

std::string cli_binary() {
    const char* env = std::getenv("HEAVYTAIL_CLI_BIN");
    REQUIRE(env != nullptr);
    return env;
}

int run_cli(const std::string& args) {
    const std::string cmd = cli_binary() + " " + args + " > /dev/null 2> /dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

fs::path sandbox() {
    const fs::path dir = fs::temp_directory_path() / "heavytail_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write_spec(const std::string& name, const std::string& text) {
    const fs::path p = sandbox() / name;
    std::ofstream(p) << text;
    return p;
}

struct Csv {
    std::vector<std::string> manifest_lines;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

Csv read_csv(const fs::path& p) {
    Csv csv;
    std::ifstream in(p);
    REQUIRE(in.good());
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] == '#') {
            csv.manifest_lines.push_back(line);
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!header_seen) {
            csv.header = cells;
            header_seen = true;
        } else if (!cells.empty()) {
            csv.rows.push_back(cells);
        }
    }
    return csv;
}

// everything except the run-local entries (timing and output path)
std::string reproducible_content(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("# wall_clock_s") == 0 || line.find("# out") == 0) continue;
        out << line << "\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("spec config parsing") {
    const auto cfg = config::parse_spec_text("# comment\nform = pareto\nalpha = 3\n");
    CHECK(cfg.form == "pareto");
    CHECK(cfg.canonical() == "form=pareto;alpha=3");
    const auto spec = config::make_spec(cfg);
    CHECK(spec.min_index() == 3.0);
    CHECK_THROWS_AS(config::parse_spec_text("alpha = 3\n"), ConfigError);
    CHECK_THROWS_AS(config::parse_spec_text("form=pareto\nalpha\n"), ConfigError);
    CHECK_THROWS_AS(config::make_spec(config::parse_spec_text("form=banana\n")), ConfigError);
    CHECK_THROWS_AS(config::make_spec(config::parse_spec_text("form=pareto\nalpha=oops\n")),
                    ConfigError);
    // inline form used by manifests
    const auto inline_cfg = config::parse_spec_inline("form=two-sided;beta=3;gamma=4;"
                                                      "L_plus=const:1.0;L_minus=ramp:1.0:2.0");
    CHECK(config::make_spec(inline_cfg).min_index() == 3.0);
    CHECK_THROWS_AS(config::make_slowly_varying("nope:1"), ConfigError);
}

TEST_CASE("expand command: shape, identity and truncation control") {
    const auto spec_path = write_spec("pareto3.spec", "form=pareto\nalpha=3\n");
    const auto out = sandbox() / "expand.csv";
    const int rc = run_cli("expand " + spec_path.string() + " --n 20 --grid -3:3:121 --out " +
                           out.string());
    REQUIRE(rc == 0);
    const Csv csv = read_csv(out);
    CHECK(csv.rows.size() == 121);
    REQUIRE(csv.header.size() >= 5);
    CHECK(csv.header.front() == "x");
    CHECK(csv.header.back() == "case_tag");
    // per-row identity: total = gaussian (1 + sum terms) + correction
    const size_t cols = csv.header.size();
    for (const auto& row : csv.rows) {
        CHECK(row.back() == "symmetric-odd");
        const double x = std::stod(row[0]);
        const double gaussian = std::stod(row[1]);
        double terms = 0.0;
        for (size_t c = 2; c + 3 < cols; ++c) terms += std::stod(row[c]);
        const double correction = std::stod(row[cols - 3]);
        const double total = std::stod(row[cols - 2]);
        CHECK(std::fabs(total - (gaussian * (1.0 + terms) + correction)) <=
              1e-15 * std::max(1.0, std::fabs(total)));
        // and against a fresh library evaluation
        const auto lib = edgeworth::corrected_density(density::DensitySpec::symmetric_pareto(3.0),
                                                      x, 20);
        CHECK(std::fabs(total - lib.total) <= 1e-15 * std::max(1.0, std::fabs(lib.total)));
    }
    // truncation: --orders 0 keeps only gaussian + correction
    const auto out0 = sandbox() / "expand0.csv";
    REQUIRE(run_cli("expand " + spec_path.string() + " --n 20 --grid -1:1:11 --orders 0 --out " +
                    out0.string()) == 0);
    const Csv csv0 = read_csv(out0);
    for (const auto& row : csv0.rows) {
        const double gaussian = std::stod(row[1]);
        const double correction = std::stod(row[2]);
        const double total = std::stod(row[3]);
        CHECK(total == doctest::Approx(gaussian + correction).epsilon(1e-15));
    }
}

TEST_CASE("manifest rerun reproduces the output byte for byte") {
    const auto spec_path = write_spec("pareto45.spec", "form=pareto\nalpha=4.5\n");
    const auto out1 = sandbox() / "first.csv";
    REQUIRE(run_cli("expand " + spec_path.string() + " --n 30 --grid -2:2:41 --out " +
                    out1.string()) == 0);
    const auto out2 = sandbox() / "second.csv";
    REQUIRE(run_cli("rerun --from " + out1.string() + " --out " + out2.string()) == 0);
    CHECK(reproducible_content(out1) == reproducible_content(out2));
    // monte carlo runs reproduce through the manifest as well (samples + seed)
    const auto mc1 = sandbox() / "mc_rerun_1.csv";
    const auto mc2 = sandbox() / "mc_rerun_2.csv";
    REQUIRE(run_cli("oracle " + spec_path.string() +
                    " --n 4 --grid -1:1:9 --engine mc --samples 150000 --seed 7 --out " +
                    mc1.string()) == 0);
    REQUIRE(run_cli("rerun --from " + mc1.string() + " --out " + mc2.string()) == 0);
    CHECK(reproducible_content(mc1) == reproducible_content(mc2));
}

TEST_CASE("oracle command engines") {
    const auto spec_path = write_spec("pareto3b.spec", "form=pareto\nalpha=3\n");
    const auto inv_path = sandbox() / "inv.csv";
    const auto conv_path = sandbox() / "conv.csv";
    const auto mc1_path = sandbox() / "mc1.csv";
    const auto mc2_path = sandbox() / "mc2.csv";
    const std::string common = " " + spec_path.string() + " --n 5 --grid -2:2:17 ";
    REQUIRE(run_cli("oracle" + common + "--engine inversion --out " + inv_path.string()) == 0);
    REQUIRE(run_cli("oracle" + common + "--engine conv --out " + conv_path.string()) == 0);
    REQUIRE(run_cli("oracle" + common +
                    "--engine mc --samples 200000 --seed 42 --out " + mc1_path.string()) == 0);
    REQUIRE(run_cli("oracle" + common +
                    "--engine mc --samples 200000 --seed 42 --out " + mc2_path.string()) == 0);
    CHECK(reproducible_content(mc1_path) == reproducible_content(mc2_path));
    const Csv inv = read_csv(inv_path);
    const Csv conv = read_csv(conv_path);
    const Csv mc = read_csv(mc1_path);
    REQUIRE(inv.rows.size() == 17);
    REQUIRE(conv.rows.size() == 17);
    CHECK(mc.header.back() == "stderr");
    for (size_t i = 0; i < inv.rows.size(); ++i) {
        const double vi = std::stod(inv.rows[i][1]);
        const double vc = std::stod(conv.rows[i][1]);
        CHECK(std::fabs(vi - vc) < 1e-6);
        const double vm = std::stod(mc.rows[i][1]);
        const double se = std::stod(mc.rows[i][3]);
        CHECK(std::fabs(vm - vi) <= 3.5 * se + 0.01 * vi + 2e-4);
    }
    // identity at n=1 through the CLI
    const auto id_path = sandbox() / "id.csv";
    REQUIRE(run_cli("oracle " + spec_path.string() + " --n 1 --grid 0:1:2 --engine inversion "
                    "--out " + id_path.string()) == 0);
    const Csv id = read_csv(id_path);
    const auto spec = density::DensitySpec::symmetric_pareto(3.0);
    CHECK(std::stod(id.rows[0][1]) == doctest::Approx(spec.pdf(0.0)).epsilon(1e-6));
    CHECK(std::stod(id.rows[1][1]) == doctest::Approx(spec.pdf(1.0)).epsilon(1e-6));
}

TEST_CASE("compare command emits errors and regions") {
    const auto spec_path = write_spec("pareto3c.spec", "form=pareto\nalpha=3\n");
    const auto out = sandbox() / "compare.csv";
    REQUIRE(run_cli("compare " + spec_path.string() + " --n 50 --grid 0.1:3:30 --out " +
                    out.string()) == 0);
    const Csv csv = read_csv(out);
    REQUIRE(csv.header.size() == 7);
    const double bound = edgeworth::moderate_region_bound(3.0, 50);
    double max_gauss = 0.0, max_corr = 0.0;
    for (const auto& row : csv.rows) {
        const double x = std::stod(row[0]);
        max_gauss = std::max(max_gauss, std::fabs(std::stod(row[2])));
        max_corr = std::max(max_corr, std::fabs(std::stod(row[4])));
        const std::string& region = row[6];
        if (x <= 1.0)
            CHECK(region == "central");
        else if (x <= bound)
            CHECK(region == "moderate");
        else
            CHECK(region == "large");
    }
    CHECK(max_corr < 0.5 * max_gauss);
    // even tail index: no large-deviation matching region, column goes nan
    const auto spec4 = write_spec("pareto4.spec", "form=pareto\nalpha=4\n");
    const auto out4 = sandbox() / "compare4.csv";
    REQUIRE(run_cli("compare " + spec4.string() + " --n 20 --grid 0.5:2:4 --out " +
                    out4.string()) == 0);
    const Csv csv4 = read_csv(out4);
    for (const auto& row : csv4.rows) CHECK(row[5] == "nan");
}

TEST_CASE("non-constant slowly varying densities through the CLI") {
    const auto spec_path = write_spec("rvlog.spec", "form=rv\nalpha=3.5\nL=shifted-log:1\n");
    const auto out = sandbox() / "rvlog.csv";
    REQUIRE(run_cli("expand " + spec_path.string() + " --n 25 --grid -1:1:9 --out " +
                    out.string()) == 0);
    const Csv csv = read_csv(out);
    REQUIRE(csv.rows.size() == 9);
    for (const auto& row : csv.rows) CHECK(row.back() == "symmetric-noninteger");
    // two-sided with a ramped left tail
    const auto ts_path = write_spec("ramp.spec",
                                    "form=two-sided\nbeta=3\ngamma=4\n"
                                    "L_plus=const:1.0\nL_minus=ramp:1.0:2.0\n");
    const auto out2 = sandbox() / "ramp.csv";
    REQUIRE(run_cli("expand " + ts_path.string() + " --n 25 --grid -1:1:9 --out " +
                    out2.string()) == 0);
    const Csv csv2 = read_csv(out2);
    for (const auto& row : csv2.rows) {
        // negative x evaluates on the tail-swapped spec (heavier left tail)
        const double x = std::stod(row[0]);
        CHECK(row.back() == (x < 0.0 ? "case3-odd" : "case2-odd"));
    }
}

TEST_CASE("exit codes") {
    // 2: unparseable spec file
    const auto bad = write_spec("bad.spec", "alpha=3\n");
    CHECK(run_cli("expand " + bad.string() + " --out /tmp/heavytail_bad.csv") == 2);
    // 2: malformed grid
    const auto good = write_spec("good.spec", "form=pareto\nalpha=3\n");
    CHECK(run_cli("expand " + good.string() + " --grid nope --out /tmp/heavytail_bad.csv") == 2);
    // 3: domain error (variance diverges at alpha = 2)
    const auto heavy = write_spec("heavy.spec", "form=pareto\nalpha=2\n");
    CHECK(run_cli("expand " + heavy.string() + " --out /tmp/heavytail_bad.csv") == 3);
    // 3: discontinuous two-sided density is rejected
    const auto disc = write_spec("disc.spec",
                                 "form=two-sided\nbeta=3\ngamma=4\n"
                                 "L_plus=const:1.0\nL_minus=const:2.0\n");
    CHECK(run_cli("expand " + disc.string() + " --out /tmp/heavytail_bad.csv") == 3);
    // 4: quadrature panel budget exhausted
    const auto spec_path = write_spec("pareto3d.spec", "form=pareto\nalpha=3\n");
    CHECK(run_cli("oracle " + spec_path.string() +
                  " --n 1 --grid 2.5:3:2 --engine inversion --panel-limit 3 --out "
                  "/tmp/heavytail_bad.csv") == 4);
    // 0 with a summary line on stderr for compare
    const std::string cmd = cli_binary() + " compare " + spec_path.string() +
                            " --n 10 --grid -1:1:5 --out /tmp/heavytail_cmp.csv 2> "
                            "/tmp/heavytail_cmp_err.txt > /dev/null";
    REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    std::ifstream err("/tmp/heavytail_cmp_err.txt");
    std::string errline;
    std::getline(err, errline);
    CHECK(errline.find("max|corrected_err|") == 0);
}
