// Command-line front end: evaluate the corrected expansion and the oracle
// engines over grids and emit comparison tables as CSV with an embedded
// run manifest.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "heavytail/config.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/grid.hpp"
#include "heavytail/manifest.hpp"

namespace ht = heavytail;
using ht::config::format_cell;
using ht::config::Manifest;

namespace {

struct GridArg {
    double min = -3.0, max = 3.0;
    int count = 121;
};

GridArg parse_grid(const std::string& text) {
    GridArg g;
    std::istringstream in(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw ht::ConfigError("--grid expects min:max:count, got " + text);
    try {
        g.min = std::stod(parts[0]);
        g.max = std::stod(parts[1]);
        g.count = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw ht::ConfigError("--grid expects min:max:count, got " + text);
    }
    if (g.count < 1 || !(g.max >= g.min)) throw ht::ConfigError("--grid range is empty: " + text);
    return g;
}

Manifest base_manifest(const std::string& command, const ht::config::SpecConfig& cfg,
                       const GridArg& grid, int n, const std::string& out) {
    Manifest m;
    m.set("tool", std::string("heavytail"));
    m.set("version", std::string(ht::config::kToolVersion));
    m.set("command", command);
    m.set("spec", cfg.canonical());
    m.set("grid_min", grid.min);
    m.set("grid_max", grid.max);
    m.set("grid_count", static_cast<long long>(grid.count));
    m.set("n", static_cast<long long>(n));
    m.set("out", out);
    return m;
}

void write_output(const std::string& path, const Manifest& manifest, const std::string& header,
                  const std::vector<std::string>& rows, double wall_clock_s) {
    std::ofstream os(path);
    if (!os) throw ht::ConfigError("cannot open output file: " + path);
    Manifest m = manifest;
    m.set("wall_clock_s", wall_clock_s);
    m.write(os);
    os << header << "\n";
    for (const auto& row : rows) os << row << "\n";
}

void run_expand(const ht::config::SpecConfig& cfg, const GridArg& grid, int n, int orders,
                const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto spec = ht::config::make_spec(cfg);
    const auto xs = ht::grid::make_grid({grid.min, grid.max, grid.count});
    const auto results = ht::grid::expansion_grid(spec, xs, n, orders);
    std::ostringstream header;
    header << "x,gaussian";
    for (const auto& [j, term] : results.front().edgeworth_terms) header << ",edge_j" << j;
    header << ",correction,total,case_tag";
    std::vector<std::string> rows;
    rows.reserve(results.size());
    for (const auto& r : results) {
        std::ostringstream row;
        row << format_cell(r.x) << ',' << format_cell(r.gaussian);
        for (const auto& [j, term] : r.edgeworth_terms) row << ',' << format_cell(term);
        row << ',' << format_cell(r.correction) << ',' << format_cell(r.total) << ','
            << r.case_tag;
        rows.push_back(row.str());
    }
    Manifest m = base_manifest("expand", cfg, grid, n, out);
    m.set("orders", static_cast<long long>(orders));
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_output(out, m, header.str(), rows, dt);
}

void run_oracle(const ht::config::SpecConfig& cfg, const GridArg& grid, int n,
                const std::string& engine, long long samples, std::uint64_t seed,
                int panel_limit, const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto spec = ht::config::make_spec(cfg);
    const auto xs = ht::grid::make_grid({grid.min, grid.max, grid.count});
    ht::oracle::OracleConfig ocfg;
    ocfg.mc_samples = samples;
    ocfg.mc_seed = seed;
    if (panel_limit > 0) ocfg.quad_panel_limit = panel_limit;
    std::vector<double> dens;
    std::vector<double> se;
    if (engine == "inversion") {
        dens = ht::grid::inversion_grid(spec, xs, n, ocfg);
    } else if (engine == "conv") {
        dens = ht::oracle::convolution_density(spec, n, xs);
    } else if (engine == "mc") {
        const auto samples_vec = ht::oracle::sample_sum(spec, n, ocfg);
        dens = ht::oracle::mc_density(samples_vec, xs, ocfg, &se);
    } else {
        throw ht::ConfigError("--engine must be inversion | mc | conv");
    }
    std::ostringstream header;
    header << "x,density,engine";
    if (!se.empty()) header << ",stderr";
    std::vector<std::string> rows;
    for (size_t i = 0; i < xs.size(); ++i) {
        std::ostringstream row;
        row << format_cell(xs[i]) << ',' << format_cell(dens[i]) << ',' << engine;
        if (!se.empty()) row << ',' << format_cell(se[i]);
        rows.push_back(row.str());
    }
    Manifest m = base_manifest("oracle", cfg, grid, n, out);
    m.set("engine", engine);
    if (engine == "mc") {
        m.set("samples", samples);
        m.set("seed", static_cast<long long>(seed));
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_output(out, m, header.str(), rows, dt);
}

void run_compare(const ht::config::SpecConfig& cfg, const GridArg& grid, int n,
                 const std::string& out) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto spec = ht::config::make_spec(cfg);
    const auto xs = ht::grid::make_grid({grid.min, grid.max, grid.count});
    const auto expansion = ht::grid::expansion_grid(spec, xs, n);
    const auto oracle = ht::grid::inversion_grid(spec, xs, n);
    const double bound = ht::edgeworth::moderate_region_bound(spec.min_index(), n);
    const bool even_index = spec.min_index_parity().tag == ht::Parity::EvenInteger;
    std::vector<std::string> rows;
    double max_corrected_err = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        const auto& r = expansion[i];
        double terms = 0.0;
        for (const auto& [j, term] : r.edgeworth_terms) terms += term;
        const double edgeworth_only = r.gaussian * (1.0 + terms);
        const double gaussian_err = r.gaussian - oracle[i];
        const double edgeworth_err = edgeworth_only - oracle[i];
        const double corrected_err = r.total - oracle[i];
        max_corrected_err = std::max(max_corrected_err, std::fabs(corrected_err));
        double tail_eq = std::nan("");
        if (!even_index && xs[i] > 0.0) tail_eq = ht::edgeworth::tail_equivalent(spec, xs[i], n);
        const double ax = std::fabs(xs[i]);
        const char* region = ax <= 1.0 ? "central" : (ax <= bound ? "moderate" : "large");
        std::ostringstream row;
        row << format_cell(xs[i]) << ',' << format_cell(oracle[i]) << ','
            << format_cell(gaussian_err) << ',' << format_cell(edgeworth_err) << ','
            << format_cell(corrected_err) << ',' << format_cell(tail_eq) << ',' << region;
        rows.push_back(row.str());
    }
    Manifest m = base_manifest("compare", cfg, grid, n, out);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_output(out, m, "x,oracle,gaussian_err,edgeworth_err,corrected_err,tail_equivalent,region",
                 rows, dt);
    std::cerr << "max|corrected_err| = " << format_cell(max_corrected_err) << "\n";
}

void run_from_manifest(const std::string& csv_path, const std::string& out) {
    const Manifest m = Manifest::parse_file(csv_path);
    auto need = [&](const char* key) -> std::string {
        const std::string* v = m.find(key);
        if (!v) throw ht::ConfigError(std::string("manifest: missing key ") + key);
        return *v;
    };
    const auto cfg = ht::config::parse_spec_inline(need("spec"));
    GridArg grid;
    grid.min = std::stod(need("grid_min"));
    grid.max = std::stod(need("grid_max"));
    grid.count = std::stoi(need("grid_count"));
    const int n = std::stoi(need("n"));
    const std::string command = need("command");
    if (command == "expand")
        run_expand(cfg, grid, n, std::stoi(need("orders")), out);
    else if (command == "oracle") {
        const std::string engine = need("engine");
        const long long samples = m.find("samples") ? std::stoll(*m.find("samples")) : 1000000;
        const std::uint64_t seed =
            m.find("seed") ? static_cast<std::uint64_t>(std::stoll(*m.find("seed")))
                           : ht::oracle::OracleConfig{}.mc_seed;
        run_oracle(cfg, grid, n, engine, samples, seed, 0, out);
    } else if (command == "compare")
        run_compare(cfg, grid, n, out);
    else
        throw ht::ConfigError("manifest: unknown command " + command);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edgeworth-type density expansions for heavy-tailed sums, with oracles"};
    app.require_subcommand(1);

    std::string spec_file, grid_text = "-3:3:121", out = "out.csv", engine = "inversion";
    std::string rerun_from;
    int n = 30, orders = -1, panel_limit = 0;
    long long samples = 1000000;
    std::uint64_t seed = ht::oracle::OracleConfig{}.mc_seed;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("spec", spec_file, "density spec file (key=value lines)")->required();
        cmd->add_option("--n", n, "number of summands")->check(CLI::PositiveNumber);
        cmd->add_option("--grid", grid_text, "evaluation grid min:max:count");
        cmd->add_option("--out", out, "output CSV path");
    };

    CLI::App* expand = app.add_subcommand("expand", "corrected density expansion over a grid");
    add_common(expand);
    expand->add_option("--orders", orders,
                       "highest ordinary Edgeworth order included (-1 = all, 0 = none)");

    CLI::App* oracle = app.add_subcommand("oracle", "ground-truth density over a grid");
    add_common(oracle);
    oracle->add_option("--engine", engine, "inversion | mc | conv");
    oracle->add_option("--samples", samples, "Monte Carlo sample count");
    oracle->add_option("--seed", seed, "Monte Carlo seed");
    oracle->add_option("--panel-limit", panel_limit, "quadrature panel budget (0 = default)");

    CLI::App* compare = app.add_subcommand("compare", "expansion vs inversion oracle over a grid");
    add_common(compare);

    CLI::App* rerun = app.add_subcommand("rerun", "re-run a command from a CSV manifest header");
    rerun->add_option("--from", rerun_from, "previously produced CSV")->required();
    rerun->add_option("--out", out, "output CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    ht::grid::set_max_threads(ht::grid::max_threads_from_env());

    try {
        if (app.got_subcommand("rerun")) {
            run_from_manifest(rerun_from, out);
            return 0;
        }
        const auto cfg = ht::config::parse_spec_file(spec_file);
        if (app.got_subcommand("expand"))
            run_expand(cfg, parse_grid(grid_text), n, orders, out);
        else if (app.got_subcommand("oracle"))
            run_oracle(cfg, parse_grid(grid_text), n, engine, samples, seed, panel_limit, out);
        else if (app.got_subcommand("compare"))
            run_compare(cfg, parse_grid(grid_text), n, out);
        return 0;
    } catch (const ht::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ht::QuadratureNonConvergence& e) {
        std::cerr << "quadrature error: " << e.what() << "\n";
        return 4;
    } catch (const ht::DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
