#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <thread>

#include "heavytail/grid.hpp"

using namespace heavytail;
using heavytail::density::DensitySpec;

TEST_CASE("make_grid endpoints and spacing") {
    const auto xs = grid::make_grid({-3.0, 3.0, 121});
    REQUIRE(xs.size() == 121);
    CHECK(xs.front() == -3.0);
    CHECK(xs.back() == 3.0);
    CHECK(xs[1] - xs[0] == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("expansion grid: parallel matches serial bitwise") {
    const auto spec = DensitySpec::symmetric_pareto(3.0);
    const auto xs = grid::make_grid({-3.0, 3.0, 301});
    const auto serial = grid::expansion_grid(spec, xs, 20, -1, false);
    const auto parallel = grid::expansion_grid(spec, xs, 20, -1, true);
    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].total == parallel[i].total);
        CHECK(serial[i].correction == parallel[i].correction);
        CHECK(serial[i].gaussian == parallel[i].gaussian);
        CHECK(serial[i].case_tag == parallel[i].case_tag);
    }
}

TEST_CASE("inversion grid: parallel matches serial bitwise") {
    const auto spec = DensitySpec::symmetric_pareto(3.0);
    const auto xs = grid::make_grid({-2.0, 2.0, 41});
    const auto serial = grid::inversion_grid(spec, xs, 25, {}, false);
    const auto parallel = grid::inversion_grid(spec, xs, 25, {}, true);
    CHECK(serial == parallel);
}

TEST_CASE("rows come back in grid order") {
    const auto spec = DensitySpec::symmetric_pareto(4.5);
    const auto xs = grid::make_grid({-1.0, 1.0, 64});
    const auto rows = grid::expansion_grid(spec, xs, 10, -1, true);
    for (size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].x == xs[i]);
}

TEST_CASE("thread cap from the environment") {
    // smoke: results are unchanged under a 1-thread cap
    const auto spec = DensitySpec::symmetric_pareto(3.5);
    const auto xs = grid::make_grid({-1.0, 1.0, 33});
    const auto base = grid::expansion_grid(spec, xs, 15, -1, true);
    grid::set_max_threads(1);
    const auto capped = grid::expansion_grid(spec, xs, 15, -1, true);
    for (size_t i = 0; i < base.size(); ++i) CHECK(base[i].total == capped[i].total);
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    grid::set_max_threads(static_cast<int>(hw));
}
