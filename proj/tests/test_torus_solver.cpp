#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "skewtori/torus_solver.hpp"

using namespace skewtori;

namespace {

const imat2 cat{2, 1, 1, 1};
const imat2 a31{3, 1, 2, 1};
const double alpha = std::numbers::sqrt2 - 1.0;

force_map single_cosine_force() {
    force_map h;
    h.trig.set_mode(1, cvec2{{0.05, 0.0}, {0.0, 0.0}});
    h.trig.set_mode(-1, cvec2{{0.05, 0.0}, {0.0, 0.0}});
    return h;
}

force_map constant_force(vec2 c) {
    force_map h;
    h.trig.set_mode(0, cvec2{{c.x, 0.0}, {c.y, 0.0}});
    return h;
}

std::vector<vec2> closed_lift_chain(const torus_solution& sol, int n) {
    std::vector<vec2> out(n + 1);
    for (int j = 0; j <= n; ++j) out[j] = sol.eval_lift(static_cast<double>(j) / n);
    return out;
}

} // namespace

TEST_CASE("minimal torus degree on pinned systems") {
    CHECK(minimal_degree_m(cat, {1, 0}) == 1);  // ratio (0, -1) is integral
    CHECK(minimal_degree_m(cat, {0, 0}) == 1);
    CHECK(minimal_degree_m(a31, {0, 1}) == 2);  // ratio (-1/2, 1)
    CHECK(minimal_degree_m(a31, {0, 2}) == 1);  // doubling clears the denominator
    CHECK(minimal_degree_m(a31, {1, 1}) == 2);
    CHECK_THROWS_AS(minimal_degree_m(imat2{0, -1, 1, 0}, {1, 0}), not_hyperbolic);
}

TEST_CASE("torus degree vectors are exact") {
    CHECK(torus_degree(cat, {1, 0}, 1) == std::array<long long, 2>{0, -1});
    CHECK(torus_degree(a31, {0, 1}, 2) == std::array<long long, 2>{-1, 2});
    CHECK(torus_degree(cat, {0, 0}, 1) == std::array<long long, 2>{0, 0});
    CHECK_THROWS_AS(torus_degree(a31, {0, 1}, 1), non_integral_degree);
    CHECK_THROWS_AS(torus_degree(a31, {1, 1}, 3), non_integral_degree);
}

TEST_CASE("degree minimality witness accepts the lcm and rejects multiples") {
    CHECK(check_degree_minimality(cat, {1, 0}, 1));
    CHECK(check_degree_minimality(a31, {0, 1}, 2));
    CHECK_FALSE(check_degree_minimality(a31, {0, 1}, 4)); // 2 already works
    CHECK_FALSE(check_degree_minimality(a31, {0, 2}, 2)); // 1 already works
}

TEST_CASE("constant force solves to the pinned constant section") {
    const force_map h = constant_force({0.3, 0.1});
    const torus_solution sol = solve_fourier_torus(cat, alpha, h, 1, 256);
    // a_0 = (I - A)^{-1} (0.3, 0.1) = (-0.1, -0.2).
    for (const vec2& v : sol.lift_grid) {
        CHECK(v.x == doctest::Approx(-0.1).epsilon(1e-14));
        CHECK(v.y == doctest::Approx(-0.2).epsilon(1e-14));
    }
    CHECK(sol.residual_sup <= 1e-13);
    CHECK(sol.deg_g == std::array<long long, 2>{0, 0});
    const vec2 at = sol.eval_lift(0.37);
    CHECK(at.x == doctest::Approx(-0.1).epsilon(1e-14));
    CHECK(wrap01(at).x == doctest::Approx(0.9).epsilon(1e-13));
    CHECK(wrap01(at).y == doctest::Approx(0.8).epsilon(1e-13));
}

TEST_CASE("zero force gives the zero section") {
    const torus_solution sol = solve_fourier_torus(cat, alpha, force_map{}, 1, 64);
    for (const vec2& v : sol.lift_grid) CHECK(inf_norm(v) == 0.0);
    CHECK(sol.residual_sup == 0.0);
    for (const auto& [j, aj] : sol.modes) CHECK(inf_norm(aj) == 0.0);
}

TEST_CASE("single-mode force matches the closed-form mode solve") {
    const force_map h = single_cosine_force();
    const torus_solution sol = solve_fourier_torus(cat, alpha, h, 1, 4096);
    CHECK(sol.residual_sup < 1e-10);

    const std::complex<double> z = std::exp(std::complex<double>(0.0, two_pi * alpha));
    const std::complex<double> det = (z - 2.0) * (z - 1.0) - 1.0;
    const std::complex<double> want_x = (z - 1.0) * 0.05 / det;
    const std::complex<double> want_y = 0.05 / det;
    REQUIRE(sol.modes.count(1) == 1);
    CHECK(std::abs(sol.modes.at(1).x - want_x) <= 1e-14);
    CHECK(std::abs(sol.modes.at(1).y - want_y) <= 1e-14);
    // Hermitian pair solved independently, so it must come out conjugate.
    REQUIRE(sol.modes.count(-1) == 1);
    CHECK(std::abs(sol.modes.at(-1).x - std::conj(want_x)) <= 1e-14);
    CHECK(std::abs(sol.modes.at(-1).y - std::conj(want_y)) <= 1e-14);

    // Conditioning floor: |det(zI - A)| >= (lambda_u - 1)(1 - |lambda_s|).
    const hyperbolic_splitting s = eigen_split(cat);
    CHECK(sol.min_mode_det >= (s.lambda_u - 1.0) * (1.0 - std::fabs(s.lambda_s)));
}

TEST_CASE("degree-m solutions store modes only on multiples of m") {
    force_map h = single_cosine_force();
    h.degree = {0, 1};
    const torus_solution sol = solve_fourier_torus(a31, alpha, h, 2, 512);
    CHECK(sol.m == 2);
    CHECK(sol.deg_g == std::array<long long, 2>{-1, 2});
    REQUIRE(!sol.modes.empty());
    for (const auto& [j, aj] : sol.modes) CHECK(j % 2 == 0);
    REQUIRE(sol.modes.count(2) == 1);
    CHECK(std::abs(sol.modes.at(2).x) > 0.0);
    CHECK(sol.residual_sup < 1e-10);
}

TEST_CASE("solution grids carry the predicted winding") {
    force_map h = single_cosine_force();
    h.degree = {0, 1};
    const torus_solution sol = solve_fourier_torus(a31, alpha, h, 2, 512);
    const degree_result d = degree_from_samples(closed_lift_chain(sol, 512));
    CHECK(d.degree[0] == -1);
    CHECK(d.degree[1] == 2);
    // eval_lift is periodic up to exactly the degree vector.
    for (double w : {0.0, 0.21, 0.73}) {
        const vec2 gap = sol.eval_lift(w + 1.0) - sol.eval_lift(w);
        CHECK(gap.x == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(gap.y == doctest::Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("build_base_torus without remainder equals the Fourier path") {
    force_map h = single_cosine_force();
    h.degree = {1, 0};
    const torus_solution fourier = solve_fourier_torus(cat, alpha, h, 1, 1024);
    const torus_solution full = build_base_torus(cat, alpha, h, 1, 1024, 1e-9);
    CHECK_FALSE(full.correction.has_value());
    REQUIRE(full.lift_grid.size() == fourier.lift_grid.size());
    for (size_t j = 0; j < full.lift_grid.size(); ++j)
        CHECK(inf_norm(full.lift_grid[j] - fourier.lift_grid[j]) == 0.0);
}

TEST_CASE("constant force agrees across the trig and remainder paths") {
    const force_map trig_path = constant_force({0.3, 0.1});
    force_map rem_path;
    sampled_map r;
    r.samples.assign(64, vec2{0.3, 0.1});
    rem_path.remainder = r;

    const torus_solution a = build_base_torus(cat, alpha, trig_path, 1, 1024, 1e-10);
    const torus_solution b = build_base_torus(cat, alpha, rem_path, 1, 1024, 1e-10);
    REQUIRE(b.correction.has_value());
    for (size_t j = 0; j < a.lift_grid.size(); ++j)
        CHECK(inf_norm(a.lift_grid[j] - b.lift_grid[j]) <= 1e-10);
    CHECK(invariance_residual(b, cat, alpha, rem_path, 1, 2048) <= 1e-10);
}

TEST_CASE("band-limited force agrees across the trig and remainder paths") {
    const force_map trig_path = single_cosine_force();
    force_map rem_path;
    sampled_map r;
    r.samples.resize(2048);
    for (int j = 0; j < 2048; ++j) {
        const double w = j / 2048.0;
        r.samples[j] = {0.1 * std::cos(two_pi * w), 0.0};
    }
    rem_path.remainder = r;

    const torus_solution a = build_base_torus(cat, alpha, trig_path, 1, 2048, 1e-10);
    const torus_solution b = build_base_torus(cat, alpha, rem_path, 1, 2048, 1e-10);
    for (size_t j = 0; j < a.lift_grid.size(); ++j)
        CHECK(inf_norm(a.lift_grid[j] - b.lift_grid[j]) <= 1e-6);
}

TEST_CASE("invariance residual measures the functional-equation defect") {
    force_map h = single_cosine_force();
    h.degree = {1, 0};
    const torus_solution sol = build_base_torus(cat, alpha, h, 1, 2048, 1e-10);
    CHECK(invariance_residual(sol, cat, alpha, h, 1, 4096) <= 1e-10);
    const std::vector<double> rows = invariance_residual_rows(sol, cat, alpha, h);
    CHECK(rows.size() == sol.lift_grid.size());
    for (double v : rows) CHECK(v <= 1e-10);
}

TEST_CASE("a perturbed coefficient is detected by the residual") {
    force_map h = single_cosine_force();
    const torus_solution clean = build_base_torus(cat, alpha, h, 1, 2048, 1e-10);
    torus_solution bad = clean;
    bad.modes[0].x += 1e-3;
    for (int j = 0; j < bad.grid_size(); ++j)
        bad.lift_grid[j] = bad.eval_lift(static_cast<double>(j) / bad.grid_size());
    CHECK(invariance_residual(clean, cat, alpha, h, 1, 2048) <= 1e-10);
    CHECK(invariance_residual(bad, cat, alpha, h, 1, 2048) >= 1e-4);
}

TEST_CASE("build_base_torus insists on the minimal degree") {
    force_map h;
    h.degree = {0, 1};
    CHECK_THROWS_AS(build_base_torus(a31, alpha, h, 1, 256, 1e-9), std::invalid_argument);
    CHECK_THROWS_AS(build_base_torus(a31, alpha, h, 4, 256, 1e-9), std::invalid_argument);
    CHECK_NOTHROW(build_base_torus(a31, alpha, h, 2, 256, 1e-9));
}

TEST_CASE("non-hyperbolic matrices are rejected before any numerics") {
    force_map h = single_cosine_force();
    CHECK_THROWS_AS(solve_fourier_torus(imat2{1, 1, 0, 1}, alpha, h, 1, 64), not_hyperbolic);
    CHECK_THROWS_AS(minimal_degree_m(imat2{1, 1, 0, 1}, {1, 0}), not_hyperbolic);
}
