#include "skewtori/torus_solver.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace skewtori {

namespace {

rvec2 degree_ratio(const imat2& a, std::array<int, 2> deg_h) {
    if (classify_hyperbolic(a) != map_class::hyperbolic)
        throw not_hyperbolic("torus degree requires a hyperbolic matrix");
    const imat2 i_minus_a = imat2::identity() - a;
    const rmat2 inv = rational_inverse(i_minus_a);
    return inv * rvec2{bigrat(deg_h[0]), bigrat(deg_h[1])};
}

bool is_integral(const bigrat& q) { return boost::multiprecision::denominator(q) == 1; }

} // namespace

vec2 torus_solution::eval_lift(double omega_induced) const {
    vec2 v{static_cast<double>(deg_g[0]) * omega_induced,
           static_cast<double>(deg_g[1]) * omega_induced};
    for (const auto& [j, aj] : modes) {
        if (j == 0) {
            v.x += aj.x.real();
            v.y += aj.y.real();
            continue;
        }
        const std::complex<double> e = std::polar(1.0, two_pi * j * omega_induced);
        v.x += (aj.x * e).real();
        v.y += (aj.y * e).real();
    }
    if (correction) v += correction->eval(omega_induced);
    return v;
}

int minimal_degree_m(const imat2& a, std::array<int, 2> deg_h) {
    const rvec2 q = degree_ratio(a, deg_h);
    const bigint l = boost::multiprecision::lcm(boost::multiprecision::denominator(q.x),
                                                boost::multiprecision::denominator(q.y));
    if (l > bigint(std::numeric_limits<int>::max()))
        throw std::overflow_error("minimal torus degree exceeds int range");
    return static_cast<int>(l);
}

std::array<long long, 2> torus_degree(const imat2& a, std::array<int, 2> deg_h, int m) {
    if (m < 1) throw std::invalid_argument("torus_degree: m must be positive");
    const rvec2 q = degree_ratio(a, deg_h);
    const bigrat x = bigrat(m) * q.x;
    const bigrat y = bigrat(m) * q.y;
    if (!is_integral(x) || !is_integral(y))
        throw non_integral_degree("m*(I-A)^{-1}*deg_h is not an integer vector");
    return {boost::multiprecision::numerator(x).convert_to<long long>(),
            boost::multiprecision::numerator(y).convert_to<long long>()};
}

bool check_degree_minimality(const imat2& a, std::array<int, 2> deg_h, int m) {
    const rvec2 q = degree_ratio(a, deg_h);
    if (!is_integral(bigrat(m) * q.x) || !is_integral(bigrat(m) * q.y)) return false;
    for (int mp = 1; mp < m; ++mp)
        if (is_integral(bigrat(mp) * q.x) && is_integral(bigrat(mp) * q.y)) return false;
    return true;
}

torus_solution solve_fourier_torus(const imat2& a, double alpha, const force_map& h,
                                   int m, int grid) {
    if (grid < 2) throw std::invalid_argument("solve_fourier_torus: grid must be >= 2");
    torus_solution out;
    out.m = m;
    out.deg_g = torus_degree(a, h.degree, m);
    out.min_mode_det = std::numeric_limits<double>::infinity();

    const double alpha_induced = alpha / m;
    const dmat2 ad = to_double(a);

    // Constant term: (I - A) a_0 = b_0 - deg_g * alpha/m.
    const dmat2 ima = dmat2::identity() - ad;
    const double det_ima = ima.a * ima.d - ima.b * ima.c;
    const cvec2 b0 = h.trig.mode(0);
    const vec2 rhs0{b0.x.real() - static_cast<double>(out.deg_g[0]) * alpha_induced,
                    b0.y.real() - static_cast<double>(out.deg_g[1]) * alpha_induced};
    const vec2 a0{(ima.d * rhs0.x - ima.b * rhs0.y) / det_ima,
                  (-ima.c * rhs0.x + ima.a * rhs0.y) / det_ima};
    out.modes[0] = cvec2{a0.x, a0.y};

    // Nonconstant terms live at induced indices j = +-k*m and solve
    // (e^{2 pi i j alpha/m} I - A) a_j = b_{j/m}.
    for (int k = 1; k <= h.trig.cutoff; ++k) {
        for (int sign : {1, -1}) {
            const cvec2 bk = h.trig.mode(sign * k);
            if (std::abs(bk.x) == 0.0 && std::abs(bk.y) == 0.0) continue;
            const int j = sign * k * m;
            const std::complex<double> z = std::polar(1.0, two_pi * j * alpha_induced);
            const std::complex<double> det_z = (z - ad.a) * (z - ad.d) - ad.b * ad.c;
            out.min_mode_det = std::min(out.min_mode_det, std::abs(det_z));
            out.modes[j] = cvec2{((z - ad.d) * bk.x + ad.b * bk.y) / det_z,
                                 (ad.c * bk.x + (z - ad.a) * bk.y) / det_z};
        }
    }

    out.lift_grid.resize(grid);
    for (int i = 0; i < grid; ++i)
        out.lift_grid[i] = out.eval_lift(static_cast<double>(i) / grid);

    force_map trig_only{h.degree, h.trig, std::nullopt};
    out.residual_sup = invariance_residual(out, a, alpha, trig_only, m, grid);
    return out;
}

torus_solution build_base_torus(const imat2& a, double alpha, const force_map& h,
                                int m, int grid, double tol) {
    if (m != minimal_degree_m(a, h.degree))
        throw std::invalid_argument("build_base_torus: m must be the minimal torus degree");

    torus_solution sol = solve_fourier_torus(a, alpha, h, m, grid);

    if (h.remainder && !h.remainder->samples.empty()) {
        // The sampled part must not hide extra winding: the measured degree of
        // the full force has to match the declared one.
        std::vector<vec2> closed(static_cast<std::size_t>(grid) + 1);
        for (int i = 0; i <= grid; ++i)
            closed[i] = evaluate_lift(h, static_cast<double>(i) / grid);
        const degree_result dh = degree_from_samples(closed);
        if (dh.degree != h.degree)
            throw validation_error({"force: declared degree (" + std::to_string(h.degree[0]) +
                                    "," + std::to_string(h.degree[1]) +
                                    ") does not match sampled degree (" +
                                    std::to_string(dh.degree[0]) + "," +
                                    std::to_string(dh.degree[1]) + ")"});

        const auto r = [&](double wp) { return h.remainder->eval(m * wp); };
        sol.correction = solve_twisted_cocycle(a, alpha / m, r, grid, tol);
        if (!degree_zero_check(sol.correction->eta))
            throw nonzero_degree("cocycle correction acquired a nonzero degree");
        for (int i = 0; i < grid; ++i) sol.lift_grid[i] += sol.correction->eta[i];
    }

    sol.residual_sup = invariance_residual(sol, a, alpha, h, m, grid);
    return sol;
}

std::vector<double> invariance_residual_rows(const torus_solution& sol, const imat2& a,
                                             double alpha, const force_map& h) {
    const dmat2 ad = to_double(a);
    const double alpha_induced = alpha / sol.m;
    const int n = sol.grid_size();
    std::vector<double> rows(n);
    for (int i = 0; i < n; ++i) {
        const double w = static_cast<double>(i) / n;
        const vec2 lhs = sol.eval_lift(w + alpha_induced);
        const vec2 rhs = ad * sol.lift_grid[i] + evaluate_lift(h, sol.m * w);
        rows[i] = torus_dist(wrap01(lhs), wrap01(rhs));
    }
    return rows;
}

double invariance_residual(const torus_solution& sol, const imat2& a, double alpha,
                           const force_map& h, int m, int grid) {
    const dmat2 ad = to_double(a);
    const double alpha_induced = alpha / m;
    double sup = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double w = static_cast<double>(i) / grid;
        const vec2 lhs = sol.eval_lift(w + alpha_induced);
        const vec2 rhs = ad * sol.eval_lift(w) + evaluate_lift(h, m * w);
        sup = std::max(sup, torus_dist(wrap01(lhs), wrap01(rhs)));
    }
    return sup;
}

} // namespace skewtori
