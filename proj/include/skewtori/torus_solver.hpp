#pragma once

#include <array>
#include <map>
#include <optional>
#include <vector>

#include "skewtori/circle_maps.hpp"
#include "skewtori/cocycle_series.hpp"
#include "skewtori/exact_linalg.hpp"

namespace skewtori {

// Invariant section of the induced system (base variable w' = w/m, rotation
// alpha/m, force w' -> h(m w')). The degree-m torus over the original base
// is recovered at presentation time as g(w) = g_hat(w/m).
struct torus_solution {
    int m = 1;
    int period = 1;                 // 1 for the base solution
    std::array<long long, 2> deg_g{0, 0};
    std::map<int, cvec2> modes;     // induced index j -> a_j; support only j = 0 mod m
    std::optional<cocycle_solution> correction; // sampled-remainder part
    std::vector<vec2> lift_grid;    // lift samples at j/grid
    double residual_sup = 0.0;
    double min_mode_det = 0.0;      // conditioning diagnostic; inf when no modes solved

    int grid_size() const { return static_cast<int>(lift_grid.size()); }

    // Lift value at any induced-variable point: degree term + trig sum +
    // interpolated correction.
    vec2 eval_lift(double omega_induced) const;
};

// Least m >= 1 with m*(I-A)^{-1}*deg_h integral: the lcm of the reduced
// denominators of the exact rational vector. Throws not_hyperbolic.
int minimal_degree_m(const imat2& a, std::array<int, 2> deg_h);

// Exact integer vector m*(I-A)^{-1}*deg_h; throws non_integral_degree when
// the product is not integral (inconsistent m).
std::array<long long, 2> torus_degree(const imat2& a, std::array<int, 2> deg_h, int m);

// Exact witness that no smaller degree works: m'*(I-A)^{-1}*deg_h is
// non-integral for every m' in 1..m-1.
bool check_degree_minimality(const imat2& a, std::array<int, 2> deg_h, int m);

// Fourier solve of the induced functional equation for the trig part of h
// (remainder ignored here): a_0 = (I-A)^{-1}(b_0 - deg_g*alpha/m), and for
// each force mode b_k != 0 the stored mode j = k*m solves
// (e^{2 pi i j alpha/m} I - A) a_j = b_k, a_j = 0 off multiples of m.
torus_solution solve_fourier_torus(const imat2& a, double alpha, const force_map& h,
                                   int m, int grid);

// Full base solution: Fourier part plus the twisted-cocycle correction for
// the sampled remainder, both in the induced system. m must be the minimal
// torus degree for (A, deg h).
torus_solution build_base_torus(const imat2& a, double alpha, const force_map& h,
                                int m, int grid, double tol);

// Max over the grid of torus-distance(g_hat(w'+alpha/m), A g_hat(w') + h(m w')).
double invariance_residual(const torus_solution& sol, const imat2& a, double alpha,
                           const force_map& h, int m, int grid);

// Per-grid-point defect at the solution's own grid (CSV rows).
std::vector<double> invariance_residual_rows(const torus_solution& sol, const imat2& a,
                                             double alpha, const force_map& h);

} // namespace skewtori
