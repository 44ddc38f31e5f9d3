#pragma once

#include <functional>
#include <vector>

#include "skewtori/circle_maps.hpp"
#include "skewtori/exact_linalg.hpp"

namespace skewtori {

// Solution of the twisted cocycle equation eta(w + alpha) = A eta(w) + r(w)
// for hyperbolic A and degree-0 continuous r, held as a periodic sample grid.
struct cocycle_solution {
    std::vector<vec2> eta;     // values at j/grid, j = 0..grid-1
    int truncation = 0;        // series length N actually summed
    double tail_bound = 0.0;   // a-priori bound r_norm * rho^N / (1 - rho)
    double residual_sup = 0.0; // measured sup of the defining-equation defect

    // Periodic linear interpolation of the stored grid.
    vec2 eval(double omega) const;
};

// Smallest N >= 1 with r_norm * rho^N / (1 - rho) <= tol (geometric tail of
// the stable/unstable series, ratio rho = max(|lambda_s|, 1/|lambda_u|)).
int truncation_length(double r_norm, double rho, double tol);

// Sums the stable series forward along w - k*alpha and the unstable series
// backward along w + k*alpha, each in its scalar eigenline. r must be
// 1-periodic and is evaluated at arbitrary real arguments (pass a
// sampled_map's interpolant for gridded data). Throws not_hyperbolic and,
// when the sampled winding of r is nonzero, nonzero_degree.
cocycle_solution solve_twisted_cocycle(const imat2& a, double alpha,
                                       const std::function<vec2(double)>& r,
                                       int grid_size, double tol);

// True iff the sampled winding number of the grid is (0, 0).
bool degree_zero_check(const std::vector<vec2>& eta_samples);

} // namespace skewtori
