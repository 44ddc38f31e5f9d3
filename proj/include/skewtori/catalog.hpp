#pragma once

#include <vector>

#include "skewtori/periodic_points.hpp"
#include "skewtori/torus_solver.hpp"

namespace skewtori {

// log of the spectral radius of A; equals the entropy of the skew product
// because the base rotation contributes none.
double topological_entropy(const imat2& a);

// One invariant torus: the base solution translated by a periodic point.
// An orbit of least period k contributes k entries (the count is over
// graphs, not orbits).
struct torus_descriptor {
    ratpoint translate;
    int period = 1;                 // least period of the translate under A
    double residual = 0.0;          // k-step return defect, max over the check grid
    double branch_separation = 0.0; // min pairwise distance of the m fiber branches
};

struct torus_catalog {
    int m = 1;
    int horizon = 1;
    torus_solution base;
    bool enumerated = false;             // false when the budget forced counts only
    std::vector<bigint> counts_by_period; // least period exactly k, k = 1..horizon
    std::vector<bigint> cumulative;       // running torus count up to each period
    std::vector<torus_descriptor> descriptors; // sorted by (period, translate)
    double max_residual = 0.0;
    double min_branch_separation = 0.0;  // inf when m == 1
};

// Base torus + all periodic-point translates with least period <= n. Each
// descriptor is verified: its period-k return residual must stay below
// 10 * (sum_{j<k} |A|^j) * max(base residual, tol), and for m > 1 the m
// branch values over fiber 0 must be pairwise farther than max(1e-6, 10*tol).
torus_catalog enumerate_tori(const imat2& a, double alpha, const force_map& h,
                             int n, long long budget, int grid, double tol);

// Max over grid fibers and a 16x16 fiber lattice of the defect in the
// conjugacy (w, x) -> (w, x + g_hat(w)) between the forced and homogeneous
// induced systems, after n steps.
double conjugacy_check(const imat2& a, double alpha, const force_map& h,
                       const torus_solution& base, int n, int grid);

struct growth_row {
    int n = 1;
    bigint lower;  // |Fix(A^n)|
    bigint exact;  // #P(A; n), exact by divisor-lattice inversion
    bigint upper;  // sum_{k<=n} |Fix(A^k)|
    double rate_lower = 0.0;
    double rate_exact = 0.0;
    double rate_upper = 0.0;
};

struct growth_report {
    std::vector<growth_row> rows;
    double h_top = 0.0;
};

// Torus-count growth against entropy, n = 1..n_max. Counts come from the
// exact divisor-lattice inversion, so no enumeration budget applies.
growth_report growth_rate_table(const imat2& a, int n_max);

// Greedy maximal (n, eps)-separated set for the toral automorphism alone on
// a grid_density^2 lattice; returns (1/n) log of its cardinality. Diagnostic
// only: biased by grid quantisation and greedy selection. Cost guard:
// n <= 8, grid_density <= 512.
double estimate_entropy_separated(const imat2& a, int n, double eps, int grid_density);

} // namespace skewtori
