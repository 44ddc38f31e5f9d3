#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <utility>
#include <vector>

#include "skewtori/exact_linalg.hpp"

namespace skewtori {

// Reduced fraction in [0, 1). Denominators of enumerated points stay below
// 2^30, so cross-multiplication comparisons fit comfortably in 128 bits.
struct rat64 {
    long long num = 0; // 0 <= num < den after make()
    long long den = 1; // >= 1

    static rat64 make(long long n, long long d);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }

    friend bool operator==(const rat64&, const rat64&) = default;
    friend bool operator<(const rat64& a, const rat64& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
};

// Rational point of T^2, lexicographically ordered.
struct ratpoint {
    rat64 x, y;

    friend bool operator==(const ratpoint&, const ratpoint&) = default;
    friend bool operator<(const ratpoint& a, const ratpoint& b) {
        if (a.x == b.x) return a.y < b.y;
        return a.x < b.x;
    }
};

// Exact image A p mod 1.
ratpoint map_point(const imat2& a, const ratpoint& p);

// |Fix(A^n)| = |det(A^n - I)|, exact. Throws not_hyperbolic.
bigint fix_count(const imat2& a, int n);

// Number of points of least period exactly n (Moebius inversion over the
// divisor lattice of fixed-point counts).
bigint least_period_count(const imat2& a, int n);

// #P(A; n): number of points with least period <= n.
bigint cumulative_count(const imat2& a, int n);

// (|det(A^n - I)|, sum_{k<=n} |det(A^k - I)|): the growth sandwich.
std::pair<bigint, bigint> count_bounds(const imat2& a, int n);

struct fixed_point_set {
    int n = 1;
    bigint count = 0;          // always exact
    bool enumerated = false;   // false when count exceeded the budget
    std::vector<ratpoint> points; // sorted lexicographically; empty when !enumerated
};

// Solutions of (A^n - I) x = 0 mod 1 via the Smith normal form. When the
// exact count exceeds the budget the set degrades to counts only.
fixed_point_set fixed_points(const imat2& a, int n, long long budget = 5000000);

struct periodic_point_table {
    int horizon = 1;
    bool enumerated = false;
    std::vector<bigint> fix_counts; // |Fix(A^k)|, k = 1..horizon
    std::vector<bigint> new_counts; // least period exactly k
    std::vector<bigint> cumulative; // #P(A; k)
    std::vector<ratpoint> points;   // least period <= horizon, sorted; empty when !enumerated
    std::vector<int> least_period;  // parallel to points
};

// All periodic points up to the horizon with their least periods. Counts are
// exact regardless of the budget; the point list requires
// sum_k |Fix(A^k)| <= budget.
periodic_point_table periodic_points_up_to(const imat2& a, int n,
                                           long long budget = 5000000);

// Least k <= max_n with A^k p = p mod 1, or 0 if none (iterative witness).
int least_period_by_iteration(const imat2& a, const ratpoint& p, int max_n);

} // namespace skewtori
