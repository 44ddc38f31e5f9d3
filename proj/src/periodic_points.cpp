#include "skewtori/periodic_points.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace skewtori {

namespace {

constexpr long long max_enum_denominator = 1LL << 30;

void require_hyperbolic(const imat2& a) {
    if (classify_hyperbolic(a) != map_class::hyperbolic)
        throw not_hyperbolic("periodic-point counts require a hyperbolic matrix");
}

bigint abs_big(bigint v) { return v < 0 ? -v : v; }

// Moebius function for small n.
int moebius(int n) {
    int mu = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        n /= p;
        if (n % p == 0) return 0;
        mu = -mu;
    }
    if (n > 1) mu = -mu;
    return mu;
}

long long to_ll(const bigint& v) { return v.convert_to<long long>(); }

// Enumerate Fix(A^n) through U (A^n - I) V = diag(d1, d2): the fixed points
// are V (i/d1, j/d2) mod 1 for 0 <= i < d1, 0 <= j < d2, all distinct.
void enumerate_fixed(const imat2& a, int n, std::vector<ratpoint>& out) {
    const imat2 m = mat_pow(a, n) - imat2::identity();
    const smith_form s = smith_normal_form(m);
    if (s.d.d > max_enum_denominator)
        throw budget_exceeded("fixed-point denominator exceeds the enumerable range");
    const long long d1 = to_ll(s.d.a);
    const long long d2 = to_ll(s.d.d);
    const long long stride = d2 / d1;
    const long long va = to_ll(((s.v.a % d2) + d2) % d2);
    const long long vb = to_ll(((s.v.b % d2) + d2) % d2);
    const long long vc = to_ll(((s.v.c % d2) + d2) % d2);
    const long long vd = to_ll(((s.v.d % d2) + d2) % d2);
    out.reserve(out.size() + static_cast<std::size_t>(d1 * d2));
    for (long long i = 0; i < d1; ++i) {
        const long long xi = static_cast<long long>(
            static_cast<__int128>(va) * i % d2 * stride % d2);
        const long long yi = static_cast<long long>(
            static_cast<__int128>(vc) * i % d2 * stride % d2);
        for (long long j = 0; j < d2; ++j) {
            const long long xn = static_cast<long long>(
                (xi + static_cast<__int128>(vb) * j) % d2);
            const long long yn = static_cast<long long>(
                (yi + static_cast<__int128>(vd) * j) % d2);
            out.push_back({rat64::make(xn, d2), rat64::make(yn, d2)});
        }
    }
}

} // namespace

rat64 rat64::make(long long n, long long d) {
    if (d <= 0) throw std::invalid_argument("rat64: denominator must be positive");
    n %= d;
    if (n < 0) n += d;
    const long long g = std::gcd(n, d);
    return {n / g, d / g};
}

ratpoint map_point(const imat2& a, const ratpoint& p) {
    const long long l = std::lcm(p.x.den, p.y.den);
    const long long fx = l / p.x.den;
    const long long fy = l / p.y.den;
    constexpr long long ll_min = std::numeric_limits<long long>::min();
    constexpr long long ll_max = std::numeric_limits<long long>::max();
    const bool small = a.a > ll_min && a.a < ll_max && a.b > ll_min && a.b < ll_max &&
                       a.c > ll_min && a.c < ll_max && a.d > ll_min && a.d < ll_max;
    if (small) {
        const auto wrap = [&](__int128 v) {
            const long long r = static_cast<long long>(v % l);
            return r < 0 ? r + l : r;
        };
        const __int128 px = static_cast<__int128>(p.x.num) * fx;
        const __int128 py = static_cast<__int128>(p.y.num) * fy;
        const long long nx =
            wrap(static_cast<__int128>(a.a.convert_to<long long>()) * (wrap(px)) +
                 static_cast<__int128>(a.b.convert_to<long long>()) * (wrap(py)));
        const long long ny =
            wrap(static_cast<__int128>(a.c.convert_to<long long>()) * (wrap(px)) +
                 static_cast<__int128>(a.d.convert_to<long long>()) * (wrap(py)));
        return {rat64::make(nx, l), rat64::make(ny, l)};
    }
    const bigint nx = a.a * p.x.num * fx + a.b * p.y.num * fy;
    const bigint ny = a.c * p.x.num * fx + a.d * p.y.num * fy;
    const bigint lb(l);
    const bigint rx = ((nx % lb) + lb) % lb;
    const bigint ry = ((ny % lb) + lb) % lb;
    return {rat64::make(to_ll(rx), l), rat64::make(to_ll(ry), l)};
}

bigint fix_count(const imat2& a, int n) {
    require_hyperbolic(a);
    if (n < 1) throw std::invalid_argument("fix_count: n must be positive");
    return abs_big(det2(mat_pow(a, n) - imat2::identity()));
}

bigint least_period_count(const imat2& a, int n) {
    require_hyperbolic(a);
    if (n < 1) throw std::invalid_argument("least_period_count: n must be positive");
    bigint total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        total += moebius(n / d) * fix_count(a, d);
    }
    return total;
}

bigint cumulative_count(const imat2& a, int n) {
    bigint total = 0;
    for (int k = 1; k <= n; ++k) total += least_period_count(a, k);
    return total;
}

std::pair<bigint, bigint> count_bounds(const imat2& a, int n) {
    bigint upper = 0;
    for (int k = 1; k <= n; ++k) upper += fix_count(a, k);
    return {fix_count(a, n), upper};
}

fixed_point_set fixed_points(const imat2& a, int n, long long budget) {
    fixed_point_set out;
    out.n = n;
    out.count = fix_count(a, n);
    if (out.count > budget || out.count > max_enum_denominator) return out;
    enumerate_fixed(a, n, out.points);
    std::sort(out.points.begin(), out.points.end());
    if (static_cast<long long>(out.points.size()) != to_ll(out.count))
        throw std::logic_error("fixed_points: enumeration disagrees with the determinant count");
    out.enumerated = true;
    return out;
}

periodic_point_table periodic_points_up_to(const imat2& a, int n, long long budget) {
    require_hyperbolic(a);
    if (n < 1) throw std::invalid_argument("periodic_points_up_to: n must be positive");
    periodic_point_table out;
    out.horizon = n;
    bigint work = 0;
    bigint max_fix = 0;
    for (int k = 1; k <= n; ++k) {
        out.fix_counts.push_back(fix_count(a, k));
        out.new_counts.push_back(least_period_count(a, k));
        const bigint prev = k == 1 ? bigint(0) : out.cumulative.back();
        out.cumulative.push_back(prev + out.new_counts.back());
        work += out.fix_counts.back();
        max_fix = std::max(max_fix, out.fix_counts.back());
    }
    if (work > budget || max_fix > max_enum_denominator) return out;

    std::map<ratpoint, int> first_seen;
    std::vector<ratpoint> level;
    for (int k = 1; k <= n; ++k) {
        level.clear();
        enumerate_fixed(a, k, level);
        for (const ratpoint& p : level) first_seen.emplace(p, k);
    }
    out.points.reserve(first_seen.size());
    out.least_period.reserve(first_seen.size());
    for (const auto& [p, k] : first_seen) {
        const int lp = least_period_by_iteration(a, p, n);
        if (lp != k)
            throw std::logic_error("periodic_points_up_to: iterated least period disagrees with first appearance");
        out.points.push_back(p);
        out.least_period.push_back(lp);
    }
    if (bigint(static_cast<long long>(out.points.size())) != out.cumulative.back())
        throw std::logic_error("periodic_points_up_to: union size disagrees with the Moebius count");
    out.enumerated = true;
    return out;
}

int least_period_by_iteration(const imat2& a, const ratpoint& p, int max_n) {
    ratpoint q = p;
    for (int k = 1; k <= max_n; ++k) {
        q = map_point(a, q);
        if (q == p) return k;
    }
    return 0;
}

} // namespace skewtori
