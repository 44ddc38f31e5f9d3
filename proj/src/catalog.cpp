#include "skewtori/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace skewtori {

namespace {

// log of a positive big integer without overflowing the double conversion.
double log_big(const bigint& v) {
    if (v <= 0) throw std::invalid_argument("log_big: argument must be positive");
    const std::string digits = v.str();
    if (digits.size() <= 18) return std::log(v.convert_to<long long>());
    const double mant = std::stod(digits.substr(0, 15));
    return std::log(mant) + static_cast<double>(digits.size() - 15) * std::numbers::ln10;
}

std::string point_label(const ratpoint& p) {
    std::ostringstream os;
    os << p.x.num << "/" << p.x.den << ", " << p.y.num << "/" << p.y.den;
    return os.str();
}

} // namespace

double topological_entropy(const imat2& a) {
    return std::log(std::abs(eigen_split(a).lambda_u));
}

torus_catalog enumerate_tori(const imat2& a, double alpha, const force_map& h,
                             int n, long long budget, int grid, double tol) {
    if (n < 1) throw std::invalid_argument("enumerate_tori: horizon must be positive");
    torus_catalog cat;
    cat.horizon = n;
    cat.m = minimal_degree_m(a, h.degree);
    cat.base = build_base_torus(a, alpha, h, cat.m, grid, tol);

    const periodic_point_table tab = periodic_points_up_to(a, n, budget);
    cat.counts_by_period = tab.new_counts;
    cat.cumulative = tab.cumulative;
    cat.min_branch_separation = std::numeric_limits<double>::infinity();
    if (!tab.enumerated) return cat;

    const dmat2 ad = to_double(a);
    const double alpha_induced = alpha / cat.m;
    const double a_norm = inf_norm(ad);
    const double res_unit = std::max(cat.base.residual_sup, tol);
    const double branch_floor = std::max(1e-6, 10.0 * tol);
    const int vgrid = std::min(grid, 256);

    // Amplification of a one-step defect through k applications of the fiber map.
    std::vector<double> amp(static_cast<std::size_t>(n) + 1, 0.0);
    for (int k = 1; k <= n; ++k) amp[k] = amp[k - 1] * a_norm + 1.0;

    cat.descriptors.reserve(tab.points.size());
    for (std::size_t idx = 0; idx < tab.points.size(); ++idx) {
        const ratpoint& p = tab.points[idx];
        const int k = tab.least_period[idx];
        const vec2 pd{p.x.value(), p.y.value()};

        double res = 0.0;
        for (int i = 0; i < vgrid; ++i) {
            const double w = static_cast<double>(i) / vgrid;
            vec2 v = wrap01(cat.base.eval_lift(w) + pd);
            for (int j = 0; j < k; ++j) {
                const double wj = wrap01(w + j * alpha_induced);
                v = wrap01(ad * v + evaluate_lift(h, cat.m * wj));
            }
            const vec2 target =
                wrap01(cat.base.eval_lift(wrap01(w + k * alpha_induced)) + pd);
            res = std::max(res, torus_dist(v, target));
        }
        const double bar = 10.0 * amp[k] * res_unit;
        if (res > bar)
            throw verification_failure("period-" + std::to_string(k) +
                                       " return residual " + std::to_string(res) +
                                       " exceeds " + std::to_string(bar) +
                                       " for translate (" + point_label(p) + ")");

        double sep = std::numeric_limits<double>::infinity();
        if (cat.m > 1) {
            std::vector<vec2> branches(cat.m);
            for (int j = 0; j < cat.m; ++j)
                branches[j] =
                    wrap01(cat.base.eval_lift(static_cast<double>(j) / cat.m) + pd);
            for (int i = 0; i < cat.m; ++i)
                for (int j = i + 1; j < cat.m; ++j)
                    sep = std::min(sep, torus_dist(branches[i], branches[j]));
            if (sep <= branch_floor)
                throw distinctness_failure(
                    "fiber branches collide (separation " + std::to_string(sep) +
                    ") for translate (" + point_label(p) + "); the cover degree is wrong");
        }

        cat.descriptors.push_back({p, k, res, sep});
        cat.max_residual = std::max(cat.max_residual, res);
        cat.min_branch_separation = std::min(cat.min_branch_separation, sep);
    }

    std::sort(cat.descriptors.begin(), cat.descriptors.end(),
              [](const torus_descriptor& lhs, const torus_descriptor& rhs) {
                  if (lhs.period != rhs.period) return lhs.period < rhs.period;
                  return lhs.translate < rhs.translate;
              });
    cat.enumerated = true;
    return cat;
}

double conjugacy_check(const imat2& a, double alpha, const force_map& h,
                       const torus_solution& base, int n, int grid) {
    if (n < 1 || grid < 1) throw std::invalid_argument("conjugacy_check: bad n or grid");
    const dmat2 ad = to_double(a);
    const double alpha_induced = alpha / base.m;
    constexpr int lattice = 16;

    double sup = 0.0;
    std::vector<vec2> force_along(static_cast<std::size_t>(n));
    for (int i = 0; i < grid; ++i) {
        const double w = static_cast<double>(i) / grid;
        double wj = w;
        for (int j = 0; j < n; ++j) {
            force_along[j] = evaluate_lift(h, base.m * wj);
            wj = wrap01(wj + alpha_induced);
        }
        const vec2 g_start = base.eval_lift(w);
        const vec2 g_end = base.eval_lift(wj);

        for (int u = 0; u < lattice; ++u) {
            for (int v = 0; v < lattice; ++v) {
                const vec2 x{static_cast<double>(u) / lattice,
                             static_cast<double>(v) / lattice};
                vec2 forced = wrap01(x + g_start);
                vec2 homog = x;
                for (int j = 0; j < n; ++j) {
                    forced = wrap01(ad * forced + force_along[j]);
                    homog = wrap01(ad * homog);
                }
                sup = std::max(sup, torus_dist(forced, wrap01(homog + g_end)));
            }
        }
    }
    return sup;
}

growth_report growth_rate_table(const imat2& a, int n_max) {
    if (n_max < 1) throw std::invalid_argument("growth_rate_table: n_max must be positive");
    growth_report rep;
    rep.h_top = topological_entropy(a);
    bigint upper = 0;
    bigint cumulative = 0;
    for (int n = 1; n <= n_max; ++n) {
        growth_row row;
        row.n = n;
        row.lower = fix_count(a, n);
        upper += row.lower;
        cumulative += least_period_count(a, n);
        row.exact = cumulative;
        row.upper = upper;
        row.rate_lower = log_big(row.lower) / n;
        row.rate_exact = log_big(row.exact) / n;
        row.rate_upper = log_big(row.upper) / n;
        rep.rows.push_back(std::move(row));
    }
    return rep;
}

double estimate_entropy_separated(const imat2& a, int n, double eps, int grid_density) {
    if (n < 1 || grid_density < 2) throw std::invalid_argument("estimate_entropy_separated: bad n or grid");
    if (!(eps > 0.0) || eps > 0.5)
        throw std::invalid_argument("estimate_entropy_separated: eps must lie in (0, 0.5]");
    if (n > 8 || grid_density > 512)
        throw cost_guard("separated-set estimate limited to n <= 8 and grid <= 512");

    // Candidates finer than the separation scale only inflate the static
    // 1/eps^2 volume factor, which swamps the n-dependence at small n; the
    // lattice is therefore clamped to a spacing just above eps/2 (the
    // documented quantisation bias of this diagnostic).
    const long long g = std::min<long long>(
        grid_density, static_cast<long long>(std::ceil(1.8 / eps)));
    // A^j reduced mod g: orbits of lattice points stay on the lattice, so the
    // whole search is exact integer arithmetic.
    std::vector<std::array<long long, 4>> pw(static_cast<std::size_t>(n));
    imat2 p = imat2::identity();
    const auto reduce = [&](const bigint& v) {
        return static_cast<long long>(((v % g) + g) % g);
    };
    for (int j = 0; j < n; ++j) {
        pw[j] = {reduce(p.a), reduce(p.b), reduce(p.c), reduce(p.d)};
        p = p * a;
    }
    const long long threshold =
        static_cast<long long>(std::ceil(eps * static_cast<double>(g) - 1e-12));

    const auto circ = [&](long long d) { return std::min(d, g - d); };
    std::vector<long long> kept; // flattened orbits, 2n entries per point
    kept.reserve(1024);
    std::size_t kept_count = 0;
    std::vector<long long> orbit(static_cast<std::size_t>(2 * n));

    for (long long i1 = 0; i1 < g; ++i1) {
        for (long long i2 = 0; i2 < g; ++i2) {
            for (int j = 0; j < n; ++j) {
                orbit[2 * j] = (pw[j][0] * i1 + pw[j][1] * i2) % g;
                orbit[2 * j + 1] = (pw[j][2] * i1 + pw[j][3] * i2) % g;
            }
            bool separated_from_all = true;
            for (std::size_t q = 0; q < kept_count && separated_from_all; ++q) {
                const long long* other = kept.data() + q * 2 * n;
                bool separated = false;
                for (int j = 0; j < 2 * n && !separated; ++j) {
                    const long long d = std::abs(orbit[j] - other[j]);
                    if (circ(d) >= threshold) separated = true;
                }
                if (!separated) separated_from_all = false;
            }
            if (separated_from_all) {
                kept.insert(kept.end(), orbit.begin(), orbit.end());
                ++kept_count;
            }
        }
    }
    return std::log(static_cast<double>(kept_count)) / n;
}

} // namespace skewtori
