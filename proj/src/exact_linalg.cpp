#include "skewtori/exact_linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace skewtori {

bigint det2(const imat2& m) { return m.a * m.d - m.b * m.c; }

imat2 mat_pow(const imat2& a, int n) {
    if (n < 0) throw std::invalid_argument("mat_pow: n must be >= 0");
    imat2 result = imat2::identity();
    imat2 base = a;
    while (n > 0) {
        if (n & 1) result = result * base;
        base = base * base;
        n >>= 1;
    }
    return result;
}

map_class classify_hyperbolic(const imat2& a) {
    const bigint det = det2(a);
    const bigint tr = trace2(a);
    if (det == 1) return abs(tr) > 2 ? map_class::hyperbolic : map_class::not_hyperbolic;
    if (det == -1) return tr != 0 ? map_class::hyperbolic : map_class::not_hyperbolic;
    return map_class::not_unimodular;
}

rmat2 rational_inverse(const imat2& m) {
    const bigint det = det2(m);
    if (det == 0) throw singular_matrix("rational_inverse: determinant is zero");
    const bigint s = det < 0 ? -1 : 1; // the rational constructor wants den > 0
    const auto q = [&](bigint n) { return bigrat(s * n, s * det); };
    return {q(m.d), q(-m.b), q(-m.c), q(m.a)};
}

namespace {

// In-place elementary operations on (m, u, v) keeping u*m0*v = m.
struct snf_state {
    imat2 m, u, v;

    void swap_rows() {
        std::swap(m.a, m.c); std::swap(m.b, m.d);
        std::swap(u.a, u.c); std::swap(u.b, u.d);
    }
    void swap_cols() {
        std::swap(m.a, m.b); std::swap(m.c, m.d);
        std::swap(v.a, v.b); std::swap(v.c, v.d);
    }
    void negate_row(int i) {
        if (i == 0) { m.a = -m.a; m.b = -m.b; u.a = -u.a; u.b = -u.b; }
        else        { m.c = -m.c; m.d = -m.d; u.c = -u.c; u.d = -u.d; }
    }
    // row1 -= q * row0
    void reduce_row1(const bigint& q) {
        m.c -= q * m.a; m.d -= q * m.b;
        u.c -= q * u.a; u.d -= q * u.b;
    }
    // col1 -= q * col0
    void reduce_col1(const bigint& q) {
        m.b -= q * m.a; m.d -= q * m.c;
        v.b -= q * v.a; v.d -= q * v.c;
    }
    // col0 += col1 (divisibility fix-up)
    void add_col1_to_col0() {
        m.a += m.b; m.c += m.d;
        v.a += v.b; v.c += v.d;
    }
};

// Move the minimal-absolute-value nonzero entry to position (0,0); ties are
// broken in row-major scan order.
void move_pivot(snf_state& s) {
    const bigint* entries[4] = {&s.m.a, &s.m.b, &s.m.c, &s.m.d};
    int best = -1;
    for (int i = 0; i < 4; ++i) {
        if (*entries[i] == 0) continue;
        if (best < 0 || abs(*entries[i]) < abs(*entries[best])) best = i;
    }
    if (best < 0) return; // zero matrix
    if (best >= 2) s.swap_rows();
    if (best % 2 == 1) s.swap_cols();
}

} // namespace

smith_form smith_normal_form(const imat2& m_in) {
    if (det2(m_in) == 0)
        throw singular_matrix("smith_normal_form: determinant is zero");
    snf_state s{m_in, imat2::identity(), imat2::identity()};

    for (;;) {
        move_pivot(s);
        if (s.m.a == 0) break; // zero matrix
        if (s.m.c != 0) { s.reduce_row1(s.m.c / s.m.a); continue; }
        if (s.m.b != 0) { s.reduce_col1(s.m.b / s.m.a); continue; }
        if (s.m.d % s.m.a != 0) { s.add_col1_to_col0(); continue; }
        break;
    }

    if (s.m.a < 0) s.negate_row(0);
    if (s.m.d < 0) s.negate_row(1);
    return {s.u, s.m, s.v};
}

hyperbolic_splitting eigen_split(const imat2& a) {
    if (classify_hyperbolic(a) != map_class::hyperbolic)
        throw not_hyperbolic("eigen_split: matrix is not hyperbolic");

    const double tr = trace2(a).convert_to<double>();
    const double det = det2(a).convert_to<double>();
    const double disc = tr * tr - 4.0 * det; // >= 5 for every hyperbolic case
    const double root = std::sqrt(disc);

    hyperbolic_splitting sp;
    sp.lambda_u = (tr + std::copysign(root, tr)) / 2.0;
    sp.lambda_s = det / sp.lambda_u; // avoids the cancelling branch of the formula

    // For a hyperbolic integer matrix b != 0 (b = 0 would force integer
    // eigenvalues a, d with |ad| = 1, i.e. modulus 1), so (b, lambda - a)
    // is always a valid eigenvector.
    const dmat2 ad = to_double(a);
    auto unit_eigvec = [&](double lambda) -> vec2 {
        vec2 v{ad.b, lambda - ad.a};
        const double n = std::hypot(v.x, v.y);
        return {v.x / n, v.y / n};
    };
    sp.v_u = unit_eigvec(sp.lambda_u);
    sp.v_s = unit_eigvec(sp.lambda_s);

    // Spectral projections in closed form: P_u = (A - lambda_s I)/(lambda_u - lambda_s).
    const double gap = sp.lambda_u - sp.lambda_s;
    sp.p_u = (1.0 / gap) * (ad - sp.lambda_s * dmat2::identity());
    sp.p_s = (-1.0 / gap) * (ad - sp.lambda_u * dmat2::identity());
    return sp;
}

dmat2 to_double(const imat2& m) {
    return {m.a.convert_to<double>(), m.b.convert_to<double>(),
            m.c.convert_to<double>(), m.d.convert_to<double>()};
}

dmat2 to_double(const rmat2& m) {
    return {m.a.convert_to<double>(), m.b.convert_to<double>(),
            m.c.convert_to<double>(), m.d.convert_to<double>()};
}

} // namespace skewtori
