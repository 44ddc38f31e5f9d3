#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "skewtori/errors.hpp"
#include "skewtori/vec2.hpp"

namespace skewtori {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

// Exact 2x2 integer matrix, row-major [[a,b],[c,d]]. Entries are
// arbitrary-precision: powers of a hyperbolic matrix grow like lambda_u^n
// and overflow 64-bit integers near n = 45.
struct imat2 {
    bigint a, b, c, d;

    static imat2 identity() { return {1, 0, 0, 1}; }

    friend imat2 operator*(const imat2& l, const imat2& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
    friend imat2 operator-(const imat2& l, const imat2& r) {
        return {l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d};
    }
    bool operator==(const imat2&) const = default;
};

bigint det2(const imat2& m);

inline bigint trace2(const imat2& m) { return m.a + m.d; }

// Exact A^n by repeated squaring; n >= 0 (n = 0 gives the identity).
imat2 mat_pow(const imat2& a, int n);

enum class map_class { hyperbolic, not_hyperbolic, not_unimodular };

// Total, exact classification: det in {+1,-1} required for unimodularity;
// det=+1 is hyperbolic iff |tr| > 2, det=-1 iff tr != 0.
map_class classify_hyperbolic(const imat2& a);

struct rvec2 {
    bigrat x, y;
    bool operator==(const rvec2&) const = default;
};

// Exact rational 2x2 matrix; boost keeps every entry reduced with a
// positive denominator.
struct rmat2 {
    bigrat a, b, c, d;

    friend rvec2 operator*(const rmat2& m, const rvec2& v) {
        return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
    }
    friend rmat2 operator*(const rmat2& l, const rmat2& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
    bool operator==(const rmat2&) const = default;
};

// Exact inverse (adjugate over determinant). Throws singular_matrix when
// det = 0.
rmat2 rational_inverse(const imat2& m);

// U * M * V = D with U, V unimodular, D = diag(d1, d2), d1, d2 >= 0,
// d1 | d2 and d1*d2 = |det M|.
struct smith_form {
    imat2 u, d, v;
};

// Gcd row/column reduction with explicit transform tracking. The pivot is
// always the minimal-absolute-value nonzero entry, ties broken row-major,
// so the decomposition (and everything enumerated from it) is deterministic.
smith_form smith_normal_form(const imat2& m);

// Real hyperbolic eigendata of an admitted matrix. lambda_u is the
// eigenvalue with |lambda| > 1; p_u, p_s are the projections onto the
// eigenlines along each other (p_u + p_s = I).
struct hyperbolic_splitting {
    double lambda_u = 0.0;
    double lambda_s = 0.0;
    vec2 v_u, v_s;   // unit eigenvectors
    dmat2 p_u, p_s;  // spectral projections
};

// Quadratic formula on (tr, det); hyperbolicity guarantees the discriminant
// is at least 5, so no degenerate guard is needed. Throws not_hyperbolic.
hyperbolic_splitting eigen_split(const imat2& a);

dmat2 to_double(const imat2& m);
dmat2 to_double(const rmat2& m);

} // namespace skewtori
