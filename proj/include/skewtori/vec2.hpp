#pragma once

#include <cmath>
#include <complex>

namespace skewtori {

// Small fixed-size real/complex 2-vectors and 2x2 matrices used by the
// numeric layers. Everything is by-value and trivially copyable.

struct vec2 {
    double x = 0.0;
    double y = 0.0;

    friend vec2 operator+(vec2 a, vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend vec2 operator-(vec2 a, vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend vec2 operator*(double s, vec2 a) { return {s * a.x, s * a.y}; }
    vec2& operator+=(vec2 o) { x += o.x; y += o.y; return *this; }
    vec2& operator-=(vec2 o) { x -= o.x; y -= o.y; return *this; }
};

inline double inf_norm(vec2 v) { return std::max(std::fabs(v.x), std::fabs(v.y)); }

struct cvec2 {
    std::complex<double> x{0.0, 0.0};
    std::complex<double> y{0.0, 0.0};

    friend cvec2 operator+(const cvec2& a, const cvec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend cvec2 operator*(std::complex<double> s, const cvec2& a) { return {s * a.x, s * a.y}; }
    cvec2& operator+=(const cvec2& o) { x += o.x; y += o.y; return *this; }
};

inline cvec2 conj(const cvec2& v) { return {std::conj(v.x), std::conj(v.y)}; }
inline double inf_norm(const cvec2& v) { return std::max(std::abs(v.x), std::abs(v.y)); }

// Row-major [[a,b],[c,d]].
struct dmat2 {
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

    static dmat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    friend vec2 operator*(const dmat2& m, vec2 v) {
        return {m.a * v.x + m.b * v.y, m.c * v.x + m.d * v.y};
    }
    friend dmat2 operator*(const dmat2& l, const dmat2& r) {
        return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.d,
                l.c * r.a + l.d * r.c, l.c * r.b + l.d * r.d};
    }
    friend dmat2 operator+(const dmat2& l, const dmat2& r) {
        return {l.a + r.a, l.b + r.b, l.c + r.c, l.d + r.d};
    }
    friend dmat2 operator-(const dmat2& l, const dmat2& r) {
        return {l.a - r.a, l.b - r.b, l.c - r.c, l.d - r.d};
    }
    friend dmat2 operator*(double s, const dmat2& m) {
        return {s * m.a, s * m.b, s * m.c, s * m.d};
    }
};

inline double inf_norm(const dmat2& m) {
    // Operator infinity norm: max absolute row sum.
    return std::max(std::fabs(m.a) + std::fabs(m.b), std::fabs(m.c) + std::fabs(m.d));
}

inline double entry_max(const dmat2& m) {
    return std::max(std::max(std::fabs(m.a), std::fabs(m.b)),
                    std::max(std::fabs(m.c), std::fabs(m.d)));
}

} // namespace skewtori
