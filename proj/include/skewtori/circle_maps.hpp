#pragma once

#include <array>
#include <numbers>
#include <optional>
#include <vector>

#include "skewtori/errors.hpp"
#include "skewtori/vec2.hpp"

namespace skewtori {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Reduce to the canonical torus representative in [0, 1).
double wrap01(double x);

// Distance on the circle R/Z: min(frac, 1 - frac).
double circle_dist(double a, double b);

// Point of T^2, coordinates in [0,1).
using torus_point = vec2;

inline torus_point wrap01(vec2 v) { return {wrap01(v.x), wrap01(v.y)}; }

// Distance on T^2: max of the per-coordinate circle distances.
inline double torus_dist(vec2 a, vec2 b) {
    return std::max(circle_dist(a.x, b.x), circle_dist(a.y, b.y));
}

// Vector-valued trigonometric polynomial sum_{|k|<=K} b_k e^{2 pi i k w}
// with Hermitian coefficients (b_{-k} = conj(b_k)), so it evaluates real.
struct trig_poly {
    int cutoff = 0;            // K
    std::vector<cvec2> coeff;  // size 2K+1, index k + K; empty means zero

    static trig_poly zero() { return {}; }
    static trig_poly with_cutoff(int k);

    bool is_zero() const;
    cvec2 mode(int k) const;       // (0,0) outside the stored band
    void set_mode(int k, cvec2 b); // grows the band as needed
    vec2 eval(double omega) const; // real part of the trig sum
    // b_k <- (b_k + conj(b_{-k}))/2 for every k; makes im(b_0) exactly 0.
    void enforce_hermitian();
};

// Degree-0 continuous map T -> R^2 stored as a uniform sample grid with
// periodic linear interpolation; the minimal faithful container for a map
// that is merely continuous.
struct sampled_map {
    std::vector<vec2> samples; // values at j/N, j = 0..N-1

    vec2 eval(double omega) const;
    double sup_norm() const;
};

// A map h: T -> T^2 split as degree + trig polynomial + sampled remainder:
// lift h_i(w) = deg_i * w + s_i(w) + r_i(w).
struct force_map {
    std::array<int, 2> degree{0, 0};
    trig_poly trig;
    std::optional<sampled_map> remainder;

    bool is_zero() const {
        return degree[0] == 0 && degree[1] == 0 && trig.is_zero() && !remainder;
    }
};

vec2 evaluate_lift(const force_map& h, double omega);
torus_point evaluate_torus(const force_map& h, double omega);

struct degree_result {
    std::array<int, 2> degree{0, 0};
    double max_increment = 0.0; // density diagnostic
};

// Winding numbers from a closed sample chain: values at w = j/N for
// j = 0..N (the last entry is the value at w = 1). Sums the wrapped
// increments and rounds. Throws undersampled_lift when any wrapped
// increment reaches 0.45 (safety margin below the 1/2 aliasing bound).
degree_result degree_from_samples(const std::vector<vec2>& closed_samples);

struct fit_result {
    trig_poly modes;
    double tail_sup = 0.0; // sup-norm of samples minus the kept-band sum, on the grid
};

// DFT of degree-0 samples at j/N, j = 0..N-1, keeping |k| <= cutoff and
// enforcing Hermitian symmetry by averaging b_k with conj(b_{-k}).
// Requires N >= 2*cutoff + 2 (cutoff_too_large otherwise).
fit_result fit_modes(const std::vector<vec2>& samples, int cutoff);

} // namespace skewtori
