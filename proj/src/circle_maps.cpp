#include "skewtori/circle_maps.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace skewtori {

double wrap01(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f -= 1.0; // floor rounding can leave exactly 1.0
    return f;
}

double circle_dist(double a, double b) {
    const double f = wrap01(a - b);
    return std::min(f, 1.0 - f);
}

trig_poly trig_poly::with_cutoff(int k) {
    trig_poly p;
    p.cutoff = k;
    p.coeff.assign(2 * k + 1, cvec2{});
    return p;
}

bool trig_poly::is_zero() const {
    for (const auto& c : coeff)
        if (std::abs(c.x) != 0.0 || std::abs(c.y) != 0.0) return false;
    return true;
}

cvec2 trig_poly::mode(int k) const {
    if (k < -cutoff || k > cutoff || coeff.empty()) return {};
    return coeff[k + cutoff];
}

void trig_poly::set_mode(int k, cvec2 b) {
    const int need = std::abs(k);
    if (coeff.empty()) *this = with_cutoff(need);
    if (need > cutoff) {
        trig_poly grown = with_cutoff(need);
        for (int j = -cutoff; j <= cutoff; ++j) grown.coeff[j + need] = coeff[j + cutoff];
        *this = grown;
    }
    coeff[k + cutoff] = b;
}

vec2 trig_poly::eval(double omega) const {
    if (coeff.empty()) return {};
    std::complex<double> s1{0.0, 0.0}, s2{0.0, 0.0};
    for (int k = -cutoff; k <= cutoff; ++k) {
        const cvec2& b = coeff[k + cutoff];
        if (b.x == std::complex<double>{} && b.y == std::complex<double>{}) continue;
        const std::complex<double> e = std::polar(1.0, two_pi * k * omega);
        s1 += b.x * e;
        s2 += b.y * e;
    }
    // Hermitian symmetry makes the imaginary parts cancel to rounding noise;
    // only the real parts are meaningful.
    return {s1.real(), s2.real()};
}

void trig_poly::enforce_hermitian() {
    for (int k = 0; k <= cutoff; ++k) {
        const cvec2 bk = mode(k);
        const cvec2 bm = mode(-k);
        const cvec2 avg{0.5 * (bk.x + std::conj(bm.x)), 0.5 * (bk.y + std::conj(bm.y))};
        set_mode(k, avg);
        set_mode(-k, conj(avg));
    }
}

vec2 sampled_map::eval(double omega) const {
    const std::size_t n = samples.size();
    if (n == 0) return {};
    if (n == 1) return samples[0];
    double t = wrap01(omega) * static_cast<double>(n);
    std::size_t j = static_cast<std::size_t>(t);
    if (j >= n) j = n - 1; // t can round to n when omega is just below 1
    const double frac = t - static_cast<double>(j);
    const vec2& lo = samples[j];
    const vec2& hi = samples[(j + 1) % n];
    return {lo.x + frac * (hi.x - lo.x), lo.y + frac * (hi.y - lo.y)};
}

double sampled_map::sup_norm() const {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, inf_norm(s));
    return m;
}

vec2 evaluate_lift(const force_map& h, double omega) {
    vec2 v{h.degree[0] * omega, h.degree[1] * omega};
    v += h.trig.eval(omega);
    if (h.remainder) v += h.remainder->eval(omega);
    return v;
}

torus_point evaluate_torus(const force_map& h, double omega) {
    return wrap01(evaluate_lift(h, omega));
}

degree_result degree_from_samples(const std::vector<vec2>& closed_samples) {
    if (closed_samples.size() < 2)
        throw std::invalid_argument("degree_from_samples: need at least two samples");

    degree_result out;
    double sum_x = 0.0, sum_y = 0.0;
    for (std::size_t j = 0; j + 1 < closed_samples.size(); ++j) {
        const vec2 d = closed_samples[j + 1] - closed_samples[j];
        // Wrapped increment: the representative of the step nearest zero.
        const double wx = d.x - std::nearbyint(d.x);
        const double wy = d.y - std::nearbyint(d.y);
        const double m = std::max(std::fabs(wx), std::fabs(wy));
        out.max_increment = std::max(out.max_increment, m);
        if (m >= 0.45)
            throw undersampled_lift("degree_from_samples: wrapped increment >= 0.45; sample denser");
        sum_x += wx;
        sum_y += wy;
    }
    out.degree = {static_cast<int>(std::lround(sum_x)), static_cast<int>(std::lround(sum_y))};
    return out;
}

fit_result fit_modes(const std::vector<vec2>& samples, int cutoff) {
    const int n = static_cast<int>(samples.size());
    if (cutoff < 0) throw std::invalid_argument("fit_modes: cutoff must be >= 0");
    if (n < 2 * cutoff + 2)
        throw cutoff_too_large("fit_modes: need N >= 2K+2 samples for cutoff K");

    fit_result out;
    out.modes = trig_poly::with_cutoff(cutoff);
    for (int k = -cutoff; k <= cutoff; ++k) {
        cvec2 b;
        for (int j = 0; j < n; ++j) {
            const std::complex<double> e = std::polar(1.0, -two_pi * k * j / n);
            b.x += samples[j].x * e;
            b.y += samples[j].y * e;
        }
        const double inv = 1.0 / n;
        out.modes.set_mode(k, {inv * b.x, inv * b.y});
    }
    out.modes.enforce_hermitian();

    for (int j = 0; j < n; ++j) {
        const vec2 recon = out.modes.eval(static_cast<double>(j) / n);
        out.tail_sup = std::max(out.tail_sup, inf_norm(samples[j] - recon));
    }
    return out;
}

} // namespace skewtori
