#include "skewtori/cocycle_series.hpp"

#include <cmath>
#include <stdexcept>

namespace skewtori {

vec2 cocycle_solution::eval(double omega) const {
    sampled_map view{eta};
    return view.eval(omega);
}

int truncation_length(double r_norm, double rho, double tol) {
    if (!(rho > 0.0 && rho < 1.0))
        throw std::invalid_argument("truncation_length: rho must lie in (0,1)");
    if (!(tol > 0.0))
        throw std::invalid_argument("truncation_length: tol must be positive");
    if (!(r_norm >= 0.0))
        throw std::invalid_argument("truncation_length: r_norm must be >= 0");
    if (r_norm == 0.0) return 1;

    int n = 1;
    double bound = r_norm * rho / (1.0 - rho);
    while (bound > tol) {
        bound *= rho;
        if (++n >= 1 << 20)
            throw std::invalid_argument("truncation_length: tolerance unreachable");
    }
    return n;
}

cocycle_solution solve_twisted_cocycle(const imat2& a, double alpha,
                                       const std::function<vec2(double)>& r,
                                       int grid_size, double tol) {
    if (grid_size < 2)
        throw std::invalid_argument("solve_twisted_cocycle: grid_size must be >= 2");
    const hyperbolic_splitting sp = eigen_split(a); // throws not_hyperbolic

    // Degree and sup-norm of r measured on the solve grid (closed chain for
    // the winding check).
    std::vector<vec2> r_samples(grid_size + 1);
    double r_norm = 0.0;
    for (int j = 0; j <= grid_size; ++j) {
        r_samples[j] = r(static_cast<double>(j) / grid_size);
        r_norm = std::max(r_norm, inf_norm(r_samples[j]));
    }
    const degree_result deg = degree_from_samples(r_samples);
    if (deg.degree[0] != 0 || deg.degree[1] != 0)
        throw nonzero_degree("solve_twisted_cocycle: r must have degree (0,0)");

    const double rho = std::max(std::fabs(sp.lambda_s), 1.0 / std::fabs(sp.lambda_u));
    const int n = truncation_length(r_norm, rho, tol);

    cocycle_solution out;
    out.truncation = n;
    out.tail_bound = r_norm * std::pow(rho, n) / (1.0 - rho);
    out.eta.resize(grid_size);

    for (int j = 0; j < grid_size; ++j) {
        const double w = static_cast<double>(j) / grid_size;

        // Stable series: sum_{k=1..N} lambda_s^{k-1} P_s r(w - k alpha).
        vec2 acc_s{};
        double pow_s = 1.0;
        for (int k = 1; k <= n; ++k) {
            acc_s += pow_s * (sp.p_s * r(wrap01(w - k * alpha)));
            pow_s *= sp.lambda_s;
        }
        // Unstable series: -sum_{k=0..N} lambda_u^{-k-1} P_u r(w + k alpha).
        vec2 acc_u{};
        double pow_u = 1.0 / sp.lambda_u;
        for (int k = 0; k <= n; ++k) {
            acc_u += pow_u * (sp.p_u * r(wrap01(w + k * alpha)));
            pow_u /= sp.lambda_u;
        }
        out.eta[j] = acc_s - acc_u;
    }

    // Measured defect of the defining equation, with eta(w + alpha)
    // interpolated from the stored grid.
    const dmat2 ad = to_double(a);
    for (int j = 0; j < grid_size; ++j) {
        const double w = static_cast<double>(j) / grid_size;
        const vec2 lhs = out.eval(w + alpha);
        const vec2 rhs = ad * out.eta[j] + r_samples[j];
        out.residual_sup = std::max(out.residual_sup, inf_norm(lhs - rhs));
    }
    return out;
}

bool degree_zero_check(const std::vector<vec2>& eta_samples) {
    if (eta_samples.size() < 2) return true;
    std::vector<vec2> closed = eta_samples;
    closed.push_back(eta_samples.front());
    const degree_result d = degree_from_samples(closed);
    return d.degree[0] == 0 && d.degree[1] == 0;
}

} // namespace skewtori
