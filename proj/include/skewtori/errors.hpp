#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace skewtori {

// Base class for all library errors; catch this to map any domain failure.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct singular_matrix : error { using error::error; };
struct not_hyperbolic : error { using error::error; };
struct nonzero_degree : error { using error::error; };
struct undersampled_lift : error { using error::error; };
struct cutoff_too_large : error { using error::error; };
struct non_integral_degree : error { using error::error; };
struct budget_exceeded : error { using error::error; };
struct distinctness_failure : error { using error::error; };
struct cost_guard : error { using error::error; };
struct parse_error : error { using error::error; };
struct verification_failure : error { using error::error; };

// Collects every violation found in one validation pass, each prefixed with
// the offending field path, e.g. "force.modes[2].k: exceeds mode_cutoff".
struct validation_error : error {
    std::vector<std::string> violations;

    explicit validation_error(std::vector<std::string> v)
        : error(join(v)), violations(std::move(v)) {}

  private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid configuration:";
        for (const auto& line : v) { s += "\n  - "; s += line; }
        return s;
    }
};

} // namespace skewtori
