#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skewtori/circle_maps.hpp"
#include "skewtori/exact_linalg.hpp"

namespace skewtori {

// One Fourier mode of the force, k >= 0; the conjugate mode at -k is implied.
// k = 0 entries must have im = 0.
struct mode_entry {
    int component = 1; // 1 or 2
    int k = 0;
    double re = 0.0;
    double im = 0.0;

    friend bool operator==(const mode_entry&, const mode_entry&) = default;
};

// Non-trigonometric part of the force: either a named waveform generated on
// `grid` samples, or a two-column sample file.
struct remainder_spec {
    std::string waveform; // "triangle" | "sawtooth-smoothed" | "" when path is set
    double amplitude = 0.0;
    int grid = 1024;
    std::string path;

    friend bool operator==(const remainder_spec&, const remainder_spec&) = default;
};

struct solver_params {
    int grid = 4096;
    int mode_cutoff = 64;
    double tol = 1e-9;
    long long budget = 5000000;
    std::optional<double> residual_ceiling;

    friend bool operator==(const solver_params&, const solver_params&) = default;
};

struct system_config {
    std::array<long long, 4> matrix{1, 0, 0, 1}; // row-major A
    std::string alpha_text = "sqrt2-1";          // named constant or decimal literal
    std::array<int, 2> degree{0, 0};
    std::vector<mode_entry> modes;               // canonical: sorted by (component, k)
    std::optional<remainder_spec> remainder;
    solver_params solver;

    friend bool operator==(const system_config&, const system_config&) = default;
};

// Named constants: "sqrt2-1" -> sqrt(2)-1, "golden" -> (sqrt(5)-1)/2,
// "pi-3" -> pi-3. Returns nullopt for anything else.
std::optional<double> named_alpha(const std::string& text);

// Resolved alpha value; decimal literals parse to double. Throws
// validation_error when the text is neither named nor a decimal in (0, 1).
double resolve_alpha(const std::string& text);

// True when alpha_text is a decimal literal (necessarily rational): such
// configs run, but the run report flags the irrationality hypothesis.
bool alpha_needs_warning(const std::string& text);

// Parse the canonical JSON form, collecting every violation (with field
// paths) before failing. Throws parse_error on malformed JSON,
// validation_error when any field is out of contract.
system_config parse_config(const std::string& text);

// Canonical JSON emission; parse_config(emit_config(c)) == c.
std::string emit_config(const system_config& c);

// Read + parse a config file. Throws parse_error when unreadable.
system_config load_config_file(const std::string& path);

imat2 config_matrix(const system_config& c);

// Assemble the force: trig part from the mode list, remainder realized as a
// sampled map (waveform generated, or sample file loaded relative to the
// current directory). Throws parse_error on unreadable sample files.
force_map build_force(const system_config& c);

// Waveform generators used for remainder specs (exposed for tests).
// triangle: amplitude * (t(w), t(w + 1/4)) with t(w) = 1 - 4|frac(w) - 1/2|.
// sawtooth-smoothed: the 8-term sine partial sum of the sawtooth, rescaled
// to peak amplitude, same quarter-phase pairing.
sampled_map make_waveform(const std::string& name, double amplitude, int grid);

} // namespace skewtori
