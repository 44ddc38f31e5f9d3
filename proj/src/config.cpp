#include "skewtori/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <sstream>

namespace skewtori {

namespace {

using json = nlohmann::ordered_json;

bool parse_decimal(const std::string& text, double& out) {
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

std::string number_text(const json& j) {
    // Preserve the literal spelling of numeric alpha values so emission
    // round-trips; nlohmann keeps doubles, so re-serialize canonically.
    return j.dump();
}

void check_mode(const json& j, std::size_t i, std::vector<std::string>& bad,
                std::vector<mode_entry>& out, int mode_cutoff) {
    const std::string path = "force.modes[" + std::to_string(i) + "]";
    if (!j.is_object()) {
        bad.push_back(path + ": expected an object");
        return;
    }
    mode_entry e;
    bool ok = true;
    for (const char* key : {"component", "k", "re", "im"}) {
        if (!j.contains(key)) {
            bad.push_back(path + "." + key + ": missing");
            ok = false;
        }
    }
    if (!ok) return;
    if (!j["component"].is_number_integer() || (j["component"] != 1 && j["component"] != 2)) {
        bad.push_back(path + ".component: must be 1 or 2");
        ok = false;
    }
    if (!j["k"].is_number_integer() || j["k"].get<long long>() < 0) {
        bad.push_back(path + ".k: must be a non-negative integer (conjugate modes are implied)");
        ok = false;
    } else if (mode_cutoff >= 0 && j["k"].get<long long>() > mode_cutoff) {
        bad.push_back(path + ".k: exceeds solver.mode_cutoff " + std::to_string(mode_cutoff));
        ok = false;
    }
    if (!j["re"].is_number() || !j["im"].is_number()) {
        bad.push_back(path + ": re and im must be numbers");
        ok = false;
    }
    if (!ok) return;
    e.component = j["component"].get<int>();
    e.k = j["k"].get<int>();
    e.re = j["re"].get<double>();
    e.im = j["im"].get<double>();
    if (!std::isfinite(e.re) || !std::isfinite(e.im)) {
        bad.push_back(path + ": coefficients must be finite");
        return;
    }
    if (e.k == 0 && e.im != 0.0) {
        bad.push_back(path + ".im: k = 0 modes must be real");
        return;
    }
    out.push_back(e);
}

} // namespace

std::optional<double> named_alpha(const std::string& text) {
    if (text == "sqrt2-1") return std::numbers::sqrt2 - 1.0;
    if (text == "golden") return (std::sqrt(5.0) - 1.0) / 2.0;
    if (text == "pi-3") return std::numbers::pi - 3.0;
    return std::nullopt;
}

double resolve_alpha(const std::string& text) {
    if (const auto v = named_alpha(text)) return *v;
    double v = 0.0;
    if (!parse_decimal(text, v))
        throw validation_error({"alpha: '" + text +
                                "' is neither a named constant (sqrt2-1, golden, pi-3) "
                                "nor a decimal literal"});
    if (!(v > 0.0 && v < 1.0))
        throw validation_error({"alpha: must lie in (0, 1)"});
    return v;
}

bool alpha_needs_warning(const std::string& text) { return !named_alpha(text).has_value(); }

system_config parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw parse_error(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw parse_error("config root must be a JSON object");

    std::vector<std::string> bad;
    system_config c;

    // matrix
    if (!j.contains("matrix")) {
        bad.push_back("matrix: missing");
    } else {
        const json& m = j["matrix"];
        const bool shape_ok = m.is_array() && m.size() == 2 && m[0].is_array() &&
                              m[1].is_array() && m[0].size() == 2 && m[1].size() == 2;
        if (!shape_ok) {
            bad.push_back("matrix: must be a 2x2 integer array [[a,b],[c,d]]");
        } else {
            bool ints = true;
            for (int r = 0; r < 2; ++r)
                for (int cidx = 0; cidx < 2; ++cidx)
                    if (!m[r][cidx].is_number_integer()) ints = false;
            if (!ints) {
                bad.push_back("matrix: entries must be integers");
            } else {
                c.matrix = {m[0][0].get<long long>(), m[0][1].get<long long>(),
                            m[1][0].get<long long>(), m[1][1].get<long long>()};
                const long long det =
                    c.matrix[0] * c.matrix[3] - c.matrix[1] * c.matrix[2];
                if (det != 1 && det != -1)
                    bad.push_back("matrix: det=" + std::to_string(det) +
                                  " not in {+1, -1}");
            }
        }
    }

    // alpha
    if (!j.contains("alpha")) {
        bad.push_back("alpha: missing");
    } else if (j["alpha"].is_string()) {
        c.alpha_text = j["alpha"].get<std::string>();
    } else if (j["alpha"].is_number()) {
        c.alpha_text = number_text(j["alpha"]);
    } else {
        bad.push_back("alpha: must be a string or a number");
    }
    if (std::none_of(bad.begin(), bad.end(),
                     [](const std::string& s) { return s.rfind("alpha:", 0) == 0; })) {
        try {
            (void)resolve_alpha(c.alpha_text);
        } catch (const validation_error& e) {
            bad.insert(bad.end(), e.violations.begin(), e.violations.end());
        }
    }

    // solver (parsed before modes so the cutoff bound is known)
    if (j.contains("solver")) {
        const json& s = j["solver"];
        if (!s.is_object()) {
            bad.push_back("solver: must be an object");
        } else {
            if (s.contains("grid")) {
                if (!s["grid"].is_number_integer() || s["grid"].get<long long>() < 16 ||
                    s["grid"].get<long long>() > (1 << 20))
                    bad.push_back("solver.grid: must be an integer in [16, 1048576]");
                else
                    c.solver.grid = s["grid"].get<int>();
            }
            if (s.contains("mode_cutoff")) {
                if (!s["mode_cutoff"].is_number_integer() ||
                    s["mode_cutoff"].get<long long>() < 0 ||
                    s["mode_cutoff"].get<long long>() > 4096)
                    bad.push_back("solver.mode_cutoff: must be an integer in [0, 4096]");
                else
                    c.solver.mode_cutoff = s["mode_cutoff"].get<int>();
            }
            if (s.contains("tol")) {
                if (!s["tol"].is_number() || !(s["tol"].get<double>() > 0.0) ||
                    s["tol"].get<double>() > 0.1)
                    bad.push_back("solver.tol: must be a number in (0, 0.1]");
                else
                    c.solver.tol = s["tol"].get<double>();
            }
            if (s.contains("budget")) {
                if (!s["budget"].is_number_integer() || s["budget"].get<long long>() < 1)
                    bad.push_back("solver.budget: must be a positive integer");
                else
                    c.solver.budget = s["budget"].get<long long>();
            }
            if (s.contains("residual_ceiling")) {
                if (!s["residual_ceiling"].is_number() ||
                    !(s["residual_ceiling"].get<double>() > 0.0))
                    bad.push_back("solver.residual_ceiling: must be a positive number");
                else
                    c.solver.residual_ceiling = s["residual_ceiling"].get<double>();
            }
        }
    }

    // force
    if (!j.contains("force")) {
        bad.push_back("force: missing");
    } else if (!j["force"].is_object()) {
        bad.push_back("force: must be an object");
    } else {
        const json& f = j["force"];
        if (!f.contains("degree") || !f["degree"].is_array() || f["degree"].size() != 2 ||
            !f["degree"][0].is_number_integer() || !f["degree"][1].is_number_integer()) {
            bad.push_back("force.degree: must be an array of 2 integers");
        } else {
            c.degree = {f["degree"][0].get<int>(), f["degree"][1].get<int>()};
        }
        if (f.contains("modes")) {
            if (!f["modes"].is_array()) {
                bad.push_back("force.modes: must be an array");
            } else {
                for (std::size_t i = 0; i < f["modes"].size(); ++i)
                    check_mode(f["modes"][i], i, bad, c.modes, c.solver.mode_cutoff);
                std::stable_sort(c.modes.begin(), c.modes.end(),
                                 [](const mode_entry& lhs, const mode_entry& rhs) {
                                     if (lhs.component != rhs.component)
                                         return lhs.component < rhs.component;
                                     return lhs.k < rhs.k;
                                 });
                for (std::size_t i = 1; i < c.modes.size(); ++i)
                    if (c.modes[i].component == c.modes[i - 1].component &&
                        c.modes[i].k == c.modes[i - 1].k)
                        bad.push_back("force.modes: duplicate entry for component " +
                                      std::to_string(c.modes[i].component) + ", k=" +
                                      std::to_string(c.modes[i].k));
            }
        }
        if (f.contains("remainder")) {
            const json& r = f["remainder"];
            if (!r.is_object()) {
                bad.push_back("force.remainder: must be an object");
            } else {
                remainder_spec spec;
                const bool has_wave = r.contains("waveform");
                const bool has_path = r.contains("path");
                if (has_wave == has_path) {
                    bad.push_back(
                        "force.remainder: exactly one of waveform or path is required");
                } else if (has_wave) {
                    if (!r["waveform"].is_string() ||
                        (r["waveform"] != "triangle" && r["waveform"] != "sawtooth-smoothed")) {
                        bad.push_back("force.remainder.waveform: must be 'triangle' or "
                                      "'sawtooth-smoothed'");
                    } else {
                        spec.waveform = r["waveform"].get<std::string>();
                    }
                    if (!r.contains("amplitude") || !r["amplitude"].is_number() ||
                        !std::isfinite(r["amplitude"].get<double>()) ||
                        r["amplitude"].get<double>() < 0.0)
                        bad.push_back(
                            "force.remainder.amplitude: must be a non-negative number");
                    else
                        spec.amplitude = r["amplitude"].get<double>();
                    if (r.contains("grid")) {
                        if (!r["grid"].is_number_integer() ||
                            r["grid"].get<long long>() < 8 ||
                            r["grid"].get<long long>() > (1 << 20))
                            bad.push_back(
                                "force.remainder.grid: must be an integer in [8, 1048576]");
                        else
                            spec.grid = r["grid"].get<int>();
                    }
                } else {
                    if (!r["path"].is_string() || r["path"].get<std::string>().empty())
                        bad.push_back("force.remainder.path: must be a non-empty string");
                    else
                        spec.path = r["path"].get<std::string>();
                }
                c.remainder = spec;
            }
        }
    }

    if (!bad.empty()) throw validation_error(std::move(bad));
    return c;
}

std::string emit_config(const system_config& c) {
    json j;
    j["matrix"] = {{c.matrix[0], c.matrix[1]}, {c.matrix[2], c.matrix[3]}};
    if (named_alpha(c.alpha_text)) {
        j["alpha"] = c.alpha_text;
    } else {
        double v = 0.0;
        parse_decimal(c.alpha_text, v);
        j["alpha"] = v;
    }
    json force;
    force["degree"] = {c.degree[0], c.degree[1]};
    json modes = json::array();
    for (const mode_entry& e : c.modes)
        modes.push_back(
            {{"component", e.component}, {"k", e.k}, {"re", e.re}, {"im", e.im}});
    force["modes"] = std::move(modes);
    if (c.remainder) {
        json r;
        if (!c.remainder->path.empty()) {
            r["path"] = c.remainder->path;
        } else {
            r["waveform"] = c.remainder->waveform;
            r["amplitude"] = c.remainder->amplitude;
            r["grid"] = c.remainder->grid;
        }
        force["remainder"] = std::move(r);
    }
    j["force"] = std::move(force);
    json s;
    s["grid"] = c.solver.grid;
    s["mode_cutoff"] = c.solver.mode_cutoff;
    s["tol"] = c.solver.tol;
    s["budget"] = c.solver.budget;
    if (c.solver.residual_ceiling) s["residual_ceiling"] = *c.solver.residual_ceiling;
    j["solver"] = std::move(s);
    return j.dump(2) + "\n";
}

system_config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

imat2 config_matrix(const system_config& c) {
    return imat2{c.matrix[0], c.matrix[1], c.matrix[2], c.matrix[3]};
}

sampled_map make_waveform(const std::string& name, double amplitude, int grid) {
    sampled_map out;
    out.samples.resize(static_cast<std::size_t>(grid));
    if (name == "triangle") {
        const auto tri = [](double w) { return 1.0 - 4.0 * std::abs(wrap01(w) - 0.5); };
        for (int i = 0; i < grid; ++i) {
            const double w = static_cast<double>(i) / grid;
            out.samples[i] = {amplitude * tri(w), amplitude * tri(w + 0.25)};
        }
        return out;
    }
    if (name == "sawtooth-smoothed") {
        const auto saw8 = [](double w) {
            double s = 0.0;
            for (int k = 1; k <= 8; ++k)
                s += (k % 2 == 1 ? 1.0 : -1.0) * std::sin(two_pi * k * w) / k;
            return s;
        };
        double peak = 0.0;
        constexpr int probe = 1 << 14;
        for (int i = 0; i < probe; ++i)
            peak = std::max(peak, std::abs(saw8(static_cast<double>(i) / probe)));
        const double scale = amplitude / peak;
        for (int i = 0; i < grid; ++i) {
            const double w = static_cast<double>(i) / grid;
            out.samples[i] = {scale * saw8(w), scale * saw8(w + 0.25)};
        }
        return out;
    }
    throw std::invalid_argument("unknown waveform: " + name);
}

force_map build_force(const system_config& c) {
    force_map h;
    h.degree = c.degree;
    int cutoff = 0;
    for (const mode_entry& e : c.modes) cutoff = std::max(cutoff, e.k);
    h.trig = trig_poly::with_cutoff(cutoff);
    for (const mode_entry& e : c.modes) {
        const std::complex<double> b{e.re, e.im};
        cvec2 mode = h.trig.mode(e.k);
        if (e.component == 1)
            mode.x = b;
        else
            mode.y = b;
        h.trig.set_mode(e.k, mode);
        if (e.k > 0) {
            cvec2 mirror = h.trig.mode(-e.k);
            if (e.component == 1)
                mirror.x = std::conj(b);
            else
                mirror.y = std::conj(b);
            h.trig.set_mode(-e.k, mirror);
        }
    }
    if (c.remainder) {
        if (!c.remainder->path.empty()) {
            std::ifstream in(c.remainder->path);
            if (!in)
                throw parse_error("cannot read remainder sample file: " + c.remainder->path);
            sampled_map s;
            std::string line;
            while (std::getline(in, line)) {
                if (line.empty() || line[0] == '#') continue;
                std::replace(line.begin(), line.end(), ',', ' ');
                std::istringstream row(line);
                double h1 = 0.0, h2 = 0.0;
                if (!(row >> h1 >> h2))
                    throw parse_error("remainder sample file: bad row '" + line + "'");
                s.samples.push_back({h1, h2});
            }
            if (s.samples.size() < 8)
                throw parse_error("remainder sample file: need at least 8 rows");
            h.remainder = std::move(s);
        } else if (c.remainder->amplitude != 0.0) {
            h.remainder =
                make_waveform(c.remainder->waveform, c.remainder->amplitude, c.remainder->grid);
        }
    }
    return h;
}

} // namespace skewtori
