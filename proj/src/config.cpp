#include "swspectra/config.hpp"

#include <cmath>
#include <set>

#include "json.hpp"

namespace sw {

namespace {

using nlohmann::ordered_json;

const std::set<std::string> kKnownKeys = {
    "case",   "mode",    "m",       "c",    "hbar",        "omega",
    "k",      "mu",      "mu1",     "mu2",  "p_max",       "signs",
    "tol",    "form",    "variant", "grid_points", "grid_extent", "window",
    "format",
};

double require_number(const ordered_json& j, const std::string& key) {
    if (!j.at(key).is_number())
        throw ConfigError("config key '" + key + "' must be a number");
    return j.at(key).get<double>();
}

int require_int(const ordered_json& j, const std::string& key) {
    if (!j.at(key).is_number_integer())
        throw ConfigError("config key '" + key + "' must be an integer");
    return j.at(key).get<int>();
}

int parse_sign_entry(const ordered_json& v, const char* which) {
    if (!v.is_number_integer())
        throw ConfigError(std::string("signs entry ") + which + " must be the integer +1 or -1");
    const int s = v.get<int>();
    if (s != 1 && s != -1)
        throw ConfigError(std::string("signs entry ") + which + " must be +1 or -1");
    return s;
}

bool case_uses_omega(int case_id) { return case_id == 1 || case_id == 2; }
bool case_has_two_signs(int case_id) { return case_id == 1 || case_id == 3; }

// Couplings below these thresholds give an imaginary ladder index, so the
// algebraic spectrum construction is undefined; reject them up front.
void check_coupling_domain(const JobConfig& cfg) {
    const double h2 = cfg.params.hbar * cfg.params.hbar;
    const auto reject = [&](const char* name, double bound_num) {
        throw ConfigError(std::string("k_tilde_") + name +
                          " imaginary: coupling below -hbar^2/" +
                          std::to_string(static_cast<int>(bound_num)));
    };
    switch (cfg.case_id) {
        case 1:
            if (cfg.params.mu1 < -h2 / 4.0) reject("1", 4);
            if (cfg.params.mu2 < -h2 / 4.0) reject("2", 4);
            break;
        case 2:
            if (cfg.params.mu < -h2 / 4.0) reject("1", 4);
            break;
        case 3:
            if (cfg.params.mu1 < -h2 / 8.0) reject("1", 8);
            if (cfg.params.mu2 < -h2 / 8.0) reject("2", 8);
            break;
        default:
            break; // the fourth system has no ladder-index constraint
    }
}

} // namespace

const char* mode_name(RunMode mode) {
    switch (mode) {
        case RunMode::quasi: return "quasi";
        case RunMode::relativistic: return "relativistic";
        case RunMode::closure_check: return "closure-check";
        case RunMode::dirac_check: return "dirac-check";
        default: return "verify";
    }
}

RunMode mode_from_name(const std::string& name) {
    if (name == "quasi") return RunMode::quasi;
    if (name == "relativistic") return RunMode::relativistic;
    if (name == "closure-check") return RunMode::closure_check;
    if (name == "dirac-check") return RunMode::dirac_check;
    if (name == "verify") return RunMode::verify;
    throw ConfigError("unknown mode '" + name +
                      "' (expected quasi, relativistic, closure-check, dirac-check, or verify)");
}

bool operator==(const JobConfig& x, const JobConfig& y) {
    const auto& a = x.params;
    const auto& b = y.params;
    return x.case_id == y.case_id && a.m == b.m && a.c == b.c && a.hbar == b.hbar &&
           a.omega == b.omega && a.k == b.k && a.mu == b.mu && a.mu1 == b.mu1 &&
           a.mu2 == b.mu2 && x.p_max == y.p_max && x.signs == y.signs && x.mode == y.mode &&
           x.tol == y.tol && x.has_tol == y.has_tol && x.form == y.form &&
           x.variant == y.variant && x.grid_points == y.grid_points &&
           x.has_grid_points == y.has_grid_points && x.grid_extent == y.grid_extent &&
           x.has_window == y.has_window &&
           (!x.has_window || (x.window.lo == y.window.lo && x.window.hi == y.window.hi)) &&
           x.format == y.format;
}

JobConfig parse_config(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");

    for (const auto& item : j.items())
        if (kKnownKeys.find(item.key()) == kKnownKeys.end())
            throw ConfigError("unknown config key '" + item.key() + "'");

    JobConfig cfg;
    if (!j.contains("case")) throw ConfigError("missing required config key 'case'");
    cfg.case_id = require_int(j, "case");
    if (cfg.case_id < 1 || cfg.case_id > 4)
        throw ConfigError("config key 'case' must be 1, 2, 3, or 4");

    if (j.contains("mode")) {
        if (!j.at("mode").is_string()) throw ConfigError("config key 'mode' must be a string");
        cfg.mode = mode_from_name(j.at("mode").get<std::string>());
        cfg.has_mode = true;
    }

    cfg.params.m = j.contains("m") ? require_number(j, "m") : 1.0;
    cfg.params.c = j.contains("c") ? require_number(j, "c") : 1.0;
    cfg.params.hbar = j.contains("hbar") ? require_number(j, "hbar") : 1.0;
    if (cfg.params.m <= 0.0) throw ConfigError("config key 'm' must be positive");
    if (cfg.params.c <= 0.0) throw ConfigError("config key 'c' must be positive");
    if (cfg.params.hbar <= 0.0) throw ConfigError("config key 'hbar' must be positive");

    if (case_uses_omega(cfg.case_id)) {
        if (!j.contains("omega"))
            throw ConfigError("case " + std::to_string(cfg.case_id) +
                              " requires config key 'omega'");
        if (j.contains("k"))
            throw ConfigError("config key 'k' does not apply to case " +
                              std::to_string(cfg.case_id));
        cfg.params.omega = require_number(j, "omega");
        if (cfg.params.omega <= 0.0) throw ConfigError("config key 'omega' must be positive");
    } else {
        if (!j.contains("k"))
            throw ConfigError("case " + std::to_string(cfg.case_id) + " requires config key 'k'");
        if (j.contains("omega"))
            throw ConfigError("config key 'omega' does not apply to case " +
                              std::to_string(cfg.case_id));
        cfg.params.k = require_number(j, "k");
    }

    if (cfg.case_id == 2) {
        if (j.contains("mu1") || j.contains("mu2"))
            throw ConfigError("case 2 takes config key 'mu', not 'mu1'/'mu2'");
        cfg.params.mu = j.contains("mu") ? require_number(j, "mu") : 0.0;
    } else {
        if (j.contains("mu"))
            throw ConfigError("config key 'mu' applies only to case 2; use 'mu1'/'mu2'");
        cfg.params.mu1 = j.contains("mu1") ? require_number(j, "mu1") : 0.0;
        cfg.params.mu2 = j.contains("mu2") ? require_number(j, "mu2") : 0.0;
    }
    check_coupling_domain(cfg);

    if (j.contains("p_max")) {
        cfg.p_max = require_int(j, "p_max");
        if (cfg.p_max < 0) throw ConfigError("config key 'p_max' must be nonnegative");
    }
    if (j.contains("tol")) {
        cfg.tol = require_number(j, "tol");
        cfg.has_tol = true;
        if (!(cfg.tol > 0.0)) throw ConfigError("config key 'tol' must be positive");
    }
    if (j.contains("signs")) {
        const auto& s = j.at("signs");
        if (s.is_string() && s.get<std::string>() == "all") {
            cfg.signs.all = true;
        } else if (s.is_array()) {
            const std::size_t want = case_has_two_signs(cfg.case_id) ? 2 : 1;
            if (s.size() != want)
                throw ConfigError("config key 'signs' for case " + std::to_string(cfg.case_id) +
                                  " takes " + std::to_string(want) + " entries or \"all\"");
            cfg.signs.all = false;
            cfg.signs.pair.e1 = parse_sign_entry(s[0], "1");
            cfg.signs.pair.e2 = want == 2 ? parse_sign_entry(s[1], "2") : 0;
        } else {
            throw ConfigError("config key 'signs' must be \"all\" or an array of +1/-1");
        }
    }
    if (j.contains("form")) {
        if (!j.at("form").is_string()) throw ConfigError("config key 'form' must be a string");
        const std::string f = j.at("form").get<std::string>();
        if (f == "direct")
            cfg.form = ResidualForm::direct;
        else if (f == "composed")
            cfg.form = ResidualForm::composed;
        else
            throw ConfigError("config key 'form' must be \"direct\" or \"composed\"");
    }
    if (j.contains("variant")) {
        if (!j.at("variant").is_string())
            throw ConfigError("config key 'variant' must be a string");
        const std::string v = j.at("variant").get<std::string>();
        if (v == "standard")
            cfg.variant = Case4Quantization::standard;
        else if (v == "mass_weighted")
            cfg.variant = Case4Quantization::mass_weighted;
        else
            throw ConfigError("config key 'variant' must be \"standard\" or \"mass_weighted\"");
    }
    if (j.contains("grid_points")) {
        cfg.grid_points = require_int(j, "grid_points");
        cfg.has_grid_points = true;
        if (cfg.grid_points < 16)
            throw ConfigError("config key 'grid_points' must be at least 16");
    }
    if (j.contains("grid_extent")) {
        cfg.grid_extent = require_number(j, "grid_extent");
        if (cfg.grid_extent < 0.0)
            throw ConfigError("config key 'grid_extent' must be nonnegative");
    }
    if (j.contains("window")) {
        const auto& w = j.at("window");
        if (!w.is_object() || !w.contains("lo") || !w.contains("hi"))
            throw ConfigError("config key 'window' must be an object with 'lo' and 'hi'");
        for (const auto& item : w.items())
            if (item.key() != "lo" && item.key() != "hi")
                throw ConfigError("unknown config key 'window." + item.key() + "'");
        cfg.has_window = true;
        cfg.window.lo = require_number(w, "lo");
        cfg.window.hi = require_number(w, "hi");
        if (!(cfg.window.lo < cfg.window.hi))
            throw ConfigError("config key 'window' needs lo < hi");
    }
    if (j.contains("format")) {
        if (!j.at("format").is_string()) throw ConfigError("config key 'format' must be a string");
        const std::string f = j.at("format").get<std::string>();
        if (f == "csv")
            cfg.format = OutputFormat::csv;
        else if (f == "json")
            cfg.format = OutputFormat::json;
        else
            throw ConfigError("config key 'format' must be \"csv\" or \"json\"");
    }

    validate_job(cfg);
    return cfg;
}

void validate_job(const JobConfig& cfg) {
    if (cfg.mode != RunMode::verify) return;
    if (cfg.case_id == 4)
        throw ConfigError("verify mode supports cases 1-3 only: no independent grid oracle is "
                          "defined for case 4");
    if (cfg.case_id == 3) {
        if (cfg.params.mu1 != 0.0 || cfg.params.mu2 != 0.0)
            throw ConfigError("verify mode for case 3 requires mu1 = mu2 = 0 (the grid oracle "
                              "covers the pure radial channel)");
        if (cfg.params.k == 0.0)
            throw ConfigError("verify mode for case 3 requires nonzero k (no bound states "
                              "otherwise)");
    }
}

std::string emit_config(const JobConfig& cfg) {
    ordered_json j;
    j["case"] = cfg.case_id;
    j["mode"] = mode_name(cfg.mode);
    j["m"] = cfg.params.m;
    j["c"] = cfg.params.c;
    j["hbar"] = cfg.params.hbar;
    if (case_uses_omega(cfg.case_id))
        j["omega"] = cfg.params.omega;
    else
        j["k"] = cfg.params.k;
    if (cfg.case_id == 2) {
        j["mu"] = cfg.params.mu;
    } else {
        j["mu1"] = cfg.params.mu1;
        j["mu2"] = cfg.params.mu2;
    }
    j["p_max"] = cfg.p_max;
    if (cfg.signs.all) {
        j["signs"] = "all";
    } else {
        j["signs"] = ordered_json::array({cfg.signs.pair.e1});
        if (case_has_two_signs(cfg.case_id)) j["signs"].push_back(cfg.signs.pair.e2);
    }
    if (cfg.has_tol) j["tol"] = cfg.tol;
    j["form"] = cfg.form == ResidualForm::direct ? "direct" : "composed";
    j["variant"] =
        cfg.variant == Case4Quantization::standard ? "standard" : "mass_weighted";
    if (cfg.has_grid_points) j["grid_points"] = cfg.grid_points;
    j["grid_extent"] = cfg.grid_extent;
    if (cfg.has_window) j["window"] = {{"lo", cfg.window.lo}, {"hi", cfg.window.hi}};
    j["format"] = cfg.format == OutputFormat::csv ? "csv" : "json";
    return j.dump(2) + "\n";
}

} // namespace sw
