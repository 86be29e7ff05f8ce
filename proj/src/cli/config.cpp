#include "bec/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bec::cli {

using nlohmann::json;

std::string to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::spectrum: return "spectrum";
        case ExperimentKind::evolve: return "evolve";
        case ExperimentKind::revival: return "revival";
        case ExperimentKind::adiabatic: return "adiabatic";
        case ExperimentKind::validity: return "validity";
    }
    throw std::logic_error("to_string: unknown experiment");
}

ExperimentKind experiment_from_string(const std::string& name) {
    if (name == "spectrum") return ExperimentKind::spectrum;
    if (name == "evolve") return ExperimentKind::evolve;
    if (name == "revival") return ExperimentKind::revival;
    if (name == "adiabatic") return ExperimentKind::adiabatic;
    if (name == "validity") return ExperimentKind::validity;
    throw std::invalid_argument("unknown experiment '" + name + "'");
}

namespace {

std::string join(const std::vector<std::string>& violations) {
    std::ostringstream out;
    out << "invalid configuration";
    for (const std::string& v : violations) out << "\n  - " << v;
    return out.str();
}

class Collector {
public:
    void add(std::string message) { violations_.push_back(std::move(message)); }
    bool clean() const { return violations_.empty(); }
    [[noreturn]] void raise() const { throw ConfigError(violations_); }
    void raise_if_dirty() const {
        if (!clean()) raise();
    }

private:
    std::vector<std::string> violations_;
};

bool finite_number(const json& v) { return v.is_number() && std::isfinite(v.get<double>()); }

// Reports unknown keys inside `obj` against the allowed set.
void check_keys(const json& obj, const std::string& section, const std::set<std::string>& allowed,
                Collector& bad) {
    for (const auto& item : obj.items()) {
        if (!allowed.contains(item.key())) {
            bad.add("unknown key '" + section + item.key() + "'");
        }
    }
}

bool read_double(const json& obj, const std::string& section, const std::string& key, double& out,
                 Collector& bad) {
    if (!obj.contains(key)) return false;
    if (!finite_number(obj.at(key))) {
        bad.add("'" + section + key + "' must be a finite number");
        return false;
    }
    out = obj.at(key).get<double>();
    return true;
}

bool read_int(const json& obj, const std::string& section, const std::string& key, int& out,
              Collector& bad) {
    if (!obj.contains(key)) return false;
    if (!obj.at(key).is_number_integer()) {
        bad.add("'" + section + key + "' must be an integer");
        return false;
    }
    out = obj.at(key).get<int>();
    return true;
}

// A coupling is a real number or a [re, im] pair.
bool read_complex(const json& obj, const std::string& section, const std::string& key, Complex& out,
                  Collector& bad) {
    if (!obj.contains(key)) return false;
    const json& v = obj.at(key);
    if (finite_number(v)) {
        out = Complex(v.get<double>(), 0.0);
        return true;
    }
    if (v.is_array() && v.size() == 2 && finite_number(v[0]) && finite_number(v[1])) {
        out = Complex(v[0].get<double>(), v[1].get<double>());
        return true;
    }
    bad.add("'" + section + key + "' must be a number or a [re, im] pair");
    return false;
}

std::vector<double> read_grid(const json& doc, const std::string& key, Collector& bad) {
    std::vector<double> grid;
    const json& v = doc.at(key);
    if (!v.is_array() || v.empty()) {
        bad.add("'" + key + "' must be a non-empty array of numbers");
        return grid;
    }
    for (const json& item : v) {
        if (!finite_number(item)) {
            bad.add("'" + key + "' must contain only finite numbers");
            return {};
        }
        grid.push_back(item.get<double>());
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        if (grid[i] <= grid[i - 1]) {
            bad.add("'" + key + "' must be strictly increasing");
            return {};
        }
    }
    return grid;
}

void parse_squeezing(const json& obj, RunConfig& cfg, Collector& bad) {
    check_keys(obj, "squeezing.", {"r", "theta"}, bad);
    double r = cfg.squeezing.amplitude;
    double theta = cfg.squeezing.phase;
    read_double(obj, "squeezing.", "r", r, bad);
    read_double(obj, "squeezing.", "theta", theta, bad);
    if (r < 0.0) {
        bad.add("'squeezing.r' must be nonnegative");
        return;
    }
    if (bad.clean()) cfg.squeezing = SqueezingParam(r, theta);
}

void parse_tolerances(const json& obj, ToleranceSet& t, Collector& bad) {
    check_keys(obj, "tolerances.",
               {"spectrum", "revival_fidelity", "norm_drift", "sector_drift", "truncation_tail",
                "adiabatic_fidelity", "adiabatic_mid_population"},
               bad);
    read_double(obj, "tolerances.", "spectrum", t.spectrum, bad);
    read_double(obj, "tolerances.", "revival_fidelity", t.revival_fidelity, bad);
    read_double(obj, "tolerances.", "norm_drift", t.norm_drift, bad);
    read_double(obj, "tolerances.", "sector_drift", t.sector_drift, bad);
    read_double(obj, "tolerances.", "truncation_tail", t.truncation_tail, bad);
    read_double(obj, "tolerances.", "adiabatic_fidelity", t.adiabatic_fidelity, bad);
    read_double(obj, "tolerances.", "adiabatic_mid_population", t.adiabatic_mid_population, bad);
    for (double v : {t.spectrum, t.revival_fidelity, t.norm_drift, t.sector_drift,
                     t.truncation_tail, t.adiabatic_mid_population}) {
        if (v <= 0.0) {
            bad.add("tolerances must be positive");
            break;
        }
    }
    if (t.adiabatic_fidelity <= 0.0 || t.adiabatic_fidelity > 1.0) {
        bad.add("'tolerances.adiabatic_fidelity' must lie in (0, 1]");
    }
}

void parse_effective(const json& obj, RunConfig& cfg, Collector& bad) {
    check_keys(obj, "effective.", {"g", "q", "chi"}, bad);
    EffectiveParams p;
    read_double(obj, "effective.", "g", p.g, bad);
    read_double(obj, "effective.", "q", p.q, bad);
    read_double(obj, "effective.", "chi", p.chi, bad);
    cfg.effective = p;
}

void parse_revival(const json& obj, RunConfig& cfg, Collector& bad) {
    check_keys(obj, "revival.", {"branches", "step", "convention", "q"}, bad);
    RevivalConfig& r = cfg.revival;
    read_int(obj, "revival.", "branches", r.branches, bad);
    read_int(obj, "revival.", "step", r.step, bad);
    read_double(obj, "revival.", "q", r.q, bad);
    if (obj.contains("convention")) {
        if (!obj.at("convention").is_string()) {
            bad.add("'revival.convention' must be \"derived\" or \"literal\"");
        } else {
            const std::string name = obj.at("convention").get<std::string>();
            if (name == "derived") {
                r.convention = ResonanceConvention::derived;
            } else if (name == "literal") {
                r.convention = ResonanceConvention::literal;
            } else {
                bad.add("'revival.convention' must be \"derived\" or \"literal\"");
            }
        }
    }
    if (r.branches < 1 || r.step < 1 || r.step > r.branches ||
        std::gcd(r.branches, r.step) != 1) {
        bad.add("'revival.branches' and 'revival.step' must be coprime with 1 <= step <= branches");
    }
    if (r.q <= 0.0) bad.add("'revival.q' must be positive");
}

void parse_raman(const json& obj, RunConfig& cfg, Collector& bad) {
    if (obj.contains("delta1") || obj.contains("delta2")) {
        bad.add("'raman.delta1'/'raman.delta2' are set by 'ratio_grid' and cannot be configured");
    }
    check_keys(obj, "raman.",
               {"g1", "g2", "lambda1", "lambda2", "lambda3", "lambda12", "lambda13", "lambda23",
                "delta1", "delta2"},
               bad);
    RamanParams p;
    read_complex(obj, "raman.", "g1", p.g1, bad);
    read_complex(obj, "raman.", "g2", p.g2, bad);
    read_double(obj, "raman.", "lambda1", p.lambda1, bad);
    read_double(obj, "raman.", "lambda2", p.lambda2, bad);
    read_double(obj, "raman.", "lambda3", p.lambda3, bad);
    read_double(obj, "raman.", "lambda12", p.lambda12, bad);
    read_double(obj, "raman.", "lambda13", p.lambda13, bad);
    read_double(obj, "raman.", "lambda23", p.lambda23, bad);
    if (std::abs(p.g1) == 0.0) bad.add("'raman.g1' must be nonzero");
    cfg.raman = p;
}

void parse_validity(const json& obj, ValidityParams& v, Collector& bad) {
    check_keys(obj, "validity.", {"scattering_length_m", "trap_size_m", "atom_number"}, bad);
    read_double(obj, "validity.", "scattering_length_m", v.scattering_length_m, bad);
    read_double(obj, "validity.", "trap_size_m", v.trap_size_m, bad);
    read_int(obj, "validity.", "atom_number", v.atom_number, bad);
    if (v.scattering_length_m <= 0.0) bad.add("'validity.scattering_length_m' must be positive");
    if (v.trap_size_m <= 0.0) bad.add("'validity.trap_size_m' must be positive");
    if (v.atom_number < 1) bad.add("'validity.atom_number' must be at least 1");
}

const std::map<ExperimentKind, std::set<std::string>>& relevant_keys() {
    static const std::map<ExperimentKind, std::set<std::string>> keys = {
        {ExperimentKind::spectrum, {"experiment", "effective", "max_total", "tolerances"}},
        {ExperimentKind::evolve,
         {"experiment", "cutoff", "squeezing", "effective", "time_grid", "tolerances"}},
        {ExperimentKind::revival,
         {"experiment", "cutoff", "squeezing", "revival", "tau_grid", "tolerances"}},
        {ExperimentKind::adiabatic,
         {"experiment", "cutoff", "squeezing", "raman", "ratio_grid", "gt", "max_sector",
          "tolerances"}},
        {ExperimentKind::validity, {"experiment", "validity"}},
    };
    return keys;
}

std::set<std::string> all_known_keys() {
    std::set<std::string> keys;
    for (const auto& [kind, set] : relevant_keys()) keys.insert(set.begin(), set.end());
    return keys;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

RunConfig parse_config(const json& doc) {
    Collector bad;
    if (!doc.is_object()) {
        bad.add("config must be a JSON object");
        bad.raise();
    }
    if (!doc.contains("experiment") || !doc.at("experiment").is_string()) {
        bad.add("'experiment' is required and must be a string");
        bad.raise();
    }
    RunConfig cfg;
    try {
        cfg.experiment = experiment_from_string(doc.at("experiment").get<std::string>());
    } catch (const std::invalid_argument& e) {
        bad.add(e.what());
        bad.raise();
    }

    const std::set<std::string>& relevant = relevant_keys().at(cfg.experiment);
    const std::set<std::string> known = all_known_keys();
    for (const auto& item : doc.items()) {
        if (relevant.contains(item.key())) continue;
        if (known.contains(item.key())) {
            bad.add("key '" + item.key() + "' does not apply to experiment '" +
                    to_string(cfg.experiment) + "'");
        } else {
            bad.add("unknown key '" + item.key() + "'");
        }
    }

    if (doc.contains("cutoff") && relevant.contains("cutoff")) {
        if (read_int(doc, "", "cutoff", cfg.cutoff, bad)) {
            if (cfg.cutoff < 4 || cfg.cutoff > 69) {
                bad.add("'cutoff' must lie in [4, 69]; larger values need more than ~25M dense"
                        " matrix entries");
            }
        }
    }
    if (doc.contains("squeezing") && relevant.contains("squeezing")) {
        if (doc.at("squeezing").is_object()) {
            parse_squeezing(doc.at("squeezing"), cfg, bad);
        } else {
            bad.add("'squeezing' must be an object");
        }
    }
    if (doc.contains("tolerances") && relevant.contains("tolerances")) {
        if (doc.at("tolerances").is_object()) {
            parse_tolerances(doc.at("tolerances"), cfg.tolerances, bad);
        } else {
            bad.add("'tolerances' must be an object");
        }
    }

    switch (cfg.experiment) {
        case ExperimentKind::spectrum: {
            if (doc.contains("effective") && doc.at("effective").is_object()) {
                parse_effective(doc.at("effective"), cfg, bad);
            } else {
                bad.add("spectrum requires an 'effective' object with g, q, chi");
            }
            if (read_int(doc, "", "max_total", cfg.max_total, bad)) {
                if (cfg.max_total < 0 || cfg.max_total > 60) {
                    bad.add("'max_total' must lie in [0, 60]");
                }
            }
            break;
        }
        case ExperimentKind::evolve: {
            if (doc.contains("effective") && doc.at("effective").is_object()) {
                parse_effective(doc.at("effective"), cfg, bad);
            } else {
                bad.add("evolve requires an 'effective' object with g, q, chi");
            }
            if (doc.contains("time_grid")) {
                cfg.time_grid = read_grid(doc, "time_grid", bad);
            } else {
                bad.add("evolve requires 'time_grid'");
            }
            if (!cfg.time_grid.empty() && cfg.time_grid.front() < 0.0) {
                bad.add("'time_grid' must start at t >= 0");
            }
            break;
        }
        case ExperimentKind::revival: {
            if (doc.contains("revival")) {
                if (doc.at("revival").is_object()) {
                    parse_revival(doc.at("revival"), cfg, bad);
                } else {
                    bad.add("'revival' must be an object");
                }
            }
            if (doc.contains("tau_grid")) {
                cfg.tau_grid = read_grid(doc, "tau_grid", bad);
            } else {
                bad.add("revival requires 'tau_grid'");
            }
            if (!cfg.tau_grid.empty() && cfg.tau_grid.front() < 0.0) {
                bad.add("'tau_grid' must start at tau >= 0");
            }
            break;
        }
        case ExperimentKind::adiabatic: {
            if (doc.contains("raman") && doc.at("raman").is_object()) {
                parse_raman(doc.at("raman"), cfg, bad);
            } else {
                bad.add("adiabatic requires a 'raman' object");
            }
            if (doc.contains("ratio_grid")) {
                cfg.ratio_grid = read_grid(doc, "ratio_grid", bad);
                for (double ratio : cfg.ratio_grid) {
                    if (ratio <= 0.0) {
                        bad.add("'ratio_grid' entries must be positive");
                        break;
                    }
                }
            } else {
                bad.add("adiabatic requires 'ratio_grid'");
            }
            if (read_double(doc, "", "gt", cfg.gt, bad)) {
                if (cfg.gt <= 0.0) bad.add("'gt' must be positive");
            }
            if (read_int(doc, "", "max_sector", cfg.max_sector, bad)) {
                if (cfg.max_sector < 1 || cfg.max_sector > 64) {
                    bad.add("'max_sector' must lie in [1, 64]");
                }
            }
            break;
        }
        case ExperimentKind::validity: {
            if (doc.contains("validity")) {
                if (doc.at("validity").is_object()) {
                    parse_validity(doc.at("validity"), cfg.validity, bad);
                } else {
                    bad.add("'validity' must be an object");
                }
            }
            break;
        }
    }

    bad.raise_if_dirty();
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) throw ConfigError({"cannot read config file '" + path + "'"});
    json doc;
    try {
        doc = json::parse(stream);
    } catch (const json::parse_error& e) {
        throw ConfigError({std::string("config is not valid JSON: ") + e.what()});
    }
    return parse_config(doc);
}

}  // namespace bec::cli
