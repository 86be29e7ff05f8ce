#include "bec/cli/runners.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "bec/dynamics.hpp"
#include "bec/entanglement.hpp"

namespace bec::cli {

using nlohmann::json;

namespace {

std::string fmt(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string csv_line(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) line += ',';
        line += cells[i];
    }
    line += '\n';
    return line;
}

void assert_that(RunReport& report, json& assertions, const std::string& name, bool passed,
                 const std::string& detail) {
    assertions.push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
    if (!passed) {
        report.failures.push_back(name + ": " + detail);
        report.exit_code = 1;
    }
}

json tolerances_json(const ToleranceSet& t) {
    return {{"spectrum", t.spectrum},
            {"revival_fidelity", t.revival_fidelity},
            {"norm_drift", t.norm_drift},
            {"sector_drift", t.sector_drift},
            {"truncation_tail", t.truncation_tail},
            {"adiabatic_fidelity", t.adiabatic_fidelity},
            {"adiabatic_mid_population", t.adiabatic_mid_population}};
}

json squeezing_json(const SqueezingParam& s) {
    return {{"r", s.amplitude}, {"theta", s.phase}};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

json resolved_config(const RunConfig& cfg) {
    json out{{"experiment", to_string(cfg.experiment)}};
    switch (cfg.experiment) {
        case ExperimentKind::spectrum:
            out["effective"] = {{"g", cfg.effective->g}, {"q", cfg.effective->q}, {"chi", cfg.effective->chi}};
            out["max_total"] = cfg.max_total;
            out["tolerances"] = tolerances_json(cfg.tolerances);
            break;
        case ExperimentKind::evolve:
            out["cutoff"] = cfg.cutoff;
            out["squeezing"] = squeezing_json(cfg.squeezing);
            out["effective"] = {{"g", cfg.effective->g}, {"q", cfg.effective->q}, {"chi", cfg.effective->chi}};
            out["time_grid"] = cfg.time_grid;
            out["tolerances"] = tolerances_json(cfg.tolerances);
            break;
        case ExperimentKind::revival:
            out["cutoff"] = cfg.cutoff;
            out["squeezing"] = squeezing_json(cfg.squeezing);
            out["revival"] = {{"branches", cfg.revival.branches},
                              {"step", cfg.revival.step},
                              {"convention", cfg.revival.convention == ResonanceConvention::derived
                                                 ? "derived"
                                                 : "literal"},
                              {"q", cfg.revival.q}};
            out["tau_grid"] = cfg.tau_grid;
            out["tolerances"] = tolerances_json(cfg.tolerances);
            break;
        case ExperimentKind::adiabatic:
            out["cutoff"] = cfg.cutoff;
            out["squeezing"] = squeezing_json(cfg.squeezing);
            out["raman"] = {{"g1", complex_json(cfg.raman->g1)},
                            {"g2", complex_json(cfg.raman->g2)},
                            {"lambda1", cfg.raman->lambda1},
                            {"lambda2", cfg.raman->lambda2},
                            {"lambda3", cfg.raman->lambda3},
                            {"lambda12", cfg.raman->lambda12},
                            {"lambda13", cfg.raman->lambda13},
                            {"lambda23", cfg.raman->lambda23}};
            out["ratio_grid"] = cfg.ratio_grid;
            out["gt"] = cfg.gt;
            out["max_sector"] = cfg.max_sector;
            out["tolerances"] = tolerances_json(cfg.tolerances);
            break;
        case ExperimentKind::validity:
            out["validity"] = {{"scattering_length_m", cfg.validity.scattering_length_m},
                               {"trap_size_m", cfg.validity.trap_size_m},
                               {"atom_number", cfg.validity.atom_number}};
            break;
    }
    return out;
}

RunReport make_report(const RunConfig& cfg) {
    RunReport report;
    report.manifest = {{"schema_version", 1},
                       {"tool", {{"name", "becsim"}, {"version", "1.0.0"}}},
                       {"experiment", to_string(cfg.experiment)},
                       {"config", resolved_config(cfg)}};
    return report;
}

void finish_report(RunReport& report, json assertions, const std::vector<std::string>& columns,
                   std::size_t rows, json extra = json::object()) {
    report.manifest["assertions"] = std::move(assertions);
    json outputs{{"csv_columns", columns}, {"csv_rows", rows}};
    for (auto& item : extra.items()) outputs[item.key()] = item.value();
    report.manifest["outputs"] = std::move(outputs);
}

double mean_occupation(const QuantumState& state, int mode) {
    double mean = 0.0;
    const double norm2 = state.norm_squared();
    for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i) {
        const double w = std::norm(state.amplitudes()(i));
        if (w > 0.0) mean += w * state.basis().occupation(i, mode);
    }
    return mean / norm2;
}

}  // namespace

RunReport run_spectrum(const RunConfig& cfg) {
    if (!cfg.effective) throw ConfigError({"spectrum requires effective parameters"});
    RunReport report = make_report(cfg);
    json assertions = json::array();

    const EffectiveParams p = *cfg.effective;
    const FockBasis basis = FockBasis::two_mode(cfg.max_total);
    const LinearOperator h = build_rwa(p, basis);

    const std::vector<std::string> columns = {"n", "m", "energy_formula", "energy_operator",
                                              "abs_difference"};
    std::string csv = csv_line(columns);
    std::size_t rows = 0;
    double max_diff = 0.0;
    for (int n = 0; n <= cfg.max_total; ++n) {
        for (int m = 0; m + n <= cfg.max_total; ++m) {
            const double formula = eigenvalue(n, m, p);
            const double operator_value = h.matrix()(basis.encode({n, m}), basis.encode({n, m})).real();
            const double diff = std::abs(formula - operator_value);
            max_diff = std::max(max_diff, diff);
            csv += csv_line({std::to_string(n), std::to_string(m), fmt(formula),
                             fmt(operator_value), fmt(diff)});
            ++rows;
        }
    }
    assert_that(report, assertions, "spectrum_match", max_diff <= cfg.tolerances.spectrum,
                "max |formula - operator| = " + fmt(max_diff));
    report.csv = std::move(csv);
    finish_report(report, std::move(assertions), columns, rows, {{"max_abs_difference", max_diff}});
    return report;
}

RunReport run_evolve(const RunConfig& cfg) {
    if (!cfg.effective) throw ConfigError({"evolve requires effective parameters"});
    RunReport report = make_report(cfg);
    json assertions = json::array();

    const FockBasis basis = FockBasis::two_mode(cfg.cutoff);
    const FockBasis single = FockBasis::single_mode(cfg.cutoff);
    const QuantumState seed = squeezed_vacuum(cfg.squeezing, single, cfg.tolerances.truncation_tail);
    const QuantumState psi0 = product_state(seed, seed);
    const Propagator propagator(build_effective(*cfg.effective, basis));
    const LinearOperator w = basis_change(basis);

    const std::vector<double> reference = [&] {
        std::vector<double> weights;
        for (const SectorComponent& s : sector_split(psi0).sectors) weights.push_back(s.weight);
        return weights;
    }();

    std::vector<std::string> columns = {"t",          "n1_mean",      "n3_mean",
                                        "norm_drift", "entropy_bare", "entropy_rotated"};
    for (int n = 0; n <= 8; ++n) columns.push_back("sector_w" + std::to_string(n));
    columns.push_back("sector_rest");

    std::string csv = csv_line(columns);
    double max_norm_drift = 0.0;
    double max_sector_drift = 0.0;
    double max_tail = 0.0;
    for (double t : cfg.time_grid) {
        const QuantumState state = propagator.evolve(psi0, t);
        const double norm_drift = std::abs(state.norm() - 1.0);
        max_norm_drift = std::max(max_norm_drift, norm_drift);
        max_tail = std::max(max_tail, state.tail_weight());

        const SectorDecomposition split = sector_split(state);
        double shown = 0.0;
        std::vector<std::string> cells = {
            fmt(t),
            fmt(mean_occupation(state, 1)),
            fmt(mean_occupation(state, 2)),
            fmt(norm_drift),
            fmt(entropy(reduced_density(state.normalized(), 1))),
            fmt(entropy(reduced_density(apply(w, state).normalized(), 1)))};
        for (std::size_t n = 0; n < split.sectors.size(); ++n) {
            max_sector_drift =
                std::max(max_sector_drift, std::abs(split.sectors[n].weight - reference[n]));
            if (n <= 8) {
                cells.push_back(fmt(split.sectors[n].weight));
                shown += split.sectors[n].weight;
            }
        }
        cells.push_back(fmt(state.norm_squared() - shown));
        csv += csv_line(cells);
    }
    assert_that(report, assertions, "norm_conserved", max_norm_drift <= cfg.tolerances.norm_drift,
                "max norm drift = " + fmt(max_norm_drift));
    assert_that(report, assertions, "sectors_conserved",
                max_sector_drift <= cfg.tolerances.sector_drift,
                "max sector weight drift = " + fmt(max_sector_drift));
    assert_that(report, assertions, "truncation_tail", max_tail <= cfg.tolerances.truncation_tail,
                "max tail weight = " + fmt(max_tail));
    report.csv = std::move(csv);
    finish_report(report, std::move(assertions), columns, cfg.time_grid.size(),
                  {{"max_norm_drift", max_norm_drift},
                   {"max_sector_drift", max_sector_drift},
                   {"max_tail_weight", max_tail}});
    return report;
}

RunReport run_revival(const RunConfig& cfg) {
    RunReport report = make_report(cfg);
    json assertions = json::array();

    const double q = cfg.revival.q;
    const EffectiveParams derived = resonant_params(q, ResonanceConvention::derived);
    const EffectiveParams literal = resonant_params(q, ResonanceConvention::literal);
    const EffectiveParams configured = resonant_params(q, cfg.revival.convention);

    const FockBasis basis = FockBasis::two_mode(cfg.cutoff);
    const RevivalSpec spec(cfg.revival.branches, cfg.revival.step, cfg.squeezing);
    // Rotated-frame initial state: the pair-squeezed image of the bare
    // squeezed product.
    const QuantumState psi0 = two_mode_squeezed_vacuum(
        cfg.squeezing.rotated(std::numbers::pi / 2.0), basis, cfg.tolerances.truncation_tail);
    const QuantumState target =
        target_superposition(spec, basis, Representation::rotated, cfg.tolerances.truncation_tail);

    const Eigen::VectorXcd coeffs = gauss_coefficients(spec.branches, spec.step);
    json coeff_table = json::array();
    for (Eigen::Index r = 0; r < coeffs.size(); ++r) coeff_table.push_back(complex_json(coeffs(r)));

    const std::vector<std::string> columns = {"tau", "fidelity_derived", "fidelity_literal",
                                              "fidelity_initial", "entropy", "tail_weight"};
    std::string csv = csv_line(columns);
    for (double tau : cfg.tau_grid) {
        const double t = tau / (7.0 * q);
        const QuantumState evolved = evolve_rwa(derived, psi0, t);
        const QuantumState evolved_literal = evolve_rwa(literal, psi0, t);
        csv += csv_line({fmt(tau), fmt(fidelity(target, evolved)),
                         fmt(fidelity(target, evolved_literal)), fmt(fidelity(psi0, evolved)),
                         fmt(entropy(reduced_density(evolved.normalized(), 1))),
                         fmt(evolved.tail_weight())});
    }

    assert_that(report, assertions, "gauss_normalized",
                std::abs(coeffs.norm() - 1.0) <= 1e-12,
                "| ||c|| - 1 | = " + fmt(std::abs(coeffs.norm() - 1.0)));
    assert_that(report, assertions, "target_tail",
                target.tail_weight() <= cfg.tolerances.truncation_tail,
                "target tail weight = " + fmt(target.tail_weight()));
    const double tau_star = spec.tau();
    const QuantumState at_star = evolve_rwa(configured, psi0, tau_star / (7.0 * q));
    const double star_fidelity = fidelity(target, at_star);
    assert_that(report, assertions, "target_fidelity_at_tau_star",
                star_fidelity >= 1.0 - cfg.tolerances.revival_fidelity,
                "fidelity " + fmt(star_fidelity) + " at tau* = " + fmt(tau_star) + " (" +
                    (cfg.revival.convention == ResonanceConvention::derived ? "derived" : "literal") +
                    " convention)");
    report.csv = std::move(csv);
    finish_report(report, std::move(assertions), columns, cfg.tau_grid.size(),
                  {{"gauss_coefficients", coeff_table}, {"tau_star", tau_star},
                   {"fidelity_at_tau_star", star_fidelity}});
    return report;
}

RunReport run_adiabatic(const RunConfig& cfg) {
    if (!cfg.raman) throw ConfigError({"adiabatic requires raman parameters"});
    RunReport report = make_report(cfg);
    json assertions = json::array();

    const FockBasis basis = FockBasis::two_mode(cfg.cutoff);
    QuantumState psi0 =
        two_mode_squeezed_vacuum(cfg.squeezing, basis, cfg.tolerances.truncation_tail);
    double dropped = 0.0;
    for (Eigen::Index i = 0; i < psi0.amplitudes().size(); ++i) {
        if (basis.total_occupation(i) > cfg.max_sector) {
            dropped += std::norm(psi0.amplitudes()(i));
            psi0.amplitudes()(i) = Complex(0.0, 0.0);
        }
    }
    if (psi0.norm() == 0.0) {
        throw std::runtime_error("adiabatic: no weight left below max_sector");
    }
    psi0 = psi0.normalized();

    const double g1_mag = std::abs(cfg.raman->g1);
    const std::vector<std::string> columns = {"ratio", "fidelity", "max_mid_population"};
    std::string csv = csv_line(columns);
    std::vector<AdiabaticResult> results;
    for (double ratio : cfg.ratio_grid) {
        RamanParams p = *cfg.raman;
        p.delta1 = ratio * g1_mag;
        p.delta2 = p.delta1;
        const double t = cfg.gt * ratio / g1_mag;
        const AdiabaticResult r = adiabatic_fidelity(p, psi0, t, 21, cfg.max_sector);
        results.push_back(r);
        csv += csv_line({fmt(ratio), fmt(r.fidelity), fmt(r.max_mid_population)});
    }

    const AdiabaticResult& last = results.back();
    assert_that(report, assertions, "final_fidelity",
                last.fidelity >= cfg.tolerances.adiabatic_fidelity,
                "fidelity " + fmt(last.fidelity) + " at ratio " + fmt(cfg.ratio_grid.back()));
    assert_that(report, assertions, "final_mid_population",
                last.max_mid_population <= cfg.tolerances.adiabatic_mid_population,
                "max middle-level population " + fmt(last.max_mid_population));
    if (results.size() > 1) {
        assert_that(report, assertions, "fidelity_improves",
                    last.fidelity >= results.front().fidelity,
                    fmt(results.front().fidelity) + " -> " + fmt(last.fidelity));
        assert_that(report, assertions, "mid_population_decreases",
                    last.max_mid_population <= results.front().max_mid_population,
                    fmt(results.front().max_mid_population) + " -> " + fmt(last.max_mid_population));
    }
    report.csv = std::move(csv);
    finish_report(report, std::move(assertions), columns, cfg.ratio_grid.size(),
                  {{"truncated_weight", dropped}});
    return report;
}

RunReport run_validity(const RunConfig& cfg) {
    RunReport report = make_report(cfg);
    json assertions = json::array();

    const ValidityParams& v = cfg.validity;
    const double max_atoms = std::floor(v.trap_size_m / v.scattering_length_m);
    const bool ok = static_cast<double>(v.atom_number) <= max_atoms;

    const std::vector<std::string> columns = {"scattering_length_m", "trap_size_m", "atom_number",
                                              "max_atoms", "dilute"};
    std::string csv = csv_line(columns);
    csv += csv_line({fmt(v.scattering_length_m), fmt(v.trap_size_m),
                     std::to_string(v.atom_number), fmt(max_atoms), ok ? "1" : "0"});

    assert_that(report, assertions, "dilute_regime", ok,
                std::to_string(v.atom_number) + " atoms vs limit " + fmt(max_atoms));
    report.csv = std::move(csv);
    finish_report(report, std::move(assertions), columns, 1, {{"max_atoms", max_atoms}});
    return report;
}

RunReport run_experiment(const RunConfig& cfg) {
    switch (cfg.experiment) {
        case ExperimentKind::spectrum: return run_spectrum(cfg);
        case ExperimentKind::evolve: return run_evolve(cfg);
        case ExperimentKind::revival: return run_revival(cfg);
        case ExperimentKind::adiabatic: return run_adiabatic(cfg);
        case ExperimentKind::validity: return run_validity(cfg);
    }
    throw std::logic_error("run_experiment: unknown experiment");
}

void write_report(const RunReport& report, const std::string& out_dir, const std::string& stem) {
    const std::filesystem::path dir(out_dir);
    std::filesystem::create_directories(dir);
    {
        std::ofstream csv(dir / (stem + ".csv"), std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + (dir / (stem + ".csv")).string());
        csv << report.csv;
    }
    {
        std::ofstream manifest(dir / (stem + ".json"), std::ios::binary);
        if (!manifest) throw std::runtime_error("cannot write " + (dir / (stem + ".json")).string());
        manifest << report.manifest.dump(2) << '\n';
    }
}

}  // namespace bec::cli
